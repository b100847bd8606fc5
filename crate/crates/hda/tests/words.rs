use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use proptest::prelude::*;

use hda::presentation::GroupPresentation;
use hda::rewrite::RewriteSystem;
use hda::ring::GroupRingElement;
use hda::word::{free_reduce, Letter, Word};

fn word(rank: u32, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..rank, any::<bool>()), 0..=max).prop_map(|v| Word(v.into_iter().map(|(gen, inv)| Letter { gen, inv }).collect()))
}

proptest! {
    #[test]
    fn free_reduce_idempotent(w in word(3, 20)) {
        let r = free_reduce(&w);
        prop_assert!(r.len() <= w.len());
        prop_assert!(r.is_reduced());
        prop_assert_eq!(free_reduce(&r), r);
    }
}

fn all_words(rank: u32, max: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..rank {
                for inv in [false, true] {
                    let mut v = w.clone();
                    v.0.push(Letter { gen: g, inv });
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Every word reachable by applying rules anywhere, in any order.
fn descendants(sys: &RewriteSystem, w: &Word) -> HashSet<Word> {
    let mut seen = HashSet::new();
    let mut todo = vec![w.clone()];
    while let Some(u) = todo.pop() {
        if !seen.insert(u.clone()) {
            continue;
        }
        for (l, r) in sys.rules() {
            let n = l.len();
            for i in 0..=(u.len().saturating_sub(n)) {
                if u.len() >= n && u.0[i..i + n] == l.0[..] {
                    let mut v = u.0[..i].to_vec();
                    v.extend_from_slice(&r.0);
                    v.extend_from_slice(&u.0[i + n..]);
                    todo.push(Word(v));
                }
            }
        }
    }
    seen
}

/// Normal forms agree with joinability: each word has exactly one
/// irreducible descendant and it is the normal form; and normal forms
/// separate exactly what `oracle` separates.
fn check_joinable<K: std::hash::Hash + Eq + std::fmt::Debug>(sys: &RewriteSystem, rank: u32, max: usize, oracle: impl Fn(&Word) -> K) {
    let mut by_nf: HashMap<Word, K> = HashMap::new();
    let mut by_key: HashMap<K, Word> = HashMap::new();
    for w in all_words(rank, max) {
        let nf = sys.normal_form(&w).unwrap();
        let irreducible: BTreeSet<Word> = descendants(sys, &w).into_iter().filter(|d| sys.is_irreducible(d)).collect();
        assert_eq!(irreducible.len(), 1, "{:?}", w);
        assert_eq!(irreducible.into_iter().next().unwrap(), nf);
        let k = oracle(&w);
        if let Some(prev) = by_nf.get(&nf) {
            assert_eq!(*prev, k, "{:?}", w);
        }
        if let Some(prev) = by_key.get(&k) {
            assert_eq!(*prev, nf, "{:?}", w);
        }
        by_key.insert(k, nf.clone());
        by_nf.insert(nf, oracle(&w));
    }
}

#[test]
fn z2_normal_forms() {
    let p = GroupPresentation::parse(&["a"], &["a^2"]).unwrap();
    let sys = p.completed(100, 16);
    check_joinable(&sys, 1, 8, |w| w.exponent_sums(1)[0].rem_euclid(2));
}

/// `b^m a^n` with `a b a^-1 = b^-1`.
fn klein_coords(w: &Word) -> (i64, i64) {
    let (mut m, mut n) = (0i64, 0i64);
    for l in w.letters() {
        let e = l.exponent() as i64;
        if l.gen == 0 {
            n += e;
        } else {
            m += if n.rem_euclid(2) == 0 { e } else { -e };
        }
    }
    (m, n)
}

#[test]
fn klein_normal_forms() {
    let p = GroupPresentation::parse(&["a", "b"], &["a b a^-1 b"]).unwrap();
    let sys = p.completed(200, 24);
    assert!(sys.is_completed());
    assert_eq!(klein_coords(&p.relators[0]), (0, 0));
    check_joinable(&sys, 2, 8, klein_coords);
}

fn klein() -> Arc<RewriteSystem> {
    GroupPresentation::parse(&["a", "b"], &["a b a^-1 b"]).unwrap().completed(200, 24)
}

fn element(sys: &Arc<RewriteSystem>, terms: &[(Word, i64)]) -> GroupRingElement {
    GroupRingElement::from_terms(sys, terms).unwrap()
}

fn terms() -> impl Strategy<Value = Vec<(Word, i64)>> {
    prop::collection::vec((word(2, 5), -3i64..=3), 0..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]
    #[test]
    fn ring_identities(x in terms(), y in terms(), z in terms()) {
        let sys = klein();
        let (x, y, z) = (element(&sys, &x), element(&sys, &y), element(&sys, &z));
        prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
        prop_assert_eq!(x.add(&y).unwrap().add(&z).unwrap(), x.add(&y.add(&z).unwrap()).unwrap());
        prop_assert_eq!(x.mul(&y.add(&z).unwrap()).unwrap(), x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.add(&y).unwrap().mul(&z).unwrap(), x.mul(&z).unwrap().add(&y.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert!(x.sub(&x).unwrap().is_zero());
    }
}
