//! Free crossed modules on relators, represented by coordinates in the
//! free `ZG`-module on the relators together with the boundary in `P`.
//!
//! With `G = P / <<w(R)>>` and `phi: P -> G` the quotient,
//! `(m1, p1)(m2, p2) = (m1 + phi(p1) m2, p1 p2)`. Faithfulness is checked
//! against Peiffer moves on pre-crossed words rather than assumed.

use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::groupoid::UnionFind;
use crate::presentation::GroupPresentation;
use crate::rewrite::RewriteSystem;
use crate::ring::{same_system, GroupRingElement};
use crate::word::{Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FcmError {
    #[error("completion bound exceeded for {0}")]
    NotCompleted(&'static str),
    #[error("elements from different free crossed modules")]
    Mismatch,
    #[error("relator `{0}` is out of range")]
    UnknownRelator(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FcmElement {
    pub coord: Vec<GroupRingElement>,
    pub bdry: Word,
}

#[derive(Clone, Debug)]
pub enum FcmOp {
    Mul,
    Inv,
    Act(Word),
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FcmValue {
    Element(FcmElement),
    Word(Word),
}

#[derive(Clone, Debug)]
pub struct FreeCrossedModule {
    pub base: GroupPresentation,
    pub relator_names: Vec<String>,
    pub relators: Vec<Word>,
    p_sys: Arc<RewriteSystem>,
    g_sys: Arc<RewriteSystem>,
}

impl FreeCrossedModule {
    pub fn new(base: GroupPresentation, relator_names: Vec<String>, relators: Vec<Word>, max_rules: usize, max_len: usize) -> Result<Self, FcmError> {
        let p_sys = base.completed(max_rules, max_len);
        if !p_sys.is_completed() {
            return Err(FcmError::NotCompleted("P"));
        }
        let mut all = base.relators.clone();
        all.extend(relators.iter().cloned());
        let g = GroupPresentation::new(base.alphabet.clone(), all);
        let g_sys = g.completed(max_rules, max_len);
        if !g_sys.is_completed() {
            return Err(FcmError::NotCompleted("G"));
        }
        Ok(FreeCrossedModule { base, relator_names, relators, p_sys, g_sys })
    }

    /// Free `P` on the given generators; relators parsed in that alphabet.
    pub fn on_free(gens: &[&str], rels: &[(&str, &str)]) -> Result<Self, FcmError> {
        let base = GroupPresentation::free(gens);
        let names = rels.iter().map(|(n, _)| n.to_string()).collect();
        let words = rels.iter().map(|(_, w)| base.alphabet.parse(w).expect("relator word")).collect();
        FreeCrossedModule::new(base, names, words, 200, 24)
    }

    pub fn rank(&self) -> usize {
        self.relators.len()
    }

    pub fn group_system(&self) -> &Arc<RewriteSystem> {
        &self.g_sys
    }

    pub fn base_system(&self) -> &Arc<RewriteSystem> {
        &self.p_sys
    }

    pub fn reduce_p(&self, w: &Word) -> Word {
        self.p_sys.reduce(w)
    }

    pub fn phi(&self, w: &Word) -> Word {
        self.g_sys.reduce(w)
    }

    pub fn one(&self) -> FcmElement {
        let z = GroupRingElement::zero(&self.g_sys).unwrap();
        FcmElement { coord: vec![z; self.rank()], bdry: Word::empty() }
    }

    pub fn gen(&self, r: usize) -> Result<FcmElement, FcmError> {
        if r >= self.rank() {
            return Err(FcmError::UnknownRelator(r));
        }
        let mut x = self.one();
        x.coord[r] = GroupRingElement::one(&self.g_sys).unwrap();
        x.bdry = self.reduce_p(&self.relators[r]);
        Ok(x)
    }

    fn owns(&self, x: &FcmElement) -> bool {
        x.coord.len() == self.rank() && x.coord.iter().all(|c| same_system(c.system(), &self.g_sys))
    }

    pub fn combine(&self, x: &FcmElement, y: Option<&FcmElement>, op: &FcmOp) -> Result<FcmValue, FcmError> {
        if !self.owns(x) || y.map_or(false, |y| !self.owns(y)) {
            return Err(FcmError::Mismatch);
        }
        Ok(match op {
            FcmOp::Mul => FcmValue::Element(self.mul(x, y.ok_or(FcmError::Mismatch)?)),
            FcmOp::Inv => FcmValue::Element(self.inv(x)),
            FcmOp::Act(p) => FcmValue::Element(self.act(p, x)),
            FcmOp::Boundary => FcmValue::Word(x.bdry.clone()),
        })
    }

    pub fn mul(&self, x: &FcmElement, y: &FcmElement) -> FcmElement {
        let phi = self.phi(&x.bdry);
        let coord = x
            .coord
            .iter()
            .zip(&y.coord)
            .map(|(a, b)| a.add(&b.left_mul_word(&phi)).unwrap())
            .collect();
        FcmElement { coord, bdry: self.reduce_p(&x.bdry.concat(&y.bdry)) }
    }

    pub fn inv(&self, x: &FcmElement) -> FcmElement {
        let pinv = x.bdry.inverse();
        let coord = x.coord.iter().map(|a| a.left_mul_word(&pinv).neg()).collect();
        FcmElement { coord, bdry: self.reduce_p(&pinv) }
    }

    pub fn act(&self, p: &Word, x: &FcmElement) -> FcmElement {
        let coord = x.coord.iter().map(|a| a.left_mul_word(p)).collect();
        FcmElement { coord, bdry: self.reduce_p(&p.concat(&x.bdry).concat(&p.inverse())) }
    }

    pub fn boundary(&self, x: &FcmElement) -> Word {
        x.bdry.clone()
    }

    pub fn is_one(&self, x: &FcmElement) -> bool {
        x.bdry.is_empty() && x.coord.iter().all(|c| c.is_zero())
    }

    pub fn letter(&self, l: &PreLetter) -> FcmElement {
        let g = self.gen(l.rel).expect("relator index");
        let g = if l.inv { self.inv(&g) } else { g };
        self.act(&l.conj, &g)
    }

    pub fn rep(&self, w: &PreWord) -> FcmElement {
        w.0.iter().fold(self.one(), |acc, l| self.mul(&acc, &self.letter(l)))
    }

    /// Boundary of a pre-crossed letter, reduced in `P`.
    pub fn letter_boundary(&self, l: &PreLetter) -> Word {
        let r = &self.relators[l.rel];
        let r = if l.inv { r.inverse() } else { r.clone() };
        self.reduce_p(&l.conj.concat(&r).concat(&l.conj.inverse()))
    }

    pub fn preword_boundary(&self, w: &PreWord) -> Word {
        let mut acc = Word::empty();
        for l in &w.0 {
            acc = acc.concat(&self.letter_boundary(l));
        }
        self.reduce_p(&acc)
    }

    /// `^u l`.
    pub fn act_letter(&self, u: &Word, l: &PreLetter) -> PreLetter {
        PreLetter { conj: self.reduce_p(&u.concat(&l.conj)), rel: l.rel, inv: l.inv }
    }

    /// Irreducible words of `P` up to the given length (each is a normal form).
    pub fn conjugators(&self, max_len: usize) -> Vec<Word> {
        self.p_sys.irreducible_words(max_len)
    }

    pub fn random_preword<R: Rng>(&self, rng: &mut R, max_letters: usize, max_conj: usize) -> PreWord {
        let n = rng.gen_range(0..=max_letters);
        let k = self.base.rank() as u32;
        let mut out = Vec::new();
        for _ in 0..n {
            let cl = rng.gen_range(0..=max_conj);
            let conj: Vec<Letter> = (0..cl)
                .map(|_| Letter { gen: rng.gen_range(0..k.max(1)), inv: rng.gen_bool(0.5) })
                .collect();
            out.push(PreLetter {
                conj: if k == 0 { Word::empty() } else { self.reduce_p(&Word(conj)) },
                rel: rng.gen_range(0..self.rank()),
                inv: rng.gen_bool(0.5),
            });
        }
        PreWord(out)
    }

    pub fn fmt_letter(&self, l: &PreLetter) -> String {
        let ab = &self.base.alphabet;
        let r = &self.relator_names[l.rel];
        let e = if l.inv { "^-1" } else { "" };
        if l.conj.is_empty() {
            format!("{}{}", r, e)
        } else {
            format!("^({}){}{}", ab.fmt(&l.conj), r, e)
        }
    }

    pub fn fmt_element(&self, x: &FcmElement) -> String {
        let parts: Vec<String> = x
            .coord
            .iter()
            .zip(&self.relator_names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| format!("({})*{}", c, n))
            .collect();
        let coord = if parts.is_empty() { "0".into() } else { parts.join(" + ") };
        format!("[{} | {}]", coord, self.base.alphabet.fmt(&x.bdry))
    }
}

/// `^conj r^(+-1)` in the free pre-crossed module.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PreLetter {
    pub conj: Word,
    pub rel: usize,
    pub inv: bool,
}

impl PreLetter {
    pub fn inverse(&self) -> PreLetter {
        PreLetter { conj: self.conj.clone(), rel: self.rel, inv: !self.inv }
    }

    pub fn weight(&self) -> usize {
        1 + self.conj.len()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PreWord(pub Vec<PreLetter>);

impl PreWord {
    pub fn gen(r: usize) -> PreWord {
        PreWord(vec![PreLetter { conj: Word::empty(), rel: r, inv: false }])
    }

    pub fn inverse(&self) -> PreWord {
        PreWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, o: &PreWord) -> PreWord {
        let mut v = self.0.clone();
        v.extend(o.0.iter().cloned());
        PreWord(v)
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|l| l.weight()).sum()
    }
}

/// Equivalence classes of pre-crossed words under free cancellation, the
/// two Peiffer moves `x y ~ (^{dx} y) x` and `x y ~ y (^{(dy)^-1} x)`, and
/// the derived move `x u x^-1 ~ ^{dx} u`, closed up inside the universe of
/// all words of weight at most `universe`.
pub struct PeifferOracle {
    pub letters: Vec<PreLetter>,
    pub words: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, u32>,
    uf: UnionFind,
}

impl PeifferOracle {
    pub fn build(f: &FreeCrossedModule, universe: usize) -> PeifferOracle {
        // letters by weight
        let mut letters = Vec::new();
        for u in f.conjugators(universe.saturating_sub(1)) {
            for r in 0..f.rank() {
                for inv in [false, true] {
                    letters.push(PreLetter { conj: u.clone(), rel: r, inv });
                }
            }
        }
        letters.sort_by_key(|l| (l.weight(), l.clone()));
        let lid: HashMap<PreLetter, u32> = letters.iter().enumerate().map(|(i, l)| (l.clone(), i as u32)).collect();
        let weight: Vec<usize> = letters.iter().map(|l| l.weight()).collect();
        let inv: Vec<u32> = letters.iter().map(|l| lid[&l.inverse()]).collect();
        let bd: Vec<Word> = letters.iter().map(|l| f.letter_boundary(l)).collect();

        // every word of weight <= universe
        let mut words: Vec<Vec<u32>> = vec![Vec::new()];
        let mut frontier: Vec<(Vec<u32>, usize)> = vec![(Vec::new(), 0)];
        while let Some((w, wt)) = frontier.pop() {
            for (i, &lw) in weight.iter().enumerate() {
                if wt + lw > universe {
                    break;
                }
                let mut v = w.clone();
                v.push(i as u32);
                words.push(v.clone());
                frontier.push((v, wt + lw));
            }
        }
        let shifted: Vec<Vec<u32>> = letters
            .iter()
            .map(|l| {
                let r = &f.relators[l.rel];
                [r.clone(), r.inverse()]
                    .iter()
                    .filter_map(|s| lid.get(&PreLetter { conj: f.reduce_p(&l.conj.concat(s)), rel: l.rel, inv: l.inv }).copied())
                    .collect()
            })
            .collect();
        let index: HashMap<Vec<u32>, u32> = words.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();
        let mut uf = UnionFind::new(words.len());

        let mut moved: HashMap<(u32, u32), (Option<u32>, Option<u32>)> = HashMap::new();
        for (wi, w) in words.iter().enumerate() {
            for k in 0..w.len().saturating_sub(1) {
                let (x, y) = (w[k], w[k + 1]);
                if inv[x as usize] == y {
                    let mut v = w[..k].to_vec();
                    v.extend_from_slice(&w[k + 2..]);
                    uf.union(wi, index[&v] as usize);
                }
                let (a, b) = *moved.entry((x, y)).or_insert_with(|| {
                    let lx = &letters[x as usize];
                    let ly = &letters[y as usize];
                    let a = lid.get(&f.act_letter(&bd[x as usize], ly)).copied();
                    let b = lid.get(&f.act_letter(&bd[y as usize].inverse(), lx)).copied();
                    (a, b)
                });
                if let Some(a) = a {
                    let mut v = w.clone();
                    v[k] = a;
                    v[k + 1] = x;
                    if let Some(&j) = index.get(&v) {
                        uf.union(wi, j as usize);
                    }
                }
                if let Some(b) = b {
                    let mut v = w.clone();
                    v[k] = y;
                    v[k + 1] = b;
                    if let Some(&j) = index.get(&v) {
                        uf.union(wi, j as usize);
                    }
                }
            }
            // ^u r ~ ^{u w(r)} r, the case x = y of the Peiffer identity
            for k in 0..w.len() {
                for &t in &shifted[w[k] as usize] {
                    let mut v = w.clone();
                    v[k] = t;
                    if let Some(&j) = index.get(&v) {
                        uf.union(wi, j as usize);
                    }
                }
            }
            // x u x^-1 ~ ^{dx} u for a whole factor u
            for i in 0..w.len() {
                for j in i + 2..w.len() {
                    if w[j] != inv[w[i] as usize] {
                        continue;
                    }
                    let d = &bd[w[i] as usize];
                    let mid: Option<Vec<u32>> = w[i + 1..j]
                        .iter()
                        .map(|&l| lid.get(&f.act_letter(d, &letters[l as usize])).copied())
                        .collect();
                    if let Some(mid) = mid {
                        let mut v = w[..i].to_vec();
                        v.extend(mid);
                        v.extend_from_slice(&w[j + 1..]);
                        if let Some(&t) = index.get(&v) {
                            uf.union(wi, t as usize);
                        }
                    }
                }
            }
        }
        PeifferOracle { letters, words, index, uf }
    }

    pub fn decode(&self, w: &[u32]) -> PreWord {
        PreWord(w.iter().map(|&i| self.letters[i as usize].clone()).collect())
    }

    pub fn weight(&self, w: &[u32]) -> usize {
        w.iter().map(|&i| self.letters[i as usize].weight()).sum()
    }

    pub fn class(&mut self, w: &PreWord) -> Option<usize> {
        let ids: Option<Vec<u32>> = w
            .0
            .iter()
            .map(|l| self.letters.iter().position(|m| m == l).map(|i| i as u32))
            .collect();
        let i = *self.index.get(&ids?)?;
        Some(self.uf.find(i as usize))
    }

    pub fn class_of_index(&mut self, i: usize) -> usize {
        self.uf.find(i)
    }
}

#[derive(Clone, Debug, Default)]
pub struct FaithfulnessReport {
    pub words: usize,
    pub classes: usize,
    /// Oracle-equivalent words with different representations.
    pub rep_splits: Vec<(PreWord, PreWord)>,
    /// Equal representations that the oracle does not connect.
    pub oracle_splits: Vec<(PreWord, PreWord)>,
}

impl FaithfulnessReport {
    pub fn agrees(&self) -> bool {
        self.rep_splits.is_empty() && self.oracle_splits.is_empty()
    }
}

/// Compares representation equality with oracle equivalence on all words
/// of weight at most `query`.
pub fn faithfulness(f: &FreeCrossedModule, query: usize, universe: usize) -> FaithfulnessReport {
    let mut o = PeifferOracle::build(f, universe);
    let mut by_rep: HashMap<(Vec<Vec<(Word, i64)>>, Word), usize> = HashMap::new();
    let mut by_class: HashMap<usize, usize> = HashMap::new();
    let mut rep_of_class: HashMap<usize, usize> = HashMap::new();
    let mut report = FaithfulnessReport::default();
    let queries: Vec<usize> = (0..o.words.len()).filter(|&i| o.weight(&o.words[i]) <= query).collect();
    let mut first_word: Vec<usize> = Vec::new();
    for &i in &queries {
        let pw = o.decode(&o.words[i]);
        let r = f.rep(&pw);
        let key = (
            r.coord.iter().map(|c| c.terms().iter().map(|(w, k)| (w.clone(), *k)).collect()).collect(),
            r.bdry.clone(),
        );
        let cls = o.class_of_index(i);
        let next = by_rep.len();
        let rid = *by_rep.entry(key).or_insert(next);
        if rid == first_word.len() {
            first_word.push(i);
        }
        by_class.entry(cls).or_insert(i);
        match rep_of_class.get(&cls) {
            None => {
                rep_of_class.insert(cls, rid);
            }
            Some(&other) if other != rid && report.rep_splits.len() < 10 => {
                report.rep_splits.push((o.decode(&o.words[by_class[&cls]]), pw.clone()));
            }
            _ => {}
        }
    }
    // each representation must come from a single oracle class
    let mut class_of_rep: HashMap<usize, usize> = HashMap::new();
    for (&cls, &rid) in &rep_of_class {
        if let Some(&c2) = class_of_rep.get(&rid) {
            if c2 != cls && report.oracle_splits.len() < 10 {
                report.oracle_splits.push((o.decode(&o.words[by_class[&cls]]), o.decode(&o.words[by_class[&c2]])));
            }
        } else {
            class_of_rep.insert(rid, cls);
        }
    }
    report.words = queries.len();
    report.classes = by_rep.len();
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_contract() {
        let f = FreeCrossedModule::on_free(&["a"], &[("r", "a a")]).unwrap();
        let g = f.gen(0).unwrap();
        assert_eq!(f.base.alphabet.fmt(&g.bdry), "a a");
        let e = f.mul(&g, &f.inv(&g));
        assert!(f.is_one(&e));
        let a = f.base.alphabet.parse("a").unwrap();
        let y = f.act(&a, &g);
        assert_eq!(y.coord[0].to_string(), "a");
        assert_eq!(y.bdry, f.reduce_p(&a.concat(&g.bdry).concat(&a.inverse())));
    }

    #[test]
    fn small_faithfulness() {
        let f = FreeCrossedModule::on_free(&["a"], &[("r", "a a")]).unwrap();
        let r = faithfulness(&f, 4, 6);
        assert!(r.agrees(), "{:?}", r);
    }
}

