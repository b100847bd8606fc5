use proptest::prelude::*;

use hda::fox::{boundary_matrix, exponent_terms, fox_derivative, fundamental_defect, pi2_kernel_search, push_back, FoxData, KernelBounds};
use hda::ring::GroupRingElement;
use hda::word::{Letter, Word};
use hda::xmod::free::FreeCrossedModule;

fn word(rank: u32, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..rank, any::<bool>()), 0..=max).prop_map(|v| Word(v.into_iter().map(|(gen, inv)| Letter { gen, inv }).collect()))
}

fn free2() -> FoxData {
    FoxData::parse(&["a", "b"], &[]).unwrap()
}

fn klein() -> FoxData {
    FoxData::parse(&["a", "b"], &["a b a^-1 b"]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn derivation_law(u in word(2, 8), v in word(2, 8)) {
        let p = free2();
        for s in 0..2 {
            let lhs = fox_derivative(&u.concat(&v), s, &p.sys);
            let rhs = fox_derivative(&u, s, &p.sys).add(&fox_derivative(&v, s, &p.sys).left_mul_word(&u)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn augmentation_is_exponent_sum(w in word(2, 12)) {
        let p = klein();
        let sums = w.exponent_sums(2);
        for s in 0..2 {
            prop_assert_eq!(fox_derivative(&w, s, &p.sys).augmentation(), sums[s as usize] as i64);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn defect_vanishes(w in word(2, 10)) {
        for p in [free2(), klein()] {
            prop_assert!(fundamental_defect(&w, 2, &p.sys).is_zero());
        }
    }

    #[test]
    fn exponent_terms_sum_to_antipode(w in word(2, 10)) {
        let p = klein();
        let ts = exponent_terms(&p, &w);
        for s in 0..2u32 {
            let mut sum = p.zero();
            for t in ts.iter().filter(|t| t.gen == s) {
                sum.add_term(&t.nf, t.sign);
            }
            // for a relator the trailing w drops out
            let want = fox_derivative(&w, s, &p.sys)
                .conjugate()
                .left_mul_word(&Word::letter(Letter { gen: s, inv: true }))
                .right_mul_word(&w);
            prop_assert_eq!(sum, want);
        }
    }
}

#[test]
fn derivative_of_power() {
    let p = FoxData::parse(&["a"], &["a^3"]).unwrap();
    let d = fox_derivative(&Word::power_of(0, 3), 0, &p.sys);
    let want = GroupRingElement::from_terms(&p.sys, &[(Word::empty(), 1), (Word::gen(0), 1), (Word::power_of(0, 2), 1)]).unwrap();
    assert_eq!(d, want);
}

fn check_kernel(p: &FoxData, f: &FreeCrossedModule, bounds: KernelBounds) {
    let m = boundary_matrix(p);
    let k = pi2_kernel_search(p, &m, bounds);
    assert!(k.exhaustive);
    let v = k.generator().expect("a generator").clone();
    assert!(m.apply(&v, &p.zero()).iter().all(|e| e.is_zero()));
    let (w, x, central) = push_back(f, &v, 10_000).expect("an ordering with trivial boundary");
    assert!(f.preword_boundary(&w).is_empty());
    assert!(f.boundary(&x).is_empty());
    assert!(central);
    assert!(!f.is_one(&x));
}

#[test]
fn sphere_and_projective_plane() {
    let p = FoxData::parse(&["a"], &["a", "a"]).unwrap();
    let f = FreeCrossedModule::on_free(&["a"], &[("d1", "a"), ("d2", "a")]).unwrap();
    check_kernel(&p, &f, KernelBounds::new(3, 3));
    let p = FoxData::parse(&["a"], &["a^2"]).unwrap();
    let f = FreeCrossedModule::on_free(&["a"], &[("c", "a^2")]).unwrap();
    check_kernel(&p, &f, KernelBounds::new(2, 2));
}

#[test]
fn torus_kernel_is_empty_in_range() {
    let p = FoxData::parse(&["a", "b"], &["a b a^-1 b^-1"]).unwrap();
    let k = pi2_kernel_search(&p, &boundary_matrix(&p), KernelBounds::new(2, 2));
    assert!(!k.pool_is_group);
    assert_eq!(k.rational_dim, 0);
    assert!(k.vectors.is_empty());
}
