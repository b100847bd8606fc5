use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use hda::word::{Letter, Word};
use hda::xmod::catalog::catalog;
use hda::xmod::free::{faithfulness, FcmElement, FreeCrossedModule, PreLetter, PreWord};
use hda::xmod::validate_xmod;

#[test]
fn catalog_and_mutants() {
    for x in catalog(usize::MAX) {
        assert!(validate_xmod(&x).is_valid(), "{}", x.name);
        let mut rng = StdRng::seed_from_u64(x.m.order() as u64 * 31 + x.p.order() as u64);
        for _ in 0..40 {
            if x.m.order() < 2 {
                break;
            }
            let p = rng.gen_range(0..x.p.order());
            let m = rng.gen_range(0..x.m.order());
            let v = (x.action[p][m] + rng.gen_range(1..x.m.order())) % x.m.order();
            let mut y = x.clone();
            y.action[p][m] = v;
            assert!(!validate_xmod(&y).is_valid(), "{}: action[{}][{}] = {}", x.name, p, m, v);
        }
    }
}

fn instances() -> Vec<FreeCrossedModule> {
    vec![
        FreeCrossedModule::on_free(&["a"], &[("r", "a^2")]).unwrap(),
        FreeCrossedModule::on_free(&["a", "b"], &[("s", "a b a^-1 b")]).unwrap(),
        FreeCrossedModule::on_free(&["a"], &[("d1", "a"), ("d2", "a")]).unwrap(),
        FreeCrossedModule::on_free(&["a", "b"], &[("r", "a^2"), ("t", "b^3")]).unwrap(),
    ]
}

fn random_p<R: Rng>(f: &FreeCrossedModule, rng: &mut R) -> Word {
    let k = f.base.rank() as u32;
    let n = rng.gen_range(0..4);
    f.reduce_p(&Word((0..n).map(|_| Letter { gen: rng.gen_range(0..k), inv: rng.gen_bool(0.5) }).collect()))
}

#[test]
fn boundary_is_equivariant() {
    let mut rng = StdRng::seed_from_u64(1);
    for f in instances() {
        for _ in 0..100 {
            let x = f.rep(&f.random_preword(&mut rng, 4, 2));
            let p = random_p(&f, &mut rng);
            let lhs = f.boundary(&f.act(&p, &x));
            let rhs = f.reduce_p(&p.concat(&f.boundary(&x)).concat(&p.inverse()));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn peiffer_oracle_agrees() {
    for f in &instances()[..2] {
        let r = faithfulness(f, 6, 8);
        assert!(r.agrees(), "{:?}", r);
        assert!(r.words > 1000);
    }
}

/// Known kernel elements of each instance, then random conjugates and products.
fn kernel_elements<R: Rng>(f: &FreeCrossedModule, rng: &mut R) -> Vec<FcmElement> {
    let g = |r: usize| f.gen(r).unwrap();
    let seeds: Vec<FcmElement> = match f.rank() {
        // r (^{a} r)^-1 for a^2, d1 d2^-1 for the two discs
        1 if f.relators[0].len() == 2 => {
            let a = Word::gen(0);
            vec![f.mul(&g(0), &f.inv(&f.act(&a, &g(0))))]
        }
        2 if f.base.rank() == 1 => vec![f.mul(&g(0), &f.inv(&g(1)))],
        2 => {
            let a = Word::gen(0);
            let b = Word::gen(1);
            vec![f.mul(&g(0), &f.inv(&f.act(&a, &g(0)))), f.mul(&g(1), &f.inv(&f.act(&b, &g(1))))]
        }
        _ => vec![],
    };
    let mut out = seeds.clone();
    for _ in 0..10 {
        let s = &seeds[rng.gen_range(0..seeds.len())];
        let p = random_p(f, rng);
        let k = f.act(&p, s);
        let last = out.last().unwrap().clone();
        out.push(f.mul(&last, &k));
    }
    out
}

#[test]
fn kernel_is_central() {
    let mut rng = StdRng::seed_from_u64(2);
    for f in instances() {
        // the Klein bottle is aspherical
        if f.relator_names == ["s"] {
            continue;
        }
        for k in kernel_elements(&f, &mut rng) {
            assert!(f.boundary(&k).is_empty());
            for _ in 0..100 {
                let y = f.rep(&f.random_preword(&mut rng, 4, 2));
                assert_eq!(f.mul(&k, &y), f.mul(&y, &k));
            }
        }
    }
}

#[test]
fn peiffer_identity_holds() {
    let mut rng = StdRng::seed_from_u64(3);
    for f in instances() {
        for _ in 0..50 {
            let x = f.rep(&f.random_preword(&mut rng, 3, 2));
            let y = f.rep(&f.random_preword(&mut rng, 3, 2));
            let lhs = f.mul(&f.mul(&x, &y), &f.inv(&x));
            assert_eq!(lhs, f.act(&f.boundary(&x), &y));
        }
    }
    let f = &instances()[0];
    let w = PreWord(vec![PreLetter { conj: Word::empty(), rel: 0, inv: false }]);
    assert_eq!(f.rep(&w), f.gen(0).unwrap());
}
