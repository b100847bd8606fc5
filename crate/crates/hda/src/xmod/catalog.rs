//! A small zoo of finite crossed modules.

use std::collections::BTreeSet;

use super::{CrossedModule, XModMorphism};
use crate::finite::FiniteGroup;

fn element_of_order(g: &FiniteGroup, k: usize) -> usize {
    g.elements().find(|&e| g.elem_order(e) == k).expect("element of that order")
}

fn cyclic_sub(g: &FiniteGroup, gen: usize) -> BTreeSet<usize> {
    g.subgroup_closure(&[gen])
}

/// Every entry has `|M|, |P| <= max_order`; all are valid.
pub fn catalog(max_order: usize) -> Vec<CrossedModule> {
    let z2 = FiniteGroup::cyclic(2);
    let z3 = FiniteGroup::cyclic(3);
    let z4 = FiniteGroup::cyclic(4);
    let s3 = FiniteGroup::symmetric3();
    let d4 = FiniteGroup::dihedral4();
    let q8 = FiniteGroup::quaternion();
    let one = FiniteGroup::trivial();

    let mut all = vec![CrossedModule::identity(&one)];
    all[0].name = "1->1".into();
    for g in [&z2, &z3, &z4, &s3, &d4, &q8] {
        all.push(CrossedModule::identity(g));
    }
    all.push(CrossedModule::normal_inclusion(&z4, "Z2", &cyclic_sub(&z4, 2)));
    all.push(CrossedModule::normal_inclusion(&s3, "A3", &cyclic_sub(&s3, element_of_order(&s3, 3))));
    all.push(CrossedModule::normal_inclusion(&d4, "C4", &cyclic_sub(&d4, element_of_order(&d4, 4))));
    all.push(CrossedModule::normal_inclusion(&d4, "Z(D4)", &d4.center()));
    all.push(CrossedModule::normal_inclusion(&q8, "Z(Q8)", &q8.center()));
    all.push(CrossedModule::normal_inclusion(&q8, "Ci", &cyclic_sub(&q8, 2)));
    all.push(CrossedModule::trivial_over(&z2));
    all.push(CrossedModule::trivial_over(&s3));
    for g in [&z3, &z4, &s3, &d4] {
        all.push(CrossedModule::inner(g));
    }
    all.push(CrossedModule::trivial_boundary(&z2, &z2));
    all.push(CrossedModule::trivial_boundary(&z2, &one));
    all.push(CrossedModule::trivial_boundary(&z3, &one));
    all.push(CrossedModule::central_quotient(&d4, &d4.center()));
    all.push(CrossedModule::central_quotient(&q8, &q8.center()));
    all.retain(|x| x.m.order() <= max_order && x.p.order() <= max_order);
    all
}

pub fn by_name(name: &str) -> Option<CrossedModule> {
    catalog(usize::MAX).into_iter().find(|x| x.name == name)
}

pub fn names() -> Vec<String> {
    catalog(usize::MAX).into_iter().map(|x| x.name).collect()
}

/// A few non-identity morphisms between catalog entries:
/// `(source name, target name, morphism)`.
pub fn morphisms() -> Vec<(String, String, XModMorphism)> {
    let s3 = FiniteGroup::symmetric3();
    let z4 = FiniteGroup::cyclic(4);
    let mut out = Vec::new();
    for (inc, g) in [("A3<S3", &s3), ("Z2<Z4", &z4)] {
        let x = by_name(inc).unwrap();
        let f = XModMorphism { m_map: x.mu.clone(), p_map: g.elements().collect() };
        out.push((inc.to_string(), format!("{}->{}", g.name, g.name), f));
    }
    // (1 -> P) into (P -> P)
    let t = CrossedModule::trivial_over(&s3);
    out.push((t.name.clone(), "S3->S3".into(), XModMorphism { m_map: vec![0], p_map: s3.elements().collect() }));
    // (S3 -> S3) into (S3 -> Aut(S3)), conjugation
    let inner = by_name("S3->Aut(S3)").unwrap();
    out.push(("S3->S3".into(), inner.name.clone(), XModMorphism { m_map: s3.elements().collect(), p_map: inner.mu.clone() }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_valid() {
        let c = catalog(8);
        assert!(c.len() >= 10);
        for x in &c {
            assert!(x.validate().is_valid(), "{}", x.name);
        }
        assert_eq!(catalog(1).len(), 1);
        let names: BTreeSet<String> = names().into_iter().collect();
        assert_eq!(names.len(), catalog(usize::MAX).len());
    }

    #[test]
    fn catalog_morphisms_valid() {
        for (s, t, f) in morphisms() {
            let (x, y) = (by_name(&s).unwrap(), by_name(&t).unwrap());
            assert!(f.is_valid(&x, &y), "{} -> {}", s, t);
        }
    }
}
