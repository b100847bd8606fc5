//! Constructions characterised by universal properties: extension from a
//! free crossed module, crossed modules presented over a finite base,
//! induced crossed modules and pushouts.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;
use thiserror::Error;

use super::free::{FcmError, FreeCrossedModule, PreWord};
use super::{xmod_morphisms, CrossedModule, XModMorphism};
use crate::coset::{enumerate, CosetOverflow};
use crate::finite::FiniteGroup;
use crate::presentation::GroupPresentation;
use crate::word::{free_reduce, Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UniversalError {
    #[error("mu(phi({0})) differs from eta(w({0}))")]
    Incompatible(String),
    #[error("eta does not respect the relator `{0}` of P")]
    EtaNotHom(String),
    #[error(transparent)]
    Overflow(#[from] CosetOverflow),
    #[error("presented data is not a crossed module: {0}")]
    NotCrossed(String),
    #[error(transparent)]
    Free(#[from] FcmError),
    #[error("unsupported corner: {0}")]
    Unsupported(String),
}

// ---------------------------------------------------------------------------
// extension from a free crossed module

/// The morphism `F -> X` over `eta` determined by `gen(r) -> phi(r)`.
#[derive(Clone, Debug)]
pub struct FreeExtension {
    pub eta: Vec<usize>,
    pub phi: Vec<usize>,
}

pub fn extend_universal(f: &FreeCrossedModule, eta: &[usize], x: &CrossedModule, phi: &[usize]) -> Result<FreeExtension, UniversalError> {
    let q = &x.p;
    let ev = |w: &Word| eval_in(q, eta, w);
    for r in &f.base.relators {
        if ev(r) != 0 {
            return Err(UniversalError::EtaNotHom(f.base.alphabet.fmt(r)));
        }
    }
    for (k, w) in f.relators.iter().enumerate() {
        if x.mu[phi[k]] != ev(w) {
            return Err(UniversalError::Incompatible(f.relator_names[k].clone()));
        }
    }
    Ok(FreeExtension { eta: eta.to_vec(), phi: phi.to_vec() })
}

fn eval_in(g: &FiniteGroup, images: &[usize], w: &Word) -> usize {
    let mut acc = 0;
    for l in w.letters() {
        let y = images[l.gen as usize];
        acc = g.mul(acc, if l.inv { g.inv(y) } else { y });
    }
    acc
}

impl FreeExtension {
    pub fn eval_p(&self, x: &CrossedModule, w: &Word) -> usize {
        eval_in(&x.p, &self.eta, w)
    }

    /// Value on a pre-crossed word: `^u r^e` goes to `^{eta u} phi(r)^e`.
    pub fn eval(&self, x: &CrossedModule, w: &PreWord) -> usize {
        let mut acc = 0;
        for l in &w.0 {
            let m = self.phi[l.rel];
            let m = if l.inv { x.m.inv(m) } else { m };
            let m = x.act(self.eval_p(x, &l.conj), m);
            acc = x.m.mul(acc, m);
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// crossed modules presented over a finite base

/// Crossed `P`-module generated by `x_i` with `mu(x_i) = gen_bdry[i]`,
/// subject to `relations`: words whose letters `(p, i, inv)` stand for
/// `(^p x_i)^(+-1)`. Peiffer relations and all `P`-translates are added.
#[derive(Clone, Debug)]
pub struct XModPresentation {
    pub p: FiniteGroup,
    pub gen_bdry: Vec<usize>,
    pub relations: Vec<Vec<(usize, usize, bool)>>,
}

#[derive(Clone, Debug)]
pub struct Realized {
    pub xmod: CrossedModule,
    /// Element of `^p x_i`, indexed `p * k + i`.
    pub elem: Vec<usize>,
}

impl XModPresentation {
    fn letter(&self, p: usize, i: usize, inv: bool) -> Letter {
        Letter { gen: (p * self.gen_bdry.len() + i) as u32, inv }
    }

    pub fn realize(&self, name: &str, limit: usize) -> Result<Realized, UniversalError> {
        let p = &self.p;
        let k = self.gen_bdry.len();
        let np = p.order();
        let mut rels: Vec<Word> = Vec::new();
        for a in p.elements() {
            for i in 0..k {
                let d = p.conj(a, self.gen_bdry[i]);
                for b in p.elements() {
                    for j in 0..k {
                        let c = p.mul(d, b);
                        rels.push(Word(vec![
                            self.letter(a, i, false),
                            self.letter(b, j, false),
                            self.letter(a, i, true),
                            self.letter(c, j, true),
                        ]));
                    }
                }
            }
        }
        for r in &self.relations {
            for s in p.elements() {
                let w = Word(r.iter().map(|&(q, i, inv)| self.letter(p.mul(s, q), i, inv)).collect());
                let w = free_reduce(&w);
                if !w.is_empty() {
                    rels.push(w);
                }
            }
        }
        let e = enumerate(np * k, &rels, limit)?;
        let m = e.group;
        let mu_images: Vec<usize> = (0..np * k).map(|g| p.conj(g / k, self.gen_bdry[g % k])).collect();
        let mu = if k == 0 {
            vec![0]
        } else {
            m.extend_hom(&e.gens, &mu_images, p)
                .ok_or_else(|| UniversalError::NotCrossed("boundary is not well defined".into()))?
        };
        let mut action = Vec::new();
        for s in p.elements() {
            if k == 0 {
                action.push(vec![0]);
                continue;
            }
            let images: Vec<usize> = (0..np * k).map(|g| e.gens[p.mul(s, g / k) * k + g % k]).collect();
            action.push(
                m.extend_hom(&e.gens, &images, &m)
                    .ok_or_else(|| UniversalError::NotCrossed("action is not well defined".into()))?,
            );
        }
        let n = m.order();
        let mut m = m.with_labels((0..n).map(|i| format!("m{}", i)).collect());
        m.name = format!("M({})", name);
        let xmod = CrossedModule::new(name, m, p.clone(), mu, action);
        let rep = xmod.validate();
        if !rep.is_valid() {
            return Err(UniversalError::NotCrossed(format!("{:?}", rep.violations.first())));
        }
        Ok(Realized { xmod, elem: e.gens })
    }
}

/// Breadth-first words in `gens` for each element, and the relators
/// `w_e g w_{eg}^-1` of the resulting Cayley-graph presentation.
pub fn table_presentation(g: &FiniteGroup, gens: &[usize]) -> (Vec<Word>, Vec<Word>) {
    let mut words: Vec<Option<Word>> = vec![None; g.order()];
    words[0] = Some(Word::empty());
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (k, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            if words[y].is_none() {
                words[y] = Some(words[x].clone().unwrap().concat(&Word::gen(k as u32)));
                queue.push_back(y);
            }
        }
    }
    let words: Vec<Word> = words.into_iter().map(|w| w.expect("generators generate")).collect();
    let mut rels = Vec::new();
    for x in g.elements() {
        for (k, &s) in gens.iter().enumerate() {
            let r = free_reduce(&words[x].concat(&Word::gen(k as u32)).concat(&words[g.mul(x, s)].inverse()));
            if !r.is_empty() {
                rels.push(r);
            }
        }
    }
    (words, rels)
}

// ---------------------------------------------------------------------------
// universal-property reports

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct XModProbe {
    pub probe: String,
    /// Morphisms out of the constructed object.
    pub morphisms: usize,
    /// The data those morphisms should correspond to.
    pub expected: usize,
    pub bijection: bool,
}

#[derive(Clone, Debug, Serialize, Default)]
pub struct XModUniversalReport {
    pub probes: Vec<XModProbe>,
}

impl XModUniversalReport {
    pub fn passed(&self) -> bool {
        self.probes.iter().all(|p| p.bijection)
    }
}

// ---------------------------------------------------------------------------
// induced crossed modules

#[derive(Clone, Debug)]
pub struct Induced {
    pub xmod: CrossedModule,
    /// Canonical `M -> f_* M`.
    pub iota: Vec<usize>,
    pub report: XModUniversalReport,
}

/// `f_* X` for a homomorphism `f: P -> Q` (as an element map).
pub fn induced_xmod(f: &[usize], q: &FiniteGroup, x: &CrossedModule, limit: usize, probes: &[CrossedModule]) -> Result<Induced, UniversalError> {
    let mgens = x.m.generators();
    let (words, rels) = table_presentation(&x.m, &mgens);
    let as_letters = |w: &Word| -> Vec<(usize, usize, bool)> { w.letters().iter().map(|l| (0, l.gen as usize, l.inv)).collect() };
    let mut relations: Vec<Vec<(usize, usize, bool)>> = rels.iter().map(as_letters).collect();
    for p in x.p.generators() {
        for (i, &m) in mgens.iter().enumerate() {
            // ^{f p} x_i = word(^p m_i)
            let mut r = vec![(f[p], i, false)];
            let w = &words[x.act(p, m)];
            r.extend(w.letters().iter().rev().map(|l| (0, l.gen as usize, !l.inv)));
            relations.push(r);
        }
    }
    let pres = XModPresentation {
        p: q.clone(),
        gen_bdry: mgens.iter().map(|&m| f[x.mu[m]]).collect(),
        relations,
    };
    let name = format!("ind({})", x.name);
    let real = pres.realize(&name, limit)?;
    let iota: Vec<usize> = x
        .m
        .elements()
        .map(|m| {
            words[m].letters().iter().fold(0, |acc, l| {
                let g = real.elem[l.gen as usize];
                let g = if l.inv { real.xmod.m.inv(g) } else { g };
                real.xmod.m.mul(acc, g)
            })
        })
        .collect();
    debug_assert!(x.m.is_hom(&iota, &real.xmod.m));
    let mut report = XModUniversalReport::default();
    for t in probes {
        report.probes.push(induced_probe(f, q, x, &real.xmod, &iota, t));
    }
    Ok(Induced { xmod: real.xmod, iota, report })
}

fn induced_probe(f: &[usize], q: &FiniteGroup, x: &CrossedModule, ind: &CrossedModule, iota: &[usize], t: &CrossedModule) -> XModProbe {
    // morphisms X -> T whose P-part factors as tau . f
    let mhoms = x.m.homs(&t.m);
    let mut expected: HashSet<(Vec<usize>, Vec<usize>)> = HashSet::new();
    for tau in q.homs(&t.p) {
        let pm: Vec<usize> = x.p.elements().map(|p| tau[f[p]]).collect();
        for h in &mhoms {
            let mor = XModMorphism { m_map: h.clone(), p_map: pm.clone() };
            if mor.is_valid(x, t) {
                expected.insert((h.clone(), tau.clone()));
            }
        }
    }
    let out = xmod_morphisms(ind, t);
    let mut seen = HashSet::new();
    let mut ok = true;
    for k in &out {
        let r = (iota.iter().map(|&m| k.m_map[m]).collect::<Vec<_>>(), k.p_map.clone());
        if !expected.contains(&r) || !seen.insert(r) {
            ok = false;
        }
    }
    XModProbe {
        probe: t.name.clone(),
        morphisms: out.len(),
        expected: expected.len(),
        bijection: ok && seen.len() == expected.len(),
    }
}

// ---------------------------------------------------------------------------
// pushouts

#[derive(Clone, Debug)]
pub enum Corner {
    /// `(1 -> F(R))` mapped to `(1 -> P)` by `w` and into `(F(R) -> F(R))`.
    Free { p: GroupPresentation, names: Vec<String>, relators: Vec<Word> },
    /// Both legs the identity of `X`.
    Identities(CrossedModule),
    /// `(1 -> A)` mapped to `(1 -> Q)` by `f` and into `(A -> A)`.
    Cone { a: FiniteGroup, q: FiniteGroup, f: Vec<usize> },
    /// Finite corner `X1 <- X0 -> X2`.
    Finite { x0: CrossedModule, x1: CrossedModule, x2: CrossedModule, f1: XModMorphism, f2: XModMorphism },
}

#[derive(Clone, Debug)]
pub enum PushoutApex {
    Free(FreeCrossedModule),
    Finite { apex: CrossedModule, legs: (XModMorphism, XModMorphism), report: XModUniversalReport },
}

pub fn pushout_xmod(corner: &Corner, limit: usize, probes: &[CrossedModule]) -> Result<PushoutApex, UniversalError> {
    match corner {
        Corner::Free { p, names, relators } => Ok(PushoutApex::Free(FreeCrossedModule::new(
            p.clone(),
            names.clone(),
            relators.clone(),
            200,
            24,
        )?)),
        Corner::Identities(x) => Ok(PushoutApex::Finite {
            apex: x.clone(),
            legs: (XModMorphism::identity(x), XModMorphism::identity(x)),
            report: XModUniversalReport::default(),
        }),
        Corner::Cone { a, q, f } => {
            let ida = CrossedModule::identity(a);
            let ind = induced_xmod(f, q, &ida, limit, probes)?;
            let leg_q = XModMorphism { m_map: vec![0], p_map: q.elements().collect() };
            Ok(PushoutApex::Finite {
                apex: ind.xmod,
                legs: (leg_q, XModMorphism { m_map: ind.iota, p_map: f.clone() }),
                report: ind.report,
            })
        }
        Corner::Finite { x0, x1, x2, f1, f2 } => finite_pushout(x0, x1, x2, f1, f2, limit, probes),
    }
}

fn finite_pushout(
    x0: &CrossedModule,
    x1: &CrossedModule,
    x2: &CrossedModule,
    f1: &XModMorphism,
    f2: &XModMorphism,
    limit: usize,
    probes: &[CrossedModule],
) -> Result<PushoutApex, UniversalError> {
    if !f1.is_valid(x0, x1) || !f2.is_valid(x0, x2) {
        return Err(UniversalError::Unsupported("corner maps are not morphisms".into()));
    }
    // base: amalgamated product of the P parts
    let (n1, n2) = (x1.p.order(), x2.p.order());
    let g1 = |a: usize| Letter { gen: a as u32, inv: false };
    let g2 = |a: usize| Letter { gen: (n1 + a) as u32, inv: false };
    let mut rels = Vec::new();
    for a in x1.p.elements() {
        for b in x1.p.elements() {
            rels.push(Word(vec![g1(a), g1(b), g1(x1.p.mul(a, b)).inverse()]));
        }
    }
    for a in x2.p.elements() {
        for b in x2.p.elements() {
            rels.push(Word(vec![g2(a), g2(b), g2(x2.p.mul(a, b)).inverse()]));
        }
    }
    for c in x0.p.elements() {
        rels.push(Word(vec![g1(f1.p_map[c]), g2(f2.p_map[c]).inverse()]));
    }
    let e = enumerate(n1 + n2, &rels, limit)?;
    let p = e.group;
    let j1: Vec<usize> = (0..n1).map(|a| e.gens[a]).collect();
    let j2: Vec<usize> = (0..n2).map(|a| e.gens[n1 + a]).collect();
    // M part: every element of M1 and M2 as a generator
    let (m1, m2) = (x1.m.order(), x2.m.order());
    let mut gen_bdry: Vec<usize> = x1.m.elements().map(|m| j1[x1.mu[m]]).collect();
    gen_bdry.extend(x2.m.elements().map(|m| j2[x2.mu[m]]));
    let y1 = |m: usize| m;
    let y2 = |m: usize| m1 + m;
    let mut relations = Vec::new();
    for a in x1.m.elements() {
        for b in x1.m.elements() {
            relations.push(vec![(0, y1(a), false), (0, y1(b), false), (0, y1(x1.m.mul(a, b)), true)]);
        }
        for g in x1.p.elements() {
            relations.push(vec![(j1[g], y1(a), false), (0, y1(x1.act(g, a)), true)]);
        }
    }
    for a in x2.m.elements() {
        for b in x2.m.elements() {
            relations.push(vec![(0, y2(a), false), (0, y2(b), false), (0, y2(x2.m.mul(a, b)), true)]);
        }
        for g in x2.p.elements() {
            relations.push(vec![(j2[g], y2(a), false), (0, y2(x2.act(g, a)), true)]);
        }
    }
    for c in x0.m.elements() {
        relations.push(vec![(0, y1(f1.m_map[c]), false), (0, y2(f2.m_map[c]), true)]);
    }
    let pres = XModPresentation { p, gen_bdry, relations };
    let real = pres.realize("pushout", limit)?;
    let leg1 = XModMorphism { m_map: (0..m1).map(|m| real.elem[y1(m)]).collect(), p_map: j1 };
    let leg2 = XModMorphism { m_map: (0..m2).map(|m| real.elem[y2(m)]).collect(), p_map: j2 };
    let apex = real.xmod;
    let mut report = XModUniversalReport::default();
    for t in probes {
        let a1 = xmod_morphisms(x1, t);
        let a2 = xmod_morphisms(x2, t);
        let mut expected: HashSet<(XModMorphism, XModMorphism)> = HashSet::new();
        for h1 in &a1 {
            for h2 in &a2 {
                if f1.then(h1) == f2.then(h2) {
                    expected.insert((h1.clone(), h2.clone()));
                }
            }
        }
        let out = xmod_morphisms(&apex, t);
        let mut seen = BTreeSet::new();
        let mut ok = true;
        for h in &out {
            let r = (leg1.then(h), leg2.then(h));
            if !expected.contains(&r) || !seen.insert(r) {
                ok = false;
            }
        }
        report.probes.push(XModProbe {
            probe: t.name.clone(),
            morphisms: out.len(),
            expected: expected.len(),
            bijection: ok && seen.len() == expected.len(),
        });
    }
    Ok(PushoutApex::Finite { apex, legs: (leg1, leg2), report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xmod::find_isomorphism;

    #[test]
    fn realize_identity_z2() {
        let z2 = FiniteGroup::cyclic(2);
        let pres = XModPresentation { p: z2.clone(), gen_bdry: vec![1], relations: vec![vec![(0, 0, false), (0, 0, false)]] };
        let r = pres.realize("t", 1000).unwrap();
        assert!(find_isomorphism(&r.xmod, &CrossedModule::identity(&z2)).is_some());
    }

    #[test]
    fn free_pushout_is_klein() {
        let p = GroupPresentation::free(&["a", "b"]);
        let w = p.alphabet.parse("a b a^-1 b").unwrap();
        let c = Corner::Free { p, names: vec!["s".into()], relators: vec![w.clone()] };
        match pushout_xmod(&c, 1000, &[]).unwrap() {
            PushoutApex::Free(f) => assert_eq!(f.gen(0).unwrap().bdry, w),
            _ => panic!("expected a free crossed module"),
        }
    }

    fn small_probes() -> Vec<CrossedModule> {
        crate::xmod::catalog::catalog(6)
    }

    #[test]
    fn induced_along_inclusion() {
        let z2 = FiniteGroup::cyclic(2);
        let z4 = FiniteGroup::cyclic(4);
        let ind = induced_xmod(&[0, 2], &z4, &CrossedModule::identity(&z2), 1000, &small_probes()).unwrap();
        assert_eq!(ind.xmod.m.order(), 4);
        assert!(!ind.xmod.m.elements().any(|m| ind.xmod.m.elem_order(m) == 4));
        assert!(ind.report.passed(), "{:?}", ind.report);
    }

    #[test]
    fn cone_with_trivial_a() {
        let q = FiniteGroup::symmetric3();
        let c = Corner::Cone { a: FiniteGroup::trivial(), q: q.clone(), f: vec![0] };
        match pushout_xmod(&c, 1000, &small_probes()).unwrap() {
            PushoutApex::Finite { apex, report, .. } => {
                assert_eq!(apex.m.order(), 1);
                assert_eq!(apex.p.order(), 6);
                assert!(report.passed());
            }
            _ => panic!(),
        }
    }

    #[test]
    fn pushout_of_identities_is_source() {
        let x = crate::xmod::catalog::by_name("A3<S3").unwrap();
        let id = XModMorphism::identity(&x);
        let c = Corner::Finite { x0: x.clone(), x1: x.clone(), x2: x.clone(), f1: id.clone(), f2: id };
        match pushout_xmod(&c, 2000, &small_probes()).unwrap() {
            PushoutApex::Finite { apex, report, .. } => {
                assert!(find_isomorphism(&apex, &x).is_some());
                assert!(report.passed(), "{:?}", report);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn extension_into_a3() {
        let f = FreeCrossedModule::on_free(&["a"], &[("r", "a^2")]).unwrap();
        let x = crate::xmod::catalog::by_name("A3<S3").unwrap();
        let t = x.p.elements().find(|&g| x.p.elem_order(g) == 3).unwrap();
        let t2 = x.p.mul(t, t);
        let m = x.m.elements().find(|&m| x.mu[m] == t2).unwrap();
        let h = extend_universal(&f, &[t], &x, &[m]).unwrap();
        assert_eq!(h.eval(&x, &PreWord::gen(0)), m);
        let bad = extend_universal(&f, &[t], &x, &[0]).unwrap_err();
        assert_eq!(bad, UniversalError::Incompatible("r".into()));
    }
}
