//! The functors γ and λ between double groupoids with connections and
//! crossed modules over groupoids, and round-trip checks on finite instances.
//!
//! Choices made for γ: `M(x)` is the set of squares with left, top and right
//! faces `1_x`, `μ` is the bottom face, the group law is `+₂`, and an edge
//! `p: x -> y` acts by `s^p = ε₁(p⁻¹) +₂ s +₂ ε₁(p)`.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::double::{DgError, DoubleGroupoid, LSq, Lambda};
use crate::finite::FiniteGroup;
use crate::xmod::{find_isomorphism, CrossedModule, XModGpd, XModMorphism};

#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
pub enum EquivError {
    #[error("+2 is not closed on M({0})")]
    NotClosed(usize),
    #[error("conjugating by edge {0} leaves the M groups")]
    BadAction(usize),
    #[error("gamma is not a crossed module: {0}")]
    Invalid(String),
    #[error("{0} squares is over the cap of {1}")]
    TooLarge(usize, usize),
    #[error(transparent)]
    Double(#[from] DgError),
}

/// `γD` together with the squares that make up each `M(x)`.
#[derive(Clone, Debug)]
pub struct Gamma<S> {
    pub xmod: XModGpd,
    pub members: Vec<Vec<S>>,
    pub index: HashMap<S, (usize, usize)>,
}

pub const DEFAULT_CAP: usize = 100_000;

pub fn gamma<D: DoubleGroupoid>(d: &D) -> Result<Gamma<D::Sq>, EquivError> {
    let g = d.edges();
    let all = d.squares();
    if all.len() > DEFAULT_CAP {
        return Err(EquivError::TooLarge(all.len(), DEFAULT_CAP));
    }
    let nobj = g.object_count();
    let mut members: Vec<Vec<D::Sq>> = (0..nobj).map(|x| vec![d.eps1(g.id(x))]).collect();
    for s in &all {
        let [a, _, c, e] = d.faces(s);
        let x = g.src(a);
        let one = g.id(x);
        if a == one && c == one && e == one && *s != members[x][0] {
            members[x].push(s.clone());
        }
    }
    let mut index = HashMap::new();
    for (x, ms) in members.iter().enumerate() {
        for (i, s) in ms.iter().enumerate() {
            index.insert(s.clone(), (x, i));
        }
    }
    let mut groups = Vec::with_capacity(nobj);
    for (x, ms) in members.iter().enumerate() {
        let mut table = vec![vec![0; ms.len()]; ms.len()];
        for (i, s) in ms.iter().enumerate() {
            for (j, t) in ms.iter().enumerate() {
                let u = d.compose2(s, t).ok_or(EquivError::NotClosed(x))?;
                match index.get(&u) {
                    Some(&(y, k)) if y == x => table[i][j] = k,
                    _ => return Err(EquivError::NotClosed(x)),
                }
            }
        }
        let labels = ms.iter().map(|s| d.show(s)).collect();
        groups.push(FiniteGroup::from_table(&format!("M({})", g.objects[x]), table, Some(labels)));
    }
    let mu = members.iter().map(|ms| ms.iter().map(|s| d.faces(s)[1]).collect()).collect();
    let mut action = Vec::with_capacity(g.arrow_count());
    for p in 0..g.arrow_count() {
        let (x, y) = (g.src(p), g.tgt(p));
        let left = d.eps1(g.inv(p));
        let right = d.eps1(p);
        let mut row = Vec::with_capacity(members[x].len());
        for s in &members[x] {
            let t = d.compose2(&left, s).and_then(|u| d.compose2(&u, &right)).ok_or(EquivError::BadAction(p))?;
            match index.get(&t) {
                Some(&(z, k)) if z == y => row.push(k),
                _ => return Err(EquivError::BadAction(p)),
            }
        }
        action.push(row);
    }
    let xmod = XModGpd { name: format!("γ{}", d.name()), base: g.clone(), groups, mu, action };
    if let Some(v) = xmod.validate().violations.first() {
        return Err(EquivError::Invalid(format!("{:?}", v)));
    }
    Ok(Gamma { xmod, members, index })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    GammaLambda,
    LambdaGamma,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub direction: Direction,
    pub instance: String,
    pub squares: usize,
    /// Identities checked on the explicit map.
    pub checks: usize,
    /// The explicit map, as `source index -> target index` or square pairs.
    pub witness: Option<Vec<String>>,
    /// Whether the independent isomorphism search agreed (crossed modules only).
    pub search: Option<bool>,
    pub failure: Option<String>,
}

impl EquivalenceReport {
    pub fn ok(&self) -> bool {
        self.failure.is_none() && self.search != Some(false)
    }

    fn failed(direction: Direction, instance: &str, why: String) -> EquivalenceReport {
        EquivalenceReport { direction, instance: instance.into(), squares: 0, checks: 0, witness: None, search: None, failure: Some(why) }
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = match self.direction {
            Direction::GammaLambda => "γλX ≅ X",
            Direction::LambdaGamma => "λγD ≅ D",
        };
        let status = if self.ok() { "ok" } else { "FAILED" };
        write!(f, "{} [{}] {}: {} squares, {} checks", dir, self.instance, status, self.squares, self.checks)?;
        if let Some(s) = self.search {
            write!(f, ", search {}", if s { "found an isomorphism" } else { "found nothing" })?;
        }
        if let Some(why) = &self.failure {
            write!(f, "\n  {}", why)?;
        }
        Ok(())
    }
}

/// `n ↦ (n⁻¹; 1, μn, 1, 1)` as a morphism `X -> γλX` of group crossed modules.
pub fn unit_map(x: &CrossedModule, l: &Lambda, gm: &Gamma<LSq>) -> Option<(CrossedModule, XModMorphism)> {
    let y = gm.xmod.to_group_xmod()?;
    let (_, loops) = gm.xmod.base.vertex_group(0);
    let m_map = x.m.elements().map(|n| gm.index.get(&l.core(0, n)).map(|&(_, k)| k)).collect::<Option<Vec<_>>>()?;
    let p_map = x.p.elements().map(|p| loops.iter().position(|&f| f == p)).collect::<Option<Vec<_>>>()?;
    Some((y, XModMorphism { m_map, p_map }))
}

fn bijective(map: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    map.len() == n && map.iter().all(|&k| k < n && !std::mem::replace(&mut seen[k], true))
}

pub fn roundtrip_xmod(x: &CrossedModule) -> EquivalenceReport {
    let dir = Direction::GammaLambda;
    let l = match Lambda::from_xmod(x) {
        Ok(l) => l,
        Err(e) => return EquivalenceReport::failed(dir, &x.name, e.to_string()),
    };
    let gm = match gamma(&l) {
        Ok(g) => g,
        Err(e) => return EquivalenceReport::failed(dir, &x.name, e.to_string()),
    };
    let mut rep = EquivalenceReport::failed(dir, &x.name, String::new());
    rep.squares = l.count();
    let Some((y, f)) = unit_map(x, &l, &gm) else {
        rep.failure = Some("some (n⁻¹; 1, μn, 1, 1) is missing from γλX".into());
        return rep;
    };
    rep.checks = x.m.order() * x.m.order() + x.p.order() * x.p.order() + x.m.order() * (1 + x.p.order());
    rep.witness = Some(x.m.elements().map(|n| format!("{} -> {}", x.m.label(n), y.m.label(f.m_map[n]))).collect());
    rep.search = Some(find_isomorphism(x, &y).is_some());
    rep.failure = if !bijective(&f.m_map, y.m.order()) || !bijective(&f.p_map, y.p.order()) {
        Some("unit map is not a bijection".into())
    } else if !f.is_valid(x, &y) {
        Some("unit map is not a morphism of crossed modules".into())
    } else {
        None
    };
    rep
}

/// The square of `λγD` standing for `α`: fold `α` into `M(BL)` with
/// connections, move it to the bottom-right corner along `b`, and invert.
pub fn counit_square<D: DoubleGroupoid>(d: &D, gm: &Gamma<D::Sq>, s: &D::Sq) -> Option<LSq> {
    let g = d.edges();
    let e = d.faces(s);
    let [a, b, c, r] = e;
    let t = g.inv(g.comp(g.inv(a), c)?);
    let folded = [s.clone(), d.corner_upper(r), d.eps1(t)]
        .iter()
        .try_fold(d.corner_lower(a), |acc, q| d.compose2(&acc, q))?;
    let &(x, k) = gm.index.get(&folded)?;
    if x != g.src(b) {
        return None;
    }
    let moved = gm.xmod.act(k, b);
    let n = gm.xmod.groups[g.tgt(b)].inv(moved);
    Some(LSq { n, e })
}

pub fn roundtrip_dg<D: DoubleGroupoid>(d: &D) -> EquivalenceReport {
    let dir = Direction::LambdaGamma;
    let name = d.name();
    let gm = match gamma(d) {
        Ok(g) => g,
        Err(e) => return EquivalenceReport::failed(dir, &name, e.to_string()),
    };
    let l = match Lambda::new(&gm.xmod) {
        Ok(l) => l,
        Err(e) => return EquivalenceReport::failed(dir, &name, e.to_string()),
    };
    let squares = d.squares();
    let mut rep = EquivalenceReport::failed(dir, &name, String::new());
    rep.squares = squares.len();
    let mut phi: HashMap<D::Sq, LSq> = HashMap::with_capacity(squares.len());
    for s in &squares {
        match counit_square(d, &gm, s) {
            Some(t) if l.is_square(&t) => {
                phi.insert(s.clone(), t);
            }
            _ => {
                rep.failure = Some(format!("{} has no image in λγD", d.show(s)));
                return rep;
            }
        }
    }
    let mut image: Vec<LSq> = phi.values().copied().collect();
    image.sort();
    image.dedup();
    if image.len() != squares.len() || l.count() != squares.len() {
        rep.failure = Some(format!("{} squares map onto {} of {}", squares.len(), image.len(), l.count()));
        return rep;
    }
    let mut checks = 0;
    let mut bad: Option<String> = None;
    let mut expect = |what: &str, lhs: Option<LSq>, rhs: LSq| {
        checks += 1;
        if bad.is_none() && lhs != Some(rhs) {
            bad = Some(format!("{}: {:?} vs {:?}", what, lhs, rhs));
        }
    };
    let g = d.edges();
    for f in 0..g.arrow_count() {
        expect("ε₁", phi.get(&d.eps1(f)).copied(), l.eps1(f));
        expect("ε₂", phi.get(&d.eps2(f)).copied(), l.eps2(f));
        expect("Γ⁻", phi.get(&d.gamma_minus(f)).copied(), l.gamma_minus(f));
        expect("Γ⁺", phi.get(&d.gamma_plus(f)).copied(), l.gamma_plus(f));
    }
    let mut by_top: HashMap<usize, Vec<&D::Sq>> = HashMap::new();
    let mut by_left: HashMap<usize, Vec<&D::Sq>> = HashMap::new();
    for s in &squares {
        let e = d.faces(s);
        by_top.entry(e[2]).or_default().push(s);
        by_left.entry(e[0]).or_default().push(s);
    }
    for s in &squares {
        let ps = phi[s];
        expect("−₁", phi.get(&d.inv1(s)).copied(), l.inv1(&ps));
        expect("−₂", phi.get(&d.inv2(s)).copied(), l.inv2(&ps));
        let e = d.faces(s);
        for t in by_top.get(&e[1]).into_iter().flatten() {
            let lhs = d.compose1(s, t).and_then(|u| phi.get(&u).copied());
            expect("+₁", lhs, l.compose1(&ps, &phi[*t]).expect("faces agree"));
        }
        for t in by_left.get(&e[3]).into_iter().flatten() {
            let lhs = d.compose2(s, t).and_then(|u| phi.get(&u).copied());
            expect("+₂", lhs, l.compose2(&ps, &phi[*t]).expect("faces agree"));
        }
    }
    rep.checks = checks;
    rep.failure = bad;
    if rep.failure.is_none() && squares.len() <= 64 {
        rep.witness = Some(squares.iter().map(|s| format!("{} -> {}", d.show(s), l.show(&phi[s]))).collect());
    }
    rep
}

/// `γλf` agrees with `f` through the unit maps of source and target.
pub fn gamma_functorial(x: &CrossedModule, y: &CrossedModule, f: &XModMorphism) -> Result<bool, EquivError> {
    let (lx, ly) = (Lambda::from_xmod(x)?, Lambda::from_xmod(y)?);
    let (gx, gy) = (gamma(&lx)?, gamma(&ly)?);
    let (Some((_, ux)), Some((_, uy))) = (unit_map(x, &lx, &gx), unit_map(y, &ly, &gy)) else {
        return Ok(false);
    };
    let m_ok = x.m.elements().all(|n| {
        let s = gx.members[0][ux.m_map[n]];
        let t = Lambda::map_square(f, &s);
        gy.index.get(&t) == Some(&(0, uy.m_map[f.m_map[n]]))
    });
    let p_ok = x.p.elements().all(|p| Lambda::map_square(f, &lx.eps1(p)) == ly.eps1(f.p_map[p]));
    Ok(m_ok && p_ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::BoxG;
    use crate::groupoid::FiniteGroupoid;
    use crate::xmod::catalog::{by_name, catalog, morphisms};

    #[test]
    fn gamma_of_box_is_trivial() {
        for g in [FiniteGroup::cyclic(2), FiniteGroup::symmetric3()] {
            let gm = gamma(&BoxG::new(&FiniteGroupoid::from_group(&g))).unwrap();
            assert_eq!(gm.xmod.groups[0].order(), 1);
        }
        let gm = gamma(&BoxG::new(&FiniteGroupoid::interval())).unwrap();
        assert!(gm.xmod.groups.iter().all(|m| m.order() == 1));
    }

    #[test]
    fn gamma_lambda_z2() {
        let x = CrossedModule::identity(&FiniteGroup::cyclic(2));
        let l = Lambda::from_xmod(&x).unwrap();
        let gm = gamma(&l).unwrap();
        let (y, f) = unit_map(&x, &l, &gm).unwrap();
        assert!(f.is_valid(&x, &y));
        assert_eq!(gm.members[0][f.m_map[1]], LSq { n: 1, e: [0, 1, 0, 0] });
    }

    #[test]
    fn xmod_round_trips() {
        for name in ["A3<S3", "1->1", "Z2-0->1"] {
            let x = by_name(name).unwrap_or_else(|| panic!("{}", name));
            let r = roundtrip_xmod(&x);
            assert!(r.ok(), "{}", r);
        }
        let z2 = FiniteGroup::cyclic(2);
        let r = roundtrip_xmod(&CrossedModule::trivial_boundary(&z2, &z2));
        assert!(r.ok(), "{}", r);
    }

    #[test]
    fn dg_round_trips() {
        let r = roundtrip_dg(&BoxG::new(&FiniteGroupoid::from_group(&FiniteGroup::cyclic(2))));
        assert!(r.ok(), "{}", r);
        assert_eq!(r.squares, 8);
        let r = roundtrip_dg(&BoxG::new(&FiniteGroupoid::interval()));
        assert!(r.ok(), "{}", r);
        for x in catalog(4) {
            let r = roundtrip_dg(&Lambda::from_xmod(&x).unwrap());
            assert!(r.ok(), "{}", r);
        }
        let one = roundtrip_dg(&Lambda::from_xmod(&CrossedModule::identity(&FiniteGroup::trivial())).unwrap());
        assert_eq!(one.squares, 1);
        assert!(one.ok());
    }

    #[test]
    fn functorial_on_catalog_morphisms() {
        for (a, b, f) in morphisms() {
            let (x, y) = (by_name(&a).unwrap(), by_name(&b).unwrap());
            assert!(gamma_functorial(&x, &y, &f).unwrap(), "{} -> {}", a, b);
        }
    }

    #[test]
    fn corrupted_lambda_is_rejected() {
        let s3 = FiniteGroup::symmetric3();
        let x = CrossedModule::trivial_boundary(&s3, &FiniteGroup::trivial());
        let l = Lambda::unchecked(x.to_gpd());
        assert!(gamma(&l).is_err());
    }
}
