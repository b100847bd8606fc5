//! Crossed modules over finite groups and finite groupoids.
//!
//! Over a group the action is on the left, `action[p][m] = ^p m`.
//! Over a groupoid it is on the right along arrows in path order: for
//! `p: x -> y` and `m` in `M(x)`, `action[p][m] = m^p` lies in `M(y)`.
//! The two agree through `m^p = ^{p^-1} m`.

pub mod catalog;
pub mod complex;
pub mod format;
pub mod free;
pub mod universal;

use serde::Serialize;

use crate::finite::FiniteGroup;
use crate::groupoid::FiniteGroupoid;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    pub name: String,
    pub m: FiniteGroup,
    pub p: FiniteGroup,
    pub mu: Vec<usize>,
    pub action: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum XModViolation {
    Shape { what: String },
    MuHom { x: usize, y: usize },
    ActionHom { p: usize, m: usize, n: usize },
    ActionUnit { m: usize },
    ActionCompose { p: usize, q: usize, m: usize },
    Cm1 { p: usize, m: usize },
    Cm2 { m: usize, n: usize },
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct XModReport {
    pub violations: Vec<XModViolation>,
}

impl XModReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn shape(what: &str) -> XModReport {
    XModReport { violations: vec![XModViolation::Shape { what: what.into() }] }
}

impl CrossedModule {
    pub fn new(name: &str, m: FiniteGroup, p: FiniteGroup, mu: Vec<usize>, action: Vec<Vec<usize>>) -> CrossedModule {
        CrossedModule { name: name.into(), m, p, mu, action }
    }

    pub fn act(&self, p: usize, m: usize) -> usize {
        self.action[p][m]
    }

    /// `P -> P` with conjugation.
    pub fn identity(g: &FiniteGroup) -> CrossedModule {
        let action = g.elements().map(|p| g.elements().map(|m| g.conj(p, m)).collect()).collect();
        CrossedModule::new(&format!("{}->{}", g.name, g.name), g.clone(), g.clone(), g.elements().collect(), action)
    }

    /// Inclusion of a normal subgroup, conjugation action.
    pub fn normal_inclusion(g: &FiniteGroup, name: &str, n: &std::collections::BTreeSet<usize>) -> CrossedModule {
        assert!(g.is_normal(n), "subgroup is not normal");
        let (sub, emb) = g.subgroup(name, n);
        let pos = |x: usize| emb.iter().position(|&e| e == x).unwrap();
        let action = g
            .elements()
            .map(|p| sub.elements().map(|m| pos(g.conj(p, emb[m]))).collect())
            .collect();
        CrossedModule::new(&format!("{}<{}", name, g.name), sub, g.clone(), emb, action)
    }

    /// `1 -> P`.
    pub fn trivial_over(p: &FiniteGroup) -> CrossedModule {
        let one = FiniteGroup::trivial();
        CrossedModule::new(&format!("1->{}", p.name), one, p.clone(), vec![0], vec![vec![0]; p.order()])
    }

    /// `M -> P` with trivial boundary and trivial action; valid iff `M` abelian.
    pub fn trivial_boundary(m: &FiniteGroup, p: &FiniteGroup) -> CrossedModule {
        CrossedModule::new(
            &format!("{}-0->{}", m.name, p.name),
            m.clone(),
            p.clone(),
            vec![0; m.order()],
            vec![m.elements().collect(); p.order()],
        )
    }

    /// `G -> Aut(G)`, `g` to conjugation by `g`.
    pub fn inner(g: &FiniteGroup) -> CrossedModule {
        let mut auts = g.automorphisms();
        auts.sort();
        // identity first
        let idp = auts.iter().position(|a| a.iter().enumerate().all(|(i, &x)| i == x)).unwrap();
        auts.swap(0, idp);
        let pos = |a: &Vec<usize>| auts.iter().position(|b| b == a).unwrap();
        // product phi*psi acts as phi after psi, so ^{phi psi} m = phi(psi(m))
        let table = auts
            .iter()
            .map(|phi| auts.iter().map(|psi| pos(&psi.iter().map(|&x| phi[x]).collect())).collect())
            .collect();
        let aut = FiniteGroup::from_table(&format!("Aut({})", g.name), table, None);
        let mu = g
            .elements()
            .map(|x| pos(&g.elements().map(|m| g.conj(x, m)).collect()))
            .collect();
        let action = auts.clone();
        CrossedModule::new(&format!("{}->Aut({})", g.name, g.name), g.clone(), aut, mu, action)
    }

    /// `G -> G/N` for a central `N`, action by conjugation through coset representatives.
    pub fn central_quotient(g: &FiniteGroup, n: &std::collections::BTreeSet<usize>) -> CrossedModule {
        let (q, cls) = g.quotient(&format!("{}/Z", g.name), n);
        let mut action = vec![Vec::new(); q.order()];
        for x in g.elements() {
            if action[cls[x]].is_empty() {
                action[cls[x]] = g.elements().map(|m| g.conj(x, m)).collect();
            }
        }
        CrossedModule::new(&format!("{}->{}/Z", g.name, g.name), g.clone(), q, cls, action)
    }

    pub fn validate(&self) -> XModReport {
        validate_xmod(self)
    }

    /// Square count of the associated double groupoid.
    pub fn square_count(&self) -> usize {
        self.m.order() * self.p.order().pow(3)
    }

    pub fn to_gpd(&self) -> XModGpd {
        let base = FiniteGroupoid::from_group(&self.p);
        let action = self
            .p
            .elements()
            .map(|p| self.action[self.p.inv(p)].clone())
            .collect();
        XModGpd {
            name: self.name.clone(),
            base,
            groups: vec![self.m.clone()],
            mu: vec![self.mu.clone()],
            action,
        }
    }
}

pub fn validate_xmod(x: &CrossedModule) -> XModReport {
    let (m, p) = (&x.m, &x.p);
    if x.mu.len() != m.order() || x.mu.iter().any(|&v| v >= p.order()) {
        return shape("mu is not a map M -> P");
    }
    if x.action.len() != p.order() || x.action.iter().any(|r| r.len() != m.order() || r.iter().any(|&v| v >= m.order())) {
        return shape("action table has the wrong shape");
    }
    let mut v = Vec::new();
    for a in m.elements() {
        for b in m.elements() {
            if x.mu[m.mul(a, b)] != p.mul(x.mu[a], x.mu[b]) {
                v.push(XModViolation::MuHom { x: a, y: b });
            }
        }
    }
    for a in m.elements() {
        if x.action[0][a] != a {
            v.push(XModViolation::ActionUnit { m: a });
        }
    }
    for g in p.elements() {
        for a in m.elements() {
            for b in m.elements() {
                if x.action[g][m.mul(a, b)] != m.mul(x.action[g][a], x.action[g][b]) {
                    v.push(XModViolation::ActionHom { p: g, m: a, n: b });
                }
            }
        }
    }
    for g in p.elements() {
        for h in p.elements() {
            for a in m.elements() {
                if x.action[p.mul(g, h)][a] != x.action[g][x.action[h][a]] {
                    v.push(XModViolation::ActionCompose { p: g, q: h, m: a });
                }
            }
        }
    }
    for g in p.elements() {
        for a in m.elements() {
            if x.mu[x.action[g][a]] != p.conj(g, x.mu[a]) {
                v.push(XModViolation::Cm1 { p: g, m: a });
            }
        }
    }
    for a in m.elements() {
        for b in m.elements() {
            if m.conj(a, b) != x.action[x.mu[a]][b] {
                v.push(XModViolation::Cm2 { m: a, n: b });
            }
        }
    }
    XModReport { violations: v }
}

/// Crossed module over a finite groupoid; see the module notes for the
/// side of the action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XModGpd {
    pub name: String,
    pub base: FiniteGroupoid,
    pub groups: Vec<FiniteGroup>,
    /// `mu[x][m]` is an arrow index, a loop at `x`.
    pub mu: Vec<Vec<usize>>,
    /// `action[p][m] = m^p`.
    pub action: Vec<Vec<usize>>,
}

impl XModGpd {
    pub fn act(&self, m: usize, p: usize) -> usize {
        self.action[p][m]
    }

    /// `1 -> G` over a finite groupoid.
    pub fn trivial_over(g: &FiniteGroupoid) -> XModGpd {
        XModGpd {
            name: format!("1->{}", g.name),
            base: g.clone(),
            groups: vec![FiniteGroup::trivial(); g.object_count()],
            mu: (0..g.object_count()).map(|x| vec![g.id(x)]).collect(),
            action: vec![vec![0]; g.arrow_count()],
        }
    }

    pub fn validate(&self) -> XModReport {
        validate_xmod_gpd(self)
    }

    /// Back to a left-action crossed module over the vertex group of a one-object base.
    pub fn to_group_xmod(&self) -> Option<CrossedModule> {
        if !self.base.is_one_object() {
            return None;
        }
        let (p, loops) = self.base.vertex_group(0);
        let pos = |f: usize| loops.iter().position(|&l| l == f).unwrap();
        let mu = self.mu[0].iter().map(|&f| pos(f)).collect();
        let action = p.elements().map(|g| self.action[self.base.inv(loops[g])].clone()).collect();
        Some(CrossedModule::new(&self.name, self.groups[0].clone(), p, mu, action))
    }
}

pub fn validate_xmod_gpd(x: &XModGpd) -> XModReport {
    let b = &x.base;
    if !b.validate().is_valid() {
        return shape("base is not a groupoid");
    }
    if x.groups.len() != b.object_count() || x.mu.len() != b.object_count() || x.action.len() != b.arrow_count() {
        return shape("family sizes do not match the base");
    }
    for o in 0..b.object_count() {
        if x.mu[o].len() != x.groups[o].order() || x.mu[o].iter().any(|&f| f >= b.arrow_count() || b.src(f) != o || b.tgt(f) != o) {
            return shape("mu must land in loops at each object");
        }
    }
    for p in 0..b.arrow_count() {
        let (s, t) = (b.src(p), b.tgt(p));
        if x.action[p].len() != x.groups[s].order() || x.action[p].iter().any(|&v| v >= x.groups[t].order()) {
            return shape("action of an arrow has the wrong shape");
        }
    }
    let mut v = Vec::new();
    for o in 0..b.object_count() {
        let g = &x.groups[o];
        for m in g.elements() {
            for n in g.elements() {
                if x.mu[o][g.mul(m, n)] != b.c(x.mu[o][m], x.mu[o][n]) {
                    v.push(XModViolation::MuHom { x: m, y: n });
                }
                // n^{mu m} = m^-1 n m
                if x.act(n, x.mu[o][m]) != g.mul(g.mul(g.inv(m), n), m) {
                    v.push(XModViolation::Cm2 { m, n });
                }
            }
            if x.act(m, b.id(o)) != m {
                v.push(XModViolation::ActionUnit { m });
            }
        }
    }
    for p in 0..b.arrow_count() {
        let (s, t) = (b.src(p), b.tgt(p));
        let (gs, gt) = (&x.groups[s], &x.groups[t]);
        for m in gs.elements() {
            for n in gs.elements() {
                if x.act(gs.mul(m, n), p) != gt.mul(x.act(m, p), x.act(n, p)) {
                    v.push(XModViolation::ActionHom { p, m, n });
                }
            }
            // mu(m^p) = p^-1 mu(m) p
            let lhs = x.mu[t][x.act(m, p)];
            let rhs = b.c(b.c(b.inv(p), x.mu[s][m]), p);
            if lhs != rhs {
                v.push(XModViolation::Cm1 { p, m });
            }
        }
        for q in b.from_obj(t) {
            let pq = b.c(p, q);
            for m in gs.elements() {
                if x.act(m, pq) != x.act(x.act(m, p), q) {
                    v.push(XModViolation::ActionCompose { p, q, m });
                }
            }
        }
    }
    XModReport { violations: v }
}

/// A morphism of crossed modules over groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct XModMorphism {
    pub m_map: Vec<usize>,
    pub p_map: Vec<usize>,
}

impl XModMorphism {
    pub fn identity(x: &CrossedModule) -> XModMorphism {
        XModMorphism { m_map: x.m.elements().collect(), p_map: x.p.elements().collect() }
    }

    pub fn is_valid(&self, x: &CrossedModule, y: &CrossedModule) -> bool {
        x.m.is_hom(&self.m_map, &y.m)
            && x.p.is_hom(&self.p_map, &y.p)
            && compatible(x, y, &self.m_map, &self.p_map)
    }

    pub fn then(&self, next: &XModMorphism) -> XModMorphism {
        XModMorphism {
            m_map: self.m_map.iter().map(|&a| next.m_map[a]).collect(),
            p_map: self.p_map.iter().map(|&a| next.p_map[a]).collect(),
        }
    }
}

fn compatible(x: &CrossedModule, y: &CrossedModule, fm: &[usize], fp: &[usize]) -> bool {
    x.m.elements().all(|m| y.mu[fm[m]] == fp[x.mu[m]])
        && x.p.elements().all(|p| x.m.elements().all(|m| fm[x.act(p, m)] == y.act(fp[p], fm[m])))
}

pub fn xmod_morphisms(x: &CrossedModule, y: &CrossedModule) -> Vec<XModMorphism> {
    let ms = x.m.homs(&y.m);
    let mut out = Vec::new();
    for fp in x.p.homs(&y.p) {
        for fm in &ms {
            if compatible(x, y, fm, &fp) {
                out.push(XModMorphism { m_map: fm.clone(), p_map: fp.clone() });
            }
        }
    }
    out
}

/// Backtracks over isomorphisms of the `P` parts, then of the `M` parts,
/// pruned by element-order profiles.
pub fn find_isomorphism(x: &CrossedModule, y: &CrossedModule) -> Option<XModMorphism> {
    if x.m.order() != y.m.order() || x.p.order() != y.p.order() {
        return None;
    }
    let profile = |g: &FiniteGroup| {
        let mut v: Vec<usize> = g.elements().map(|e| g.elem_order(e)).collect();
        v.sort();
        v
    };
    if profile(&x.m) != profile(&y.m) || profile(&x.p) != profile(&y.p) {
        return None;
    }
    let ms = x.m.isomorphisms(&y.m);
    for fp in x.p.isomorphisms(&y.p) {
        for fm in &ms {
            if compatible(x, y, fm, &fp) {
                return Some(XModMorphism { m_map: fm.clone(), p_map: fp });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_validity() {
        let s3 = FiniteGroup::symmetric3();
        assert!(CrossedModule::identity(&s3).validate().is_valid());
        let a3 = s3.subgroup_closure(&[s3.elements().find(|&e| s3.elem_order(e) == 3).unwrap()]);
        assert!(CrossedModule::normal_inclusion(&s3, "A3", &a3).validate().is_valid());
        let bad = CrossedModule::trivial_boundary(&s3, &FiniteGroup::trivial());
        let r = bad.validate();
        assert!(!r.is_valid());
        assert!(r.violations.iter().all(|v| matches!(v, XModViolation::Cm2 { .. })));
    }

    #[test]
    fn gpd_roundtrip() {
        let x = CrossedModule::inner(&FiniteGroup::symmetric3());
        assert!(x.validate().is_valid());
        let g = x.to_gpd();
        assert!(g.validate().is_valid());
        let back = g.to_group_xmod().unwrap();
        assert!(find_isomorphism(&x, &back).is_some());
    }
}
