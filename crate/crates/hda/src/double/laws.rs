//! Law suites. `brute_force` works for any double groupoid and checks every
//! composable triple and quadruple; `lambda_suite` covers the larger `λX`
//! by checking that composition commutes with gauge transformations at
//! grid vertices on every composable pair, and then checking associativity
//! and interchange on one gauge-fixed representative per orbit.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use super::lambda::{Corner, LSq, Lambda};
use super::{compose_array, compose_array_cols, DoubleGroupoid};

const KEEP: usize = 20;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LawViolation {
    pub law: String,
    pub witness: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct LawReport {
    pub name: String,
    /// Instances checked per law.
    pub checks: BTreeMap<String, usize>,
    pub violation_count: usize,
    /// The first few witnesses.
    pub violations: Vec<LawViolation>,
}

impl LawReport {
    pub fn new(name: &str) -> LawReport {
        LawReport { name: name.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    pub fn check(&mut self, law: &str, ok: bool, witness: impl FnOnce() -> String) {
        *self.checks.entry(law.to_string()).or_default() += 1;
        if !ok {
            self.violation_count += 1;
            if self.violations.len() < KEEP {
                self.violations.push(LawViolation { law: law.into(), witness: witness() });
            }
        }
    }

    pub fn total(&self) -> usize {
        self.checks.values().sum()
    }

    pub fn merge(&mut self, other: LawReport) {
        for (k, v) in other.checks {
            *self.checks.entry(k).or_default() += v;
        }
        self.violation_count += other.violation_count;
        for v in other.violations {
            if self.violations.len() < KEEP {
                self.violations.push(v);
            }
        }
    }

    pub fn summary(&self) -> String {
        format!("{}: {} checks, {} violations", self.name, self.total(), self.violation_count)
    }
}

struct Index<S> {
    all: Vec<S>,
    set: HashSet<S>,
    by_top: HashMap<usize, Vec<usize>>,
    by_left: HashMap<usize, Vec<usize>>,
}

fn index<D: DoubleGroupoid>(d: &D) -> Index<D::Sq> {
    let all = d.squares();
    let mut by_top: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut by_left: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, s) in all.iter().enumerate() {
        let f = d.faces(s);
        by_top.entry(f[2]).or_default().push(i);
        by_left.entry(f[0]).or_default().push(i);
    }
    let set = all.iter().cloned().collect();
    Index { all, set, by_top, by_left }
}

fn get<'a>(m: &'a HashMap<usize, Vec<usize>>, k: usize) -> &'a [usize] {
    m.get(&k).map_or(&[], |v| v.as_slice())
}

/// Identity and inverse laws for each square.
fn unit_laws<D: DoubleGroupoid>(d: &D, ix: &Index<D::Sq>, r: &mut LawReport) {
    for s in &ix.all {
        let [a, b, c, dd] = d.faces(s);
        let w = || d.show(s);
        r.check("identity1", d.compose1(&d.eps1(c), s).as_ref() == Some(s) && d.compose1(s, &d.eps1(b)).as_ref() == Some(s), w);
        r.check("identity2", d.compose2(&d.eps2(a), s).as_ref() == Some(s) && d.compose2(s, &d.eps2(dd)).as_ref() == Some(s), w);
        let i1 = d.inv1(s);
        r.check(
            "inverse1",
            ix.set.contains(&i1) && d.compose1(s, &i1) == Some(d.eps1(c)) && d.compose1(&i1, s) == Some(d.eps1(b)),
            w,
        );
        let i2 = d.inv2(s);
        r.check(
            "inverse2",
            ix.set.contains(&i2) && d.compose2(s, &i2) == Some(d.eps2(a)) && d.compose2(&i2, s) == Some(d.eps2(dd)),
            w,
        );
    }
}

/// Faces and closure of every composite.
fn pair_laws<D: DoubleGroupoid>(d: &D, ix: &Index<D::Sq>, r: &mut LawReport) {
    let g = d.edges();
    for x in &ix.all {
        let fx = d.faces(x);
        for &j in get(&ix.by_top, fx[1]) {
            let y = &ix.all[j];
            let fy = d.faces(y);
            let z = d.compose1(x, y);
            let ok = z.as_ref().is_some_and(|z| {
                ix.set.contains(z) && d.faces(z) == [g.c(fx[0], fy[0]), fy[1], fx[2], g.c(fx[3], fy[3])]
            });
            r.check("composite1", ok, || format!("{} over {}", d.show(x), d.show(y)));
        }
        for &j in get(&ix.by_left, fx[3]) {
            let y = &ix.all[j];
            let fy = d.faces(y);
            let z = d.compose2(x, y);
            let ok = z.as_ref().is_some_and(|z| {
                ix.set.contains(z) && d.faces(z) == [fx[0], g.c(fx[1], fy[1]), g.c(fx[2], fy[2]), fy[3]]
            });
            r.check("composite2", ok, || format!("{} beside {}", d.show(x), d.show(y)));
        }
    }
}

/// Cancellation, transport and the faces of connections.
pub fn connection_laws<D: DoubleGroupoid>(d: &D, r: &mut LawReport) {
    let g = d.edges();
    for x in 0..g.arrow_count() {
        let (gm, gp) = (d.gamma_minus(x), d.gamma_plus(x));
        let (i0, i1) = (g.id(g.src(x)), g.id(g.tgt(x)));
        let name = &g.arrows[x].name;
        r.check("connection_faces", d.faces(&gm) == [i0, x, i0, x] && d.faces(&gp) == [x, i1, x, i1], || name.clone());
        r.check("connection_thin", d.is_thin(&gm) && d.is_thin(&gp) && d.is_thin(&d.eps1(x)) && d.is_thin(&d.eps2(x)), || name.clone());
        r.check("cancellation", d.compose2(&gm, &gp) == Some(d.eps1(x)), || format!("[Γ⁻ Γ⁺]({})", name));
        r.check("cancellation", d.compose1(&gm, &gp) == Some(d.eps2(x)), || format!("Γ⁻ over Γ⁺ ({})", name));
        if g.is_identity(x) {
            r.check("connection_identity", gm == d.eps1(x) && gp == d.eps1(x) && d.eps1(x) == d.eps2(x), || name.clone());
        }
        for y in g.from_obj(g.tgt(x)) {
            let xy = g.c(x, y);
            let tm = vec![vec![d.gamma_minus(x), d.eps2(x)], vec![d.eps1(x), d.gamma_minus(y)]];
            let tp = vec![vec![d.gamma_plus(x), d.eps1(y)], vec![d.eps2(y), d.gamma_plus(y)]];
            let w = || format!("({}, {})", name, g.arrows[y].name);
            r.check("transport", compose_array(d, &tm).ok() == Some(d.gamma_minus(xy)), w);
            r.check("transport", compose_array(d, &tp).ok() == Some(d.gamma_plus(xy)), w);
        }
    }
}

/// Thin squares: closed under composition and fixed by their boundary.
fn thin_laws<D: DoubleGroupoid>(d: &D, ix: &Index<D::Sq>, r: &mut LawReport) {
    let thin: Vec<&D::Sq> = ix.all.iter().filter(|s| d.is_thin(s)).collect();
    let mut by_faces: HashMap<[usize; 4], usize> = HashMap::new();
    for s in &thin {
        *by_faces.entry(d.faces(s)).or_default() += 1;
    }
    for (f, k) in &by_faces {
        r.check("thin_boundary", *k == 1, || format!("{} thin squares on {:?}", k, f));
    }
    let mut top: HashMap<usize, Vec<&D::Sq>> = HashMap::new();
    let mut left: HashMap<usize, Vec<&D::Sq>> = HashMap::new();
    for s in &thin {
        top.entry(d.faces(s)[2]).or_default().push(s);
        left.entry(d.faces(s)[0]).or_default().push(s);
    }
    for x in &thin {
        let f = d.faces(x);
        for y in top.get(&f[1]).into_iter().flatten() {
            r.check("thin_closure", d.compose1(x, y).is_some_and(|z| d.is_thin(&z)), || d.show(x));
        }
        for y in left.get(&f[3]).into_iter().flatten() {
            r.check("thin_closure", d.compose2(x, y).is_some_and(|z| d.is_thin(&z)), || d.show(x));
        }
    }
}

/// Every law, checked on every instance, including all composable triples
/// and 2×2 arrays.
pub fn brute_force<D: DoubleGroupoid>(d: &D) -> LawReport {
    let mut r = LawReport::new(&d.name());
    let ix = index(d);
    unit_laws(d, &ix, &mut r);
    pair_laws(d, &ix, &mut r);
    connection_laws(d, &mut r);
    thin_laws(d, &ix, &mut r);
    for a in &ix.all {
        let fa = d.faces(a);
        for &j in get(&ix.by_top, fa[1]) {
            let b = &ix.all[j];
            let ab = d.compose1(a, b).unwrap();
            for &k in get(&ix.by_top, d.faces(b)[1]) {
                let c = &ix.all[k];
                let lhs = d.compose1(&ab, c);
                let rhs = d.compose1(b, c).and_then(|bc| d.compose1(a, &bc));
                r.check("assoc1", lhs.is_some() && lhs == rhs, || format!("{} / {} / {}", d.show(a), d.show(b), d.show(c)));
            }
        }
        for &j in get(&ix.by_left, fa[3]) {
            let b = &ix.all[j];
            let ab = d.compose2(a, b).unwrap();
            for &k in get(&ix.by_left, d.faces(b)[3]) {
                let c = &ix.all[k];
                let lhs = d.compose2(&ab, c);
                let rhs = d.compose2(b, c).and_then(|bc| d.compose2(a, &bc));
                r.check("assoc2", lhs.is_some() && lhs == rhs, || format!("{} | {} | {}", d.show(a), d.show(b), d.show(c)));
            }
        }
        // a γ / β δ
        for &jb in get(&ix.by_top, fa[1]) {
            let b = &ix.all[jb];
            let db = d.faces(b)[3];
            for &jc in get(&ix.by_left, fa[3]) {
                let c = &ix.all[jc];
                for &jd in get(&ix.by_top, d.faces(c)[1]) {
                    let e = &ix.all[jd];
                    if d.faces(e)[0] != db {
                        continue;
                    }
                    let arr = vec![vec![a.clone(), c.clone()], vec![b.clone(), e.clone()]];
                    let lhs = compose_array(d, &arr).ok();
                    let rhs = compose_array_cols(d, &arr).ok();
                    r.check("interchange", lhs.is_some() && lhs == rhs, || format!("[{} {}; {} {}]", d.show(a), d.show(c), d.show(b), d.show(e)));
                }
            }
        }
    }
    r
}

/// Gauges the pair `(x, y)` at one grid vertex; `parts` lists `(0 for x / 1 for y, corner)`.
fn gauge_pair(l: &Lambda, x: &LSq, y: &LSq, parts: &[(u8, Corner)], p: usize) -> Option<(LSq, LSq)> {
    let (mut gx, mut gy) = (*x, *y);
    for &(k, c) in parts {
        if k == 0 {
            gx = l.gauge(&gx, c, p)?;
        } else {
            gy = l.gauge(&gy, c, p)?;
        }
    }
    Some((gx, gy))
}

/// Arrows used as gauge generators at `v`.
fn gauge_gens(l: &Lambda, v: usize) -> Vec<usize> {
    let g = &l.x.base;
    if g.is_one_object() {
        let (vg, loops) = g.vertex_group(v);
        vg.generators().into_iter().map(|k| loops[k]).collect()
    } else {
        g.from_obj(v).into_iter().filter(|&f| !g.is_identity(f)).collect()
    }
}

/// The gauge-reduced suite for `λX`.
pub fn lambda_suite(l: &Lambda) -> LawReport {
    let mut r = LawReport::new(&l.name());
    let ix = index(l);
    let expected = l.count();
    r.check("enumeration", ix.all.len() == expected && ix.set.len() == expected, || format!("{} squares", ix.all.len()));
    for s in &ix.all {
        r.check("boundary", l.is_square(s), || l.show(s));
    }
    unit_laws(l, &ix, &mut r);
    pair_laws(l, &ix, &mut r);
    connection_laws(l, &mut r);
    thin_laws(l, &ix, &mut r);
    let g = &l.x.base;
    let gens: Vec<Vec<usize>> = (0..g.object_count()).map(|v| gauge_gens(l, v)).collect();
    // equivariance on every composable pair, at each grid vertex
    for x in &ix.all {
        let fx = x.e;
        let (tl, bl, tr, br) = (g.src(fx[0]), g.tgt(fx[0]), g.tgt(fx[2]), g.tgt(fx[1]));
        for &j in get(&ix.by_top, fx[1]) {
            let y = &ix.all[j];
            let z = l.compose1(x, y).unwrap();
            let (bl2, br2) = (g.tgt(y.e[0]), g.tgt(y.e[1]));
            // grid vertices: (x parts, composite corner)
            let grid: [(usize, Vec<(u8, Corner)>, Option<Corner>); 6] = [
                (tl, vec![(0, Corner::TL)], Some(Corner::TL)),
                (tr, vec![(0, Corner::TR)], Some(Corner::TR)),
                (bl, vec![(0, Corner::BL), (1, Corner::TL)], None),
                (br, vec![(0, Corner::BR), (1, Corner::TR)], None),
                (bl2, vec![(1, Corner::BL)], Some(Corner::BL)),
                (br2, vec![(1, Corner::BR)], Some(Corner::BR)),
            ];
            for (v, parts, corner) in &grid {
                for &p in &gens[*v] {
                    let (mx, my) = gauge_pair(l, x, y, parts, p).unwrap();
                    let lhs = l.compose1(&mx, &my);
                    let rhs = match corner {
                        Some(c) => l.gauge(&z, *c, p),
                        None => Some(z),
                    };
                    r.check("gauge1", lhs.is_some() && lhs == rhs, || format!("{} over {} at vertex {} by {}", l.show(x), l.show(y), v, p));
                }
            }
        }
        for &j in get(&ix.by_left, fx[3]) {
            let y = &ix.all[j];
            let z = l.compose2(x, y).unwrap();
            let (tr2, br2) = (g.tgt(y.e[2]), g.tgt(y.e[1]));
            let grid: [(usize, Vec<(u8, Corner)>, Option<Corner>); 6] = [
                (tl, vec![(0, Corner::TL)], Some(Corner::TL)),
                (bl, vec![(0, Corner::BL)], Some(Corner::BL)),
                (tr, vec![(0, Corner::TR), (1, Corner::TL)], None),
                (br, vec![(0, Corner::BR), (1, Corner::BL)], None),
                (tr2, vec![(1, Corner::TR)], Some(Corner::TR)),
                (br2, vec![(1, Corner::BR)], Some(Corner::BR)),
            ];
            for (v, parts, corner) in &grid {
                for &p in &gens[*v] {
                    let (mx, my) = gauge_pair(l, x, y, parts, p).unwrap();
                    let lhs = l.compose2(&mx, &my);
                    let rhs = match corner {
                        Some(c) => l.gauge(&z, *c, p),
                        None => Some(z),
                    };
                    r.check("gauge2", lhs.is_some() && lhs == rhs, || format!("{} beside {} at vertex {} by {}", l.show(x), l.show(y), v, p));
                }
            }
        }
    }
    // gauge-fixed representatives: tree edges are identities at one object per component
    for comp in g.components() {
        let v = comp[0];
        let i = g.id(v);
        let m = &l.x.groups[v];
        let col = |n: usize, top: usize| l.solve_b(n, i, top, i).unwrap();
        let row = |n: usize, left: usize| l.solve_d(n, left, i, i).unwrap();
        for n1 in m.elements() {
            for n2 in m.elements() {
                let (a1, b1) = (col(n1, i), row(n1, i));
                let (a2, b2) = (col(n2, a1.e[1]), row(n2, b1.e[3]));
                for n3 in m.elements() {
                    let a3 = col(n3, a2.e[1]);
                    let lhs = l.compose1(&l.compose1(&a1, &a2).unwrap(), &a3);
                    let rhs = l.compose1(&a1, &l.compose1(&a2, &a3).unwrap());
                    r.check("assoc1", lhs.is_some() && lhs == rhs, || format!("n = {} {} {}", n1, n2, n3));
                    let b3 = row(n3, b2.e[3]);
                    let lhs = l.compose2(&l.compose2(&b1, &b2).unwrap(), &b3);
                    let rhs = l.compose2(&b1, &l.compose2(&b2, &b3).unwrap());
                    r.check("assoc2", lhs.is_some() && lhs == rhs, || format!("n = {} {} {}", n1, n2, n3));
                    let top_right = col(n3, i);
                    for n4 in m.elements() {
                        let arr = vec![vec![a1, top_right], vec![col(n2, a1.e[1]), col(n4, top_right.e[1])]];
                        let lhs = compose_array(l, &arr).ok();
                        let rhs = compose_array_cols(l, &arr).ok();
                        r.check("interchange", lhs.is_some() && lhs == rhs, || format!("n = {} {} {} {}", n1, n2, n3, n4));
                    }
                }
            }
        }
    }
    r.merge(cm2_array(l));
    r
}

/// The 2×3 array `[ε₁(μn) m̂ ε₁(μn⁻¹); n̂ 1 −₂n̂]` with `x̂ = (x; 1, 1, μx, 1)`:
/// rows first gives `m^{μn⁻¹}`, columns first gives `n m n⁻¹`.
pub fn cm2_array(l: &Lambda) -> LawReport {
    let mut r = LawReport::new(&format!("{} CM2 array", l.name()));
    let g = &l.x.base;
    for v in 0..g.object_count() {
        let m = &l.x.groups[v];
        let i = g.id(v);
        let hat = |x: usize| LSq { n: x, e: [i, i, l.x.mu[v][x], i] };
        for a in m.elements() {
            for b in m.elements() {
                let q = l.x.mu[v][b];
                let arr = vec![
                    vec![l.eps1(q), hat(a), l.eps1(g.inv(q))],
                    vec![hat(b), l.eps1(i), l.inv2(&hat(b))],
                ];
                let rows = compose_array(l, &arr).ok();
                let cols = compose_array_cols(l, &arr).ok();
                let c = g.c(g.c(q, l.x.mu[v][a]), g.inv(q));
                let cm2 = LSq { n: m.mul(m.mul(b, a), m.inv(b)), e: [i, i, c, i] };
                let act = LSq { n: l.x.act(a, g.inv(q)), e: [i, i, c, i] };
                r.check("cm2_array", rows == Some(act) && cols == Some(cm2), || format!("m = {}, n = {}", m.label(a), m.label(b)));
            }
        }
    }
    r
}

/// `σ[α +₂ β] = σα +₁ σβ` on every `+₂`-composable pair, and `σ` keeps thin squares thin.
pub fn rotation_laws<D: DoubleGroupoid>(d: &D) -> LawReport {
    let mut r = LawReport::new(&format!("{} rotation", d.name()));
    let ix = index(d);
    let g = d.edges();
    for x in 0..g.object_count() {
        let e = d.eps1(g.id(x));
        r.check("rotate_identity", d.rotate(&e) == e, || format!("object {}", x));
    }
    for a in &ix.all {
        let sa = d.rotate(a);
        let [fa, fb, fc, fd] = d.faces(a);
        r.check("rotate_faces", d.faces(&sa) == [fb, g.inv(fd), g.inv(fa), fc] && ix.set.contains(&sa), || d.show(a));
        if d.is_thin(a) {
            r.check("rotate_thin", d.is_thin(&sa), || d.show(a));
        }
        for &j in get(&ix.by_left, fd) {
            let b = &ix.all[j];
            let lhs = d.rotate(&d.compose2(a, b).unwrap());
            let rhs = d.compose1(&sa, &d.rotate(b));
            r.check("rotate_sum", Some(lhs) == rhs, || format!("{} beside {}", d.show(a), d.show(b)));
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::BoxG;
    use crate::finite::FiniteGroup;
    use crate::groupoid::FiniteGroupoid;
    use crate::xmod::CrossedModule;

    #[test]
    fn z2_identity_all_laws() {
        let l = Lambda::from_xmod(&CrossedModule::identity(&FiniteGroup::cyclic(2))).unwrap();
        let b = brute_force(&l);
        assert!(b.passed(), "{:?}", b.violations);
        let s = lambda_suite(&l);
        assert!(s.passed(), "{:?}", s.violations);
        assert!(rotation_laws(&l).passed());
    }

    #[test]
    fn box_interval() {
        let b = brute_force(&BoxG::new(&FiniteGroupoid::interval()));
        assert!(b.passed(), "{:?}", b.violations);
    }

    #[test]
    fn corrupted_action_is_caught() {
        let x = crate::xmod::catalog::by_name("A3<S3").unwrap();
        let mut g = x.to_gpd();
        let (a, b) = (g.action[1][1], g.action[1][2]);
        g.action[1][1] = b;
        g.action[1][2] = a;
        let bad = Lambda::unchecked(g);
        assert!(!lambda_suite(&bad).passed());
    }
}
