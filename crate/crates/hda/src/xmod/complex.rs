//! Crossed complexes as finite data, with an axiom checker.
//!
//! Level `n >= 3` holds one abelian group per object, written as
//! `Z^r + Z/t_1 + ... + Z/t_k`, a boundary matrix per object to level
//! `n - 1`, and a matrix per arrow for the (right) action of the base.

use serde::Serialize;

use super::{validate_xmod_gpd, XModGpd, XModViolation};
use crate::groupoid::FiniteGroupoid;

/// `Z^free + Z/torsion[0] + ...`; vectors have `free + torsion.len()` entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbGroup {
    pub free: usize,
    pub torsion: Vec<i64>,
}

impl AbGroup {
    pub fn z(r: usize) -> AbGroup {
        AbGroup { free: r, torsion: vec![] }
    }

    pub fn rank(&self) -> usize {
        self.free + self.torsion.len()
    }

    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        v.iter()
            .enumerate()
            .map(|(i, &x)| if i < self.free { x } else { x.rem_euclid(self.torsion[i - self.free]) })
            .collect()
    }

    pub fn is_zero(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Order of basis element `i` (0 for infinite).
    pub fn basis_order(&self, i: usize) -> i64 {
        if i < self.free {
            0
        } else {
            self.torsion[i - self.free]
        }
    }
}

/// Rows index the target basis, columns the source basis.
pub type Matrix = Vec<Vec<i64>>;

fn apply(a: &Matrix, v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

fn column(a: &Matrix, j: usize) -> Vec<i64> {
    a.iter().map(|row| row[j]).collect()
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|k| (k == i) as i64).collect()
}

fn shape_ok(a: &Matrix, rows: usize, cols: usize) -> bool {
    a.len() == rows && a.iter().all(|r| r.len() == cols)
}

#[derive(Clone, Debug)]
pub enum Dim2 {
    Finite(XModGpd),
    /// Abelian `C_2(x)` with `mu` given on basis vectors (loops at `x`).
    Abelian { groups: Vec<AbGroup>, mu: Vec<Vec<usize>>, action: Vec<Matrix> },
}

#[derive(Clone, Debug)]
pub struct Level {
    pub groups: Vec<AbGroup>,
    /// For level 3 over a finite dimension 2, each column is read as a
    /// single entry: the element index in `M(x)` of the basis vector's image.
    pub boundary: Vec<Matrix>,
    pub action: Vec<Matrix>,
}

#[derive(Clone, Debug)]
pub struct CrossedComplex {
    pub base: FiniteGroupoid,
    pub dim2: Dim2,
    /// Levels `3, 4, ...`.
    pub higher: Vec<Level>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ComplexViolation {
    Shape(String),
    Dim2(XModViolation),
    /// A torsion basis vector maps to something of the wrong order.
    NotHom { level: usize, x: usize, basis: usize },
    BoundarySquare { level: usize, x: usize, basis: usize },
    ActionUnit { level: usize, x: usize },
    ActionCompose { level: usize, p: usize, q: usize },
    Equivariance { level: usize, p: usize, basis: usize },
    /// An element in the image of `mu` acts nontrivially.
    ImageActs { level: usize, x: usize, loop_arrow: usize },
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ComplexReport {
    pub violations: Vec<ComplexViolation>,
}

impl ComplexReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn arrow_pow(b: &FiniteGroupoid, x: usize, f: usize, k: i64) -> usize {
    let g = if k < 0 { b.inv(f) } else { f };
    (0..k.unsigned_abs()).fold(b.id(x), |acc, _| b.c(acc, g))
}

impl CrossedComplex {
    fn objects(&self) -> usize {
        self.base.object_count()
    }

    /// Loop at `x` hit by `mu` of the abelian vector `v`.
    fn mu_abelian(&self, mu: &[usize], x: usize, v: &[i64]) -> usize {
        v.iter().zip(mu).fold(self.base.id(x), |acc, (&k, &f)| self.base.c(acc, arrow_pow(&self.base, x, f, k)))
    }

    /// All loops hit by `mu` at `x`.
    fn mu_image(&self, x: usize) -> Vec<usize> {
        match &self.dim2 {
            Dim2::Finite(g) => g.mu[x].clone(),
            Dim2::Abelian { mu, .. } => {
                let mut seen = vec![self.base.id(x)];
                let mut i = 0;
                while i < seen.len() {
                    for &f in &mu[x] {
                        let y = self.base.c(seen[i], f);
                        if !seen.contains(&y) {
                            seen.push(y);
                        }
                    }
                    i += 1;
                }
                seen
            }
        }
    }

    pub fn validate(&self) -> ComplexReport {
        validate_crossed_complex(self)
    }
}

fn check_action(b: &FiniteGroupoid, groups: &[AbGroup], action: &[Matrix], level: usize, v: &mut Vec<ComplexViolation>) -> bool {
    if action.len() != b.arrow_count() {
        v.push(ComplexViolation::Shape(format!("level {}: one action matrix per arrow", level)));
        return false;
    }
    for p in 0..b.arrow_count() {
        let (s, t) = (b.src(p), b.tgt(p));
        if !shape_ok(&action[p], groups[t].rank(), groups[s].rank()) {
            v.push(ComplexViolation::Shape(format!("level {}: action matrix of arrow {}", level, p)));
            return false;
        }
        for j in 0..groups[s].rank() {
            let o = groups[s].basis_order(j);
            if o > 0 && !groups[t].is_zero(&column(&action[p], j).iter().map(|c| c * o).collect::<Vec<_>>()) {
                v.push(ComplexViolation::NotHom { level, x: s, basis: j });
            }
        }
    }
    for x in 0..b.object_count() {
        let a = &action[b.id(x)];
        let n = groups[x].rank();
        if (0..n).any(|j| !groups[x].is_zero(&column(a, j).iter().zip(unit(n, j)).map(|(c, u)| c - u).collect::<Vec<_>>())) {
            v.push(ComplexViolation::ActionUnit { level, x });
        }
    }
    for p in 0..b.arrow_count() {
        for q in b.from_obj(b.tgt(p)) {
            let pq = b.c(p, q);
            let n = groups[b.src(p)].rank();
            let g = &groups[b.tgt(q)];
            for j in 0..n {
                let lhs = column(&action[pq], j);
                let rhs = apply(&action[q], &apply(&action[p], &unit(n, j)));
                if !g.is_zero(&lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect::<Vec<_>>()) {
                    v.push(ComplexViolation::ActionCompose { level, p, q });
                    break;
                }
            }
        }
    }
    true
}

pub fn validate_crossed_complex(c: &CrossedComplex) -> ComplexReport {
    let mut v = Vec::new();
    let b = &c.base;
    if !b.validate().is_valid() {
        v.push(ComplexViolation::Shape("base is not a groupoid".into()));
        return ComplexReport { violations: v };
    }
    let nobj = c.objects();
    let sizes_ok = |g: &[AbGroup]| g.len() == nobj;
    match &c.dim2 {
        Dim2::Finite(x) => v.extend(validate_xmod_gpd(x).violations.into_iter().map(ComplexViolation::Dim2)),
        Dim2::Abelian { groups, mu, action } => {
            if !sizes_ok(groups) || mu.len() != nobj {
                v.push(ComplexViolation::Shape("dimension 2 sizes".into()));
                return ComplexReport { violations: v };
            }
            for x in 0..nobj {
                if mu[x].len() != groups[x].rank() || mu[x].iter().any(|&f| b.src(f) != x || b.tgt(f) != x) {
                    v.push(ComplexViolation::Shape("mu must send basis vectors to loops".into()));
                    return ComplexReport { violations: v };
                }
                for (i, &f) in mu[x].iter().enumerate() {
                    let o = groups[x].basis_order(i);
                    if o > 0 && arrow_pow(b, x, f, o) != b.id(x) {
                        v.push(ComplexViolation::NotHom { level: 2, x, basis: i });
                    }
                    for &g in &mu[x] {
                        if b.c(f, g) != b.c(g, f) {
                            v.push(ComplexViolation::NotHom { level: 2, x, basis: i });
                        }
                    }
                }
            }
            if !check_action(b, groups, action, 2, &mut v) {
                return ComplexReport { violations: v };
            }
            for x in 0..nobj {
                for f in c.mu_image(x) {
                    if !is_identity_on(&groups[x], &action[f]) {
                        v.push(ComplexViolation::ImageActs { level: 2, x, loop_arrow: f });
                    }
                }
            }
            // CM1: mu(v^p) = p^-1 mu(v) p
            for p in 0..b.arrow_count() {
                let (s, t) = (b.src(p), b.tgt(p));
                for j in 0..groups[s].rank() {
                    let lhs = c.mu_abelian(&mu[t], t, &column(&action[p], j));
                    let rhs = b.c(b.c(b.inv(p), mu[s][j]), p);
                    if lhs != rhs {
                        v.push(ComplexViolation::Equivariance { level: 2, p, basis: j });
                    }
                }
            }
        }
    }
    for (k, lev) in c.higher.iter().enumerate() {
        let level = k + 3;
        if !sizes_ok(&lev.groups) || lev.boundary.len() != nobj {
            v.push(ComplexViolation::Shape(format!("level {} sizes", level)));
            return ComplexReport { violations: v };
        }
        if !check_action(b, &lev.groups, &lev.action, level, &mut v) {
            return ComplexReport { violations: v };
        }
        // boundary shapes and homomorphism conditions
        for x in 0..nobj {
            let n = lev.groups[x].rank();
            let ok = match (k, &c.dim2) {
                (0, Dim2::Finite(g)) => {
                    lev.boundary[x].len() == 1 && lev.boundary[x][0].len() == n && lev.boundary[x][0].iter().all(|&e| e >= 0 && (e as usize) < g.groups[x].order())
                }
                (0, Dim2::Abelian { groups, .. }) => shape_ok(&lev.boundary[x], groups[x].rank(), n),
                _ => shape_ok(&lev.boundary[x], c.higher[k - 1].groups[x].rank(), n),
            };
            if !ok {
                v.push(ComplexViolation::Shape(format!("level {} boundary at object {}", level, x)));
                return ComplexReport { violations: v };
            }
        }
        for x in 0..nobj {
            let n = lev.groups[x].rank();
            for j in 0..n {
                let o = lev.groups[x].basis_order(j);
                let (hom, square) = image_checks(c, k, x, j, o);
                if !hom {
                    v.push(ComplexViolation::NotHom { level, x, basis: j });
                }
                if !square {
                    v.push(ComplexViolation::BoundarySquare { level, x, basis: j });
                }
            }
            for f in c.mu_image(x) {
                if !is_identity_on(&lev.groups[x], &lev.action[f]) {
                    v.push(ComplexViolation::ImageActs { level, x, loop_arrow: f });
                }
            }
        }
        // equivariance of the boundary
        for p in 0..b.arrow_count() {
            let (s, t) = (b.src(p), b.tgt(p));
            for j in 0..lev.groups[s].rank() {
                let acted = column(&lev.action[p], j);
                let ok = match (k, &c.dim2) {
                    (0, Dim2::Finite(g)) => {
                        let lhs = finite_image(g, &lev.boundary[t][0], t, &acted);
                        let rhs = g.act(lev.boundary[s][0][j] as usize, p);
                        lhs == rhs
                    }
                    (0, Dim2::Abelian { groups, action, .. }) => {
                        let lhs = apply(&lev.boundary[t], &acted);
                        let rhs = apply(&action[p], &column(&lev.boundary[s], j));
                        groups[t].is_zero(&lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect::<Vec<_>>())
                    }
                    _ => {
                        let prev = &c.higher[k - 1];
                        let lhs = apply(&lev.boundary[t], &acted);
                        let rhs = apply(&prev.action[p], &column(&lev.boundary[s], j));
                        prev.groups[t].is_zero(&lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect::<Vec<_>>())
                    }
                };
                if !ok {
                    v.push(ComplexViolation::Equivariance { level, p, basis: j });
                }
            }
        }
    }
    ComplexReport { violations: v }
}

fn is_identity_on(g: &AbGroup, a: &Matrix) -> bool {
    let n = g.rank();
    (0..n).all(|j| g.is_zero(&column(a, j).iter().zip(unit(n, j)).map(|(c, u)| c - u).collect::<Vec<_>>()))
}

/// Element of `M(x)` hit by an integer vector through the level-3 boundary.
fn finite_image(g: &XModGpd, images: &[i64], x: usize, v: &[i64]) -> usize {
    let m = &g.groups[x];
    v.iter().zip(images).fold(0, |acc, (&k, &e)| m.mul(acc, m.pow(e as usize, k)))
}

/// For basis vector `j` at level `k + 3`: whether its boundary respects
/// its order, and whether the boundary of the boundary vanishes.
fn image_checks(c: &CrossedComplex, k: usize, x: usize, j: usize, o: i64) -> (bool, bool) {
    let lev = &c.higher[k];
    match (k, &c.dim2) {
        (0, Dim2::Finite(g)) => {
            let m = &g.groups[x];
            let e = lev.boundary[x][0][j] as usize;
            let hom = (o == 0 || m.pow(e, o) == 0) && lev.boundary[x][0].iter().all(|&f| m.mul(e, f as usize) == m.mul(f as usize, e));
            (hom, g.mu[x][e] == c.base.id(x))
        }
        (0, Dim2::Abelian { groups, mu, .. }) => {
            let col = column(&lev.boundary[x], j);
            let hom = o == 0 || groups[x].is_zero(&col.iter().map(|a| a * o).collect::<Vec<_>>());
            (hom, c.mu_abelian(&mu[x], x, &col) == c.base.id(x))
        }
        _ => {
            let prev = &c.higher[k - 1];
            let col = column(&lev.boundary[x], j);
            let hom = o == 0 || prev.groups[x].is_zero(&col.iter().map(|a| a * o).collect::<Vec<_>>());
            let below = apply(&prev.boundary[x], &col);
            let square = if k == 1 {
                match &c.dim2 {
                    Dim2::Finite(g) => finite_image(g, &prev.boundary[x][0], x, &col) == 0,
                    Dim2::Abelian { groups, .. } => groups[x].is_zero(&below),
                }
            } else {
                c.higher[k - 2].groups[x].is_zero(&below)
            };
            (hom, square)
        }
    }
}

/// `Z -0-> Z -0-> Z` in dimensions 4, 3, 2 over the trivial groupoid.
pub fn zero_chain() -> CrossedComplex {
    let base = FiniteGroupoid::from_group(&crate::finite::FiniteGroup::trivial());
    let lvl = || Level { groups: vec![AbGroup::z(1)], boundary: vec![vec![vec![0]]], action: vec![vec![vec![1]]] };
    CrossedComplex {
        base,
        dim2: Dim2::Abelian { groups: vec![AbGroup::z(1)], mu: vec![vec![0]], action: vec![vec![vec![1]]] },
        higher: vec![lvl(), lvl()],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xmod::catalog::by_name;

    #[test]
    fn zero_chain_is_valid() {
        assert!(zero_chain().validate().is_valid());
    }

    #[test]
    fn nonzero_square_is_caught() {
        let mut c = zero_chain();
        c.higher[0].boundary[0] = vec![vec![1]];
        c.higher[1].boundary[0] = vec![vec![1]];
        let r = c.validate();
        assert!(r.violations.contains(&ComplexViolation::BoundarySquare { level: 4, x: 0, basis: 0 }), "{:?}", r);
    }

    #[test]
    fn dimension_two_only() {
        let x = by_name("A3<S3").unwrap().to_gpd();
        let c = CrossedComplex { base: x.base.clone(), dim2: Dim2::Finite(x), higher: vec![] };
        assert!(c.validate().is_valid());
    }
}
