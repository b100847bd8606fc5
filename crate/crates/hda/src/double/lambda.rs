//! `λX`: squares `(n; a, b, c, d)` with `μn = b⁻¹a⁻¹cd` (path order), `n`
//! in `M` at the bottom-right corner.

use serde::Serialize;

use super::{DgError, DoubleGroupoid, Edges};
use crate::groupoid::FiniteGroupoid;
use crate::xmod::{CrossedModule, XModGpd, XModMorphism};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LSq {
    pub n: usize,
    pub e: Edges,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Corner {
    TL,
    BL,
    TR,
    BR,
}

#[derive(Clone, Debug)]
pub struct Lambda {
    pub x: XModGpd,
}

impl Lambda {
    pub fn new(x: &XModGpd) -> Result<Lambda, DgError> {
        let r = x.validate();
        if let Some(v) = r.violations.first() {
            return Err(DgError::InvalidXMod(format!("{:?}", v)));
        }
        Ok(Lambda { x: x.clone() })
    }

    pub fn from_xmod(x: &CrossedModule) -> Result<Lambda, DgError> {
        Lambda::new(&x.to_gpd())
    }

    /// No validation; used to check that the law suites notice bad data.
    pub fn unchecked(x: XModGpd) -> Lambda {
        Lambda { x }
    }

    fn g(&self) -> &FiniteGroupoid {
        &self.x.base
    }

    pub fn br(&self, s: &LSq) -> usize {
        self.g().tgt(s.e[1])
    }

    /// Checks endpoints and the boundary identity.
    pub fn is_square(&self, s: &LSq) -> bool {
        let g = self.g();
        let [a, b, c, d] = s.e;
        if s.e.iter().any(|&f| f >= g.arrow_count()) {
            return false;
        }
        if g.src(a) != g.src(c) || g.tgt(a) != g.src(b) || g.tgt(c) != g.src(d) || g.tgt(b) != g.tgt(d) {
            return false;
        }
        let v = g.tgt(b);
        if s.n >= self.x.groups[v].order() {
            return false;
        }
        let rhs = g.c(g.c(g.c(g.inv(b), g.inv(a)), c), d);
        self.x.mu[v][s.n] == rhs
    }

    pub fn square(&self, n: usize, e: Edges) -> Option<LSq> {
        let s = LSq { n, e };
        self.is_square(&s).then_some(s)
    }

    /// The square with right edge `d = c⁻¹ a b μn`.
    pub fn solve_d(&self, n: usize, a: usize, b: usize, c: usize) -> Option<LSq> {
        let g = self.g();
        let (ab, cinv) = (g.comp(a, b)?, g.inv(c));
        let t = g.comp(cinv, ab)?;
        let v = g.tgt(b);
        let d = g.comp(t, *self.x.mu[v].get(n)?)?;
        self.square(n, [a, b, c, d])
    }

    /// The square with bottom edge `b = a⁻¹ c d μn⁻¹`.
    pub fn solve_b(&self, n: usize, a: usize, c: usize, d: usize) -> Option<LSq> {
        let g = self.g();
        let t = g.comp(g.comp(g.inv(a), c)?, d)?;
        let v = g.tgt(d);
        let b = g.comp(t, g.inv(*self.x.mu[v].get(n)?))?;
        self.square(n, [a, b, c, d])
    }

    /// `(n⁻¹; 1, μn, 1, 1)`, the square standing for `n` itself.
    pub fn core(&self, x: usize, n: usize) -> LSq {
        let g = self.g();
        let m = &self.x.groups[x];
        let i = g.id(x);
        LSq { n: m.inv(n), e: [i, self.x.mu[x][n], i, i] }
    }

    pub fn count(&self) -> usize {
        let g = self.g();
        let mut k = 0;
        for a in 0..g.arrow_count() {
            for b in g.from_obj(g.tgt(a)) {
                k += g.from_obj(g.src(a)).len() * self.x.groups[g.tgt(b)].order();
            }
        }
        k
    }

    /// Gauge transformation by `p` at one corner; `p` must start at that corner.
    pub fn gauge(&self, s: &LSq, corner: Corner, p: usize) -> Option<LSq> {
        let g = self.g();
        let [a, b, c, d] = s.e;
        let pi = g.inv(p);
        let t = match corner {
            Corner::TL => LSq { n: s.n, e: [g.comp(pi, a)?, b, g.comp(pi, c)?, d] },
            Corner::BL => LSq { n: s.n, e: [g.comp(a, p)?, g.comp(pi, b)?, c, d] },
            Corner::TR => LSq { n: s.n, e: [a, b, g.comp(c, p)?, g.comp(pi, d)?] },
            Corner::BR => {
                if g.src(p) != g.tgt(b) {
                    return None;
                }
                LSq { n: self.x.act(s.n, p), e: [a, g.comp(b, p)?, c, g.comp(d, p)?] }
            }
        };
        Some(t)
    }

    /// Image of a square under `λf`, for crossed modules over groups.
    pub fn map_square(f: &XModMorphism, s: &LSq) -> LSq {
        LSq { n: f.m_map[s.n], e: s.e.map(|a| f.p_map[a]) }
    }
}

impl DoubleGroupoid for Lambda {
    type Sq = LSq;

    fn name(&self) -> String {
        format!("λ({})", self.x.name)
    }

    fn edges(&self) -> &FiniteGroupoid {
        &self.x.base
    }

    fn squares(&self) -> Vec<LSq> {
        let g = self.g();
        let mut out = Vec::with_capacity(self.count());
        for a in 0..g.arrow_count() {
            for b in g.from_obj(g.tgt(a)) {
                for c in g.from_obj(g.src(a)) {
                    for n in self.x.groups[g.tgt(b)].elements() {
                        out.push(self.solve_d(n, a, b, c).expect("enumerated square"));
                    }
                }
            }
        }
        out
    }

    fn faces(&self, s: &LSq) -> Edges {
        s.e
    }

    fn compose1(&self, x: &LSq, y: &LSq) -> Option<LSq> {
        if x.e[1] != y.e[2] {
            return None;
        }
        let g = self.g();
        let m = &self.x.groups[self.br(y)];
        let n = m.mul(y.n, self.x.act(x.n, y.e[3]));
        Some(LSq { n, e: [g.c(x.e[0], y.e[0]), y.e[1], x.e[2], g.c(x.e[3], y.e[3])] })
    }

    fn compose2(&self, x: &LSq, y: &LSq) -> Option<LSq> {
        if x.e[3] != y.e[0] {
            return None;
        }
        let g = self.g();
        let m = &self.x.groups[self.br(y)];
        let n = m.mul(self.x.act(x.n, y.e[1]), y.n);
        Some(LSq { n, e: [x.e[0], g.c(x.e[1], y.e[1]), g.c(x.e[2], y.e[2]), y.e[3]] })
    }

    fn eps1(&self, x: usize) -> LSq {
        let g = self.g();
        LSq { n: 0, e: [g.id(g.src(x)), x, x, g.id(g.tgt(x))] }
    }

    fn eps2(&self, y: usize) -> LSq {
        let g = self.g();
        LSq { n: 0, e: [y, g.id(g.tgt(y)), g.id(g.src(y)), y] }
    }

    fn inv1(&self, s: &LSq) -> LSq {
        let g = self.g();
        let [a, b, c, d] = s.e;
        let di = g.inv(d);
        let m = &self.x.groups[g.tgt(di)];
        LSq { n: m.inv(self.x.act(s.n, di)), e: [g.inv(a), c, b, di] }
    }

    fn inv2(&self, s: &LSq) -> LSq {
        let g = self.g();
        let [a, b, c, d] = s.e;
        let bi = g.inv(b);
        let m = &self.x.groups[g.tgt(bi)];
        LSq { n: m.inv(self.x.act(s.n, bi)), e: [d, bi, g.inv(c), a] }
    }

    fn gamma_minus(&self, x: usize) -> LSq {
        let g = self.g();
        let i = g.id(g.src(x));
        LSq { n: 0, e: [i, x, i, x] }
    }

    fn gamma_plus(&self, x: usize) -> LSq {
        let g = self.g();
        let i = g.id(g.tgt(x));
        LSq { n: 0, e: [x, i, x, i] }
    }

    fn is_thin(&self, s: &LSq) -> bool {
        s.n == 0
    }

    fn show(&self, s: &LSq) -> String {
        let g = self.g();
        let m = &self.x.groups[self.br(s)];
        let e: Vec<&str> = s.e.iter().map(|&f| g.arrows[f].name.as_str()).collect();
        format!("({}; {})", m.label(s.n), e.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::FiniteGroup;

    #[test]
    fn sixteen_squares() {
        let l = Lambda::from_xmod(&CrossedModule::identity(&FiniteGroup::cyclic(2))).unwrap();
        let sq = l.squares();
        assert_eq!(sq.len(), 16);
        assert_eq!(l.count(), 16);
        assert!(sq.iter().all(|s| l.is_square(s)));
        let one = Lambda::from_xmod(&CrossedModule::identity(&FiniteGroup::trivial())).unwrap();
        assert_eq!(one.squares().len(), 1);
    }

    #[test]
    fn bad_xmod_rejected() {
        let s3 = FiniteGroup::symmetric3();
        let x = CrossedModule::trivial_boundary(&s3, &FiniteGroup::trivial());
        assert!(matches!(Lambda::from_xmod(&x), Err(DgError::InvalidXMod(_))));
    }
}
