//! `□G`: commutative squares `ab = cd` in a groupoid.

use super::{DoubleGroupoid, Edges};
use crate::groupoid::FiniteGroupoid;

#[derive(Clone, Debug)]
pub struct BoxG {
    pub g: FiniteGroupoid,
}

impl BoxG {
    pub fn new(g: &FiniteGroupoid) -> BoxG {
        BoxG { g: g.clone() }
    }

    pub fn is_square(&self, e: &Edges) -> bool {
        let g = &self.g;
        let [a, b, c, d] = *e;
        matches!((g.comp(a, b), g.comp(c, d)), (Some(x), Some(y)) if x == y) && g.src(a) == g.src(c)
    }

    /// `d = c⁻¹ab`.
    pub fn solve_d(&self, a: usize, b: usize, c: usize) -> Option<Edges> {
        let g = &self.g;
        let d = g.comp(g.inv(c), g.comp(a, b)?)?;
        Some([a, b, c, d])
    }
}

impl DoubleGroupoid for BoxG {
    type Sq = Edges;

    fn name(&self) -> String {
        format!("□{}", self.g.name)
    }

    fn edges(&self) -> &FiniteGroupoid {
        &self.g
    }

    fn squares(&self) -> Vec<Edges> {
        let g = &self.g;
        let mut out = Vec::new();
        for a in 0..g.arrow_count() {
            for b in g.from_obj(g.tgt(a)) {
                for c in g.from_obj(g.src(a)) {
                    out.push(self.solve_d(a, b, c).expect("composable"));
                }
            }
        }
        out
    }

    fn faces(&self, s: &Edges) -> Edges {
        *s
    }

    fn compose1(&self, x: &Edges, y: &Edges) -> Option<Edges> {
        if x[1] != y[2] {
            return None;
        }
        let g = &self.g;
        Some([g.c(x[0], y[0]), y[1], x[2], g.c(x[3], y[3])])
    }

    fn compose2(&self, x: &Edges, y: &Edges) -> Option<Edges> {
        if x[3] != y[0] {
            return None;
        }
        let g = &self.g;
        Some([x[0], g.c(x[1], y[1]), g.c(x[2], y[2]), y[3]])
    }

    fn eps1(&self, x: usize) -> Edges {
        let g = &self.g;
        [g.id(g.src(x)), x, x, g.id(g.tgt(x))]
    }

    fn eps2(&self, y: usize) -> Edges {
        let g = &self.g;
        [y, g.id(g.tgt(y)), g.id(g.src(y)), y]
    }

    fn inv1(&self, s: &Edges) -> Edges {
        let g = &self.g;
        [g.inv(s[0]), s[2], s[1], g.inv(s[3])]
    }

    fn inv2(&self, s: &Edges) -> Edges {
        let g = &self.g;
        [s[3], g.inv(s[1]), g.inv(s[2]), s[0]]
    }

    fn gamma_minus(&self, x: usize) -> Edges {
        let i = self.g.id(self.g.src(x));
        [i, x, i, x]
    }

    fn gamma_plus(&self, x: usize) -> Edges {
        let i = self.g.id(self.g.tgt(x));
        [x, i, x, i]
    }

    fn is_thin(&self, _s: &Edges) -> bool {
        true
    }

    fn show(&self, s: &Edges) -> String {
        let e: Vec<&str> = s.iter().map(|&f| self.g.arrows[f].name.as_str()).collect();
        format!("(1; {})", e.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::FiniteGroup;

    #[test]
    fn counts() {
        let b = BoxG::new(&FiniteGroupoid::from_group(&FiniteGroup::cyclic(2)));
        assert_eq!(b.squares().len(), 8);
        let s3 = BoxG::new(&FiniteGroupoid::from_group(&FiniteGroup::symmetric3()));
        assert_eq!(s3.squares().len(), 216);
        assert!(s3.squares().iter().all(|s| s3.is_square(s)));
    }
}
