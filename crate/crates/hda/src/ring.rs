//! Integral group rings over a group given by a completed rewrite system.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::rewrite::{RewriteError, RewriteSystem};
use crate::word::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("group ring elements over different rewrite systems")]
    Mismatch,
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

#[derive(Clone, Debug)]
pub enum RingOp {
    Add,
    Mul,
    /// Left multiplication by the normal form of a word.
    ScalarAct(Word),
}

/// Element of ZG: normal-form words with nonzero coefficients.
#[derive(Clone, Debug)]
pub struct GroupRingElement {
    sys: Arc<RewriteSystem>,
    terms: BTreeMap<Word, i64>,
}

impl PartialEq for GroupRingElement {
    fn eq(&self, other: &Self) -> bool {
        same_system(&self.sys, &other.sys) && self.terms == other.terms
    }
}

impl Eq for GroupRingElement {}

pub fn same_system(a: &Arc<RewriteSystem>, b: &Arc<RewriteSystem>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl GroupRingElement {
    pub fn zero(sys: &Arc<RewriteSystem>) -> Result<Self, RingError> {
        if !sys.is_completed() {
            return Err(RewriteError::NotCompleted(sys.status()).into());
        }
        Ok(GroupRingElement {
            sys: sys.clone(),
            terms: BTreeMap::new(),
        })
    }

    pub fn one(sys: &Arc<RewriteSystem>) -> Result<Self, RingError> {
        Self::monomial(sys, &Word::empty(), 1)
    }

    pub fn monomial(sys: &Arc<RewriteSystem>, w: &Word, c: i64) -> Result<Self, RingError> {
        let mut z = Self::zero(sys)?;
        z.add_term(w, c);
        Ok(z)
    }

    pub fn from_terms(sys: &Arc<RewriteSystem>, terms: &[(Word, i64)]) -> Result<Self, RingError> {
        let mut z = Self::zero(sys)?;
        for (w, c) in terms {
            z.add_term(w, *c);
        }
        Ok(z)
    }

    pub fn system(&self) -> &Arc<RewriteSystem> {
        &self.sys
    }

    pub fn terms(&self) -> &BTreeMap<Word, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> i64 {
        let nf = self.sys.reduce(w);
        self.terms.get(&nf).copied().unwrap_or(0)
    }

    /// Adds `c * w`, normalising `w`.
    pub fn add_term(&mut self, w: &Word, c: i64) {
        if c == 0 {
            return;
        }
        let nf = self.sys.reduce(w);
        let e = self.terms.entry(nf.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&nf);
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = GroupRingElement {
            sys: self.sys.clone(),
            terms: BTreeMap::new(),
        };
        if k != 0 {
            for (w, c) in &self.terms {
                out.terms.insert(w.clone(), c * k);
            }
        }
        out
    }

    pub fn combine(&self, other: &Self, op: &RingOp) -> Result<Self, RingError> {
        match op {
            RingOp::ScalarAct(w) => Ok(self.left_mul_word(w)),
            _ => {
                if !same_system(&self.sys, &other.sys) {
                    return Err(RingError::Mismatch);
                }
                Ok(match op {
                    RingOp::Add => self.add_unchecked(other),
                    RingOp::Mul => self.mul_unchecked(other),
                    RingOp::ScalarAct(_) => unreachable!(),
                })
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        self.combine(other, &RingOp::Add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RingError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        self.combine(other, &RingOp::Mul)
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            let e = out.terms.entry(w.clone()).or_insert(0);
            *e += c;
            if *e == 0 {
                out.terms.remove(w);
            }
        }
        out
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = GroupRingElement {
            sys: self.sys.clone(),
            terms: BTreeMap::new(),
        };
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(&u.concat(v), a * b);
            }
        }
        out
    }

    pub fn left_mul_word(&self, w: &Word) -> Self {
        let mut out = GroupRingElement {
            sys: self.sys.clone(),
            terms: BTreeMap::new(),
        };
        for (u, c) in &self.terms {
            out.add_term(&w.concat(u), *c);
        }
        out
    }

    pub fn right_mul_word(&self, w: &Word) -> Self {
        let mut out = GroupRingElement {
            sys: self.sys.clone(),
            terms: BTreeMap::new(),
        };
        for (u, c) in &self.terms {
            out.add_term(&u.concat(w), *c);
        }
        out
    }

    /// The antipode `g -> g^-1`, extended linearly.
    pub fn conjugate(&self) -> Self {
        let mut out = GroupRingElement {
            sys: self.sys.clone(),
            terms: BTreeMap::new(),
        };
        for (u, c) in &self.terms {
            out.add_term(&u.inverse(), *c);
        }
        out
    }

    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }

    /// `coeff*word` terms, `+`-separated; `0` for zero.
    pub fn to_term_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let ab = &self.sys.alphabet;
        self.terms
            .iter()
            .map(|(w, c)| format!("{}*{}", c, ab.fmt(w)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let ab = &self.sys.alphabet;
        for (i, (w, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            let a = c.abs();
            if w.is_empty() {
                write!(f, "{}", a)?;
            } else if a == 1 {
                write!(f, "{}", ab.fmt(w))?;
            } else {
                write!(f, "{}*{}", a, ab.fmt(w))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn c2() -> Arc<RewriteSystem> {
        let ab = Alphabet::new(&["a"]);
        Arc::new(RewriteSystem::from_relators(ab.clone(), &[ab.parse("a a").unwrap()]).complete(50, 10))
    }

    #[test]
    fn c2_zero_divisor() {
        let s = c2();
        let a = s.alphabet.parse("a").unwrap();
        let one = GroupRingElement::one(&s).unwrap();
        let x = GroupRingElement::monomial(&s, &a, 1).unwrap();
        let p = one.add(&x).unwrap();
        let q = one.sub(&x).unwrap();
        assert!(p.mul(&q).unwrap().is_zero());
        assert!(p.add(&p.neg()).unwrap().is_zero());
        assert_eq!(q.to_string(), "1 - a");
    }

    #[test]
    fn mismatch() {
        let s = c2();
        let ab = Alphabet::new(&["b"]);
        let t = Arc::new(RewriteSystem::free(ab));
        let x = GroupRingElement::one(&s).unwrap();
        let y = GroupRingElement::one(&t).unwrap();
        assert_eq!(x.add(&y), Err(RingError::Mismatch));
    }
}
