//! Fox derivatives, the boundary matrix of the cellular chains of the
//! universal cover, and bounded searches for `π₂` in that matrix's kernel.
//!
//! Derivatives are left ones: `∂(uv)/∂s = ∂u/∂s + u ∂v/∂s`. Row `r` of the
//! boundary matrix is `(∂r/∂s)_s`, and a coordinate vector `v` in `ZG^R`
//! is sent to `Σ_r v_r ∂r/∂s`.
//!
//! For display in right exponent notation each letter of a relator gives
//! one term, the lift labelled by what follows it: `s` followed by `q` is
//! `+s^q`, and `s⁻¹` followed by `q` is `-s^{s⁻¹q}`. Summed, the terms for
//! `s` are `s⁻¹·ι(∂r/∂s)` with `ι` the antipode.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::presentation::GroupPresentation;
use crate::rewrite::RewriteSystem;
use crate::ring::GroupRingElement;
use crate::word::{Alphabet, Word};
use crate::xmod::free::{FcmElement, FreeCrossedModule, PreLetter, PreWord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FoxError {
    #[error("completion of the group did not finish within the bounds")]
    NotCompleted,
    #[error("relator {0} is not trivial in the group")]
    BadRelator(usize),
}

/// A presentation with a completed system for `G = F(S)/<<R>>`.
#[derive(Clone, Debug)]
pub struct FoxData {
    pub pres: GroupPresentation,
    pub sys: Arc<RewriteSystem>,
}

impl FoxData {
    pub fn new(pres: GroupPresentation, max_rules: usize, max_len: usize) -> Result<FoxData, FoxError> {
        let sys = pres.completed(max_rules, max_len);
        if !sys.is_completed() {
            return Err(FoxError::NotCompleted);
        }
        if let Some(i) = pres.relators.iter().position(|r| !sys.reduce(r).is_empty()) {
            return Err(FoxError::BadRelator(i));
        }
        Ok(FoxData { pres, sys })
    }

    pub fn parse(gens: &[&str], rels: &[&str]) -> Result<FoxData, FoxError> {
        let pres = GroupPresentation::parse(gens, rels).expect("presentation words");
        FoxData::new(pres, 200, 24)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.pres.alphabet
    }

    pub fn zero(&self) -> GroupRingElement {
        GroupRingElement::zero(&self.sys).unwrap()
    }
}

/// `∂w/∂s`, coefficients reduced in the ring over `sys`.
pub fn fox_derivative(w: &Word, s: u32, sys: &Arc<RewriteSystem>) -> GroupRingElement {
    let mut out = GroupRingElement::zero(sys).expect("completed system");
    let mut prefix = Word::empty();
    for &l in w.letters() {
        if l.gen == s {
            if l.inv {
                out.add_term(&prefix.concat(&Word::letter(l)), -1);
            } else {
                out.add_term(&prefix, 1);
            }
        }
        prefix.0.push(l);
    }
    out
}

#[derive(Clone, Debug)]
pub struct FoxMatrix {
    /// `entries[r][s]`.
    pub entries: Vec<Vec<GroupRingElement>>,
    pub cols: usize,
}

pub fn boundary_matrix(p: &FoxData) -> FoxMatrix {
    let n = p.pres.rank();
    let entries = p
        .pres
        .relators
        .iter()
        .map(|r| (0..n as u32).map(|s| fox_derivative(r, s, &p.sys)).collect())
        .collect();
    FoxMatrix { entries, cols: n }
}

impl FoxMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    /// `v ↦ Σ_r v_r M[r][s]`.
    pub fn apply(&self, v: &[GroupRingElement], zero: &GroupRingElement) -> Vec<GroupRingElement> {
        (0..self.cols)
            .map(|s| {
                self.entries
                    .iter()
                    .zip(v)
                    .fold(zero.clone(), |acc, (row, c)| acc.add(&c.mul(&row[s]).unwrap()).unwrap())
            })
            .collect()
    }

    pub fn to_text(&self, p: &FoxData) -> String {
        let ab = p.alphabet();
        let mut out = String::new();
        for (r, row) in self.entries.iter().enumerate() {
            for (s, e) in row.iter().enumerate() {
                out.push_str(&format!("d r{} / d {} = {}\n", r, ab.name(s as u32), e));
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TermDoc {
    pub coeff: i64,
    pub word: String,
}

pub fn terms_doc(e: &GroupRingElement, ab: &Alphabet) -> Vec<TermDoc> {
    e.terms().iter().map(|(w, &c)| TermDoc { coeff: c, word: ab.fmt(w) }).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixDoc {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
    /// `entries[r][s]` as terms.
    pub entries: Vec<Vec<Vec<TermDoc>>>,
}

pub fn matrix_doc(p: &FoxData, m: &FoxMatrix) -> MatrixDoc {
    let ab = p.alphabet();
    MatrixDoc {
        generators: ab.names().to_vec(),
        relators: p.pres.relators.iter().map(|r| ab.fmt(r)).collect(),
        entries: m.entries.iter().map(|row| row.iter().map(|e| terms_doc(e, ab)).collect()).collect(),
    }
}

/// One letter's contribution in exponent notation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpTerm {
    pub sign: i64,
    pub gen: u32,
    /// Exponent as read off the relator, unreduced.
    pub raw: Word,
    /// Its normal form in `G`.
    pub nf: Word,
}

pub fn exponent_terms(p: &FoxData, r: &Word) -> Vec<ExpTerm> {
    let ls = r.letters();
    (0..ls.len())
        .map(|i| {
            let l = ls[i];
            let rest = Word(ls[i + 1..].to_vec());
            let raw = if l.inv { Word::letter(l).concat(&rest) } else { rest };
            ExpTerm { sign: l.exponent() as i64, gen: l.gen, nf: p.sys.reduce(&raw), raw }
        })
        .collect()
}

/// `b-a+b` for `b a⁻¹ b`.
pub fn additive(ab: &Alphabet, w: &Word) -> String {
    let mut s = String::new();
    for (i, l) in w.letters().iter().enumerate() {
        if l.inv {
            s.push('-');
        } else if i > 0 {
            s.push('+');
        }
        s.push_str(ab.name(l.gen));
    }
    s
}

pub fn fmt_exponent_terms(ab: &Alphabet, ts: &[ExpTerm]) -> String {
    let mut s = String::new();
    for (i, t) in ts.iter().enumerate() {
        if t.sign < 0 {
            s.push_str(if i == 0 { "-" } else { " -" });
        } else if i > 0 {
            s.push_str(" +");
        }
        s.push_str(ab.name(t.gen));
        if !t.raw.is_empty() {
            let e = additive(ab, &t.raw);
            if t.raw.len() == 1 && !t.raw.0[0].inv {
                s.push_str(&format!("^{}", e));
            } else {
                s.push_str(&format!("^{{{}}}", e));
            }
        }
    }
    s
}

/// `Σ_s ∂w/∂s (s - 1) - (w - 1)`, zero for every word.
pub fn fundamental_defect(w: &Word, rank: usize, sys: &Arc<RewriteSystem>) -> GroupRingElement {
    let one = GroupRingElement::one(sys).unwrap();
    let mut acc = GroupRingElement::monomial(sys, w, -1).unwrap().add(&one).unwrap();
    for s in 0..rank as u32 {
        let sm1 = GroupRingElement::monomial(sys, &Word::gen(s), 1).unwrap().sub(&one).unwrap();
        acc = acc.add(&fox_derivative(w, s, sys).mul(&sm1).unwrap()).unwrap();
    }
    acc
}

#[derive(Clone, Copy, Debug)]
pub struct KernelBounds {
    /// Group-element terms allowed per coordinate.
    pub support: usize,
    /// Largest absolute coefficient.
    pub coeff: i64,
    /// Supports are drawn from normal forms of at most this length
    /// (all of `G` when it is finite and small).
    pub radius: usize,
    pub max_candidates: u64,
}

impl KernelBounds {
    pub fn new(support: usize, coeff: i64) -> KernelBounds {
        KernelBounds { support, coeff, radius: 3, max_candidates: 20_000_000 }
    }
}

#[derive(Clone, Debug)]
pub struct KernelSearch {
    pub pool: Vec<Word>,
    pub pool_is_group: bool,
    /// Dimension over Q of the kernel restricted to the pool.
    pub rational_dim: usize,
    pub vectors: Vec<Vec<GroupRingElement>>,
    pub candidates: u64,
    /// False if `max_candidates` cut the enumeration short.
    pub exhaustive: bool,
}

/// Rank of an integer matrix by fraction-free elimination.
fn rank(mut rows: Vec<Vec<i128>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, piv);
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let (a, b) = (rows[r][c], rows[i][c]);
                let pr = rows[r].clone();
                let row = &mut rows[i];
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x = *x * a - *y * b;
                }
                let g = row.iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    row.iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        r += 1;
    }
    r
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All nonzero `v` in `ZG^R` within the bounds with `v·M = 0`.
pub fn pi2_kernel_search(p: &FoxData, m: &FoxMatrix, b: KernelBounds) -> KernelSearch {
    let (pool, pool_is_group) = match p.sys.finite_elements(512) {
        Some(all) => (all, true),
        None => (p.sys.irreducible_words(b.radius), false),
    };
    let nr = m.rows();
    let zero = p.zero();
    // one column per (relator, pool element): the image of g·e_r
    let mut images: Vec<Vec<GroupRingElement>> = Vec::new();
    for r in 0..nr {
        for g in &pool {
            let mut v = vec![zero.clone(); nr];
            v[r] = GroupRingElement::monomial(&p.sys, g, 1).unwrap();
            images.push(m.apply(&v, &zero));
        }
    }
    let mut keys: Vec<(usize, Word)> = Vec::new();
    for img in &images {
        for (s, e) in img.iter().enumerate() {
            for w in e.terms().keys() {
                keys.push((s, w.clone()));
            }
        }
    }
    keys.sort();
    keys.dedup();
    let rows: Vec<Vec<i128>> = keys
        .iter()
        .map(|(s, w)| images.iter().map(|img| img[*s].coeff(w) as i128).collect())
        .collect();
    let unknowns = images.len();
    let rational_dim = unknowns - rank(rows.clone());
    let mut out = KernelSearch { pool: pool.clone(), pool_is_group, rational_dim, vectors: Vec::new(), candidates: 0, exhaustive: true };
    if rational_dim == 0 {
        return out;
    }
    let per_coord = coordinate_choices(pool.len(), b.support.min(pool.len()), b.coeff);
    let mut idx = vec![0usize; nr];
    loop {
        out.candidates += 1;
        if out.candidates > b.max_candidates {
            out.exhaustive = false;
            break;
        }
        let mut x = vec![0i128; unknowns];
        for r in 0..nr {
            for &(j, c) in &per_coord[idx[r]] {
                x[r * pool.len() + j] = c as i128;
            }
        }
        if x.iter().any(|&c| c != 0) && rows.iter().all(|row| row.iter().zip(&x).map(|(a, c)| a * c).sum::<i128>() == 0) {
            let v = (0..nr)
                .map(|r| {
                    let terms: Vec<(Word, i64)> =
                        per_coord[idx[r]].iter().map(|&(j, c)| (pool[j].clone(), c)).collect();
                    GroupRingElement::from_terms(&p.sys, &terms).unwrap()
                })
                .collect();
            out.vectors.push(v);
        }
        let mut k = 0;
        while k < nr {
            idx[k] += 1;
            if idx[k] < per_coord.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == nr {
            break;
        }
    }
    out
}

/// Sparse coordinates with at most `support` nonzero entries in `[-c, c]`.
fn coordinate_choices(n: usize, support: usize, c: i64) -> Vec<Vec<(usize, i64)>> {
    let coeffs: Vec<i64> = (-c..=c).filter(|&x| x != 0).collect();
    let mut out = vec![Vec::new()];
    fn go(start: usize, n: usize, left: usize, coeffs: &[i64], cur: &mut Vec<(usize, i64)>, out: &mut Vec<Vec<(usize, i64)>>) {
        if left == 0 {
            return;
        }
        for j in start..n {
            for &k in coeffs {
                cur.push((j, k));
                out.push(cur.clone());
                go(j + 1, n, left - 1, coeffs, cur, out);
                cur.pop();
            }
        }
    }
    go(0, n, support, &coeffs, &mut Vec::new(), &mut out);
    out
}

impl KernelSearch {
    /// The found vector of least coefficient mass, with a positive leading
    /// coefficient, if every found vector is an integer multiple of it.
    pub fn generator(&self) -> Option<&Vec<GroupRingElement>> {
        let mass = |v: &Vec<GroupRingElement>| v.iter().flat_map(|e| e.terms().values()).map(|c| c.abs()).sum::<i64>();
        let lead = |v: &Vec<GroupRingElement>| v.iter().find_map(|e| e.terms().values().next().copied()).unwrap_or(0);
        let g = self.vectors.iter().filter(|v| lead(v) > 0).min_by_key(|v| mass(v))?;
        let all = self.vectors.iter().all(|v| {
            let k = lead(v) / lead(g);
            k != 0 && v.iter().zip(g).all(|(a, b)| *a == b.scale(k))
        });
        all.then_some(g)
    }

    pub fn fmt_vector(v: &[GroupRingElement]) -> String {
        format!("({})", v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", "))
    }
}

/// Pushes a kernel vector back into the free crossed module: some ordering
/// of the letters `^g r^(±1)` has trivial boundary; returns it, if found
/// within `max_orders` orderings, after checking it is central.
pub fn push_back(f: &FreeCrossedModule, v: &[GroupRingElement], max_orders: usize) -> Option<(PreWord, FcmElement, bool)> {
    let mut letters = Vec::new();
    for (r, e) in v.iter().enumerate() {
        for (g, &c) in e.terms() {
            for _ in 0..c.abs() {
                letters.push(PreLetter { conj: g.clone(), rel: r, inv: c < 0 });
            }
        }
    }
    let n = letters.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut tried = 0;
    loop {
        tried += 1;
        let w = PreWord(perm.iter().map(|&i| letters[i].clone()).collect());
        if f.preword_boundary(&w).is_empty() {
            let x = f.rep(&w);
            let central = central(f, &x);
            return Some((w, x, central));
        }
        if tried >= max_orders || !next_permutation(&mut perm) {
            return None;
        }
    }
}

/// Commutes with every `^u r` for `u` of length at most 2.
pub fn central(f: &FreeCrossedModule, x: &FcmElement) -> bool {
    let us = f.conjugators(2);
    (0..f.rank()).all(|r| {
        us.iter().all(|u| {
            let y = f.letter(&PreLetter { conj: u.clone(), rel: r, inv: false });
            f.mul(x, &y) == f.mul(&y, x)
        })
    })
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else { return false };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Letter;

    fn el(p: &FoxData, terms: &[(&str, i64)]) -> GroupRingElement {
        let t: Vec<(Word, i64)> = terms.iter().map(|(w, c)| (p.alphabet().parse(w).unwrap(), *c)).collect();
        GroupRingElement::from_terms(&p.sys, &t).unwrap()
    }

    #[test]
    fn base_cases() {
        let p = FoxData::parse(&["s", "t"], &[]).unwrap();
        let d = |w: &str, s| fox_derivative(&p.alphabet().parse(w).unwrap(), s, &p.sys);
        assert_eq!(d("s", 0), el(&p, &[("1", 1)]));
        assert!(d("t", 0).is_zero());
        assert_eq!(d("s^-1", 0), el(&p, &[("s^-1", -1)]));
        assert_eq!(d("s^2", 0), el(&p, &[("1", 1), ("s", 1)]));
    }

    #[test]
    fn klein_unprojected() {
        let free = FoxData::parse(&["a", "b"], &[]).unwrap();
        let r = free.alphabet().parse("a b a^-1 b").unwrap();
        assert_eq!(fox_derivative(&r, 0, &free.sys), el(&free, &[("1", 1), ("a b a^-1", -1)]));
        assert_eq!(fox_derivative(&r, 1, &free.sys), el(&free, &[("a", 1), ("a b a^-1", 1)]));
    }

    #[test]
    fn small_matrices() {
        let p = FoxData::parse(&["a"], &["a^2"]).unwrap();
        let m = boundary_matrix(&p);
        assert_eq!(m.entries, vec![vec![el(&p, &[("1", 1), ("a", 1)])]]);
        let p = FoxData::parse(&["a"], &["a", "a"]).unwrap();
        let m = boundary_matrix(&p);
        assert_eq!(m.rows(), 2);
        assert!(m.entries.iter().all(|r| r[0] == el(&p, &[("1", 1)])));
        let p = FoxData::parse(&["a", "b"], &[]).unwrap();
        assert_eq!(boundary_matrix(&p).rows(), 0);
    }

    #[test]
    fn klein_exponent_form() {
        let p = FoxData::parse(&["a", "b"], &["a b a^-1 b"]).unwrap();
        let ts = exponent_terms(&p, &p.pres.relators[0]);
        assert_eq!(fmt_exponent_terms(p.alphabet(), &ts), "a^{b-a+b} +b^{-a+b} -a^{-a+b} +b");
        // summed per generator these are s^-1 ι(∂r/∂s)
        let m = boundary_matrix(&p);
        for s in 0..2u32 {
            let mut sum = p.zero();
            for t in ts.iter().filter(|t| t.gen == s) {
                sum.add_term(&t.raw, t.sign);
            }
            assert_eq!(sum, m.entries[0][s as usize].conjugate().left_mul_word(&Word::letter(Letter::neg(s))));
        }
    }

    #[test]
    fn kernel_of_rp2() {
        let p = FoxData::parse(&["a"], &["a^2"]).unwrap();
        let m = boundary_matrix(&p);
        let k = pi2_kernel_search(&p, &m, KernelBounds::new(4, 3));
        assert!(k.exhaustive && k.pool_is_group);
        let g = k.generator().unwrap();
        assert_eq!(g[0], el(&p, &[("1", 1), ("a", -1)]));
        let f = FreeCrossedModule::on_free(&["a"], &[("r", "a^2")]).unwrap();
        let (_, x, central) = push_back(&f, g, 1000).unwrap();
        assert!(x.bdry.is_empty() && central);
    }

    #[test]
    fn permutations() {
        let mut p = vec![0, 1, 2];
        let mut n = 1;
        while next_permutation(&mut p) {
            n += 1;
        }
        assert_eq!(n, 6);
    }
}
