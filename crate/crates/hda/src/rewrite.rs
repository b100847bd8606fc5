//! Shortlex string rewriting and bounded Knuth-Bendix completion.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use serde::Serialize;
use thiserror::Error;

use crate::word::{Alphabet, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Raw,
    Completed,
    BoundExceeded,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("rewrite system is not completed (status {0:?})")]
    NotCompleted(Status),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteSystem {
    pub alphabet: Alphabet,
    rules: Vec<(Word, Word)>,
    status: Status,
}

fn letters(n: usize) -> impl Iterator<Item = Letter> {
    (0..n as u32).flat_map(|g| [Letter::pos(g), Letter::neg(g)])
}

fn orient(a: Word, b: Word) -> (Word, Word) {
    if a > b {
        (a, b)
    } else {
        (b, a)
    }
}

impl RewriteSystem {
    /// Only the cancellation rules `x x^-1 -> 1`, `x^-1 x -> 1`.
    pub fn new(alphabet: Alphabet) -> RewriteSystem {
        let mut rules = Vec::new();
        for l in letters(alphabet.len()) {
            rules.push((Word(vec![l, l.inverse()]), Word::empty()));
        }
        RewriteSystem {
            alphabet,
            rules,
            status: Status::Raw,
        }
    }

    /// The free group: cancellation rules are already confluent.
    pub fn free(alphabet: Alphabet) -> RewriteSystem {
        let mut rs = RewriteSystem::new(alphabet);
        rs.status = Status::Completed;
        rs
    }

    pub fn from_relators(alphabet: Alphabet, relators: &[Word]) -> RewriteSystem {
        let mut rs = RewriteSystem::new(alphabet);
        for r in relators {
            rs.add_equation(r.clone(), Word::empty());
        }
        rs
    }

    /// Adds `l = r` oriented by shortlex; marks the system raw.
    pub fn add_equation(&mut self, l: Word, r: Word) {
        let (l, r) = orient(l, r);
        if l != r {
            self.rules.push((l, r));
            self.status = Status::Raw;
        }
    }

    pub fn rules(&self) -> &[(Word, Word)] {
        &self.rules
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn is_completed(&self) -> bool {
        self.status == Status::Completed
    }

    /// Rewrites to an irreducible descendant; valid for any status.
    pub fn reduce(&self, w: &Word) -> Word {
        reduce_with(&self.rules, w)
    }

    pub fn normal_form(&self, w: &Word) -> Result<Word, RewriteError> {
        if self.status != Status::Completed {
            return Err(RewriteError::NotCompleted(self.status));
        }
        Ok(self.reduce(w))
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        !self
            .rules
            .iter()
            .any(|(l, _)| find(&w.0, &l.0).is_some())
    }

    pub fn complete(&self, max_rules: usize, max_len: usize) -> RewriteSystem {
        complete(self, max_rules, max_len)
    }

    /// Exhaustive check that every overlap and inclusion resolves.
    pub fn critical_pairs_resolve(&self) -> bool {
        for (i, r1) in self.rules.iter().enumerate() {
            for (j, r2) in self.rules.iter().enumerate() {
                for (x, y) in critical_pairs(r1, r2, i == j) {
                    if self.reduce(&x) != self.reduce(&y) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// All irreducible words of length at most `max_len`, in shortlex order.
    pub fn irreducible_words(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for l in letters(self.alphabet.len()) {
                    let mut v = w.0.clone();
                    v.push(l);
                    // irreducible words are factor closed, so only suffixes
                    // ending at the new letter need checking
                    if !self.rules.iter().any(|(lhs, _)| v.ends_with(&lhs.0)) {
                        next.push(Word(v));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out.sort();
        out
    }

    /// If the completed system has finitely many normal forms (at most
    /// `limit`), returns them all.
    pub fn finite_elements(&self, limit: usize) -> Option<Vec<Word>> {
        if !self.is_completed() {
            return None;
        }
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        loop {
            let mut next = Vec::new();
            for w in &layer {
                for l in letters(self.alphabet.len()) {
                    let mut v = w.0.clone();
                    v.push(l);
                    if !self.rules.iter().any(|(lhs, _)| v.ends_with(&lhs.0)) {
                        next.push(Word(v));
                    }
                }
            }
            if next.is_empty() {
                out.sort();
                return Some(out);
            }
            out.extend(next.iter().cloned());
            if out.len() > limit {
                return None;
            }
            layer = next;
        }
    }
}

fn find(hay: &[Letter], needle: &[Letter]) -> Option<usize> {
    if needle.len() > hay.len() {
        return None;
    }
    (0..=hay.len() - needle.len()).find(|&i| &hay[i..i + needle.len()] == needle)
}

pub(crate) fn reduce_with(rules: &[(Word, Word)], w: &Word) -> Word {
    // left-to-right scan; a rewritten right-hand side is pushed back onto the input
    let mut input: Vec<Letter> = w.0.iter().rev().cloned().collect();
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    while let Some(l) = input.pop() {
        out.push(l);
        for (lhs, rhs) in rules {
            if out.ends_with(&lhs.0) {
                out.truncate(out.len() - lhs.len());
                input.extend(rhs.0.iter().rev());
                break;
            }
        }
    }
    Word(out)
}

fn critical_pairs(r1: &(Word, Word), r2: &(Word, Word), same: bool) -> Vec<(Word, Word)> {
    let (l1, rh1) = r1;
    let (l2, rh2) = r2;
    let mut out = Vec::new();
    // suffix of l1 overlaps prefix of l2
    for k in 1..l1.len().min(l2.len()) + 1 {
        if same && k == l1.len() {
            continue;
        }
        if k == l2.len() || k == l1.len() {
            // inclusions are handled below
            continue;
        }
        if l1.0[l1.len() - k..] == l2.0[..k] {
            let mut a = rh1.0.clone();
            a.extend_from_slice(&l2.0[k..]);
            let mut b = l1.0[..l1.len() - k].to_vec();
            b.extend_from_slice(&rh2.0);
            out.push((Word(a), Word(b)));
        }
    }
    // l2 inside l1
    if !same && l2.len() <= l1.len() {
        for i in 0..=l1.len() - l2.len() {
            if l1.0[i..i + l2.len()] == l2.0[..] {
                let mut b = l1.0[..i].to_vec();
                b.extend_from_slice(&rh2.0);
                b.extend_from_slice(&l1.0[i + l2.len()..]);
                out.push((rh1.clone(), Word(b)));
            }
        }
    }
    out
}

fn complete(rs: &RewriteSystem, max_rules: usize, max_len: usize) -> RewriteSystem {
    let mut rules: Vec<(Word, Word)> = Vec::new();
    let mut queue: BinaryHeap<Reverse<(usize, u64, Word, Word)>> = BinaryHeap::new();
    let mut tick = 0u64;
    let mut push = |q: &mut BinaryHeap<Reverse<(usize, u64, Word, Word)>>, a: Word, b: Word| {
        tick += 1;
        q.push(Reverse((a.len().max(b.len()), tick, a, b)));
    };
    for (l, r) in &rs.rules {
        push(&mut queue, l.clone(), r.clone());
    }
    let budget = 200 * max_rules.max(1) * max_len.max(1);
    let mut steps = 0usize;
    let bound = |rules: Vec<(Word, Word)>| RewriteSystem {
        alphabet: rs.alphabet.clone(),
        rules,
        status: Status::BoundExceeded,
    };
    while let Some(Reverse((_, _, a, b))) = queue.pop() {
        steps += 1;
        if steps > budget {
            return bound(rules);
        }
        let a = reduce_with(&rules, &a);
        let b = reduce_with(&rules, &b);
        if a == b {
            continue;
        }
        let (l, r) = orient(a, b);
        if l.len() > max_len {
            return bound(rules);
        }
        // interreduce: rules whose left side contains l go back to the queue
        let mut kept = Vec::with_capacity(rules.len() + 1);
        let new_rule = (l.clone(), r.clone());
        for (ol, or) in rules.drain(..) {
            if find(&ol.0, &l.0).is_some() {
                push(&mut queue, ol, or);
            } else {
                kept.push((ol, or));
            }
        }
        rules = kept;
        rules.push(new_rule.clone());
        for i in 0..rules.len() {
            let rhs = reduce_with(&rules, &rules[i].1);
            rules[i].1 = rhs;
        }
        if rules.len() > max_rules {
            return bound(rules);
        }
        let cur = rules.iter().position(|x| x.0 == new_rule.0).unwrap();
        let snapshot = rules.clone();
        for (i, other) in snapshot.iter().enumerate() {
            let mut pairs = critical_pairs(&snapshot[cur], other, i == cur);
            if i != cur {
                pairs.extend(critical_pairs(other, &snapshot[cur], false));
            }
            for (x, y) in pairs {
                push(&mut queue, x, y);
            }
        }
    }
    let mut rules = rules;
    let set: BTreeSet<(Word, Word)> = rules.drain(..).collect();
    RewriteSystem {
        alphabet: rs.alphabet.clone(),
        rules: set.into_iter().collect(),
        status: Status::Completed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(names: &[&str], rels: &[&str]) -> RewriteSystem {
        let ab = Alphabet::new(names);
        let rels: Vec<Word> = rels.iter().map(|r| ab.parse(r).unwrap()).collect();
        RewriteSystem::from_relators(ab, &rels).complete(100, 20)
    }

    #[test]
    fn cyclic_two() {
        let rs = sys(&["a"], &["a a"]);
        assert_eq!(rs.status(), Status::Completed);
        let ab = rs.alphabet.clone();
        assert_eq!(rs.normal_form(&ab.parse("a a a").unwrap()).unwrap(), ab.parse("a").unwrap());
        assert_eq!(rs.finite_elements(10).unwrap().len(), 2);
        assert!(rs.critical_pairs_resolve());
    }

    #[test]
    fn klein_rules() {
        let rs = sys(&["a", "b"], &["a b a^-1 b"]);
        assert_eq!(rs.status(), Status::Completed);
        assert!(rs.critical_pairs_resolve());
        let ab = rs.alphabet.clone();
        assert!(rs.normal_form(&ab.parse("a b a^-1 b").unwrap()).unwrap().is_empty());
        assert_eq!(rs.normal_form(&ab.parse("b a").unwrap()).unwrap(), ab.parse("a b^-1").unwrap());
    }

    #[test]
    fn raw_is_rejected() {
        let ab = Alphabet::new(&["a"]);
        let rs = RewriteSystem::from_relators(ab.clone(), &[ab.parse("a a").unwrap()]);
        assert!(rs.normal_form(&Word::empty()).is_err());
    }

    #[test]
    fn bound_is_a_value() {
        // Baumslag-Solitar-like relation that does not complete finitely in shortlex
        let ab = Alphabet::new(&["a", "b"]);
        let rs = RewriteSystem::from_relators(ab.clone(), &[ab.parse("a b a b^-1 a^-1 b^-1 a^-1 b").unwrap()]);
        let done = rs.complete(8, 8);
        assert_eq!(done.status(), Status::BoundExceeded);
    }
}
