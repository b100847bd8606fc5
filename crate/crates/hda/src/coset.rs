//! Todd-Coxeter coset enumeration over the trivial subgroup (HLT with
//! coincidence processing), used to turn small presentations into tables.

use thiserror::Error;

use crate::finite::FiniteGroup;
use crate::word::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("coset enumeration exceeded {0} cosets")]
pub struct CosetOverflow(pub usize);

const NONE: usize = usize::MAX;

struct Table {
    ncols: usize,
    rows: Vec<Vec<usize>>,
    alive: Vec<bool>,
    forward: Vec<usize>,
}

impl Table {
    fn col(l: crate::word::Letter) -> usize {
        2 * l.gen as usize + l.inv as usize
    }

    fn new_coset(&mut self, limit: usize) -> Result<usize, CosetOverflow> {
        if self.rows.len() >= limit {
            return Err(CosetOverflow(limit));
        }
        self.rows.push(vec![NONE; self.ncols]);
        self.alive.push(true);
        self.forward.push(NONE);
        Ok(self.rows.len() - 1)
    }

    fn rep(&mut self, mut c: usize) -> usize {
        while self.forward[c] != NONE {
            c = self.forward[c];
        }
        c
    }

    fn define(&mut self, c: usize, col: usize, d: usize) {
        self.rows[c][col] = d;
        self.rows[d][col ^ 1] = c;
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.forward[hi] = lo;
            self.alive[hi] = false;
            queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for col in 0..self.ncols {
                let f = self.rows[e][col];
                if f == NONE {
                    continue;
                }
                if self.rows[f][col ^ 1] == e {
                    self.rows[f][col ^ 1] = NONE;
                }
                let (e1, f1) = (self.rep(e), self.rep(f));
                if self.rows[e1][col] != NONE {
                    let t = self.rows[e1][col];
                    self.merge(f1, t, &mut queue);
                } else if self.rows[f1][col ^ 1] != NONE {
                    let t = self.rows[f1][col ^ 1];
                    self.merge(e1, t, &mut queue);
                } else {
                    self.rows[e1][col] = f1;
                    self.rows[f1][col ^ 1] = e1;
                }
            }
        }
    }

    /// True when `rel` traces from `c` back to `c` without gaps.
    fn closes(&mut self, c: usize, rel: &[usize]) -> bool {
        let mut f = c;
        for &col in rel {
            let t = self.rows[f][col];
            if t == NONE {
                return false;
            }
            f = self.rep(t);
        }
        f == c
    }

    /// Scans `rel` from coset `c`, defining new cosets as needed.
    fn scan_and_fill(&mut self, c: usize, rel: &[usize], limit: usize) -> Result<(), CosetOverflow> {
        if rel.is_empty() {
            return Ok(());
        }
        loop {
            if !self.alive[c] {
                return Ok(());
            }
            let (mut f, mut i) = (c, 0usize);
            let (mut b, mut j) = (c, rel.len());
            while i < j && self.rows[f][rel[i]] != NONE {
                f = self.rows[f][rel[i]];
                i += 1;
            }
            if i == j {
                if f != c {
                    self.coincidence(f, c);
                }
                return Ok(());
            }
            while j > i && self.rows[b][rel[j - 1] ^ 1] != NONE {
                b = self.rows[b][rel[j - 1] ^ 1];
                j -= 1;
            }
            if j == i {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            if j == i + 1 {
                self.define(f, rel[i], b);
                return Ok(());
            }
            let d = self.new_coset(limit)?;
            self.define(f, rel[i], d);
        }
    }
}

pub struct Enumerated {
    pub group: FiniteGroup,
    /// A word for each element.
    pub words: Vec<Word>,
    /// Element of each generator.
    pub gens: Vec<usize>,
}

/// Regular representation of `<gens | relators>` if it has at most
/// `limit` elements during enumeration. Elements come back as normal words
/// (shortest-first spanning tree from the identity coset).
pub fn enumerate(rank: usize, relators: &[Word], limit: usize) -> Result<Enumerated, CosetOverflow> {
    let ncols = 2 * rank;
    let mut t = Table { ncols, rows: Vec::new(), alive: Vec::new(), forward: Vec::new() };
    t.new_coset(limit)?;
    let rels: Vec<Vec<usize>> = relators
        .iter()
        .map(|r| r.letters().iter().map(|&l| Table::col(l)).collect())
        .collect();
    loop {
        let mut c = 0;
        while c < t.rows.len() {
            if t.alive[c] {
                for r in &rels {
                    t.scan_and_fill(c, r, limit)?;
                    if !t.alive[c] {
                        break;
                    }
                }
                if t.alive[c] {
                    for col in 0..ncols {
                        if t.rows[c][col] == NONE {
                            let d = t.new_coset(limit)?;
                            t.define(c, col, d);
                        }
                    }
                }
            }
            c += 1;
        }
        let live: Vec<usize> = (0..t.rows.len()).filter(|&c| t.alive[c]).collect();
        let complete = live.iter().all(|&c| (0..ncols).all(|col| t.rows[c][col] != NONE && t.alive[t.rows[c][col]]))
            && live.iter().all(|&c| rels.iter().all(|r| t.closes(c, r)));
        if complete {
            break;
        }
    }
    let live: Vec<usize> = (0..t.rows.len()).filter(|&c| t.alive[c]).collect();
    // BFS relabelling with words
    let mut idx = vec![NONE; t.rows.len()];
    let mut order = vec![0usize];
    let mut words = vec![Word::empty()];
    idx[0] = 0;
    let mut k = 0;
    while k < order.len() {
        let c = order[k];
        for col in 0..ncols {
            let d = t.rep(t.rows[c][col]);
            if idx[d] == NONE {
                idx[d] = order.len();
                order.push(d);
                let mut w = words[k].clone();
                w.0.push(crate::word::Letter { gen: (col / 2) as u32, inv: col % 2 == 1 });
                words.push(w);
            }
        }
        k += 1;
    }
    debug_assert_eq!(order.len(), live.len());
    let n = order.len();
    // right action of generators on cosets; coset of w times coset of v by following v's letters
    let follow = |t: &mut Table, mut c: usize, w: &Word| {
        for &l in w.letters() {
            c = t.rep(t.rows[c][Table::col(l)]);
        }
        c
    };
    let mut table = vec![vec![0; n]; n];
    for (i, &ci) in order.iter().enumerate() {
        for j in 0..n {
            let d = follow(&mut t, ci, &words[j]);
            table[i][j] = idx[d];
        }
    }
    let gens = (0..rank).map(|k| idx[t.rep(t.rows[0][2 * k])]).collect();
    Ok(Enumerated { group: FiniteGroup::from_table("TC", table, None), words, gens })
}

/// Image of a word in the enumerated group.
pub fn eval(g: &FiniteGroup, gens: &[usize], w: &Word) -> usize {
    let mut x = 0;
    for l in w.letters() {
        let y = gens[l.gen as usize];
        x = g.mul(x, if l.inv { g.inv(y) } else { y });
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn sizes(names: &[&str], rels: &[&str]) -> usize {
        let ab = Alphabet::new(names);
        let r: Vec<Word> = rels.iter().map(|s| ab.parse(s).unwrap()).collect();
        let e = enumerate(names.len(), &r, 10_000).unwrap();
        let g = e.group;
        for w in &r {
            assert_eq!(eval(&g, &e.gens, w), 0);
        }
        assert!(g.check_axioms().is_empty());
        g.order()
    }

    #[test]
    fn known_orders() {
        assert_eq!(sizes(&["a"], &["a^5"]), 5);
        assert_eq!(sizes(&["a", "b"], &["a^3", "b^2", "a b a b"]), 6);
        assert_eq!(sizes(&["a", "b"], &["a^4", "b^2", "a b a b"]), 8);
        assert_eq!(sizes(&["a", "b"], &["a^4", "a^2 b^-2", "a b a b^-1"]), 8);
        assert_eq!(sizes(&["a", "b"], &["a", "b"]), 1);
        assert_eq!(sizes(&["a", "b"], &["a^2", "b^3", "a b a^-1 b^-1"]), 6);
        // A5
        assert_eq!(sizes(&["a", "b"], &["a^2", "b^3", "a b a b a b a b a b"]), 60);
    }

    #[test]
    fn overflow_is_reported() {
        let ab = Alphabet::new(&["a"]);
        assert!(enumerate(1, &[], 50).is_err() || enumerate(1, &[ab.parse("a^100").unwrap()], 50).is_err());
    }
}
