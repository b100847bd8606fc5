//! Signed letters, words and free reduction.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// A generator together with an exponent sign. Ordering is generator index
/// first, then `x < x^-1`; this is the shortlex letter precedence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u32,
    pub inv: bool,
}

impl Letter {
    pub fn pos(gen: u32) -> Letter {
        Letter { gen, inv: false }
    }

    pub fn neg(gen: u32) -> Letter {
        Letter { gen, inv: true }
    }

    pub fn inverse(self) -> Letter {
        Letter { gen: self.gen, inv: !self.inv }
    }

    pub fn exponent(self) -> i32 {
        if self.inv {
            -1
        } else {
            1
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Word {
        Word(vec![l])
    }

    pub fn gen(g: u32) -> Word {
        Word(vec![Letter::pos(g)])
    }

    /// `g^k` for an integer exponent.
    pub fn power_of(g: u32, k: i64) -> Word {
        let l = if k < 0 { Letter::neg(g) } else { Letter::pos(g) };
        Word(vec![l; k.unsigned_abs() as usize])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn power(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            out.extend_from_slice(&base.0);
        }
        Word(out)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1].inverse())
    }

    /// Largest generator index used plus one.
    pub fn rank_bound(&self) -> u32 {
        self.0.iter().map(|l| l.gen + 1).max().unwrap_or(0)
    }

    /// Replace every letter by a word (inverse letters by the inverse word).
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Vec::new();
        for l in &self.0 {
            let w = &images[l.gen as usize];
            if l.inv {
                out.extend(w.0.iter().rev().map(|x| x.inverse()));
            } else {
                out.extend_from_slice(&w.0);
            }
        }
        Word(out)
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0; rank];
        for l in &self.0 {
            v[l.gen as usize] += l.exponent() as i64;
        }
        v
    }
}

/// Stack-based free reduction.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in &w.0 {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("bad token `{0}`")]
    BadToken(String),
    #[error("invalid generator name `{0}`")]
    BadName(String),
}

pub fn valid_name(s: &str) -> bool {
    let mut ch = s.chars();
    match ch.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    ch.all(|c| c.is_alphanumeric() || c == '_' || c == '\'' || c == '.' || c == '@')
}

/// Generator names, indexed by `Letter::gen`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Alphabet {
        Alphabet {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: u32) -> &str {
        &self.names[g as usize]
    }

    pub fn index(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    pub fn push(&mut self, name: &str) -> u32 {
        if let Some(i) = self.index(name) {
            return i;
        }
        self.names.push(name.to_string());
        (self.names.len() - 1) as u32
    }

    /// Parse `a b a^-1 b`; `1` is the empty word, `x^k` a power.
    pub fn parse(&self, s: &str) -> Result<Word, WordError> {
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let k: i64 = e.parse().map_err(|_| WordError::BadToken(tok.to_string()))?;
                    (n, k)
                }
                None => (tok, 1),
            };
            let g = self
                .index(name)
                .ok_or_else(|| WordError::UnknownGenerator(name.to_string()))?;
            out.extend(Word::power_of(g, exp).0);
        }
        Ok(Word(out))
    }

    pub fn letter_str(&self, l: Letter) -> String {
        if l.inv {
            format!("{}^-1", self.name(l.gen))
        } else {
            self.name(l.gen).to_string()
        }
    }

    pub fn fmt(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.0.iter()
            .map(|&l| self.letter_str(l))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let ab = Alphabet::new(&["a", "b"]);
        let w = ab.parse("a b a^-1 b").unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(ab.fmt(&w), "a b a^-1 b");
        assert_eq!(ab.parse("a^2 b^-2").unwrap().len(), 4);
        assert_eq!(ab.fmt(&Word::empty()), "1");
        assert!(ab.parse("c").is_err());
    }

    #[test]
    fn reduce_examples() {
        let ab = Alphabet::new(&["a", "b"]);
        assert!(free_reduce(&ab.parse("a a^-1").unwrap()).is_empty());
        assert_eq!(
            free_reduce(&ab.parse("a b b^-1 a").unwrap()),
            ab.parse("a a").unwrap()
        );
    }

    #[test]
    fn shortlex() {
        let ab = Alphabet::new(&["a", "b"]);
        let w = |s| ab.parse(s).unwrap();
        assert!(w("b") < w("a a"));
        assert!(w("a") < w("a^-1"));
        assert!(w("a^-1") < w("b"));
        assert!(w("a b") < w("b a"));
    }
}
