//! Finitely presented groups.

use std::fmt;
use std::sync::Arc;

use crate::finite::{advance, FiniteGroup};
use crate::rewrite::RewriteSystem;
use crate::word::{Alphabet, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub alphabet: Alphabet,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> GroupPresentation {
        GroupPresentation { alphabet, relators }
    }

    /// `parse(&["a", "b"], &["a b a^-1 b"])`.
    pub fn parse(gens: &[&str], rels: &[&str]) -> Result<GroupPresentation, crate::word::WordError> {
        let alphabet = Alphabet::new(gens);
        let relators = rels
            .iter()
            .map(|r| alphabet.parse(r))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GroupPresentation { alphabet, relators })
    }

    pub fn free(gens: &[&str]) -> GroupPresentation {
        GroupPresentation {
            alphabet: Alphabet::new(gens),
            relators: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.alphabet.len()
    }

    pub fn raw_system(&self) -> RewriteSystem {
        RewriteSystem::from_relators(self.alphabet.clone(), &self.relators)
    }

    pub fn completed(&self, max_rules: usize, max_len: usize) -> Arc<RewriteSystem> {
        if self.relators.is_empty() {
            return Arc::new(RewriteSystem::free(self.alphabet.clone()));
        }
        Arc::new(self.raw_system().complete(max_rules, max_len))
    }

    pub fn eval(&self, w: &Word, images: &[usize], g: &FiniteGroup) -> usize {
        let mut x = 0;
        for l in w.letters() {
            let y = images[l.gen as usize];
            x = g.mul(x, if l.inv { g.inv(y) } else { y });
        }
        x
    }

    /// Homomorphisms to a finite group, as generator images.
    pub fn homs(&self, g: &FiniteGroup) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut images = vec![0; self.rank()];
        loop {
            if self.relators.iter().all(|r| self.eval(r, &images, g) == 0) {
                out.push(images.clone());
            }
            if !advance(&mut images, g.order()) {
                break;
            }
        }
        out
    }

    pub fn hom_count(&self, g: &FiniteGroup) -> usize {
        self.homs(g).len()
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.alphabet.fmt(r)).collect();
        write!(f, "⟨{} | {}⟩", self.alphabet.names().join(", "), rels.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        let p = GroupPresentation::parse(&["a", "b"], &["a b a^-1 b"]).unwrap();
        assert_eq!(p.to_string(), "⟨a, b | a b a^-1 b⟩");
    }

    #[test]
    fn counts() {
        let z = GroupPresentation::free(&["e"]);
        assert_eq!(z.hom_count(&FiniteGroup::symmetric3()), 6);
        let t = GroupPresentation::parse(&["a", "b"], &["a b a^-1 b^-1"]).unwrap();
        // commuting pairs in S3
        assert_eq!(t.hom_count(&FiniteGroup::symmetric3()), 18);
    }
}
