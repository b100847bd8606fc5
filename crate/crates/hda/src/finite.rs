//! Finite groups as multiplication tables.

use std::collections::{BTreeSet, HashMap, VecDeque};

/// A finite group on `0..order`, identity `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    pub name: String,
    n: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// From a full table; identity must be element 0. Does not validate.
    pub fn from_table(name: &str, table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> FiniteGroup {
        let n = table.len();
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let mut inv = vec![0; n];
        for (x, slot) in inv.iter_mut().enumerate() {
            *slot = (0..n).find(|&y| flat[x * n + y] == 0).unwrap_or(0);
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        FiniteGroup {
            name: name.to_string(),
            n,
            table: flat,
            inv,
            labels,
        }
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::from_table("1", vec![vec![0]], Some(vec!["e".into()]))
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        let t = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        FiniteGroup::from_table(&format!("Z{}", n), t, None)
    }

    /// Closure of permutation generators (images of `0..deg`).
    pub fn from_perms(name: &str, gens: &[Vec<usize>]) -> FiniteGroup {
        let deg = gens.first().map(|g| g.len()).unwrap_or(0);
        let id: Vec<usize> = (0..deg).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(id, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let p: Vec<usize> = (0..deg).map(|k| g[elems[i][k]]).collect();
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        let n = elems.len();
        // x*y means x then y: (x*y)(k) = y(x(k))
        let table = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let p: Vec<usize> = (0..deg).map(|k| elems[y][elems[x][k]]).collect();
                        index[&p]
                    })
                    .collect()
            })
            .collect();
        let labels = elems.iter().map(|p| perm_label(p)).collect();
        FiniteGroup::from_table(name, table, Some(labels))
    }

    pub fn symmetric3() -> FiniteGroup {
        FiniteGroup::from_perms("S3", &[vec![1, 0, 2], vec![1, 2, 0]])
    }

    pub fn dihedral4() -> FiniteGroup {
        FiniteGroup::from_perms("D4", &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]])
    }

    pub fn quaternion() -> FiniteGroup {
        // element 2u + s is (-1)^s times unit u of {1, i, j, k}
        const UNIT: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let table = (0..8)
            .map(|x| {
                (0..8)
                    .map(|y| {
                        let (s, u) = UNIT[x / 2][y / 2];
                        2 * u + ((s + x % 2 + y % 2) % 2)
                    })
                    .collect()
            })
            .collect();
        let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        FiniteGroup::from_table("Q8", table, Some(labels))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> FiniteGroup {
        self.labels = labels;
        self
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        // g x g^-1
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, x: usize, k: i64) -> usize {
        let b = if k < 0 { self.inv(x) } else { x };
        let mut r = 0;
        for _ in 0..k.unsigned_abs() {
            r = self.mul(r, b);
        }
        r
    }

    pub fn elem_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|x| self.elements().all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Group axioms with identity 0; used for validation of parsed tables.
    pub fn check_axioms(&self) -> Vec<String> {
        let mut bad = Vec::new();
        for x in self.elements() {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                bad.push(format!("identity fails at {}", x));
            }
            if self.mul(x, self.inv(x)) != 0 || self.mul(self.inv(x), x) != 0 {
                bad.push(format!("no inverse for {}", x));
            }
            for y in self.elements() {
                if self.mul(x, y) >= self.n {
                    bad.push(format!("product {}*{} out of range", x, y));
                    return bad;
                }
            }
        }
        for x in self.elements() {
            for y in self.elements() {
                for z in self.elements() {
                    if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                        bad.push(format!("associativity fails at ({}, {}, {})", x, y, z));
                    }
                }
            }
        }
        bad
    }

    pub fn subgroup_closure(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut set = BTreeSet::from([0]);
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    /// Small generating set, greedy by element index.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = BTreeSet::from([0]);
        // prefer elements of large order
        let mut cands: Vec<usize> = self.elements().skip(1).collect();
        cands.sort_by_key(|&x| (std::cmp::Reverse(self.elem_order(x)), x));
        for x in cands {
            if !span.contains(&x) {
                gens.push(x);
                span = self.subgroup_closure(&gens);
                if span.len() == self.n {
                    break;
                }
            }
        }
        gens
    }

    /// Subgroup as its own group, with the inclusion map.
    pub fn subgroup(&self, name: &str, elems: &BTreeSet<usize>) -> (FiniteGroup, Vec<usize>) {
        let list: Vec<usize> = elems.iter().cloned().collect();
        let pos: HashMap<usize, usize> = list.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let table = list
            .iter()
            .map(|&x| list.iter().map(|&y| pos[&self.mul(x, y)]).collect())
            .collect();
        let labels = list.iter().map(|&x| self.labels[x].clone()).collect();
        (FiniteGroup::from_table(name, table, Some(labels)), list)
    }

    pub fn is_normal(&self, elems: &BTreeSet<usize>) -> bool {
        elems
            .iter()
            .all(|&h| self.elements().all(|g| elems.contains(&self.conj(g, h))))
    }

    pub fn center(&self) -> BTreeSet<usize> {
        self.elements()
            .filter(|&z| self.elements().all(|g| self.mul(g, z) == self.mul(z, g)))
            .collect()
    }

    /// Quotient by a normal subgroup, with the projection.
    pub fn quotient(&self, name: &str, normal: &BTreeSet<usize>) -> (FiniteGroup, Vec<usize>) {
        let mut cls = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for g in self.elements() {
            if cls[g] == usize::MAX {
                for &h in normal {
                    cls[self.mul(g, h)] = reps.len();
                }
                reps.push(g);
            }
        }
        let table = reps
            .iter()
            .map(|&x| reps.iter().map(|&y| cls[self.mul(x, y)]).collect())
            .collect();
        let labels = reps.iter().map(|&x| format!("{}N", self.labels[x])).collect();
        (FiniteGroup::from_table(name, table, Some(labels)), cls)
    }

    /// Extends generator images to a homomorphism, if one exists.
    pub fn extend_hom(&self, gens: &[usize], images: &[usize], target: &FiniteGroup) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.n];
        map[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (k, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                let fy = target.mul(map[x], images[k]);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        if map.iter().any(|&v| v == usize::MAX) {
            return None;
        }
        for x in self.elements() {
            for y in self.elements() {
                if map[self.mul(x, y)] != target.mul(map[x], map[y]) {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// All homomorphisms to `target`, via generator images.
    pub fn homs(&self, target: &FiniteGroup) -> Vec<Vec<usize>> {
        let gens = self.generators();
        let mut out = Vec::new();
        let mut images = vec![0; gens.len()];
        loop {
            let ok = gens
                .iter()
                .zip(&images)
                .all(|(&g, &h)| target.elem_order(h) <= self.elem_order(g) && self.elem_order(g) % target.elem_order(h) == 0);
            if ok {
                if let Some(m) = self.extend_hom(&gens, &images, target) {
                    out.push(m);
                }
            }
            if !advance(&mut images, target.order()) {
                break;
            }
        }
        out
    }

    pub fn isomorphisms(&self, target: &FiniteGroup) -> Vec<Vec<usize>> {
        if self.n != target.order() {
            return Vec::new();
        }
        self.homs(target)
            .into_iter()
            .filter(|m| {
                let s: BTreeSet<usize> = m.iter().cloned().collect();
                s.len() == self.n
            })
            .collect()
    }

    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        self.isomorphisms(self)
    }

    pub fn is_hom(&self, map: &[usize], target: &FiniteGroup) -> bool {
        self.elements().all(|x| {
            self.elements()
                .all(|y| map[self.mul(x, y)] == target.mul(map[x], map[y]))
        })
    }

    /// Direct product, elements `(x, y)` packed as `x * |H| + y`.
    pub fn product(&self, other: &FiniteGroup) -> FiniteGroup {
        let m = other.order();
        let n = self.n * m;
        let table = (0..n)
            .map(|p| {
                (0..n)
                    .map(|q| self.mul(p / m, q / m) * m + other.mul(p % m, q % m))
                    .collect()
            })
            .collect();
        let labels = (0..n)
            .map(|p| format!("({},{})", self.labels[p / m], other.labels[p % m]))
            .collect();
        FiniteGroup::from_table(&format!("{}x{}", self.name, other.name), table, Some(labels))
    }
}

/// Odometer over `0..base` digits; false once it wraps.
pub fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn perm_label(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for s in 0..p.len() {
        if seen[s] || p[s] == s {
            continue;
        }
        let mut cyc = vec![s];
        seen[s] = true;
        let mut k = p[s];
        while k != s {
            seen[k] = true;
            cyc.push(k);
            k = p[k];
        }
        out.push('(');
        out.push_str(
            &cyc.iter()
                .map(|x| (x + 1).to_string())
                .collect::<Vec<_>>()
                .join(""),
        );
        out.push(')');
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(FiniteGroup::symmetric3().order(), 6);
        assert_eq!(FiniteGroup::dihedral4().order(), 8);
        let q = FiniteGroup::quaternion();
        assert_eq!(q.order(), 8);
        assert!(q.check_axioms().is_empty());
        // Q8 has a unique involution
        assert_eq!(q.elements().filter(|&x| q.elem_order(x) == 2).count(), 1);
        assert_eq!(FiniteGroup::dihedral4().elements().filter(|&x| FiniteGroup::dihedral4().elem_order(x) == 2).count(), 5);
    }

    #[test]
    fn aut_sizes() {
        assert_eq!(FiniteGroup::symmetric3().automorphisms().len(), 6);
        assert_eq!(FiniteGroup::dihedral4().automorphisms().len(), 8);
        assert_eq!(FiniteGroup::quaternion().automorphisms().len(), 24);
        assert_eq!(FiniteGroup::cyclic(4).automorphisms().len(), 2);
    }

    #[test]
    fn hom_counts() {
        // |Hom(Z4, S3)| = elements of order dividing 4
        let s3 = FiniteGroup::symmetric3();
        assert_eq!(FiniteGroup::cyclic(4).homs(&s3).len(), 4);
        assert_eq!(s3.homs(&FiniteGroup::cyclic(2)).len(), 2);
    }

    #[test]
    fn quotient_center() {
        let d4 = FiniteGroup::dihedral4();
        let z = d4.center();
        assert_eq!(z.len(), 2);
        let (q, _) = d4.quotient("D4/Z", &z);
        assert_eq!(q.order(), 4);
        assert!(q.is_abelian());
    }
}
