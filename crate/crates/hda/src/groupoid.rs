//! Quivers, finite groupoids, groupoid presentations and their morphisms.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::finite::{advance, FiniteGroup};
use crate::presentation::GroupPresentation;
use crate::word::{free_reduce, Alphabet, Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate name `{0}`")]
    Duplicate(String),
    #[error("word is not a composable path from `{0}`")]
    NotComposable(String),
    #[error("words are not parallel")]
    NotParallel,
    #[error("edge set is not a forest")]
    NotForest,
    #[error("vertex `{0}` is not spanned by the forest")]
    NotCovered(String),
    #[error("morphism does not respect endpoints at edge `{0}`")]
    BadMorphism(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
}

impl Quiver {
    pub fn new() -> Quiver {
        Quiver::default()
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize, GroupoidError> {
        if self.vertices.iter().any(|v| v == name) {
            return Err(GroupoidError::Duplicate(name.into()));
        }
        self.vertices.push(name.into());
        Ok(self.vertices.len() - 1)
    }

    pub fn add_edge(&mut self, name: &str, src: usize, tgt: usize) -> Result<usize, GroupoidError> {
        if self.edges.iter().any(|e| e.name == name) {
            return Err(GroupoidError::Duplicate(name.into()));
        }
        self.edges.push(Edge { name: name.into(), src, tgt });
        Ok(self.edges.len() - 1)
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn alphabet(&self) -> Alphabet {
        let names: Vec<&str> = self.edges.iter().map(|e| e.name.as_str()).collect();
        Alphabet::new(&names)
    }

    /// End vertex of the path `w` read from `start`.
    pub fn path_end(&self, start: usize, w: &Word) -> Option<usize> {
        let mut v = start;
        for l in w.letters() {
            let e = &self.edges[l.gen as usize];
            if l.inv {
                if e.tgt != v {
                    return None;
                }
                v = e.src;
            } else {
                if e.src != v {
                    return None;
                }
                v = e.tgt;
            }
        }
        Some(v)
    }

    /// Start vertex deduced from the first letter.
    pub fn path_start(&self, w: &Word) -> Option<usize> {
        w.letters().first().map(|l| {
            let e = &self.edges[l.gen as usize];
            if l.inv {
                e.tgt
            } else {
                e.src
            }
        })
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(e.src, e.tgt);
        }
        uf.classes()
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("digraph {} {{\n", dot_id(name));
        for v in &self.vertices {
            s.push_str(&format!("  {};\n", dot_id(v)));
        }
        for e in &self.edges {
            s.push_str(&format!(
                "  {} -> {} [label={}];\n",
                dot_id(&self.vertices[e.src]),
                dot_id(&self.vertices[e.tgt]),
                dot_id(&e.name)
            ));
        }
        s.push_str("}\n");
        s
    }
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\""))
}

#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    /// Returns false when already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    /// Classes sorted by least member.
    pub fn classes(&mut self) -> Vec<Vec<usize>> {
        let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..self.parent.len() {
            let r = self.find(x);
            map.entry(r).or_default().push(x);
        }
        let mut v: Vec<Vec<usize>> = map.into_values().collect();
        v.sort();
        v
    }
}

// ---------------------------------------------------------------------------
// finite groupoids

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// Composition is in path order: `comp(f, g)` is `f` then `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    pub name: String,
    pub objects: Vec<String>,
    pub arrows: Vec<Arrow>,
    comp: Vec<Option<usize>>,
    ident: Vec<usize>,
    inv: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum GroupoidViolation {
    Domain { f: usize, g: usize },
    Endpoints { f: usize, g: usize },
    Associativity { f: usize, g: usize, h: usize },
    LeftIdentity { f: usize },
    RightIdentity { f: usize },
    Inverse { f: usize },
    IdentityShape { x: usize },
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<GroupoidViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl FiniteGroupoid {
    pub fn from_parts(
        name: &str,
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        comp: Vec<Option<usize>>,
        ident: Vec<usize>,
        inv: Vec<usize>,
    ) -> FiniteGroupoid {
        FiniteGroupoid {
            name: name.into(),
            objects,
            arrows,
            comp,
            ident,
            inv,
        }
    }

    pub fn from_group(g: &FiniteGroup) -> FiniteGroupoid {
        let n = g.order();
        let arrows = g
            .elements()
            .map(|x| Arrow { name: g.label(x).to_string(), src: 0, tgt: 0 })
            .collect();
        let comp = (0..n * n).map(|k| Some(g.mul(k / n, k % n))).collect();
        FiniteGroupoid {
            name: g.name.clone(),
            objects: vec!["*".into()],
            arrows,
            comp,
            ident: vec![0],
            inv: g.elements().map(|x| g.inv(x)).collect(),
        }
    }

    /// Two objects 0, 1 and a single arrow between them.
    pub fn interval() -> FiniteGroupoid {
        let arrows = vec![
            Arrow { name: "1_0".into(), src: 0, tgt: 0 },
            Arrow { name: "1_1".into(), src: 1, tgt: 1 },
            Arrow { name: "i".into(), src: 0, tgt: 1 },
            Arrow { name: "i^-1".into(), src: 1, tgt: 0 },
        ];
        FiniteGroupoid::close("I", vec!["0".into(), "1".into()], arrows, |f, g| {
            // arrows are determined by endpoints
            let (s, t) = (f, g);
            match (s, t) {
                (0, 0) => 0,
                (1, 1) => 1,
                (0, 1) => 2,
                _ => 3,
            }
        })
    }

    /// Builds a groupoid in which arrows are determined by `(src, tgt)` via `pick`.
    fn close(name: &str, objects: Vec<String>, arrows: Vec<Arrow>, pick: impl Fn(usize, usize) -> usize) -> FiniteGroupoid {
        let n = arrows.len();
        let mut comp = vec![None; n * n];
        for f in 0..n {
            for g in 0..n {
                if arrows[f].tgt == arrows[g].src {
                    comp[f * n + g] = Some(pick(arrows[f].src, arrows[g].tgt));
                }
            }
        }
        let ident = (0..objects.len()).map(|x| pick(x, x)).collect();
        let inv = (0..n).map(|f| pick(arrows[f].tgt, arrows[f].src)).collect();
        FiniteGroupoid {
            name: name.into(),
            objects,
            arrows,
            comp,
            ident,
            inv,
        }
    }

    pub fn disjoint_union(name: &str, parts: &[FiniteGroupoid]) -> FiniteGroupoid {
        let mut objects = Vec::new();
        let mut arrows = Vec::new();
        let mut ident = Vec::new();
        let mut inv = Vec::new();
        let mut offs = Vec::new();
        for (k, p) in parts.iter().enumerate() {
            let (ob, ar) = (objects.len(), arrows.len());
            offs.push(ar);
            for o in &p.objects {
                objects.push(format!("{}.{}", k, o));
            }
            for a in &p.arrows {
                arrows.push(Arrow { name: format!("{}.{}", k, a.name), src: a.src + ob, tgt: a.tgt + ob });
            }
            ident.extend(p.ident.iter().map(|&i| i + ar));
            inv.extend(p.inv.iter().map(|&i| i + ar));
        }
        let n = arrows.len();
        let mut comp = vec![None; n * n];
        for (k, p) in parts.iter().enumerate() {
            let m = p.arrows.len();
            for f in 0..m {
                for g in 0..m {
                    comp[(f + offs[k]) * n + g + offs[k]] = p.comp[f * m + g].map(|h| h + offs[k]);
                }
            }
        }
        FiniteGroupoid {
            name: name.into(),
            objects,
            arrows,
            comp,
            ident,
            inv,
        }
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn src(&self, f: usize) -> usize {
        self.arrows[f].src
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.arrows[f].tgt
    }

    pub fn id(&self, x: usize) -> usize {
        self.ident[x]
    }

    pub fn inv(&self, f: usize) -> usize {
        self.inv[f]
    }

    pub fn comp(&self, f: usize, g: usize) -> Option<usize> {
        self.comp[f * self.arrows.len() + g]
    }

    /// Composite that is known to exist.
    pub fn c(&self, f: usize, g: usize) -> usize {
        self.comp(f, g).expect("composable arrows")
    }

    pub fn set_comp(&mut self, f: usize, g: usize, h: Option<usize>) {
        let n = self.arrows.len();
        self.comp[f * n + g] = h;
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.ident[self.src(f)] == f
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&f| self.src(f) == x && self.tgt(f) == y)
            .collect()
    }

    pub fn from_obj(&self, x: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&f| self.src(f) == x).collect()
    }

    /// Vertex group at `x` as a finite group, with the arrow list.
    pub fn vertex_group(&self, x: usize) -> (FiniteGroup, Vec<usize>) {
        let mut loops = self.hom(x, x);
        let idp = loops.iter().position(|&f| f == self.id(x)).unwrap();
        loops.swap(0, idp);
        let pos: HashMap<usize, usize> = loops.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let table = loops
            .iter()
            .map(|&f| loops.iter().map(|&g| pos[&self.c(f, g)]).collect())
            .collect();
        let labels = loops.iter().map(|&f| self.arrows[f].name.clone()).collect();
        (FiniteGroup::from_table(&format!("{}({})", self.name, x), table, Some(labels)), loops)
    }

    pub fn validate(&self) -> ValidationReport {
        validate_groupoid(self)
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.objects.len());
        for a in &self.arrows {
            uf.union(a.src, a.tgt);
        }
        uf.classes()
    }

    pub fn is_one_object(&self) -> bool {
        self.objects.len() == 1
    }
}

pub fn validate_groupoid(g: &FiniteGroupoid) -> ValidationReport {
    let n = g.arrows.len();
    let mut v = Vec::new();
    for x in 0..g.objects.len() {
        let i = g.ident[x];
        if i >= n || g.src(i) != x || g.tgt(i) != x {
            v.push(GroupoidViolation::IdentityShape { x });
        }
    }
    for f in 0..n {
        for h in 0..n {
            let should = g.tgt(f) == g.src(h);
            match g.comp(f, h) {
                Some(k) if !should => {
                    let _ = k;
                    v.push(GroupoidViolation::Domain { f, g: h });
                }
                None if should => v.push(GroupoidViolation::Domain { f, g: h }),
                Some(k) => {
                    if k >= n || g.src(k) != g.src(f) || g.tgt(k) != g.tgt(h) {
                        v.push(GroupoidViolation::Endpoints { f, g: h });
                    }
                }
                None => {}
            }
        }
    }
    for f in 0..n {
        let (s, t) = (g.src(f), g.tgt(f));
        if g.comp(g.ident[s], f) != Some(f) {
            v.push(GroupoidViolation::LeftIdentity { f });
        }
        if g.comp(f, g.ident[t]) != Some(f) {
            v.push(GroupoidViolation::RightIdentity { f });
        }
        let fi = g.inv[f];
        if fi >= n || g.comp(f, fi) != Some(g.ident[s]) || g.comp(fi, f) != Some(g.ident[t]) {
            v.push(GroupoidViolation::Inverse { f });
        }
    }
    for f in 0..n {
        for h in 0..n {
            let Some(fh) = g.comp(f, h) else { continue };
            if fh >= n {
                continue;
            }
            for k in 0..n {
                let Some(hk) = g.comp(h, k) else { continue };
                if hk >= n {
                    continue;
                }
                let l = g.comp(fh, k);
                let r = g.comp(f, hk);
                if l.is_none() || l != r {
                    v.push(GroupoidViolation::Associativity { f, g: h, h: k });
                }
            }
        }
    }
    v.sort();
    v.dedup();
    ValidationReport { violations: v }
}

// ---------------------------------------------------------------------------
// presentations

/// `lhs = rhs` as paths starting at `at`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub at: usize,
    pub lhs: Word,
    pub rhs: Word,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupoidPresentation {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
}

/// Object map plus a word in the target for each generating edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidMorphism {
    pub obj: Vec<usize>,
    pub edges: Vec<Word>,
}

impl GroupoidMorphism {
    pub fn apply(&self, w: &Word) -> Word {
        free_reduce(&w.substitute(&self.edges))
    }

    pub fn apply_relation(&self, r: &Relation) -> Relation {
        Relation { at: self.obj[r.at], lhs: self.apply(&r.lhs), rhs: self.apply(&r.rhs) }
    }

    /// `self` then `next`.
    pub fn then(&self, next: &GroupoidMorphism) -> GroupoidMorphism {
        GroupoidMorphism {
            obj: self.obj.iter().map(|&x| next.obj[x]).collect(),
            edges: self.edges.iter().map(|w| next.apply(w)).collect(),
        }
    }

    pub fn identity(p: &GroupoidPresentation) -> GroupoidMorphism {
        GroupoidMorphism {
            obj: (0..p.quiver.vertices.len()).collect(),
            edges: (0..p.quiver.edges.len() as u32).map(Word::gen).collect(),
        }
    }

    pub fn check_endpoints(&self, src: &GroupoidPresentation, tgt: &GroupoidPresentation) -> Result<(), GroupoidError> {
        for (i, e) in src.quiver.edges.iter().enumerate() {
            let start = self.obj[e.src];
            if tgt.quiver.path_end(start, &self.edges[i]) != Some(self.obj[e.tgt]) {
                return Err(GroupoidError::BadMorphism(e.name.clone()));
            }
        }
        Ok(())
    }

    /// Endpoint compatibility, and every relation sent to an equality.
    pub fn validate(&self, src: &GroupoidPresentation, tgt: &GroupoidPresentation, opts: &EqOptions) -> Result<bool, GroupoidError> {
        self.check_endpoints(src, tgt)?;
        for r in &src.relations {
            let r2 = self.apply_relation(r);
            match word_equal(tgt, r2.at, &r2.lhs, &r2.rhs, opts)? {
                WordEq::Equal(_) => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }
}

impl GroupoidPresentation {
    pub fn new(quiver: Quiver) -> GroupoidPresentation {
        GroupoidPresentation { quiver, relations: Vec::new() }
    }

    /// One object, one loop per generator, relators `r = 1`.
    pub fn from_group(p: &GroupPresentation) -> GroupoidPresentation {
        let mut q = Quiver::new();
        q.add_vertex("*").unwrap();
        for n in p.alphabet.names() {
            q.add_edge(n, 0, 0).unwrap();
        }
        let relations = p
            .relators
            .iter()
            .map(|r| Relation { at: 0, lhs: r.clone(), rhs: Word::empty() })
            .collect();
        GroupoidPresentation { quiver: q, relations }
    }

    /// Generators for the interval groupoid: objects 0, 1 and an edge `i`.
    pub fn interval() -> GroupoidPresentation {
        let mut q = Quiver::new();
        q.add_vertex("0").unwrap();
        q.add_vertex("1").unwrap();
        q.add_edge("i", 0, 1).unwrap();
        GroupoidPresentation::new(q)
    }

    pub fn discrete(names: &[&str]) -> GroupoidPresentation {
        let mut q = Quiver::new();
        for n in names {
            q.add_vertex(n).unwrap();
        }
        GroupoidPresentation::new(q)
    }

    pub fn add_relation(&mut self, at: usize, lhs: Word, rhs: Word) -> Result<(), GroupoidError> {
        let e1 = self.quiver.path_end(at, &lhs);
        let e2 = self.quiver.path_end(at, &rhs);
        match (e1, e2) {
            (Some(a), Some(b)) if a == b => {
                self.relations.push(Relation { at, lhs, rhs });
                Ok(())
            }
            (None, _) | (_, None) => Err(GroupoidError::NotComposable(self.quiver.vertices[at].clone())),
            _ => Err(GroupoidError::NotParallel),
        }
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.quiver.components()
    }

    pub fn alphabet(&self) -> Alphabet {
        self.quiver.alphabet()
    }

    /// Prefix every vertex and edge name.
    pub fn renamed(&self, prefix: &str) -> GroupoidPresentation {
        let mut p = self.clone();
        for v in p.quiver.vertices.iter_mut() {
            *v = format!("{}{}", prefix, v);
        }
        for e in p.quiver.edges.iter_mut() {
            e.name = format!("{}{}", prefix, e.name);
        }
        p
    }

    /// Breadth-first spanning forest; roots taken in the given order, then
    /// the remaining vertices in index order.
    pub fn bfs_forest(&self, roots: &[usize]) -> Vec<usize> {
        let nv = self.quiver.vertices.len();
        let mut seen = vec![false; nv];
        let mut forest = Vec::new();
        let order: Vec<usize> = roots.iter().cloned().chain(0..nv).collect();
        for r in order {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            let mut queue = std::collections::VecDeque::from([r]);
            while let Some(v) = queue.pop_front() {
                for (i, e) in self.quiver.edges.iter().enumerate() {
                    let other = if e.src == v && !seen[e.tgt] {
                        Some(e.tgt)
                    } else if e.tgt == v && !seen[e.src] {
                        Some(e.src)
                    } else {
                        None
                    };
                    if let Some(o) = other {
                        seen[o] = true;
                        forest.push(i);
                        queue.push_back(o);
                    }
                }
            }
        }
        forest.sort();
        forest
    }

    pub fn vertex_group(&self, x: usize, forest: &[usize]) -> Result<GroupPresentation, GroupoidError> {
        vertex_group(self, x, forest)
    }

    /// Vertex group at `x` using the breadth-first forest rooted at `x`.
    pub fn vertex_group_at(&self, x: usize) -> GroupPresentation {
        let f = self.bfs_forest(&[x]);
        vertex_group(self, x, &f).expect("bfs forest spans")
    }

    pub fn describe(&self) -> String {
        let ab = self.alphabet();
        let mut s = String::new();
        s.push_str(&format!("objects: {}\n", self.quiver.vertices.join(", ")));
        s.push_str("generators:\n");
        for e in &self.quiver.edges {
            s.push_str(&format!(
                "  {} : {} -> {}\n",
                e.name, self.quiver.vertices[e.src], self.quiver.vertices[e.tgt]
            ));
        }
        s.push_str("relations:\n");
        for r in &self.relations {
            s.push_str(&format!(
                "  {} = {}  (at {})\n",
                ab.fmt(&r.lhs),
                ab.fmt(&r.rhs),
                self.quiver.vertices[r.at]
            ));
        }
        s
    }
}

pub fn components(p: &GroupoidPresentation) -> Vec<Vec<usize>> {
    p.components()
}

pub fn vertex_group(p: &GroupoidPresentation, x: usize, forest: &[usize]) -> Result<GroupPresentation, GroupoidError> {
    let nv = p.quiver.vertices.len();
    let mut uf = UnionFind::new(nv);
    for &e in forest {
        let ed = &p.quiver.edges[e];
        if !uf.union(ed.src, ed.tgt) {
            return Err(GroupoidError::NotForest);
        }
    }
    let comps = p.quiver.components();
    let comp: BTreeSet<usize> = comps.into_iter().find(|c| c.contains(&x)).unwrap().into_iter().collect();
    for &v in &comp {
        if uf.find(v) != uf.find(x) {
            return Err(GroupoidError::NotCovered(p.quiver.vertices[v].clone()));
        }
    }
    let tree: BTreeSet<usize> = forest.iter().cloned().collect();
    let mut gens: Vec<usize> = Vec::new();
    for (i, e) in p.quiver.edges.iter().enumerate() {
        if comp.contains(&e.src) && !tree.contains(&i) {
            gens.push(i);
        }
    }
    let names: Vec<&str> = gens.iter().map(|&i| p.quiver.edges[i].name.as_str()).collect();
    let alphabet = Alphabet::new(&names);
    let relabel: HashMap<usize, u32> = gens.iter().enumerate().map(|(k, &i)| (i, k as u32)).collect();
    let collapse = |w: &Word| -> Word {
        Word(
            w.letters()
                .iter()
                .filter_map(|l| relabel.get(&(l.gen as usize)).map(|&g| Letter { gen: g, inv: l.inv }))
                .collect(),
        )
    };
    let mut relators = Vec::new();
    for r in &p.relations {
        if !comp.contains(&r.at) {
            continue;
        }
        let w = free_reduce(&collapse(&r.lhs).concat(&collapse(&r.rhs).inverse()));
        if !w.is_empty() {
            relators.push(w);
        }
    }
    Ok(GroupPresentation::new(alphabet, relators))
}

/// Edge-level images of a word in the vertex group (tree letters dropped).
pub fn collapse_to_vertex_group(p: &GroupoidPresentation, forest: &[usize], x: usize, w: &Word) -> Word {
    let comp: BTreeSet<usize> = p
        .quiver
        .components()
        .into_iter()
        .find(|c| c.contains(&x))
        .unwrap()
        .into_iter()
        .collect();
    let tree: BTreeSet<usize> = forest.iter().cloned().collect();
    let mut relabel = HashMap::new();
    for (i, e) in p.quiver.edges.iter().enumerate() {
        if comp.contains(&e.src) && !tree.contains(&i) {
            let k = relabel.len() as u32;
            relabel.insert(i, k);
        }
    }
    Word(
        w.letters()
            .iter()
            .filter_map(|l| relabel.get(&(l.gen as usize)).map(|&g| Letter { gen: g, inv: l.inv }))
            .collect(),
    )
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("name clash on `{0}`")]
pub struct NameClash(pub String);

/// Disjoint union; names must already be disjoint.
pub fn coproduct(parts: &[GroupoidPresentation]) -> Result<(GroupoidPresentation, Vec<GroupoidMorphism>), NameClash> {
    let mut out = GroupoidPresentation::default();
    let mut injections = Vec::new();
    for p in parts {
        let vo = out.quiver.vertices.len();
        let eo = out.quiver.edges.len() as u32;
        for v in &p.quiver.vertices {
            out.quiver.add_vertex(v).map_err(|_| NameClash(v.clone()))?;
        }
        for e in &p.quiver.edges {
            out.quiver
                .add_edge(&e.name, e.src + vo, e.tgt + vo)
                .map_err(|_| NameClash(e.name.clone()))?;
        }
        let shift = |w: &Word| Word(w.letters().iter().map(|l| Letter { gen: l.gen + eo, inv: l.inv }).collect());
        for r in &p.relations {
            out.relations.push(Relation { at: r.at + vo, lhs: shift(&r.lhs), rhs: shift(&r.rhs) });
        }
        injections.push(GroupoidMorphism {
            obj: (0..p.quiver.vertices.len()).map(|v| v + vo).collect(),
            edges: (0..p.quiver.edges.len() as u32).map(|e| Word::gen(e + eo)).collect(),
        });
    }
    Ok((out, injections))
}

// ---------------------------------------------------------------------------
// word problem

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EqualCert {
    /// Joinable under a completed rewrite system.
    Completed,
    /// Joinable under an incomplete system (still sound).
    Partial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DistinctCert {
    NormalForms { left: String, right: String },
    Probe { group: String, images: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "answer", rename_all = "snake_case")]
pub enum WordEq {
    Equal(EqualCert),
    Distinct(DistinctCert),
    Unknown { max_rules: usize, max_len: usize },
}

#[derive(Clone, Debug)]
pub struct EqOptions {
    pub max_rules: usize,
    pub max_len: usize,
    pub probes: Vec<FiniteGroup>,
}

impl Default for EqOptions {
    fn default() -> Self {
        EqOptions {
            max_rules: 200,
            max_len: 24,
            probes: vec![
                FiniteGroup::cyclic(2),
                FiniteGroup::cyclic(3),
                FiniteGroup::cyclic(4),
                FiniteGroup::symmetric3(),
            ],
        }
    }
}

/// Searches for a homomorphism sending `w` to a non-identity element.
pub fn separate_by_probe(vg: &GroupPresentation, w: &Word, probes: &[FiniteGroup]) -> Option<DistinctCert> {
    for t in probes {
        for h in vg.homs(t) {
            if vg.eval(w, &h, t) != 0 {
                return Some(DistinctCert::Probe {
                    group: t.name.clone(),
                    images: h.iter().map(|&x| t.label(x).to_string()).collect(),
                });
            }
        }
    }
    None
}

pub fn word_equal(p: &GroupoidPresentation, at: usize, w1: &Word, w2: &Word, opts: &EqOptions) -> Result<WordEq, GroupoidError> {
    let e1 = p.quiver.path_end(at, w1);
    let e2 = p.quiver.path_end(at, w2);
    match (e1, e2) {
        (Some(a), Some(b)) if a == b => {}
        (None, _) | (_, None) => return Err(GroupoidError::NotComposable(p.quiver.vertices[at].clone())),
        _ => return Err(GroupoidError::NotParallel),
    }
    let forest = p.bfs_forest(&[at]);
    let vg = vertex_group(p, at, &forest)?;
    let u = collapse_to_vertex_group(p, &forest, at, w1);
    let v = collapse_to_vertex_group(p, &forest, at, w2);
    let loopw = free_reduce(&u.concat(&v.inverse()));
    if loopw.is_empty() {
        return Ok(WordEq::Equal(EqualCert::Completed));
    }
    let rs = vg.completed(opts.max_rules, opts.max_len);
    let (nu, nv) = (rs.reduce(&u), rs.reduce(&v));
    if rs.is_completed() {
        if nu == nv {
            return Ok(WordEq::Equal(EqualCert::Completed));
        }
        return Ok(WordEq::Distinct(DistinctCert::NormalForms {
            left: vg.alphabet.fmt(&nu),
            right: vg.alphabet.fmt(&nv),
        }));
    }
    if nu == nv {
        return Ok(WordEq::Equal(EqualCert::Partial));
    }
    if let Some(c) = separate_by_probe(&vg, &loopw, &opts.probes) {
        return Ok(WordEq::Distinct(c));
    }
    Ok(WordEq::Unknown { max_rules: opts.max_rules, max_len: opts.max_len })
}

// ---------------------------------------------------------------------------
// morphisms into finite groupoids

/// A morphism from a presentation into a finite groupoid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProbeMap {
    pub obj: Vec<usize>,
    pub arrows: Vec<usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("enumeration bound {0} exceeded")]
pub struct TooLarge(pub usize);

/// Composite of the images of `w`, read from object `start`.
pub fn eval_path(t: &FiniteGroupoid, start: usize, w: &Word, images: &[usize]) -> Option<usize> {
    let mut acc = t.id(start);
    for l in w.letters() {
        let f = images[l.gen as usize];
        let f = if l.inv { t.inv(f) } else { f };
        acc = t.comp(acc, f)?;
    }
    Some(acc)
}

pub fn morphisms_to(p: &GroupoidPresentation, t: &FiniteGroupoid, limit: usize) -> Result<Vec<ProbeMap>, TooLarge> {
    let nv = p.quiver.vertices.len();
    let ne = p.quiver.edges.len();
    // relation i is checked once its last edge is assigned
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); ne + 1];
    for (i, r) in p.relations.iter().enumerate() {
        let last = r.lhs.letters().iter().chain(r.rhs.letters()).map(|l| l.gen as usize + 1).max().unwrap_or(0);
        due[last].push(i);
    }
    let mut out = Vec::new();
    let mut objs = vec![0; nv];
    let mut work = 0usize;
    loop {
        // at empty relations, check now
        if due[0].iter().all(|&i| {
            let r = &p.relations[i];
            eval_path(t, objs[r.at], &r.lhs, &[]) == eval_path(t, objs[r.at], &r.rhs, &[])
        }) {
            let mut images = vec![0; ne];
            search(p, t, &objs, &due, 0, &mut images, &mut out, &mut work, limit)?;
        }
        if nv == 0 || !advance(&mut objs, t.object_count()) {
            break;
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    p: &GroupoidPresentation,
    t: &FiniteGroupoid,
    objs: &[usize],
    due: &[Vec<usize>],
    k: usize,
    images: &mut Vec<usize>,
    out: &mut Vec<ProbeMap>,
    work: &mut usize,
    limit: usize,
) -> Result<(), TooLarge> {
    *work += 1;
    if *work > limit {
        return Err(TooLarge(limit));
    }
    if k == p.quiver.edges.len() {
        out.push(ProbeMap { obj: objs.to_vec(), arrows: images.clone() });
        return Ok(());
    }
    let e = &p.quiver.edges[k];
    for f in t.hom(objs[e.src], objs[e.tgt]) {
        images[k] = f;
        let ok = due[k + 1].iter().all(|&i| {
            let r = &p.relations[i];
            eval_path(t, objs[r.at], &r.lhs, images) == eval_path(t, objs[r.at], &r.rhs, images)
        });
        if ok {
            search(p, t, objs, due, k + 1, images, out, work, limit)?;
        }
    }
    Ok(())
}

pub fn morphism_count(p: &GroupoidPresentation, t: &FiniteGroupoid, limit: usize) -> Result<usize, TooLarge> {
    morphisms_to(p, t, limit).map(|v| v.len())
}

/// Named probe groupoids: `Zn`, `S3`, `D4`, `Q8`, `I`.
pub fn probe(name: &str) -> Option<FiniteGroupoid> {
    match name {
        "I" => Some(FiniteGroupoid::interval()),
        "S3" => Some(FiniteGroupoid::from_group(&FiniteGroup::symmetric3())),
        "D4" => Some(FiniteGroupoid::from_group(&FiniteGroup::dihedral4())),
        "Q8" => Some(FiniteGroupoid::from_group(&FiniteGroup::quaternion())),
        _ => {
            let n: usize = name.strip_prefix('Z')?.parse().ok()?;
            if n == 0 || n > 64 {
                return None;
            }
            Some(FiniteGroupoid::from_group(&FiniteGroup::cyclic(n)))
        }
    }
}

pub fn default_probes() -> Vec<FiniteGroupoid> {
    ["Z2", "Z3", "Z4", "Z5", "S3", "I"].iter().map(|n| probe(n).unwrap()).collect()
}

/// Morphism counts against each probe; `None` where the bound was hit.
pub fn probe_counts(p: &GroupoidPresentation, probes: &[FiniteGroupoid], limit: usize) -> Vec<(String, Option<usize>)> {
    probes
        .iter()
        .map(|t| (t.name.clone(), morphism_count(p, t, limit).ok()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_valid() {
        assert!(FiniteGroupoid::interval().validate().is_valid());
        assert_eq!(FiniteGroupoid::interval().components().len(), 1);
    }

    #[test]
    fn circle_vertex_group() {
        let mut q = Quiver::new();
        q.add_vertex("v").unwrap();
        q.add_edge("e", 0, 0).unwrap();
        let p = GroupoidPresentation::new(q);
        let vg = p.vertex_group(0, &[]).unwrap();
        assert_eq!(vg.rank(), 1);
        assert!(vg.relators.is_empty());
    }

    #[test]
    fn forest_errors() {
        let mut q = Quiver::new();
        q.add_vertex("x").unwrap();
        q.add_vertex("y").unwrap();
        q.add_edge("p", 0, 1).unwrap();
        q.add_edge("q", 0, 1).unwrap();
        let p = GroupoidPresentation::new(q);
        assert_eq!(p.vertex_group(0, &[0, 1]), Err(GroupoidError::NotForest));
        assert!(matches!(p.vertex_group(0, &[]), Err(GroupoidError::NotCovered(_))));
        assert_eq!(p.vertex_group(0, &[0]).unwrap().rank(), 1);
    }

    #[test]
    fn word_problem() {
        let mut q = Quiver::new();
        q.add_vertex("v").unwrap();
        q.add_edge("e", 0, 0).unwrap();
        let p = GroupoidPresentation::new(q);
        let ab = p.alphabet();
        let o = EqOptions::default();
        let e = ab.parse("e").unwrap();
        assert_eq!(word_equal(&p, 0, &e, &e, &o).unwrap(), WordEq::Equal(EqualCert::Completed));
        assert!(matches!(word_equal(&p, 0, &e, &ab.parse("e e").unwrap(), &o).unwrap(), WordEq::Distinct(_)));
        let vg = p.vertex_group_at(0);
        // e vs e^2 differ already in Z3
        let c = separate_by_probe(&vg, &vg.alphabet.parse("e^-1").unwrap(), &[FiniteGroup::cyclic(3)]);
        assert!(matches!(c, Some(DistinctCert::Probe { .. })));
    }

    #[test]
    fn c2_word_equal() {
        let g = GroupoidPresentation::from_group(&GroupPresentation::parse(&["a"], &["a a"]).unwrap());
        let ab = g.alphabet();
        let r = word_equal(&g, 0, &ab.parse("a a a").unwrap(), &ab.parse("a").unwrap(), &EqOptions::default()).unwrap();
        assert_eq!(r, WordEq::Equal(EqualCert::Completed));
    }

    #[test]
    fn counts_into_groups() {
        let p = GroupoidPresentation::interval();
        // object maps 2*2 times arrows between the chosen objects
        assert_eq!(morphism_count(&p, &FiniteGroupoid::interval(), 1000).unwrap(), 4);
        assert_eq!(morphism_count(&p, &probe("S3").unwrap(), 1000).unwrap(), 6);
    }
}
