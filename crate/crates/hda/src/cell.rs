//! Combinatorial 2-complexes: parsing, `π₁(X, C)` directly and through a
//! cover by subcomplexes, the free crossed module `π₂(X, X¹) → π₁(X¹)`, and
//! the connectivity conditions on a triple `(X, A, C)`.
//!
//! File grammar, one declaration per line, `#` starts a comment:
//!
//! ```text
//! vertex v w
//! edge a : v -> v
//! cell s : a b a^-1 b
//! base v
//! sub U : vertices=v,w edges=a,e cells=s
//! ```

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::colimit::{coequaliser, Cocone, Diagram};
use crate::finite::FiniteGroup;
use crate::groupoid::{
    coproduct, probe_counts, word_equal, EqOptions, FiniteGroupoid, GroupoidMorphism, GroupoidPresentation,
    Quiver, Relation, WordEq,
};
use crate::presentation::GroupPresentation;
use crate::word::{free_reduce, valid_name, Letter, Word};
use crate::xmod::free::{FcmError, FreeCrossedModule};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CellError {
    #[error("no base point in the component of `{0}`")]
    MissingComponent(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown subcomplex `{0}`")]
    UnknownSub(String),
    #[error("the subcomplexes do not cover: `{0}` is in none of them")]
    NotCovering(String),
    #[error("no cover given")]
    NoCover,
    #[error("{which} has a component without base point, containing `{vertex}`")]
    Hypothesis { which: String, vertex: String },
    #[error("the 1-skeleton is not connected")]
    Disconnected,
    #[error("base point `{0}` is not in the subcomplex")]
    BaseOutside(String),
    #[error(transparent)]
    Fcm(#[from] FcmError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub name: String,
    /// Closed edge path.
    pub word: Word,
    pub at: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sub {
    pub name: String,
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<usize>,
    pub cells: BTreeSet<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    pub skeleton: Quiver,
    pub cells: Vec<Cell>,
    pub base: Vec<usize>,
    pub subs: Vec<Sub>,
}

fn err(line: usize, raw: &str, tok: &str, msg: String) -> ParseError {
    // look past the keyword first so short names do not match inside it
    let lead = raw.len() - raw.trim_start().len();
    let skip = raw[lead..].find(char::is_whitespace).map_or(raw.len(), |i| i + lead);
    let col = raw[skip..].find(tok).map(|i| i + skip).or_else(|| raw.find(tok)).map_or(1, |i| i + 1);
    ParseError { line, col, msg }
}

pub fn parse_complex(text: &str) -> Result<Complex, ParseError> {
    let mut x = Complex { skeleton: Quiver::new(), cells: Vec::new(), base: Vec::new(), subs: Vec::new() };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        let (kw, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let rest = rest.trim();
        let named = |rest: &str| -> Result<(String, String), ParseError> {
            let (n, r) = rest.split_once(':').ok_or_else(|| err(line, raw, kw, format!("`{}` needs `name : ...`", kw)))?;
            let n = n.trim();
            if !valid_name(n) {
                return Err(err(line, raw, n, format!("bad name `{}`", n)));
            }
            Ok((n.to_string(), r.trim().to_string()))
        };
        let vertex = |x: &Complex, v: &str| x.skeleton.vertex(v).ok_or_else(|| err(line, raw, v, format!("unknown vertex `{}`", v)));
        match kw {
            "vertex" => {
                for v in rest.split_whitespace() {
                    if !valid_name(v) {
                        return Err(err(line, raw, v, format!("bad name `{}`", v)));
                    }
                    x.skeleton.add_vertex(v).map_err(|e| err(line, raw, v, e.to_string()))?;
                }
            }
            "edge" => {
                let (n, r) = named(rest)?;
                let (s, t) = r.split_once("->").ok_or_else(|| err(line, raw, &r, "edge needs `src -> tgt`".into()))?;
                let (s, t) = (vertex(&x, s.trim())?, vertex(&x, t.trim())?);
                x.skeleton.add_edge(&n, s, t).map_err(|e| err(line, raw, &n, e.to_string()))?;
            }
            "cell" => {
                let (n, r) = named(rest)?;
                if x.cells.iter().any(|c| c.name == n) {
                    return Err(err(line, raw, &n, format!("duplicate name `{}`", n)));
                }
                let w = x.skeleton.alphabet().parse(&r).map_err(|e| err(line, raw, &r, e.to_string()))?;
                let Some(at) = x.skeleton.path_start(&w) else {
                    return Err(err(line, raw, &n, format!("cell `{}` has an empty boundary", n)));
                };
                if x.skeleton.path_end(at, &w) != Some(at) {
                    return Err(err(line, raw, &n, format!("boundary of cell `{}` is not a closed path", n)));
                }
                x.cells.push(Cell { name: n, word: w, at });
            }
            "base" => {
                for v in rest.split_whitespace() {
                    let k = vertex(&x, v)?;
                    if !x.base.contains(&k) {
                        x.base.push(k);
                    }
                }
            }
            "sub" => {
                let (n, r) = named(rest)?;
                let mut s = Sub { name: n.clone(), vertices: BTreeSet::new(), edges: BTreeSet::new(), cells: BTreeSet::new() };
                for part in r.split_whitespace() {
                    let (k, list) = part.split_once('=').ok_or_else(|| err(line, raw, part, format!("expected key=list, got `{}`", part)))?;
                    for item in list.split(',').filter(|s| !s.is_empty()) {
                        let unknown = || err(line, raw, item, format!("unknown {} `{}`", k.trim_end_matches('s'), item));
                        match k {
                            "vertices" => {
                                s.vertices.insert(x.skeleton.vertex(item).ok_or_else(unknown)?);
                            }
                            "edges" => {
                                s.edges.insert(x.skeleton.edge(item).ok_or_else(unknown)?);
                            }
                            "cells" => {
                                s.cells.insert(x.cells.iter().position(|c| c.name == item).ok_or_else(unknown)?);
                            }
                            _ => return Err(err(line, raw, k, format!("unknown key `{}`", k))),
                        }
                    }
                }
                for &e in &s.edges {
                    let ed = &x.skeleton.edges[e];
                    if !s.vertices.contains(&ed.src) || !s.vertices.contains(&ed.tgt) {
                        return Err(err(line, raw, &ed.name, format!("sub `{}` has edge `{}` without its ends", n, ed.name)));
                    }
                }
                for &c in &s.cells {
                    let cell = &x.cells[c];
                    if cell.word.letters().iter().any(|l| !s.edges.contains(&(l.gen as usize))) {
                        return Err(err(line, raw, &cell.name, format!("sub `{}` has cell `{}` without its boundary", n, cell.name)));
                    }
                }
                x.subs.push(s);
            }
            _ => return Err(err(line, raw, kw, format!("unknown declaration `{}`", kw))),
        }
    }
    Ok(x)
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = &self.skeleton;
        let ab = q.alphabet();
        writeln!(f, "vertex {}", q.vertices.join(" "))?;
        for e in &q.edges {
            writeln!(f, "edge {} : {} -> {}", e.name, q.vertices[e.src], q.vertices[e.tgt])?;
        }
        for c in &self.cells {
            writeln!(f, "cell {} : {}", c.name, ab.fmt(&c.word))?;
        }
        if !self.base.is_empty() {
            let b: Vec<&str> = self.base.iter().map(|&v| q.vertices[v].as_str()).collect();
            writeln!(f, "base {}", b.join(" "))?;
        }
        for s in &self.subs {
            let vs: Vec<&str> = s.vertices.iter().map(|&v| q.vertices[v].as_str()).collect();
            let es: Vec<&str> = s.edges.iter().map(|&e| q.edges[e].name.as_str()).collect();
            let cs: Vec<&str> = s.cells.iter().map(|&c| self.cells[c].name.as_str()).collect();
            writeln!(f, "sub {} : vertices={} edges={} cells={}", s.name, vs.join(","), es.join(","), cs.join(","))?;
        }
        Ok(())
    }
}

impl Complex {
    pub fn vertex(&self, name: &str) -> Result<usize, CellError> {
        self.skeleton.vertex(name).ok_or_else(|| CellError::UnknownVertex(name.into()))
    }

    pub fn sub(&self, name: &str) -> Result<&Sub, CellError> {
        self.subs.iter().find(|s| s.name == name).ok_or_else(|| CellError::UnknownSub(name.into()))
    }

    pub fn whole(&self) -> Sub {
        Sub {
            name: "X".into(),
            vertices: (0..self.skeleton.vertices.len()).collect(),
            edges: (0..self.skeleton.edges.len()).collect(),
            cells: (0..self.cells.len()).collect(),
        }
    }

    /// Base points as given, or every vertex if none were declared.
    pub fn base_or_all(&self) -> Vec<usize> {
        if self.base.is_empty() {
            (0..self.skeleton.vertices.len()).collect()
        } else {
            self.base.clone()
        }
    }

    /// Components of a subcomplex's 1-skeleton, as vertex sets.
    pub fn components(&self, s: &Sub) -> Vec<Vec<usize>> {
        let mut uf = crate::groupoid::UnionFind::new(self.skeleton.vertices.len());
        for &e in &s.edges {
            let ed = &self.skeleton.edges[e];
            uf.union(ed.src, ed.tgt);
        }
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for &v in &s.vertices {
            by_root.entry(uf.find(v)).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = by_root.into_values().collect();
        out.sort();
        out
    }

    pub fn intersect(&self, a: &Sub, b: &Sub) -> Sub {
        Sub {
            name: format!("{}∩{}", a.name, b.name),
            vertices: a.vertices.intersection(&b.vertices).cloned().collect(),
            edges: a.edges.intersection(&b.edges).cloned().collect(),
            cells: a.cells.intersection(&b.cells).cloned().collect(),
        }
    }

    pub fn to_dot(&self) -> String {
        self.skeleton.to_dot("X")
    }
}

/// `π₁(U, C ∩ U)` by contracting a breadth-first forest rooted at the
/// least base point (by name) of each component.
#[derive(Clone, Debug)]
pub struct Pi1 {
    pub pres: GroupoidPresentation,
    /// Base points of `X`, in the order of the presentation's objects.
    pub objects: Vec<usize>,
    /// For each vertex of `U`: its root and the tree path from it.
    pub tree: HashMap<usize, (usize, Word)>,
    /// Generator of each non-tree edge of `U`.
    pub edge_gen: HashMap<usize, u32>,
    /// Generator `root -> c` for each non-root base point.
    pub to_gen: HashMap<usize, u32>,
}

impl Pi1 {
    fn obj(&self, v: usize) -> usize {
        self.objects.iter().position(|&o| o == v).expect("base point")
    }

    /// The loop at the root for an edge path, tree edges dropped.
    fn collapse(&self, w: &Word) -> Word {
        Word(
            w.letters()
                .iter()
                .filter_map(|l| self.edge_gen.get(&(l.gen as usize)).map(|&g| Letter { gen: g, inv: l.inv }))
                .collect(),
        )
    }
}

pub fn pi1_complex(x: &Complex, c: &[usize]) -> Result<Pi1, CellError> {
    pi1_sub(x, &x.whole(), c)
}

pub fn pi1_sub(x: &Complex, u: &Sub, c: &[usize]) -> Result<Pi1, CellError> {
    let q = &x.skeleton;
    let mut base: Vec<usize> = c.iter().cloned().filter(|v| u.vertices.contains(v)).collect();
    base.sort_by(|&a, &b| q.vertices[a].cmp(&q.vertices[b]));
    base.dedup();
    for comp in x.components(u) {
        if !comp.iter().any(|v| base.contains(v)) {
            return Err(CellError::MissingComponent(q.vertices[comp[0]].clone()));
        }
    }
    // breadth-first from each root in name order
    let mut tree: HashMap<usize, (usize, Word)> = HashMap::new();
    let mut tree_edges = BTreeSet::new();
    for &r in &base {
        if tree.contains_key(&r) {
            continue;
        }
        tree.insert(r, (r, Word::empty()));
        let mut queue = VecDeque::from([r]);
        while let Some(v) = queue.pop_front() {
            let tp = tree[&v].1.clone();
            for &e in &u.edges {
                let ed = &q.edges[e];
                let step = if ed.src == v && !tree.contains_key(&ed.tgt) {
                    Some((ed.tgt, Letter::pos(e as u32)))
                } else if ed.tgt == v && !tree.contains_key(&ed.src) {
                    Some((ed.src, Letter::neg(e as u32)))
                } else {
                    None
                };
                if let Some((o, l)) = step {
                    let mut w = tp.clone();
                    w.0.push(l);
                    tree.insert(o, (r, w));
                    tree_edges.insert(e);
                    queue.push_back(o);
                }
            }
        }
    }
    let mut quiver = Quiver::new();
    for &b in &base {
        quiver.add_vertex(&q.vertices[b]).unwrap();
    }
    let oi = |v: usize| base.iter().position(|&b| b == v).unwrap();
    let mut edge_gen = HashMap::new();
    let mut names: BTreeSet<String> = BTreeSet::new();
    for &e in &u.edges {
        if !tree_edges.contains(&e) {
            let ed = &q.edges[e];
            let r = tree[&ed.src].0;
            let g = quiver.add_edge(&ed.name, oi(r), oi(r)).unwrap();
            edge_gen.insert(e, g as u32);
            names.insert(ed.name.clone());
        }
    }
    let mut to_gen = HashMap::new();
    for &b in &base {
        let r = tree[&b].0;
        if r != b {
            let mut n = format!("to.{}", q.vertices[b]);
            while names.contains(&n) || q.edge(&n).is_some() {
                n.push('\'');
            }
            names.insert(n.clone());
            let g = quiver.add_edge(&n, oi(r), oi(b)).unwrap();
            to_gen.insert(b, g as u32);
        }
    }
    let mut pres = GroupoidPresentation::new(quiver);
    let mut p = Pi1 { pres: GroupoidPresentation::default(), objects: base.clone(), tree, edge_gen, to_gen };
    for &ci in &u.cells {
        let cell = &x.cells[ci];
        let r = p.tree[&cell.at].0;
        pres.relations.push(Relation { at: oi(r), lhs: free_reduce(&p.collapse(&cell.word)), rhs: Word::empty() });
    }
    p.pres = pres;
    Ok(p)
}

/// `π₁(X, C)` with `translate` able to follow paths in `X`.
pub struct Pi1Paths<'a> {
    pub x: &'a Complex,
    pub pi: Pi1,
}

impl Pi1Paths<'_> {
    pub fn translate(&self, start: usize, w: &Word) -> Option<Word> {
        let end = self.x.skeleton.path_end(start, w)?;
        let to = |c: usize| self.pi.to_gen.get(&c).map_or(Word::empty(), |&g| Word::gen(g));
        Some(free_reduce(&to(start).inverse().concat(&self.pi.collapse(w)).concat(&to(end))))
    }

    /// The edge path a generator stands for, from its source base point.
    pub fn meaning(&self, g: u32) -> (usize, Word) {
        let pi = &self.pi;
        let q = &self.x.skeleton;
        if let Some((&e, _)) = pi.edge_gen.iter().find(|(_, &k)| k == g) {
            let ed = &q.edges[e];
            let (r, tu) = pi.tree[&ed.src].clone();
            let tv = &pi.tree[&ed.tgt].1;
            return (r, free_reduce(&tu.concat(&Word::gen(e as u32)).concat(&tv.inverse())));
        }
        let (&c, _) = pi.to_gen.iter().find(|(_, &k)| k == g).expect("generator");
        let (r, tc) = pi.tree[&c].clone();
        (r, tc)
    }
}

pub fn vertex_group(p: &Pi1, at: usize) -> GroupPresentation {
    p.pres.vertex_group_at(p.obj(at))
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    pub pieces: Vec<String>,
    pub intersections: Vec<String>,
    pub counts_direct: Vec<(String, Option<usize>)>,
    pub counts_cover: Vec<(String, Option<usize>)>,
    pub agree: bool,
}

pub struct CoverResult {
    pub diagram: Diagram,
    pub cocone: Cocone,
    pub report: CoverReport,
}

/// Checks that `C` meets every component of every piece and of every
/// 2- and 3-fold intersection.
pub fn check_cover_hypothesis(x: &Complex, cover: &[Sub], c: &[usize]) -> Result<(), CellError> {
    let whole = x.whole();
    for v in &whole.vertices {
        if !cover.iter().any(|s| s.vertices.contains(v)) {
            return Err(CellError::NotCovering(x.skeleton.vertices[*v].clone()));
        }
    }
    for e in &whole.edges {
        if !cover.iter().any(|s| s.edges.contains(e)) {
            return Err(CellError::NotCovering(x.skeleton.edges[*e].name.clone()));
        }
    }
    for k in &whole.cells {
        if !cover.iter().any(|s| s.cells.contains(k)) {
            return Err(CellError::NotCovering(x.cells[*k].name.clone()));
        }
    }
    let n = cover.len();
    let mut pieces: Vec<Sub> = cover.to_vec();
    for i in 0..n {
        for j in i + 1..n {
            let ij = x.intersect(&cover[i], &cover[j]);
            for k in j + 1..n {
                pieces.push(x.intersect(&ij, &cover[k]));
            }
            pieces.push(ij);
        }
    }
    for s in &pieces {
        for comp in x.components(s) {
            if !comp.iter().any(|v| c.contains(v)) {
                return Err(CellError::Hypothesis { which: s.name.clone(), vertex: x.skeleton.vertices[comp[0]].clone() });
            }
        }
    }
    Ok(())
}

/// The inclusion `π₁(V, C) -> π₁(U, C)` for `V ⊆ U`.
fn inclusion(x: &Complex, small: &Pi1, big: &Pi1) -> GroupoidMorphism {
    let sp = Pi1Paths { x, pi: small.clone() };
    let bp = Pi1Paths { x, pi: big.clone() };
    let obj = small.objects.iter().map(|&v| big.obj(v)).collect();
    let edges = (0..small.pres.quiver.edges.len() as u32)
        .map(|g| {
            let (r, w) = sp.meaning(g);
            bp.translate(r, &w).expect("path in the subcomplex")
        })
        .collect();
    GroupoidMorphism { obj, edges }
}

/// `⊔ π₁(Uλ ∩ Uμ, C) ⇉ ⊔ π₁(Uλ, C)` and its coequaliser, compared with
/// the direct computation by probe counts.
pub fn pi1_via_cover(x: &Complex, cover: &[Sub], c: &[usize], probes: &[FiniteGroupoid], limit: usize) -> Result<CoverResult, CellError> {
    if cover.is_empty() {
        return Err(CellError::NoCover);
    }
    check_cover_hypothesis(x, cover, c)?;
    let pieces: Vec<Pi1> = cover.iter().map(|s| pi1_sub(x, s, c)).collect::<Result<_, _>>()?;
    let mut inter = Vec::new();
    for i in 0..cover.len() {
        for j in i + 1..cover.len() {
            let s = x.intersect(&cover[i], &cover[j]);
            if !s.vertices.is_empty() {
                inter.push((i, j, s.name.clone(), pi1_sub(x, &s, c)?));
            }
        }
    }
    let renamed: Vec<GroupoidPresentation> = pieces.iter().enumerate().map(|(i, p)| p.pres.renamed(&format!("{}.", cover[i].name))).collect();
    let (p1, inj1) = coproduct(&renamed).expect("prefixed names are disjoint");
    let renamed0: Vec<GroupoidPresentation> = inter.iter().map(|(_, _, n, p)| p.pres.renamed(&format!("{}.", n))).collect();
    let (p0, inj0) = coproduct(&renamed0).expect("prefixed names are disjoint");
    let mut a = GroupoidMorphism { obj: vec![0; p0.quiver.vertices.len()], edges: vec![Word::empty(); p0.quiver.edges.len()] };
    let mut b = a.clone();
    for (k, (i, j, _, p)) in inter.iter().enumerate() {
        for (side, piece, m) in [(*i, &pieces[*i], &mut a), (*j, &pieces[*j], &mut b)] {
            let f = inclusion(x, p, piece).then(&inj1[side]);
            let inj = &inj0[k];
            for (v, &ov) in inj.obj.iter().enumerate() {
                m.obj[ov] = f.obj[v];
            }
            for (e, w) in inj.edges.iter().enumerate() {
                m.edges[w.letters()[0].gen as usize] = f.edges[e].clone();
            }
        }
    }
    let cocone = coequaliser(&p0, &p1, &a, &b);
    let diagram = Diagram::parallel(p0, p1, a, b).expect("endpoints respected");
    let direct = pi1_complex(x, c)?;
    let counts_direct = probe_counts(&direct.pres, probes, limit);
    let counts_cover = probe_counts(&cocone.apex, probes, limit);
    let agree = counts_direct == counts_cover && counts_direct.iter().all(|(_, n)| n.is_some());
    let report = CoverReport {
        pieces: cover.iter().map(|s| s.name.clone()).collect(),
        intersections: inter.iter().map(|(_, _, n, _)| n.clone()).collect(),
        counts_direct,
        counts_cover,
        agree,
    };
    Ok(CoverResult { diagram, cocone, report })
}

/// The free crossed module on the 2-cells over `π₁(X¹, c₀)`.
pub struct ComplexXMod {
    pub fcm: FreeCrossedModule,
    pub root: usize,
    /// Each cell's boundary based at the root through the tree.
    pub based: Vec<Word>,
}

pub fn xmod_of_complex(x: &Complex, c: &[usize]) -> Result<ComplexXMod, CellError> {
    if x.components(&x.whole()).len() != 1 {
        return Err(CellError::Disconnected);
    }
    let mut skel = x.whole();
    skel.cells.clear();
    let pi = pi1_sub(x, &skel, c)?;
    let root = pi.objects[0];
    let loops: Vec<&str> = pi.pres.quiver.edges.iter().filter(|e| e.src == e.tgt).map(|e| e.name.as_str()).collect();
    let base = GroupPresentation::free(&loops);
    let paths = Pi1Paths { x, pi };
    let mut based = Vec::new();
    let mut rels = Vec::new();
    for cell in &x.cells {
        let tp = &paths.pi.tree[&cell.at].1;
        let w = free_reduce(&tp.concat(&cell.word).concat(&tp.inverse()));
        let r = paths.translate(root, &w).expect("closed at the root");
        // loop generators come first in the presentation, so indices agree
        rels.push(r);
        based.push(w);
    }
    let names = x.cells.iter().map(|c| c.name.clone()).collect();
    let fcm = FreeCrossedModule::new(base, names, rels, 200, 24)?;
    Ok(ComplexXMod { fcm, root, based })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "answer", rename_all = "snake_case")]
pub enum Fullness {
    /// Every generator of `π₁(X, c)` was written in the image of `π₁(A, c)`.
    Full { certified: bool },
    /// A witness that some arrow is missed.
    NotFull { witness: String },
    /// Nothing decided within the bounds.
    Unknown { bound: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct TripleReport {
    pub onto_components_of_a: bool,
    pub onto_components_of_x: bool,
    pub condition_i: bool,
    /// Fullness of `π₁(A, C) -> π₁(X, C)`, a combinatorial reading of
    /// "every path between base points deforms into A rel end points".
    pub condition_ii: Fullness,
}

pub fn check_connected_triple(x: &Complex, a: &Sub, c: &[usize], bound: usize, probes: &[FiniteGroup]) -> Result<TripleReport, CellError> {
    if let Some(&v) = c.iter().find(|v| !a.vertices.contains(v)) {
        return Err(CellError::BaseOutside(x.skeleton.vertices[v].clone()));
    }
    let meets = |s: &Sub| x.components(s).iter().all(|comp| comp.iter().any(|v| c.contains(v)));
    let onto_a = !c.is_empty() && meets(a);
    let onto_x = !c.is_empty() && meets(&x.whole());
    let mut rep = TripleReport { onto_components_of_a: onto_a, onto_components_of_x: onto_x, condition_i: onto_a && onto_x, condition_ii: Fullness::Unknown { bound } };
    if !rep.condition_i {
        rep.condition_ii = Fullness::Unknown { bound: 0 };
        return Ok(rep);
    }
    // same X component but different A components: hom_A is empty
    let comp_of = |s: &Sub, v: usize| x.components(s).into_iter().position(|k| k.contains(&v));
    for &u in c {
        for &v in c {
            if comp_of(&x.whole(), u) == comp_of(&x.whole(), v) && comp_of(a, u) != comp_of(a, v) {
                rep.condition_ii = Fullness::NotFull {
                    witness: format!("{} and {} are joined in X but not in A", x.skeleton.vertices[u], x.skeleton.vertices[v]),
                };
                return Ok(rep);
            }
        }
    }
    let px = Pi1Paths { x, pi: pi1_complex(x, c)? };
    let pa = Pi1Paths { x, pi: pi1_sub(x, a, c)? };
    let mut certified = true;
    for &root in &px.pi.objects.clone() {
        if px.pi.tree[&root].0 != root {
            continue;
        }
        let at = px.pi.obj(root);
        let ab = px.pi.pres.alphabet();
        // images of the loops of π₁(A, root), as words at the root of X
        let mut gens: Vec<Word> = Vec::new();
        for g in 0..pa.pi.pres.quiver.edges.len() as u32 {
            let (r, w) = pa.meaning(g);
            if r == root && pa.pi.pres.quiver.edges[g as usize].src == pa.pi.pres.quiver.edges[g as usize].tgt {
                gens.push(px.translate(root, &w).unwrap());
            }
        }
        let targets: Vec<u32> = (0..px.pi.pres.quiver.edges.len() as u32)
            .filter(|&g| {
                let e = &px.pi.pres.quiver.edges[g as usize];
                e.src == at && e.tgt == at
            })
            .collect();
        let vg = px.pi.pres.vertex_group_at(at);
        let local = |w: &Word| crate::groupoid::collapse_to_vertex_group(&px.pi.pres, &px.pi.pres.bfs_forest(&[at]), at, w);
        let lgens: Vec<Word> = gens.iter().map(local).collect();
        let opts = EqOptions { probes: probes.to_vec(), ..EqOptions::default() };
        let sys = vg.completed(opts.max_rules, opts.max_len);
        for &t in &targets {
            let target = local(&Word::gen(t));
            match reach(&sys, &lgens, &target, bound) {
                Reach::Found(w) => {
                    // confirm through the word problem
                    let lhs = w;
                    let eq = word_equal(&GroupoidPresentation::from_group(&vg), 0, &lhs, &target, &opts).expect("loops");
                    if !matches!(eq, WordEq::Equal(crate::groupoid::EqualCert::Completed)) {
                        certified = false;
                    }
                }
                Reach::Exhausted if sys.is_completed() => {
                    rep.condition_ii = Fullness::NotFull {
                        witness: format!("{} is outside the image, which has finitely many elements", ab.name(t)),
                    };
                    return Ok(rep);
                }
                _ => match separate(&vg, &lgens, &target, probes) {
                    Some(w) => {
                        rep.condition_ii = Fullness::NotFull { witness: format!("{}: {}", ab.name(t), w) };
                        return Ok(rep);
                    }
                    None => return Ok(rep),
                },
            }
        }
    }
    rep.condition_ii = Fullness::Full { certified };
    Ok(rep)
}

enum Reach {
    Found(Word),
    Exhausted,
    Bound,
}

/// Breadth-first through the subgroup generated by `gens`, by normal forms.
fn reach(sys: &crate::rewrite::RewriteSystem, gens: &[Word], target: &Word, bound: usize) -> Reach {
    let goal = sys.reduce(target);
    let mut seen: HashMap<Word, Word> = HashMap::new();
    seen.insert(Word::empty(), Word::empty());
    let mut queue = VecDeque::from([Word::empty()]);
    let steps: Vec<Word> = gens.iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
    if goal.is_empty() {
        return Reach::Found(Word::empty());
    }
    while let Some(nf) = queue.pop_front() {
        let path = seen[&nf].clone();
        for s in &steps {
            let n2 = sys.reduce(&nf.concat(s));
            if seen.contains_key(&n2) {
                continue;
            }
            let p2 = free_reduce(&path.concat(s));
            if n2 == goal {
                return Reach::Found(p2);
            }
            seen.insert(n2.clone(), p2);
            if seen.len() > bound {
                return Reach::Bound;
            }
            queue.push_back(n2);
        }
    }
    Reach::Exhausted
}

/// A homomorphism to a probe whose image of `gens` misses the image of `target`.
fn separate(vg: &GroupPresentation, gens: &[Word], target: &Word, probes: &[FiniteGroup]) -> Option<String> {
    for t in probes {
        for h in vg.homs(t) {
            let imgs: Vec<usize> = gens.iter().map(|g| vg.eval(g, &h, t)).collect();
            let sub = t.subgroup_closure(&imgs);
            let y = vg.eval(target, &h, t);
            if !sub.contains(&y) {
                let ab = &vg.alphabet;
                let map: Vec<String> = h.iter().enumerate().map(|(i, &k)| format!("{} -> {}", ab.name(i as u32), t.label(k))).collect();
                return Some(format!("under {} into {}, the image of A misses {}", map.join(", "), t.name, t.label(y)));
            }
        }
    }
    None
}
