//! Pushouts, coequalisers and finite colimits of groupoid presentations.
//!
//! Everything happens at the level of generators and relations. The
//! universal property is then checked against finite probe groupoids by
//! counting: cocones into a probe versus morphisms out of the apex.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::groupoid::{
    eval_path, morphisms_to, word_equal, EqOptions, FiniteGroupoid, GroupoidError, GroupoidMorphism,
    GroupoidPresentation, ProbeMap, Quiver, Relation, TooLarge, UnionFind, WordEq,
};
use crate::word::{Letter, Word};

#[derive(Clone, Debug)]
pub struct DiagramArrow {
    pub src: usize,
    pub tgt: usize,
    pub map: GroupoidMorphism,
}

#[derive(Clone, Debug, Default)]
pub struct Diagram {
    pub labels: Vec<String>,
    pub objects: Vec<GroupoidPresentation>,
    pub arrows: Vec<DiagramArrow>,
}

impl Diagram {
    pub fn new() -> Diagram {
        Diagram::default()
    }

    pub fn add_object(&mut self, label: &str, p: GroupoidPresentation) -> usize {
        self.labels.push(label.into());
        self.objects.push(p);
        self.objects.len() - 1
    }

    pub fn add_arrow(&mut self, src: usize, tgt: usize, map: GroupoidMorphism) -> Result<usize, GroupoidError> {
        map.check_endpoints(&self.objects[src], &self.objects[tgt])?;
        self.arrows.push(DiagramArrow { src, tgt, map });
        Ok(self.arrows.len() - 1)
    }

    pub fn span(p0: GroupoidPresentation, p1: GroupoidPresentation, p2: GroupoidPresentation, f: GroupoidMorphism, g: GroupoidMorphism) -> Result<Diagram, GroupoidError> {
        let mut d = Diagram::new();
        d.add_object("P0", p0);
        d.add_object("P1", p1);
        d.add_object("P2", p2);
        d.add_arrow(0, 1, f)?;
        d.add_arrow(0, 2, g)?;
        Ok(d)
    }

    pub fn parallel(p0: GroupoidPresentation, p1: GroupoidPresentation, a: GroupoidMorphism, b: GroupoidMorphism) -> Result<Diagram, GroupoidError> {
        let mut d = Diagram::new();
        d.add_object("P0", p0);
        d.add_object("P1", p1);
        d.add_arrow(0, 1, a)?;
        d.add_arrow(0, 1, b)?;
        Ok(d)
    }
}

#[derive(Clone, Debug)]
pub struct Cocone {
    pub apex: GroupoidPresentation,
    pub legs: Vec<GroupoidMorphism>,
}

fn shift(w: &Word, by: u32) -> Word {
    Word(w.letters().iter().map(|l| Letter { gen: l.gen + by, inv: l.inv }).collect())
}

/// Builds the apex quiver on classes of `uf` over the concatenated vertex
/// lists, with the edges of the listed presentations.
struct Builder<'a> {
    parts: Vec<(&'a str, &'a GroupoidPresentation)>,
    vert_off: Vec<usize>,
    edge_off: Vec<u32>,
    uf: UnionFind,
}

impl<'a> Builder<'a> {
    fn new(parts: Vec<(&'a str, &'a GroupoidPresentation)>) -> Builder<'a> {
        let mut vert_off = Vec::new();
        let mut edge_off = Vec::new();
        let (mut nv, mut ne) = (0, 0u32);
        for (_, p) in &parts {
            vert_off.push(nv);
            edge_off.push(ne);
            nv += p.quiver.vertices.len();
            ne += p.quiver.edges.len() as u32;
        }
        Builder { parts, vert_off, edge_off, uf: UnionFind::new(nv) }
    }

    fn join(&mut self, i: usize, v: usize, j: usize, w: usize) {
        let (a, b) = (self.vert_off[i] + v, self.vert_off[j] + w);
        self.uf.union(a, b);
    }

    /// Returns the apex and, per part, its vertex -> class map.
    fn build(mut self) -> (GroupoidPresentation, Vec<Vec<usize>>) {
        let classes = self.uf.classes();
        let mut class_of = vec![0; self.uf_len()];
        for (k, c) in classes.iter().enumerate() {
            for &x in c {
                class_of[x] = k;
            }
        }
        let mut flat_names = Vec::new();
        for (label, p) in &self.parts {
            for v in &p.quiver.vertices {
                flat_names.push((label.to_string(), v.clone()));
            }
        }
        let plain: Vec<String> = classes.iter().map(|c| flat_names[c[0]].1.clone()).collect();
        let clash = plain.iter().collect::<BTreeSet<_>>().len() != plain.len();
        let mut q = Quiver::new();
        for c in &classes {
            let (l, n) = &flat_names[c[0]];
            let name = if clash { format!("{}.{}", l, n) } else { n.clone() };
            q.add_vertex(&name).unwrap();
        }
        let all_edges: Vec<&str> = self
            .parts
            .iter()
            .flat_map(|(_, p)| p.quiver.edges.iter().map(|e| e.name.as_str()))
            .collect();
        let eclash = all_edges.iter().collect::<BTreeSet<_>>().len() != all_edges.len();
        for (i, (label, p)) in self.parts.iter().enumerate() {
            for e in &p.quiver.edges {
                let name = if eclash { format!("{}.{}", label, e.name) } else { e.name.clone() };
                q.add_edge(&name, class_of[self.vert_off[i] + e.src], class_of[self.vert_off[i] + e.tgt])
                    .unwrap();
            }
        }
        let mut apex = GroupoidPresentation::new(q);
        let mut vmaps = Vec::new();
        for (i, (_, p)) in self.parts.iter().enumerate() {
            vmaps.push((0..p.quiver.vertices.len()).map(|v| class_of[self.vert_off[i] + v]).collect::<Vec<_>>());
            for r in &p.relations {
                apex.relations.push(Relation {
                    at: class_of[self.vert_off[i] + r.at],
                    lhs: shift(&r.lhs, self.edge_off[i]),
                    rhs: shift(&r.rhs, self.edge_off[i]),
                });
            }
        }
        self.parts.clear();
        (apex, vmaps)
    }

    fn uf_len(&self) -> usize {
        self.vert_off.last().map(|&o| o + self.parts.last().unwrap().1.quiver.vertices.len()).unwrap_or(0)
    }
}

fn injection(vmap: Vec<usize>, p: &GroupoidPresentation, off: u32) -> GroupoidMorphism {
    GroupoidMorphism {
        obj: vmap,
        edges: (0..p.quiver.edges.len() as u32).map(|e| Word::gen(e + off)).collect(),
    }
}

/// Objects glued along `f(v) ~ g(v)`; edges of `p1` and `p2`; relations of
/// both plus `f(e) = g(e)` for every generator `e` of `p0`.
pub fn pushout(p0: &GroupoidPresentation, p1: &GroupoidPresentation, p2: &GroupoidPresentation, f: &GroupoidMorphism, g: &GroupoidMorphism) -> Cocone {
    let mut b = Builder::new(vec![("P1", p1), ("P2", p2)]);
    for v in 0..p0.quiver.vertices.len() {
        b.join(0, f.obj[v], 1, g.obj[v]);
    }
    let off2 = b.edge_off[1];
    let (mut apex, vmaps) = b.build();
    let leg1 = injection(vmaps[0].clone(), p1, 0);
    let leg2 = injection(vmaps[1].clone(), p2, off2);
    for (i, e) in p0.quiver.edges.iter().enumerate() {
        apex.relations.push(Relation {
            at: leg1.obj[f.obj[e.src]],
            lhs: leg1.apply(&f.edges[i]),
            rhs: leg2.apply(&g.edges[i]),
        });
    }
    let leg0 = f.then(&leg1);
    Cocone { apex, legs: vec![leg0, leg1, leg2] }
}

/// Target with `a(v) ~ b(v)` and relations `a(e) = b(e)`.
pub fn coequaliser(p0: &GroupoidPresentation, p1: &GroupoidPresentation, a: &GroupoidMorphism, b: &GroupoidMorphism) -> Cocone {
    let mut bl = Builder::new(vec![("P1", p1)]);
    for v in 0..p0.quiver.vertices.len() {
        bl.join(0, a.obj[v], 0, b.obj[v]);
    }
    let (mut apex, vmaps) = bl.build();
    let c = injection(vmaps[0].clone(), p1, 0);
    for (i, e) in p0.quiver.edges.iter().enumerate() {
        apex.relations.push(Relation {
            at: c.obj[a.obj[e.src]],
            lhs: c.apply(&a.edges[i]),
            rhs: c.apply(&b.edges[i]),
        });
    }
    let leg0 = a.then(&c);
    Cocone { apex, legs: vec![leg0, c] }
}

/// General finite colimit: object classes first, then every generator of
/// every index object, with `e = D(a)(e)` for each arrow `a`.
pub fn colimit(d: &Diagram) -> Cocone {
    let parts: Vec<(&str, &GroupoidPresentation)> = d.labels.iter().map(|s| s.as_str()).zip(d.objects.iter()).collect();
    let mut b = Builder::new(parts);
    for a in &d.arrows {
        for v in 0..d.objects[a.src].quiver.vertices.len() {
            b.join(a.src, v, a.tgt, a.map.obj[v]);
        }
    }
    let offs = b.edge_off.clone();
    let (mut apex, vmaps) = b.build();
    let legs: Vec<GroupoidMorphism> = d
        .objects
        .iter()
        .enumerate()
        .map(|(i, p)| injection(vmaps[i].clone(), p, offs[i]))
        .collect();
    for a in &d.arrows {
        let src = &d.objects[a.src];
        for (k, e) in src.quiver.edges.iter().enumerate() {
            apex.relations.push(Relation {
                at: legs[a.src].obj[e.src],
                lhs: legs[a.src].edges[k].clone(),
                rhs: legs[a.tgt].apply(&a.map.edges[k]),
            });
        }
    }
    Cocone { apex, legs }
}

/// Leg-commutation failures, as (arrow, generator, answer) triples.
pub fn check_commutes(c: &Cocone, d: &Diagram, opts: &EqOptions) -> Result<Vec<(usize, usize, WordEq)>, GroupoidError> {
    let mut bad = Vec::new();
    for (ai, a) in d.arrows.iter().enumerate() {
        for (k, e) in d.objects[a.src].quiver.edges.iter().enumerate() {
            let lhs = c.legs[a.src].edges[k].clone();
            let rhs = c.legs[a.tgt].apply(&a.map.edges[k]);
            let at = c.legs[a.src].obj[e.src];
            let r = word_equal(&c.apex, at, &lhs, &rhs, opts)?;
            if !matches!(r, WordEq::Equal(_)) {
                bad.push((ai, k, r));
            }
        }
    }
    Ok(bad)
}

// ---------------------------------------------------------------------------
// universal property against probes

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ProbeOutcome {
    Bijection { cocones: usize, morphisms: usize },
    /// Some cocone is not the restriction of any apex morphism.
    Missed { cocones: usize, morphisms: usize, witness: Vec<Vec<usize>> },
    /// Two apex morphisms restrict to the same cocone.
    Collision { cocones: usize, morphisms: usize },
    /// An apex morphism restricts to a family that is not a cocone.
    NotCocone { objects: Vec<usize>, arrows: Vec<usize> },
    TooLarge { bound: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub probe: String,
    pub outcome: ProbeOutcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct CouniversalReport {
    pub probes: Vec<ProbeReport>,
}

impl CouniversalReport {
    pub fn passed(&self) -> bool {
        self.probes.iter().all(|p| matches!(p.outcome, ProbeOutcome::Bijection { .. }))
    }
}

/// `t` precomposed with a presentation morphism `m`.
pub fn restrict(t: &FiniteGroupoid, m: &GroupoidMorphism, src: &GroupoidPresentation, h: &ProbeMap) -> Option<ProbeMap> {
    let obj: Vec<usize> = m.obj.iter().map(|&x| h.obj[x]).collect();
    let mut arrows = Vec::new();
    for (k, e) in src.quiver.edges.iter().enumerate() {
        arrows.push(eval_path(t, obj[e.src], &m.edges[k], &h.arrows)?);
    }
    Some(ProbeMap { obj, arrows })
}

/// All cocones from the diagram to `t`: compatible families of morphisms.
pub fn cocones_to(d: &Diagram, t: &FiniteGroupoid, limit: usize) -> Result<Vec<Vec<ProbeMap>>, TooLarge> {
    let homs: Vec<Vec<ProbeMap>> = d
        .objects
        .iter()
        .map(|p| morphisms_to(p, t, limit))
        .collect::<Result<_, _>>()?;
    let n = d.objects.len();
    let mut out = Vec::new();
    let mut pick: Vec<usize> = vec![0; n];
    let mut work = 0usize;
    fn go(
        i: usize,
        d: &Diagram,
        t: &FiniteGroupoid,
        homs: &[Vec<ProbeMap>],
        pick: &mut Vec<usize>,
        out: &mut Vec<Vec<ProbeMap>>,
        work: &mut usize,
        limit: usize,
    ) -> Result<(), TooLarge> {
        if i == d.objects.len() {
            out.push(pick.iter().enumerate().map(|(k, &j)| homs[k][j].clone()).collect());
            return Ok(());
        }
        for j in 0..homs[i].len() {
            *work += 1;
            if *work > limit {
                return Err(TooLarge(limit));
            }
            pick[i] = j;
            let ok = d.arrows.iter().all(|a| {
                if a.src.max(a.tgt) != i {
                    return true;
                }
                let hs = &homs[a.src][pick[a.src]];
                let ht = &homs[a.tgt][pick[a.tgt]];
                restrict(t, &a.map, &d.objects[a.src], ht).as_ref() == Some(hs)
            });
            if ok {
                go(i + 1, d, t, homs, pick, out, work, limit)?;
            }
        }
        Ok(())
    }
    go(0, d, t, &homs, &mut pick, &mut out, &mut work, limit)?;
    Ok(out)
}

pub fn verify_couniversal(c: &Cocone, d: &Diagram, probes: &[FiniteGroupoid], limit: usize) -> CouniversalReport {
    let mut reports = Vec::new();
    for t in probes {
        let outcome = match (cocones_to(d, t, limit), morphisms_to(&c.apex, t, limit)) {
            (Ok(cs), Ok(ms)) => compare(c, d, t, &cs, &ms),
            _ => ProbeOutcome::TooLarge { bound: limit },
        };
        reports.push(ProbeReport { probe: t.name.clone(), outcome });
    }
    CouniversalReport { probes: reports }
}

fn compare(c: &Cocone, d: &Diagram, t: &FiniteGroupoid, cs: &[Vec<ProbeMap>], ms: &[ProbeMap]) -> ProbeOutcome {
    let index: HashMap<&Vec<ProbeMap>, usize> = cs.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut hit = vec![false; cs.len()];
    for h in ms {
        let fam: Option<Vec<ProbeMap>> = d
            .objects
            .iter()
            .enumerate()
            .map(|(i, p)| restrict(t, &c.legs[i], p, h))
            .collect();
        match fam.as_ref().and_then(|f| index.get(f)) {
            Some(&k) => {
                if hit[k] {
                    return ProbeOutcome::Collision { cocones: cs.len(), morphisms: ms.len() };
                }
                hit[k] = true;
            }
            None => return ProbeOutcome::NotCocone { objects: h.obj.clone(), arrows: h.arrows.clone() },
        }
    }
    if let Some(k) = hit.iter().position(|&x| !x) {
        return ProbeOutcome::Missed {
            cocones: cs.len(),
            morphisms: ms.len(),
            witness: cs[k].iter().map(|m| m.arrows.clone()).collect(),
        };
    }
    ProbeOutcome::Bijection { cocones: cs.len(), morphisms: ms.len() }
}
