//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use hda::cell;
use hda::colimit::{coequaliser, pushout, verify_couniversal, Diagram};
use hda::double::boxg::BoxG;
use hda::double::cube;
use hda::double::lambda::{LSq, Lambda};
use hda::double::laws;
use hda::double::DoubleGroupoid;
use hda::equivalence::{roundtrip_dg, roundtrip_xmod};
use hda::finite::FiniteGroup;
use hda::fox::{self, FoxData, KernelBounds};
use hda::groupoid::{self, default_probes, morphism_count, FiniteGroupoid, GroupoidMorphism, GroupoidPresentation};
use hda::ring::GroupRingElement;
use hda::word::Word;
use hda::xmod::catalog::{by_name, catalog};
use hda::xmod::free::{faithfulness, FreeCrossedModule, PreWord};
use hda::xmod::universal::{extend_universal, induced_xmod, UniversalError};
use hda::xmod::{find_isomorphism, CrossedModule};

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/");

fn data(name: &str) -> String {
    std::fs::read_to_string(format!("{}{}", DATA, name)).unwrap()
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn point() -> GroupoidPresentation {
    GroupoidPresentation::discrete(&["*"])
}

fn circle_coequaliser() -> (Diagram, hda::colimit::Cocone) {
    let i = GroupoidPresentation::interval();
    let a = GroupoidMorphism { obj: vec![0], edges: vec![] };
    let b = GroupoidMorphism { obj: vec![1], edges: vec![] };
    let c = coequaliser(&point(), &i, &a, &b);
    (Diagram::parallel(point(), i, a, b).unwrap(), c)
}

fn c1() -> Outcome {
    let (_, c) = circle_coequaliser();
    if c.apex.quiver.vertices.len() != 1 {
        return fail(format!("{} objects", c.apex.quiver.vertices.len()));
    }
    let vg = c.apex.vertex_group_at(0);
    let mut seen = Vec::new();
    for (name, order) in [("Z2", 2), ("Z3", 3), ("Z5", 5), ("S3", 6)] {
        let t = groupoid::probe(name).unwrap();
        let n = morphism_count(&c.apex, &t, 10_000).unwrap();
        if n != order {
            return fail(format!("{} morphisms to {}, expected {}", n, name, order));
        }
        seen.push(format!("{}:{}", name, n));
    }
    pass(format!("vertex group {}, counts {}", vg, seen.join(" ")))
}

/// `p -> q -> r -> p` and `x -> y -> z -> x` on the file text.
fn rotate_circle3(text: &str) -> String {
    let map = [("p", "q"), ("q", "r"), ("r", "p"), ("x", "y"), ("y", "z"), ("z", "x"), ("U1", "U2"), ("U2", "U3"), ("U3", "U1")];
    let mut out = String::new();
    for line in text.lines() {
        if line.trim_start().starts_with('#') {
            continue;
        }
        let toks: Vec<String> = line
            .split_inclusive(|c: char| c == ' ' || c == ',' || c == '=')
            .map(|t| {
                let (word, tail) = t.split_at(t.trim_end_matches([' ', ',', '=']).len());
                let w = map.iter().find(|(a, _)| *a == word).map_or(word, |(_, b)| b);
                format!("{}{}", w, tail)
            })
            .collect();
        out.push_str(&toks.concat());
        out.push('\n');
    }
    out
}

fn cover_shape(text: &str) -> Result<(Vec<usize>, Vec<(String, Option<usize>)>, bool), String> {
    let x = cell::parse_complex(text).map_err(|e| e.to_string())?;
    let r = cell::pi1_via_cover(&x, &x.subs, &x.base_or_all(), &default_probes(), 10_000).map_err(|e| e.to_string())?;
    let apex = &r.cocone.apex;
    let shape = vec![apex.quiver.vertices.len(), apex.quiver.edges.len(), apex.relations.len()];
    Ok((shape, r.report.counts_cover.clone(), r.report.agree))
}

fn c2() -> Outcome {
    let mut text = data("circle3.cx2");
    let mut first = None;
    for k in 0..3 {
        let (shape, counts, agree) = match cover_shape(&text) {
            Ok(s) => s,
            Err(e) => return fail(format!("rotation {}: {}", k, e)),
        };
        if !agree {
            return fail(format!("rotation {}: cover and direct counts differ", k));
        }
        match &first {
            None => first = Some((shape, counts)),
            Some(f) if *f != (shape.clone(), counts.clone()) => {
                return fail(format!("rotation {} changed the result: {:?} vs {:?}", k, f, (shape, counts)))
            }
            _ => {}
        }
        text = rotate_circle3(&text);
    }
    let (shape, counts) = first.unwrap();
    let cs: Vec<String> = counts.iter().map(|(n, k)| format!("{}:{}", n, k.unwrap())).collect();
    pass(format!("{} objects, {} generators, {} relations under all 3 rotations; counts {}", shape[0], shape[1], shape[2], cs.join(" ")))
}

/// `-a^b` style terms, exponents additive.
fn parse_exponent_form(p: &FoxData, s: &str) -> Vec<(i64, u32, Word)> {
    let ab = p.alphabet();
    let mut out = Vec::new();
    let mut rest = s.replace(' ', "");
    while !rest.is_empty() {
        let sign = if rest.starts_with('-') { -1 } else { 1 };
        rest = rest.trim_start_matches(['+', '-']).to_string();
        let gen = ab.index(&rest[..1]).unwrap();
        rest = rest[1..].to_string();
        let mut exp = Word::empty();
        if let Some(r) = rest.strip_prefix('^') {
            let (body, tail) = if let Some(r) = r.strip_prefix('{') {
                let end = r.find('}').unwrap();
                (r[..end].to_string(), r[end + 1..].to_string())
            } else {
                (r[..1].to_string(), r[1..].to_string())
            };
            let mut b = body.as_str();
            while !b.is_empty() {
                let inv = b.starts_with('-');
                b = b.trim_start_matches(['+', '-']);
                let g = ab.index(&b[..1]).unwrap();
                exp.0.push(if inv { hda::word::Letter::neg(g) } else { hda::word::Letter::pos(g) });
                b = &b[1..];
            }
            rest = tail;
        }
        out.push((sign, gen, exp));
    }
    out
}

fn c3() -> Outcome {
    let p = FoxData::parse(&["a", "b"], &["a b a^-1 b"]).unwrap();
    let r = p.pres.relators[0].clone();
    let ts = fox::exponent_terms(&p, &r);
    let ours = fox::fmt_exponent_terms(p.alphabet(), &ts);
    // consistency of the convention with the matrix: per generator the terms sum to s^-1 ι(∂r/∂s)
    let m = fox::boundary_matrix(&p);
    for s in 0..2u32 {
        let mut sum = p.zero();
        for t in ts.iter().filter(|t| t.gen == s) {
            sum.add_term(&t.raw, t.sign);
        }
        let expect = m.entries[0][s as usize].conjugate().left_mul_word(&Word::letter(hda::word::Letter::neg(s)));
        if sum != expect {
            return fail(format!("exponent form disagrees with the matrix in column {}", s));
        }
    }
    let printed = "a^{b-a+b} +b^{-a+b}-a^b +b";
    let theirs = parse_exponent_form(&p, printed);
    let mut bad = Vec::new();
    for (i, ((sg, g, e), t)) in theirs.iter().zip(&ts).enumerate() {
        if *sg != t.sign || *g != t.gen || p.sys.reduce(e) != t.nf {
            bad.push(format!(
                "term {}: printed {}{}^{{{}}} = {}, computed {}",
                i + 1,
                if *sg < 0 { "-" } else { "+" },
                p.alphabet().name(*g),
                fox::additive(p.alphabet(), e),
                p.alphabet().fmt(&p.sys.reduce(e)),
                p.alphabet().fmt(&t.nf)
            ));
        }
    }
    if theirs.len() != ts.len() {
        bad.push(format!("{} printed terms, {} computed", theirs.len(), ts.len()));
    }
    // Σ (s - 1)·label vanishes for any form read off the matrix
    let defect = |terms: &[(i64, u32, Word)]| {
        let one = GroupRingElement::one(&p.sys).unwrap();
        let mut acc = p.zero();
        for (sg, g, e) in terms {
            let sm1 = GroupRingElement::monomial(&p.sys, &Word::gen(*g), 1).unwrap().sub(&one).unwrap();
            acc = acc.add(&sm1.mul(&GroupRingElement::monomial(&p.sys, e, *sg).unwrap()).unwrap()).unwrap();
        }
        acc
    };
    let mine: Vec<(i64, u32, Word)> = ts.iter().map(|t| (t.sign, t.gen, t.raw.clone())).collect();
    if !defect(&mine).is_zero() {
        return fail(format!("computed form has defect {}", defect(&mine)));
    }
    let defect = defect(&theirs);
    if bad.is_empty() {
        pass(format!("computed {}", ours))
    } else {
        fail(format!("computed {}; {}; printed form has Fox defect {}", ours, bad.join("; "), defect))
    }
}

/// Also false when the search took 30 s or more.
fn kernel(gens: &[&str], rels: &[&str], b: KernelBounds) -> (Option<Vec<GroupRingElement>>, usize, bool, FoxData) {
    let t = Instant::now();
    let p = FoxData::parse(gens, rels).unwrap();
    let m = fox::boundary_matrix(&p);
    let k = fox::pi2_kernel_search(&p, &m, b);
    let in_time = t.elapsed() < Duration::from_secs(30);
    (k.generator().cloned(), k.vectors.len(), k.exhaustive && in_time, p)
}

fn c4() -> Outcome {
    let b = KernelBounds::new(4, 3);
    let el = |p: &FoxData, t: &[(&str, i64)]| {
        let t: Vec<(Word, i64)> = t.iter().map(|(w, c)| (p.alphabet().parse(w).unwrap(), *c)).collect();
        GroupRingElement::from_terms(&p.sys, &t).unwrap()
    };
    let mut notes = Vec::new();
    let (g, _, ex, p) = kernel(&["a"], &["a", "a"], b);
    match g {
        Some(v) if ex && v == vec![el(&p, &[("1", 1)]), el(&p, &[("1", -1)])] => notes.push(format!("sphere {}", fox::KernelSearch::fmt_vector(&v))),
        other => return fail(format!("sphere: {:?}", other.map(|v| fox::KernelSearch::fmt_vector(&v)))),
    }
    let (g, _, ex, p) = kernel(&["a"], &["a^2"], b);
    match g {
        Some(v) if ex && v == vec![el(&p, &[("1", 1), ("a", -1)])] => notes.push(format!("RP2 {}", v[0])),
        other => return fail(format!("RP2: {:?}", other.map(|v| fox::KernelSearch::fmt_vector(&v)))),
    }
    let (_, n, ex, _) = kernel(&["a", "b"], &["a b a^-1 b^-1"], b);
    if n != 0 || !ex {
        return fail(format!("torus: {} vectors", n));
    }
    notes.push("torus none".into());
    pass(notes.join(", "))
}

fn c5() -> Outcome {
    let cat = catalog(usize::MAX);
    let mut mutants = 0;
    for x in &cat {
        let r = x.validate();
        if !r.is_valid() {
            return fail(format!("{} invalid: {:?}", x.name, r.violations.first()));
        }
        for p in x.p.elements() {
            for m in x.m.elements() {
                for v in x.m.elements().filter(|&v| v != x.action[p][m]) {
                    let mut y = x.clone();
                    y.action[p][m] = v;
                    mutants += 1;
                    if y.validate().violations.is_empty() {
                        return fail(format!("{}: action[{}][{}] = {} passes", x.name, p, m, v));
                    }
                }
            }
        }
    }
    pass(format!("{} instances valid, {} single-entry mutants all caught", cat.len(), mutants))
}

fn c6() -> Outcome {
    let mut notes = Vec::new();
    for (gens, rels) in [(vec!["a"], vec![("r", "a^2")]), (vec!["a", "b"], vec![("s", "a b a^-1 b")])] {
        let f = FreeCrossedModule::on_free(&gens, &rels).unwrap();
        let r = faithfulness(&f, 6, 8);
        if !r.agrees() {
            return fail(format!("{}: {:?} / {:?}", rels[0].1, r.rep_splits.first(), r.oracle_splits.first()));
        }
        notes.push(format!("{}: {} words, {} classes", rels[0].1, r.words, r.classes));
    }
    pass(notes.join("; "))
}

fn c7() -> Outcome {
    let mut n = 0;
    let mut checks = 0;
    for x in catalog(usize::MAX).into_iter().filter(|x| x.square_count() <= 100_000) {
        let l = Lambda::from_xmod(&x).unwrap();
        let r = laws::lambda_suite(&l);
        if !r.passed() {
            return fail(format!("{}: {:?}", r.summary(), r.violations.first()));
        }
        n += 1;
        checks += r.total();
    }
    pass(format!("{} instances, {} checks, 0 violations", n, checks))
}

fn c8() -> Outcome {
    let l = Lambda::from_xmod(&CrossedModule::identity(&FiniteGroup::cyclic(2))).unwrap();
    let r = laws::rotation_laws(&l);
    if r.passed() {
        pass(r.summary())
    } else {
        fail(format!("{}: {:?}", r.summary(), r.violations.first()))
    }
}

fn c9() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let cat: Vec<Lambda> = catalog(usize::MAX).iter().filter(|x| x.square_count() <= 100_000).map(|x| Lambda::from_xmod(x).unwrap()).collect();
    let mut pairs = 0;
    let mut caught = 0;
    while pairs < 1000 {
        let l = &cat[pairs % cat.len()];
        let dir = (pairs % 3) as u8 + 1;
        let x = cube::random_cube(l, &mut rng);
        let y = cube::random_partner(l, &mut rng, dir, &x);
        match cube::compose_cubes(l, dir, &x, &y).and_then(|z| cube::cube_commutative(l, &z)) {
            Ok(true) => {}
            other => return fail(format!("{} direction {}: {:?}", l.name(), dir, other)),
        }
        // a changed top is never commutative
        let nm = l.x.groups[0].order();
        if nm > 1 {
            let mut bad = x.clone();
            let n = (bad.top.n + rng.gen_range(1..nm)) % nm;
            bad.top = LSq { n, e: bad.top.e };
            if l.is_square(&bad.top) {
                if cube::cube_commutative(l, &bad) != Ok(false) {
                    return fail(format!("{}: changed top accepted", l.name()));
                }
                caught += 1;
            }
        }
        pairs += 1;
    }
    let w = Lambda::from_xmod(&CrossedModule::trivial_boundary(&FiniteGroup::cyclic(2), &FiniteGroup::trivial())).unwrap();
    let mut c = cube::degenerate_cube(&w, 3, &w.eps1(0));
    c.top = LSq { n: 1, e: [0; 4] };
    if cube::cube_commutative(&w, &c) != Ok(false) {
        return fail("constructed witness not detected");
    }
    pass(format!("{} composites commutative, {} altered tops and the constructed witness rejected", pairs, caught))
}

fn c10() -> Outcome {
    let small: Vec<CrossedModule> = catalog(8);
    for x in &small {
        let r = roundtrip_xmod(x);
        if !r.ok() {
            return fail(r.to_string());
        }
    }
    let mut dgs = 0;
    for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(4), FiniteGroup::symmetric3()] {
        let r = roundtrip_dg(&BoxG::new(&FiniteGroupoid::from_group(&g)));
        if !r.ok() {
            return fail(r.to_string());
        }
        dgs += 1;
    }
    for x in &small {
        let r = roundtrip_dg(&Lambda::from_xmod(x).unwrap());
        if !r.ok() {
            return fail(r.to_string());
        }
        dgs += 1;
    }
    pass(format!("{} crossed modules, {} double groupoids", small.len(), dgs))
}

/// `x y -> (^{dx} y) x` at a random position.
fn peiffer_move<R: Rng>(f: &FreeCrossedModule, w: &PreWord, rng: &mut R) -> PreWord {
    if w.0.len() < 2 {
        return w.concat(&PreWord::gen(0)).concat(&PreWord::gen(0).inverse());
    }
    let i = rng.gen_range(0..w.0.len() - 1);
    let (x, y) = (&w.0[i], &w.0[i + 1]);
    let moved = f.act_letter(&f.letter_boundary(x), y);
    let mut out = w.0.clone();
    out[i] = moved;
    out[i + 1] = x.clone();
    PreWord(out)
}

fn c11() -> Outcome {
    let probes = default_probes();
    let mut notes = Vec::new();
    // circle as the pushout of the interval along its end points
    let d2 = GroupoidPresentation::discrete(&["0", "1"]);
    let f = GroupoidMorphism { obj: vec![0, 1], edges: vec![] };
    let g = GroupoidMorphism { obj: vec![0, 0], edges: vec![] };
    let c = pushout(&d2, &GroupoidPresentation::interval(), &point(), &f, &g);
    let d = Diagram::span(d2, GroupoidPresentation::interval(), point(), f, g).unwrap();
    let r = verify_couniversal(&c, &d, &probes, 10_000);
    if !r.passed() {
        return fail(format!("circle pushout: {:?}", r.probes));
    }
    let x = cell::parse_complex(&data("circle3.cx2")).unwrap();
    let res = cell::pi1_via_cover(&x, &x.subs, &x.base_or_all(), &probes, 10_000).unwrap();
    let r = verify_couniversal(&res.cocone, &res.diagram, &probes, 10_000);
    if !r.passed() {
        return fail(format!("three-arc coequaliser: {:?}", r.probes));
    }
    notes.push(format!("couniversal on {} probes", probes.len()));

    // extension out of (F(a), a^2) into A3 < S3
    let fcm = FreeCrossedModule::on_free(&["a"], &[("r", "a^2")]).unwrap();
    let a3 = by_name("A3<S3").unwrap();
    let t = a3.p.elements().find(|&e| a3.p.elem_order(e) == 3).unwrap();
    let t2 = a3.p.mul(t, t);
    let m = a3.m.elements().find(|&m| a3.mu[m] == t2).unwrap();
    let h = match extend_universal(&fcm, &[t], &a3, &[m]) {
        Ok(h) => h,
        Err(e) => return fail(format!("extension refused: {}", e)),
    };
    if h.eval(&a3, &PreWord::gen(0)) != m {
        return fail("extension does not send the generator to phi");
    }
    if extend_universal(&fcm, &[t], &a3, &[0]).unwrap_err() != UniversalError::Incompatible("r".into()) {
        return fail("incompatible phi not reported");
    }
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..100 {
        let w = fcm.random_preword(&mut rng, 5, 3);
        let w2 = peiffer_move(&fcm, &w, &mut rng);
        if fcm.rep(&w) != fcm.rep(&w2) || h.eval(&a3, &w) != h.eval(&a3, &w2) {
            return fail("extension not determined by generator images");
        }
        if a3.mu[h.eval(&a3, &w)] != h.eval_p(&a3, &fcm.preword_boundary(&w)) {
            return fail("extension does not commute with the boundaries");
        }
    }
    notes.push("extension exists, is unique on 100 elements".into());

    // induced along identities
    let mut n = 0;
    let xprobes = catalog(6);
    for x in catalog(4) {
        let id: Vec<usize> = x.p.elements().collect();
        match induced_xmod(&id, &x.p, &x, 2000, &xprobes) {
            Ok(ind) if find_isomorphism(&ind.xmod, &x).is_some() && ind.report.passed() => n += 1,
            Ok(ind) => return fail(format!("induced {} along identity: |M| = {}, report {:?}", x.name, ind.xmod.m.order(), ind.report.passed())),
            Err(e) => return fail(format!("induced {}: {}", x.name, e)),
        }
    }
    notes.push(format!("induced along identity reproduces {} inputs", n));
    pass(notes.join("; "))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 11] = [
        ("circle via interval", 1, c1),
        ("three-arc circle cover", 5, c2),
        ("Klein bottle Fox boundary", 1, c3),
        ("pi2 kernel searches", 90, c4),
        ("crossed-module axioms and mutants", 10, c5),
        ("free crossed module faithfulness", 60, c6),
        ("double-groupoid laws on lambda(catalog)", 120, c7),
        ("rotation identity", 10, c8),
        ("commutative cubes", 30, c9),
        ("equivalence round trips", 120, c10),
        ("universal properties", 60, c11),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let mut o = f();
        let dt = t.elapsed();
        if o.ok && dt > Duration::from_secs(*budget) {
            o = fail(format!("over the {} s budget; {}", budget, o.detail));
        }
        if !o.ok {
            failed += 1;
        }
        println!("{} {:>2} {} ({:.2} s): {}", if o.ok { "PASS" } else { "FAIL" }, i + 1, name, dt.as_secs_f64(), o.detail);
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
