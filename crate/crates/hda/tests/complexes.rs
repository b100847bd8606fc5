use std::fs;

use hda::cell::{
    check_connected_triple, check_cover_hypothesis, parse_complex, pi1_complex, pi1_via_cover, vertex_group, xmod_of_complex, CellError,
    Complex, Fullness, Pi1Paths, Sub,
};
use hda::finite::FiniteGroup;
use hda::groupoid::{default_probes, probe_counts};
use hda::presentation::GroupPresentation;
use hda::word::free_reduce;

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/");

fn load(name: &str) -> Complex {
    parse_complex(&fs::read_to_string(format!("{}{}", DATA, name)).unwrap()).unwrap()
}

fn probes() -> Vec<FiniteGroup> {
    vec![FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric3()]
}

#[test]
fn every_complex_prints_back() {
    let mut n = 0;
    for entry in fs::read_dir(DATA).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("cx2") {
            continue;
        }
        let x = parse_complex(&fs::read_to_string(&path).unwrap()).unwrap();
        let again = parse_complex(&x.to_string()).unwrap();
        assert_eq!(x, again, "{}", path.display());
        n += 1;
    }
    assert!(n >= 9);
}

fn subs(x: &Complex, names: &[&str]) -> Vec<Sub> {
    names.iter().map(|n| x.sub(n).unwrap().clone()).collect()
}

#[test]
fn covers_agree_with_direct_computation() {
    let cases: Vec<(Complex, Vec<Sub>)> = {
        let c2 = load("circle2.cx2");
        let c3 = load("circle3.cx2");
        let an = load("annulus.cx2");
        let disc = load("disc.cx2");
        vec![
            (c2.clone(), subs(&c2, &["U", "V"])),
            (c3.clone(), subs(&c3, &["U1", "U2", "U3"])),
            (c3.clone(), vec![c3.whole()]),
            (an.clone(), vec![an.sub("A").unwrap().clone(), an.whole()]),
            (disc.clone(), vec![disc.sub("A").unwrap().clone(), disc.whole()]),
        ]
    };
    let probes = default_probes();
    for (x, cover) in cases {
        let c = x.base_or_all();
        check_cover_hypothesis(&x, &cover, &c).unwrap();
        let r = pi1_via_cover(&x, &cover, &c, &probes, 100_000).unwrap();
        assert!(r.report.agree, "{:?}", r.report);
        assert_eq!(r.cocone.apex.components().len(), x.components(&x.whole()).len());
    }
}

#[test]
fn incomplete_cover_is_refused() {
    let x = load("circle3.cx2");
    let c = x.base_or_all();
    let cover = subs(&x, &["U1", "U2"]);
    assert!(matches!(check_cover_hypothesis(&x, &cover, &c), Err(CellError::NotCovering(_))));
    // dropping the base point of one overlap leaves a component of U1∩U3 unmet
    let c: Vec<usize> = vec![x.vertex("q").unwrap(), x.vertex("r").unwrap()];
    let cover = subs(&x, &["U1", "U2", "U3"]);
    assert!(matches!(check_cover_hypothesis(&x, &cover, &c), Err(CellError::Hypothesis { .. })));
}

/// Replaces whole identifiers, leaving keywords and comments alone.
fn rename_tokens(text: &str, map: &[(&str, &str)]) -> String {
    let mut out = String::new();
    for line in text.lines() {
        let (body, comment) = line.split_at(line.find('#').unwrap_or(line.len()));
        let mut tok = String::new();
        let flush = |tok: &mut String, out: &mut String| {
            let m = map.iter().find(|(a, _)| *a == tok.as_str()).map_or(tok.as_str(), |(_, b)| b);
            out.push_str(m);
            tok.clear();
        };
        for ch in body.chars() {
            if ch.is_alphanumeric() || ch == '_' {
                tok.push(ch);
            } else {
                flush(&mut tok, &mut out);
                out.push(ch);
            }
        }
        flush(&mut tok, &mut out);
        out.push_str(comment);
        out.push('\n');
    }
    out
}

#[test]
fn relabelled_circle_gives_same_counts() {
    let text = fs::read_to_string(format!("{}circle3.cx2", DATA)).unwrap();
    let probes = default_probes();
    let counts = |t: &str| {
        let x = parse_complex(t).unwrap();
        let names: Vec<&str> = x.subs.iter().map(|s| s.name.as_str()).collect();
        let cover = subs(&x, &names);
        let r = pi1_via_cover(&x, &cover, &x.base_or_all(), &probes, 100_000).unwrap();
        assert!(r.report.agree);
        r.report.counts_cover
    };
    let want = counts(&text);
    let renamed = rename_tokens(&text, &[("p", "pp"), ("x", "xx"), ("U2", "W")]);
    assert_ne!(renamed, text);
    assert_eq!(counts(&renamed), want);
}

#[test]
fn klein_vertex_group() {
    let x = load("klein.cx2");
    let p = pi1_complex(&x, &x.base_or_all()).unwrap();
    let g = vertex_group(&p, x.vertex("v0").unwrap());
    let oracle = GroupPresentation::parse(&["a", "b"], &["a b a^-1 b"]).unwrap();
    for h in probes() {
        assert_eq!(g.hom_count(&h), oracle.hom_count(&h));
    }
    // b trivial: 6; b a 3-cycle, a one of 3 transpositions: 6; b a
    // transposition, a in its centraliser: 6
    assert_eq!(oracle.hom_count(&FiniteGroup::symmetric3()), 18);
}

#[test]
fn annulus_group_is_free_on_one() {
    let x = load("annulus.cx2");
    let p = pi1_complex(&x, &x.base_or_all()).unwrap();
    let g = vertex_group(&p, x.vertex("v").unwrap());
    let z = GroupPresentation::parse(&["t"], &[]).unwrap();
    for h in probes() {
        assert_eq!(g.hom_count(&h), z.hom_count(&h));
    }
    let d = probe_counts(&p.pres, &default_probes(), 100_000);
    assert!(d.iter().all(|(_, n)| n.is_some()));
}

#[test]
fn xmod_boundaries_are_attaching_words() {
    for name in ["klein.cx2", "annulus.cx2", "sphere2.cx2", "rp2.cx2", "torus.cx2", "disc.cx2"] {
        let x = load(name);
        let c = x.base_or_all();
        let xm = xmod_of_complex(&x, &c).unwrap();
        let mut skel = x.whole();
        skel.cells.clear();
        let paths = Pi1Paths { x: &x, pi: hda::cell::pi1_sub(&x, &skel, &c).unwrap() };
        for (i, cell) in x.cells.iter().enumerate() {
            // a closed path at the root, conjugate to the attaching word
            assert_eq!(x.skeleton.path_end(xm.root, &xm.based[i]), Some(xm.root), "{}", name);
            let tp = &paths.pi.tree[&cell.at].1;
            assert_eq!(xm.based[i], free_reduce(&tp.concat(&cell.word).concat(&tp.inverse())));
            let dr = xm.fcm.boundary(&xm.fcm.gen(i).unwrap());
            assert_eq!(dr, xm.fcm.reduce_p(&paths.translate(xm.root, &xm.based[i]).unwrap()), "{}", name);
        }
    }
}

#[test]
fn triples() {
    let disc = load("disc.cx2");
    let r = check_connected_triple(&disc, disc.sub("A").unwrap(), &disc.base_or_all(), 10_000, &probes()).unwrap();
    assert!(r.condition_i);
    assert_eq!(r.condition_ii, Fullness::Full { certified: true });

    let an = load("annulus.cx2");
    let r = check_connected_triple(&an, an.sub("A").unwrap(), &an.base_or_all(), 10_000, &probes()).unwrap();
    assert!(r.condition_i);
    assert!(matches!(r.condition_ii, Fullness::NotFull { .. }), "{:?}", r.condition_ii);

    let r = check_connected_triple(&an, &an.whole(), &an.base_or_all(), 10_000, &probes()).unwrap();
    assert!(matches!(r.condition_ii, Fullness::Full { .. }));

    let r = check_connected_triple(&disc, disc.sub("A").unwrap(), &[], 10_000, &probes()).unwrap();
    assert!(!r.condition_i);
}
