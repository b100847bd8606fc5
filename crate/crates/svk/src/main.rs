//! `svk`: fundamental groupoids, crossed modules and Fox calculus for small
//! 2-complexes, from the command line.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use hda::cell::{self, Complex, Fullness};
use hda::double::lambda::Lambda;
use hda::double::laws;
use hda::equivalence;
use hda::finite::FiniteGroup;
use hda::fox::{self, FoxData, KernelBounds, KernelSearch};
use hda::groupoid::{self, FiniteGroupoid, GroupoidPresentation};
use hda::presentation::GroupPresentation;
use hda::xmod::format;

#[derive(Parser)]
#[command(name = "svk", version, about = "van Kampen calculations on combinatorial 2-complexes")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Also print Graphviz for the quivers involved.
    #[arg(long, global = true)]
    dot: bool,
    /// Bound on search and completion work.
    #[arg(long, global = true, default_value_t = 10_000)]
    bound: usize,
    /// Comma-separated probe groupoids (Zn, S3, D4, Q8, I).
    #[arg(long, global = true, value_delimiter = ',')]
    probes: Option<Vec<String>>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Presentation of pi1(X, C).
    Pi1 {
        file: String,
        /// Base points, overriding the file.
        #[arg(long, value_delimiter = ',')]
        base: Option<Vec<String>>,
        /// Print only the vertex group at the first base point.
        #[arg(long)]
        group: bool,
    },
    /// pi1(X, C) as a coequaliser over the cover in the file.
    Pi1Cover {
        file: String,
        #[arg(long, value_delimiter = ',')]
        base: Option<Vec<String>>,
        /// Subcomplexes to use, default all of them.
        #[arg(long, value_delimiter = ',')]
        cover: Option<Vec<String>>,
    },
    /// Free crossed module pi2(X, X1) -> pi1(X1).
    Xmod {
        file: String,
        #[arg(long, value_delimiter = ',')]
        base: Option<Vec<String>>,
    },
    /// Bounded search for pi2(X) inside the kernel of the Fox matrix.
    Pi2 {
        file: String,
        #[arg(long, default_value_t = 4)]
        support: usize,
        #[arg(long, default_value_t = 3)]
        coeff: i64,
        #[arg(long, default_value_t = 3)]
        radius: usize,
    },
    /// Fox boundary matrix of the cells.
    Fox { file: String },
    /// Crossed-module axioms for a .xmod file.
    CheckXmod { file: String },
    /// Double-groupoid laws on lambda of a .xmod file.
    DgLaws { file: String },
    /// gamma/lambda round trips from a .xmod file.
    Roundtrip { file: String },
    /// Connectivity conditions on (X, A, C).
    CheckTriple {
        file: String,
        #[arg(long)]
        sub: String,
        #[arg(long, value_delimiter = ',')]
        base: Option<Vec<String>>,
    },
}

/// A failure worth exit status 1.
struct Domain(String);

impl<E: std::fmt::Display> From<E> for Domain {
    fn from(e: E) -> Domain {
        Domain(e.to_string())
    }
}

struct Out {
    text: String,
    json: Value,
    dot: Vec<String>,
    ok: bool,
}

impl Out {
    fn new(text: String, json: Value) -> Out {
        Out { text, json, dot: Vec::new(), ok: true }
    }
}

fn read(path: &str) -> Result<String, Domain> {
    fs::read_to_string(path).map_err(|e| Domain(format!("{}: {}", path, e)))
}

fn load_complex(path: &str) -> Result<Complex, Domain> {
    cell::parse_complex(&read(path)?).map_err(|e| Domain(format!("{}: {}", path, e)))
}

fn load_xmod(path: &str) -> Result<hda::xmod::CrossedModule, Domain> {
    format::parse_xmod(&read(path)?).map_err(|e| Domain(format!("{}: {}", path, e)))
}

fn base_points(x: &Complex, names: &Option<Vec<String>>) -> Result<Vec<usize>, Domain> {
    match names {
        Some(ns) => ns.iter().filter(|n| !n.is_empty()).map(|n| x.vertex(n).map_err(Domain::from)).collect(),
        None => Ok(x.base_or_all()),
    }
}

fn probes(cli: &Cli) -> Result<Vec<FiniteGroupoid>, Domain> {
    match &cli.probes {
        None => Ok(groupoid::default_probes()),
        Some(ns) => ns.iter().map(|n| groupoid::probe(n).ok_or_else(|| Domain(format!("unknown probe `{}`", n)))).collect(),
    }
}

/// Probes that are groups, for separation arguments.
fn group_probes(cli: &Cli) -> Result<Vec<FiniteGroup>, Domain> {
    Ok(probes(cli)?.iter().filter(|t| t.is_one_object()).map(|t| t.vertex_group(0).0).collect())
}

fn pres_json(p: &GroupoidPresentation) -> Value {
    let ab = p.alphabet();
    let q = &p.quiver;
    json!({
        "objects": q.vertices,
        "generators": q.edges.iter().map(|e| json!({"name": e.name, "src": q.vertices[e.src], "tgt": q.vertices[e.tgt]})).collect::<Vec<_>>(),
        "relations": p.relations.iter().map(|r| json!({"at": q.vertices[r.at], "lhs": ab.fmt(&r.lhs), "rhs": ab.fmt(&r.rhs)})).collect::<Vec<_>>(),
    })
}

fn group_json(g: &GroupPresentation) -> Value {
    json!({
        "generators": g.alphabet.names(),
        "relators": g.relators.iter().map(|r| g.alphabet.fmt(r)).collect::<Vec<_>>(),
        "text": g.to_string(),
    })
}

fn show_preword(f: &hda::xmod::free::FreeCrossedModule, w: &hda::xmod::free::PreWord) -> String {
    w.0.iter().map(|l| f.fmt_letter(l)).collect::<Vec<_>>().join(" ")
}

/// The group `π₁(X, c₀)` with one relator per cell, for Fox calculus.
fn cell_group(x: &Complex, bound: usize) -> Result<(FoxData, hda::cell::ComplexXMod), Domain> {
    let cx = cell::xmod_of_complex(x, &x.base_or_all())?;
    let mut rels = cx.fcm.base.relators.clone();
    rels.extend(cx.fcm.relators.iter().cloned());
    let pres = GroupPresentation::new(cx.fcm.base.alphabet.clone(), rels);
    let data = FoxData::new(pres, bound.clamp(50, 2000), 24)?;
    Ok((data, cx))
}

fn run(cli: &Cli) -> Result<Out, Domain> {
    match &cli.cmd {
        Cmd::Pi1 { file, base, group } => {
            let x = load_complex(file)?;
            let c = base_points(&x, base)?;
            let p = cell::pi1_complex(&x, &c)?;
            let mut groups = Vec::new();
            for &r in &p.objects {
                if p.tree[&r].0 == r {
                    groups.push((x.skeleton.vertices[r].clone(), cell::vertex_group(&p, r)));
                }
            }
            let text = if *group {
                groups[0].1.to_string()
            } else {
                let mut s = p.pres.describe();
                for (v, g) in &groups {
                    s.push_str(&format!("vertex group at {}: {}\n", v, g));
                }
                s.trim_end().to_string()
            };
            let mut j = pres_json(&p.pres);
            j["vertex_groups"] = groups.iter().map(|(v, g)| json!({"at": v, "group": group_json(g)})).collect();
            let mut out = Out::new(text, j);
            out.dot.push(p.pres.quiver.to_dot("pi1"));
            Ok(out)
        }
        Cmd::Pi1Cover { file, base, cover } => {
            let x = load_complex(file)?;
            let c = base_points(&x, base)?;
            let subs: Vec<cell::Sub> = match cover {
                Some(ns) => ns.iter().map(|n| x.sub(n).cloned().map_err(Domain::from)).collect::<Result<_, _>>()?,
                None => x.subs.clone(),
            };
            let res = cell::pi1_via_cover(&x, &subs, &c, &probes(cli)?, cli.bound)?;
            let r = &res.report;
            let counts = |v: &[(String, Option<usize>)]| {
                v.iter().map(|(n, k)| format!("{}={}", n, k.map_or("?".into(), |k| k.to_string()))).collect::<Vec<_>>().join(" ")
            };
            let text = format!(
                "coequaliser of {} over {}\n{}direct counts: {}\ncover counts:  {}\ncomparison: {}",
                r.pieces.join(", "),
                if r.intersections.is_empty() { "nothing".to_string() } else { r.intersections.join(", ") },
                res.cocone.apex.describe(),
                counts(&r.counts_direct),
                counts(&r.counts_cover),
                if r.agree { "agree" } else { "disagree" }
            );
            let j = json!({
                "presentation": pres_json(&res.cocone.apex),
                "comparison": if r.agree { "agree" } else { "disagree" },
                "report": r,
            });
            let mut out = Out::new(text, j);
            out.ok = r.agree;
            out.dot.push(res.cocone.apex.quiver.to_dot("coequaliser"));
            out.dot.push(x.to_dot());
            Ok(out)
        }
        Cmd::Xmod { file, base } => {
            let x = load_complex(file)?;
            let c = base_points(&x, base)?;
            let cx = cell::xmod_of_complex(&x, &c)?;
            let f = &cx.fcm;
            let ab = &f.base.alphabet;
            let mut s = format!("P = pi1(X1, {}) = {}\n", x.skeleton.vertices[cx.root], f.base);
            let mut cells = Vec::new();
            for (i, name) in f.relator_names.iter().enumerate() {
                s.push_str(&format!("d({}) = {}\n", name, ab.fmt(&f.relators[i])));
                cells.push(json!({"cell": name, "boundary": ab.fmt(&f.relators[i]), "edge_path": x.skeleton.alphabet().fmt(&cx.based[i])}));
            }
            s.push_str(&format!("coker d = {}", GroupPresentation::new(ab.clone(), f.relators.clone())));
            let j = json!({"root": x.skeleton.vertices[cx.root], "p": group_json(&f.base), "cells": cells});
            Ok(Out::new(s, j))
        }
        Cmd::Fox { file } => {
            let x = load_complex(file)?;
            let (p, _) = cell_group(&x, cli.bound)?;
            let m = fox::boundary_matrix(&p);
            let mut s = m.to_text(&p);
            let mut exp = Vec::new();
            for (i, r) in p.pres.relators.iter().enumerate() {
                let e = fox::fmt_exponent_terms(p.alphabet(), &fox::exponent_terms(&p, r));
                s.push_str(&format!("\nd({}) = {}", x.cells[i].name, e));
                exp.push(json!({"cell": x.cells[i].name, "terms": e}));
            }
            let j = json!({"group": group_json(&p.pres), "matrix": fox::matrix_doc(&p, &m), "exponent_form": exp});
            Ok(Out::new(s, j))
        }
        Cmd::Pi2 { file, support, coeff, radius } => {
            let x = load_complex(file)?;
            let (p, cx) = cell_group(&x, cli.bound)?;
            let m = fox::boundary_matrix(&p);
            let mut b = KernelBounds::new(*support, *coeff);
            b.radius = *radius;
            let k: KernelSearch = fox::pi2_kernel_search(&p, &m, b);
            let gen = k.generator();
            let mut s = format!(
                "group {}\n{} pool elements{}, rational kernel dimension {}, {} candidates{}\n",
                p.pres,
                k.pool.len(),
                if k.pool_is_group { " (all of G)" } else { "" },
                k.rational_dim,
                k.candidates,
                if k.exhaustive { "" } else { " (cut short)" }
            );
            match gen {
                Some(g) => s.push_str(&format!("kernel basis candidate {}", KernelSearch::fmt_vector(g))),
                None if k.vectors.is_empty() => s.push_str("no kernel vectors within the bounds"),
                None => s.push_str(&format!("{} kernel vectors, not multiples of one", k.vectors.len())),
            }
            let mut pushed = None;
            if let Some(g) = gen {
                if let Some((w, _, central)) = fox::push_back(&cx.fcm, g, cli.bound) {
                    s.push_str(&format!("\nrealised by {} (central: {})", show_preword(&cx.fcm, &w), central));
                    pushed = Some(json!({"word": show_preword(&cx.fcm, &w), "central": central}));
                }
            }
            let j = json!({
                "group": group_json(&p.pres),
                "pool": k.pool.len(),
                "pool_is_group": k.pool_is_group,
                "rational_dim": k.rational_dim,
                "candidates": k.candidates,
                "exhaustive": k.exhaustive,
                "vectors": k.vectors.iter().map(|v| KernelSearch::fmt_vector(v)).collect::<Vec<_>>(),
                "generator": gen.map(|g| KernelSearch::fmt_vector(g)),
                "push_back": pushed,
            });
            Ok(Out::new(s, j))
        }
        Cmd::CheckXmod { file } => {
            let x = load_xmod(file)?;
            let r = x.validate();
            let text = if r.is_valid() {
                format!("{}: crossed module, |M| = {}, |P| = {}", x.name, x.m.order(), x.p.order())
            } else {
                let ws: Vec<String> = r.violations.iter().take(10).map(|v| format!("  {:?}", v)).collect();
                format!("{}: {} violations\n{}", x.name, r.violations.len(), ws.join("\n"))
            };
            let mut out = Out::new(text, json!({"name": x.name, "valid": r.is_valid(), "report": r, "xmod": format::xmod_doc(&x)}));
            out.ok = r.is_valid();
            Ok(out)
        }
        Cmd::DgLaws { file } => {
            let x = load_xmod(file)?;
            if x.square_count() > 100_000 {
                return Err(Domain(format!("{} squares, more than 100000", x.square_count())));
            }
            let l = Lambda::from_xmod(&x)?;
            let mut r = laws::lambda_suite(&l);
            r.merge(laws::rotation_laws(&l));
            let mut text = r.summary();
            for v in &r.violations {
                text.push_str(&format!("\n  {}: {}", v.law, v.witness));
            }
            let mut out = Out::new(text, serde_json::to_value(&r)?);
            out.ok = r.passed();
            Ok(out)
        }
        Cmd::Roundtrip { file } => {
            let x = load_xmod(file)?;
            let a = equivalence::roundtrip_xmod(&x);
            let l = Lambda::from_xmod(&x)?;
            let b = equivalence::roundtrip_dg(&l);
            let mut out = Out::new(format!("{}\n{}", a, b), json!([a, b]));
            out.ok = a.ok() && b.ok();
            Ok(out)
        }
        Cmd::CheckTriple { file, sub, base } => {
            let x = load_complex(file)?;
            let a = x.sub(sub)?.clone();
            let c = base_points(&x, base)?;
            let r = cell::check_connected_triple(&x, &a, &c, cli.bound, &group_probes(cli)?)?;
            let ii = match &r.condition_ii {
                Fullness::Full { certified: true } => "full (certified)".to_string(),
                Fullness::Full { certified: false } => "full (bounded)".to_string(),
                Fullness::NotFull { witness } => format!("not full: {}", witness),
                Fullness::Unknown { bound } => format!("unknown within bound {}", bound),
            };
            let text = format!(
                "(i) pi0(C) -> pi0(A): {}, pi0(C) -> pi0(X): {}\n(ii) pi1(A, C) -> pi1(X, C) {}  [read as fullness]",
                if r.onto_components_of_a { "onto" } else { "not onto" },
                if r.onto_components_of_x { "onto" } else { "not onto" },
                ii
            );
            let mut out = Out::new(text, serde_json::to_value(&r)?);
            out.ok = r.condition_i && matches!(r.condition_ii, Fullness::Full { .. });
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).unwrap());
            } else {
                println!("{}", out.text);
            }
            if cli.dot {
                for d in &out.dot {
                    println!("{}", d);
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Domain(msg)) => {
            eprintln!("svk: {}", msg);
            ExitCode::from(1)
        }
    }
}
