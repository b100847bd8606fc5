use std::process::{Command, Output};

use serde_json::Value;

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/");

fn svk(args: &[&str]) -> Output {
    let args: Vec<String> = args
        .iter()
        .map(|a| if a.ends_with(".cx2") || a.ends_with(".xmod") { format!("{}{}", DATA, a) } else { a.to_string() })
        .collect();
    Command::new(env!("CARGO_BIN_EXE_svk")).args(&args).output().expect("run svk")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let o = svk(&a);
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{}: {}", e, stdout(&o)))
}

#[test]
fn klein_group() {
    let o = svk(&["pi1", "klein.cx2", "--base", "v0", "--group"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "⟨a, b | a b a^-1 b⟩");
}

#[test]
fn pi1_json_lists_vertex_groups() {
    let j = json(&["pi1", "circle2.cx2"]);
    assert_eq!(j["objects"], serde_json::json!(["p", "q"]));
    assert_eq!(j["vertex_groups"][0]["group"]["text"], "⟨y | ⟩");
}

#[test]
fn three_arc_cover_agrees() {
    let j = json(&["pi1-cover", "circle3.cx2"]);
    assert_eq!(j["comparison"], "agree");
    assert_eq!(j["report"]["counts_direct"], j["report"]["counts_cover"]);
    assert_eq!(j["presentation"]["objects"].as_array().unwrap().len(), 3);
}

#[test]
fn cover_missing_a_piece_is_refused() {
    let o = svk(&["pi1-cover", "circle3.cx2", "--cover", "U1,U2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("do not cover"));
}

#[test]
fn pi2_of_sphere() {
    let o = svk(&["pi2", "sphere2.cx2", "--support", "3", "--coeff", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("kernel basis candidate (1, -1)"), "{}", stdout(&o));
}

#[test]
fn pi2_json_of_torus_is_empty() {
    let j = json(&["pi2", "torus.cx2"]);
    assert_eq!(j["vectors"].as_array().unwrap().len(), 0);
    assert_eq!(j["exhaustive"], true);
}

#[test]
fn fox_exponent_form() {
    let o = svk(&["fox", "klein.cx2"]);
    assert!(stdout(&o).contains("d(s) = a^{b-a+b} +b^{-a+b} -a^{-a+b} +b"));
}

#[test]
fn xmod_boundary() {
    let j = json(&["xmod", "klein.cx2"]);
    assert_eq!(j["cells"][0]["boundary"], "a b a^-1 b");
}

#[test]
fn xmod_files() {
    assert!(svk(&["check-xmod", "a3_s3.xmod"]).status.success());
    let bad = svk(&["check-xmod", "s3_to_1_invalid.xmod"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("Cm2"));
    assert!(svk(&["dg-laws", "z2_id.xmod"]).status.success());
    let r = json(&["roundtrip", "z2_trivial.xmod"]);
    assert_eq!(r.as_array().unwrap().len(), 2);
    assert!(r[0]["failure"].is_null() && r[1]["failure"].is_null());
}

#[test]
fn triples() {
    let disc = json(&["check-triple", "disc.cx2", "--sub", "A"]);
    assert_eq!(disc["condition_i"], true);
    assert_eq!(disc["condition_ii"]["answer"], "full");
    let ann = svk(&["check-triple", "annulus.cx2", "--sub", "A"]);
    assert_eq!(ann.status.code(), Some(1));
    assert!(stdout(&ann).contains("not full"));
}

#[test]
fn dot_output() {
    let o = svk(&["pi1", "klein.cx2", "--dot"]);
    assert!(stdout(&o).contains("digraph"));
}

#[test]
fn exit_codes() {
    assert_eq!(svk(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(svk(&["pi1"]).status.code(), Some(2));
    assert_eq!(svk(&["pi1", "missing.cx2"]).status.code(), Some(1));
    assert_eq!(svk(&["pi1", "klein.cx2", "--base", "nowhere"]).status.code(), Some(1));
    assert_eq!(svk(&["pi1", "klein.cx2", "--probes", "Z0"]).status.code(), Some(0));
    assert_eq!(svk(&["pi1-cover", "circle3.cx2", "--probes", "Z0"]).status.code(), Some(1));
}
