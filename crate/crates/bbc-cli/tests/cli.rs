//! End-to-end exercises of the binary: exit codes, file outputs, and the
//! colour -> verify pipeline round-trip.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::atomic::{AtomicUsize, Ordering};

static COUNTER: AtomicUsize = AtomicUsize::new(0);

fn scratch(name: &str) -> PathBuf {
    let id = COUNTER.fetch_add(1, Ordering::SeqCst);
    std::env::temp_dir().join(format!("bbc-cli-test-{}-{id}-{name}", std::process::id()))
}

fn bbc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bbc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

const K3: &str = "p bbc 3 3 1 2\ne 1 2\ne 2 3\ne 1 3\nb 1 2\n";

#[test]
fn colour_then_verify_round_trip() {
    let inst = scratch("k3.bbc");
    let col = scratch("k3.col");
    let csv = scratch("k3.csv");
    fs::write(&inst, K3).unwrap();
    let out = bbc(&[
        "colour",
        inst.to_str().unwrap(),
        "--out",
        col.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let colouring = fs::read_to_string(&col).unwrap();
    assert!(colouring.starts_with("s bbc "));

    let verify = bbc(&["verify", inst.to_str().unwrap(), col.to_str().unwrap()]);
    assert_eq!(code(&verify), 0);
    assert!(String::from_utf8_lossy(&verify.stdout).starts_with("valid"));

    let report = fs::read_to_string(&csv).unwrap();
    assert!(report.starts_with("instance,algorithm,n,omega,span,bound,certified,millis"));
    for alg in ["double", "interval2", "sparse", "c4free"] {
        assert!(report.contains(alg), "missing {alg} row:\n{report}");
    }
}

#[test]
fn verify_flags_invalid_colourings() {
    let inst = scratch("bad.bbc");
    let col = scratch("bad.col");
    fs::write(&inst, K3).unwrap();
    // proper but the backbone edge {1,2} only gets gap 1
    fs::write(&col, "s bbc 3\nv 1 1\nv 2 2\nv 3 3\n").unwrap();
    let out = bbc(&["verify", inst.to_str().unwrap(), col.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("BackboneGap"));
}

#[test]
fn precondition_rejections_exit_2() {
    let inst = scratch("lb.bbc");
    let gen = bbc(&[
        "generate",
        "--family",
        "lower-bound",
        "--r",
        "1",
        "--out",
        inst.to_str().unwrap(),
    ]);
    assert_eq!(code(&gen), 0);
    let out = bbc(&[
        "colour",
        inst.to_str().unwrap(),
        "--alg",
        "interval2",
        "--out",
        scratch("lb.col").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a path"));
}

#[test]
fn exact_solves_the_lower_bound_anchor() {
    let inst = scratch("lb1.bbc");
    bbc(&[
        "generate",
        "--family",
        "lower-bound",
        "--r",
        "1",
        "--out",
        inst.to_str().unwrap(),
    ]);
    let out = bbc(&["exact", inst.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.contains("x bbc 5"), "{text}");

    let circ = bbc(&["exact", inst.to_str().unwrap(), "--circular"]);
    assert_eq!(code(&circ), 0);
    assert!(String::from_utf8_lossy(&circ.stdout).contains("x cbc "));
}

#[test]
fn sparse_with_explicit_mad_bound() {
    let inst = scratch("forest.bbc");
    bbc(&[
        "generate",
        "--family",
        "chordal-forest",
        "--seed",
        "5",
        "--max-n",
        "60",
        "--omega",
        "8",
        "--out",
        inst.to_str().unwrap(),
    ]);
    let col = scratch("forest.col");
    let out = bbc(&[
        "colour",
        inst.to_str().unwrap(),
        "--alg",
        "sparse",
        "--d",
        "2",
        "--out",
        col.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let verify = bbc(&["verify", inst.to_str().unwrap(), col.to_str().unwrap()]);
    assert_eq!(code(&verify), 0);
}

#[test]
fn exhausted_budget_exits_3_with_bounds() {
    let inst = scratch("lb2.bbc");
    bbc(&[
        "generate",
        "--family",
        "lower-bound",
        "--r",
        "2",
        "--out",
        inst.to_str().unwrap(),
    ]);
    let out = bbc(&["exact", inst.to_str().unwrap(), "--budget", "0"]);
    assert_eq!(code(&out), 3);
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.contains("c inexact"), "{text}");
    assert!(text.contains("c bounds: lower "), "{text}");
}

#[test]
fn malformed_files_exit_4() {
    let inst = scratch("broken.bbc");
    fs::write(&inst, "p bbc 2 1 1\nb 1 2\n").unwrap();
    let out = bbc(&["colour", inst.to_str().unwrap()]);
    assert_eq!(code(&out), 4);
    let missing = bbc(&["colour", "/nonexistent/path.bbc"]);
    assert_eq!(code(&missing), 4);
}

#[test]
fn mad_prints_exact_rationals() {
    let inst = scratch("p4.bbc");
    fs::write(&inst, "p bbc 4 3 3 2\nb 1 2\nb 2 3\nb 3 4\n").unwrap();
    let out = bbc(&["mad", inst.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("mad: 3/2"));
}

#[test]
fn recognize_reports_structure_and_dumps() {
    let inst = scratch("lb1r.bbc");
    bbc(&[
        "generate",
        "--family",
        "lower-bound",
        "--r",
        "1",
        "--out",
        inst.to_str().unwrap(),
    ]);
    let out = bbc(&["recognize", inst.to_str().unwrap(), "--dump"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.contains("chordal: yes"));
    assert!(text.contains("omega: 3"));
    assert!(text.contains("interval-restricted: no"));
    assert!(text.contains("backbone-bipartite: yes"));
    assert!(text.contains("t 1 - : "));
}

#[test]
fn survey_emits_csv_with_summary() {
    let csv = scratch("survey.csv");
    let out = bbc(&[
        "survey",
        "--family",
        "chordal-forest",
        "--count",
        "4",
        "--max-n",
        "30",
        "--omega",
        "5",
        "--budget",
        "2",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("id,generator,n,omega,double"));
    assert_eq!(text.lines().count(), 6); // header + 4 rows + summary
    assert!(text.lines().last().unwrap().starts_with("summary"));
}

#[test]
fn generated_instances_carry_their_spec() {
    let out = bbc(&[
        "generate",
        "--family",
        "interval-bipartite",
        "--seed",
        "7",
        "--ell",
        "6",
        "--omega",
        "4",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.starts_with("c generator: interval-two-clique"), "{text}");
    // determinism: the same invocation produces identical bytes
    let again = bbc(&[
        "generate",
        "--family",
        "interval-bipartite",
        "--seed",
        "7",
        "--ell",
        "6",
        "--omega",
        "4",
    ]);
    assert_eq!(out.stdout, again.stdout);
}
