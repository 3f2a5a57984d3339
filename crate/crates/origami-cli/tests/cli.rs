//! Command line behavior: exit codes, formats, determinism.

use std::io::Write;
use std::process::{Command, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_origami"))
}

fn run(args: &[&str]) -> (String, String, i32) {
    let out = bin().args(args).output().expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn parse_errors_exit_2() {
    let (_, err, code) = run(&["analyze", "h=(1,2; v=(); n=2"]);
    assert_eq!(code, 2);
    assert!(err.contains("syntax"), "stderr: {err}");

    let (_, err, code) = run(&["analyze", "h=(1,2); v=(1,2); n=3"]);
    assert_eq!(code, 2);
    assert!(err.contains("disconnected"), "stderr: {err}");

    let (_, err, code) = run(&["analyze", "h=(1,1); v=(); n=2"]);
    assert_eq!(code, 2);
    assert!(err.contains("permutation"), "stderr: {err}");

    let (_, _, code) = run(&["analyze", "@no-such-surface"]);
    assert_eq!(code, 2);

    let (_, _, code) = run(&["cylinders", "@torus", "-d", "2,4"]);
    assert_eq!(code, 2);
}

#[test]
fn analyze_text_fields() {
    let (out, _, code) = run(&["analyze", "@torus"]);
    assert_eq!(code, 0);
    assert!(out.contains("stratum: H() (genus 1"));
    assert!(out.contains("spin parity: 1"));
    assert!(out.contains("hyperelliptic: yes, 4 fixed points"));

    let (out, _, code) = run(&["analyze", "@Mstarstar"]);
    assert_eq!(code, 0);
    assert!(out.contains("stratum: H(4) (genus 3"));
    assert!(out.contains("spin parity: 0"));
    assert!(out.contains("hyperelliptic: yes, 8 fixed points"));

    // odd zero orders: spin undefined, still exit 0
    let (out, _, code) = run(&["analyze", "h=(1,2)(3,4); v=(2,3); n=4"]);
    assert_eq!(code, 0);
    assert!(out.contains("spin parity: undefined"));
}

#[test]
fn iso_outputs() {
    let (out, _, code) = run(&["iso", "@Mstar", "@Mstar"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "()");
    let (out, _, code) = run(&["iso", "@Mstar", "@Mstarstar"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "none");
    // a relabeled copy is recognized
    let (out, _, code) = run(&["iso", "h=(1,3)(4,5,6); v=(1,2,4)(3,5); n=6", "@Mstar"]);
    assert_eq!(code, 0);
    assert_ne!(out.trim(), "none");
}

#[test]
fn catalog_list_and_lookup() {
    let (out, _, code) = run(&["catalog"]);
    assert_eq!(code, 0);
    for name in ["@torus", "@Mstar", "@Mstarstar", "@L3"] {
        assert!(out.contains(name), "catalog lists {name}");
    }
    let (out, _, code) = run(&["catalog", "Mstar"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "h=(2,3)(4,5,6); v=(1,4,2)(3,5); n=6");
    let (_, _, code) = run(&["catalog", "nope"]);
    assert_eq!(code, 2);
}

#[test]
fn bubble_emits_canonical_text() {
    let (out, _, code) = run(&["bubble", "@torus", "--slit", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "h=(2,3); v=(1,2); n=3");
    let (_, _, code) = run(&["bubble", "@torus", "--slit", "5"]);
    assert_eq!(code, 2);
}

#[test]
fn density_from_stdin_text() {
    let mut child = bin()
        .args(["density"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("spawn");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(b"# sl2 generators\n1 1\n0 1\n\n1 0\n1 1\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let cert: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(cert["verdict"], "dense");
    assert_eq!(cert["dimension"], 3);

    // a single identity matrix is inconclusive: exit 3
    let mut child = bin()
        .args(["density", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("spawn");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(b"1 0\n0 1\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(3));

    // malformed input: exit 2
    let mut child = bin()
        .args(["density"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(b"1 x\n0 1\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn surface_from_file() {
    let path = std::env::temp_dir().join("origami-cli-test-surface.txt");
    std::fs::write(&path, "h=(1,2); v=(1,3); n=3\n").unwrap();
    let (out, _, code) = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("stratum: H(2)"));
}

#[test]
fn outputs_are_byte_stable() {
    for args in [
        vec!["analyze", "@Mstar", "--json"],
        vec!["analyze", "@Mstarstar", "--json", "-d", "1,0", "-d", "2,1"],
        vec![
            "monodromy",
            "@Mstar",
            "-d",
            "1,0",
            "-d",
            "0,1",
            "-d",
            "1,1",
            "--basis",
            "paper",
            "--json",
        ],
        vec!["cylinders", "@L3", "-d", "1,1", "--json"],
    ] {
        let (a, _, code_a) = run(&args);
        let (b, _, code_b) = run(&args);
        assert_eq!(code_a, 0);
        assert_eq!(code_b, 0);
        assert_eq!(a, b, "unstable output for {args:?}");
    }
}

#[test]
fn monodromy_torus() {
    let (report, _, code) = run(&["monodromy", "@torus", "-d", "1,0", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(
        v["directions"][0]["h1_matrix"],
        serde_json::json!([[1, 1], [0, 1]])
    );
    assert_eq!(v["directions"][0]["shear"], 1);
    assert_eq!(
        v["directions"][0]["perp_matrix"],
        serde_json::Value::Array(vec![])
    );
}
