use std::io::Write;
use std::process::{Command, Output, Stdio};

use harmap::HarmonicMap;

fn harmap(args: &[&str], stdin: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_harmap"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: &[u8]) -> Vec<u8> {
    let out = harmap(args, stdin);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

#[test]
fn catalog_csv_matches_known_coefficients() {
    let text = String::from_utf8(ok(&["catalog", "K", "--order", "4", "--format", "csv"], b"")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,a_n,b_n");
    assert_eq!(lines[2], "1,1,0");
    assert_eq!(lines[3], "2,2.5,0.5");
    assert_eq!(lines.len(), 6);
}

#[test]
fn catalog_json_parses_as_map() {
    let out = ok(&["catalog", "L", "--order", "16"], b"");
    let l: HarmonicMap = serde_json::from_slice(&out).unwrap();
    assert_eq!(l.order(), 16);
    assert!((l.h()[5].re - 3.0).abs() < 1e-12);
    assert!((l.g()[5].re + 2.0).abs() < 1e-12);
}

#[test]
fn rotation_then_slice_round_trips() {
    let k = ok(&["catalog", "K", "--order", "24"], b"");
    let rotated = ok(&["rotate", "-", "--eps", "-1"], &k);
    let via_rotation = ok(&["slice", "-", "--eps", "1"], &rotated);
    let direct = ok(&["slice", "-", "--eps", "-1"], &k);
    assert_eq!(via_rotation, direct);
}

#[test]
fn output_is_deterministic() {
    let args = ["catalog", "M", "--order", "32", "--format", "csv"];
    assert_eq!(ok(&args, b""), ok(&args, b""));
    let k = ok(&["catalog", "K", "--order", "32"], b"");
    let scan = ["stability-table", "-", "--eps-circle", "6", "--radii", "8", "--angles", "32"];
    assert_eq!(ok(&scan, &k), ok(&scan, &k));
}

#[test]
fn bohr_radius_reports_json() {
    let out = ok(&["bohr-radius", "--profile", "S_STAR"], b"");
    let json: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(json["profile"], "S_STAR");
    assert!((json["radius"].as_f64().unwrap() - 0.115013).abs() < 1e-6);
    let root = json["closed_form_root"].as_f64().unwrap();
    assert!((json["radius"].as_f64().unwrap() - root).abs() < 1e-12);
}

#[test]
fn bohr_check_and_transform_pipeline() {
    let k = ok(&["catalog", "K", "--order", "64"], b"");
    let verdict = |r: &str| {
        let out = ok(&["bohr-check", "-", "--profile", "S_STAR", "--r", r], &k);
        serde_json::from_slice::<serde_json::Value>(&out).unwrap()["verdict"].clone()
    };
    assert_eq!(verdict("0.1"), "pass");
    assert_eq!(verdict("0.12"), "fail");
    let t = ok(&["transform", "-", "--auto", "0.3+0.2i,0.5"], &k);
    let t: HarmonicMap = serde_json::from_slice(&t).unwrap();
    assert!(t.h()[0].norm() < 1e-12 && (t.h()[1].re - 1.0).abs() < 1e-12);
}

#[test]
fn exit_codes() {
    assert_eq!(harmap(&["frobnicate"], b"").status.code(), Some(2));
    assert_eq!(harmap(&["catalog"], b"").status.code(), Some(2));
    assert_eq!(harmap(&["--help"], b"").status.code(), Some(0));
    let bad = harmap(&["bohr-radius", "--profile", "NOPE"], b"");
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).starts_with("error:"));
    assert_eq!(harmap(&["slice", "-", "--eps", "0.5"], b"not json").status.code(), Some(1));
    let k = ok(&["catalog", "K", "--order", "8"], b"");
    assert_eq!(harmap(&["transform", "-", "--affine", "1.5"], &k).status.code(), Some(1));
}
