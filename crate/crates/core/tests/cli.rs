use std::fs;
use std::path::PathBuf;

use thompson_core::certify::{certify_normal_generation, Certificate};
use thompson_core::cli::run;

fn thompson(args: &[&str]) -> (i32, String) {
    let mut buf = Vec::new();
    let argv: Vec<&str> = std::iter::once("thompson").chain(args.iter().copied()).collect();
    let code = run(argv, &mut buf);
    (code, String::from_utf8(buf).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("thompson-it-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn element_files() {
    let dir = scratch("files");
    let x0 = dir.join("x0.elt");
    fs::write(&x0, "# x0\n00 -> 0\n01 -> 10\n1 -> 11\n").unwrap();
    let p = x0.to_str().unwrap();
    assert_eq!(thompson(&["eval", p, "1/4"]), (0, "1/2\n".into()));
    assert_eq!(thompson(&["eval", p, ".01"]), (0, "1/2\n".into()));
    assert_eq!(thompson(&["compose", p, "x0"]).1, thompson(&["parse", "--word", "x0^2"]).1);
    assert_eq!(thompson(&["invert", p]).1, "0 -> 00\n10 -> 01\n11 -> 1\n");
    assert_eq!(thompson(&["flip", "x0"]).1, "0 -> 00\n10 -> 01\n11 -> 1\n");
    assert_eq!(thompson(&["uvw", p]).1, "sign +1 u 0001 v 001 w 01\n");
    fs::write(dir.join("bad.elt"), "0 -> 0\n").unwrap();
    assert_eq!(thompson(&["parse", dir.join("bad.elt").to_str().unwrap()]).0, 2);
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn synthesis_commands_write_certificates() {
    let dir = scratch("synth");
    let g = dir.join("g.elt");
    let cert = dir.join("cert.json");
    let (code, out) = thompson(&[
        "synthesize", "--word", "x0 x1", "--target", "0,0", "--out", g.to_str().unwrap(), "--cert", cert.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("# part 4, image (0,0)"));
    let c = Certificate::from_json(&fs::read_to_string(&cert).unwrap()).unwrap();
    assert!(certify_normal_generation(&c).is_pass());
    assert_eq!(thompson(&["abelianize", g.to_str().unwrap()]).1, "(0,0)\n");
    assert_eq!(thompson(&["certify", cert.to_str().unwrap(), "--json"]).1, "{\"verdict\":\"PASS\"}\n");

    let (code, out) = thompson(&["complete-pair", "x0"]);
    assert_eq!(code, 0);
    assert!(out.contains("index 1"));
    let (code, out) = thompson(&["finite-index", "--word", "x0^3 x1^-1 x0^3"]);
    assert_eq!(code, 0);
    assert!(out.contains("index"));
    assert_eq!(thompson(&["complete-pair", "id"]).0, 2);
    assert_eq!(thompson(&["synthesize", "x1", "--target", "0,3"]).0, 2);
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn export_and_corpus() {
    let (code, dot) = thompson(&["export", "--dot", "x1"]);
    assert_eq!(code, 0);
    assert!(dot.starts_with("digraph element {"));
    let (code, table) = thompson(&["corpus", "--seed", "5", "--count", "4"]);
    assert_eq!(code, 0);
    assert!(table.trim_end().ends_with("4/4 passed, parts 1,2,3,4"), "{table}");
    assert_eq!(thompson(&["corpus", "--seed", "5", "--count", "4"]).1, table);
}
