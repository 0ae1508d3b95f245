use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shintani"))
        .args(args)
        .env("SHINTANI_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn cache_is_reproducible_and_extends() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path();
    let out = run(cache, &["enumerate", "--sign", "neg", "--max-disc", "400", "--oracle"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    assert_eq!(r["results"][0]["action"], "built");
    assert_eq!(r["results"][0]["oracle_problems"].as_array().unwrap().len(), 0);
    let file = cache.join("classes-neg.csv");
    let first = fs::read(&file).unwrap();

    // a rebuild in a fresh directory is byte-identical
    let other = tempfile::tempdir().unwrap();
    assert!(run(other.path(), &["enumerate", "--sign", "neg", "--max-disc", "400"]).status.success());
    assert_eq!(fs::read(other.path().join("classes-neg.csv")).unwrap(), first);

    let again = json(&run(cache, &["enumerate", "--sign", "neg", "--max-disc", "400"]));
    assert_eq!(again["results"][0]["action"], "reused");
    assert_eq!(fs::read(&file).unwrap(), first);

    let ext = json(&run(cache, &["enumerate", "--sign", "neg", "--max-disc", "900"]));
    assert_eq!(ext["results"][0]["action"], "extended");
    let extended = String::from_utf8(fs::read(&file).unwrap()).unwrap();
    let body = |s: &str| s.lines().filter(|l| !l.starts_with('#')).map(str::to_string).collect::<Vec<_>>();
    let old = body(&String::from_utf8(first).unwrap());
    assert!(body(&extended).starts_with(&old));
}

#[test]
fn tampered_cache_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(dir.path(), &["enumerate", "--sign", "pos", "--max-disc", "300"]).status.success());
    let file = dir.path().join("classes-pos.csv");
    let text = fs::read_to_string(&file).unwrap();
    let last = text.lines().last().unwrap().to_string();
    fs::write(&file, text.replace(&last, &last.replacen(',', ",9", 2))).unwrap();
    let out = run(dir.path(), &["enumerate", "--sign", "pos", "--max-disc", "300"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn weyl_then_fit() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("w.csv");
    let csv_s = csv.to_str().unwrap();
    let args = ["weyl", "--gamma", "1", "--sign", "neg", "--max-disc", "20000", "--grid", "geometric:100:20000:30", "--out", csv_s];
    let out = run(dir.path(), &["--threads", "2"].iter().chain(&args).copied().collect::<Vec<_>>());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    assert_eq!(r["results"]["points"], 30);
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("# shintani-weyl v1"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#') && !l.starts_with("X,")).count(), 30);

    // the same run against the cache reproduces the file exactly
    assert!(run(dir.path(), &args).status.success());
    assert_eq!(fs::read_to_string(&csv).unwrap(), text);

    let fit = json(&run(dir.path(), &["fit", "--in", csv_s, "--gamma", "1", "--family", "neg"]));
    assert_eq!(fit["results"]["amplitudes"].as_array().unwrap().len(), 4);
    assert!(fit["results"]["free_slope"].as_f64().unwrap().is_finite());
    let mismatch = run(dir.path(), &["fit", "--in", csv_s, "--gamma", "2", "--family", "neg"]);
    assert_eq!(mismatch.status.code(), Some(2));
}

#[test]
fn no_build_requires_a_cache() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("w.csv");
    let out = run(
        dir.path(),
        &["weyl", "--gamma", "1", "--sign", "pos", "--max-disc", "1000", "--grid", "geometric:10:1000:5", "--out", csv.to_str().unwrap(), "--no-build"],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(!csv.exists());
}

#[test]
fn residues_shape_and_eis() {
    let dir = tempfile::tempdir().unwrap();
    let r = json(&run(dir.path(), &["residues", "--gamma", "1"]));
    assert_eq!(r["results"].as_array().unwrap().len(), 8);
    assert_eq!(r["content_hash"].as_str().unwrap().len(), 64);
    let two = json(&run(dir.path(), &["residues", "--gamma", "1", "-2.5", "--convention", "rederived"]));
    assert_eq!(two["results"].as_array().unwrap().len(), 16);

    let s = json(&run(dir.path(), &["shape", "--form", "1,1,-2,-1"]));
    let x = s["results"]["shape_x"].as_f64().unwrap();
    let y = s["results"]["shape_y"].as_f64().unwrap();
    assert!((x + 0.5).abs() < 1e-9 && (y - 0.75f64.sqrt()).abs() < 1e-9, "{s}");

    let e = json(&run(dir.path(), &["eis", "--gamma", "1", "--tau", "0,1"]));
    assert!(e["results"]["tail_bound"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn verify_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ok = run(dir.path(), &["verify", "--suite", "eigenvalue"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["results"].as_array().unwrap().len(), 3);
    // an impossible tolerance turns the same checks into failures
    assert_eq!(run(dir.path(), &["verify", "--suite", "eigenvalue", "--tol", "1e-300"]).status.code(), Some(1));
    assert_eq!(run(dir.path(), &["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["enumerate", "--max-disc", "0"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["eis", "--gamma", "0", "--tau", "0,1"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["frobnicate"]).status.code(), Some(2));
}
