use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn config(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "configs", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_motcalc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let o = run(&all);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (o.status.code().unwrap(), v)
}

#[test]
fn schur_weyl_and_dimensions() {
    let o = run(&["schur-weyl", "--n", "2", "--r", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "5");
    let (code, v) = json(&["schur-weyl", "--n", "2", "--r", "4", "--check"]);
    assert_eq!(code, 0);
    assert_eq!(v["dim"], "14");
    assert_eq!(v["quotient_dim"], 14);
    let (_, v) = json(&["homdim", "--gens", "N:-2", "--src", "N,N,N", "--dst", "N,N,N"]);
    assert_eq!(v["dim"], 6);
    let (_, v) = json(&["homdim", "--src", "N", "--dst", "N,N"]);
    assert_eq!(v["dim"], 0);
    let (_, v) = json(&["rank", "--gens", "N:-2", "--kind", "sym", "--r", "3"]);
    assert_eq!(v["rank"], "0");
    let (_, v) = json(&["radical", "--gens", "N:-2", "--word", "N,N,N"]);
    assert_eq!(
        (v["ambient_dim"].as_u64(), v["radical_dim"].as_u64()),
        (Some(6), Some(1))
    );
}

#[test]
fn identity_families_pass() {
    let o = run(&["identities", "--which", "incl-excl", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| l.ends_with("pass")));
    for which in ["pfaffian", "cayley-hamilton", "poscontr", "diagpull", "duality"] {
        let (code, v) = json(&["identities", "--which", which]);
        assert_eq!(code, 0, "{which}: {v}");
        assert_eq!(v["pass"], true);
    }
    let (code, v) = json(&["hopf-check", "--g", "1", "--deg", "3"]);
    assert_eq!(code, 0);
    assert!(v["checks"].as_array().unwrap().len() > 5);
}

#[test]
fn symdist_verdicts_and_exit_codes() {
    let cfg = config("g1def.json");
    let (code, v) = json(&["symdist", "test", "--config", &cfg, "--alpha", "h+eps", "--mmax", "4"]);
    assert_eq!(code, 1);
    assert_eq!(v["injective"], false);
    assert_eq!(v["fail_at_m"], 1);
    assert_eq!(v["theoretical_bound"], 5);
    assert!(v["witness"].is_string());
    assert_eq!(v["schema"], "motcalc/1");

    let (code, v) = json(&["symdist", "test", "--config", &cfg, "--alpha", "h", "--mmax", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["injective"], true);
    assert!(v["fail_at_m"].is_null());

    let (code, v) = json(&["symdist", "lift", "--config", &cfg, "--alpha", "h", "--mmax", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["lift"], "m=1 p=1 num=(0,1):1/1 eps:0");

    let (code, v) = json(&["symdist", "probe", "--config", &cfg, "--alpha", "h", "--mmax", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["survivors"], 0);
    assert_eq!(v["results"].as_array().unwrap().len(), 6);
}

#[test]
fn parse_errors_exit_2() {
    let cfg = config("g1def.json");
    for alpha in ["h+", "h $ 1", "foo", "h+1"] {
        let o = run(&["symdist", "test", "--config", &cfg, "--alpha", alpha]);
        assert_eq!(o.status.code(), Some(2), "{alpha}");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(
        run(&["symdist", "test", "--config", "/nonexistent.json", "--alpha", "h"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["schur-weyl", "--n", "2", "--r", "3", "--bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["homdim", "--gens", "N:x", "--src", "N", "--dst", "N"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["symdist", "test", "--config", &cfg, "--alpha", "h", "--mmax", "9"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn chow_axioms_and_determinism() {
    let args = [
        "chow-axioms",
        "--config",
        "{\"g\":1,\"mode\":\"deformed\",\"s\":2}",
        "--mmax",
        "2",
        "--tuples",
        "10",
        "--seed",
        "9",
        "--json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 9);
    assert_eq!(v["pass"], true);
    let o = run(&["chow-axioms", "--config", &config("g1num.json"), "--tuples", "5"]);
    assert_eq!(o.status.code(), Some(0));
}
