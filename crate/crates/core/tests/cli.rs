use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cohastab::fixloc::enumerate_fixed_points;
use cohastab::quiver::{DimVec, Quiver};
use cohastab::stab::{Chamber, Decomposition};
use cohastab::symalg::parse_ratfun;

fn cohastab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohastab"))
        .args(args)
        .env_remove("COHASTAB_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_a1(dir: &Path) -> PathBuf {
    let path = dir.join("a1.json");
    std::fs::write(&path, r#"{"vertices": [1], "arrows": []}"#).unwrap();
    path
}

fn entries(dir: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    for shard in std::fs::read_dir(dir).unwrap() {
        for e in std::fs::read_dir(shard.unwrap().path()).unwrap() {
            out.push(e.unwrap().path());
        }
    }
    out.sort();
    out
}

fn stab_args<'a>(quiver: &'a str, cache: &'a str, sign: &'a str) -> Vec<&'a str> {
    vec![
        "stab", "--quiver", quiver, "--w", "1,1", "--chamber", "1,2", "--component", "1,0", "--cache-dir", cache,
        "--h-sign", sign,
    ]
}

#[test]
fn h_sign_flips_h_and_keys_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let a1 = write_a1(dir.path());
    let cache = dir.path().join("cache");
    let (q, c) = (a1.to_str().unwrap(), cache.to_str().unwrap());

    let plus = cohastab(&stab_args(q, c, "+"));
    let minus = cohastab(&stab_args(q, c, "-"));
    assert!(plus.status.success() && minus.status.success());
    let plus = parse_ratfun(stdout(&plus).trim()).unwrap();
    let minus = parse_ratfun(stdout(&minus).trim()).unwrap();
    assert_eq!(plus, parse_ratfun("s(1,1) - a(1,2) + h").unwrap());
    assert_eq!(minus, parse_ratfun("s(1,1) - a(1,2) - h").unwrap());
    assert_eq!(entries(&cache).len(), 2);

    let again = cohastab(&stab_args(q, c, "-"));
    assert_eq!(parse_ratfun(stdout(&again).trim()).unwrap(), minus);
    assert_eq!(entries(&cache).len(), 2);
}

#[test]
fn corrupted_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let a1 = write_a1(dir.path());
    let cache = dir.path().join("cache");
    let args = stab_args(a1.to_str().unwrap(), cache.to_str().unwrap(), "+");

    let fresh = stdout(&cohastab(&args));
    let [entry] = entries(&cache).try_into().unwrap();
    let raw = std::fs::read_to_string(&entry).unwrap();
    std::fs::write(&entry, raw.replace("a(1,2)", "a(1,1)")).unwrap();

    let out = cohastab(&args);
    assert!(out.status.success());
    assert_eq!(stdout(&out), fresh);
    assert!(String::from_utf8_lossy(&out.stderr).contains("corrupted"));
    assert_eq!(std::fs::read_to_string(&entry).unwrap(), raw);
}

#[test]
fn environment_overrides_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let a1 = write_a1(dir.path());
    let flag = dir.path().join("flag");
    let env = dir.path().join("env");
    let out = Command::new(env!("CARGO_BIN_EXE_cohastab"))
        .args(stab_args(a1.to_str().unwrap(), flag.to_str().unwrap(), "+"))
        .env("COHASTAB_CACHE_DIR", &env)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(!flag.exists());
    assert_eq!(entries(&env).len(), 1);
}

#[test]
fn no_cache_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let a1 = write_a1(dir.path());
    let cache = dir.path().join("cache");
    let mut args = stab_args(a1.to_str().unwrap(), cache.to_str().unwrap(), "+");
    args.push("--no-cache");
    assert!(cohastab(&args).status.success());
    assert!(!cache.exists());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let a1 = write_a1(dir.path());
    let q = a1.to_str().unwrap();
    let code = |args: &[&str]| cohastab(args).status.code();

    assert_eq!(code(&["verify-axioms", "--quiver", q, "--v", "1", "--w", "1,1"]), Some(0));
    assert_eq!(
        code(&[
            "verify-axioms", "--quiver", q, "--v", "1", "--w", "1,1", "--perturb", "h", "--perturb-component", "1,0",
        ]),
        Some(1)
    );
    assert_eq!(code(&["mul", "--quiver", q, "--left", "s(1,1@(1,0)", "--right", "1@(1,0)"]), Some(2));
    assert_eq!(code(&["mul", "--quiver", q, "--left", "s(1,2)@(1,0)", "--right", "1@(1,0)"]), Some(2));
    assert_eq!(code(&["stab", "--quiver", "/nonexistent.json", "--w", "1", "--component", "1"]), Some(2));
    assert_eq!(code(&["ybe", "--quiver", q, "--v", "1", "--w", "1,1"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn output_file_and_file_operands() {
    let dir = tempfile::tempdir().unwrap();
    let a1 = write_a1(dir.path());
    let operand = dir.path().join("f.txt");
    std::fs::write(&operand, "s(1,1)^2 + h\n").unwrap();
    let target = dir.path().join("out.txt");
    let left = format!("file:{}@(1,0)", operand.display());
    let out = cohastab(&[
        "mul", "--quiver", a1.to_str().unwrap(), "--left", &left, "--right", "1@(1,0)", "-o",
        target.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&target).unwrap();
    let direct = cohastab(&["mul", "--quiver", a1.to_str().unwrap(), "--left", "s(1,1)^2 + h@(1,0)", "--right", "1@(1,0)"]);
    assert_eq!(written, stdout(&direct));
}

#[test]
fn table_input_matches_built_in_fixed_points() {
    let dir = tempfile::tempdir().unwrap();
    let a1 = write_a1(dir.path());
    let q = a1.to_str().unwrap();
    let table = enumerate_fixed_points(
        &Quiver::a1(),
        &DimVec(vec![1]),
        &Decomposition::unit_framings(&[0, 0, 0]).unwrap(),
        &Chamber::identity(3),
    )
    .unwrap();
    let path = dir.path().join("table.json");
    std::fs::write(&path, table.to_json()).unwrap();

    let from_table = cohastab(&["restrict", "--quiver", q, "--table", path.to_str().unwrap(), "--component", "0,1,0"]);
    let built_in = cohastab(&["restrict", "--quiver", q, "--v", "1", "--w", "1,1,1", "--component", "0,1,0"]);
    assert!(from_table.status.success(), "{}", String::from_utf8_lossy(&from_table.stderr));
    assert_eq!(stdout(&from_table), stdout(&built_in));

    let axioms = cohastab(&["verify-axioms", "--quiver", q, "--table", path.to_str().unwrap()]);
    assert_eq!(axioms.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&axioms.stdout).unwrap();
    assert_eq!(report.as_array().unwrap().len(), 1);
}
