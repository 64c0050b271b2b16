use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use magbrauer_core::gradalg::{BaseField, GradedAlgebra, TenfoldClass};
use magbrauer_core::magrep::{example_chiral, example_quaternionic};
use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_magbrauer"));
    c.env_remove("MAGBRAUER_CACHE");
    c
}

fn run(cache: &Path, args: &[&str]) -> Output {
    bin().arg("--cache-dir").arg(cache).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(cache: &Path, args: &[&str]) -> String {
    let o = run(cache, args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn json(cache: &Path, args: &[&str]) -> Value {
    let mut a = vec!["--format", "json"];
    a.extend_from_slice(args);
    serde_json::from_str(&ok(cache, &a)).unwrap()
}

fn schema(name: &str) -> jsonschema::Validator {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    let s: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
    jsonschema::validator_for(&s).unwrap()
}

fn assert_valid(name: &str, v: &Value) {
    let errs: Vec<String> = schema(name).iter_errors(v).map(|e| e.to_string()).collect();
    assert!(errs.is_empty(), "{name}: {errs:?}\n{v}");
}

fn write_json(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p
}

fn first_line(s: &str) -> &str {
    s.lines().next().unwrap_or("")
}

#[test]
fn grbr_examples() {
    let d = TempDir::new().unwrap();
    assert_eq!(first_line(&ok(d.path(), &["grbr", "--group", "cyclic:2", "--phi", "mod2"])), "Z/8");
    assert_eq!(first_line(&ok(d.path(), &["grbr", "--group", "cyclic:8", "--phi", "mod2"])), "Z/2 x Z/4");
    assert_eq!(first_line(&ok(d.path(), &["grbr", "cyclic:2", "id"])), "Z/8");
    assert_eq!(first_line(&ok(d.path(), &["grbr-prime", "cyclic:2", "id"])), "Z/4");
    assert_eq!(first_line(&ok(d.path(), &["grbr-prime", "--double", "cyclic:2", "id"])), "Z/2");
}

#[test]
fn parse_errors_exit_2_with_position() {
    let d = TempDir::new().unwrap();
    let o = run(d.path(), &["grbr", "--group", "cyclic:", "--phi", "mod2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 7"));
    let o = run(d.path(), &["cohomology", "cyclic:2", "id", "Zq", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(d.path(), &["grbr", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn budget_exceeded_exits_3() {
    let d = TempDir::new().unwrap();
    let o = run(d.path(), &["--budget", "10", "grbr", "cyclic:8", "mod2"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn domain_errors_exit_4() {
    let d = TempDir::new().unwrap();
    let m2 = write_json(d.path(), "m2.json", &GradedAlgebra::matrix_algebra(BaseField::Q, 1, 1).to_json());
    let o = run(d.path(), &["tenfold", m2.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    let o = run(d.path(), &["grbr", "cyclic:3", "trivial"]);
    assert_eq!(o.status.code(), Some(4));
    let o = run(d.path(), &["az", "--t", "0", "--c", "0", "--s", "2"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn periodicity_az_and_cohomology_examples() {
    let d = TempDir::new().unwrap();
    assert_eq!(ok(d.path(), &["periodicity", "cyclic:4", "mod2"]), "4-periodic: true\n");
    assert_eq!(ok(d.path(), &["periodicity", "cyclic:2", "id"]), "4-periodic: false\n");
    assert_eq!(ok(d.path(), &["az", "--t", "+1", "--c", "0", "--s", "0"]), "AI\n");
    assert_eq!(ok(d.path(), &["az", "--t", "-1", "--c", "0", "--s", "0"]), "AII\n");
    assert_eq!(ok(d.path(), &["az", "--s", "1"]), "AIII\n");
    assert_eq!(ok(d.path(), &["cohomology", "cyclic:2", "id", "Zt", "3"]), "Z/2\n");
    assert_eq!(ok(d.path(), &["cohomology", "--group", "cyclic:4", "--model", "Z", "--degree", "2"]), "Z/4\n");
    assert_eq!(ok(d.path(), &["clifford-class", "0", "8"]), "0 (R0, AI)\n");
    assert_eq!(first_line(&ok(d.path(), &["riehm", "cyclic:4", "--field", "R"])), "Z/2 x Z/2 x Z/8");
}

#[test]
fn az_from_hamiltonian_file() {
    let d = TempDir::new().unwrap();
    let h = write_json(d.path(), "h.json", &serde_json::json!([[[1.0, 0.0], [0.5, 0.0]], [[0.5, 0.0], [-1.0, 0.0]]]));
    let ut = write_json(d.path(), "ut.json", &serde_json::json!([["1", "0"], ["0", "1"]]));
    let out = ok(d.path(), &["az", "--hamiltonian", h.to_str().unwrap(), "--ut", ut.to_str().unwrap()]);
    assert_eq!(out, "AI\n");
}

#[test]
fn tenfold_on_division_algebras() {
    let d = TempDir::new().unwrap();
    for c in TenfoldClass::ALL {
        let p = write_json(d.path(), &format!("{}.json", c.tag()), &c.division_algebra().to_json());
        let out = ok(d.path(), &["tenfold", p.to_str().unwrap()]);
        assert_eq!(out, format!("{} ({})\n", c.tag(), c.az_label()));
    }
}

#[test]
fn rep_subcommands() {
    let d = TempDir::new().unwrap();
    let q = write_json(d.path(), "q.json", &example_quaternionic().to_json());
    let q = q.to_str().unwrap();
    let base = ["--group", "cyclic:4", "--phi", "mod2"];
    let with = |verb: &str| {
        let mut a = vec!["rep", verb, q];
        a.extend_from_slice(&base);
        ok(d.path(), &a)
    };
    assert_eq!(with("verify"), "strict: true\n");
    assert!(with("cocycle").contains("trivial: true"));
    assert!(with("trivialize").starts_with("trivial: true"));
    assert_eq!(with("commutant"), "real dimension: 4\ntype: H\n");
    assert_eq!(with("dyson"), "H\n");

    // the same matrix on (Z/2, id) is projective with a nontrivial class
    let p = write_json(d.path(), "p.json", &serde_json::json!({"N": 4, "dim": 2, "matrices": {"1": [["0", "1"], ["-1", "0"]]}}));
    let p = p.to_str().unwrap();
    let out = ok(d.path(), &["rep", "verify", p, "--group", "cyclic:2", "--phi", "id"]);
    assert_eq!(out, "strict: false (witness: 1, 1)\n");
    let out = ok(d.path(), &["rep", "cocycle", p, "--group", "cyclic:2", "--phi", "id"]);
    assert!(out.contains("tau(1, 1) = exp(2 pi i 1/2)"), "{out}");
    let out = ok(d.path(), &["rep", "trivialize", p, "--group", "cyclic:2", "--phi", "id"]);
    assert!(out.starts_with("trivial: false"), "{out}");

    let ch = write_json(d.path(), "ch.json", &example_chiral().to_json());
    let out = ok(d.path(), &["rep", "dyson", ch.to_str().unwrap(), "--group", "cyclic:2"]);
    assert_eq!(out, "C1 (AIII)\n");
}

#[test]
fn json_outputs_match_schemas() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    assert_valid("grbr", &json(p, &["grbr", "cyclic:4", "mod2"]));
    assert_valid("grbr", &json(p, &["grbr-prime", "cyclic:4", "mod2"]));
    assert_valid("riehm", &json(p, &["riehm", "cyclic:2", "--field", "C"]));
    assert_valid("cohomology", &json(p, &["cohomology", "cyclic:2", "id", "Q/Zt", "2"]));
    assert_valid("periodicity", &json(p, &["periodicity", "cyclic:6", "mod2"]));
    assert_valid("class", &json(p, &["az", "--t", "1", "--c", "-1", "--s", "1"]));
    assert_valid("class", &json(p, &["clifford-class", "3", "0"]));
    let q = write_json(p, "q.json", &example_quaternionic().to_json());
    for verb in ["verify", "cocycle", "trivialize", "commutant", "dyson"] {
        let v = json(p, &["rep", verb, q.to_str().unwrap(), "--group", "cyclic:4", "--phi", "mod2"]);
        assert_valid("rep", &v);
    }
    assert_valid("cache", &json(p, &["cache", "inspect"]));
    assert_valid("cache", &json(p, &["cache", "clear"]));
    let bad = serde_json::json!({"command": "grbr", "order": 0});
    assert!(!schema("grbr").is_valid(&bad));
}

fn without_cached(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("cached");
    v
}

#[test]
fn warm_cache_gives_identical_output() {
    let d = TempDir::new().unwrap();
    let args = ["grbr", "product(cyclic:2, cyclic:2)", "proj2"];
    let cold = json(d.path(), &args);
    let warm = json(d.path(), &args);
    assert_eq!(cold["cached"], false);
    assert_eq!(warm["cached"], true);
    assert_eq!(
        serde_json::to_string(&without_cached(cold)).unwrap(),
        serde_json::to_string(&without_cached(warm)).unwrap()
    );
    let c1 = ok(d.path(), &["cohomology", "dihedral:3", "trivial", "Z", "3"]);
    let c2 = ok(d.path(), &["cohomology", "dihedral:3", "trivial", "Z", "3"]);
    assert_eq!(c1, c2);
    assert!(ok(d.path(), &["cache", "inspect"]).contains("H^3(6 elements, Z)"));
}

#[test]
fn stale_or_tampered_entries_are_recomputed() {
    let d = TempDir::new().unwrap();
    let args = ["periodicity", "cyclic:4", "mod2"];
    json(d.path(), &args);
    let entry = std::fs::read_dir(d.path()).unwrap().flatten().find(|e| e.file_name().to_string_lossy().ends_with(".json")).unwrap().path();
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&entry).unwrap()).unwrap();
    v["engine_version"] = Value::String("0.0.0-old".into());
    std::fs::write(&entry, v.to_string()).unwrap();
    assert_eq!(json(d.path(), &args)["cached"], false);
    assert_eq!(json(d.path(), &args)["cached"], true);

    std::fs::write(&entry, "not json").unwrap();
    let again = json(d.path(), &args);
    assert_eq!(again["cached"], false);
    assert_eq!(again["four_periodic"], true);
}

#[test]
fn cache_dir_from_environment_and_clear() {
    let d = TempDir::new().unwrap();
    let o = bin().env("MAGBRAUER_CACHE", d.path()).args(["grbr", "cyclic:2", "id"]).output().unwrap();
    assert!(o.status.success());
    let n = std::fs::read_dir(d.path()).unwrap().count();
    assert_eq!(n, 1);
    assert_eq!(ok(d.path(), &["cache", "clear"]), "removed 1 entries\n");
    assert_eq!(std::fs::read_dir(d.path()).unwrap().count(), 0);
}

#[test]
fn concurrent_invocations_share_the_cache() {
    let d = TempDir::new().unwrap();
    let children: Vec<_> = (0..6)
        .map(|_| {
            bin()
                .arg("--cache-dir")
                .arg(d.path())
                .args(["--format", "json", "grbr", "dihedral:4", "values:[0,0,0,0,1,1,1,1]"])
                .stdout(std::process::Stdio::piped())
                .spawn()
                .unwrap()
        })
        .collect();
    let outs: Vec<Value> = children
        .into_iter()
        .map(|c| {
            let o = c.wait_with_output().unwrap();
            assert!(o.status.success());
            without_cached(serde_json::from_slice(&o.stdout).unwrap())
        })
        .collect();
    assert!(outs.windows(2).all(|w| w[0] == w[1]));
    let leftovers = std::fs::read_dir(d.path()).unwrap().flatten().filter(|e| e.file_name().to_string_lossy().ends_with(".tmp")).count();
    assert_eq!(leftovers, 0);
    assert_eq!(json(d.path(), &["grbr", "dihedral:4", "values:[0,0,0,0,1,1,1,1]"])["cached"], true);
}

#[test]
fn jobs_do_not_change_results() {
    let d = TempDir::new().unwrap();
    let a = json(d.path(), &["grbr", "cyclic:8", "mod2"]);
    let b = json(d.path(), &["--jobs", "4", "grbr", "cyclic:8", "mod2"]);
    assert_eq!(without_cached(a), without_cached(b));
}
