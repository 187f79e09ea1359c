use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn bock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bock")).args(args).output().expect("bock runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

struct Files(TempDir);

impl Files {
    fn new() -> Files {
        Files(tempfile::tempdir().unwrap())
    }

    fn write(&self, name: &str, text: &str) -> String {
        let path: PathBuf = self.0.path().join(name);
        fs::write(&path, text).unwrap();
        path.to_str().unwrap().to_string()
    }
}

const ONES: &str = r#"{"q":1,"zp":{"default":1},"zpinf":{"default":1},"loc":{"default":1}}"#;
const ZERO: &str = r#"{"q":0,"zp":{"default":0},"zpinf":{"default":0},"loc":{"default":0}}"#;
const FORCED: &str = r#"{"q":1,"zp":{"default":1,"overrides":{"2":2}},"zpinf":{"default":1,"overrides":{"2":2}},"loc":{"default":1,"overrides":{"2":2}}}"#;
const TWO_AT_2: &str = r#"{"q":1,"zp":{"default":1,"overrides":{"2":2}},"zpinf":{"default":1},"loc":{"default":1,"overrides":{"2":2}}}"#;
const Z: &str = r#"{"type":"abelian","atoms":[{"kind":"Z"}]}"#;
const TRIVIAL: &str = r#"{"type":"abelian","atoms":[]}"#;

#[test]
fn sigma_of_catalog_entry() {
    let o = bock(&["sigma", "--catalog", "quaternion8"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "Q: no | Z_(p): {} | Z/p: {2} | Z/p^inf: {2}\n");
}

#[test]
fn sigma_of_files() {
    let f = Files::new();
    let o = bock(&["sigma", &f.write("z.json", Z)]);
    assert_eq!(stdout(&o), "Q: yes | Z_(p): all primes | Z/p: all primes | Z/p^inf: all primes\n");
    let o = bock(&["sigma", &f.write("trivial.json", TRIVIAL)]);
    assert_eq!(stdout(&o), "Q: no | Z_(p): {} | Z/p: {} | Z/p^inf: {}\n");
    let o = bock(&["sigma", "--json", &f.write("q8.json", r#"{"type":"finite","name":"Q8"}"#)]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["has_q"], false);
}

#[test]
fn sigma_errors() {
    let f = Files::new();
    assert_eq!(code(&bock(&["sigma", &f.write("bad.json", "{nope")])), 1);
    assert_eq!(code(&bock(&["sigma", "/no/such/file.json"])), 1);
    assert_eq!(code(&bock(&["sigma", "--catalog", "nosuch"])), 1);
    assert_eq!(code(&bock(&["sigma"])), 1);
    let unwitnessed = format!(r#"{{"type":"tower","layers":[{Z},{Z}],"ab":{Z},"witnessed":false}}"#);
    let o = bock(&["sigma", &f.write("tower.json", &unwitnessed)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not witnessed"));
    assert_eq!(code(&bock(&["sigma", "--catalog", "symmetric3"])), 2);
}

#[test]
fn dim_values() {
    let f = Files::new();
    let ones = f.write("ones.json", ONES);
    let o = bock(&["dim", &ones, &f.write("z.json", Z)]);
    assert_eq!((code(&o), stdout(&o)), (0, "1\n".to_string()));
    let o = bock(&["dim", &ones, &f.write("trivial.json", TRIVIAL)]);
    assert_eq!(stdout(&o), "0\n");
    let o = bock(&["dim", "--le1", &f.write("two.json", TWO_AT_2), &f.write("ut.json", r#"{"type":"finite","name":"ut3_mod(2,1)"}"#)]);
    assert_eq!((code(&o), stdout(&o)), (0, "false\n".to_string()));
}

#[test]
fn dim_refuses_invalid_profiles_and_non_abelian_groups() {
    let f = Files::new();
    let o = bock(&["dim", &f.write("forced.json", FORCED), &f.write("z.json", Z)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("R4 at p=2: expected loc=3"));
    let o = bock(&["dim", &f.write("ones.json", ONES), &f.write("q8.json", r#"{"type":"finite","name":"Q8"}"#)]);
    assert_eq!(code(&o), 1);
}

#[test]
fn validate_profile_outcomes() {
    let f = Files::new();
    let o = bock(&["validate-profile", &f.write("zero.json", ZERO)]);
    assert_eq!((code(&o), stdout(&o)), (0, "valid\n".to_string()));
    let o = bock(&["validate-profile", &f.write("forced.json", FORCED)]);
    assert_eq!((code(&o), stdout(&o)), (2, "R4 at p=2: expected loc=3\n".to_string()));
    assert_eq!(code(&bock(&["validate-profile", &f.write("bad.json", r#"{"q":1}"#)])), 1);
}

#[test]
fn verify_suites() {
    let o = bock(&["verify", "--suite", "sigma-union", "--trials", "100", "--seed", "7"]);
    assert_eq!((code(&o), stdout(&o)), (0, "PASS 100/100 sigma-union seed=7\n".to_string()));
    let o = bock(&["verify", "--suite", "def-consistency", "--trials", "200", "--seed", "1"]);
    assert!(stdout(&o).starts_with("PASS 200/200"));
    let o = bock(&["verify", "--suite", "nosuch"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("zl-zhat"));
}

#[test]
fn verify_json_report() {
    let o = bock(&["verify", "--suite", "zl-zhat", "--trials", "30", "--seed", "4", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suite"], "zl-zhat");
    assert_eq!(v["instances"], 30);
    assert_eq!(v["seed"], 4);
    assert!(v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn full_verify_is_deterministic() {
    let a = bock(&["verify", "--seed", "5"]);
    let b = bock(&["verify", "--seed", "5"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 9);
}

#[test]
fn catalog_listing() {
    let o = bock(&["catalog"]);
    let text = stdout(&o);
    assert!(text.contains("quaternion8 (order 8, class 2,"));
    assert!(text.contains("cyclic(n) (template)"));
    assert!(text.contains("heisenberg_ring(Z) (tower, class 2,"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&bock(&[])), 1);
    assert_eq!(code(&bock(&["frobnicate"])), 1);
    assert_eq!(code(&bock(&["verify", "--trials", "many"])), 1);
    assert_eq!(code(&bock(&["--help"])), 0);
}
