use std::path::PathBuf;
use std::process::{Command, Output};

use cyclekit::serial::{ComplexJson, CycleJson, MapDocument};

fn cyclekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclekit")).args(args).env_remove("CYCLEKIT_BOX_MARGIN").output().unwrap()
}

fn stdout(o: &Output) -> String { String::from_utf8(o.stdout.clone()).unwrap() }

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cyclekit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn mult_on_the_fat_point() {
    let o = cyclekit(&["mult", "--ideal", "z1^2, z1*z2, z2^2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "hilbert_samuel: 4, geometric: 3\n");
}

#[test]
fn koszul_cycle_cancels() {
    let o = cyclekit(&["cycle", "--koszul", "z1^2, z1*z2, z2^2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("H_0:\n  3·[x1, x2]\n"), "{}", text);
    assert!(text.ends_with("total: 0\n"), "{}", text);
}

#[test]
fn filtration_of_the_square_ideal() {
    let o = cyclekit(&["filtration", "--ideal", "x*z, x*w, y*z, y*w"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("prime [x, y]") && text.contains("prime [z, w]"), "{}", text);
    assert!(text.ends_with("replay: PASS\n"));
}

#[test]
fn verify_pl_prints_three_multiplicities() {
    let o = cyclekit(&["verify", "pl", "--tuple", "z1^2,z2^3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "functional: 6\nideal_length: 6\nkoszul_h0: 6\nPASS\n");
}

#[test]
fn verify_signs_passes_and_is_deterministic() {
    let a = cyclekit(&["verify", "signs", "--seed", "7", "--trials", "100"]);
    let b = cyclekit(&["verify", "signs", "--seed", "7", "--trials", "100"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with("PASS\n"));
}

#[test]
fn exit_codes_by_category() {
    assert_eq!(cyclekit(&["mult", "--ideal", ""]).status.code(), Some(2));
    assert_eq!(cyclekit(&["mult", "--ideal", "x1, y"]).status.code(), Some(2));
    // repeated variable: not a complete intersection of the supported shape
    assert_eq!(cyclekit(&["verify", "pl", "--tuple", "x1, x1^2"]).status.code(), Some(3));
    // homology above the requested level
    assert_eq!(cyclekit(&["bigdiagram", "--koszul", "z1, z1", "--level", "0"]).status.code(), Some(3));
    let missing = scratch("absent-dir-marker", "");
    let bad = missing.with_file_name("does-not-exist.json");
    assert_eq!(cyclekit(&["cycle", "--complex", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn json_round_trips_through_files() {
    let o = cyclekit(&["koszul", "--tuple", "z1^2, z1*z2, z2^2", "--format", "json"]);
    assert!(o.status.success());
    let parsed: ComplexJson = serde_json::from_slice(&o.stdout).unwrap();
    parsed.build().unwrap();
    let path = scratch("koszul.json", &stdout(&o));
    let c = cyclekit(&["cycle", "--complex", path.to_str().unwrap(), "--format", "json"]);
    assert!(c.status.success());
    let v: serde_json::Value = serde_json::from_slice(&c.stdout).unwrap();
    let total: CycleJson = serde_json::from_value(v["total"].clone()).unwrap();
    assert!(total.build(2).unwrap().is_zero());
    let level0: CycleJson = serde_json::from_value(v["levels"]["0"].clone()).unwrap();
    assert_eq!(level0.components[0].multiplicity, 3);
}

#[test]
fn lift_then_cone_through_json() {
    let o = cyclekit(&["lift", "--ideal", "x*z, x*w, y*z, y*w", "--step", "1", "--format", "json"]);
    assert!(o.status.success());
    let doc: MapDocument = serde_json::from_slice(&o.stdout).unwrap();
    doc.build().unwrap();
    // keep only level 0 and let the tool extend it again
    let mut only_first = doc.clone();
    only_first.chain_map.blocks.truncate(1);
    let path = scratch("map.json", &serde_json::to_string(&only_first).unwrap());
    let again = cyclekit(&["lift", "--complex", path.to_str().unwrap(), "--format", "json"]);
    assert!(again.status.success());
    let redone: MapDocument = serde_json::from_slice(&again.stdout).unwrap();
    assert_eq!(redone.build().unwrap(), doc.build().unwrap());
    let cone = cyclekit(&["cone", "--complex", path.to_str().unwrap(), "--format", "json"]);
    assert!(cone.status.success());
    let v: serde_json::Value = serde_json::from_slice(&cone.stdout).unwrap();
    assert_eq!(v["chain_map"]["vartheta"]["degree"], -1);
}

#[test]
fn bigdiagram_text() {
    let o = cyclekit(&["bigdiagram", "--koszul", "z1^2, z1*z2, z2^2", "--level", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("F ranks: 0 ") && text.ends_with("rows: PASS\n"), "{}", text);
}

#[test]
fn mult_at_a_prime_and_for_non_artinian_ideals() {
    let o = cyclekit(&["mult", "--ideal", "x*z, x*w, y*z, y*w", "--prime", "x,y"]);
    assert_eq!(stdout(&o), "geometric: 1\n");
    let o = cyclekit(&["mult", "--ideal", "x^2*y^3"]);
    assert_eq!(stdout(&o), "geometric:\n  2·[x]\n  3·[y]\n");
}

#[test]
fn report_runs_every_check() {
    let o = cyclekit(&["report", "--format", "json"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["checks"].as_array().unwrap().len(), 9);
    assert_eq!(v["passed"], true);
}

#[test]
fn text_output_keeps_letter_names() {
    let o = cyclekit(&["lift", "--ideal", "x*z, x*w, y*z, y*w", "--step", "1"]);
    assert!(stdout(&o).starts_with("block 0 (1 × 1):\n  (0, 0) w\n"), "{}", stdout(&o));
    let o = cyclekit(&["koszul", "--tuple", "x^2, x*y"]);
    assert!(stdout(&o).contains("level 2: rank 1 [x^3*y]"), "{}", stdout(&o));
}
