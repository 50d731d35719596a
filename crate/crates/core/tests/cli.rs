//! The `natfull` binary: commands, exit codes, fixtures and reports.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use natfull::cli::fixtures::{emit, file_name, CATALOG};
use natfull::cli::Instance;
use natfull::corings::Coring;
use natfull::exactla::Matrix;
use natfull::modrep::{hom_space, Bimodule, Sides};

fn natfull(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_natfull")).args(args).env_remove("NATFULL_SEED").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8")
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    p.to_str().expect("utf-8 path").to_string()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).expect("write");
    p.to_str().expect("utf-8 path").to_string()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("not JSON ({e}): {}", stdout(o)))
}

fn matrix(field: natfull::exactla::PrimeField, v: &Value) -> Matrix {
    let rows: Vec<Vec<i64>> = serde_json::from_value(v.clone()).expect("matrix rows");
    Matrix::from_rows(field, &rows).expect("rectangular")
}

#[test]
fn fixtures_list_has_seven_entries() {
    let o = natfull(&["fixtures", "list"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 7);
}

#[test]
fn shipped_fixtures_match_the_catalog_and_validate() {
    for f in &CATALOG {
        let path = fixture(&file_name(f.id));
        let shipped = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
        assert_eq!(shipped.trim_end(), emit(f.id, None, None).unwrap().to_json().unwrap(), "{} is stale", f.id);
        let o = natfull(&["validate", &path]);
        assert!(o.status.success(), "{}: {}", f.id, stderr(&o));
        assert!(stdout(&o).contains("valid"));
    }
}

#[test]
fn emit_triangular_over_f3() {
    let o = natfull(&["fixtures", "emit", "FIX-TRI", "--p", "3"]);
    assert!(o.status.success());
    let inst = Instance::parse(&stdout(&o)).unwrap();
    assert_eq!(inst.p(), 3);
    assert!(inst.algebras.values().any(|a| a.dim() == 3));
}

#[test]
fn emitted_fixtures_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    for f in &CATALOG {
        let path = dir.path().join(file_name(f.id));
        let o = natfull(&["fixtures", "emit", f.id, "--out", path.to_str().unwrap()]);
        assert!(o.status.success());
        assert!(natfull(&["validate", path.to_str().unwrap()]).status.success());
    }
}

#[test]
fn truncated_file_fails_to_parse() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("fix_proj.json")).unwrap();
    let path = write_temp(&dir, "cut.json", &text[..text.len() / 2]);
    let o = natfull(&["validate", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("malformed input"), "{}", stderr(&o));
}

#[test]
fn non_multiplicative_map_is_a_validation_error_naming_the_pair() {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"{"version": "natfull/1", "p": 2,
        "algebras": {"R": {"dim": 2, "mul": [[[1,0],[0,0]],[[0,0],[0,1]]], "unit": [1,1]},
                     "S": {"dim": 1, "mul": [[[1]]], "unit": [1]}},
        "morphisms": {"sum": {"source": "R", "target": "S", "matrix": [[1,1]]}}}"#;
    let path = write_temp(&dir, "bad.json", text);
    let o = natfull(&["validate", &path]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("multiplicativity") && err.contains("(e_0, e_1)") && err.contains("morphisms.sum"), "{err}");
    assert_eq!(natfull(&["analyze", "scalars", "--morphism", &path]).status.code(), Some(1));
}

#[test]
fn f4_restriction_text_names_the_kernel() {
    let o = natfull(&["analyze", "scalars", "--morphism", &fixture("fix_f4.json")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("not full: ker ε_S has dim 2"), "{}", stdout(&o));
}

#[test]
fn triangular_extension_text() {
    let o = natfull(&["analyze", "scalars", "--morphism", &fixture("fix_tri.json")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("extension: full on family; naturally full: NO (section system infeasible)"), "{}", stdout(&o));
}

#[test]
fn every_condition_in_a_report_names_its_criterion() {
    let o = natfull(&["analyze", "scalars", "--morphism", &fixture("fix_f4.json"), "--json"]);
    let v = json(&o);
    for side in ["restriction", "extension"] {
        let conds = v["report"][side]["conditions"].as_array().unwrap();
        assert!(!conds.is_empty());
        for c in conds {
            assert!(c["criterion"].as_str().is_some_and(|s| !s.is_empty()));
        }
    }
}

#[test]
fn extension_witness_reverifies_from_json() {
    let inst = Instance::parse(&std::fs::read_to_string(fixture("fix_proj.json")).unwrap()).unwrap();
    let phi = &inst.morphisms["phi"];
    let o = natfull(&["analyze", "scalars", "--morphism", &fixture("fix_proj.json"), "--json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["format"], "natfull/1");
    let e = matrix(inst.field, &v["report"]["extension"]["witness_section"]);
    assert_eq!(phi.matrix.matmul(&e), Matrix::identity(inst.field, phi.target.dim()));
    let s_rr = Bimodule::regular(&phi.target).restrict(Some(phi), Some(phi)).unwrap();
    assert!(hom_space(&s_rr, &Bimodule::regular(&phi.source), Sides::Both).unwrap().contains(&e));
}

#[test]
fn coring_witness_reverifies_from_json() {
    let inst = Instance::parse(&std::fs::read_to_string(fixture("fix_swe.json")).unwrap()).unwrap();
    let c: &Coring = &inst.corings["sweedler"];
    let o = natfull(&["analyze", "coring", "--coring", &fixture("fix_swe.json"), "--id", "sweedler", "--json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = json(&o);
    let z: Vec<u32> = serde_json::from_value(v["report"]["cotensor"]["witness_z"].clone()).expect("witness z present");
    for i in 0..c.dim() {
        let ci = inst.field.unit_vector(c.dim(), i);
        let eps = c.epsilon().mul_vec(&ci);
        assert_eq!(c.carrier().act_left(&eps).mul_vec(&z), ci, "c = ε(c) z fails at c_{i}");
    }
}

#[test]
fn coring_morphism_and_bimodule_analyzers_run() {
    let o = natfull(&["analyze", "coring-morphism", "--input", &fixture("fix_swe.json")]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("induction −⊗_R S: naturally full: YES"));
    let o = natfull(&["analyze", "bimodule", "--bimodule", &fixture("fix_mat2.json"), "--json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(json(&o)["report"]["coinduction"]["naturally_full"], false);
}

#[test]
fn ambiguous_id_is_reported() {
    let o = natfull(&["analyze", "coring", "--coring", &fixture("fix_swe.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--id"));
}

#[test]
fn custom_family_is_checked_per_object() {
    let dir = tempfile::tempdir().unwrap();
    let tri = Instance::parse(&std::fs::read_to_string(fixture("fix_tri.json")).unwrap()).unwrap();
    let phi = &tri.morphisms["phi"];
    let mut b = natfull::cli::instance::Builder::new(2, "family");
    b.bimodule("regular", &Bimodule::left_regular(&phi.source));
    let path = write_temp(&dir, "family.json", &b.finish().to_json().unwrap());
    let o = natfull(&["analyze", "scalars", "--morphism", &fixture("fix_tri.json"), "--family", &path]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("extension on regular: full"), "{}", stdout(&o));
}

#[test]
fn suite_runs_clean_and_honours_the_seed_variable() {
    let o = natfull(&["suite", "run", "--count", "3", "--maxdim", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("no violations"));
    let o = Command::new(env!("CARGO_BIN_EXE_natfull"))
        .args(["suite", "run", "--count", "1", "--kind", "scalars", "--json", "-"])
        .env("NATFULL_SEED", "77")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(json(&o)["config"]["seed"], 77);
}

#[test]
fn suite_rejects_a_non_prime() {
    assert_eq!(natfull(&["suite", "run", "--count", "1", "--p", "4"]).status.code(), Some(1));
}

#[test]
fn suite_writes_json_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("suite.json");
    let o = natfull(&["suite", "run", "--count", "2", "--kind", "corings", "--json", path.to_str().unwrap()]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["instances"].as_array().unwrap().len(), 2);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(natfull(&["analyze"]).status.code(), Some(2));
    assert_eq!(natfull(&["frobnicate"]).status.code(), Some(2));
}
