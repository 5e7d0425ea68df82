//! End-to-end tests of the `chronoref` binary: exit codes, output shape,
//! and determinism.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn chronoref(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chronoref"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal exit")
}

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.chrono"))
}

fn temp_file(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("chronoref-cli-test-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn check_mod5_fixture_passes() {
    let output = chronoref(&["check", fixture_path("mod5_k3").to_str().unwrap()]);
    assert_eq!(exit_code(&output), 0, "stderr: {}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("PASS    assert spo concrete"));
    assert!(text.contains("PASS    assert spo abstract"));
    assert!(text.contains("PASS    assert refines concrete abstract"));
    assert!(text.contains("3 claims: 3 passed, 0 failed, 0 vacuous"));
}

#[test]
fn check_broken_fixture_fails_with_witness() {
    let output = chronoref(&["check", fixture_path("broken_embodiment").to_str().unwrap()]);
    assert_eq!(exit_code(&output), 1);
    let text = stdout(&output);
    assert!(text.contains("FAIL"));
    assert!(text.contains("coincidence embodiment"));
    assert!(text.contains("(0, 1)"));
}

#[test]
fn check_reports_spo_breaches_with_witnesses() {
    let path = temp_file("badspo.chrono");
    fs::write(
        &path,
        "universe 2;\nlevel bad {\n  coincide 0 1;\n  precede 0 1;\n};\nassert spo bad;\n",
    )
    .unwrap();
    let output = chronoref(&["check", path.to_str().unwrap(), "--witnesses"]);
    assert_eq!(exit_code(&output), 1);
    let text = stdout(&output);
    assert!(text.contains("1 ordered-coincident class(es), first witness (0, 1)"));
    assert!(text.contains("ordered and coincident: (0, 1)"));
}

#[test]
fn check_empty_file_is_a_parse_error() {
    let path = temp_file("empty.chrono");
    fs::write(&path, "").unwrap();
    let output = chronoref(&["check", path.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("universe missing"));
    assert!(stdout(&output).is_empty());
}

#[test]
fn check_missing_file_is_a_usage_error() {
    let output = chronoref(&["check", "/nonexistent/never.chrono"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("cannot read"));
}

#[test]
fn check_json_emits_the_versioned_schema() {
    let output = chronoref(&["check", fixture_path("light").to_str().unwrap(), "--json"]);
    assert_eq!(exit_code(&output), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(doc["schemaVersion"], 1);
    assert_eq!(doc["summary"]["failed"], 0);
    assert_eq!(doc["claims"][1]["claim"], "subclock");
    assert_eq!(doc["claims"][1]["holds"], true);
}

#[test]
fn check_witnesses_flag_prints_predicate_detail() {
    let output = chronoref(&[
        "check",
        fixture_path("mod5_k3").to_str().unwrap(),
        "--witnesses",
    ]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert!(text.contains("precedence abstraction: holds"));
    assert!(text.contains("coincidence embodiment: holds"));
}

#[test]
fn closure_dumps_sorted_pairs() {
    let output = chronoref(&[
        "closure",
        fixture_path("morning").to_str().unwrap(),
        "--level",
        "morning",
    ]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert!(text.starts_with("level morning: universe 5"));
    // Derived pairs are present in the dump.
    assert!(text.contains("(0, 4)"));
    assert!(text.contains("(4, 2)"));
    assert!(text.contains("(0, 2)"));
}

#[test]
fn closure_of_a_single_instant_level_is_just_the_diagonal() {
    let path = temp_file("single.chrono");
    fs::write(&path, "universe 1;\nlevel l {\n};\n").unwrap();
    let output = chronoref(&["closure", path.to_str().unwrap(), "--level", "l"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert!(text.contains("coincidence (1 pairs):"));
    assert!(text.contains("(0, 0)"));
    assert!(text.contains("precedence (0 pairs):"));
}

#[test]
fn closure_unknown_level_is_a_usage_error() {
    let output = chronoref(&[
        "closure",
        fixture_path("morning").to_str().unwrap(),
        "--level",
        "evening",
    ]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("evening"));
}

#[test]
fn gen_mod5_matches_the_bundled_fixture() {
    let output = chronoref(&["gen-mod5", "--groups", "3"]);
    assert_eq!(exit_code(&output), 0);
    let bundled = fs::read_to_string(fixture_path("mod5_k3")).unwrap();
    assert_eq!(stdout(&output), bundled);
}

#[test]
fn gen_mod5_rejects_zero_groups() {
    let output = chronoref(&["gen-mod5", "--groups", "0"]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn generated_files_pass_their_own_claims() {
    for groups in ["1", "2"] {
        let path = temp_file(&format!("gen{groups}.chrono"));
        let generate = chronoref(&[
            "gen-mod5",
            "--groups",
            groups,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(exit_code(&generate), 0);
        let check = chronoref(&["check", path.to_str().unwrap()]);
        assert_eq!(exit_code(&check), 0, "k={groups}: {}", stdout(&check));
    }
}

#[test]
fn oracle_law_reports_instance_counts() {
    let output = chronoref(&["oracle", "--n", "2", "--law", "reflexivity"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert!(text.contains("law reflexivity n=1: 1 instances, pass"));
    assert!(text.contains("law reflexivity n=2: 4 instances, pass"));

    let output = chronoref(&["oracle", "--n", "2", "--law", "antisymmetry"]);
    assert_eq!(exit_code(&output), 0);
    assert!(stdout(&output).contains("law antisymmetry n=2: 16 instances, pass"));
}

#[test]
fn oracle_requires_exactly_one_mode() {
    let neither = chronoref(&["oracle", "--n", "2"]);
    assert_eq!(exit_code(&neither), 2);
    let both = chronoref(&[
        "oracle",
        "--n",
        "2",
        "--law",
        "reflexivity",
        "--preservation",
        "union",
    ]);
    assert_eq!(exit_code(&both), 2);
}

#[test]
fn oracle_rejects_out_of_range_sizes() {
    let output = chronoref(&["oracle", "--n", "4", "--law", "transitivity"]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn oracle_output_is_deterministic_for_a_seed() {
    let args = [
        "oracle",
        "--n",
        "2",
        "--preservation",
        "union",
        "--samples",
        "300",
        "--seed",
        "9",
    ];
    let first = chronoref(&args);
    let second = chronoref(&args);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(stdout(&first), stdout(&second));
    assert!(stdout(&first).contains("0 violated"));
}

#[test]
fn oracle_json_wraps_reports_with_schema_version() {
    let output = chronoref(&[
        "oracle",
        "--n",
        "2",
        "--preservation",
        "subclock",
        "--samples",
        "50",
        "--json",
    ]);
    assert_eq!(exit_code(&output), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(doc["schemaVersion"], 1);
    assert_eq!(doc["reports"][0]["violated"], 0);
    assert_eq!(doc["reports"][1]["violated"], 0);
}

/// A two-level document (two groups of five, minimal generators) carrying
/// every clock-level claim kind, including a deliberately vacuous one.
const TWO_LEVEL_CLAIMS: &str = "\
universe 10;
level concrete {
  coincide 0 1;
  coincide 5 6;
  precede 1 2;
  precede 2 3;
  precede 3 4;
  precede 4 5;
  precede 6 7;
  precede 7 8;
  precede 8 9;
};
level abstract {
  coincide 0 1;
  coincide 1 2;
  coincide 2 3;
  coincide 3 4;
  coincide 5 6;
  coincide 6 7;
  coincide 7 8;
  coincide 8 9;
  precede 0 5;
};
clock c_conc @ concrete = {1, 6};
clock c_abs @ abstract = {0, 5};
clock c_sub @ concrete = {1};
clock c_sub_abs @ abstract = {0};
clock u0 @ concrete = {1, 2, 6, 7};
clock l0 @ concrete = {1, 6};
clock r0 @ concrete = {2, 7};
clock lone @ concrete = {4};
assert refines concrete abstract;
assert clockrefines c_conc c_abs;
assert preserve-subclock c_sub c_conc c_sub_abs c_abs;
assert preserve-union u0 l0 r0 c_abs;
assert preserve-subclock lone c_conc c_sub_abs c_abs;
";

#[test]
fn clock_refinement_and_preservation_claims_run_end_to_end() {
    let path = temp_file("two_level_claims.chrono");
    fs::write(&path, TWO_LEVEL_CLAIMS).unwrap();
    let output = chronoref(&["check", path.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 0, "stderr: {}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("PASS    assert clockrefines c_conc c_abs"));
    assert!(text.contains("PASS    assert preserve-subclock c_sub c_conc c_sub_abs c_abs"));
    assert!(text.contains("PASS    assert preserve-union u0 l0 r0 c_abs"));
    // The lone tick has no coincident partner in c_conc, so the last claim
    // is vacuous, which does not fail the run.
    assert!(
        text.contains(
            "VACUOUS assert preserve-subclock lone c_conc c_sub_abs c_abs -- hypothesis subclock failed"
        ),
        "{text}"
    );
    assert!(text.contains("5 claims: 4 passed, 0 failed, 1 vacuous"));

    let json = chronoref(&["check", path.to_str().unwrap(), "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(doc["claims"][4]["status"], "vacuous");
    assert_eq!(doc["claims"][4]["failedHypothesis"], "subclock");
    assert_eq!(doc["summary"]["vacuous"], 1);
}

#[test]
fn clockrefines_without_refinement_is_a_reported_error() {
    let source = "\
universe 2;
level a {
};
level b {
  precede 0 1;
};
clock x @ a = {0};
clock y @ b = {0};
assert clockrefines x y;
";
    let path = temp_file("unrefined.chrono");
    fs::write(&path, source).unwrap();
    let output = chronoref(&["check", path.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 1);
    let text = stdout(&output);
    assert!(text.contains("ERROR"));
    assert!(text.contains("refinement"));

    let json = chronoref(&["check", path.to_str().unwrap(), "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert!(doc["claims"][0]["error"].is_string());
    assert_eq!(doc["summary"]["failed"], 1);
}

#[test]
fn json_and_human_outputs_agree_on_verdicts() {
    let path = fixture_path("broken_embodiment");
    let human = chronoref(&["check", path.to_str().unwrap()]);
    let json = chronoref(&["check", path.to_str().unwrap(), "--json"]);
    assert_eq!(exit_code(&human), exit_code(&json));

    let doc: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(doc["summary"]["failed"], 1);
    assert!(stdout(&human).contains("3 claims: 2 passed, 1 failed, 0 vacuous"));
    let witness = &doc["claims"][2]["predicates"][3]["witness"];
    assert_eq!(witness, &serde_json::json!([0, 1]));
}

#[test]
fn light_fixture_write_one_clock_ticks_twice() {
    let emitted = chronoref(&["fixtures", "--emit", "light"]);
    let doc = chronoref_dsl::parse(&stdout(&emitted)).unwrap();
    assert_eq!(doc.clocks["t_x1"].ticks.len(), 2);
}

#[test]
fn fixtures_list_and_emit_round_trip() {
    let list = chronoref(&["fixtures", "--list"]);
    assert_eq!(exit_code(&list), 0);
    for name in ["morning", "light", "mod5_k3", "broken_embodiment"] {
        assert!(stdout(&list).contains(name));
    }

    let emitted = chronoref(&["fixtures", "--emit", "morning"]);
    assert_eq!(exit_code(&emitted), 0);
    let doc = chronoref_dsl::parse(&stdout(&emitted)).unwrap();
    assert_eq!(doc.universe_size, 5);

    let unknown = chronoref(&["fixtures", "--emit", "nothing"]);
    assert_eq!(exit_code(&unknown), 2);
}
