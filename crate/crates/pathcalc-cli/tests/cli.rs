//! End-to-end behaviour of the `pathcalc` binary: outputs, exit codes,
//! NDJSON mode, stdin payloads and determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pathcalc"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    format!("@{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn interval_integral_of_p() {
    let o = run(&["integrate", "--interval", "--fn", "{p̲:1}"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "624/λ_p");
}

#[test]
fn interval_integral_of_a_torsion_character_is_its_length_times_the_value() {
    // mu is torsion and mu(4) = mu(0) = 1 since its order divides 4.
    let o = run(&["integrate", "--fn", "{mu:1}"]);
    assert_eq!(stdout(&o).trim(), "4");
}

#[test]
fn gauss_norm_of_inverse_p() {
    let o = run(&["norm", "--polytope", "cube:1:4", "--fn", "{p̲^{-1}:1}"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("exponent -4"), "{}", stdout(&o));
}

#[test]
fn function_from_stdin() {
    let o = run_stdin(&["--json", "norm", "--polytope", "cube:2", "--fn", "-"], "{p|1:2, eps^{1/4}|q:1}");
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["exponent"], "0");
}

#[test]
fn function_from_json_file() {
    let o = run(&["integrate", "--fn", &data("function_interval.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("λ_p"));
}

#[test]
fn malformed_json_exits_2() {
    let o = run(&["integrate", "--fn", r#"{"terms": ["#]);
    assert_eq!(o.status.code(), Some(2));
    let o = run_stdin(&["integrate", "--path", "-"], "{ \"domain\": ");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_generator_exits_2() {
    let o = run(&["integrate", "--fn", "{zeta:1}"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn non_unit_exits_3_and_names_the_precondition() {
    let o = run(&["decompose", "--fn", "{1:1, eps^{1/4}:1}"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a unit"));
}

#[test]
fn unit_decomposition() {
    let o = run(&["decompose", "--fn", "{1:3, p:5}"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("a = 3") && s.contains("x = 1") && s.contains("g = 5/3·p"), "{s}");
}

#[test]
fn open_path_rotation_is_a_domain_error() {
    let path = r#"{"domain":"cube:1","target":"gm","data":[{"terms":[{"char":"p","coeff":1}]}]}"#;
    let o = run(&["residue", "--f", r#"{"-1":1}"#, "--path", path]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_residue_small_grid_passes_and_prints_seed() {
    let o = run(&["verify", "residue", "--grid", "small", "--trials", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("suite residue  seed "));
    assert!(s.trim_end().ends_with("passed") && s.contains("PASS:"));
}

#[test]
fn verify_cubical_subdivision_in_dimension_two() {
    let o = run(&["verify", "subdivision", "--kind", "cubical", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("17 generator maps"));
    assert!(s.contains("PASS  cubical n=2 graded"));
}

#[test]
fn verify_stokes_on_simplices() {
    let o = run(&["verify", "stokes", "--domain", "simplex", "--n", "2", "--trials", "10"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_rejects_unknown_suites_and_large_dimensions() {
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "stokes", "--n", "4"]).status.code(), Some(3));
}

#[test]
fn ndjson_stream_has_one_object_per_line() {
    let o = run(&["--json", "verify", "ftc", "--trials", "3", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<serde_json::Value> =
        stdout(&o).lines().map(|l| serde_json::from_str(l).expect("each line is JSON")).collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0]["seed"], 7);
    assert_eq!(lines[4]["pass"], true);
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "equivariance", "--trials", "4"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let other = run(&["verify", "equivariance", "--trials", "4", "--seed", "1"]);
    assert_ne!(run(&args).stdout, other.stdout);
}

#[test]
fn tate_period_table() {
    let o = run(&["demo", "tate-periods", "--a", "5", "--q", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let rows: Vec<&str> = s.lines().collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[0].starts_with("γ₁") && rows[0].contains("= 4·λ_{1+a}"));
    assert!(rows[1].starts_with("γ₂") && rows[1].ends_with("ok"));
    assert!(rows[2].starts_with("γ₃") && rows[2].contains("= 4·λ_q"));
    assert_eq!(run(&["tate-demo"]).stdout, o.stdout);
}

#[test]
fn gm_cycle_rotation_table() {
    let o = run(&["--json", "demo", "gm-cycles"]);
    let rows: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let rots: Vec<&str> = rows.iter().map(|r| r["rot"].as_str().unwrap()).collect();
    assert_eq!(rots, ["-2·λ_ε", "-λ_ε", "0", "λ_ε", "2·λ_ε"]);
}

#[test]
fn obstruction_verdicts() {
    let o = run(&["demo", "obstruction", "--a", "0", "--d", "0"]);
    assert!(stdout(&o).trim().ends_with("INCONCLUSIVE"));
    let o = run(&["--json", "demo", "obstruction", "--a", "10"]);
    let rows: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r["verdict"] == "NONBOUNDARY"));
}

#[test]
fn registry_gaps_are_domain_errors() {
    let dir = std::env::temp_dir().join(format!("pathcalc-reg-{}.json", std::process::id()));
    std::fs::write(&dir, r#"{"generators":[{"name":"eps","base":1},{"name":"p","base":5}]}"#).unwrap();
    let o = run(&["--registry", dir.to_str().unwrap(), "demo", "tate-periods"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["--registry", dir.to_str().unwrap(), "integrate", "--fn", "{p:1}"]);
    assert_eq!(stdout(&o).trim(), "624/λ_p");
    std::fs::remove_file(dir).ok();
}

#[test]
fn registry_file_round_trips_through_the_cli() {
    let file = format!("{}/tests/data/registry.json", env!("CARGO_MANIFEST_DIR"));
    let o = run(&["--registry", &file, "demo", "tate-periods"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn residue_and_cauchy_commands() {
    let o = run(&["residue", "--f", r#"{"-1":3,"2":1}"#, "--a-prime", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("6·λ_ε"));
    let o = run(&["cauchy", "--f", r#"{"0":1,"2":25}"#, "--a", "5", "--order", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("25·λ_ε   PASS") && s.contains("50·λ_ε   differs"), "{s}");
}

#[test]
fn path_integrals_from_files() {
    let o = run(&["integrate", "--path", &data("path_eps_cycle.json"), "--form", &data("form_invariant.json")]);
    assert_eq!(stdout(&o).trim(), "2·λ_ε");
    let o = run(&["integrate", "--chain", &data("chain_obstruction.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("4·λ_q"));
}

#[test]
fn evaluate_function_and_path() {
    assert_eq!(stdout(&run(&["evaluate", "--fn", "{p:1, 1:-1}", "--at", "2"])).trim(), "24");
    assert_eq!(stdout(&run(&["evaluate", "--path", &data("path_eps_cycle.json"), "--at", "0"])).trim(), "1");
}

#[test]
fn subdivision_check_lists_maps() {
    let o = run(&["subdivision-check", "--kind", "simplicial", "--n", "1", "--maps"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS  simplicial n=1 stated"));
}

#[test]
fn other_primes() {
    let o = run(&["--p", "2", "integrate", "--fn", "{p:1}"]);
    assert_eq!(stdout(&o).trim(), "1/λ_p");
    assert_eq!(run(&["--p", "4", "norm", "--fn", "{p:1}"]).status.code(), Some(3));
}
