//! Runs the command-line front end on the fan files in `tests/fans`.

use std::path::PathBuf;

use serde_json::Value;
use toritrans::cli::{run_command, Outcome, Report};

fn fan_path(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fans", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Outcome {
    run_command(std::iter::once("toritrans").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let value = serde_json::from_str(&out.stdout).expect("json output");
    (out.code, value)
}

fn theta_of(file: &str) -> (String, String) {
    let (code, v) = json(&["theta", &fan_path(file)]);
    assert_eq!(code, 0, "{file}");
    let verdict = &v["results"]["verdict"];
    (
        verdict["lower"].as_str().unwrap().to_string(),
        verdict["upper"].as_str().unwrap().to_string(),
    )
}

#[test]
fn golden_theta_values() {
    let expected = [
        ("affine_plane.fan", "inf", "inf"),
        ("a2_minus_origin.fan", "inf", "inf"),
        ("projective_line.fan", "3", "3"),
        ("projective_plane.fan", "2", "2"),
        ("p1_times_p1.fan", "1", "1"),
        ("hirzebruch_1.fan", "0", "0"),
        ("torus_line.fan", "1", "1"),
        ("line_times_torus.fan", "1", "1"),
        ("cyclic_quotient_2_5.fan", "0", "0"),
        ("a_one_singularity.fan", "0", "0"),
        ("blown_up_plane.fan", "0", "1"),
        ("non_primitive.fan", "inf", "inf"),
    ];
    for (file, lo, hi) in expected {
        assert_eq!(theta_of(file), (lo.to_string(), hi.to_string()), "{file}");
    }
}

#[test]
fn exit_codes() {
    let cases = [
        ("validate", "affine_plane.fan", 0),
        ("validate", "bad_intersection.fan", 1),
        ("validate", "not_pointed.fan", 1),
        ("theta", "bad_intersection.fan", 1),
        ("analyze", "not_pointed.fan", 1),
        ("theta", "bad_index.fan", 2),
        ("theta", "wrong_length.fan", 2),
        ("theta", "unknown_field.fan", 2),
        ("theta", "truncated.fan", 2),
        ("cox", "line_times_torus.fan", 1),
        ("cox", "projective_plane.fan", 0),
        ("orbits", "p1_times_p1.fan", 0),
        ("analyze", "hirzebruch_1.fan", 0),
    ];
    for (cmd, file, code) in cases {
        assert_eq!(run(&[cmd, &fan_path(file)]).code, code, "{cmd} {file}");
    }
    assert_eq!(run(&["theta", &fan_path("missing.fan")]).code, 2);
}

#[test]
fn parse_errors_report_position() {
    let out = run(&["theta", &fan_path("truncated.fan")]);
    assert!(out.stderr.contains("line"), "{}", out.stderr);
    let (_, v) = json(&["theta", &fan_path("truncated.fan")]);
    assert_eq!(v["error"]["kind"], "parse");
    let (_, v) = json(&["theta", &fan_path("unknown_field.fan")]);
    assert_eq!(v["error"]["kind"], "schema");
}

#[test]
fn invalid_fans_list_violations() {
    let (code, v) = json(&["validate", &fan_path("bad_intersection.fan")]);
    assert_eq!(code, 1);
    assert_eq!(v["results"]["valid"], false);
    assert_eq!(v["results"]["violations"].as_array().unwrap().len(), 1);
}

#[test]
fn non_primitive_rays_warn() {
    let out = run(&["theta", &fan_path("non_primitive.fan")]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stderr.matches("warning").count(), 2);
}

#[test]
fn analyze_reports_structure() {
    let (_, v) = json(&["analyze", &fan_path("p1_times_p1.fan")]);
    let r = &v["results"];
    assert_eq!(r["complete"], true);
    assert_eq!(r["quasi_affine"], false);
    assert_eq!(r["projective_product"], serde_json::json!([1, 1]));
    assert_eq!(r["class_group"]["free_rank"], 2);
    let (_, v) = json(&["analyze", &fan_path("cyclic_quotient_2_5.fan")]);
    assert_eq!(v["results"]["class_group"]["torsion"], serde_json::json!([5]));
    assert_eq!(v["results"]["smooth"], false);
}

#[test]
fn cox_summary() {
    let out = run(&["cox", &fan_path("projective_plane.fan")]);
    assert!(out.stdout.contains("Cl(X) ≅ ℤ"));
    assert!(out.stdout.contains("X ≅ X̂ // G"));
}

#[test]
fn json_output_round_trips() {
    for args in [
        vec!["analyze".to_string(), fan_path("hirzebruch_1.fan")],
        vec!["cox".to_string(), fan_path("cyclic_quotient_2_5.fan")],
        vec!["surface".into(), "--a".into(), "3".into(), "--b".into(), "7".into()],
        vec!["family".into(), "--n".into(), "3".into(), "--b".into(), "2".into()],
        vec!["hilbert".into(), "--cone".into(), "1,0,0;0,1,0;1,1,3".into()],
    ] {
        let mut full = vec!["toritrans", "--format", "json"];
        full.extend(args.iter().map(String::as_str));
        let out = run_command(full);
        let report: Report = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(report.to_json(), out.stdout, "{args:?}");
    }
}

#[test]
fn verify_subcommand_agrees() {
    let out = run(&["verify", "all", "--max-b", "6"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("disagreements: 0"));
}

#[test]
fn rank_limit_is_enforced() {
    let out = run(&["family", "--n", "5", "--b", "2"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("rank"));
}
