use std::io::Write as _;
use std::path::PathBuf;

use gentle_cli::{exit, run};
use gentle_core::dsl::{parse_presentation, render_presentation};
use gentle_core::fixtures;
use gentle_core::quiver::build_presentation;

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("fixtures");
    p.push(format!("{name}.quiver"));
    p.to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["gentle".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn temp_file(name: &str, text: &str) -> String {
    let mut p = std::env::temp_dir();
    p.push(format!("gentle-cli-{}-{name}", std::process::id()));
    std::fs::File::create(&p)
        .unwrap()
        .write_all(text.as_bytes())
        .unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn golden_files_match_builders() {
    for (name, raw) in [
        ("running_example", fixtures::running_example()),
        ("signed_example", fixtures::signed_example()),
        ("pair_A", fixtures::pair_a()),
        ("pair_B", fixtures::pair_b()),
        ("kronecker", fixtures::kronecker()),
        ("a1", fixtures::single_vertex()),
        ("loop", fixtures::loop_with_relation()),
    ] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let p = build_presentation(&raw).unwrap();
        assert_eq!(parse_presentation(&text).unwrap(), p, "{name}");
        assert_eq!(render_presentation(&p), text, "{name}");
    }
}

#[test]
fn validate_reports_condition_three() {
    let (code, out, err) = cli(&["validate", &fixture("loop_no_rel")]);
    assert_eq!(code, exit::INVALID);
    assert!(out.starts_with("condition 3:"), "{out}");
    assert!(err.contains("not gentle"));
    let (code, out, _) = cli(&["validate", &fixture("running_example")]);
    assert_eq!(code, exit::OK);
    assert_eq!(
        out,
        "gentle: 8 vertices, 9 arrows, 4 relations, 2 cycle(s)\n"
    );
}

#[test]
fn validate_json() {
    let (code, out, _) = cli(&["validate", &fixture("loop_no_rel"), "--json"]);
    assert_eq!(code, exit::INVALID);
    assert!(out.starts_with(r#"{"version":"#));
    assert!(
        out.contains(r#""violations":[{"condition":"unbounded_path","arrows":["a"]}]"#),
        "{out}"
    );
}

#[test]
fn syntax_errors_are_located() {
    let f = temp_file("bad.quiver", "quiver x\nvertices: u v\narrow a u -> v\n");
    let (code, out, err) = cli(&["phi", &f]);
    assert_eq!(code, exit::INVALID);
    assert!(out.is_empty());
    assert!(err.contains(":3:9: syntax error"), "{err}");
}

#[test]
fn non_composable_relation_is_located() {
    let f = temp_file(
        "nc.quiver",
        "quiver x\nvertices: u v w\narrow b: u -> v\narrow g: u -> w\nrel g * b\n",
    );
    let (code, _, err) = cli(&["validate", &f]);
    assert_eq!(code, exit::INVALID);
    assert!(
        err.contains(":5:1: relation g * b is not composable"),
        "{err}"
    );
}

#[test]
fn missing_file_and_bad_usage() {
    assert_eq!(cli(&["phi", "/nonexistent/x.quiver"]).0, exit::USAGE);
    assert_eq!(cli(&["frobnicate"]).0, exit::USAGE);
    assert_eq!(cli(&["gen", "--vertices", "3"]).0, exit::USAGE);
    let (code, out, _) = cli(&["--help"]);
    assert_eq!(code, exit::OK);
    assert!(out.contains("oracle-check"));
}

#[test]
fn phi_json_has_version() {
    let (code, out, _) = cli(&["phi", &fixture("running_example"), "--json"]);
    assert_eq!(code, exit::OK);
    assert_eq!(
        out,
        format!(
            "{{\"version\":\"{}\",\"phi\":[[2,3],[2,4],[3,2]]}}\n",
            gentle_cli::VERSION
        )
    );
}

#[test]
fn equiv_exit_codes() {
    assert_eq!(
        cli(&["equiv", &fixture("pair_A"), &fixture("pair_B")]).0,
        exit::INDETERMINATE
    );
    assert_eq!(
        cli(&["equiv", &fixture("kronecker"), &fixture("kronecker")]).0,
        exit::OK
    );
    let (code, out, _) = cli(&["equiv", &fixture("kronecker"), &fixture("running_example")]);
    assert_eq!(code, exit::NOT_EQUIVALENT);
    assert!(
        out.starts_with("NotEquivalent\n  vertex count: 2 != 8\n"),
        "{out}"
    );
}

#[test]
fn classify_command() {
    assert_eq!(
        cli(&["classify", &fixture("kronecker")]).1.lines().next(),
        Some("ATilde(1,1)")
    );
    assert_eq!(
        cli(&["classify", &fixture("loop")]).1.lines().next(),
        Some("Lambda(1,1,0)")
    );
    assert_eq!(cli(&["classify", &fixture("a1")]).1, "A(1)\n");
    assert_eq!(
        cli(&["classify", &fixture("pair_A")]).1,
        "beyond one cycle\n"
    );
    let (_, out, _) = cli(&["classify", &fixture("kronecker"), "--json"]);
    assert!(
        out.contains(r#""normal_form":{"family":"ATilde","p":1,"q":1}"#),
        "{out}"
    );
}

#[test]
fn oracle_check_agrees() {
    for name in [
        "running_example",
        "signed_example",
        "pair_A",
        "pair_B",
        "kronecker",
        "a1",
        "loop",
    ] {
        let (code, out, err) = cli(&["oracle-check", &fixture(name)]);
        assert_eq!(code, exit::OK, "{name}: {err}");
        assert!(out.ends_with("agree\n"));
    }
}

#[test]
fn threads_listing() {
    let (code, out, _) = cli(&["threads", &fixture("signed_example")]);
    assert_eq!(code, exit::OK);
    assert!(out.starts_with("permitted (8):\n"));
    assert!(out.contains("forbidden (8):\n"));
    let (_, out, _) = cli(&["threads", &fixture("a1")]);
    assert!(out.contains("1_v+"), "{out}");
}

#[test]
fn gen_is_deterministic_and_parses() {
    let args = [
        "gen",
        "--vertices",
        "7",
        "--cycles",
        "2",
        "--seed",
        "42",
        "--density",
        "0.3",
    ];
    let (code, a, _) = cli(&args);
    assert_eq!(code, exit::OK);
    assert_eq!(cli(&args).1, a);
    let p = parse_presentation(&a).unwrap();
    assert_eq!(p.quiver().vertex_count(), 7);
    assert_eq!(
        cli(&["gen", "--vertices", "2", "--cycles", "3", "--seed", "1"]).0,
        exit::USAGE
    );
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    for args in [
        vec!["phi", "--trace"],
        vec!["threads"],
        vec!["oracle-check"],
        vec!["export-dot"],
    ] {
        let mut full = args.clone();
        let path = fixture("running_example");
        full.insert(1, &path);
        assert_eq!(cli(&full), cli(&full));
    }
}

#[test]
fn dot_export() {
    let (code, out, _) = cli(&["export-dot", &fixture("running_example")]);
    assert_eq!(code, exit::OK);
    assert_eq!(out.matches("style=dotted").count(), 4);
    assert_eq!(out.matches(" -> ").count(), 13);
}
