use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_toric-newton"))
}

fn repo_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn last_line(o: &Output) -> String {
    stdout(o).lines().last().unwrap_or_default().to_string()
}

/// Compares against `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites it.
fn check_golden(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{}: {e}; run with UPDATE_GOLDEN=1", path.display()));
    assert_eq!(actual, expected, "golden {name} differs");
}

const CUSP: [&str; 6] = ["--p", "2", "--q", "1", "--f", "z2^2 - z1^3"];

fn with(base: &[&str], extra: &[&'static str]) -> Vec<String> {
    base.iter().chain(extra).map(|s| s.to_string()).collect()
}

fn run_owned(cmd: &str, args: &[String]) -> Output {
    let mut all = vec![cmd];
    all.extend(args.iter().map(String::as_str));
    run(&all)
}

#[test]
fn brasselet_text_ends_with_total() {
    let o = run_owned("brasselet", &with(&CUSP, &[]));
    assert!(o.status.success());
    assert_eq!(last_line(&o), "B = -3");
}

#[test]
fn morse_count_of_the_cusp() {
    let o = run_owned("morse", &with(&CUSP, &["--g", "z1 - z3^2"]));
    assert!(o.status.success());
    assert_eq!(last_line(&o), "n = 15");
}

#[test]
fn euler_obstruction_of_a_rational_normal_cone() {
    let o = run(&["eu-origin", "--p", "4", "--q", "1"]);
    assert!(o.status.success());
    assert_eq!(last_line(&o), "Eu(0) = -2");
}

#[test]
fn milnor_infers_the_plane() {
    assert_eq!(last_line(&run(&["milnor", "--f", "x^2 + y^2"])), "mu = 1");
    assert_eq!(last_line(&run(&["milnor", "--f", "x^3 + y^2"])), "mu = 2");
    assert_eq!(last_line(&run(&["milnor", "--f", "x"])), "mu = 0");
}

#[test]
fn mode_changes_the_complete_intersection_number() {
    let paper = run_owned("brasselet-ci", &with(&CUSP, &["--g", "z1 - z3^2"]));
    let strict = run_owned(
        "brasselet-ci",
        &with(&CUSP, &["--g", "z1 - z3^2", "--mode", "strict"]),
    );
    assert_eq!(last_line(&paper), "B^g = 12");
    assert_eq!(last_line(&strict), "B^g = 6");
    assert!(stdout(&strict).contains("mode: strict"));
}

#[test]
fn exit_codes() {
    // Input errors.
    assert_eq!(run(&["brasselet", "--p", "2", "--q", "1", "--f", "0"]).status.code(), Some(1));
    assert_eq!(run(&["brasselet", "--p", "2", "--q", "1", "--f", "z1 +"]).status.code(), Some(1));
    assert_eq!(run(&["brasselet", "--p", "4", "--q", "2", "--f", "z1"]).status.code(), Some(1));
    assert_eq!(run(&["brasselet", "--f", "z1"]).status.code(), Some(1));
    // Hypothesis failures.
    let not_prepolar = run_owned("morse", &with(&CUSP, &["--g", "z2"]));
    assert_eq!(not_prepolar.status.code(), Some(2));
    let violated = run_owned("family", &with(&CUSP, &["--h", "z2^2 - z1^3"]));
    assert_eq!(violated.status.code(), Some(2));
    let degenerate = run(&["check", "--p", "2", "--q", "1", "--f", "z1^2 + 2 z1 z2 + z2^2"]);
    assert_eq!(degenerate.status.code(), Some(2));
}

#[test]
fn text_and_json_agree() {
    let args = with(&CUSP, &["--g", "z1 - z3^2"]);
    let text = stdout(&run_owned("morse", &args));
    let mut json_args = args.clone();
    json_args.push("--json".into());
    let json: serde_json::Value = serde_json::from_str(&stdout(&run_owned("morse", &json_args))).unwrap();
    let task = &json["tasks"][0];
    for r in task["results"].as_array().unwrap() {
        let line = format!("{} = {}", r["name"].as_str().unwrap(), r["value"]);
        assert!(text.lines().any(|l| l == line), "missing {line}");
    }
    let on_x = &task["detail"]["on_x"];
    assert!(text.contains(&format!("total: {}", on_x["total"])));
    for term in on_x["per_face_terms"].as_array().unwrap() {
        assert!(text.contains(&format!("contribution: {}", term["contribution"])));
    }
}

#[test]
fn cusp_problem_golden() {
    let problem = repo_path("problems/cusp.toml");
    let problem = problem.to_str().unwrap();
    let first = run(&["run", "--problem", problem, "--json"]);
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
    let second = run(&["run", "--problem", problem, "--json"]);
    assert_eq!(first.stdout, second.stdout);
    check_golden("cusp.json", &stdout(&first));
    let text = run(&["run", "--problem", problem]);
    check_golden("cusp.txt", &stdout(&text));
}

#[test]
fn inline_goldens_are_stable() {
    let cases: Vec<(&str, Vec<String>)> = vec![
        ("brasselet.json", with(&CUSP, &["--json"])),
        ("brasselet_ci_strict.json", with(&CUSP, &["--g", "z1 - z3^2", "--mode", "strict", "--json"])),
        ("eu_origin_4_1.json", vec!["--p".into(), "4".into(), "--q".into(), "1".into(), "--seed".into(), "3".into(), "--json".into()]),
        ("surface_info_5_2.json", vec!["--p".into(), "5".into(), "--q".into(), "2".into(), "--json".into()]),
    ];
    let cmds = ["brasselet", "brasselet-ci", "eu-origin", "surface-info"];
    for ((name, args), cmd) in cases.iter().zip(cmds) {
        let a = run_owned(cmd, args);
        let b = run_owned(cmd, args);
        assert!(a.status.success(), "{name}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{name} is not deterministic");
        check_golden(name, &stdout(&a));
    }
}

#[test]
fn documented_report_matches_the_binary() {
    let doc = std::fs::read_to_string(repo_path("docs/report-format.md")).unwrap();
    let o = run_owned("morse", &with(&CUSP, &["--g", "z1 - z3^2", "--json"]));
    assert!(doc.contains(&stdout(&o)), "docs/report-format.md is out of date");
}
