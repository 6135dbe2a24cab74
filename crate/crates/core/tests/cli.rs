use std::path::Path;
use std::process::{Command, Output};

use discplan::bench::{generate, Family};
use discplan::report::PlanFile;

fn discplan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_discplan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_scenario(dir: &Path, name: &str, family: Family, m: usize) -> String {
    let path = dir.join(name);
    std::fs::write(&path, generate(family, m, 7).unwrap().to_json()).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn plan_and_render_succeed() {
    let dir = tempfile::tempdir().unwrap();
    let scen = write_scenario(dir.path(), "grid.json", Family::Grid, 4);
    let plan = dir.path().join("plan.json");
    let metrics = dir.path().join("metrics.json");
    let out = discplan(&[
        "plan",
        &scen,
        "-o",
        plan.to_str().unwrap(),
        "--metrics",
        metrics.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let p = PlanFile::from_json(&std::fs::read_to_string(&plan).unwrap()).unwrap();
    assert_eq!(p.steps.len(), 4);
    let m: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&metrics).unwrap()).unwrap();
    assert_eq!(m["robots"], 4);
    assert_eq!(
        m["zeroHops"].as_u64().unwrap() + m["oneHops"].as_u64().unwrap(),
        4
    );

    let svg = dir.path().join("out.svg");
    let out = discplan(&[
        "render",
        &scen,
        "--plan",
        plan.to_str().unwrap(),
        "-o",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("class=\"start\"").count(), 4);
    assert_eq!(text.matches("class=\"goal\"").count(), 4);
    assert_eq!(text.matches("class=\"step\"").count(), 4);
}

#[test]
fn validate_reports_ok() {
    let dir = tempfile::tempdir().unwrap();
    let scen = write_scenario(dir.path(), "maze.json", Family::Maze, 3);
    let out = discplan(&["validate", &scen]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("3 robots"));
}

#[test]
fn infeasible_scenario_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let scen = write_scenario(dir.path(), "wall.json", Family::Wall, 4);
    let plan = dir.path().join("plan.json");
    let out = discplan(&["plan", &scen, "-o", plan.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!plan.exists());
}

#[test]
fn malformed_and_invalid_inputs_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ \"version\": 1, ").unwrap();
    assert_eq!(
        discplan(&["validate", bad.to_str().unwrap()]).status.code(),
        Some(1)
    );

    let close = dir.path().join("close.json");
    std::fs::write(
        &close,
        r#"{"version":1,"robotRadius":1.0,
            "workspace":[[-20,-20],[20,-20],[20,20],[-20,20]],
            "obstacles":[],
            "starts":[[0,0],[3,0]],
            "goals":[[10,10],[-10,-10]]}"#,
    )
    .unwrap();
    let out = discplan(&["validate", close.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    assert_eq!(discplan(&["plan"]).status.code(), Some(1));
    assert_eq!(
        discplan(&["bench", "--family", "nope", "--sizes", "2", "-o", "x.csv"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn bench_without_timings_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let out = discplan(&[
            "bench",
            "--family",
            "triangles",
            "--sizes",
            "2,4",
            "--seed",
            "3",
            "--omit-timings",
            "-o",
            path.to_str().unwrap(),
        ]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        std::fs::read_to_string(path).unwrap()
    };
    let a = run("a.csv");
    assert_eq!(a, run("b.csv"));
    let lines: Vec<&str> = a.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("family,seed,robots"));
    assert!(!lines[0].contains("t_"));
}
