use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tcdesign::design::{hypercube_design, hypercube_journey, star_optimal_labelling};
use tcdesign::format::{parse_graph, write_graph};
use tcdesign::is_temporally_connected;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tcdesign"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn write_file(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

const K4_SLSE: &str = "t undirected 4\ne 0 1 3\ne 0 2 1\ne 0 3 4\ne 1 2 6\ne 1 3 2\ne 2 3 5\n";
const N2_FORMULA: &str = "p mxor3 2 3\n1 2\n1 2\n1 2\n";

#[test]
fn check_tc_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let star = write_file(
        dir.path(),
        "star.txt",
        &write_graph(&star_optimal_labelling(6).unwrap()),
    );
    let out = run(&["check-tc", &star]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["tc"], true);

    let path = write_file(dir.path(), "dec.txt", "t undirected 3\ne 0 1 2\ne 1 2 1\n");
    let out = run(&["check-tc", &path]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["witness_failures"], serde_json::json!([[0, 2]]));

    let garbage = write_file(dir.path(), "bad.txt", "t undirected 3\ne 0 one 2\n");
    let out = run(&["check-tc", &garbage]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains(":2:"));
}

#[test]
fn witnesses_are_capped() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(dir.path(), "empty.txt", "t undirected 8\n");
    let out = run(&["check-tc", &path]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["witness_failures"].as_array().unwrap().len(), 10);
}

#[test]
fn foremost_reports_null_for_unreachable() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(dir.path(), "edge.txt", "t undirected 3\ne 0 1 5\n");
    let v = json(&run(&["foremost", &path, "0"]));
    assert_eq!(v["arrival"]["1"], 5);
    assert_eq!(v["arrival"]["2"], Value::Null);
    assert_eq!(v["journeys"]["1"], serde_json::json!([[0, 1, 5]]));
    assert_eq!(v["journeys"]["2"], Value::Null);
    let late = json(&run(&["foremost", &path, "0", "--start-time", "5"]));
    assert_eq!(late["arrival"]["1"], Value::Null);
}

#[test]
fn foremost_on_hypercube_matches_bit_order_routing() {
    let dir = tempfile::tempdir().unwrap();
    let d = hypercube_design(2).unwrap();
    let path = write_file(dir.path(), "q2.txt", &write_graph(&d.labelling));
    let v = json(&run(&["foremost", &path, "0"]));
    for t in 1..4 {
        let j = hypercube_journey(&d, 0, t).unwrap();
        assert_eq!(v["arrival"][t.to_string()], j.arrival_time().unwrap());
    }
}

#[test]
fn hypercube_file() {
    let out = run(&["hypercube", "3"]);
    assert!(out.status.success());
    let g = parse_graph(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(g.vertex_count(), 8);
    assert_eq!(g.edge_count(), 12);
    let mut labels: Vec<u32> = g.label_instances().into_iter().map(|(_, l)| l).collect();
    labels.sort_unstable();
    assert_eq!(labels, (1..=12).collect::<Vec<_>>());
    assert_eq!(run(&["hypercube", "40"]).status.code(), Some(2));
}

#[test]
fn gadget_file_for_smallest_formula() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_file(dir.path(), "phi.txt", N2_FORMULA);
    let out = run(&["gadget", &f]);
    let g = parse_graph(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(g.vertex_count(), 21);
    assert_eq!(g.cost(), 74);
}

#[test]
fn assign_removes_9n_plus_k() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_file(dir.path(), "phi.txt", N2_FORMULA);
    let text = String::from_utf8(run(&["assign", &f, "01"]).stdout).unwrap();
    assert!(text.starts_with("# satisfied 3\n# removed 21\n"));
    let l = parse_graph(&text).unwrap();
    assert_eq!(l.cost(), 74 - 21);
    assert!(is_temporally_connected(&l));
    assert_eq!(run(&["assign", &f, "011"]).status.code(), Some(2));
    assert_eq!(run(&["assign", &f, "0x"]).status.code(), Some(2));
}

#[test]
fn removal_modes() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write_file(dir.path(), "k4.txt", K4_SLSE);
    let residual = dir.path().join("res.txt");
    let out = run(&[
        "removal",
        &k4,
        "--greedy",
        "--seed",
        "1",
        "--residual",
        residual.to_str().unwrap(),
    ]);
    let v = json(&out);
    assert!(v["profit"].as_u64().unwrap() >= 1);
    let res = parse_graph(&std::fs::read_to_string(&residual).unwrap()).unwrap();
    assert!(is_temporally_connected(&res));

    let exact = json(&run(&["removal", &k4, "--exact"]));
    assert_eq!(exact["exact"], true);
    assert!(exact["profit"].as_u64() >= v["profit"].as_u64());

    assert_eq!(run(&["removal", &k4, "--greedy"]).status.code(), Some(2));
    assert_eq!(run(&["removal", &k4]).status.code(), Some(2));
}

#[test]
fn emitted_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write_file(dir.path(), "k4.txt", K4_SLSE);
    for args in [
        vec!["hypercube", "4"],
        vec!["reduce-clique", &k4],
        vec!["design", &k4],
    ] {
        let text = String::from_utf8(run(&args).stdout).unwrap();
        assert_eq!(write_graph(&parse_graph(&text).unwrap()), text, "{args:?}");
    }
}

#[test]
fn design_output_pipes_into_check_tc() {
    let dir = tempfile::tempdir().unwrap();
    let g = "t undirected 6\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 0\ne 1 4\n";
    let path = write_file(dir.path(), "g.txt", g);
    for root in ["0", "3"] {
        let design = run(&["design", &path, "--root", root]);
        let mut child = bin()
            .args(["check-tc", "-"])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()
            .unwrap();
        child
            .stdin
            .take()
            .unwrap()
            .write_all(&design.stdout)
            .unwrap();
        assert_eq!(child.wait_with_output().unwrap().status.code(), Some(0));
    }
}

#[test]
fn sparsify_is_deterministic_across_threads() {
    let clique = [
        "sparsify", "--clique", "--n", "40", "--alpha", "8", "--gamma", "1", "--trials", "6",
        "--seed", "3",
    ];
    let a = run(&clique);
    let b = run(&[&clique[..], &["--threads", "1"]].concat());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 7);
    let last: Value = serde_json::from_str(lines[6]).unwrap();
    assert_eq!(last["summary"]["trials"], 6);

    let gnp = [
        "sparsify", "--gnp", "--n", "60", "--p", "0.9", "--alpha", "4", "--trials", "3", "--seed",
        "9",
    ];
    assert_eq!(run(&gnp).stdout, run(&gnp).stdout);
    assert_eq!(
        run(&["sparsify", "--gnp", "--n", "60", "--alpha", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["sparsify", "--clique", "--n", "8", "--alpha", "8", "--gamma", "4", "--seed", "1"])
            .status
            .code(),
        Some(2)
    );
}
