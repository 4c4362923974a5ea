use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use becurv::io::parse_graph;
use becurv::Laplacian;

fn becurv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_becurv")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn generate_to(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let path_str = path.to_str().unwrap().to_string();
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", &path_str]);
    assert_eq!(becurv(&full).status.code(), Some(0));
    path_str
}

#[test]
fn generate_examples() {
    let out = becurv(&["generate", "friendship", "7", "--format", "graph6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1);
    let g = parse_graph(&text, Laplacian::NonNormalized).unwrap();
    assert_eq!((g.len(), g.max_degree()), (15, 14));

    let paw = stdout(&becurv(&["generate", "paw"]));
    let g = parse_graph(&paw, Laplacian::NonNormalized).unwrap();
    assert_eq!((g.len(), g.edge_count()), (4, 4));

    assert_eq!(becurv(&["generate", "cycle", "2"]).status.code(), Some(2));
    assert_eq!(becurv(&["generate", "dodecahedron", "3"]).status.code(), Some(2));
    assert_eq!(becurv(&["generate", "path"]).status.code(), Some(2));
}

#[test]
fn generate_parse_serialize_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 6] =
        [&["petersen"], &["hypercube", "3"], &["friendship", "4"], &["star3-plus", "2"], &["path", "1"], &["star", "6"]];
    for args in cases {
        for format in ["edgelist", "graph6"] {
            let mut full = args.to_vec();
            full.extend_from_slice(&["--format", format]);
            let path = generate_to(dir.path(), "g.txt", &full);
            let text = fs::read_to_string(&path).unwrap();
            let g = parse_graph(&text, Laplacian::NonNormalized).unwrap();
            let again = match format {
                "edgelist" => becurv::io::to_edge_list(&g),
                _ => becurv::io::to_graph6(&g).unwrap() + "\n",
            };
            assert_eq!(again, text, "{args:?} {format}");
        }
    }
}

#[test]
fn curvature_on_p2() {
    let dir = tempfile::tempdir().unwrap();
    let p2 = generate_to(dir.path(), "p2.txt", &["path", "2"]);
    let out = becurv(&["curvature", &p2, "--dimension", "1", "--dimension", "inf"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("# laplacian: non-normalized  N: 1, inf"));
    let rows: Vec<Vec<&str>> = text.lines().skip(2).map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows, vec![vec!["0", "1", "0"], vec!["0", "inf", "2"], vec!["1", "1", "0"], vec!["1", "inf", "2"]]);

    let out = becurv(&["curvature", &p2, "--vertex", "1", "--json", "--witness", "--laplacian", "normalized"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json[0]["vertex"], "1");
    assert_eq!(json[0]["N"], "inf");
    assert_eq!(json[0]["preset"], "normalized");
    assert!((json[0]["K"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert!(json[0]["witness"].is_array());
}

#[test]
fn curvature_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let p2 = generate_to(dir.path(), "p2.txt", &["path", "2"]);
    assert_eq!(becurv(&["curvature", &p2, "--laplacian", "custom"]).status.code(), Some(2));
    assert_eq!(becurv(&["curvature", &p2, "--vertex", "7"]).status.code(), Some(2));
    assert_eq!(becurv(&["curvature", &p2, "--dimension", "0"]).status.code(), Some(2));
    assert_eq!(becurv(&["curvature", "/nonexistent/graph.txt"]).status.code(), Some(2));
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "e 0 1\ne 0 0\n").unwrap();
    assert_eq!(becurv(&["curvature", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn friendship_eight_normalized_curvature_has_negative_vertex() {
    let dir = tempfile::tempdir().unwrap();
    let f8 = generate_to(dir.path(), "f8.txt", &["friendship", "8"]);
    let out = becurv(&["curvature", &f8, "--laplacian", "normalized", "--json"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(json.as_array().unwrap().iter().any(|r| r["K"].as_f64().unwrap() < 0.0));
}

#[test]
fn check_cd_examples() {
    let dir = tempfile::tempdir().unwrap();
    let paw = generate_to(dir.path(), "paw.txt", &["paw"]);
    let out = becurv(&["check-cd", &paw, "--K", "0", "--N", "inf"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("HOLDS"));

    let f8 = generate_to(dir.path(), "f8.txt", &["friendship", "8"]);
    let out = becurv(&["check-cd", &f8, "--K", "0", "--N", "inf", "--laplacian", "normalized"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAILS at vertex") && text.contains("witness:"));

    let out = becurv(&["check-cd", &f8, "--K", "-1000000", "--N", "inf"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn structure_examples() {
    let dir = tempfile::tempdir().unwrap();
    let f2 = generate_to(dir.path(), "f2.txt", &["friendship", "2"]);
    let out = becurv(&["structure", &f2, "--vertex", "0", "--json"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let comps = &json["per_vertex"][0]["components"];
    assert_eq!(comps, &serde_json::json!([{"r": 2, "s": 0}, {"r": 2, "s": 0}]));

    let c5 = generate_to(dir.path(), "c5.txt", &["cycle", "5"]);
    let text = stdout(&becurv(&["structure", &c5]));
    assert!(text.contains("girth: 5") && text.contains("c4-free: true"));

    let k4 = generate_to(dir.path(), "k4.txt", &["complete", "4", "--format", "graph6"]);
    assert!(stdout(&becurv(&["structure", &k4])).contains("c4-free: false"));
}

#[test]
fn scan_examples() {
    let out = becurv(&["scan", "--max-n", "7", "--c4-free", "--laplacian", "non-normalized", "--verify-theorem", "2.5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("VERIFIED"));

    let out = becurv(&["scan", "--max-n", "6", "--triangle-free", "--laplacian", "normalized", "--conjecture"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("exploratory"));

    let out = becurv(&["scan", "--max-n", "7", "--verify-theorem", "2.6"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(becurv(&["scan", "--max-n", "9"]).status.code(), Some(2));
    assert_eq!(becurv(&["scan", "--verify-theorem", "3.1"]).status.code(), Some(2));
}

#[test]
fn scan_output_is_deterministic_across_thread_counts() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_becurv"))
            .args(["scan", "--max-n", "7", "--c4-free", "--laplacian", "normalized", "--json"])
            .env("THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("4"));
}
