use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use griddy::io::{embedding_from_json, embedding_to_json, graph_from_json};
use griddy::lattice::{verify_embedding, LatticePoint};
use tempfile::TempDir;

const FIGURE_ONE: &str = "p nae3sat 4 3\n1 2 3 0\n1 2 4 0\n-1 3 4 0\n";
const SINGLE_VARIABLE: &str = "p nae3sat 1 1\n1 1 1 0\n";

fn griddy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_griddy")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Reduces `formula` and builds its witness; returns (graph, index, embedding) paths.
fn figure_one_files(dir: &TempDir) -> (PathBuf, PathBuf, PathBuf) {
    let f = write(dir, "fig1.cnf", FIGURE_ONE);
    let graph = dir.path().join("g.json");
    let index = dir.path().join("idx.json");
    let emb = dir.path().join("e.json");
    let out = griddy(&["reduce", s(&f), "--graph", s(&graph), "--index", s(&index)]);
    assert_eq!(code(&out), 0);
    let out = griddy(&["witness", s(&f), "-o", s(&emb)]);
    assert_eq!(code(&out), 0);
    (graph, index, emb)
}

#[test]
fn reduce_writes_graph_and_index() {
    let dir = TempDir::new().unwrap();
    let (graph, index, emb) = figure_one_files(&dir);
    let g = graph_from_json(&fs::read_to_string(&graph).unwrap()).unwrap();
    let e = embedding_from_json(&fs::read_to_string(&emb).unwrap()).unwrap();
    assert!(verify_embedding(&g, &e).unwrap().accepted());
    assert!(fs::read_to_string(index).unwrap().contains(r#""params":{"w":25,"h":16}"#));
}

#[test]
fn reduce_rejects_bad_input() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.cnf", "p cnf 1 1\n1 1 1 0\n");
    let out = griddy(&["reduce", s(&bad)]);
    assert_eq!(code(&out), 3);
    assert!(!out.stderr.is_empty());

    let f = write(&dir, "fig1.cnf", FIGURE_ONE);
    assert_eq!(code(&griddy(&["reduce", s(&f), "--w", "24"])), 3);
    assert_eq!(code(&griddy(&["reduce", s(&f), "--h", "16", "--w", "25"])), 0);
    assert_eq!(code(&griddy(&["reduce", "/nonexistent/file.cnf"])), 3);
}

#[test]
fn sat_and_engine_agree() {
    let dir = TempDir::new().unwrap();
    let sat = write(&dir, "sat.cnf", FIGURE_ONE);
    let unsat = write(&dir, "unsat.cnf", SINGLE_VARIABLE);
    assert_eq!(code(&griddy(&["sat", s(&sat)])), 0);
    assert_eq!(code(&griddy(&["sat", s(&unsat)])), 1);
    let out = griddy(&["engine", s(&sat)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("flat"));
    let out = griddy(&["engine", s(&unsat)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("not flat"));
}

#[test]
fn witness_of_unsat_formula_is_refused() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "unsat.cnf", SINGLE_VARIABLE);
    assert_eq!(code(&griddy(&["witness", s(&f)])), 1);
}

#[test]
fn roundtrip_examples() {
    let dir = TempDir::new().unwrap();
    let sat = write(&dir, "sat.cnf", FIGURE_ONE);
    let out = griddy(&["roundtrip", s(&sat)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("SAT, engine flat, witness verified"));

    let unsat = write(&dir, "unsat.cnf", SINGLE_VARIABLE);
    let out = griddy(&["roundtrip", s(&unsat)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("UNSAT confirmed"));

    let out = griddy(&["roundtrip", s(&unsat), "--threads", "4"]);
    assert_eq!(code(&out), 1);
    assert_eq!(code(&griddy(&["roundtrip", s(&unsat), "--budget", "3"])), 2);
}

#[test]
fn tampering_is_detected() {
    let dir = TempDir::new().unwrap();
    for (name, text) in [("sat.cnf", FIGURE_ONE), ("unsat.cnf", SINGLE_VARIABLE)] {
        let f = write(&dir, name, text);
        assert_eq!(code(&griddy(&["roundtrip", s(&f), "--tamper-flag"])), 4, "{name}");
    }
}

#[test]
fn embed_with_frame_pins() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "unsat.cnf", SINGLE_VARIABLE);
    let graph = dir.path().join("g.json");
    let index = dir.path().join("idx.json");
    assert_eq!(code(&griddy(&["reduce", s(&f), "--graph", s(&graph), "--index", s(&index)])), 0);
    let out = griddy(&["embed", s(&graph), "--pin", "frame", "--index", s(&index)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("outcome=Unrealizable nodes="));
    // Inferring the frame from labels gives the same answer.
    let inferred = griddy(&["embed", s(&graph), "--pin", "frame"]);
    assert_eq!(stdout(&inferred), stdout(&out));
}

#[test]
fn embed_plain_graphs() {
    let dir = TempDir::new().unwrap();
    let square = write(
        &dir,
        "c4.json",
        r#"{"vertices":[{"id":0},{"id":1},{"id":2},{"id":3}],"edges":[[0,1],[1,2],[2,3],[3,0]]}"#,
    );
    let emb = dir.path().join("c4.emb.json");
    let out = griddy(&["embed", s(&square), "-o", s(&emb)]);
    assert_eq!(code(&out), 0);
    assert_eq!(code(&griddy(&["verify", s(&square), s(&emb)])), 0);

    let out = griddy(&["embed", s(&square), "--count", "--no-symmetry", "--no-twins"]);
    assert_eq!(code(&out), 0);
    // With the first vertex fixed, a 4-cycle has 8 placements: 4 directions times 2 turns.
    assert!(stdout(&out).contains("solutions=8"), "{}", stdout(&out));

    let triangle = write(&dir, "k3.json", r#"{"vertices":[{"id":0},{"id":1},{"id":2}],"edges":[[0,1],[1,2],[2,0]]}"#);
    assert_eq!(code(&griddy(&["embed", s(&triangle)])), 1);
    let garbage = write(&dir, "bad.json", "{");
    assert_eq!(code(&griddy(&["embed", s(&garbage)])), 3);
}

#[test]
fn verify_rejects_overlap() {
    let dir = TempDir::new().unwrap();
    let edge = write(&dir, "p2.json", r#"{"vertices":[{"id":0},{"id":1}],"edges":[[0,1]]}"#);
    let good = write(&dir, "good.json", r#"{"points":[[0,0,0],[1,0,1]]}"#);
    let bad = write(&dir, "bad.json", r#"{"points":[[0,0,0],[1,0,0]]}"#);
    assert_eq!(code(&griddy(&["verify", s(&edge), s(&good)])), 0);
    assert_eq!(code(&griddy(&["verify", s(&edge), s(&bad)])), 1);
    let svg = dir.path().join("bad.svg");
    assert_eq!(code(&griddy(&["render", s(&edge), s(&bad), "-o", s(&svg)])), 1);
    assert!(!svg.exists());
}

#[test]
fn render_counts_match_graph() {
    let dir = TempDir::new().unwrap();
    let (graph, index, emb) = figure_one_files(&dir);
    let g = graph_from_json(&fs::read_to_string(&graph).unwrap()).unwrap();
    let svg = dir.path().join("fig1.svg");
    assert_eq!(code(&griddy(&["render", s(&graph), s(&emb), "--index", s(&index), "-o", s(&svg)])), 0);
    let text = fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<circle").count(), g.vertex_count());
    assert_eq!(text.matches("<line").count(), g.edge_count());
    // Figure 1 has 15 flags, each with one highlighted endpoint.
    assert_eq!(text.matches("#d62728").count(), 15);

    assert_eq!(code(&griddy(&["render", "/missing.json", s(&emb), "-o", s(&svg)])), 3);
}

#[test]
fn outputs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "fig1.cnf", FIGURE_ONE);
    let a = griddy(&["witness", s(&f)]);
    let b = griddy(&["witness", s(&f)]);
    assert_eq!(a.stdout, b.stdout);
    let e = embedding_from_json(stdout(&a).trim()).unwrap();
    assert_eq!(e.get(0), Some(LatticePoint::new(0, 1)));
    assert_eq!(embedding_to_json(&e), stdout(&a).trim());
}
