//! End-to-end checks of the `graphdsp` binary and its file formats.

use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use graphdsp::io::text;
use graphdsp_core::Complex64;
use proptest::prelude::*;
use serde_json::Value;

fn graphdsp(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphdsp")).arg("--out").arg(out).args(args).output().unwrap()
}

fn ok(out: &Path, args: &[&str]) {
    let o = graphdsp(out, args);
    assert!(o.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&o.stderr));
}

fn summary(dir: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join("summary.json")).unwrap()).unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn unit_square_corners_give_a_symmetric_ring() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("sq.csv"), "id,x,y\n0,0,0\n1,1,0\n2,1,1\n3,0,1\n").unwrap();
    ok(dir.path(), &["graph", "build", "--coords", &path(dir.path(), "sq.csv"), "--k", "2"]);
    let list = text::parse_edges(&fs::read_to_string(dir.path().join("graph.edges")).unwrap()).unwrap();
    assert_eq!(list.n_nodes, 4);
    let mut adj = [[Complex64::new(0.0, 0.0); 4]; 4];
    for e in &list.edges {
        adj[e.dst][e.src] = e.weight;
    }
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(adj[i][j], adj[j][i]);
        }
        // both neighbours are the adjacent corners, never the diagonal
        let nbrs: Vec<usize> = (0..4).filter(|&j| adj[i][j].norm() > 0.0).collect();
        let mut want = vec![(i + 1) % 4, (i + 3) % 4];
        want.sort_unstable();
        assert_eq!(nbrs, want);
    }
    assert_eq!(summary(dir.path())["metrics"]["hermitian"], Value::Bool(true));
}

#[test]
fn malformed_csv_reports_its_line() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("g.edges"), "graphdsp-edges v1 N=3\n0 1 1\n1 2 1\n2 0 1\n").unwrap();
    fs::write(dir.path().join("s.csv"), "1\n2\nthree\n").unwrap();
    let o = graphdsp(
        dir.path(),
        &["shift", "--graph", &path(dir.path(), "g.edges"), "--signal", &path(dir.path(), "s.csv")],
    );
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("s.csv") && err.contains("line 3"), "{err}");
}

#[test]
fn canonical_edge_file_is_a_fixed_point() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("raw.edges"),
        "graphdsp-edges v1 N=4\n\n2 3 0.1 0.2\n# comment\n0 1 1\n3 0 -2.5\n1 2 0\n",
    )
    .unwrap();
    let first = dir.path().join("first");
    let second = dir.path().join("second");
    ok(&first, &["graph", "build", "--edges", &path(dir.path(), "raw.edges")]);
    ok(&second, &["graph", "build", "--edges", &path(&first, "graph.edges")]);
    let a = fs::read(first.join("graph.edges")).unwrap();
    assert_eq!(a, fs::read(second.join("graph.edges")).unwrap());
    // the zero-weight edge is dropped
    assert_eq!(summary(&first)["metrics"]["edges"], 3);
}

#[test]
fn unknown_flag_exits_with_usage() {
    let dir = tempfile::tempdir().unwrap();
    let o = graphdsp(dir.path(), &["gft", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn numerical_failure_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    // a directed path is nilpotent, so h(x) = x cannot be inverted
    fs::write(dir.path().join("p.edges"), "graphdsp-edges v1 N=3\n0 1 1\n1 2 1\n").unwrap();
    fs::write(dir.path().join("h.json"), r#"{"coeffs": [[0, 0], [1, 0]]}"#).unwrap();
    let o = graphdsp(
        dir.path(),
        &[
            "filter",
            "invert",
            "--graph",
            &path(dir.path(), "p.edges"),
            "--taps",
            &path(dir.path(), "h.json"),
            "--backend",
            "exact",
        ],
    );
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn gft_on_a_directed_cycle_matches_dft_magnitudes() {
    let n = 8;
    let dir = tempfile::tempdir().unwrap();
    let edges: String = (0..n).map(|i| format!("{i} {} 1\n", (i + 1) % n)).collect();
    fs::write(dir.path().join("c8.edges"), format!("graphdsp-edges v1 N={n}\n{edges}")).unwrap();
    let s: Vec<f64> = (0..n).map(|i| ((i * i) % 7) as f64 - 2.5 + 0.1 * i as f64).collect();
    fs::write(dir.path().join("s.csv"), s.iter().map(|v| format!("{v}\n")).collect::<String>()).unwrap();
    ok(dir.path(), &["gft", "--graph", &path(dir.path(), "c8.edges"), "--signal", &path(dir.path(), "s.csv")]);
    let spec = text::parse_signal(&fs::read_to_string(dir.path().join("spectrum.csv")).unwrap()).unwrap();
    let dft: Vec<f64> = (0..n)
        .map(|k| {
            (0..n)
                .map(|i| s[i] * Complex64::from_polar(1.0, -2.0 * PI * (k * i) as f64 / n as f64))
                .sum::<Complex64>()
                .norm()
        })
        .collect();
    let mut got: Vec<f64> = spec.iter().map(|z| z.norm()).collect();
    let mut want = dft;
    got.sort_by(f64::total_cmp);
    want.sort_by(f64::total_cmp);
    // the basis normalization fixes one common scale
    let scale = got[n - 1] / want[n - 1];
    for (g, w) in got.iter().zip(&want) {
        assert!((g - scale * w).abs() <= 1e-10 * got[n - 1], "{got:?} vs {want:?}");
    }
}

#[test]
fn compression_sweep_is_non_increasing() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["synth", "smooth-field", "--nodes", "30", "--k", "5", "--noise", "0.1"]);
    ok(
        dir.path(),
        &[
            "compress",
            "--graph",
            &path(dir.path(), "graph.edges"),
            "--signal",
            &path(dir.path(), "signal.csv"),
            "--sweep",
        ],
    );
    let csv = fs::read_to_string(dir.path().join("compress_sweep.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("C,relative_error"));
    let errs: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(errs.len(), 30);
    assert!(errs.windows(2).all(|w| w[1] <= w[0]), "{errs:?}");
    assert!(errs[29] <= 1e-10);
}

#[test]
fn noise_free_field_compresses_exactly_at_its_order() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["synth", "smooth-field", "--nodes", "60", "--k", "6", "--order", "5"]);
    ok(
        dir.path(),
        &[
            "compress",
            "--graph",
            &path(dir.path(), "graph.edges"),
            "--signal",
            &path(dir.path(), "signal.csv"),
            "--keep",
            "5",
        ],
    );
    let err = summary(dir.path())["metrics"]["relative_error"].as_f64().unwrap();
    assert!(err <= 1e-10, "{err}");
}

#[test]
fn separated_blocks_are_labelled_from_one_seed_each() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["synth", "two-block", "--block-size", "20", "--p-in", "0.5", "--p-out", "0"]);
    let truth = text::parse_labels(&fs::read_to_string(dir.path().join("truth.csv")).unwrap(), 40).unwrap();
    fs::write(dir.path().join("one_each.csv"), format!("node_id,label\n0,{}\n39,{}\n", truth[0], truth[39])).unwrap();
    assert_ne!(truth[0], truth[39]);
    let train = dir.path().join("train");
    ok(
        &train,
        &[
            "classify",
            "train",
            "--graph",
            &path(dir.path(), "graph.edges"),
            "--labels",
            &path(dir.path(), "one_each.csv"),
        ],
    );
    ok(
        dir.path(),
        &[
            "classify",
            "apply",
            "--graph",
            &path(dir.path(), "graph.edges"),
            "--classifier",
            &path(&train, "classifier.json"),
            "--labels",
            &path(dir.path(), "one_each.csv"),
            "--truth",
            &path(dir.path(), "truth.csv"),
        ],
    );
    assert_eq!(summary(dir.path())["metrics"]["held_out_accuracy"].as_f64(), Some(1.0));
}

#[test]
fn lp_code_round_trips_through_the_binary_format() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["synth", "smooth-field", "--nodes", "40", "--k", "6", "--noise", "0.05"]);
    let (g, s) = (path(dir.path(), "graph.edges"), path(dir.path(), "signal.csv"));
    ok(dir.path(), &["lp", "encode", "--graph", &g, "--signal", &s, "--bits", "12"]);
    ok(dir.path(), &["lp", "decode", "--graph", &g, "--code", &path(dir.path(), "code.gdsplp"), "--signal", &s]);
    let err = summary(dir.path())["metrics"]["relative_error"].as_f64().unwrap();
    assert!(err < 1e-2, "{err}");
    let mut bytes = fs::read(dir.path().join("code.gdsplp")).unwrap();
    bytes.push(0);
    fs::write(dir.path().join("long.gdsplp"), bytes).unwrap();
    let o = graphdsp(dir.path(), &["lp", "decode", "--graph", &g, "--code", &path(dir.path(), "long.gdsplp")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn seeds_control_every_output() {
    let runs: Vec<_> = ["7", "7", "8"]
        .iter()
        .map(|seed| {
            let dir = tempfile::tempdir().unwrap();
            ok(dir.path(), &["--seed", seed, "synth", "call-log", "--customers", "40", "--groups", "4"]);
            let read = |n: &str| fs::read(dir.path().join(n)).unwrap();
            (read("calls.edges"), read("month3.csv"), read("summary.json"))
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert_ne!(runs[0].0, runs[2].0);
}

#[test]
fn tolerance_overrides_are_recorded() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["synth", "two-block", "--block-size", "5", "--tol", "cluster=1e-6"]);
    assert_eq!(summary(dir.path())["tolerance_overrides"]["cluster"].as_f64(), Some(1e-6));
    let o = graphdsp(dir.path(), &["synth", "two-block", "--tol", "nonsense=1"]);
    assert_eq!(o.status.code(), Some(2));
}

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![-1e6..1e6f64, Just(0.0), Just(-0.0), Just(1e-300), Just(f64::MAX)]
}

proptest! {
    #[test]
    fn signal_text_round_trips(values in prop::collection::vec((finite(), finite()), 1..20)) {
        let v: Vec<Complex64> = values.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
        let back = text::parse_signal(&text::format_signal(&v)).unwrap();
        prop_assert_eq!(back.len(), v.len());
        for (a, b) in back.iter().zip(&v) {
            prop_assert_eq!(a.re.to_bits(), b.re.to_bits());
            prop_assert!(a.im == b.im);
        }
    }

    #[test]
    fn edge_text_round_trips(n in 1usize..8, raw in prop::collection::vec((0usize..8, 0usize..8, finite(), finite()), 0..20)) {
        let edges: Vec<_> = raw
            .into_iter()
            .map(|(s, d, re, im)| graphdsp_core::graph::Edge::new(s % n, d % n, Complex64::new(re, im)))
            .collect();
        let mut seen = std::collections::BTreeSet::new();
        let edges: Vec<_> = edges.into_iter().filter(|e| seen.insert((e.src, e.dst))).collect();
        let g = graphdsp_core::graph::Graph::build(n, &edges).unwrap();
        let canon = text::format_edges(&g);
        let again = text::graph_from_edges(&text::parse_edges(&canon).unwrap(), 2048).unwrap();
        prop_assert_eq!(again.id(), g.id());
        prop_assert_eq!(text::format_edges(&again), canon);
    }

    #[test]
    fn label_text_round_trips(labels in prop::collection::vec(prop_oneof![Just(-1.0), Just(0.0), Just(1.0)], 1..30)) {
        let back = text::parse_labels(&text::format_node_values(&labels, "label"), labels.len()).unwrap();
        prop_assert_eq!(back, labels);
    }
}
