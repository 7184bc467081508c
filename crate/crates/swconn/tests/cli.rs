//! File-level integration: ingestion modes, run specifications, sweeps,
//! CSV stability, and exit-code mapping.

use std::io::Write;
use std::path::PathBuf;

use swconn::bench::{
    derive_window_config, ingest, parse_sweep_file, run_spec, sweep, write_summary, BenchError,
    CsvRow, RunSpec, Strategy, TimestampMode, CSV_HEADER,
};
use swconn::stream::Timestamp;

fn write_file(dir: &tempfile::TempDir, name: &str, content: &str) -> PathBuf {
    let path = dir.path().join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(content.as_bytes()).unwrap();
    path
}

#[test]
fn ingest_explicit_mode() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(
        &dir,
        "edges.txt",
        "# comment line\n0 1 5\n\n2 3 5\r\n4 5 9\n",
    );
    let stream = ingest(&path, TimestampMode::Explicit, 0, 0).unwrap();
    assert_eq!(stream.len(), 3);
    assert_eq!(stream[0].t, Timestamp(5));
    assert_eq!(stream[2].t, Timestamp(9));
}

#[test]
fn ingest_rejects_order_violation_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(&dir, "edges.txt", "0 1 5\n2 3 4\n");
    match ingest(&path, TimestampMode::Explicit, 0, 0) {
        Err(BenchError::OrderViolation { line, .. }) => assert_eq!(line, 2),
        other => panic!("expected order violation, got {other:?}"),
    }
}

#[test]
fn ingest_rejects_malformed_line_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(&dir, "edges.txt", "0 1 5\n0 x 6\n");
    match ingest(&path, TimestampMode::Explicit, 0, 0) {
        Err(BenchError::Parse { line, .. }) => assert_eq!(line, 2),
        other => panic!("expected parse error, got {other:?}"),
    }
    let path = write_file(&dir, "two.txt", "0 1\n");
    assert!(matches!(
        ingest(&path, TimestampMode::Explicit, 0, 0),
        Err(BenchError::Parse { line: 1, .. })
    ));
    // Uniform mode expects exactly two fields.
    let path = write_file(&dir, "three.txt", "0 1 5\n");
    assert!(matches!(
        ingest(&path, TimestampMode::Uniform, 10, 0),
        Err(BenchError::Parse { line: 1, .. })
    ));
}

#[test]
fn ingest_uniform_preserves_order_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(&dir, "edges.txt", "10 11\n20 21\n30 31\n");
    let a = ingest(&path, TimestampMode::Uniform, 100, 5).unwrap();
    let b = ingest(&path, TimestampMode::Uniform, 100, 5).unwrap();
    assert_eq!(a, b);
    assert_eq!(a[0].u.0, 10);
    assert_eq!(a[1].u.0, 20);
    assert_eq!(a[2].u.0, 30);
    assert!(a[0].t <= a[1].t && a[1].t <= a[2].t);
    assert!(a.iter().all(|e| e.t.0 < 100));
}

/// Kolmogorov-Smirnov check of the uniform timestamp assignment at the
/// 0.01 significance level.
#[test]
fn ingest_uniform_timestamps_pass_ks_test() {
    let n = 4000usize;
    let dir = tempfile::tempdir().unwrap();
    let mut content = String::new();
    for i in 0..n {
        content.push_str(&format!("{} {}\n", i, i + n));
    }
    let path = write_file(&dir, "edges.txt", &content);
    let t_max = 1_000_000u64;
    let stream = ingest(&path, TimestampMode::Uniform, t_max, 1337).unwrap();
    let mut ts: Vec<f64> = stream.iter().map(|e| e.t.0 as f64 / t_max as f64).collect();
    ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut d = 0f64;
    for (i, &x) in ts.iter().enumerate() {
        let lo = i as f64 / n as f64;
        let hi = (i + 1) as f64 / n as f64;
        d = d.max((x - lo).abs()).max((hi - x).abs());
    }
    let critical = 1.628 / (n as f64).sqrt();
    assert!(d <= critical, "KS statistic {d:.5} exceeds critical {critical:.5}");
}

fn synthetic_file(dir: &tempfile::TempDir, edges: usize, vertices: u64, ticks: u64) -> PathBuf {
    let stream = swconn::synth::uniform_stream(vertices, edges, ticks, 2024);
    let mut content = String::new();
    for e in &stream {
        content.push_str(&format!("{} {} {}\n", e.u.0, e.v.0, e.t.0));
    }
    write_file(dir, "synth.txt", &content)
}

#[test]
fn expected_edges_sizing_derives_time_units() {
    let dir = tempfile::tempdir().unwrap();
    // 1000 edges at exactly 10 per tick over ticks 0..99.
    let stream = swconn::synth::uniform_stream_fixed_rate(100, 1000, 10, 3);
    let mut content = String::new();
    for e in &stream {
        content.push_str(&format!("{} {} {}\n", e.u.0, e.v.0, e.t.0));
    }
    let path = write_file(&dir, "rate.txt", &content);
    let mut spec = RunSpec::new(&path, Strategy::OmstS);
    spec.edges_per_window = Some(100);
    spec.edges_per_slide = Some(20);
    let stream = ingest(&path, TimestampMode::Explicit, 0, 0).unwrap();
    let cfg = derive_window_config(&spec, &stream).unwrap();
    assert_eq!(cfg.alpha, 10);
    assert_eq!(cfg.beta, 2);
}

#[test]
fn run_spec_checksums_agree_across_strategies() {
    let dir = tempfile::tempdir().unwrap();
    let path = synthetic_file(&dir, 2000, 120, 60);
    let mk = |strategy| {
        let mut spec = RunSpec::new(&path, strategy);
        spec.alpha = Some(10);
        spec.beta = Some(3);
        spec.workload = 50;
        spec.seed = 4;
        spec
    };
    let (row_a, _) = run_spec(&mk(Strategy::OmstD)).unwrap();
    let (row_b, _) = run_spec(&mk(Strategy::Rwc)).unwrap();
    let (row_c, _) = run_spec(&mk(Strategy::OmstD)).unwrap();
    assert_eq!(row_a.answer_checksum, row_b.answer_checksum);
    assert_eq!(row_a.answer_checksum, row_c.answer_checksum, "same spec, same answers");
    assert_eq!(row_a.mem_nontree_edges, 0);
}

#[test]
fn run_spec_verify_passes_against_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let path = synthetic_file(&dir, 1500, 80, 50);
    for strategy in Strategy::ALL {
        let mut spec = RunSpec::new(&path, strategy);
        spec.alpha = Some(8);
        spec.beta = Some(2);
        spec.workload = 30;
        spec.verify = true;
        let (row, _) = run_spec(&spec).unwrap_or_else(|e| panic!("{strategy}: {e}"));
        assert_eq!(row.status, "ok");
    }
}

#[test]
fn sweep_runs_all_specs_and_records_failures() {
    let dir = tempfile::tempdir().unwrap();
    let path = synthetic_file(&dir, 1000, 60, 40);
    let sweep_file = write_file(
        &dir,
        "sweep.txt",
        &format!(
            "# strategies on one stream\n\
             input={p} strategy=omst-s alpha=8 beta=2\n\
             input={p} strategy=omst-d alpha=8 beta=2\n\
             input={p} strategy=mst-d alpha=8 beta=2\n\
             input={p}.missing strategy=rwc alpha=8 beta=2\n",
            p = path.display()
        ),
    );
    let base = RunSpec::new(&path, Strategy::OmstS);
    let specs = parse_sweep_file(&sweep_file, &base).unwrap();
    assert_eq!(specs.len(), 4);
    let out = sweep(&specs, true).unwrap();
    assert_eq!(out.rows.len(), 4);
    assert_eq!(out.failures, 1);
    assert!(out.rows[3].status.starts_with("error"));
    // The three successful strategies agree.
    let ok: Vec<&CsvRow> = out.rows.iter().filter(|r| r.status == "ok").collect();
    assert_eq!(ok.len(), 3);
    assert!(ok.windows(2).all(|w| w[0].answer_checksum == w[1].answer_checksum));

    // Every emitted row is parseable, and the summary renders.
    for row in &out.rows {
        let parsed = CsvRow::parse_line(&row.to_line()).unwrap();
        assert_eq!(parsed.answer_checksum, row.answer_checksum);
    }
    let mut summary = Vec::new();
    write_summary(&out.rows, &mut summary).unwrap();
    let text = String::from_utf8(summary).unwrap();
    assert_eq!(text.lines().count(), 1 + 3, "header plus one line per ok row");
}

#[test]
fn sweep_rejects_empty_spec_list() {
    assert!(matches!(sweep(&[], true), Err(BenchError::Usage(_))));
}

#[test]
fn exit_codes_follow_error_classes() {
    assert_eq!(BenchError::Usage("x".into()).exit_code(), 1);
    assert_eq!(
        BenchError::Parse {
            path: "f".into(),
            line: 1,
            msg: "m".into()
        }
        .exit_code(),
        2
    );
    assert_eq!(
        BenchError::OrderViolation {
            path: "f".into(),
            line: 3
        }
        .exit_code(),
        2
    );
    assert_eq!(BenchError::Verification("m".into()).exit_code(), 3);
}

#[test]
fn csv_header_matches_row_shape() {
    let dir = tempfile::tempdir().unwrap();
    let path = synthetic_file(&dir, 500, 40, 30);
    let mut spec = RunSpec::new(&path, Strategy::OmstLc);
    spec.alpha = Some(6);
    spec.beta = Some(3);
    spec.workload = 10;
    let (row, _) = run_spec(&spec).unwrap();
    assert_eq!(
        CSV_HEADER.split(',').count(),
        row.to_line().split(',').count()
    );
}
