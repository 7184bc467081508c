//! Benchmark front end: edge-file ingestion, synthetic timestamp
//! assignment, strategy selection, single runs and sweeps, CSV and
//! summary emission. The `swconn-bench` binary is a thin wrapper around
//! [`cli_main`].

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Mutex;

use clap::Parser;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::baseline::{replay_oracle, DfsIndex, RwcIndex};
use crate::driver::{
    answers_checksum, generate_workload, run, vertex_universe, DriverError, RunOptions, RunOutput,
};
use crate::dtree::DTree;
use crate::lctree::LinkCutForest;
use crate::stream::{
    stream_validate, ConnectivityIndex, StreamingEdge, Timestamp, VertexId, WindowConfig,
};
use crate::stree::SimpleForest;
use crate::synth::sorted_uniform_timestamps;

/// CSV schema identifier emitted in every row.
pub const CSV_SCHEMA: &str = "swconn.v1";

pub const CSV_HEADER: &str = "strategy,alpha,beta,workload,edges,seconds,throughput,\
q_p95,q_p99,wm_p95,wm_p99,mem_vertices,mem_tree_edges,mem_nontree_edges,peak_mem,\
replacement_searches,accesses,ns_per_edge,windows,answer_checksum,status,schema";

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    OmstS,
    OmstD,
    OmstLc,
    MstD,
    VanillaD,
    Rwc,
    Dfs,
}

impl Strategy {
    pub const ALL: [Strategy; 7] = [
        Strategy::OmstS,
        Strategy::OmstD,
        Strategy::OmstLc,
        Strategy::MstD,
        Strategy::VanillaD,
        Strategy::Rwc,
        Strategy::Dfs,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Strategy::OmstS => "omst-s",
            Strategy::OmstD => "omst-d",
            Strategy::OmstLc => "omst-lc",
            Strategy::MstD => "mst-d",
            Strategy::VanillaD => "vanilla-d",
            Strategy::Rwc => "rwc",
            Strategy::Dfs => "dfs",
        }
    }

    pub fn build(&self) -> Box<dyn ConnectivityIndex> {
        match self {
            Strategy::OmstS => Box::new(SimpleForest::new()),
            Strategy::OmstD => Box::new(DTree::omst()),
            Strategy::OmstLc => Box::new(LinkCutForest::new()),
            Strategy::MstD => Box::new(DTree::mst()),
            Strategy::VanillaD => Box::new(DTree::vanilla()),
            Strategy::Rwc => Box::new(RwcIndex::new()),
            Strategy::Dfs => Box::new(DfsIndex::new()),
        }
    }
}

impl FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Strategy::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                format!(
                    "unknown strategy '{s}' (expected one of {})",
                    Strategy::ALL.map(|k| k.name()).join(", ")
                )
            })
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum TimestampMode {
    /// Lines carry `u v t`; timestamps must be non-decreasing.
    Explicit,
    /// Lines carry `u v`; timestamps are uniform draws over `[0, t_max)`,
    /// sorted and assigned in file order.
    Uniform,
}

impl FromStr for TimestampMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "explicit" => Ok(TimestampMode::Explicit),
            "uniform" => Ok(TimestampMode::Uniform),
            other => Err(format!("unknown timestamp mode '{other}'")),
        }
    }
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },
    #[error("{path}:{line}: timestamp out of order")]
    OrderViolation { path: String, line: usize },
    #[error("correctness check failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Driver(#[from] DriverError),
}

impl BenchError {
    /// 1 usage error, 2 data error, 3 correctness-check failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Usage(_) => 1,
            BenchError::Io(_)
            | BenchError::Parse { .. }
            | BenchError::OrderViolation { .. }
            | BenchError::Driver(_) => 2,
            BenchError::Verification(_) => 3,
        }
    }
}

/// One benchmark run: input, strategy, window geometry, workload.
#[derive(Clone, Debug)]
pub struct RunSpec {
    pub input: PathBuf,
    pub strategy: Strategy,
    /// Window size and slide in time units; when absent the
    /// expected-edges sizing below is used.
    pub alpha: Option<u64>,
    pub beta: Option<u64>,
    /// Window and slide sized by expected edge counts, converted through
    /// the stream's mean edge rate.
    pub edges_per_window: Option<u64>,
    pub edges_per_slide: Option<u64>,
    pub workload: usize,
    pub seed: u64,
    pub timestamp_mode: TimestampMode,
    pub t_max: u64,
    pub t0: Option<u64>,
    pub resample_workload: bool,
    pub verify: bool,
}

impl RunSpec {
    pub fn new(input: impl Into<PathBuf>, strategy: Strategy) -> Self {
        RunSpec {
            input: input.into(),
            strategy,
            alpha: None,
            beta: None,
            edges_per_window: None,
            edges_per_slide: None,
            workload: 100,
            seed: 1,
            timestamp_mode: TimestampMode::Explicit,
            t_max: 1000,
            t0: None,
            resample_workload: false,
            verify: false,
        }
    }
}

/// Parse a whitespace-separated edge file. `#`-prefixed lines are
/// comments; CRLF endings are accepted.
pub fn ingest(
    path: &Path,
    mode: TimestampMode,
    t_max: u64,
    seed: u64,
) -> Result<Vec<StreamingEdge>, BenchError> {
    let text = std::fs::read_to_string(path)?;
    let path_str = path.display().to_string();
    let mut pairs: Vec<(u64, u64, Option<u64>, usize)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let expected = match mode {
            TimestampMode::Explicit => 3,
            TimestampMode::Uniform => 2,
        };
        if tokens.len() != expected {
            return Err(BenchError::Parse {
                path: path_str,
                line: lineno + 1,
                msg: format!("expected {expected} fields, found {}", tokens.len()),
            });
        }
        let parse = |tok: &str| -> Result<u64, BenchError> {
            tok.parse().map_err(|_| BenchError::Parse {
                path: path_str.clone(),
                line: lineno + 1,
                msg: format!("invalid integer '{tok}'"),
            })
        };
        let u = parse(tokens[0])?;
        let v = parse(tokens[1])?;
        let t = if mode == TimestampMode::Explicit {
            Some(parse(tokens[2])?)
        } else {
            None
        };
        pairs.push((u, v, t, lineno + 1));
    }
    let stream: Vec<StreamingEdge> = match mode {
        TimestampMode::Explicit => pairs
            .iter()
            .map(|&(u, v, t, _)| {
                StreamingEdge::new(VertexId(u), VertexId(v), Timestamp(t.unwrap()))
            })
            .collect(),
        TimestampMode::Uniform => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ts = sorted_uniform_timestamps(pairs.len(), t_max, &mut rng);
            pairs
                .iter()
                .zip(ts)
                .map(|(&(u, v, _, _), t)| StreamingEdge::new(VertexId(u), VertexId(v), t))
                .collect()
        }
    };
    if let Err(pos) = stream_validate(&stream) {
        return Err(BenchError::OrderViolation {
            path: path_str,
            line: pairs[pos].3,
        });
    }
    Ok(stream)
}

/// Resolve the window geometry for a stream, converting expected edge
/// counts through the stream's mean edges per time unit when needed.
pub fn derive_window_config(
    spec: &RunSpec,
    stream: &[StreamingEdge],
) -> Result<WindowConfig, BenchError> {
    let min_t = stream.iter().map(|e| e.t.0).min().unwrap_or(0);
    let max_t = stream.iter().map(|e| e.t.0).max().unwrap_or(0);
    let t0 = Timestamp(spec.t0.unwrap_or(min_t));
    let (alpha, beta) = match (spec.alpha, spec.beta, spec.edges_per_window, spec.edges_per_slide)
    {
        (Some(a), Some(b), None, None) => (a, b),
        (None, None, Some(epw), Some(eps)) => {
            if stream.is_empty() {
                return Err(BenchError::Usage(
                    "expected-edges sizing needs a non-empty stream".into(),
                ));
            }
            let span = (max_t - min_t + 1) as f64;
            let rate = stream.len() as f64 / span;
            let to_units = |edges: u64| ((edges as f64 / rate).round() as u64).max(1);
            (to_units(epw), to_units(eps))
        }
        _ => {
            return Err(BenchError::Usage(
                "provide either --alpha and --beta, or --edges-per-window and --edges-per-slide"
                    .into(),
            ))
        }
    };
    WindowConfig::new(alpha, beta, t0)
        .map_err(|e| BenchError::Usage(e.to_string()))
}

/// One emitted CSV row.
#[derive(Clone, Debug)]
pub struct CsvRow {
    pub strategy: Strategy,
    pub alpha: u64,
    pub beta: u64,
    pub workload: usize,
    pub edges: u64,
    pub seconds: f64,
    pub throughput: f64,
    pub q_p95_ns: u128,
    pub q_p99_ns: u128,
    pub wm_p95_ns: u128,
    pub wm_p99_ns: u128,
    pub mem_vertices: usize,
    pub mem_tree_edges: usize,
    pub mem_nontree_edges: usize,
    pub peak_mem: u64,
    pub replacement_searches: u64,
    pub accesses: u64,
    pub ns_per_edge: f64,
    pub windows: u64,
    pub answer_checksum: u64,
    pub status: String,
}

impl CsvRow {
    pub fn to_line(&self) -> String {
        format!(
            "{},{},{},{},{},{:.6},{:.1},{},{},{},{},{},{},{},{},{},{},{:.1},{},{:016x},{},{}",
            self.strategy,
            self.alpha,
            self.beta,
            self.workload,
            self.edges,
            self.seconds,
            self.throughput,
            self.q_p95_ns,
            self.q_p99_ns,
            self.wm_p95_ns,
            self.wm_p99_ns,
            self.mem_vertices,
            self.mem_tree_edges,
            self.mem_nontree_edges,
            self.peak_mem,
            self.replacement_searches,
            self.accesses,
            self.ns_per_edge,
            self.windows,
            self.answer_checksum,
            self.status,
            CSV_SCHEMA,
        )
    }

    /// Parse a line produced by [`CsvRow::to_line`].
    pub fn parse_line(line: &str) -> Result<CsvRow, String> {
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 22 {
            return Err(format!("expected 22 fields, found {}", f.len()));
        }
        if f[21] != CSV_SCHEMA {
            return Err(format!("schema mismatch: {}", f[21]));
        }
        let num = |i: usize| -> Result<u64, String> {
            f[i].parse().map_err(|_| format!("field {i}: '{}'", f[i]))
        };
        let fnum = |i: usize| -> Result<f64, String> {
            f[i].parse().map_err(|_| format!("field {i}: '{}'", f[i]))
        };
        Ok(CsvRow {
            strategy: f[0].parse()?,
            alpha: num(1)?,
            beta: num(2)?,
            workload: num(3)? as usize,
            edges: num(4)?,
            seconds: fnum(5)?,
            throughput: fnum(6)?,
            q_p95_ns: num(7)? as u128,
            q_p99_ns: num(8)? as u128,
            wm_p95_ns: num(9)? as u128,
            wm_p99_ns: num(10)? as u128,
            mem_vertices: num(11)? as usize,
            mem_tree_edges: num(12)? as usize,
            mem_nontree_edges: num(13)? as usize,
            peak_mem: num(14)?,
            replacement_searches: num(15)?,
            accesses: num(16)?,
            ns_per_edge: fnum(17)?,
            windows: num(18)?,
            answer_checksum: u64::from_str_radix(f[19], 16)
                .map_err(|_| format!("checksum: '{}'", f[19]))?,
            status: f[20].to_string(),
        })
    }
}

/// Execute one run specification end to end.
pub fn run_spec(spec: &RunSpec) -> Result<(CsvRow, RunOutput), BenchError> {
    let stream = ingest(&spec.input, spec.timestamp_mode, spec.t_max, spec.seed)?;
    run_spec_on_stream(spec, &stream)
}

/// Like [`run_spec`] but with an already-ingested stream, so sweeps share
/// one parse.
pub fn run_spec_on_stream(
    spec: &RunSpec,
    stream: &[StreamingEdge],
) -> Result<(CsvRow, RunOutput), BenchError> {
    let config = derive_window_config(spec, stream)?;
    let universe = vertex_universe(stream);
    let workload = if spec.workload == 0 {
        crate::driver::Workload::fixed(Vec::new())
    } else {
        generate_workload(&universe, spec.workload, spec.seed)?
    };
    let mut index = spec.strategy.build();
    let output = run(
        stream,
        config,
        index.as_mut(),
        &workload,
        RunOptions {
            resample_workload: spec.resample_workload,
        },
    )?;
    if spec.verify {
        let truth = replay_oracle(stream, config, &workload.pairs)
            .map_err(|pos| BenchError::Verification(format!("oracle order violation at {pos}")))?;
        if truth.len() != output.answers.len() {
            return Err(BenchError::Verification(format!(
                "window count mismatch: index {} vs oracle {}",
                output.answers.len(),
                truth.len()
            )));
        }
        for (wa, expect) in output.answers.iter().zip(&truth) {
            if &wa.answers != expect {
                return Err(BenchError::Verification(format!(
                    "answers diverge from oracle at window {}",
                    wa.window
                )));
            }
        }
    }
    let r = &output.report;
    let row = CsvRow {
        strategy: spec.strategy,
        alpha: config.alpha,
        beta: config.beta,
        workload: spec.workload,
        edges: r.edges,
        seconds: r.elapsed.as_secs_f64(),
        throughput: r.throughput_eps,
        q_p95_ns: r.q_p95.as_nanos(),
        q_p99_ns: r.q_p99.as_nanos(),
        wm_p95_ns: r.wm_p95.as_nanos(),
        wm_p99_ns: r.wm_p99.as_nanos(),
        mem_vertices: r.mem_vertices,
        mem_tree_edges: r.mem_tree_edges,
        mem_nontree_edges: r.mem_nontree_edges,
        peak_mem: r.peak_rss_bytes,
        replacement_searches: r.counters.replacement_searches,
        accesses: r.counters.accesses,
        ns_per_edge: r.ns_per_edge,
        windows: r.windows,
        answer_checksum: answers_checksum(&output.answers),
        status: "ok".into(),
    };
    Ok((row, output))
}

/// Sweep outcome: one row per spec, failures recorded in place.
pub struct SweepOutput {
    pub rows: Vec<CsvRow>,
    pub failures: usize,
}

/// Execute runs across worker threads (capped by `SWCONN_THREADS`),
/// recording per-run failures without aborting the sweep. With
/// `enforce_checksums`, runs sharing identical inputs and parameters must
/// produce identical answer checksums.
pub fn sweep(specs: &[RunSpec], enforce_checksums: bool) -> Result<SweepOutput, BenchError> {
    if specs.is_empty() {
        return Err(BenchError::Usage("sweep needs at least one run".into()));
    }
    let threads = std::env::var("SWCONN_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
        .min(specs.len());
    let queue: Mutex<Vec<usize>> = Mutex::new((0..specs.len()).rev().collect());
    let results: Mutex<Vec<Option<CsvRow>>> = Mutex::new(vec![None; specs.len()]);
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let job = queue.lock().unwrap().pop();
                let Some(i) = job else { break };
                let spec = &specs[i];
                let row = match run_spec(spec) {
                    Ok((row, _)) => row,
                    Err(err) => CsvRow {
                        strategy: spec.strategy,
                        alpha: spec.alpha.unwrap_or(0),
                        beta: spec.beta.unwrap_or(0),
                        workload: spec.workload,
                        edges: 0,
                        seconds: 0.0,
                        throughput: 0.0,
                        q_p95_ns: 0,
                        q_p99_ns: 0,
                        wm_p95_ns: 0,
                        wm_p99_ns: 0,
                        mem_vertices: 0,
                        mem_tree_edges: 0,
                        mem_nontree_edges: 0,
                        peak_mem: 0,
                        replacement_searches: 0,
                        accesses: 0,
                        ns_per_edge: 0.0,
                        windows: 0,
                        answer_checksum: 0,
                        status: format!("error: {err}").replace(',', ";"),
                    },
                };
                results.lock().unwrap()[i] = Some(row);
            });
        }
    });
    let rows: Vec<CsvRow> = results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every job completes"))
        .collect();
    let failures = rows.iter().filter(|r| r.status != "ok").count();

    if enforce_checksums {
        // Group by everything that determines the answer matrix except the
        // strategy.
        let mut groups: BTreeMap<(String, u64, u64, usize, u64), Vec<&CsvRow>> = BTreeMap::new();
        for (row, spec) in rows.iter().zip(specs) {
            if row.status == "ok" {
                groups
                    .entry((
                        spec.input.display().to_string(),
                        row.alpha,
                        row.beta,
                        row.workload,
                        spec.seed,
                    ))
                    .or_default()
                    .push(row);
            }
        }
        for (key, members) in groups {
            let first = members[0].answer_checksum;
            if let Some(bad) = members.iter().find(|r| r.answer_checksum != first) {
                return Err(BenchError::Verification(format!(
                    "answer checksums diverge for {key:?}: {} vs {}",
                    members[0].strategy, bad.strategy
                )));
            }
        }
    }
    Ok(SweepOutput { rows, failures })
}

/// Parse a sweep file: one run per non-comment line, whitespace-separated
/// `key=value` tokens overriding the base specification.
pub fn parse_sweep_file(path: &Path, base: &RunSpec) -> Result<Vec<RunSpec>, BenchError> {
    let text = std::fs::read_to_string(path)?;
    let path_str = path.display().to_string();
    let mut specs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fail = |msg: String| BenchError::Parse {
            path: path_str.clone(),
            line: lineno + 1,
            msg,
        };
        let parse_u64 = |v: &str| -> Result<u64, BenchError> {
            v.parse().map_err(|_| fail(format!("invalid integer '{v}'")))
        };
        let mut spec = base.clone();
        for token in line.split_whitespace() {
            let Some((key, value)) = token.split_once('=') else {
                return Err(fail(format!("expected key=value, found '{token}'")));
            };
            match key {
                "input" => spec.input = PathBuf::from(value),
                "strategy" => spec.strategy = value.parse().map_err(&fail)?,
                "alpha" => spec.alpha = Some(parse_u64(value)?),
                "beta" => spec.beta = Some(parse_u64(value)?),
                "edges-per-window" => spec.edges_per_window = Some(parse_u64(value)?),
                "edges-per-slide" => spec.edges_per_slide = Some(parse_u64(value)?),
                "workload" => spec.workload = parse_u64(value)? as usize,
                "seed" => spec.seed = parse_u64(value)?,
                "timestamp-mode" => spec.timestamp_mode = value.parse().map_err(&fail)?,
                "t-max" => spec.t_max = parse_u64(value)?,
                "t0" => spec.t0 = Some(parse_u64(value)?),
                other => return Err(fail(format!("unknown key '{other}'"))),
            }
        }
        specs.push(spec);
    }
    Ok(specs)
}

/// Plot-ready summary: one whitespace-separated row per (strategy,
/// sweep-point), sorted.
pub fn write_summary(rows: &[CsvRow], out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(
        out,
        "# strategy alpha beta workload throughput q_p95_ns q_p99_ns wm_p95_ns wm_p99_ns"
    )?;
    let mut sorted: Vec<&CsvRow> = rows.iter().filter(|r| r.status == "ok").collect();
    sorted.sort_by_key(|r| (r.strategy.name(), r.alpha, r.beta, r.workload));
    for r in sorted {
        writeln!(
            out,
            "{} {} {} {} {:.1} {} {} {} {}",
            r.strategy, r.alpha, r.beta, r.workload, r.throughput, r.q_p95_ns, r.q_p99_ns,
            r.wm_p95_ns, r.wm_p99_ns
        )?;
    }
    Ok(())
}

/// Command-line interface of `swconn-bench`.
#[derive(Parser, Debug)]
#[command(
    name = "swconn-bench",
    about = "Sliding-window connectivity benchmark harness",
    disable_help_subcommand = true
)]
pub struct Cli {
    /// Edge file: whitespace-separated `u v` or `u v t` lines, `#` comments.
    #[arg(long)]
    pub input: Option<PathBuf>,

    /// Index strategy: omst-s, omst-d, omst-lc, mst-d, vanilla-d, rwc, dfs.
    #[arg(long, default_value = "omst-d")]
    pub strategy: Strategy,

    /// Window size in time units.
    #[arg(long)]
    pub alpha: Option<u64>,

    /// Slide interval in time units.
    #[arg(long)]
    pub beta: Option<u64>,

    /// Window size as an expected edge count (alternative to --alpha).
    #[arg(long)]
    pub edges_per_window: Option<u64>,

    /// Slide interval as an expected edge count (alternative to --beta).
    #[arg(long)]
    pub edges_per_slide: Option<u64>,

    /// Number of query pairs per window boundary.
    #[arg(long, default_value_t = 100)]
    pub workload: usize,

    /// PRNG seed for timestamps and workloads.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// explicit: lines are `u v t`; uniform: lines are `u v` and
    /// timestamps are drawn uniformly.
    #[arg(long, default_value = "explicit")]
    pub timestamp_mode: TimestampMode,

    /// Timestamp range for uniform assignment.
    #[arg(long, default_value_t = 1000)]
    pub t_max: u64,

    /// Origin of the first window (defaults to the stream minimum).
    #[arg(long)]
    pub t0: Option<u64>,

    /// Output CSV path (stdout when omitted). Sweeps also write
    /// `<out>.summary`.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Run the union-find replay oracle alongside and fail on divergence.
    #[arg(long)]
    pub verify: bool,

    /// Sweep file: one run per line as `key=value` tokens.
    #[arg(long)]
    pub sweep: Option<PathBuf>,

    /// Draw fresh workload pairs at every window boundary.
    #[arg(long)]
    pub resample_workload: bool,

    /// Skip the cross-strategy answer-checksum check in sweep mode.
    #[arg(long)]
    pub no_check: bool,
}

impl Cli {
    fn base_spec(&self) -> Result<RunSpec, BenchError> {
        let input = self
            .input
            .clone()
            .ok_or_else(|| BenchError::Usage("--input is required".into()))?;
        Ok(RunSpec {
            input,
            strategy: self.strategy,
            alpha: self.alpha,
            beta: self.beta,
            edges_per_window: self.edges_per_window,
            edges_per_slide: self.edges_per_slide,
            workload: self.workload,
            seed: self.seed,
            timestamp_mode: self.timestamp_mode,
            t_max: self.t_max,
            t0: self.t0,
            resample_workload: self.resample_workload,
            verify: self.verify,
        })
    }
}

fn write_rows(rows: &[CsvRow], out: Option<&Path>) -> Result<(), BenchError> {
    let mut body = String::from(CSV_HEADER);
    body.push('\n');
    for row in rows {
        body.push_str(&row.to_line());
        body.push('\n');
    }
    match out {
        Some(path) => std::fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

/// Run the CLI; returns the process exit code.
pub fn cli_main(cli: &Cli) -> i32 {
    match cli_inner(cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("swconn-bench: {err}");
            err.exit_code()
        }
    }
}

fn cli_inner(cli: &Cli) -> Result<(), BenchError> {
    match &cli.sweep {
        None => {
            let spec = cli.base_spec()?;
            let (row, _) = run_spec(&spec)?;
            write_rows(&[row], cli.out.as_deref())
        }
        Some(sweep_path) => {
            // The sweep file may supply inputs per line; a CLI --input is
            // only the default.
            let base = match cli.base_spec() {
                Ok(b) => b,
                Err(_) => {
                    let mut b = RunSpec::new(PathBuf::new(), cli.strategy);
                    b.alpha = cli.alpha;
                    b.beta = cli.beta;
                    b.edges_per_window = cli.edges_per_window;
                    b.edges_per_slide = cli.edges_per_slide;
                    b.workload = cli.workload;
                    b.seed = cli.seed;
                    b.timestamp_mode = cli.timestamp_mode;
                    b.t_max = cli.t_max;
                    b.t0 = cli.t0;
                    b.resample_workload = cli.resample_workload;
                    b.verify = cli.verify;
                    b
                }
            };
            let specs = parse_sweep_file(sweep_path, &base)?;
            for (i, spec) in specs.iter().enumerate() {
                if spec.input.as_os_str().is_empty() {
                    return Err(BenchError::Usage(format!(
                        "sweep line {} has no input (set input= or pass --input)",
                        i + 1
                    )));
                }
            }
            let output = sweep(&specs, !cli.no_check)?;
            write_rows(&output.rows, cli.out.as_deref())?;
            if let Some(out) = &cli.out {
                let mut summary_path = out.as_os_str().to_owned();
                summary_path.push(".summary");
                let mut file = std::fs::File::create(PathBuf::from(summary_path))?;
                write_summary(&output.rows, &mut file)?;
            } else {
                let stdout = std::io::stdout();
                write_summary(&output.rows, &mut stdout.lock())?;
            }
            Ok(())
        }
    }
}
