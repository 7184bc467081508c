//! Sliding-window replay engine: feeds a stream into a connectivity index
//! in arrival order, runs the query workload when each window completes,
//! then applies that window's expirations, timing both batches.
//!
//! A window completes when the first edge beyond its end bound arrives (or
//! the stream ends); after end-of-stream the remaining windows are emitted
//! until every edge has been deleted, so the full insert/delete life cycle
//! of every edge is exercised.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::stream::{
    stream_validate, window_bounds, ConnectivityIndex, IndexError, OperationCounters,
    StreamingEdge, Timestamp, VertexId, WindowConfig,
};

#[derive(Debug, Error)]
pub enum DriverError {
    #[error("stream order violation at position {0}")]
    StreamOrder(usize),
    #[error("workload universe needs at least two vertices")]
    UniverseTooSmall,
    #[error("index rejected a live edge: {0}")]
    Index(#[from] IndexError),
}

/// A reproducible batch of query pairs. Generated with ChaCha8
/// (`rand_chacha` 0.9) so identical seeds give identical pairs across
/// platforms and releases.
#[derive(Clone, Debug)]
pub struct Workload {
    pub pairs: Vec<(VertexId, VertexId)>,
    pub seed: u64,
    pub size: usize,
    universe: Vec<VertexId>,
}

impl Workload {
    /// A fixed, hand-picked workload.
    pub fn fixed(pairs: Vec<(VertexId, VertexId)>) -> Self {
        let size = pairs.len();
        Workload {
            pairs,
            seed: 0,
            size,
            universe: Vec::new(),
        }
    }

    /// Fresh pairs for one window, used in resampling mode. Deterministic
    /// in (seed, window index).
    fn resampled(&self, window: u64) -> Vec<(VertexId, VertexId)> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ window.wrapping_mul(0x9e3779b97f4a7c15));
        sample_pairs(&self.universe, self.size, &mut rng)
    }
}

fn sample_pairs(
    universe: &[VertexId],
    size: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<(VertexId, VertexId)> {
    (0..size)
        .map(|_| {
            let a = universe[rng.random_range(0..universe.len())];
            loop {
                let b = universe[rng.random_range(0..universe.len())];
                if b != a {
                    return (a, b);
                }
            }
        })
        .collect()
}

/// Uniform i.i.d. pairs with distinct endpoints drawn from the vertex
/// universe.
pub fn generate_workload(
    universe: &[VertexId],
    size: usize,
    seed: u64,
) -> Result<Workload, DriverError> {
    if universe.len() < 2 {
        return Err(DriverError::UniverseTooSmall);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(Workload {
        pairs: sample_pairs(universe, size, &mut rng),
        seed,
        size,
        universe: universe.to_vec(),
    })
}

/// Per-window timing: the whole query batch and the whole expiration
/// batch (window bookkeeping plus index maintenance).
#[derive(Copy, Clone, Debug)]
pub struct LatencyRecord {
    pub window: u64,
    pub query_latency: Duration,
    pub wm_latency: Duration,
}

/// Aggregated metrics for one run.
#[derive(Clone, Debug)]
pub struct MetricsReport {
    pub edges: u64,
    pub windows: u64,
    pub elapsed: Duration,
    /// Edges per second over the whole replay.
    pub throughput_eps: f64,
    /// The same figure as time per edge.
    pub ns_per_edge: f64,
    pub q_p95: Duration,
    pub q_p99: Duration,
    pub wm_p95: Duration,
    pub wm_p99: Duration,
    /// Peak logical storage sampled at window boundaries.
    pub mem_vertices: usize,
    pub mem_tree_edges: usize,
    pub mem_nontree_edges: usize,
    /// Peak resident set of the process at run end (VmHWM), in bytes.
    pub peak_rss_bytes: u64,
    pub counters: OperationCounters,
}

/// Answers produced at one window boundary, in workload order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowAnswers {
    pub window: u64,
    pub answers: Vec<bool>,
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub report: MetricsReport,
    pub answers: Vec<WindowAnswers>,
    pub latencies: Vec<LatencyRecord>,
}

#[derive(Copy, Clone, Debug, Default)]
pub struct RunOptions {
    /// Draw fresh workload pairs at every boundary instead of reusing the
    /// fixed batch.
    pub resample_workload: bool,
}

/// Nearest-rank percentile over unsorted samples.
pub fn percentile(samples: &[Duration], p: f64) -> Duration {
    if samples.is_empty() {
        return Duration::ZERO;
    }
    let mut sorted: Vec<Duration> = samples.to_vec();
    sorted.sort_unstable();
    let rank = ((p / 100.0) * sorted.len() as f64).ceil() as usize;
    sorted[rank.clamp(1, sorted.len()) - 1]
}

/// Order-insensitive-free checksum of the full answer matrix; equal
/// matrices give equal checksums.
pub fn answers_checksum(answers: &[WindowAnswers]) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    let mut mix = |x: u64| {
        h ^= x;
        h = h.wrapping_mul(0x100000001b3);
    };
    for wa in answers {
        mix(wa.window);
        for &b in &wa.answers {
            mix(b as u64 + 1);
        }
    }
    h
}

/// Peak resident set size of this process in bytes, from
/// `/proc/self/status` (0 when unavailable).
pub fn peak_rss_bytes() -> u64 {
    let Ok(status) = std::fs::read_to_string("/proc/self/status") else {
        return 0;
    };
    for line in status.lines() {
        if let Some(rest) = line.strip_prefix("VmHWM:") {
            let kb: u64 = rest
                .trim()
                .trim_end_matches("kB")
                .trim()
                .parse()
                .unwrap_or(0);
            return kb * 1024;
        }
    }
    0
}

/// Replay a validated stream through an index: insert on arrival, and at
/// each completed window run the query batch first, then delete the
/// expired edges.
pub fn run(
    stream: &[StreamingEdge],
    config: WindowConfig,
    index: &mut dyn ConnectivityIndex,
    workload: &Workload,
    options: RunOptions,
) -> Result<RunOutput, DriverError> {
    stream_validate(stream).map_err(DriverError::StreamOrder)?;

    let mut live: VecDeque<StreamingEdge> = VecDeque::new();
    let mut latencies: Vec<LatencyRecord> = Vec::new();
    let mut answers: Vec<WindowAnswers> = Vec::new();
    let mut mem_vertices = 0usize;
    let mut mem_tree = 0usize;
    let mut mem_nontree = 0usize;

    let mut complete_window = |i: u64,
                               live: &mut VecDeque<StreamingEdge>,
                               index: &mut dyn ConnectivityIndex|
     -> Result<(), DriverError> {
        let w = window_bounds(config, i);
        if let (Some(front), Some(back)) = (live.front(), live.back()) {
            assert!(
                front.t >= w.t_b && back.t <= w.t_e,
                "window {i} observed an edge outside [{}, {}]",
                w.t_b,
                w.t_e
            );
        }
        let resampled;
        let pairs: &[(VertexId, VertexId)] = if options.resample_workload {
            resampled = workload.resampled(i);
            &resampled
        } else {
            &workload.pairs
        };
        let q_start = Instant::now();
        let batch: Vec<bool> = pairs.iter().map(|&(a, b)| index.query(a, b)).collect();
        let query_latency = q_start.elapsed();
        answers.push(WindowAnswers {
            window: i,
            answers: batch,
        });

        mem_vertices = mem_vertices.max(index.vertex_count());
        mem_tree = mem_tree.max(index.tree_edge_count());
        mem_nontree = mem_nontree.max(index.non_tree_edge_count());

        let cutoff = w.t_b + config.beta;
        let wm_start = Instant::now();
        while live.front().is_some_and(|e| e.t < cutoff) {
            let edge = live.pop_front().unwrap();
            if !edge.is_self_loop() {
                index.delete(edge)?;
            }
        }
        let wm_latency = wm_start.elapsed();
        latencies.push(LatencyRecord {
            window: i,
            query_latency,
            wm_latency,
        });
        Ok(())
    };

    let run_start = Instant::now();
    let mut cur = 0u64;
    let mut processed = 0u64;
    for edge in stream {
        if edge.t < config.t0 {
            continue; // precedes the first window
        }
        while edge.t > window_bounds(config, cur).t_e {
            complete_window(cur, &mut live, index)?;
            cur += 1;
        }
        if !edge.is_self_loop() {
            index.insert(*edge);
        }
        live.push_back(*edge);
        processed += 1;
    }
    while !live.is_empty() {
        complete_window(cur, &mut live, index)?;
        cur += 1;
    }
    let elapsed = run_start.elapsed();

    let q: Vec<Duration> = latencies.iter().map(|l| l.query_latency).collect();
    let wm: Vec<Duration> = latencies.iter().map(|l| l.wm_latency).collect();
    let report = MetricsReport {
        edges: processed,
        windows: cur,
        elapsed,
        throughput_eps: if elapsed.as_secs_f64() > 0.0 {
            processed as f64 / elapsed.as_secs_f64()
        } else {
            0.0
        },
        ns_per_edge: if processed > 0 {
            elapsed.as_nanos() as f64 / processed as f64
        } else {
            0.0
        },
        q_p95: percentile(&q, 95.0),
        q_p99: percentile(&q, 99.0),
        wm_p95: percentile(&wm, 95.0),
        wm_p99: percentile(&wm, 99.0),
        mem_vertices,
        mem_tree_edges: mem_tree,
        mem_nontree_edges: mem_nontree,
        peak_rss_bytes: peak_rss_bytes(),
        counters: index.counters(),
    };
    Ok(RunOutput {
        report,
        answers,
        latencies,
    })
}

/// Distinct vertex ids appearing in a stream, in first-seen order.
pub fn vertex_universe(stream: &[StreamingEdge]) -> Vec<VertexId> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for e in stream {
        for v in [e.u, e.v] {
            if seen.insert(v) {
                out.push(v);
            }
        }
    }
    out
}

/// Largest timestamp in a stream.
pub fn max_timestamp(stream: &[StreamingEdge]) -> Option<Timestamp> {
    stream.iter().map(|e| e.t).max()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseline::{replay_oracle, DfsIndex, RwcIndex};
    use crate::dtree::DTree;
    use crate::lctree::LinkCutForest;
    use crate::stree::SimpleForest;

    fn v(id: u64) -> VertexId {
        VertexId(id)
    }

    fn e(u: u64, w: u64, t: u64) -> StreamingEdge {
        StreamingEdge::new(v(u), v(w), Timestamp(t))
    }

    #[test]
    fn percentile_nearest_rank() {
        let ms: Vec<Duration> = (1..=100).map(Duration::from_millis).collect();
        assert_eq!(percentile(&ms, 95.0), Duration::from_millis(95));
        assert_eq!(percentile(&ms, 99.0), Duration::from_millis(99));
        assert_eq!(percentile(&ms[..3], 99.0), Duration::from_millis(3));
        assert_eq!(percentile(&[], 99.0), Duration::ZERO);
    }

    #[test]
    fn workload_is_deterministic() {
        let universe: Vec<VertexId> = (0..50).map(v).collect();
        let a = generate_workload(&universe, 100, 42).unwrap();
        let b = generate_workload(&universe, 100, 42).unwrap();
        assert_eq!(a.pairs, b.pairs);
        let c = generate_workload(&universe, 100, 43).unwrap();
        assert_ne!(a.pairs, c.pairs);
        assert!(a.pairs.iter().all(|&(x, y)| x != y));
        assert!(generate_workload(&universe[..1], 10, 1).is_err());
    }

    /// Endpoint frequencies of a generated workload stay within three
    /// standard deviations of the uniform chi-square expectation.
    #[test]
    fn workload_endpoints_uniform() {
        let n = 64usize;
        let universe: Vec<VertexId> = (0..n as u64).map(v).collect();
        let w = generate_workload(&universe, 20_000, 7).unwrap();
        let mut counts = vec![0f64; n];
        for &(a, b) in &w.pairs {
            counts[a.0 as usize] += 1.0;
            counts[b.0 as usize] += 1.0;
        }
        let total: f64 = counts.iter().sum();
        let expected = total / n as f64;
        let chi2: f64 = counts.iter().map(|c| (c - expected).powi(2) / expected).sum();
        let dof = (n - 1) as f64;
        let sigma = (2.0 * dof).sqrt();
        assert!(
            (chi2 - dof).abs() <= 3.0 * sigma,
            "chi-square {chi2} out of range {dof} +- {}",
            3.0 * sigma
        );
    }

    #[test]
    fn running_example_boundaries() {
        // Pair connected through windows 6 and 7 of the alpha=5, beta=1
        // configuration.
        let stream = vec![
            e(1, 2, 7),
            e(6, 8, 9),
            e(8, 100, 10),
            e(100, 101, 11),
            e(3, 4, 12),
        ];
        let cfg = WindowConfig::new(5, 1, Timestamp(1)).unwrap();
        let workload = Workload::fixed(vec![(v(6), v(100))]);
        let mut index = SimpleForest::new();
        let out = run(&stream, cfg, &mut index, &workload, RunOptions::default()).unwrap();
        // Windows 0..=11 (final window starts at t12).
        assert_eq!(out.report.windows, 12);
        let truth = replay_oracle(&stream, cfg, &[(v(6), v(100))]).unwrap();
        assert_eq!(out.answers.len(), truth.len());
        for (wa, expect) in out.answers.iter().zip(&truth) {
            assert_eq!(&wa.answers, expect, "window {}", wa.window);
        }
    }

    #[test]
    fn empty_workload_still_measures() {
        let stream = vec![e(0, 1, 0), e(1, 2, 1)];
        let cfg = WindowConfig::new(2, 1, Timestamp(0)).unwrap();
        let workload = Workload::fixed(vec![]);
        let mut index = SimpleForest::new();
        let out = run(&stream, cfg, &mut index, &workload, RunOptions::default()).unwrap();
        assert!(out.report.throughput_eps > 0.0);
        assert!(out.answers.iter().all(|wa| wa.answers.is_empty()));
    }

    #[test]
    fn order_violation_reports_position() {
        let stream = vec![e(0, 1, 5), e(1, 2, 3)];
        let cfg = WindowConfig::new(2, 1, Timestamp(0)).unwrap();
        let workload = Workload::fixed(vec![]);
        let mut index = SimpleForest::new();
        match run(&stream, cfg, &mut index, &workload, RunOptions::default()) {
            Err(DriverError::StreamOrder(1)) => {}
            other => panic!("expected order violation, got {other:?}"),
        }
    }

    /// Every strategy produces the oracle's answer matrix on a random
    /// stream, and conservation holds: the final index is empty.
    #[test]
    fn all_strategies_agree_with_oracle() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let n = 50u64;
        let mut stream: Vec<StreamingEdge> = (0..400)
            .map(|_| {
                e(
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                    rng.random_range(0..80),
                )
            })
            .collect();
        stream.sort_by_key(|edge| edge.t);
        let cfg = WindowConfig::new(12, 5, Timestamp(0)).unwrap();
        let universe = vertex_universe(&stream);
        let workload = generate_workload(&universe, 60, 11).unwrap();
        let truth = replay_oracle(&stream, cfg, &workload.pairs).unwrap();

        let mut indexes: Vec<(&str, Box<dyn ConnectivityIndex>)> = vec![
            ("omst-s", Box::new(SimpleForest::new())),
            ("omst-d", Box::new(DTree::omst())),
            ("omst-lc", Box::new(LinkCutForest::new())),
            ("mst-d", Box::new(DTree::mst())),
            ("vanilla-d", Box::new(DTree::vanilla())),
            ("rwc", Box::new(RwcIndex::new())),
            ("dfs", Box::new(DfsIndex::new())),
        ];
        let mut checksums = Vec::new();
        for (name, index) in indexes.iter_mut() {
            let out = run(&stream, cfg, index.as_mut(), &workload, RunOptions::default())
                .unwrap_or_else(|err| panic!("{name}: {err}"));
            assert_eq!(out.answers.len(), truth.len(), "{name}");
            for (wa, expect) in out.answers.iter().zip(&truth) {
                assert_eq!(&wa.answers, expect, "{name} window {}", wa.window);
            }
            // Conservation: every edge deleted, nothing connected anymore.
            assert_eq!(index.tree_edge_count(), 0, "{name}");
            assert_eq!(index.non_tree_edge_count(), 0, "{name}");
            checksums.push(answers_checksum(&out.answers));
        }
        assert!(checksums.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn resampled_workload_is_reproducible() {
        let stream: Vec<StreamingEdge> = (0..40).map(|i| e(i, i + 1, i)).collect();
        let cfg = WindowConfig::new(10, 5, Timestamp(0)).unwrap();
        let universe = vertex_universe(&stream);
        let workload = generate_workload(&universe, 20, 3).unwrap();
        let opts = RunOptions {
            resample_workload: true,
        };
        let mut a = SimpleForest::new();
        let mut b = SimpleForest::new();
        let out_a = run(&stream, cfg, &mut a, &workload, opts).unwrap();
        let out_b = run(&stream, cfg, &mut b, &workload, opts).unwrap();
        assert_eq!(out_a.answers, out_b.answers);
    }
}
