//! Desk-scale latency benchmark: tail latencies and throughput for every
//! strategy on one hub-heavy stream, the separation the maximum-forest
//! framework is built for.
//!
//!     cargo run --release --example latency_benchmark

use swconn::bench::Strategy;
use swconn::driver::{generate_workload, run, vertex_universe, RunOptions};
use swconn::synth::powerlaw_stream;
use swconn::{Timestamp, WindowConfig};

fn main() {
    let stream = powerlaw_stream(20_000, 500_000, 1000, 1.2, 21);
    let config = WindowConfig::new(50, 5, Timestamp(0)).unwrap();
    let universe = vertex_universe(&stream);
    let workload = generate_workload(&universe, 1_000, 5).unwrap();
    println!(
        "{} edges, {}-edge windows sliding by {}, workload {} queries/boundary\n",
        stream.len(),
        config.alpha * 1000,
        config.beta * 1000,
        workload.size
    );
    println!(
        "{:<10} {:>10} {:>12} {:>12} {:>12} {:>12} {:>10}",
        "strategy", "edges/s", "q_p95", "q_p99", "wm_p95", "wm_p99", "peak MiB"
    );
    for strategy in Strategy::ALL {
        let mut index = strategy.build();
        let out = run(&stream, config, index.as_mut(), &workload, RunOptions::default()).unwrap();
        let r = &out.report;
        println!(
            "{:<10} {:>10.0} {:>12?} {:>12?} {:>12?} {:>12?} {:>10.1}",
            strategy.name(),
            r.throughput_eps,
            r.q_p95,
            r.q_p99,
            r.wm_p95,
            r.wm_p99,
            r.peak_rss_bytes as f64 / (1024.0 * 1024.0),
        );
    }
}
