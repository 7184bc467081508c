//! Run every strategy over one random stream and show that the answer
//! matrices agree while the operation counters tell each structure's
//! story.
//!
//!     cargo run --release --example index_comparison

use swconn::bench::Strategy;
use swconn::driver::{answers_checksum, generate_workload, run, vertex_universe, RunOptions};
use swconn::synth::uniform_stream;
use swconn::{Timestamp, WindowConfig};

fn main() {
    let stream = uniform_stream(3_000, 120_000, 600, 42);
    let config = WindowConfig::new(30, 10, Timestamp(0)).unwrap();
    let universe = vertex_universe(&stream);
    let workload = generate_workload(&universe, 500, 7).unwrap();

    println!(
        "{:<10} {:>10} {:>12} {:>12} {:>10} {:>10} {:>9}",
        "strategy", "edges/s", "q_p99", "wm_p99", "searches", "accesses", "checksum"
    );
    let mut checksums = Vec::new();
    for strategy in Strategy::ALL {
        let mut index = strategy.build();
        let out = run(&stream, config, index.as_mut(), &workload, RunOptions::default()).unwrap();
        let checksum = answers_checksum(&out.answers);
        checksums.push(checksum);
        let r = &out.report;
        println!(
            "{:<10} {:>10.0} {:>12?} {:>12?} {:>10} {:>10} {:>9x}",
            strategy.name(),
            r.throughput_eps,
            r.q_p99,
            r.wm_p99,
            r.counters.replacement_searches,
            r.counters.accesses,
            checksum & 0xfffff,
        );
    }
    assert!(
        checksums.windows(2).all(|w| w[0] == w[1]),
        "all strategies must produce identical answers"
    );
    println!("\nall seven answer matrices identical");
}
