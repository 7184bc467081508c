//! The core trade: with timestamps as weights, a maximum spanning forest
//! never needs a replacement-edge search when an expired tree edge is
//! cut, because every candidate replacement is at least as old and
//! expires in the same transition. The plain fully-dynamic baseline pays
//! for the same deletions with subtree searches.
//!
//!     cargo run --release --example searchless_deletion

use swconn::driver::{generate_workload, run, vertex_universe, RunOptions};
use swconn::dtree::DTree;
use swconn::synth::powerlaw_stream;
use swconn::{ConnectivityIndex, Timestamp, WindowConfig};

fn main() {
    // Hub-heavy stream: plenty of cycles, so expiring tree edges usually
    // have live non-tree neighbors to scan in the baseline.
    let stream = powerlaw_stream(5_000, 200_000, 500, 1.2, 9);
    let config = WindowConfig::new(40, 4, Timestamp(0)).unwrap();
    let universe = vertex_universe(&stream);
    let workload = generate_workload(&universe, 100, 3).unwrap();

    let mut vanilla = DTree::vanilla();
    let out_v = run(&stream, config, &mut vanilla, &workload, RunOptions::default()).unwrap();
    let mut omst = DTree::omst();
    let out_o = run(&stream, config, &mut omst, &workload, RunOptions::default()).unwrap();

    println!("deletions processed by both: {}", out_v.report.edges);
    println!(
        "vanilla-d : {:>8} replacement searches, wm_p99 {:?}",
        out_v.report.counters.replacement_searches, out_v.report.wm_p99
    );
    println!(
        "omst-d    : {:>8} replacement searches, wm_p99 {:?}",
        out_o.report.counters.replacement_searches, out_o.report.wm_p99
    );
    assert_eq!(omst.counters().replacement_searches, 0);
    assert!(vanilla.counters().replacement_searches > 0);
    println!(
        "\nsame answers: {}",
        swconn::driver::answers_checksum(&out_v.answers)
            == swconn::driver::answers_checksum(&out_o.answers)
    );
}
