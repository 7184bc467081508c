//! Replay a small stream through the minimal spanning-forest index and
//! print the per-window connectivity answers next to the ground truth.
//!
//!     cargo run --example window_replay

use swconn::baseline::replay_oracle;
use swconn::driver::{run, RunOptions, Workload};
use swconn::stree::SimpleForest;
use swconn::{StreamingEdge, Timestamp, VertexId, WindowConfig};

fn main() {
    let v = VertexId;
    let e = |u: u64, w: u64, t: u64| StreamingEdge::new(v(u), v(w), Timestamp(t));

    // A short stream: a triangle forms, ages out, and a new component
    // appears.
    let stream = vec![
        e(1, 2, 0),
        e(2, 3, 1),
        e(3, 1, 2),
        e(4, 5, 3),
        e(5, 6, 4),
        e(1, 4, 6),
    ];
    let config = WindowConfig::new(3, 1, Timestamp(0)).unwrap();
    let pairs = vec![(v(1), v(3)), (v(4), v(6)), (v(1), v(6))];
    let workload = Workload::fixed(pairs.clone());

    let mut index = SimpleForest::new();
    let output = run(&stream, config, &mut index, &workload, RunOptions::default()).unwrap();
    let truth = replay_oracle(&stream, config, &pairs).unwrap();

    println!("window  span      1~3    4~6    1~6    (oracle agrees)");
    for wa in &output.answers {
        let w = swconn::window_bounds(config, wa.window);
        let agree = wa.answers == truth[wa.window as usize];
        println!(
            "w{:<5}  t{}..t{}   {:<5}  {:<5}  {:<5}  {}",
            wa.window, w.t_b.0, w.t_e.0, wa.answers[0], wa.answers[1], wa.answers[2], agree
        );
        assert!(agree);
    }
    let r = &output.report;
    println!(
        "\n{} edges over {} windows in {:?} ({:.0} edges/s), no replacement searches: {}",
        r.edges,
        r.windows,
        r.elapsed,
        r.throughput_eps,
        r.counters.replacement_searches == 0
    );
}
