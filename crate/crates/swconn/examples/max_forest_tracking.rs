//! Watch the stored forest track the maximum spanning forest of every
//! window: after each transition the stored tree weight equals the greedy
//! maximum computed from scratch.
//!
//!     cargo run --example max_forest_tracking

use std::collections::VecDeque;

use swconn::baseline::kruskal_max_forest_edges;
use swconn::stream::{final_window_index, window_bounds};
use swconn::stree::SimpleForest;
use swconn::synth::uniform_stream;
use swconn::{ConnectivityIndex, Timestamp, WindowConfig};

fn main() {
    let stream = uniform_stream(60, 600, 120, 13);
    let config = WindowConfig::new(20, 5, Timestamp(0)).unwrap();
    let last = final_window_index(config, stream.last().unwrap().t);

    let mut index = SimpleForest::new();
    let mut live: VecDeque<_> = VecDeque::new();
    let mut next = 0;
    println!("window  live-edges  stored-weight  greedy-max  equal");
    for i in 0..=last {
        let w = window_bounds(config, i);
        while next < stream.len() && stream[next].t <= w.t_e {
            index.insert(stream[next]);
            live.push_back(stream[next]);
            next += 1;
        }
        let (greedy, _) = kruskal_max_forest_edges(live.iter().copied());
        let stored = index.total_tree_weight();
        println!(
            "w{:<5}  {:>10}  {:>13}  {:>10}  {}",
            i,
            live.len(),
            stored,
            greedy,
            stored == greedy
        );
        assert_eq!(stored, greedy);
        let cutoff = w.t_b + config.beta;
        while live.front().is_some_and(|e| e.t < cutoff) {
            index.delete(live.pop_front().unwrap()).unwrap();
        }
    }
    println!("\nmaximum-forest totals matched at every boundary");
}
