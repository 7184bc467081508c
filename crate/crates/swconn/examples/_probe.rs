fn main() {
    use swconn::driver::{generate_workload, run, RunOptions};
    use swconn::bench::Strategy;
    use swconn::synth::powerlaw_stream;
    use swconn::{Timestamp, VertexId, WindowConfig};
    let stream = powerlaw_stream(60_000, 600_000, 1000, 1.3, 99);
    // Hot vertices: always inside the window at every size.
    let hubs: Vec<VertexId> = (0..2000).map(VertexId).collect();
    for (strategy, batch) in [(Strategy::Rwc, 2_000), (Strategy::OmstS, 12_000), (Strategy::OmstD, 12_000), (Strategy::OmstLc, 12_000)] {
        let workload = generate_workload(&hubs, batch, 9).unwrap();
        let mut q99s = [0f64; 4];
        for (i, &alpha) in [10u64, 20, 40, 80].iter().enumerate() {
            let cfg = WindowConfig::new(alpha, 2, Timestamp(0)).unwrap();
            let mut floor: Vec<u128> = Vec::new();
            for _ in 0..4 {
                let mut index = strategy.build();
                let out = run(&stream, cfg, index.as_mut(), &workload, RunOptions::default()).unwrap();
                let round: Vec<u128> = out.latencies.iter().map(|l| l.query_latency.as_nanos()).collect();
                if floor.is_empty() { floor = round; }
                else { for (f, r) in floor.iter_mut().zip(round) { *f = (*f).min(r); } }
            }
            floor.sort_unstable();
            let rank = ((0.99 * floor.len() as f64).ceil() as usize).clamp(1, floor.len());
            q99s[i] = floor[rank - 1] as f64;
        }
        println!("{:<8} q_p99 us {:>8.0} {:>8.0} {:>8.0} {:>8.0}  ratio {:.2}",
            strategy.name(), q99s[0]/1e3, q99s[1]/1e3, q99s[2]/1e3, q99s[3]/1e3, q99s[3]/q99s[0]);
    }
}
