//! Synthetic stream generators for benchmarks and tests.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::Zipf;

use crate::stream::{StreamingEdge, Timestamp, VertexId};

/// `n` timestamps drawn uniformly over `[0, t_max)` and sorted ascending,
/// so assigning them in order preserves both the arrival order and the
/// uniform marginal distribution.
pub fn sorted_uniform_timestamps(n: usize, t_max: u64, rng: &mut ChaCha8Rng) -> Vec<Timestamp> {
    let mut ts: Vec<u64> = (0..n).map(|_| rng.random_range(0..t_max.max(1))).collect();
    ts.sort_unstable();
    ts.into_iter().map(Timestamp).collect()
}

/// Uniform random endpoint pairs with uniformly distributed timestamps.
pub fn uniform_stream(vertices: u64, edges: usize, t_max: u64, seed: u64) -> Vec<StreamingEdge> {
    assert!(vertices >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ts = sorted_uniform_timestamps(edges, t_max, &mut rng);
    ts.into_iter()
        .map(|t| {
            let a = rng.random_range(0..vertices);
            let b = loop {
                let b = rng.random_range(0..vertices);
                if b != a {
                    break b;
                }
            };
            StreamingEdge::new(VertexId(a), VertexId(b), t)
        })
        .collect()
}

/// Skewed stream: endpoints follow a Zipf law over the vertex set, giving
/// hub-heavy graphs, with a constant number of edges per time unit so a
/// window of `alpha` ticks holds exactly `alpha * edges_per_tick` edges.
pub fn powerlaw_stream(
    vertices: u64,
    edges: usize,
    edges_per_tick: usize,
    exponent: f64,
    seed: u64,
) -> Vec<StreamingEdge> {
    assert!(vertices >= 2 && edges_per_tick >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zipf = Zipf::new(vertices as f64, exponent).expect("valid Zipf parameters");
    (0..edges)
        .map(|i| {
            let t = Timestamp((i / edges_per_tick) as u64);
            let a = zipf.sample(&mut rng) as u64 - 1;
            let b = loop {
                let b = zipf.sample(&mut rng) as u64 - 1;
                if b != a {
                    break b;
                }
            };
            StreamingEdge::new(VertexId(a), VertexId(b), t)
        })
        .collect()
}

/// Uniform endpoints at a constant edge rate; the window content size is
/// exact rather than expected.
pub fn uniform_stream_fixed_rate(
    vertices: u64,
    edges: usize,
    edges_per_tick: usize,
    seed: u64,
) -> Vec<StreamingEdge> {
    assert!(vertices >= 2 && edges_per_tick >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..edges)
        .map(|i| {
            let t = Timestamp((i / edges_per_tick) as u64);
            let a = rng.random_range(0..vertices);
            let b = loop {
                let b = rng.random_range(0..vertices);
                if b != a {
                    break b;
                }
            };
            StreamingEdge::new(VertexId(a), VertexId(b), t)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stream::stream_validate;

    #[test]
    fn streams_are_ordered_and_deterministic() {
        let a = uniform_stream(100, 1000, 200, 9);
        let b = uniform_stream(100, 1000, 200, 9);
        assert_eq!(a, b);
        assert_eq!(stream_validate(&a), Ok(()));
        assert!(a.iter().all(|e| !e.is_self_loop()));

        let p = powerlaw_stream(1000, 5000, 50, 1.2, 4);
        assert_eq!(stream_validate(&p), Ok(()));
        assert_eq!(p.last().unwrap().t.0, (5000 - 1) / 50);
    }

    #[test]
    fn powerlaw_is_skewed() {
        let p = powerlaw_stream(10_000, 20_000, 100, 1.2, 11);
        let hub_hits = p
            .iter()
            .flat_map(|e| [e.u, e.v])
            .filter(|v| v.0 < 10)
            .count();
        // The ten smallest ids should absorb far more than 10/10000 of the
        // endpoint mass.
        assert!(hub_hits > p.len() / 10, "hub mass too small: {hub_hits}");
    }
}
