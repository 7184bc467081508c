//! Shared fixtures: a small hand-built stream whose window evolution
//! exercises every interesting transition (expiring bridges whose
//! replacement candidates expire with them, cycle-edge evictions, equal-
//! weight discards), plus replay helpers.

#![allow(dead_code)]

use swconn::{StreamingEdge, Timestamp, VertexId, WindowConfig};

pub const A: VertexId = VertexId(0);
pub const B: VertexId = VertexId(1);
pub const C: VertexId = VertexId(2);
pub const D: VertexId = VertexId(3);
pub const E: VertexId = VertexId(4);
pub const F: VertexId = VertexId(5);
pub const G: VertexId = VertexId(6);
pub const H: VertexId = VertexId(7);
pub const I: VertexId = VertexId(8);
pub const K: VertexId = VertexId(10);

pub fn edge(u: VertexId, v: VertexId, t: u64) -> StreamingEdge {
    StreamingEdge::new(u, v, Timestamp(t))
}

/// The demo stream: ten edges spanning t7..t11 form one connected
/// component; four more arrive at t12. With a five-unit window sliding by
/// one unit, the t7..t11 window holds the whole first component.
pub fn demo_stream() -> Vec<StreamingEdge> {
    vec![
        edge(B, D, 7),
        edge(A, D, 7),
        edge(E, F, 7),
        edge(B, C, 8),
        edge(E, C, 9),
        edge(F, G, 9),
        edge(A, C, 10),
        edge(D, G, 11),
        edge(A, H, 11),
        edge(H, I, 11),
        edge(A, I, 12),
        edge(K, B, 12),
        edge(H, D, 12),
        edge(D, C, 12),
    ]
}

/// Edges live in the t7..t11 window.
pub fn demo_first_window() -> Vec<StreamingEdge> {
    demo_stream().into_iter().filter(|e| e.t.0 <= 11).collect()
}

pub fn demo_config() -> WindowConfig {
    WindowConfig::new(5, 1, Timestamp(1)).unwrap()
}

/// The spanning tree of the first window that keeps (A,C) and (E,F) out,
/// oriented child-to-parent from root D.
pub fn demo_non_max_tree() -> Vec<(VertexId, VertexId, Timestamp)> {
    vec![
        (B, D, Timestamp(7)),
        (A, D, Timestamp(7)),
        (C, B, Timestamp(8)),
        (E, C, Timestamp(9)),
        (G, D, Timestamp(11)),
        (F, G, Timestamp(9)),
        (H, A, Timestamp(11)),
        (I, H, Timestamp(11)),
    ]
}

/// The t8..t12 maximum spanning tree oriented from root B, as used by the
/// restructuring walkthroughs.
pub fn demo_second_window_tree() -> Vec<(VertexId, VertexId, Timestamp)> {
    vec![
        (C, B, Timestamp(8)),
        (K, B, Timestamp(12)),
        (E, C, Timestamp(9)),
        (D, C, Timestamp(12)),
        (H, D, Timestamp(12)),
        (G, D, Timestamp(11)),
        (A, H, Timestamp(11)),
        (F, G, Timestamp(9)),
        (I, A, Timestamp(12)),
    ]
}

pub fn canon(edges: &[StreamingEdge]) -> Vec<(u64, u64, u64)> {
    let mut out: Vec<(u64, u64, u64)> = edges
        .iter()
        .map(|edge| {
            let (a, b) = edge.canonical_endpoints();
            (a.0, b.0, edge.t.0)
        })
        .collect();
    out.sort_unstable();
    out
}
