//! Connectivity queries over time-based sliding windows on streaming
//! graphs.
//!
//! The indexes in this crate maintain one spanning tree per connected
//! component of the current window, using edge timestamps as weights. When
//! the forest is kept *maximum* under that weighting, every candidate
//! replacement for an expiring tree edge carries an older-or-equal
//! timestamp and therefore expires in the same window transition, so
//! expired tree edges can be cut without ever searching the graph for a
//! replacement. Keeping only maximum forests trades a cheap in-tree
//! path-minimum lookup at insertion time for the elimination of the
//! classic deletion bottleneck of fully-dynamic connectivity structures.
//!
//! Seven interchangeable strategies implement [`ConnectivityIndex`]:
//!
//! * [`SimpleForest`] (`omst-s`) — parent/weight/size records only; no
//!   non-tree edge storage at all.
//! * [`DTree`] in three variants — `vanilla-d` (plain fully-dynamic
//!   baseline with replacement search), `mst-d` (maximum forest plus
//!   stored non-tree edges), and `omst-d` (maximum forest, non-tree edges
//!   discarded).
//! * [`LinkCutForest`] (`omst-lc`) — splay-backed link-cut tree with path
//!   minimum aggregation and constant-time connectivity verdicts.
//! * [`DfsIndex`] and [`RwcIndex`] — non-index baselines.
//!
//! The [`driver`] module replays a stream through any strategy, running a
//! query workload at each window boundary and recording per-boundary
//! latencies; the [`bench`] module layers file ingestion, run
//! specifications, and CSV reporting on top (exposed through the
//! `swconn-bench` binary).
//!
//! See the `examples/` directory for one runnable walkthrough per major
//! capability.

pub mod baseline;
pub mod bench;
pub mod driver;
pub mod dtree;
pub mod lctree;
pub mod stream;
pub mod stree;
pub mod synth;

pub use baseline::{
    dfs_query, kruskal_max_forest, replay_oracle, rwc_query, rwc_rebuild, DfsIndex, RwcIndex,
    UnionFind, WindowGraph,
};
pub use dtree::{DTree, DTreeVariant};
pub use lctree::LinkCutForest;
pub use stream::{
    expired_edges, stream_validate, window_bounds, ConnectivityIndex, IndexError,
    OperationCounters, StreamingEdge, Timestamp, VertexId, WindowConfig, WindowSnapshot,
};
pub use stree::SimpleForest;
