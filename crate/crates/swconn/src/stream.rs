//! Shared domain types: vertices, timestamps, streaming edges, window
//! arithmetic, and the behavioral interface every connectivity index
//! implements.

use std::fmt;

use thiserror::Error;

/// Opaque vertex identifier. Stable for the lifetime of a run; no density
/// or contiguity is assumed.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u64);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Discrete, totally ordered time unit. Window sizes and slide intervals
/// are expressed in these units.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Timestamp(pub u64);

impl Timestamp {
    pub fn saturating_sub(self, units: u64) -> Timestamp {
        Timestamp(self.0.saturating_sub(units))
    }
}

impl std::ops::Add<u64> for Timestamp {
    type Output = Timestamp;
    fn add(self, rhs: u64) -> Timestamp {
        Timestamp(self.0 + rhs)
    }
}

impl fmt::Display for Timestamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}", self.0)
    }
}

/// An undirected timestamped edge, the unit of ingestion and expiration.
///
/// `(u, v, t)` and `(v, u, t)` denote the same edge; equality and hashing
/// are endpoint-order-insensitive.
#[derive(Copy, Clone, Debug)]
pub struct StreamingEdge {
    pub u: VertexId,
    pub v: VertexId,
    pub t: Timestamp,
}

impl StreamingEdge {
    pub fn new(u: VertexId, v: VertexId, t: Timestamp) -> Self {
        StreamingEdge { u, v, t }
    }

    /// Endpoints with the smaller id first.
    pub fn canonical_endpoints(&self) -> (VertexId, VertexId) {
        if self.u <= self.v {
            (self.u, self.v)
        } else {
            (self.v, self.u)
        }
    }

    pub fn is_self_loop(&self) -> bool {
        self.u == self.v
    }
}

impl PartialEq for StreamingEdge {
    fn eq(&self, other: &Self) -> bool {
        self.t == other.t && self.canonical_endpoints() == other.canonical_endpoints()
    }
}

impl Eq for StreamingEdge {}

impl std::hash::Hash for StreamingEdge {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        let (a, b) = self.canonical_endpoints();
        a.hash(state);
        b.hash(state);
        self.t.hash(state);
    }
}

impl fmt::Display for StreamingEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.u, self.v, self.t)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("window size must satisfy alpha >= beta >= 1 (got alpha={alpha}, beta={beta})")]
    InvalidWindow { alpha: u64, beta: u64 },
}

/// Time-based sliding-window parameters: window size `alpha`, slide
/// interval `beta`, and the origin `t0` of the first window.
///
/// `alpha == beta` degenerates to a tumbling window, which is legal.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct WindowConfig {
    pub alpha: u64,
    pub beta: u64,
    pub t0: Timestamp,
}

impl WindowConfig {
    pub fn new(alpha: u64, beta: u64, t0: Timestamp) -> Result<Self, ConfigError> {
        if beta == 0 || alpha < beta {
            return Err(ConfigError::InvalidWindow { alpha, beta });
        }
        Ok(WindowConfig { alpha, beta, t0 })
    }
}

/// Inclusive bounds `[t_b, t_e]` of one window snapshot, spanning exactly
/// `alpha` time units.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct WindowSnapshot {
    pub index: u64,
    pub t_b: Timestamp,
    pub t_e: Timestamp,
}

impl WindowSnapshot {
    pub fn contains(&self, t: Timestamp) -> bool {
        self.t_b <= t && t <= self.t_e
    }
}

/// Bounds of the `i`-th snapshot: `t_b = t0 + i*beta`, `t_e = t_b + alpha - 1`.
pub fn window_bounds(config: WindowConfig, i: u64) -> WindowSnapshot {
    let t_b = Timestamp(config.t0.0 + i * config.beta);
    WindowSnapshot {
        index: i,
        t_b,
        t_e: t_b + (config.alpha - 1),
    }
}

/// Edges of `w_i` that leave the window in the `w_i -> w_{i+1}` transition:
/// exactly those with `t_b <= e.t < t_b + beta`.
pub fn expired_edges<'a, I>(config: WindowConfig, w_i: WindowSnapshot, edges: I) -> Vec<StreamingEdge>
where
    I: IntoIterator<Item = &'a StreamingEdge>,
{
    let cutoff = w_i.t_b + config.beta;
    edges
        .into_iter()
        .filter(|e| w_i.t_b <= e.t && e.t < cutoff)
        .copied()
        .collect()
}

/// The unique transition at which an edge with timestamp `t >= t0` is
/// deleted: the move from window `i` to `i + 1` with `i = (t - t0) / beta`.
pub fn expiry_window_index(config: WindowConfig, t: Timestamp) -> Option<u64> {
    if t < config.t0 {
        return None;
    }
    Some((t.0 - config.t0.0) / config.beta)
}

/// Index of the last window a replay emits: the first window whose
/// expiration clears every edge with timestamp `<= max_t`.
pub fn final_window_index(config: WindowConfig, max_t: Timestamp) -> u64 {
    expiry_window_index(config, max_t).unwrap_or(0)
}

/// Confirms non-decreasing timestamps, reporting the position of the first
/// out-of-order edge otherwise.
pub fn stream_validate(edges: &[StreamingEdge]) -> Result<(), usize> {
    for i in 1..edges.len() {
        if edges[i].t < edges[i - 1].t {
            return Err(i);
        }
    }
    Ok(())
}

/// Instrumentation counters shared by all index strategies. Monotonically
/// non-decreasing within a run; reset only between runs.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct OperationCounters {
    /// Replacement-edge searches performed on tree-edge deletion.
    pub replacement_searches: u64,
    /// Parent-link hops and traversal visits.
    pub nodes_visited: u64,
    /// `access` invocations (link-cut tree only).
    pub accesses: u64,
    /// Re-rooting operations, including opportunistic promotions.
    pub reroots: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IndexError {
    #[error("edge {0} is not stored in the index")]
    UnknownEdge(StreamingEdge),
    #[error("vertices {0} and {1} are not connected")]
    Disconnected(VertexId, VertexId),
    #[error("no cycle: {0} and {1} are the same vertex")]
    DegenerateCycle(VertexId, VertexId),
    #[error("vertex {0} is a root")]
    AlreadyRoot(VertexId),
    #[error("vertices {0} and {1} are already connected")]
    AlreadyConnected(VertexId, VertexId),
    #[error("edge {0} would give a vertex a second parent")]
    SecondParent(StreamingEdge),
}

/// Uniform behavioral interface implemented by every index strategy.
///
/// Callers serialize access; queries may mutate internal structure (the
/// link-cut tree restructures on reads), hence `&mut self` throughout.
pub trait ConnectivityIndex {
    /// Process an arriving edge. Timestamps must be non-decreasing across
    /// calls within a run.
    fn insert(&mut self, edge: StreamingEdge);

    /// Process an expiring edge. Strategies that discard non-tree edges
    /// treat an unstored edge as a no-op; strategies that store every live
    /// edge report it as an error.
    fn delete(&mut self, edge: StreamingEdge) -> Result<(), IndexError>;

    /// Whether `u` and `v` are connected in the current window graph.
    fn query(&mut self, u: VertexId, v: VertexId) -> bool;

    fn tree_edge_count(&self) -> usize;
    fn non_tree_edge_count(&self) -> usize;
    fn vertex_count(&self) -> usize;
    fn counters(&self) -> OperationCounters;
    fn reset_counters(&mut self);
}
