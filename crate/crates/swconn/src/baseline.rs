//! Non-index baselines (graph-scan DFS and per-window recomputation) and
//! brute-force oracles (union-find connectivity, greedy maximum spanning
//! forest) used by property tests and the acceptance suite.

use std::collections::{BTreeMap, HashMap};

use crate::stream::{
    final_window_index, stream_validate, window_bounds, ConnectivityIndex, IndexError,
    OperationCounters, StreamingEdge, Timestamp, VertexId, WindowConfig,
};

/// Multigraph over the current window: per-vertex multiset of
/// `(neighbor, timestamp)` entries.
#[derive(Clone, Debug, Default)]
pub struct WindowGraph {
    adjacency: HashMap<VertexId, BTreeMap<(VertexId, Timestamp), u32>>,
    edge_count: usize,
}

impl WindowGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, e: StreamingEdge) {
        *self.adjacency.entry(e.u).or_default().entry((e.v, e.t)).or_insert(0) += 1;
        *self.adjacency.entry(e.v).or_default().entry((e.u, e.t)).or_insert(0) += 1;
        self.edge_count += 1;
    }

    pub fn remove(&mut self, e: StreamingEdge) -> bool {
        let present = self
            .adjacency
            .get(&e.u)
            .is_some_and(|n| n.contains_key(&(e.v, e.t)));
        if !present {
            return false;
        }
        let mut drop_entry = |a: VertexId, b: VertexId| {
            let neighbors = self.adjacency.get_mut(&a).unwrap();
            let count = neighbors.get_mut(&(b, e.t)).unwrap();
            *count -= 1;
            if *count == 0 {
                neighbors.remove(&(b, e.t));
            }
            if neighbors.is_empty() {
                self.adjacency.remove(&a);
            }
        };
        drop_entry(e.u, e.v);
        drop_entry(e.v, e.u);
        self.edge_count -= 1;
        true
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adjacency
            .get(&v)
            .into_iter()
            .flat_map(|n| n.keys().map(|&(u, _)| u))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adjacency.keys().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = StreamingEdge> + '_ {
        self.adjacency.iter().flat_map(|(&u, neighbors)| {
            neighbors
                .iter()
                .filter(move |&(&(v, _), _)| u <= v)
                .flat_map(move |(&(v, t), &count)| {
                    // A self-loop contributes two entries on the same vertex.
                    let occurrences = if u == v { count / 2 } else { count };
                    (0..occurrences).map(move |_| StreamingEdge::new(u, v, t))
                })
        })
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.adjacency.contains_key(&v)
    }
}

/// Disjoint sets with union by size and path halving.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            components: n,
        }
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grandparent = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grandparent;
            x = grandparent;
        }
        x
    }

    /// Returns true when two distinct sets were merged.
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
        self.components -= 1;
        true
    }

    pub fn components(&self) -> usize {
        self.components
    }
}

/// Connectivity by explicit-stack depth-first search; no state retained
/// across queries.
pub fn dfs_query(g: &WindowGraph, u: VertexId, v: VertexId) -> bool {
    if u == v {
        return true;
    }
    if !g.contains_vertex(u) || !g.contains_vertex(v) {
        return false;
    }
    let mut seen = HashMap::new();
    let mut stack = vec![u];
    seen.insert(u, ());
    while let Some(x) = stack.pop() {
        for n in g.neighbors(x) {
            if n == v {
                return true;
            }
            if seen.insert(n, ()).is_none() {
                stack.push(n);
            }
        }
    }
    false
}

/// Component labeling produced by one union-find pass over a window graph.
#[derive(Clone, Debug)]
pub struct ComponentLabeling {
    labels: HashMap<VertexId, u32>,
}

/// Recompute connected components of the current window from scratch.
pub fn rwc_rebuild(g: &WindowGraph) -> ComponentLabeling {
    let verts: Vec<VertexId> = g.vertices().collect();
    let slot: HashMap<VertexId, u32> = verts
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as u32))
        .collect();
    let mut uf = UnionFind::new(verts.len());
    for e in g.edges() {
        uf.union(slot[&e.u], slot[&e.v]);
    }
    let labels = verts.iter().map(|&v| (v, uf.find(slot[&v]))).collect();
    ComponentLabeling { labels }
}

/// Two lookups against a labeling; vertices absent from the window are
/// isolated.
pub fn rwc_query(labeling: &ComponentLabeling, u: VertexId, v: VertexId) -> bool {
    if u == v {
        return true;
    }
    match (labeling.labels.get(&u), labeling.labels.get(&v)) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    }
}

/// Greedy maximum spanning forest with timestamps as weights. Edges are
/// taken in descending timestamp order, ties broken by canonical endpoint
/// order, so the witness forest is deterministic; the total weight is
/// unique regardless of tie order.
pub fn kruskal_max_forest(g: &WindowGraph) -> (u64, Vec<StreamingEdge>) {
    kruskal_max_forest_edges(g.edges())
}

pub fn kruskal_max_forest_edges<I>(edges: I) -> (u64, Vec<StreamingEdge>)
where
    I: IntoIterator<Item = StreamingEdge>,
{
    let mut edges: Vec<StreamingEdge> = edges.into_iter().filter(|e| !e.is_self_loop()).collect();
    edges.sort_by(|a, b| {
        b.t.cmp(&a.t)
            .then_with(|| a.canonical_endpoints().cmp(&b.canonical_endpoints()))
    });
    let mut slot: HashMap<VertexId, u32> = HashMap::new();
    let mut slot_of = |v: VertexId, next: &mut u32| -> u32 {
        *slot.entry(v).or_insert_with(|| {
            let s = *next;
            *next += 1;
            s
        })
    };
    let mut next = 0u32;
    let slots: Vec<(u32, u32)> = edges
        .iter()
        .map(|e| (slot_of(e.u, &mut next), slot_of(e.v, &mut next)))
        .collect();
    let mut uf = UnionFind::new(next as usize);
    let mut total = 0u64;
    let mut forest = Vec::new();
    for (e, &(a, b)) in edges.iter().zip(&slots) {
        if uf.union(a, b) {
            total += e.t.0;
            forest.push(*e);
        }
    }
    (total, forest)
}

/// Per-window ground truth for a fixed query workload, computed by
/// materializing each window's live edge multiset directly from the stream
/// and running union-find over it.
pub fn replay_oracle(
    stream: &[StreamingEdge],
    config: WindowConfig,
    pairs: &[(VertexId, VertexId)],
) -> Result<Vec<Vec<bool>>, usize> {
    stream_validate(stream)?;
    let relevant: Vec<StreamingEdge> = stream
        .iter()
        .filter(|e| !e.is_self_loop() && e.t >= config.t0)
        .copied()
        .collect();
    let Some(max_t) = relevant.iter().map(|e| e.t).max() else {
        return Ok(Vec::new());
    };
    let last = final_window_index(config, max_t);
    let mut table = Vec::with_capacity(last as usize + 1);
    for i in 0..=last {
        let w = window_bounds(config, i);
        let live: Vec<&StreamingEdge> = relevant.iter().filter(|e| w.contains(e.t)).collect();
        let mut slot: HashMap<VertexId, u32> = HashMap::new();
        for e in &live {
            let n = slot.len() as u32;
            slot.entry(e.u).or_insert(n);
            let n = slot.len() as u32;
            slot.entry(e.v).or_insert(n);
        }
        let mut uf = UnionFind::new(slot.len());
        for e in &live {
            uf.union(slot[&e.u], slot[&e.v]);
        }
        let answers = pairs
            .iter()
            .map(|&(u, v)| {
                if u == v {
                    return true;
                }
                match (slot.get(&u), slot.get(&v)) {
                    (Some(&a), Some(&b)) => uf.find(a) == uf.find(b),
                    _ => false,
                }
            })
            .collect();
        table.push(answers);
    }
    Ok(table)
}

/// Graph-scan baseline: maintains only the window graph and answers each
/// query with a fresh depth-first search.
#[derive(Default)]
pub struct DfsIndex {
    graph: WindowGraph,
    counters: OperationCounters,
}

impl DfsIndex {
    pub fn new() -> Self {
        Self::default()
    }
}

impl ConnectivityIndex for DfsIndex {
    fn insert(&mut self, edge: StreamingEdge) {
        self.graph.insert(edge);
    }

    fn delete(&mut self, edge: StreamingEdge) -> Result<(), IndexError> {
        if self.graph.remove(edge) {
            Ok(())
        } else {
            Err(IndexError::UnknownEdge(edge))
        }
    }

    fn query(&mut self, u: VertexId, v: VertexId) -> bool {
        dfs_query(&self.graph, u, v)
    }

    fn tree_edge_count(&self) -> usize {
        0
    }

    fn non_tree_edge_count(&self) -> usize {
        0
    }

    fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    fn counters(&self) -> OperationCounters {
        self.counters
    }

    fn reset_counters(&mut self) {
        self.counters = OperationCounters::default();
    }
}

/// Recompute-per-window baseline: deletes expired edges from its window
/// graph eagerly, then rebuilds the component labeling lazily before the
/// first query that observes a modified graph.
#[derive(Default)]
pub struct RwcIndex {
    graph: WindowGraph,
    labeling: Option<ComponentLabeling>,
    counters: OperationCounters,
}

impl RwcIndex {
    pub fn new() -> Self {
        Self::default()
    }
}

impl ConnectivityIndex for RwcIndex {
    fn insert(&mut self, edge: StreamingEdge) {
        self.graph.insert(edge);
        self.labeling = None;
    }

    fn delete(&mut self, edge: StreamingEdge) -> Result<(), IndexError> {
        self.labeling = None;
        if self.graph.remove(edge) {
            Ok(())
        } else {
            Err(IndexError::UnknownEdge(edge))
        }
    }

    fn query(&mut self, u: VertexId, v: VertexId) -> bool {
        if self.labeling.is_none() {
            self.labeling = Some(rwc_rebuild(&self.graph));
        }
        rwc_query(self.labeling.as_ref().unwrap(), u, v)
    }

    fn tree_edge_count(&self) -> usize {
        0
    }

    fn non_tree_edge_count(&self) -> usize {
        0
    }

    fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    fn counters(&self) -> OperationCounters {
        self.counters
    }

    fn reset_counters(&mut self) {
        self.counters = OperationCounters::default();
    }
}
