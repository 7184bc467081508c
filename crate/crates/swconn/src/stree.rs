//! Simple parent-linked spanning forest over the maximum-weight framework:
//! each vertex stores only its parent link, the timestamp of the edge to
//! the parent, and its subtree size. No non-tree edge is ever stored, and
//! tree-edge deletion is a single cut with no replacement search.

use std::collections::HashMap;

use crate::stream::{
    ConnectivityIndex, IndexError, OperationCounters, StreamingEdge, Timestamp, VertexId,
};

const UNSET: u32 = u32::MAX;

/// A tree edge reported by path-minimum lookups, oriented child-to-parent.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct TreeEdge {
    pub child: VertexId,
    pub parent: VertexId,
    pub weight: Timestamp,
}

impl TreeEdge {
    pub fn endpoints(&self) -> (VertexId, VertexId) {
        if self.child <= self.parent {
            (self.child, self.parent)
        } else {
            (self.parent, self.child)
        }
    }
}

#[derive(Clone, Debug)]
struct Node {
    vertex: VertexId,
    parent: u32,
    weight: Timestamp,
    /// Vertex count of the subtree rooted here; 0 marks a freed slot.
    size: u32,
}

/// Maximum spanning forest with the minimal per-vertex record.
#[derive(Default)]
pub struct SimpleForest {
    slots: HashMap<VertexId, u32>,
    nodes: Vec<Node>,
    free: Vec<u32>,
    tree_edges: usize,
    counters: OperationCounters,
}

impl SimpleForest {
    pub fn new() -> Self {
        Self::default()
    }

    fn slot(&self, v: VertexId) -> Option<u32> {
        self.slots.get(&v).copied()
    }

    fn ensure(&mut self, v: VertexId) -> u32 {
        if let Some(s) = self.slot(v) {
            return s;
        }
        let node = Node {
            vertex: v,
            parent: UNSET,
            weight: Timestamp(0),
            size: 1,
        };
        let s = match self.free.pop() {
            Some(s) => {
                self.nodes[s as usize] = node;
                s
            }
            None => {
                self.nodes.push(node);
                (self.nodes.len() - 1) as u32
            }
        };
        self.slots.insert(v, s);
        s
    }

    fn root_of(&mut self, mut s: u32) -> (u32, u32) {
        let mut depth = 0;
        while self.nodes[s as usize].parent != UNSET {
            s = self.nodes[s as usize].parent;
            depth += 1;
            self.counters.nodes_visited += 1;
        }
        (s, depth)
    }

    /// Slots from `s` up to and including the root.
    fn path_to_root(&mut self, s: u32) -> Vec<u32> {
        let mut path = vec![s];
        let mut cur = s;
        while self.nodes[cur as usize].parent != UNSET {
            cur = self.nodes[cur as usize].parent;
            self.counters.nodes_visited += 1;
            path.push(cur);
        }
        path
    }

    fn re_root_slot(&mut self, s: u32) {
        let path = self.path_to_root(s);
        if path.len() == 1 {
            return;
        }
        self.counters.reroots += 1;
        let total = self.nodes[*path.last().unwrap() as usize].size;
        let old_sizes: Vec<u32> = path.iter().map(|&p| self.nodes[p as usize].size).collect();
        let old_weights: Vec<Timestamp> =
            path.iter().map(|&p| self.nodes[p as usize].weight).collect();
        self.nodes[s as usize].parent = UNSET;
        self.nodes[s as usize].size = total;
        for i in 1..path.len() {
            let node = &mut self.nodes[path[i] as usize];
            node.parent = path[i - 1];
            node.weight = old_weights[i - 1];
            node.size = total - old_sizes[i - 1];
        }
    }

    /// Link the tree containing `a` under vertex `b` with edge weight `t`,
    /// re-rooting the smaller tree (ties link `a`'s tree under `b`).
    fn link_slots(&mut self, a: u32, b: u32, t: Timestamp) {
        let (root_a, _) = self.root_of(a);
        let (root_b, _) = self.root_of(b);
        debug_assert_ne!(root_a, root_b);
        let (child, target) = if self.nodes[root_a as usize].size <= self.nodes[root_b as usize].size
        {
            (a, b)
        } else {
            (b, a)
        };
        self.re_root_slot(child);
        let child_size = self.nodes[child as usize].size;
        self.nodes[child as usize].parent = target;
        self.nodes[child as usize].weight = t;
        let mut cur = target;
        loop {
            self.nodes[cur as usize].size += child_size;
            if self.nodes[cur as usize].parent == UNSET {
                break;
            }
            cur = self.nodes[cur as usize].parent;
            self.counters.nodes_visited += 1;
        }
        self.tree_edges += 1;
    }

    fn cut_slot(&mut self, child: u32) {
        let parent = self.nodes[child as usize].parent;
        debug_assert_ne!(parent, UNSET);
        let child_size = self.nodes[child as usize].size;
        self.nodes[child as usize].parent = UNSET;
        let mut cur = parent;
        loop {
            self.nodes[cur as usize].size -= child_size;
            if self.nodes[cur as usize].parent == UNSET {
                break;
            }
            cur = self.nodes[cur as usize].parent;
            self.counters.nodes_visited += 1;
        }
        self.tree_edges -= 1;
    }

    /// Minimum-weight tree edge on the two root paths up to the meeting
    /// point, as `(lca, best)`. Ties prefer the `a`-side path, and within a
    /// side the edge nearest the meeting point.
    fn min_on_cycle(&mut self, a: u32, b: u32) -> Option<(u32, u32, Timestamp)> {
        let path_a = self.path_to_root(a);
        let path_b = self.path_to_root(b);
        if path_a.last() != path_b.last() {
            return None;
        }
        // Trim the shared suffix to find the meeting point.
        let mut ia = path_a.len();
        let mut ib = path_b.len();
        while ia > 1 && ib > 1 && path_a[ia - 2] == path_b[ib - 2] {
            ia -= 1;
            ib -= 1;
        }
        // path_a[..ia] now runs a..=lca, likewise for b.
        let mut best: Option<(u32, Timestamp, bool)> = None;
        for (side_b, path, len) in [(false, &path_a, ia), (true, &path_b, ib)] {
            for &child in &path[..len - 1] {
                let w = self.nodes[child as usize].weight;
                let replace = match best {
                    None => true,
                    // Later edges on the same side sit nearer the meeting
                    // point; the b side only wins strictly.
                    Some((_, bw, best_is_b)) => {
                        if side_b && !best_is_b {
                            w < bw
                        } else {
                            w <= bw
                        }
                    }
                };
                if replace {
                    best = Some((child, w, side_b));
                }
            }
        }
        let (child, w, _) = best?;
        Some((path_a[ia - 1], child, w))
    }

    /// Root of `v`'s tree and the hop distance to it. Unknown vertices are
    /// isolated singletons.
    pub fn find_root(&mut self, v: VertexId) -> (VertexId, u32) {
        match self.slot(v) {
            None => (v, 0),
            Some(s) => {
                let (root, depth) = self.root_of(s);
                (self.nodes[root as usize].vertex, depth)
            }
        }
    }

    /// Make `v` the root of its tree, reversing its parent chain.
    pub fn re_root(&mut self, v: VertexId) {
        if let Some(s) = self.slot(v) {
            self.re_root_slot(s);
        }
    }

    /// Minimum-weight tree edge on the unique tree path between `u` and `v`.
    pub fn find_min_in_cycle(&mut self, u: VertexId, v: VertexId) -> Result<TreeEdge, IndexError> {
        if u == v {
            return Err(IndexError::DegenerateCycle(u, v));
        }
        let (Some(us), Some(vs)) = (self.slot(u), self.slot(v)) else {
            return Err(IndexError::Disconnected(u, v));
        };
        match self.min_on_cycle(us, vs) {
            None => Err(IndexError::Disconnected(u, v)),
            Some((_, child, w)) => {
                let parent = self.nodes[self.nodes[child as usize].parent as usize].vertex;
                Ok(TreeEdge {
                    child: self.nodes[child as usize].vertex,
                    parent,
                    weight: w,
                })
            }
        }
    }

    /// Drop isolated vertices so their slots can be reused. Off the hot
    /// path; callers invoke it explicitly between windows if desired.
    pub fn compact(&mut self) {
        let isolated: Vec<(VertexId, u32)> = self
            .slots
            .iter()
            .map(|(&v, &s)| (v, s))
            .filter(|&(_, s)| {
                self.nodes[s as usize].parent == UNSET && self.nodes[s as usize].size == 1
            })
            .collect();
        for (v, s) in isolated {
            self.slots.remove(&v);
            self.nodes[s as usize].size = 0;
            self.free.push(s);
        }
    }

    /// Sum of stored tree-edge weights.
    pub fn total_tree_weight(&self) -> u64 {
        self.nodes
            .iter()
            .filter(|n| n.size > 0 && n.parent != UNSET)
            .map(|n| n.weight.0)
            .sum()
    }

    /// The stored forest as undirected edges.
    pub fn tree_edge_set(&self) -> Vec<StreamingEdge> {
        self.nodes
            .iter()
            .filter(|n| n.size > 0 && n.parent != UNSET)
            .map(|n| StreamingEdge::new(n.vertex, self.nodes[n.parent as usize].vertex, n.weight))
            .collect()
    }

    /// Structure-only fingerprint (counters excluded), for purity checks.
    pub fn state_fingerprint(&self) -> u64 {
        let mut rows: Vec<(u64, u64, u64, u32)> = self
            .nodes
            .iter()
            .filter(|n| n.size > 0)
            .map(|n| {
                let parent = if n.parent == UNSET {
                    u64::MAX
                } else {
                    self.nodes[n.parent as usize].vertex.0
                };
                (n.vertex.0, parent, n.weight.0, n.size)
            })
            .collect();
        rows.sort_unstable();
        let mut h = 0xcbf29ce484222325u64;
        for (a, b, c, d) in rows {
            for x in [a, b, c, d as u64] {
                h ^= x;
                h = h.wrapping_mul(0x100000001b3);
            }
        }
        h
    }

    /// Recount every subtree from the parent links; used by invariant tests.
    #[doc(hidden)]
    pub fn recounted_sizes_match(&self) -> bool {
        let mut recount: HashMap<u32, u32> = HashMap::new();
        for (i, n) in self.nodes.iter().enumerate() {
            if n.size == 0 {
                continue;
            }
            let mut cur = i as u32;
            loop {
                *recount.entry(cur).or_insert(0) += 1;
                let p = self.nodes[cur as usize].parent;
                if p == UNSET {
                    break;
                }
                cur = p;
            }
        }
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.size > 0)
            .all(|(i, n)| recount.get(&(i as u32)).copied() == Some(n.size))
    }
}

impl ConnectivityIndex for SimpleForest {
    fn insert(&mut self, edge: StreamingEdge) {
        if edge.is_self_loop() {
            return;
        }
        let us = self.ensure(edge.u);
        let vs = self.ensure(edge.v);
        let (root_u, _) = self.root_of(us);
        let (root_v, _) = self.root_of(vs);
        if root_u != root_v {
            self.link_slots(us, vs, edge.t);
            return;
        }
        let (_, min_child, min_w) = self
            .min_on_cycle(us, vs)
            .expect("connected endpoints have a tree path");
        if min_w < edge.t {
            self.cut_slot(min_child);
            self.link_slots(us, vs, edge.t);
        }
        // Otherwise the edge is discarded entirely: nothing is stored.
    }

    fn delete(&mut self, edge: StreamingEdge) -> Result<(), IndexError> {
        if edge.is_self_loop() {
            return Ok(());
        }
        let (Some(us), Some(vs)) = (self.slot(edge.u), self.slot(edge.v)) else {
            return Ok(());
        };
        if self.nodes[us as usize].parent == vs && self.nodes[us as usize].weight == edge.t {
            self.cut_slot(us);
        } else if self.nodes[vs as usize].parent == us && self.nodes[vs as usize].weight == edge.t {
            self.cut_slot(vs);
        }
        // No match: the edge was discarded at insertion; deleting it is a
        // no-op and never triggers a search.
        Ok(())
    }

    fn query(&mut self, u: VertexId, v: VertexId) -> bool {
        if u == v {
            return true;
        }
        self.find_root(u).0 == self.find_root(v).0
    }

    fn tree_edge_count(&self) -> usize {
        self.tree_edges
    }

    fn non_tree_edge_count(&self) -> usize {
        0
    }

    fn vertex_count(&self) -> usize {
        self.slots.len()
    }

    fn counters(&self) -> OperationCounters {
        self.counters
    }

    fn reset_counters(&mut self) {
        self.counters = OperationCounters::default();
    }
}
