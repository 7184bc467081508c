//! Link-cut tree over the maximum-forest framework. Preferred paths are
//! held in splay trees keyed by depth; tree edges are materialized as
//! their own auxiliary nodes sitting between their endpoints in key order,
//! so lazy path reversal keeps every weight attached to the right edge and
//! the path minimum is plain subtree aggregation over edge nodes.
//!
//! Connectivity verdicts use the access generation stamp: after
//! `access(u)` then `access(v)`, the vertices are connected iff the second
//! access restructured `u`'s auxiliary links — a constant-time check with
//! no root retrieval. The second access also returns the meeting vertex,
//! which after that exact call sequence is the lowest common ancestor.

use std::collections::HashMap;

use crate::stream::{
    ConnectivityIndex, IndexError, OperationCounters, StreamingEdge, Timestamp, VertexId,
};
use crate::stree::TreeEdge;

const UNSET: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Payload {
    Vertex(VertexId),
    /// Tree edge between two vertex nodes, weighted by its timestamp.
    Edge { a: u32, b: u32, t: Timestamp },
    Free,
}

/// Aggregate entry: (weight, edge node id).
type Agg = Option<(Timestamp, u32)>;

#[derive(Clone, Debug)]
struct Node {
    left: u32,
    right: u32,
    parent: u32,
    reversed: bool,
    payload: Payload,
    /// Subtree minimum preferring the in-order-earliest edge on ties.
    min_fwd: Agg,
    /// Subtree minimum preferring the in-order-latest edge on ties.
    min_rev: Agg,
    touch_gen: u64,
}

pub struct LinkCutForest {
    slots: HashMap<VertexId, u32>,
    nodes: Vec<Node>,
    free_edges: Vec<u32>,
    tree_edges: usize,
    gen: u64,
    counters: OperationCounters,
}

impl Default for LinkCutForest {
    fn default() -> Self {
        Self::new()
    }
}

impl LinkCutForest {
    pub fn new() -> Self {
        LinkCutForest {
            slots: HashMap::new(),
            nodes: Vec::new(),
            free_edges: Vec::new(),
            tree_edges: 0,
            gen: 0,
            counters: OperationCounters::default(),
        }
    }

    fn slot(&self, v: VertexId) -> Option<u32> {
        self.slots.get(&v).copied()
    }

    fn ensure(&mut self, v: VertexId) -> u32 {
        if let Some(s) = self.slot(v) {
            return s;
        }
        self.nodes.push(Node {
            left: UNSET,
            right: UNSET,
            parent: UNSET,
            reversed: false,
            payload: Payload::Vertex(v),
            min_fwd: None,
            min_rev: None,
            touch_gen: 0,
        });
        let s = (self.nodes.len() - 1) as u32;
        self.slots.insert(v, s);
        s
    }

    fn alloc_edge(&mut self, a: u32, b: u32, t: Timestamp) -> u32 {
        let payload = Payload::Edge { a, b, t };
        let i = match self.free_edges.pop() {
            Some(i) => i,
            None => {
                self.nodes.push(Node {
                    left: UNSET,
                    right: UNSET,
                    parent: UNSET,
                    reversed: false,
                    payload: Payload::Free,
                    min_fwd: None,
                    min_rev: None,
                    touch_gen: 0,
                });
                (self.nodes.len() - 1) as u32
            }
        };
        let node = &mut self.nodes[i as usize];
        node.left = UNSET;
        node.right = UNSET;
        node.parent = UNSET;
        node.reversed = false;
        node.payload = payload;
        node.min_fwd = Some((t, i));
        node.min_rev = Some((t, i));
        i
    }

    fn touch(&mut self, i: u32) {
        self.nodes[i as usize].touch_gen = self.gen;
    }

    fn set_left(&mut self, i: u32, c: u32) {
        self.nodes[i as usize].left = c;
        self.touch(i);
    }

    fn set_right(&mut self, i: u32, c: u32) {
        self.nodes[i as usize].right = c;
        self.touch(i);
    }

    fn set_parent(&mut self, i: u32, p: u32) {
        self.nodes[i as usize].parent = p;
        self.touch(i);
    }

    /// Mirror the subtree rooted at `i`: its own links and aggregates are
    /// corrected immediately, the flag defers the children's interiors.
    fn flip(&mut self, i: u32) {
        let node = &mut self.nodes[i as usize];
        std::mem::swap(&mut node.left, &mut node.right);
        std::mem::swap(&mut node.min_fwd, &mut node.min_rev);
        node.reversed = !node.reversed;
        self.touch(i);
    }

    fn push(&mut self, i: u32) {
        if self.nodes[i as usize].reversed {
            let (l, r) = (self.nodes[i as usize].left, self.nodes[i as usize].right);
            if l != UNSET {
                self.flip(l);
            }
            if r != UNSET {
                self.flip(r);
            }
            self.nodes[i as usize].reversed = false;
        }
    }

    fn own_agg(&self, i: u32) -> Agg {
        match self.nodes[i as usize].payload {
            Payload::Edge { t, .. } => Some((t, i)),
            _ => None,
        }
    }

    fn update(&mut self, i: u32) {
        let l = self.nodes[i as usize].left;
        let r = self.nodes[i as usize].right;
        let own = self.own_agg(i);
        let pick = |first: Agg, second: Agg| -> Agg {
            match (first, second) {
                (None, c) => c,
                (f, None) => f,
                (Some((fw, fi)), Some((cw, ci))) => {
                    if cw < fw {
                        Some((cw, ci))
                    } else {
                        Some((fw, fi))
                    }
                }
            }
        };
        let lf = if l == UNSET { None } else { self.nodes[l as usize].min_fwd };
        let rf = if r == UNSET { None } else { self.nodes[r as usize].min_fwd };
        let lr = if l == UNSET { None } else { self.nodes[l as usize].min_rev };
        let rr = if r == UNSET { None } else { self.nodes[r as usize].min_rev };
        // Earliest-preferring: left, then own, then right on ties; the
        // reverse aggregate mirrors it.
        self.nodes[i as usize].min_fwd = pick(pick(lf, own), rf);
        self.nodes[i as usize].min_rev = pick(pick(rr, own), lr);
    }

    fn is_aux_root(&self, i: u32) -> bool {
        let p = self.nodes[i as usize].parent;
        p == UNSET || (self.nodes[p as usize].left != i && self.nodes[p as usize].right != i)
    }

    fn rotate(&mut self, x: u32) {
        let p = self.nodes[x as usize].parent;
        let g = self.nodes[p as usize].parent;
        let p_was_root = self.is_aux_root(p);
        let x_is_left = self.nodes[p as usize].left == x;
        let moved = if x_is_left {
            self.nodes[x as usize].right
        } else {
            self.nodes[x as usize].left
        };
        if x_is_left {
            self.set_left(p, moved);
            self.set_right(x, p);
        } else {
            self.set_right(p, moved);
            self.set_left(x, p);
        }
        if moved != UNSET {
            self.set_parent(moved, p);
        }
        self.set_parent(x, g);
        if !p_was_root {
            if self.nodes[g as usize].left == p {
                self.set_left(g, x);
            } else {
                self.set_right(g, x);
            }
        }
        self.set_parent(p, x);
        self.update(p);
        self.update(x);
    }

    fn splay(&mut self, x: u32) {
        let mut path = vec![x];
        let mut cur = x;
        while !self.is_aux_root(cur) {
            cur = self.nodes[cur as usize].parent;
            path.push(cur);
        }
        for &n in path.iter().rev() {
            self.push(n);
        }
        while !self.is_aux_root(x) {
            let p = self.nodes[x as usize].parent;
            if !self.is_aux_root(p) {
                let g = self.nodes[p as usize].parent;
                let zigzig =
                    (self.nodes[g as usize].left == p) == (self.nodes[p as usize].left == x);
                if zigzig {
                    self.rotate(p);
                } else {
                    self.rotate(x);
                }
            }
            self.rotate(x);
            self.counters.nodes_visited += 1;
        }
    }

    /// Make the path from `x` to its tree root preferred, detaching `x`'s
    /// deeper segment. Returns the last switch-point vertex (the lowest
    /// common ancestor when issued right after an access of another
    /// vertex) and the subtree detached from `x` itself.
    fn access_node(&mut self, x: u32) -> (u32, u32) {
        self.gen += 1;
        self.counters.accesses += 1;
        self.splay(x);
        let detached = self.nodes[x as usize].right;
        if detached != UNSET {
            // The detached segment keeps its parent pointer as a path
            // (light) link.
            self.set_right(x, UNSET);
            self.update(x);
        }
        let mut switch = x;
        let mut top = x;
        loop {
            let p = self.nodes[top as usize].parent;
            if p == UNSET {
                break;
            }
            // p is always a vertex node: splits happen below vertices.
            self.splay(p);
            switch = p;
            // p's old preferred child stays attached by its light parent
            // pointer; no write needed on it.
            self.set_right(p, top);
            self.update(p);
            top = p;
        }
        self.splay(x);
        (switch, detached)
    }

    /// Preferred-path access. Returns the parent endpoint of the last edge
    /// on the walk from `v` to its root that was not already preferred.
    pub fn access(&mut self, v: VertexId) -> VertexId {
        let s = self.ensure(v);
        let (switch, _) = self.access_node(s);
        self.vertex_of(switch)
    }

    fn vertex_of(&self, node: u32) -> VertexId {
        match self.nodes[node as usize].payload {
            Payload::Vertex(v) => v,
            _ => unreachable!("switch points and path heads are vertex nodes"),
        }
    }

    fn leftmost(&mut self, mut i: u32) -> u32 {
        self.push(i);
        while self.nodes[i as usize].left != UNSET {
            i = self.nodes[i as usize].left;
            self.counters.nodes_visited += 1;
            self.push(i);
        }
        i
    }

    fn rightmost(&mut self, mut i: u32) -> u32 {
        self.push(i);
        while self.nodes[i as usize].right != UNSET {
            i = self.nodes[i as usize].right;
            self.counters.nodes_visited += 1;
            self.push(i);
        }
        i
    }

    /// Root of `v`'s tree: access, then walk to the depth-minimal element
    /// and splay it.
    pub fn find_root(&mut self, v: VertexId) -> VertexId {
        let Some(s) = self.slot(v) else { return v };
        self.access_node(s);
        let root = self.leftmost(s);
        self.splay(root);
        self.vertex_of(root)
    }

    /// Make `v` the root of its tree by lazily reversing its root path.
    pub fn re_root(&mut self, v: VertexId) {
        let s = self.ensure(v);
        self.access_node(s);
        self.flip(s);
        self.counters.reroots += 1;
    }

    fn splice_under(&mut self, child_root: u32, target: u32, t: Timestamp) {
        let e = self.alloc_edge(child_root, target, t);
        debug_assert_eq!(self.nodes[target as usize].right, UNSET);
        self.set_right(target, e);
        self.set_parent(e, target);
        self.set_right(e, child_root);
        self.set_parent(child_root, e);
        self.update(e);
        self.update(target);
        self.tree_edges += 1;
    }

    /// Link `u` (re-rooted) as a child of `v` with the given edge weight.
    pub fn link(&mut self, u: VertexId, v: VertexId, t: Timestamp) -> Result<(), IndexError> {
        let us = self.ensure(u);
        let vs = self.ensure(v);
        if us == vs || self.connected_nodes(us, vs).0 {
            return Err(IndexError::AlreadyConnected(u, v));
        }
        self.re_root(u);
        self.access_node(vs);
        self.splice_under(us, vs, t);
        Ok(())
    }

    /// Detach `v` from its parent, returning the removed edge.
    pub fn cut(&mut self, v: VertexId) -> Result<TreeEdge, IndexError> {
        let Some(s) = self.slot(v) else {
            return Err(IndexError::AlreadyRoot(v));
        };
        self.access_node(s);
        let above = self.nodes[s as usize].left;
        if above == UNSET {
            return Err(IndexError::AlreadyRoot(v));
        }
        self.set_left(s, UNSET);
        self.set_parent(above, UNSET);
        self.update(s);
        let e = self.rightmost(above);
        let removed = self.remove_edge_node(e);
        Ok(TreeEdge {
            child: v,
            parent: if removed.child == v { removed.parent } else { removed.child },
            weight: removed.weight,
        })
    }

    /// Splay an edge node and splice it out, splitting its path between
    /// its endpoints. The shallow side inherits the path's light parent;
    /// the deep side becomes a root path.
    fn remove_edge_node(&mut self, e: u32) -> TreeEdge {
        self.splay(e);
        let (a, b, t) = match self.nodes[e as usize].payload {
            Payload::Edge { a, b, t } => (a, b, t),
            _ => unreachable!("remove_edge_node takes edge nodes"),
        };
        let light_parent = self.nodes[e as usize].parent;
        let l = self.nodes[e as usize].left;
        let r = self.nodes[e as usize].right;
        if l != UNSET {
            self.set_parent(l, light_parent);
        }
        if r != UNSET {
            self.set_parent(r, UNSET);
        }
        let node = &mut self.nodes[e as usize];
        node.left = UNSET;
        node.right = UNSET;
        node.parent = UNSET;
        node.reversed = false;
        node.payload = Payload::Free;
        node.min_fwd = None;
        node.min_rev = None;
        self.free_edges.push(e);
        self.tree_edges -= 1;
        TreeEdge {
            child: self.vertex_of(a),
            parent: self.vertex_of(b),
            weight: t,
        }
    }

    /// Constant-time connectivity verdict: `access(a)`, `access(b)`, then
    /// check whether the second access restructured `a`'s links. Returns
    /// the verdict and the switch point of the second access.
    fn connected_nodes(&mut self, a: u32, b: u32) -> (bool, u32) {
        if a == b {
            return (true, a);
        }
        self.access_node(a);
        let (switch, _) = self.access_node(b);
        (self.nodes[a as usize].touch_gen == self.gen, switch)
    }

    /// Root-comparison connectivity, used to cross-check the constant-time
    /// verdict.
    pub fn query_via_roots(&mut self, u: VertexId, v: VertexId) -> bool {
        if u == v {
            return true;
        }
        match (self.slot(u), self.slot(v)) {
            (Some(_), Some(_)) => self.find_root(u) == self.find_root(v),
            _ => false,
        }
    }

    /// Minimum over the segment strictly below `lca` down to `u`, read
    /// from the single subtree that `access(lca)` detaches.
    fn path_min_nodes(&mut self, u: u32, lca: u32) -> Option<(Timestamp, u32)> {
        self.access_node(u);
        let (_, detached) = self.access_node(lca);
        if detached == UNSET {
            None
        } else {
            self.nodes[detached as usize].min_fwd
        }
    }

    /// Minimum-weight tree edge on the path from `u` up to `lca`, which
    /// must be a proper ancestor of `u`.
    pub fn path_min(&mut self, u: VertexId, lca: VertexId) -> Result<TreeEdge, IndexError> {
        let (Some(us), Some(ls)) = (self.slot(u), self.slot(lca)) else {
            return Err(IndexError::Disconnected(u, lca));
        };
        if us == ls {
            return Err(IndexError::DegenerateCycle(u, lca));
        }
        self.access_node(us);
        // lca must live in u's just-accessed root-path tree.
        let mut cur = ls;
        while !self.is_aux_root(cur) {
            cur = self.nodes[cur as usize].parent;
        }
        if cur != us {
            return Err(IndexError::Disconnected(u, lca));
        }
        let (_, detached) = self.access_node(ls);
        let (_, e) = self.nodes[detached as usize]
            .min_fwd
            .expect("non-empty path segment aggregates at least one edge");
        Ok(self.edge_info(e))
    }

    fn edge_info(&self, e: u32) -> TreeEdge {
        match self.nodes[e as usize].payload {
            Payload::Edge { a, b, t } => TreeEdge {
                child: self.vertex_of(a),
                parent: self.vertex_of(b),
                weight: t,
            },
            _ => unreachable!("edge_info takes edge nodes"),
        }
    }

    /// After accessing `s`, its in-order predecessor is the edge to its
    /// current parent.
    fn parent_edge_node(&mut self, s: u32) -> Option<u32> {
        self.access_node(s);
        let above = self.nodes[s as usize].left;
        if above == UNSET {
            return None;
        }
        let e = self.rightmost(above);
        self.splay(e);
        Some(e)
    }

    pub fn total_tree_weight(&self) -> u64 {
        self.nodes
            .iter()
            .filter_map(|n| match n.payload {
                Payload::Edge { t, .. } => Some(t.0),
                _ => None,
            })
            .sum()
    }

    pub fn tree_edge_set(&self) -> Vec<StreamingEdge> {
        self.nodes
            .iter()
            .filter_map(|n| match n.payload {
                Payload::Edge { a, b, t } => {
                    Some(StreamingEdge::new(self.vertex_of(a), self.vertex_of(b), t))
                }
                _ => None,
            })
            .collect()
    }

    /// Fingerprint of the represented forest (vertex set plus undirected
    /// weighted edge set). The auxiliary arrangement is deliberately
    /// excluded: accesses restructure it even on reads.
    pub fn state_fingerprint(&self) -> u64 {
        let mut rows: Vec<(u64, u64, u64)> = self
            .tree_edge_set()
            .iter()
            .map(|e| {
                let (a, b) = e.canonical_endpoints();
                (a.0, b.0, e.t.0)
            })
            .collect();
        let mut verts: Vec<u64> = self.slots.keys().map(|v| v.0).collect();
        rows.sort_unstable();
        verts.sort_unstable();
        let mut h = 0xcbf29ce484222325u64;
        let mix = |x: u64, h: &mut u64| {
            *h ^= x;
            *h = h.wrapping_mul(0x100000001b3);
        };
        for v in verts {
            mix(v, &mut h);
        }
        for (a, b, c) in rows {
            mix(a, &mut h);
            mix(b, &mut h);
            mix(c, &mut h);
        }
        h
    }

    /// Raw auxiliary links of one vertex, for no-touch verification.
    #[doc(hidden)]
    pub fn aux_links(&self, v: VertexId) -> Option<(u32, u32, u32, bool)> {
        let s = self.slot(v)?;
        let n = &self.nodes[s as usize];
        Some((n.left, n.right, n.parent, n.reversed))
    }

    /// Recompute every aggregate bottom-up after resolving all reversal
    /// flags, and compare with the stored values.
    #[doc(hidden)]
    pub fn aggregates_consistent(&mut self) -> bool {
        fn resolve(this: &mut LinkCutForest, i: u32) {
            if i == UNSET {
                return;
            }
            this.push(i);
            resolve(this, this.nodes[i as usize].left);
            resolve(this, this.nodes[i as usize].right);
        }
        fn recompute(this: &LinkCutForest, i: u32, ok: &mut bool) -> (Agg, Agg) {
            if i == UNSET {
                return (None, None);
            }
            let (lf, lr) = recompute(this, this.nodes[i as usize].left, ok);
            let (rf, rr) = recompute(this, this.nodes[i as usize].right, ok);
            let own = this.own_agg(i);
            let pick = |first: Agg, second: Agg| -> Agg {
                match (first, second) {
                    (None, c) => c,
                    (f, None) => f,
                    (Some((fw, fi)), Some((cw, ci))) => {
                        if cw < fw {
                            Some((cw, ci))
                        } else {
                            Some((fw, fi))
                        }
                    }
                }
            };
            let fwd = pick(pick(lf, own), rf);
            let rev = pick(pick(rr, own), lr);
            if this.nodes[i as usize].min_fwd != fwd || this.nodes[i as usize].min_rev != rev {
                *ok = false;
            }
            (fwd, rev)
        }
        let roots: Vec<u32> = (0..self.nodes.len() as u32)
            .filter(|&i| self.nodes[i as usize].payload != Payload::Free && self.is_aux_root(i))
            .collect();
        let mut ok = true;
        for r in roots {
            resolve(self, r);
            recompute(self, r, &mut ok);
        }
        ok
    }

    /// Reconstruct the represented forest from the preferred-path
    /// decomposition: in-order within each auxiliary tree is increasing
    /// depth, and a non-root path hangs below its light parent through its
    /// leading edge node.
    #[doc(hidden)]
    pub fn represented_parents(&mut self) -> HashMap<VertexId, (VertexId, Timestamp)> {
        fn inorder(this: &mut LinkCutForest, i: u32, out: &mut Vec<u32>) {
            if i == UNSET {
                return;
            }
            this.push(i);
            inorder(this, this.nodes[i as usize].left, out);
            out.push(i);
            inorder(this, this.nodes[i as usize].right, out);
        }
        let roots: Vec<u32> = (0..self.nodes.len() as u32)
            .filter(|&i| self.nodes[i as usize].payload != Payload::Free && self.is_aux_root(i))
            .collect();
        let mut parents = HashMap::new();
        for r in roots {
            let mut seq = Vec::new();
            inorder(self, r, &mut seq);
            let light = self.nodes[r as usize].parent;
            let mut prev_vertex: Option<u32> = if light == UNSET { None } else { Some(light) };
            let mut pending_edge: Option<u32> = None;
            for &n in &seq {
                match self.nodes[n as usize].payload {
                    Payload::Vertex(v) => {
                        if let (Some(pv), Some(e)) = (prev_vertex, pending_edge) {
                            let t = match self.nodes[e as usize].payload {
                                Payload::Edge { t, .. } => t,
                                _ => unreachable!(),
                            };
                            parents.insert(v, (self.vertex_of(pv), t));
                        }
                        prev_vertex = Some(n);
                        pending_edge = None;
                    }
                    Payload::Edge { .. } => pending_edge = Some(n),
                    Payload::Free => unreachable!(),
                }
            }
        }
        parents
    }
}

impl ConnectivityIndex for LinkCutForest {
    fn insert(&mut self, edge: StreamingEdge) {
        if edge.is_self_loop() {
            return;
        }
        let us = self.ensure(edge.u);
        let vs = self.ensure(edge.v);
        let (connected, lca) = self.connected_nodes(us, vs);
        if !connected {
            self.re_root(edge.u);
            self.access_node(vs);
            self.splice_under(us, vs, edge.t);
            return;
        }
        let m_u = self.path_min_nodes(us, lca);
        let m_v = self.path_min_nodes(vs, lca);
        let e_min = match (m_u, m_v) {
            (Some(a), Some(b)) => {
                if b.0 < a.0 {
                    b
                } else {
                    a
                }
            }
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => unreachable!("distinct connected endpoints span an edge"),
        };
        if e_min.0 < edge.t {
            self.remove_edge_node(e_min.1);
            self.re_root(edge.u);
            self.access_node(vs);
            self.splice_under(us, vs, edge.t);
        }
        // Otherwise the edge is discarded; accesses never change the
        // represented forest.
    }

    fn delete(&mut self, edge: StreamingEdge) -> Result<(), IndexError> {
        if edge.is_self_loop() {
            return Ok(());
        }
        let (Some(us), Some(vs)) = (self.slot(edge.u), self.slot(edge.v)) else {
            return Ok(());
        };
        for (a, b) in [(us, vs), (vs, us)] {
            if let Some(e) = self.parent_edge_node(a) {
                if let Payload::Edge { a: ea, b: eb, t } = self.nodes[e as usize].payload {
                    let endpoints_match = (ea == a && eb == b) || (ea == b && eb == a);
                    if endpoints_match && t == edge.t {
                        self.remove_edge_node(e);
                        return Ok(());
                    }
                }
            }
        }
        // Unstored edges were discarded at insertion: deleting them is a
        // no-op, never a search.
        Ok(())
    }

    fn query(&mut self, u: VertexId, v: VertexId) -> bool {
        if u == v {
            return true;
        }
        match (self.slot(u), self.slot(v)) {
            (Some(a), Some(b)) => self.connected_nodes(a, b).0,
            _ => false,
        }
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
