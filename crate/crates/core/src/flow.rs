//! Augmenting-path max-flow on small integer-capacity networks.
//!
//! Undirected unit-capacity edges are modelled as a single arc pair with capacity
//! one in each direction, which is the usual reduction for undirected flow.

use std::collections::VecDeque;

use crate::error::{invalid, Result};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Debug)]
pub(crate) struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
}

impl FlowNetwork {
    pub(crate) fn new(n: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    /// Arc `u -> v` with capacity `c` plus its residual twin with capacity `back`.
    pub(crate) fn add_arc_pair(&mut self, u: usize, v: usize, c: u32, back: u32) {
        let id = self.to.len();
        self.to.push(v);
        self.cap.push(c);
        self.adj[u].push(id);
        self.to.push(u);
        self.cap.push(back);
        self.adj[v].push(id + 1);
    }

    pub(crate) fn from_undirected(g: &Graph) -> Self {
        let mut net = FlowNetwork::new(g.n());
        for &(u, v) in g.edges() {
            net.add_arc_pair(u, v, 1, 1);
        }
        net
    }

    /// Pushes flow from `s` to `t` until no augmenting path remains or `limit`
    /// units have been sent. BFS paths, each augmenting by the bottleneck.
    pub(crate) fn max_flow(&mut self, s: usize, t: usize, limit: u32) -> u32 {
        let n = self.adj.len();
        let mut total = 0u32;
        let mut pred = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        while total < limit {
            pred.iter_mut().for_each(|p| *p = usize::MAX);
            pred[s] = usize::MAX - 1;
            queue.clear();
            queue.push_back(s);
            'bfs: while let Some(v) = queue.pop_front() {
                for &a in &self.adj[v] {
                    let w = self.to[a];
                    if self.cap[a] > 0 && pred[w] == usize::MAX {
                        pred[w] = a;
                        if w == t {
                            break 'bfs;
                        }
                        queue.push_back(w);
                    }
                }
            }
            if pred[t] == usize::MAX {
                break;
            }
            let mut bottleneck = limit - total;
            let mut v = t;
            while v != s {
                let a = pred[v];
                bottleneck = bottleneck.min(self.cap[a]);
                v = self.to[a ^ 1];
            }
            let mut v = t;
            while v != s {
                let a = pred[v];
                self.cap[a] -= bottleneck;
                self.cap[a ^ 1] += bottleneck;
                v = self.to[a ^ 1];
            }
            total += bottleneck;
        }
        total
    }

    /// Vertices reachable from `s` in the residual network.
    pub(crate) fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &a in &self.adj[v] {
                let w = self.to[a];
                if self.cap[a] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}

/// An edge cut `(A, B)` of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub side_a: Vec<Vertex>,
    pub side_b: Vec<Vertex>,
    pub crossing_edges: Vec<(Vertex, Vertex)>,
    pub size: usize,
}

impl Cut {
    /// The cut induced by the vertex set `side_a`.
    pub fn from_side(g: &Graph, in_a: &[bool]) -> Cut {
        let side_a: Vec<Vertex> = g.vertices().filter(|&v| in_a[v]).collect();
        let side_b: Vec<Vertex> = g.vertices().filter(|&v| !in_a[v]).collect();
        let crossing_edges: Vec<_> = g
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| in_a[u] != in_a[v])
            .collect();
        let size = crossing_edges.len();
        Cut {
            side_a,
            side_b,
            crossing_edges,
            size,
        }
    }
}

/// Maximum number of edge-disjoint `s`-`t` paths and a minimum `s`-`t` edge cut
/// whose `side_a` contains `s`.
pub fn max_flow(g: &Graph, s: Vertex, t: Vertex) -> Result<(usize, Cut)> {
    if s >= g.n() || t >= g.n() {
        return invalid(format!("vertex out of range for n = {}", g.n()));
    }
    if s == t {
        return invalid("source equals sink");
    }
    let mut net = FlowNetwork::from_undirected(g);
    let value = net.max_flow(s, t, u32::MAX) as usize;
    let cut = Cut::from_side(g, &net.residual_reachable(s));
    debug_assert_eq!(cut.size, value);
    Ok((value, cut))
}

/// Edge-disjoint `s`-`t` path count, stopping early once `limit` is reached.
pub(crate) fn edge_flow_capped(g: &Graph, s: Vertex, t: Vertex, limit: usize) -> usize {
    let mut net = FlowNetwork::from_undirected(g);
    net.max_flow(s, t, limit.min(u32::MAX as usize) as u32) as usize
}

/// Internally vertex-disjoint `s`-`t` path count for nonadjacent `s`, `t`,
/// stopping early at `limit`. Each vertex `v` is split into `2v -> 2v+1`.
pub(crate) fn vertex_flow_capped(g: &Graph, s: Vertex, t: Vertex, limit: usize) -> usize {
    let n = g.n();
    let big = n as u32 + 1;
    let mut net = FlowNetwork::new(2 * n);
    for v in g.vertices() {
        let c = if v == s || v == t { big } else { 1 };
        net.add_arc_pair(2 * v, 2 * v + 1, c, 0);
    }
    for &(u, v) in g.edges() {
        net.add_arc_pair(2 * u + 1, 2 * v, big, 0);
        net.add_arc_pair(2 * v + 1, 2 * u, big, 0);
    }
    net.max_flow(2 * s + 1, 2 * t, limit.min(u32::MAX as usize) as u32) as usize
}
