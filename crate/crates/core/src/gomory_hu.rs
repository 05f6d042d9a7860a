//! Cut-equivalent trees for unit-capacity graphs.
//!
//! Built with Gusfield's method: `n - 1` max-flow calls on the original graph, no
//! contractions. The path minimum between `s` and `t` in the tree equals the
//! local edge connectivity `lambda(s, t)` of the graph.

use crate::error::{invalid, Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::{Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GomoryHuTree {
    parent: Vec<Option<Vertex>>,
    capacity: Vec<usize>,
    depth: Vec<usize>,
}

/// Gusfield's construction. On a disconnected graph the edges between
/// components get capacity 0, which is still a valid flow-equivalent tree.
pub(crate) fn gusfield(g: &Graph) -> GomoryHuTree {
    let n = g.n();
    let mut parent = vec![0usize; n];
    let mut cap = vec![0usize; n];
    for s in 1..n {
        let t = parent[s];
        let mut net = FlowNetwork::from_undirected(g);
        let value = net.max_flow(s, t, u32::MAX) as usize;
        let side = net.residual_reachable(s);
        cap[s] = value;
        for i in 0..n {
            if i != s && side[i] && parent[i] == t {
                parent[i] = s;
            }
        }
        if side[parent[t]] {
            parent[s] = parent[t];
            parent[t] = s;
            cap[s] = cap[t];
            cap[t] = value;
        }
    }
    // vertex 0 is never re-parented, so it stays the root
    let parent: Vec<Option<usize>> = (0..n).map(|v| (v != 0).then_some(parent[v])).collect();
    finish(parent, cap)
}

fn finish(parent: Vec<Option<usize>>, capacity: Vec<usize>) -> GomoryHuTree {
    let n = parent.len();
    let mut depth = vec![usize::MAX; n];
    fn depth_of(v: usize, parent: &[Option<usize>], depth: &mut [usize]) -> usize {
        if depth[v] != usize::MAX {
            return depth[v];
        }
        let d = match parent[v] {
            None => 0,
            Some(u) => depth_of(u, parent, depth) + 1,
        };
        depth[v] = d;
        d
    }
    for v in 0..n {
        depth_of(v, &parent, &mut depth);
    }
    GomoryHuTree {
        parent,
        capacity,
        depth,
    }
}

/// Gomory-Hu (cut-equivalent) tree of a connected graph with at least two vertices.
pub fn build_gomory_hu(g: &Graph) -> Result<GomoryHuTree> {
    if g.n() < 2 {
        return invalid("Gomory-Hu tree needs at least two vertices");
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(gusfield(g))
}

impl GomoryHuTree {
    /// Tree built from explicit `(u, v, capacity)` edges; `edges` must form a
    /// spanning tree on `0..n`.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex, usize)]) -> Result<Self> {
        if n == 0 || edges.len() != n - 1 {
            return invalid("a tree on n vertices has n - 1 edges");
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v, c) in edges {
            if u >= n || v >= n || u == v {
                return invalid(format!("bad tree edge ({u}, {v})"));
            }
            adj[u].push((v, c));
            adj[v].push((u, c));
        }
        let mut parent = vec![None; n];
        let mut cap = vec![0; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for &(w, c) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    cap[w] = c;
                    stack.push(w);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return invalid("tree edges do not connect all vertices");
        }
        Ok(finish(parent, cap))
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    /// `(child, parent, capacity)` for every non-root vertex, ordered by child.
    pub fn tree_edges(&self) -> Vec<(Vertex, Vertex, usize)> {
        (0..self.n())
            .filter_map(|v| self.parent[v].map(|u| (v, u, self.capacity[v])))
            .collect()
    }

    /// Minimum capacity on the tree path between `s` and `t`.
    pub fn lambda(&self, s: Vertex, t: Vertex) -> Result<usize> {
        if s >= self.n() || t >= self.n() {
            return invalid("vertex out of range");
        }
        if s == t {
            return invalid("lambda needs two distinct vertices");
        }
        let (mut a, mut b) = (s, t);
        let mut best = usize::MAX;
        while a != b {
            if self.depth[a] < self.depth[b] {
                std::mem::swap(&mut a, &mut b);
            }
            best = best.min(self.capacity[a]);
            a = self.parent[a].expect("non-root has a parent");
        }
        Ok(best)
    }

    /// Components of the tree after deleting every edge of capacity below `i`:
    /// `u` and `v` share a part iff `lambda(u, v) >= i`. Parts are sorted and
    /// ordered by smallest element.
    pub fn i_segments(&self, i: usize) -> Vec<Vec<Vertex>> {
        let n = self.n();
        let mut dsu = Dsu::new(n);
        for v in 0..n {
            if let Some(u) = self.parent[v] {
                if self.capacity[v] >= i {
                    dsu.union(u, v);
                }
            }
        }
        dsu.groups()
    }

    /// One `t <u> <v> <capacity>` line per tree edge, 1-indexed.
    pub fn to_text(&self) -> String {
        let mut edges: Vec<_> = self
            .tree_edges()
            .into_iter()
            .map(|(a, b, c)| (a.min(b), a.max(b), c))
            .collect();
        edges.sort_unstable();
        edges
            .iter()
            .map(|(u, v, c)| format!("t {} {} {}\n", u + 1, v + 1, c))
            .collect()
    }
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }

    pub(crate) fn groups(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut slot = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for v in 0..n {
            let r = self.find(v);
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(v);
        }
        out
    }
}
