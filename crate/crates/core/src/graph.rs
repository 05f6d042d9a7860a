//! Simple undirected graphs with dense vertex ids.
//!
//! Graphs are immutable values. Vertices are `0..n`; every vertex also carries a
//! label recording its id in the graph it was originally read from, so induced
//! subgraphs can always be mapped back.

use crate::error::{invalid, Result};

pub type Vertex = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edges: Vec<(Vertex, Vertex)>,
    labels: Vec<usize>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
            labels: (0..n).collect(),
        }
    }

    /// Builds a graph from an edge list. Parallel edges are merged; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return invalid(format!("edge ({u}, {v}) out of range for n = {n}"));
            }
            if u == v {
                return invalid(format!("self-loop at vertex {u}"));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        Ok(Graph {
            adj,
            edges: list,
            labels: (0..n).collect(),
        })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_edges(n, edges).expect("valid complete graph")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("valid star")
    }

    /// Disjoint union `self + other`; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        Graph::from_edges(off + other.n(), edges).expect("union of valid graphs")
    }

    /// Spanning subgraph on the same vertices (and labels) with the given edges,
    /// which must be edges of `self`.
    pub fn spanning_with_edges<I>(&self, edges: I) -> Graph
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut h = Graph::from_edges(self.n(), edges).expect("edges of a valid graph");
        h.labels = self.labels.clone();
        h
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, v: Vertex) -> usize {
        self.labels[v]
    }

    /// Maps local vertex ids to their labels.
    pub fn to_labels(&self, vs: &[Vertex]) -> Vec<usize> {
        let mut out: Vec<usize> = vs.iter().map(|&v| self.labels[v]).collect();
        out.sort_unstable();
        out
    }

    /// Returns a copy whose labels are reset to `0..n`.
    pub fn relabeled_identity(&self) -> Graph {
        Graph {
            labels: (0..self.n()).collect(),
            ..self.clone()
        }
    }

    /// Induced subgraph on `vs`. Vertex `i` of the result is the `i`-th smallest
    /// element of `vs`; labels are carried over.
    pub fn induced(&self, vs: &[Vertex]) -> Graph {
        let mut keep: Vec<Vertex> = vs.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            local[v] = i;
        }
        let mut adj = vec![Vec::new(); keep.len()];
        let mut edges = Vec::new();
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = local[w];
                if j != usize::MAX {
                    adj[i].push(j);
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        edges.sort_unstable();
        Graph {
            adj,
            edges,
            labels: keep.iter().map(|&v| self.labels[v]).collect(),
        }
    }

    /// Graph with the given vertices deleted; see [`Graph::induced`] for ids.
    pub fn without(&self, removed: &[Vertex]) -> Graph {
        let gone = self.mask(removed);
        let keep: Vec<Vertex> = self.vertices().filter(|&v| !gone[v]).collect();
        self.induced(&keep)
    }

    /// Boolean membership vector for `set`.
    pub fn mask(&self, set: &[Vertex]) -> Vec<bool> {
        let mut m = vec![false; self.n()];
        for &v in set {
            m[v] = true;
        }
        m
    }

    pub fn is_vertex_cover(&self, set: &[Vertex]) -> bool {
        let inside = self.mask(set);
        self.edges.iter().all(|&(u, v)| inside[u] || inside[v])
    }

    /// Open neighborhood N(S) = (union of N(v) for v in S) minus S, sorted.
    pub fn open_neighborhood(&self, set: &[Vertex]) -> Vec<Vertex> {
        let inside = self.mask(set);
        let mut seen = vec![false; self.n()];
        for &v in set {
            for &w in &self.adj[v] {
                if !inside[w] {
                    seen[w] = true;
                }
            }
        }
        self.vertices().filter(|&v| seen[v]).collect()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for &w in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// True for graphs with exactly one component (the empty graph is not connected).
    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.components().len() == 1
    }

    /// Adjacency as bitmasks; only for graphs with at most 128 vertices.
    pub fn adjacency_masks(&self) -> Vec<u128> {
        assert!(self.n() <= 128, "bitmask view limited to 128 vertices");
        self.adj
            .iter()
            .map(|nb| nb.iter().fold(0u128, |m, &w| m | (1u128 << w)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_merges_parallels() {
        assert!(Graph::from_edges(3, [(1, 1)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (2, 1)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn induced_keeps_labels() {
        let g = Graph::cycle(6);
        let h = g.induced(&[5, 1, 2, 0]);
        assert_eq!(h.n(), 4);
        assert_eq!(h.labels(), &[0, 1, 2, 5]);
        // edges 0-1, 1-2, 5-0 survive
        assert_eq!(h.m(), 3);
        assert!(h.has_edge(0, 3));
        let hh = h.without(&[0]);
        assert_eq!(hh.labels(), &[1, 2, 5]);
        assert_eq!(hh.m(), 1);
    }

    #[test]
    fn adjacency_and_edges_consistent() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (3, 4), (0, 4)]).unwrap();
        for &(u, v) in g.edges() {
            assert!(g.has_edge(u, v) && g.has_edge(v, u));
        }
        let deg_sum: usize = g.vertices().map(|v| g.degree(v)).sum();
        assert_eq!(deg_sum, 2 * g.m());
    }

    #[test]
    fn covers_and_components() {
        let g = Graph::star(3);
        assert!(g.is_vertex_cover(&[0]));
        assert!(!g.is_vertex_cover(&[1, 2]));
        assert_eq!(g.open_neighborhood(&[1]), vec![0]);
        let two = Graph::complete(2).disjoint_union(&Graph::complete(2));
        assert_eq!(two.components(), vec![vec![0, 1], vec![2, 3]]);
        assert!(!two.is_connected());
        assert!(!Graph::empty(0).is_connected());
    }
}
