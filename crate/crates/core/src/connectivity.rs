//! Menger-style connectivity tests, sparse connectivity certificates and the
//! low-degree feasibility test shared by every solver.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{edge_flow_capped, vertex_flow_capped};
use crate::graph::{Graph, Vertex};

/// Which kind of connectivity a solution must have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Vertex,
    Edge,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Vertex => "vertex",
            Variant::Edge => "edge",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vertex" => Ok(Variant::Vertex),
            "edge" => Ok(Variant::Edge),
            other => Err(Error::InvalidArgument(format!("unknown variant `{other}`"))),
        }
    }
}

/// True iff `g` has more than `p` vertices and stays connected after deleting
/// any fewer than `p` vertices.
pub fn vertex_connectivity_at_least(g: &Graph, p: usize) -> bool {
    let n = g.n();
    if n <= p {
        return false;
    }
    if p == 0 {
        return true;
    }
    if !g.is_connected() {
        return false;
    }
    if p == 1 {
        return true;
    }
    // local connectivity of every nonadjacent pair; complete graphs have none
    for s in g.vertices() {
        if g.degree(s) < p {
            return false;
        }
        for t in s + 1..n {
            if !g.has_edge(s, t) && vertex_flow_capped(g, s, t, p) < p {
                return false;
            }
        }
    }
    true
}

/// True iff `g` has at least two vertices and stays connected after deleting
/// any fewer than `p` edges. One source sweep suffices since edge connectivity
/// is the minimum of `lambda(0, t)` over all `t`.
pub fn edge_connectivity_at_least(g: &Graph, p: usize) -> bool {
    if g.n() < 2 {
        return false;
    }
    if p == 0 {
        return true;
    }
    if !g.is_connected() {
        return false;
    }
    if p == 1 {
        return true;
    }
    if g.vertices().any(|v| g.degree(v) < p) {
        return false;
    }
    (1..g.n()).all(|t| edge_flow_capped(g, 0, t, p) >= p)
}

pub fn connectivity_at_least(g: &Graph, p: usize, variant: Variant) -> bool {
    match variant {
        Variant::Vertex => vertex_connectivity_at_least(g, p),
        Variant::Edge => edge_connectivity_at_least(g, p),
    }
}

/// `set` is a vertex cover of `g` whose induced subgraph is `p`-connected per `variant`.
pub fn is_connected_cover(g: &Graph, set: &[Vertex], p: usize, variant: Variant) -> bool {
    g.is_vertex_cover(set) && connectivity_at_least(&g.induced(set), p, variant)
}

/// Spanning subgraph with at most `p * n` edges that keeps `p`-vertex or
/// `p`-edge connectivity, built from the first `p` scan-first-search forests of
/// a maximum-adjacency ordering.
pub fn sparse_certificate(g: &Graph, p: usize, variant: Variant) -> Result<Graph> {
    if !connectivity_at_least(g, p, variant) {
        return Err(Error::NotConnected {
            p,
            mode: variant.name(),
        });
    }
    let n = g.n();
    let mut rank = vec![0usize; n];
    let mut scanned = vec![false; n];
    let mut kept = Vec::new();
    for _ in 0..n {
        let x = (0..n)
            .filter(|&v| !scanned[v])
            .max_by_key(|&v| (rank[v], std::cmp::Reverse(v)))
            .expect("an unscanned vertex remains");
        for &y in g.neighbors(x) {
            if !scanned[y] {
                // edge xy lands in forest number rank[y] + 1
                rank[y] += 1;
                if rank[y] <= p {
                    kept.push((x, y));
                }
            }
        }
        scanned[x] = true;
    }
    Ok(g.spanning_with_edges(kept))
}

/// Vertices of degree at most `p - 1` (`low`) and the rest (`rest`).
///
/// `g` has a `p`-connected vertex cover (either variant) iff `rest` is one.
pub fn low_degree_closure(g: &Graph, p: usize) -> (Vec<Vertex>, Vec<Vertex>) {
    g.vertices().partition(|&v| g.degree(v) < p)
}

/// Feasibility via the low-degree closure: `Some(rest)` when `rest` is a valid
/// cover, `None` when no `p`-connected vertex cover exists at all.
pub fn feasible_cover(g: &Graph, p: usize, variant: Variant) -> Option<Vec<Vertex>> {
    let (_, rest) = low_degree_closure(g, p);
    is_connected_cover(g, &rest, p, variant).then_some(rest)
}
