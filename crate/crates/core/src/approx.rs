//! Constant-factor approximation for `p`-edge-connected vertex cover.
//!
//! Start from `X = N(L) ∪ V(M)`, where `L` holds the vertices of degree below
//! `p` and `M` is a maximal matching of `G - N[L]`. Then repeatedly add a vertex
//! whose neighborhood touches two distinct `p`-blocks of `X` until a single
//! `p`-block remains. The result has at most `(p + 1)|X| <= 2(p + 1) OPT` vertices.

use crate::blocks::{laminar_tree, BlockTree};
use crate::connectivity::{is_connected_cover, low_degree_closure, Variant};
use crate::error::{invalid, Result};
use crate::graph::{Graph, Vertex};

/// Everything the approximation computed on the way to its answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxTrace {
    pub low: Vec<Vertex>,
    pub matching: Vec<(Vertex, Vertex)>,
    /// Seed set `X`, sorted.
    pub seed: Vec<Vertex>,
    /// Final solution `Y`, sorted.
    pub solution: Vec<Vertex>,
    /// Augmenting vertices in insertion order.
    pub added: Vec<Vertex>,
    /// Leaf count of the block tree before each iteration and after the last.
    pub leaf_counts: Vec<usize>,
    /// Node count of the block tree, recorded alongside `leaf_counts`.
    pub node_counts: Vec<usize>,
}

impl ApproxTrace {
    pub fn iterations(&self) -> usize {
        self.added.len()
    }
}

/// Greedy maximal matching over `g.edges()` in sorted order, skipping `blocked` vertices.
pub fn greedy_matching(g: &Graph, blocked: &[bool]) -> Vec<(Vertex, Vertex)> {
    let mut used = blocked.to_vec();
    let mut m = Vec::new();
    for &(u, v) in g.edges() {
        if !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            m.push((u, v));
        }
    }
    m
}

/// Block tree of `x` inside `g[y]`, with vertex ids mapped back to `g`.
fn tree_in(g: &Graph, y: &[Vertex], x: &[Vertex], p: usize) -> BlockTree {
    let sub = g.induced(y);
    // y is sorted, so local id = position in y
    let local: Vec<Vertex> = x
        .iter()
        .map(|v| y.binary_search(v).expect("x is a subset of y"))
        .collect();
    let mut t = laminar_tree(&sub, &local, p);
    t.map_vertices(|v| y[v]);
    t
}

/// The smallest `u` outside `y ∪ l` whose neighborhood meets two distinct
/// `p`-blocks of `t`.
pub fn find_augmenting_vertex(
    g: &Graph,
    y: &[Vertex],
    l: &[Vertex],
    t: &BlockTree,
) -> Option<Vertex> {
    let mut block_of = vec![usize::MAX; g.n()];
    for (b, leaf) in t.leaves().iter().enumerate() {
        for &v in *leaf {
            block_of[v] = b;
        }
    }
    let mut excluded = g.mask(y);
    for &v in l {
        excluded[v] = true;
    }
    g.vertices().filter(|&u| !excluded[u]).find(|&u| {
        let mut first = usize::MAX;
        g.neighbors(u).iter().any(|&w| {
            let b = block_of[w];
            if b == usize::MAX {
                return false;
            }
            if first == usize::MAX {
                first = b;
                false
            } else {
                b != first
            }
        })
    })
}

/// Runs the approximation. `Ok(None)` means `g` has no `p`-edge-connected
/// vertex cover at all.
pub fn approx_p_edge_cvc(g: &Graph, p: usize) -> Result<Option<ApproxTrace>> {
    if p == 0 {
        return invalid("p must be at least 1");
    }
    let (low, rest) = low_degree_closure(g, p);
    if !is_connected_cover(g, &rest, p, Variant::Edge) {
        return Ok(None);
    }
    let n_low = g.open_neighborhood(&low);
    let mut closed = g.mask(&low);
    for &v in &n_low {
        closed[v] = true;
    }
    let matching = greedy_matching(g, &closed);
    let mut in_x = g.mask(&n_low);
    for &(u, v) in &matching {
        in_x[u] = true;
        in_x[v] = true;
    }
    let seed: Vec<Vertex> = g.vertices().filter(|&v| in_x[v]).collect();
    let mut y = seed.clone();
    let mut t = tree_in(g, &y, &seed, p);
    let mut trace = ApproxTrace {
        low,
        matching,
        seed,
        solution: Vec::new(),
        added: Vec::new(),
        leaf_counts: vec![t.leaf_count()],
        node_counts: vec![t.node_count()],
    };
    let x_len = trace.seed.len();
    while t.leaf_count() >= 2 {
        let u = find_augmenting_vertex(g, &y, &trace.low, &t)
            .expect("a feasible instance always has an augmenting vertex");
        let pos = y.binary_search(&u).unwrap_err();
        y.insert(pos, u);
        let before = t.node_count();
        t = tree_in(g, &y, &trace.seed, p);
        assert!(t.node_count() < before, "block tree must shrink after augmentation");
        trace.added.push(u);
        trace.leaf_counts.push(t.leaf_count());
        trace.node_counts.push(t.node_count());
        assert!(trace.added.len() <= p * x_len.saturating_sub(1));
    }
    assert!(y.len() <= (p + 1) * x_len);
    debug_assert!(is_connected_cover(g, &y, p, Variant::Edge));
    trace.solution = y;
    Ok(Some(trace))
}
