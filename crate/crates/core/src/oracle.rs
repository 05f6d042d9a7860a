//! Exhaustive reference solvers. Practical up to roughly 20 vertices.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use crate::connectivity::{connectivity_at_least, is_connected_cover, Variant};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// An optimal solution, sorted and lexicographically least among optima.
    Feasible(Vec<Vertex>),
    /// No valid solution with at most `budget` vertices.
    Infeasible,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub outcome: Outcome,
    /// Vertex covers whose connectivity was tested.
    pub examined: u64,
    pub elapsed: Duration,
}

impl SolveResult {
    pub fn solution(&self) -> Option<&[Vertex]> {
        match &self.outcome {
            Outcome::Feasible(s) => Some(s),
            Outcome::Infeasible => None,
        }
    }

    /// Optimum size, or `None` when it exceeds the budget.
    pub fn opt(&self) -> Option<usize> {
        self.solution().map(<[Vertex]>::len)
    }
}

/// Calls `visit` on every vertex cover of size exactly `size`, in
/// lexicographic order, until it returns `true`. Vertices with `allowed[v]`
/// false are never chosen.
fn covers_of_size(
    adj: &[u128],
    allowed: u128,
    size: usize,
    visit: &mut dyn FnMut(u128) -> bool,
) -> bool {
    fn rec(
        adj: &[u128],
        allowed: u128,
        v: usize,
        chosen: u128,
        forced: u128,
        left: usize,
        visit: &mut dyn FnMut(u128) -> bool,
    ) -> bool {
        let n = adj.len();
        if v == n {
            return left == 0 && visit(chosen);
        }
        let bit = 1u128 << v;
        let rest = if v + 1 >= 128 { 0 } else { !0u128 << (v + 1) };
        // every forced vertex still ahead needs a slot
        if ((forced & rest) | (forced & bit)).count_ones() as usize > left {
            return false;
        }
        if left > 0 && allowed & bit != 0
            && rec(adj, allowed, v + 1, chosen | bit, forced, left - 1, visit) {
                return true;
            }
        if forced & bit == 0 {
            // leaving v out forces all its neighbors in
            let earlier_out = adj[v] & !rest & !bit & !chosen;
            let later = adj[v] & rest;
            if earlier_out == 0 && later & !allowed == 0 {
                return rec(adj, allowed, v + 1, chosen, forced | later, left, visit);
            }
        }
        false
    }
    rec(adj, allowed, 0, 0, 0, size, visit)
}

fn mask_to_vec(mask: u128) -> Vec<Vertex> {
    (0..128).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Minimum-size vertex cover inducing a `p`-connected subgraph (per
/// `variant`), searched by increasing size up to `budget`.
///
/// Vertices of degree below `p` are never chosen: they cannot have `p`
/// neighbors inside any solution.
pub fn exact_opt(g: &Graph, p: usize, variant: Variant, budget: usize) -> SolveResult {
    let start = Instant::now();
    let adj = g.adjacency_masks();
    let allowed = g
        .vertices()
        .filter(|&v| g.degree(v) >= p)
        .fold(0u128, |m, v| m | 1u128 << v);
    let mut examined = 0u64;
    let mut found = None;
    for size in 0..=budget.min(g.n()) {
        let hit = covers_of_size(&adj, allowed, size, &mut |mask| {
            examined += 1;
            let set = mask_to_vec(mask);
            if connectivity_at_least(&g.induced(&set), p, variant) {
                found = Some(set);
                true
            } else {
                false
            }
        });
        if hit {
            break;
        }
    }
    let outcome = match found {
        Some(s) => {
            assert!(is_connected_cover(g, &s, p, variant));
            Outcome::Feasible(s)
        }
        None => Outcome::Infeasible,
    };
    SolveResult {
        outcome,
        examined,
        elapsed: start.elapsed(),
    }
}

/// All minimal vertex covers with at most `k` vertices, each sorted, in
/// lexicographic order.
pub fn enumerate_minimal_vcs(g: &Graph, k: usize) -> Vec<Vec<Vertex>> {
    fn rec(g: &Graph, k: usize, chosen: &mut Vec<bool>, size: usize, out: &mut BTreeSet<Vec<Vertex>>) {
        let uncovered = g.edges().iter().find(|&&(u, v)| !chosen[u] && !chosen[v]);
        match uncovered {
            None => {
                let minimal = g
                    .vertices()
                    .filter(|&v| chosen[v])
                    .all(|v| g.neighbors(v).iter().any(|&w| !chosen[w]));
                if minimal {
                    out.insert(g.vertices().filter(|&v| chosen[v]).collect());
                }
            }
            Some(&(u, v)) => {
                if size == k {
                    return;
                }
                for w in [u, v] {
                    chosen[w] = true;
                    rec(g, k, chosen, size + 1, out);
                    chosen[w] = false;
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    rec(g, k, &mut vec![false; g.n()], 0, &mut out);
    out.into_iter().collect()
}

/// Capped objective: `None` (infinite) if `s` is not a valid solution,
/// otherwise `min(|s|, k + 1)`.
pub fn capped_value(g: &Graph, k: usize, s: &[Vertex], p: usize, variant: Variant) -> Option<usize> {
    is_connected_cover(g, s, p, variant).then(|| s.len().min(k + 1))
}

/// Smallest nonempty vertex cover inducing a connected subgraph (a single
/// vertex counts as connected), searched up to `budget`.
pub fn connected_vc_opt(g: &Graph, budget: usize) -> Option<Vec<Vertex>> {
    let adj = g.adjacency_masks();
    let all = if g.n() == 128 { !0 } else { (1u128 << g.n()) - 1 };
    let mut found = None;
    for size in 1..=budget.min(g.n()) {
        let hit = covers_of_size(&adj, all, size, &mut |mask| {
            let set = mask_to_vec(mask);
            if g.induced(&set).is_connected() {
                found = Some(set);
                true
            } else {
                false
            }
        });
        if hit {
            break;
        }
    }
    found
}
