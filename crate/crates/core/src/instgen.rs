//! Instance generators: the two hardness reductions as constructive
//! transformations, seeded random and planted instances, and an enumerator of
//! small graphs up to isomorphism.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)`, so outputs are
//! reproducible across runs and platforms.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap};
use std::hash::{Hash, Hasher};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::connectivity::vertex_connectivity_at_least;
use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, Vertex};

/// Adds `p - 1` universal vertices (ids `n..n + p - 1`); the budget grows by
/// `p - 1`. A connected vertex cover of size `k` in `g` exists iff the output
/// has a `p`-connected vertex cover of size `k + p - 1`.
///
/// The added vertices are pairwise adjacent. Left independent, `K_{k+2}` with
/// `p = 3` would map to a yes-instance while having no connected cover of size `k`.
/// For `p >= 2` and `k <= 1` the budget `k + p - 1` is too small for any
/// `p`-connected graph, so those instances are decided directly (a star test)
/// and mapped to `K_{p+1}` with budget `p + 1` (yes) or `p` (no).
pub fn cvc_to_pcvc(g: &Graph, k: usize, p: usize) -> (Graph, usize) {
    if p >= 2 && k <= 1 {
        let yes = g.m() == 0 || (k == 1 && g.vertices().any(|v| g.degree(v) == g.m()));
        return (Graph::complete(p + 1), if yes { p + 1 } else { p });
    }
    let extra = p.saturating_sub(1);
    let n = g.n();
    let mut edges = g.edges().to_vec();
    for i in 0..extra {
        let a = n + i;
        edges.extend((0..a).map(|u| (u, a)));
    }
    let out = Graph::from_edges(n + extra, edges).expect("edges in range");
    (out, k + extra)
}

/// A Red-Blue Dominating Set instance: pick at most `k` red vertices whose
/// neighborhood is all of `blue`. Ids are arbitrary; red and blue ids live in
/// separate namespaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RbdsInstance {
    pub red: Vec<usize>,
    pub blue: Vec<usize>,
    /// `(red id, blue id)` pairs.
    pub edges: Vec<(usize, usize)>,
    pub k: usize,
}

impl RbdsInstance {
    /// Sorts and deduplicates all lists and checks that edges mention known ids.
    pub fn new(red: Vec<usize>, blue: Vec<usize>, edges: Vec<(usize, usize)>, k: usize) -> Result<Self> {
        let red: Vec<usize> = red.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let blue: Vec<usize> = blue.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let edges: Vec<(usize, usize)> = edges.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        for &(r, b) in &edges {
            if red.binary_search(&r).is_err() || blue.binary_search(&b).is_err() {
                return invalid(format!("edge ({r}, {b}) joins unknown vertices"));
            }
        }
        Ok(RbdsInstance { red, blue, edges, k })
    }

    pub fn blue_neighbors(&self, r: usize) -> Vec<usize> {
        self.edges.iter().filter(|e| e.0 == r).map(|e| e.1).collect()
    }

    /// Deletes red vertices without blue neighbors. Fails if some blue vertex
    /// has no red neighbor, since then no solution exists.
    pub fn preprocess(&self) -> Result<RbdsInstance> {
        if let Some(b) = self.blue.iter().find(|&&b| !self.edges.iter().any(|e| e.1 == b)) {
            return invalid(format!("blue vertex {b} has no red neighbor"));
        }
        let red = self.red.iter().copied().filter(|&r| self.edges.iter().any(|e| e.0 == r)).collect();
        RbdsInstance::new(red, self.blue.clone(), self.edges.clone(), self.k)
    }

    /// A smallest dominating red set of size at most `k`, by exhaustive search.
    pub fn brute_force(&self) -> Option<Vec<usize>> {
        let nbrs: Vec<u64> = self
            .red
            .iter()
            .map(|&r| {
                self.blue_neighbors(r)
                    .iter()
                    .map(|b| 1u64 << self.blue.binary_search(b).expect("known blue id"))
                    .fold(0, |a, x| a | x)
            })
            .collect();
        assert!(self.blue.len() <= 64 && self.red.len() <= 30, "brute force is for small instances");
        let full = if self.blue.len() == 64 { !0 } else { (1u64 << self.blue.len()) - 1 };
        let mut best: Option<u32> = None;
        for set in 0u32..1 << self.red.len() {
            let size = set.count_ones();
            if size as usize > self.k || best.is_some_and(|b| b.count_ones() <= size) {
                continue;
            }
            let covered = (0..self.red.len()).filter(|&i| set >> i & 1 == 1).fold(0, |a, i| a | nbrs[i]);
            if covered == full {
                best = Some(set);
            }
        }
        best.map(|set| (0..self.red.len()).filter(|&i| set >> i & 1 == 1).map(|i| self.red[i]).collect())
    }
}

/// Parses `r <id>`, `b <id>`, `e <red> <blue>` and `k <budget>` lines; `c`
/// starts a comment.
pub fn parse_rbds(text: &str) -> Result<RbdsInstance> {
    let (mut red, mut blue, mut edges, mut k) = (Vec::new(), Vec::new(), Vec::new(), None);
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        let num = |i: usize| -> Result<usize> {
            toks.get(i).and_then(|t| t.parse().ok()).ok_or_else(|| Error::Parse {
                line,
                msg: format!("expected a number in field {i}"),
            })
        };
        match toks.first() {
            None | Some(&"c") => {}
            Some(&"r") => red.push(num(1)?),
            Some(&"b") => blue.push(num(1)?),
            Some(&"e") => edges.push((num(1)?, num(2)?)),
            Some(&"k") => k = Some(num(1)?),
            Some(tok) => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unknown line type `{tok}`"),
                })
            }
        }
    }
    let k = k.ok_or(Error::Parse {
        line: 0,
        msg: "missing `k` line".into(),
    })?;
    RbdsInstance::new(red, blue, edges, k).map_err(|e| Error::Parse {
        line: 0,
        msg: e.to_string(),
    })
}

pub fn write_rbds(inst: &RbdsInstance) -> String {
    let mut out = String::new();
    for r in &inst.red {
        out.push_str(&format!("r {r}\n"));
    }
    for b in &inst.blue {
        out.push_str(&format!("b {b}\n"));
    }
    for (r, b) in &inst.edges {
        out.push_str(&format!("e {r} {b}\n"));
    }
    out.push_str(&format!("k {}\n", inst.k));
    out
}

/// Builds the `p`-edge-connected vertex cover instance of the RBDS reduction.
///
/// Vertex layout: the reds in id order, then `p` clique copies of each blue
/// vertex in id order, then the clique `A` of size `p`, then one pendant per
/// blue copy and per vertex of `A`, in that order. The budget is
/// `k + p(t + 1)` for `t` blue vertices.
pub fn rbds_to_pecvc(inst: &RbdsInstance, p: usize) -> Result<(Graph, usize)> {
    let inst = inst.preprocess()?;
    let t = inst.blue.len();
    if p == 0 || t < p || inst.k < p {
        return invalid(format!("need p >= 1, t >= p and k >= p (t = {t}, k = {}, p = {p})", inst.k));
    }
    let nr = inst.red.len();
    let copy = |j: usize, i: usize| nr + j * p + i;
    let a0 = nr + p * t;
    let pend0 = a0 + p;
    let n = pend0 + p * t + p;
    let mut edges = Vec::new();
    for i in 0..p {
        for i2 in i + 1..p {
            edges.push((a0 + i, a0 + i2));
            for j in 0..t {
                edges.push((copy(j, i), copy(j, i2)));
            }
        }
        edges.extend((0..nr).map(|r| (r, a0 + i)));
    }
    for &(r, b) in &inst.edges {
        let ri = inst.red.binary_search(&r).expect("preprocessed");
        let j = inst.blue.binary_search(&b).expect("known blue id");
        edges.extend((0..p).map(|i| (ri, copy(j, i))));
    }
    for v in nr..pend0 {
        edges.push((v, pend0 + (v - nr)));
    }
    Ok((Graph::from_edges(n, edges)?, inst.k + p * (t + 1)))
}

/// A random bipartite RBDS instance in which every blue vertex has a red
/// neighbor.
pub fn random_rbds(reds: usize, blues: usize, edge_prob: f64, k: usize, seed: u64) -> Result<RbdsInstance> {
    check_prob(edge_prob)?;
    if reds == 0 && blues > 0 {
        return invalid("blue vertices need a red neighbor");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for b in 0..blues {
        let before = edges.len();
        for r in 0..reds {
            if rng.gen_bool(edge_prob) {
                edges.push((r, b));
            }
        }
        if edges.len() == before {
            edges.push((rng.gen_range(0..reds), b));
        }
    }
    RbdsInstance::new((0..reds).collect(), (0..blues).collect(), edges, k)
}

fn check_prob(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return invalid(format!("edge probability {p} outside [0, 1]"));
    }
    Ok(())
}

/// `G(n, edge_prob)`: each pair `u < v` in lexicographic order is an edge with
/// probability `edge_prob`.
pub fn random_instance(n: usize, edge_prob: f64, seed: u64) -> Result<Graph> {
    check_prob(edge_prob)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(edge_prob) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// A `p`-connected core on vertices `0..core` plus `fringe` independent
/// vertices, each joined to between `p` and `min(core, 2p)` core vertices.
/// The core is a `p`-connected vertex cover (for both variants), so `core` is
/// returned as an upper bound on the optimum.
///
/// The core is `K_{p+1}` when `core = p + 1`; otherwise a cycle augmented
/// with random chords until it is `p`-vertex-connected.
pub fn planted_instance(core: usize, fringe: usize, p: usize, seed: u64) -> Result<(Graph, usize)> {
    if p == 0 || core < p + 1 {
        return invalid(format!("core of {core} vertices cannot be {p}-connected"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    if core == p + 1 {
        edges.extend((0..core).flat_map(|u| (u + 1..core).map(move |v| (u, v))));
    } else {
        edges.extend((0..core).map(|u| (u.min((u + 1) % core), u.max((u + 1) % core))));
        let mut missing: Vec<(Vertex, Vertex)> = (0..core)
            .flat_map(|u| (u + 1..core).map(move |v| (u, v)))
            .filter(|e| !edges.contains(e))
            .collect();
        missing.shuffle(&mut rng);
        while !vertex_connectivity_at_least(&Graph::from_edges(core, edges.iter().copied())?, p) {
            edges.insert(missing.pop().expect("the complete graph is p-connected"));
        }
    }
    let hi = core.min(2 * p);
    for f in 0..fringe {
        let want = rng.gen_range(p..=hi);
        let mut pool: Vec<Vertex> = (0..core).collect();
        pool.shuffle(&mut rng);
        edges.extend(pool[..want].iter().map(|&c| (c, core + f)));
    }
    Ok((Graph::from_edges(core + fringe, edges)?, core))
}

/// One graph from every isomorphism class on `n` vertices (`n <= 10`).
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 10, "exhaustive enumeration is limited to 10 vertices");
    let mut level: Vec<Vec<u32>> = vec![vec![]];
    for size in 1..=n {
        let mut next: Vec<Vec<u32>> = Vec::new();
        let mut buckets: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
        for base in &level {
            let old = size - 1;
            for nb in 0u32..1 << old {
                let mut adj = base.clone();
                for (u, row) in adj.iter_mut().enumerate() {
                    if nb >> u & 1 == 1 {
                        *row |= 1 << old;
                    }
                }
                adj.push(nb);
                let colors = refine(&adj);
                let mut inv = colors.clone();
                inv.sort_unstable();
                let bucket = buckets.entry(inv).or_default();
                if bucket.iter().any(|&i| isomorphic(&next[i], &refine(&next[i]), &adj, &colors)) {
                    continue;
                }
                bucket.push(next.len());
                next.push(adj);
            }
        }
        level = next;
    }
    level
        .iter()
        .map(|adj| {
            let edges = (0..n).flat_map(|u| (u + 1..n).filter(move |&v| adj[u] >> v & 1 == 1).map(move |v| (u, v)));
            Graph::from_edges(n, edges).expect("edges in range")
        })
        .collect()
}

/// One connected graph from every isomorphism class on `n` vertices.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n).into_iter().filter(Graph::is_connected).collect()
}

/// Colour refinement from degrees; colours are comparable across graphs.
fn refine(adj: &[u32]) -> Vec<u64> {
    let mut colors: Vec<u64> = adj.iter().map(|m| u64::from(m.count_ones())).collect();
    for _ in 0..adj.len() {
        let next: Vec<u64> = (0..adj.len())
            .map(|v| {
                let mut nb: Vec<u64> = (0..adj.len()).filter(|&w| adj[v] >> w & 1 == 1).map(|w| colors[w]).collect();
                nb.sort_unstable();
                let mut h = DefaultHasher::new();
                (colors[v], nb).hash(&mut h);
                h.finish()
            })
            .collect();
        colors = next;
    }
    colors
}

fn isomorphic(a: &[u32], ca: &[u64], b: &[u32], cb: &[u64]) -> bool {
    fn extend(a: &[u32], ca: &[u64], b: &[u32], cb: &[u64], map: &mut Vec<usize>, used: u32) -> bool {
        let v = map.len();
        if v == a.len() {
            return true;
        }
        for w in 0..b.len() {
            if used >> w & 1 == 1 || ca[v] != cb[w] {
                continue;
            }
            let consistent = (0..v).all(|u| (a[v] >> u & 1) == (b[w] >> map[u] & 1));
            if consistent {
                map.push(w);
                if extend(a, ca, b, cb, map, used | 1 << w) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    a.len() == b.len() && extend(a, ca, b, cb, &mut Vec::with_capacity(a.len()), 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::{edge_connectivity_at_least, Variant};
    use crate::oracle::exact_opt;

    #[test]
    fn graph_counts() {
        let all: Vec<usize> = (1..=7).map(|n| all_graphs(n).len()).collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34, 156, 1044]);
        let connected: Vec<usize> = (1..=7).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(connected, vec![1, 1, 2, 6, 21, 112, 853]);
    }

    #[test]
    fn cvc_reduction_small() {
        let (g, k) = cvc_to_pcvc(&Graph::complete(3), 2, 2);
        assert_eq!(g, Graph::complete(4));
        assert_eq!(k, 3);
        let (same, k1) = cvc_to_pcvc(&Graph::path(4), 2, 1);
        assert_eq!(same, Graph::path(4));
        assert_eq!(k1, 2);
        // budget 1: stars are yes, a path on four vertices is no
        assert_eq!(cvc_to_pcvc(&Graph::star(4), 1, 3), (Graph::complete(4), 4));
        assert_eq!(cvc_to_pcvc(&Graph::path(4), 1, 2), (Graph::complete(3), 2));
    }

    #[test]
    fn rbds_round_trip_and_example() {
        let inst = RbdsInstance::new(vec![7], vec![1, 2], vec![(7, 1), (7, 2)], 2).unwrap();
        assert_eq!(parse_rbds(&write_rbds(&inst)).unwrap(), inst);
        assert_eq!(inst.brute_force(), Some(vec![7]));
        let (g, k) = rbds_to_pecvc(&inst, 2).unwrap();
        assert_eq!(g.n(), 1 + 2 * 2 + 2 + 2 * 3);
        assert_eq!(k, 8);
        assert!(exact_opt(&g, 2, Variant::Edge, k).opt().is_some());
    }

    #[test]
    fn rbds_preconditions() {
        let lonely = RbdsInstance::new(vec![0], vec![0, 1], vec![(0, 0)], 2).unwrap();
        assert!(lonely.preprocess().is_err());
        let small_t = RbdsInstance::new(vec![0], vec![0], vec![(0, 0)], 2).unwrap();
        assert!(rbds_to_pecvc(&small_t, 2).is_err());
        let extra = RbdsInstance::new(vec![0, 5], vec![0, 1], vec![(0, 0), (0, 1)], 2).unwrap();
        assert_eq!(extra.preprocess().unwrap().red, vec![0]);
        assert!(parse_rbds("r 1\nb 2\ne 1 2\n").is_err());
        assert!(parse_rbds("r 1\nx 2\nk 1\n").is_err());
    }

    #[test]
    fn planted_core_is_a_solution() {
        let (k3, bound) = planted_instance(3, 0, 2, 0).unwrap();
        assert_eq!((k3, bound), (Graph::complete(3), 3));
        for seed in 0..20 {
            let (g, bound) = planted_instance(6, 5, 2, seed).unwrap();
            let core: Vec<Vertex> = (0..bound).collect();
            assert!(g.is_vertex_cover(&core));
            assert!(vertex_connectivity_at_least(&g.induced(&core), 2));
            assert!(edge_connectivity_at_least(&g.induced(&core), 2));
            assert!((bound..g.n()).all(|f| g.degree(f) >= 2));
        }
        assert!(planted_instance(2, 0, 2, 0).is_err());
    }

    #[test]
    fn random_is_seeded() {
        assert_eq!(random_instance(12, 0.3, 4).unwrap(), random_instance(12, 0.3, 4).unwrap());
        assert!(random_instance(3, 1.5, 0).is_err());
        assert_eq!(random_instance(5, 1.0, 9).unwrap(), Graph::complete(5));
    }
}
