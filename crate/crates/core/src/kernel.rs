//! Approximate kernelization shared by the vertex and edge variants.
//!
//! `mark` keeps the high-degree vertices `H`, the remainder `R`, and for every
//! small subset of `H` a bounded number of common neighbors from the
//! independent set `I`. `reduce` wraps it with the trivial-instance cases and
//! `lift_solution` maps a solution of the reduced instance back.

use num_rational::Ratio;
use serde::Serialize;

use crate::connectivity::{feasible_cover, is_connected_cover, low_degree_closure, Variant};
use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, Vertex};

pub type Epsilon = Ratio<u64>;

/// Parses a positive rational written as `0.25`, `1/4` or `2`.
pub fn parse_epsilon(text: &str) -> Result<Epsilon> {
    let bad = || Error::InvalidArgument(format!("bad epsilon `{text}`"));
    let t = text.trim();
    let eps = if let Some((a, b)) = t.split_once('/') {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().parse().map_err(|_| bad())?;
        if b == 0 {
            return Err(bad());
        }
        Ratio::new(a, b)
    } else if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || frac.len() > 9 || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let whole: u64 = if whole.is_empty() { 0 } else { whole.parse().map_err(|_| bad())? };
        let den = 10u64.pow(frac.len() as u32);
        let num: u64 = frac.parse().map_err(|_| bad())?;
        Ratio::new(whole * den + num, den)
    } else {
        Ratio::from_integer(t.parse().map_err(|_| bad())?)
    };
    if eps == Ratio::from_integer(0) {
        return Err(bad());
    }
    Ok(eps)
}

/// Which trivial instance, if any, replaced the input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sentinel {
    None,
    /// `2K_2` with budget 1: the input has no solution of any size.
    TwoK2NoSolution,
    /// `K_{2p}` with budget 1: marking found no solution of size at most `k`.
    K2pInfeasible,
}

/// Output of [`mark`]. All vertex sets use the ids of the input graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Marking {
    pub h: Vec<Vertex>,
    pub i: Vec<Vertex>,
    pub r: Vec<Vertex>,
    pub l: Vec<Vertex>,
    /// Sorted `H ∪ R ∪ L`; vertex `j` of `g_prime` is `kept[j]`.
    pub kept: Vec<Vertex>,
    pub g_prime: Graph,
    pub k_prime: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelResult {
    pub g_prime: Graph,
    pub k_prime: usize,
    pub h: Vec<Vertex>,
    pub r: Vec<Vertex>,
    pub l: Vec<Vertex>,
    /// Maps vertices of `g_prime` to the input graph; empty for sentinels.
    pub kept: Vec<Vertex>,
    pub epsilon_used: Epsilon,
    pub variant: Variant,
    pub passthrough: bool,
    pub sentinel: Sentinel,
}

fn one() -> Epsilon {
    Ratio::from_integer(1)
}

/// `2 * ceil(p / min(eps, 1))`, the largest subset size that gets marked.
pub fn subset_limit(p: usize, eps: Epsilon) -> usize {
    let e = eps.min(one());
    let q = Ratio::from_integer(p as u64) / e;
    2 * q.ceil().to_integer() as usize
}

/// `floor((3 + eps) k)`, the per-subset marking cap.
pub fn marking_cap(k: usize, eps: Epsilon) -> usize {
    ((Ratio::from_integer(3) + eps) * Ratio::from_integer(k as u64))
        .floor()
        .to_integer() as usize
}

/// `ceil((1 + eps) k)`.
pub fn kernel_budget(k: usize, eps: Epsilon) -> usize {
    ((one() + eps) * Ratio::from_integer(k as u64)).ceil().to_integer() as usize
}

fn saturating_pow(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

/// Guaranteed vertex bound `k + 2k^2 + floor((3+eps)k) * k^(2 ceil(p/min(eps,1)))`, saturating.
pub fn size_bound(k: usize, eps: Epsilon, p: usize) -> u128 {
    let k128 = k as u128;
    (k128 + 2 * k128 * k128)
        .saturating_add((marking_cap(k, eps) as u128).saturating_mul(saturating_pow(k, subset_limit(p, eps))))
}

fn check_args(k: usize, p: usize) -> Result<()> {
    if k == 0 {
        return invalid("k must be at least 1");
    }
    if p == 0 {
        return invalid("p must be at least 1");
    }
    Ok(())
}

fn intersect(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// The marking procedure. `Ok(None)` means `g` has no solution with at most
/// `k` vertices (`|H| > k` or `|R| > 2k^2`).
pub fn mark(g: &Graph, k: usize, epsilon: Epsilon, p: usize) -> Result<Option<Marking>> {
    check_args(k, p)?;
    let h: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) > k).collect();
    let in_h = g.mask(&h);
    let (i, r): (Vec<Vertex>, Vec<Vertex>) = g
        .vertices()
        .filter(|&v| !in_h[v])
        .partition(|&v| g.neighbors(v).iter().all(|&w| in_h[w]));
    if h.len() > k || r.len() > 2 * k * k {
        return Ok(None);
    }
    let in_i = g.mask(&i);
    // N(v) ∩ I for each v in H
    let nbr_i: Vec<Vec<Vertex>> = h
        .iter()
        .map(|&v| g.neighbors(v).iter().copied().filter(|&w| in_i[w]).collect())
        .collect();
    let cap = marking_cap(k, epsilon);
    let limit = subset_limit(p, epsilon).min(h.len());
    let mut marked = vec![false; g.n()];
    // index subsets of H, ascending size then lexicographic
    for size in 1..=limit {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let mut common = nbr_i[idx[0]].clone();
            for &j in &idx[1..] {
                if common.is_empty() {
                    break;
                }
                common = intersect(&common, &nbr_i[j]);
            }
            for &v in common.iter().take(cap) {
                marked[v] = true;
            }
            // next combination
            let mut pos = size;
            while pos > 0 && idx[pos - 1] == h.len() - size + pos - 1 {
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
            idx[pos - 1] += 1;
            for t in pos..size {
                idx[t] = idx[t - 1] + 1;
            }
        }
    }
    let l: Vec<Vertex> = i.iter().copied().filter(|&v| marked[v]).collect();
    let mut kept: Vec<Vertex> = h.iter().chain(&r).chain(&l).copied().collect();
    kept.sort_unstable();
    let g_prime = g.induced(&kept).relabeled_identity();
    Ok(Some(Marking {
        h,
        i,
        r,
        l,
        kept,
        g_prime,
        k_prime: kernel_budget(k, epsilon),
    }))
}

/// The reduction: infeasible inputs become `2K_2`, small inputs pass through,
/// marking failures become `K_{2p}`, and everything else is the marked graph.
pub fn reduce(g: &Graph, k: usize, epsilon: Epsilon, p: usize, variant: Variant) -> Result<KernelResult> {
    check_args(k, p)?;
    let epsilon_used = epsilon.min(one());
    let base = KernelResult {
        g_prime: Graph::empty(0),
        k_prime: 1,
        h: Vec::new(),
        r: Vec::new(),
        l: Vec::new(),
        kept: Vec::new(),
        epsilon_used,
        variant,
        passthrough: false,
        sentinel: Sentinel::None,
    };
    if feasible_cover(g, p, variant).is_none() {
        let two_k2 = Graph::from_edges(4, [(0, 1), (2, 3)]).expect("2K2");
        return Ok(KernelResult {
            g_prime: two_k2,
            sentinel: Sentinel::TwoK2NoSolution,
            ..base
        });
    }
    if (g.n() as u128) <= saturating_pow(k, subset_limit(p, epsilon)) {
        return Ok(KernelResult {
            g_prime: g.relabeled_identity(),
            k_prime: k,
            kept: g.vertices().collect(),
            passthrough: true,
            ..base
        });
    }
    match mark(g, k, epsilon, p)? {
        None => Ok(KernelResult {
            g_prime: Graph::complete(2 * p),
            sentinel: Sentinel::K2pInfeasible,
            ..base
        }),
        Some(m) => Ok(KernelResult {
            g_prime: m.g_prime,
            k_prime: m.k_prime,
            h: m.h,
            r: m.r,
            l: m.l,
            kept: m.kept,
            ..base
        }),
    }
}

/// Maps a solution `s_prime` of `kr.g_prime` back to `g`. Falls back to the
/// low-degree closure solution whenever `s_prime` is unusable; returns the
/// empty set when `g` has no solution at all.
pub fn lift_solution(
    g: &Graph,
    kr: &KernelResult,
    s_prime: &[Vertex],
    p: usize,
    variant: Variant,
) -> Vec<Vertex> {
    if feasible_cover(g, p, variant).is_none() {
        return Vec::new();
    }
    let fallback = || low_degree_closure(g, p).1;
    if kr.sentinel != Sentinel::None || s_prime.iter().any(|&v| v >= kr.g_prime.n()) {
        return fallback();
    }
    if !is_connected_cover(&kr.g_prime, s_prime, p, variant) {
        return fallback();
    }
    let mut lifted: Vec<Vertex> = s_prime.iter().map(|&v| kr.kept[v]).collect();
    lifted.sort_unstable();
    lifted.dedup();
    if kr.h.iter().any(|v| lifted.binary_search(v).is_err()) {
        return fallback();
    }
    debug_assert!(is_connected_cover(g, &lifted, p, variant));
    lifted
}
