//! Exact solver for `p`-edge-connected vertex cover in single-exponential time.
//!
//! `G[S]` is `p`-edge-connected exactly when the symmetric digraph on `S` has
//! `p` arc-disjoint out-branchings from a fixed root. Every solution contains a
//! minimal vertex cover `H`, so the solver enumerates those and, for each one,
//! grows the `p` branchings by dynamic programming: first with arcs inside `H`,
//! then by adding vertices outside `H` (an independent set) one at a time
//! together with all of their arcs. A partial solution is a set of arc copies
//! independent in the direct sum of a graphic and an out-partition matroid per
//! branching plus a uniform matroid that caps the total.
//!
//! Two partial solutions with equal components and in-degrees on `H` in every
//! layer extend in exactly the same ways, because later steps only touch arcs
//! that neither has decided yet. Slots are deduplicated on that signature, and a
//! slot still larger than the representative-set bound `C(r, q)` is shrunk to a
//! representative family in the truncated matroid.

use std::collections::{BTreeMap, HashSet};

use crate::connectivity::{edge_connectivity_at_least, feasible_cover, low_degree_closure, Variant};
use crate::gomory_hu::Dsu;
use crate::graph::{Graph, Vertex};
use crate::matroid::{
    binomial, direct_sum, graphic_matroid_on_arcs, out_partition_matroid, representative_indices,
    uniform_matroid, ArcGround, LinearMatroid, DEFAULT_MODULUS,
};
use crate::oracle::enumerate_minimal_vcs;

/// Largest supported minimal vertex cover; component labels and in-degree
/// masks over `H` are packed into 64 bits.
pub const MAX_COVER: usize = 64;

/// An arc of the symmetric digraph, tagged with its branching in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TaggedArc {
    pub tail: Vertex,
    pub head: Vertex,
    pub layer: usize,
}

/// A solution together with the branchings that certify it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub vertices: Vec<Vertex>,
    pub root: Vertex,
    pub arcs: Vec<TaggedArc>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DpStats {
    /// Table slots `(i, j, q)` that held at least one partial solution.
    pub slots_touched: u64,
    /// Largest slot after reduction.
    pub max_slot_size: usize,
    /// Slots shrunk by the representative-family computation.
    pub reductions: u64,
}

impl DpStats {
    fn absorb(&mut self, other: DpStats) {
        self.slots_touched += other.slots_touched;
        self.max_slot_size = self.max_slot_size.max(other.max_slot_size);
        self.reductions += other.reductions;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PecvcReport {
    pub witness: Option<Witness>,
    /// The target size at which the first solution appeared.
    pub k_used: Option<usize>,
    pub stats: DpStats,
}

impl PecvcReport {
    pub fn solution(&self) -> Option<&[Vertex]> {
        self.witness.as_ref().map(|w| &w.vertices[..])
    }
}

/// A minimum `p`-edge-connected vertex cover of size at most `k`, or `None`.
pub fn solve_p_ecvc_fpt(g: &Graph, k: usize, p: usize) -> Option<Vec<Vertex>> {
    solve_p_ecvc_fpt_report(g, k, p).witness.map(|w| w.vertices)
}

/// Like [`solve_p_ecvc_fpt`] but also returns the certificate and table
/// statistics. Target sizes are tried in increasing order, so the solution has
/// minimum size; among those it is the lexicographically least one found.
pub fn solve_p_ecvc_fpt_report(g: &Graph, k: usize, p: usize) -> PecvcReport {
    let mut stats = DpStats::default();
    if feasible_cover(g, p, Variant::Edge).is_none() {
        return PecvcReport {
            witness: None,
            k_used: None,
            stats,
        };
    }
    let banned = g.mask(&low_degree_closure(g, p).0);
    let covers: Vec<Vec<Vertex>> = enumerate_minimal_vcs(g, k)
        .into_iter()
        .filter(|h| !h.is_empty() && h.iter().all(|&v| !banned[v]))
        .collect();
    let ground = ArcGround::of(g);
    // a p-edge-connected graph has at least two vertices and minimum degree p
    for target in 2.max(p + 1)..=k {
        let mut best: Option<Witness> = None;
        for h in covers.iter().filter(|h| h.len() <= target) {
            let mut dp = Dp::new(g, &ground, h, &banned, target, p);
            let found = dp.run();
            stats.absorb(dp.stats);
            if let Some(w) = found {
                if best.as_ref().is_none_or(|b| w.vertices < b.vertices) {
                    best = Some(w);
                }
            }
        }
        if best.is_some() {
            return PecvcReport {
                witness: best,
                k_used: Some(target),
                stats,
            };
        }
    }
    PecvcReport {
        witness: None,
        k_used: None,
        stats,
    }
}

/// Extends the vertex cover `h` to a `p`-edge-connected vertex cover of
/// exactly `k` vertices, returning the lexicographically least one found. The
/// branchings are rooted at the smallest vertex of `h`.
///
/// # Panics
///
/// If `h` is empty, is not a vertex cover, or has more than [`MAX_COVER`]
/// vertices.
pub fn extend_cover(g: &Graph, h: &[Vertex], k: usize, p: usize) -> Option<Witness> {
    extend_cover_with_stats(g, h, k, p).0
}

pub fn extend_cover_with_stats(g: &Graph, h: &[Vertex], k: usize, p: usize) -> (Option<Witness>, DpStats) {
    let mut h = h.to_vec();
    h.sort_unstable();
    h.dedup();
    assert!(g.is_vertex_cover(&h), "extend_cover needs a vertex cover");
    let ground = ArcGround::of(g);
    let banned = g.mask(&low_degree_closure(g, p).0);
    let mut dp = Dp::new(g, &ground, &h, &banned, k, p);
    let found = dp.run();
    (found, dp.stats)
}

/// Checks that `arcs` splits into `p` arc-disjoint out-branchings of the
/// complete digraph on `vertex_set`, all rooted at `v_r`: each layer has
/// `|vertex_set| - 1` arcs inside the set, none entering `v_r`, exactly one
/// entering every other vertex, and no cycle in its underlying graph.
pub fn branching_certificate_check(arcs: &[TaggedArc], vertex_set: &[Vertex], v_r: Vertex, p: usize) -> bool {
    let Some(n) = vertex_set.iter().max().map(|&v| v + 1) else {
        return false;
    };
    let mut inside = vec![false; n.max(v_r + 1)];
    for &v in vertex_set {
        inside[v] = true;
    }
    if !inside[v_r] {
        return false;
    }
    let size = vertex_set.iter().filter(|&&v| inside[v]).count();
    let mut distinct = HashSet::new();
    for a in arcs {
        if a.layer >= p || a.tail == a.head || !distinct.insert((a.tail, a.head)) {
            return false;
        }
        if !inside.get(a.tail).copied().unwrap_or(false) || !inside.get(a.head).copied().unwrap_or(false) {
            return false;
        }
    }
    for layer in 0..p {
        let own: Vec<&TaggedArc> = arcs.iter().filter(|a| a.layer == layer).collect();
        if own.len() + 1 != size {
            return false;
        }
        let mut indeg = vec![0usize; inside.len()];
        let mut dsu = Dsu::new(inside.len());
        for a in &own {
            indeg[a.head] += 1;
            if !dsu.union(a.tail, a.head) {
                return false;
            }
        }
        if vertex_set.iter().any(|&v| indeg[v] != usize::from(v != v_r)) {
            return false;
        }
    }
    true
}

#[derive(Clone)]
struct State {
    /// `(arc index in the ground set, layer)`.
    arcs: Vec<(usize, u8)>,
    outside: Vec<Vertex>,
    /// Layer-major component labels of the vertices of `H`, canonical per layer.
    comp: Vec<u8>,
    /// Per layer, bit `t` is set once `H[t]` has its in-arc.
    indeg: Vec<u64>,
}

/// A successor before its arc list is built; cheap to discard.
struct Draft {
    comp: Vec<u8>,
    indeg: Vec<u64>,
    arcs: usize,
}

type Emit<'e> = dyn FnMut(Draft, &[usize], &[(usize, usize)]) + 'e;

/// Per-layer components and in-degrees, with layers sorted: permuting the
/// layers of a partial solution does not change how it can be extended.
fn signature(comp: &[u8], indeg: &[u64]) -> Vec<u8> {
    let hn = comp.len() / indeg.len().max(1);
    let mut layers: Vec<(&[u8], u64)> = indeg.iter().enumerate().map(|(b, &m)| (&comp[b * hn..(b + 1) * hn], m)).collect();
    layers.sort_unstable();
    let mut key = Vec::with_capacity(comp.len() + 8 * indeg.len());
    for (c, m) in layers {
        key.extend_from_slice(c);
        key.extend_from_slice(&m.to_le_bytes());
    }
    key
}

/// Relabels components in order of first appearance.
fn canonicalize(labels: &mut [u8]) {
    let mut map = [u8::MAX; MAX_COVER];
    let mut next = 0u8;
    for l in labels.iter_mut() {
        let slot = &mut map[*l as usize];
        if *slot == u8::MAX {
            *slot = next;
            next += 1;
        }
        *l = *slot;
    }
}

#[derive(Default)]
struct Slot {
    states: Vec<State>,
    seen: HashSet<Vec<u8>>,
}

struct Dp<'a> {
    g: &'a Graph,
    ground: &'a ArcGround,
    h: &'a [Vertex],
    /// Position of each vertex inside `h`.
    pos: Vec<Option<usize>>,
    /// Candidate vertices outside `H`, indexed from 1 in this order.
    outside: Vec<Vertex>,
    /// Per position in `H`, the last outside index adjacent to it (0: none).
    last_out: Vec<usize>,
    root: usize,
    k: usize,
    p: usize,
    /// Total arcs of a complete certificate, `p(k - 1)`.
    budget: usize,
    matroid: Option<LinearMatroid>,
    /// Overrides the `C(r, q)` reduction threshold when set.
    reduce_above: Option<usize>,
    stats: DpStats,
}

impl<'a> Dp<'a> {
    /// `banned` marks vertices that no solution can contain.
    fn new(g: &'a Graph, ground: &'a ArcGround, h: &'a [Vertex], banned: &[bool], k: usize, p: usize) -> Self {
        assert!(!h.is_empty() && h.len() <= MAX_COVER, "cover size must be in 1..={MAX_COVER}");
        let mut pos = vec![None; g.n()];
        for (t, &v) in h.iter().enumerate() {
            pos[v] = Some(t);
        }
        let outside: Vec<Vertex> = g
            .vertices()
            .filter(|&v| pos[v].is_none() && !banned[v] && g.degree(v) >= p)
            .collect();
        let mut last_out = vec![0; h.len()];
        if k > h.len() {
            for (j, &w) in outside.iter().enumerate() {
                for &x in g.neighbors(w) {
                    let t = pos[x].expect("H is a vertex cover");
                    last_out[t] = j + 1;
                }
            }
        }
        Dp {
            g,
            ground,
            h,
            pos,
            outside,
            last_out,
            root: 0,
            k,
            p,
            budget: p * k.saturating_sub(1),
            matroid: None,
            reduce_above: None,
            stats: DpStats::default(),
        }
    }

    fn run(&mut self) -> Option<Witness> {
        if self.h.len() > self.k || self.k < 2 {
            return None;
        }
        let need = self.k - self.h.len();
        if self.outside.len() < need {
            return None;
        }
        let mut level = self.inside_phase();
        for i in 0..need {
            let mut next: BTreeMap<(usize, usize), Slot> = BTreeMap::new();
            // vertices still to place after this one must fit behind it
            let last = self.outside.len() - (need - i - 1);
            let final_step = i + 1 == need;
            for (&(j, _), states) in &level {
                for st in states {
                    for jj in j + 1..=last {
                        let w = self.outside[jj - 1];
                        self.expand(st, w, jj, final_step, &mut |draft, ins, outs| {
                            debug_assert!(!final_step || draft.arcs == self.budget);
                            let slot = next.entry((jj, draft.arcs)).or_default();
                            if slot.seen.insert(signature(&draft.comp, &draft.indeg)) {
                                slot.states.push(self.materialize(st, w, draft, ins, outs));
                            }
                        });
                    }
                }
            }
            level = self.finish(next);
        }
        let best = level
            .iter()
            .filter(|(&(_, c), _)| c == self.budget)
            .flat_map(|(_, states)| states)
            .min_by_key(|st| {
                let mut vs: Vec<Vertex> = self.h.iter().chain(&st.outside).copied().collect();
                vs.sort_unstable();
                vs
            })?;
        Some(self.witness(best))
    }

    /// Fills the slots `(0, 0, q)` from the arcs of `D_G[H]`. Heads are taken
    /// in order; each non-root head gets, per layer, one in-arc from `H` or
    /// none, and none only while a later outside vertex could still supply it.
    fn inside_phase(&mut self) -> BTreeMap<(usize, usize), Vec<State>> {
        let (p, hn) = (self.p, self.h.len());
        let init = State {
            arcs: Vec::new(),
            outside: Vec::new(),
            comp: (0..p).flat_map(|_| 0..hn as u8).collect(),
            indeg: vec![0; p],
        };
        let mut states = vec![init];
        for tv in (0..hn).filter(|&t| t != self.root) {
            let v = self.h[tv];
            let tails: Vec<usize> = self.g.neighbors(v).iter().filter_map(|&u| self.pos[u]).collect();
            let optional = self.last_out[tv] > 0;
            let mut seen = HashSet::new();
            let mut next = Vec::with_capacity(states.len());
            for st in &states {
                self.choose_heads(st, tv, &tails, optional, 0, &mut vec![None; p], &mut |draft, pick| {
                    if seen.insert(signature(&draft.comp, &draft.indeg)) {
                        let mut child = State {
                            arcs: st.arcs.clone(),
                            outside: Vec::new(),
                            comp: draft.comp,
                            indeg: draft.indeg,
                        };
                        for (b, tu) in pick.iter().enumerate() {
                            if let Some(tu) = *tu {
                                child.arcs.push((self.arc_index(self.h[tu], v), b as u8));
                            }
                        }
                        next.push(child);
                    }
                });
            }
            states = next;
        }
        let mut slots: BTreeMap<(usize, usize), Slot> = BTreeMap::new();
        for st in states {
            let slot = slots.entry((0, st.arcs.len())).or_default();
            if slot.seen.insert(signature(&st.comp, &st.indeg)) {
                slot.states.push(st);
            }
        }
        self.finish(slots)
    }

    #[allow(clippy::too_many_arguments)]
    fn choose_heads(
        &self,
        st: &State,
        tv: usize,
        tails: &[usize],
        optional: bool,
        layer: usize,
        pick: &mut Vec<Option<usize>>,
        emit: &mut dyn FnMut(Draft, &[Option<usize>]),
    ) {
        let hn = self.h.len();
        if layer == self.p {
            let mut comp = st.comp.clone();
            let mut indeg = st.indeg.clone();
            let mut arcs = st.arcs.len();
            for (b, &tu) in pick.iter().enumerate() {
                let Some(tu) = tu else { continue };
                arcs += 1;
                indeg[b] |= 1 << tv;
                let layer = &mut comp[b * hn..(b + 1) * hn];
                let (from, to) = (layer[tv], layer[tu]);
                layer.iter_mut().filter(|l| **l == from).for_each(|l| *l = to);
                canonicalize(layer);
            }
            emit(Draft { comp, indeg, arcs }, pick);
            return;
        }
        if optional {
            pick[layer] = None;
            self.choose_heads(st, tv, tails, optional, layer + 1, pick, emit);
        }
        for &tu in tails {
            if pick[..layer].contains(&Some(tu)) || st.comp[layer * hn + tu] == st.comp[layer * hn + tv] {
                continue;
            }
            pick[layer] = Some(tu);
            self.choose_heads(st, tv, tails, optional, layer + 1, pick, emit);
        }
    }

    /// Calls `emit` for every way of adding the outside vertex `w`, at
    /// position `jj`, with a set of its arcs: exactly one in-arc per layer, any
    /// number of out-arcs, and every layer still a forest with in-degree at
    /// most one and none into the root. A vertex of `H` that still lacks an
    /// in-arc and has no outside neighbor after `w` (or any at all, on the
    /// `last` step) must get it from `w`. `emit` also receives the chosen
    /// in-neighbor per layer and the out-arcs as `(position in H, layer)`.
    fn expand(&self, st: &State, w: Vertex, jj: usize, last: bool, emit: &mut Emit) {
        let p = self.p;
        let hn = self.h.len();
        if st.arcs.len() + p > self.budget {
            return;
        }
        let nbrs: Vec<usize> = self.g.neighbors(w).iter().map(|&x| self.pos[x].expect("H is a vertex cover")).collect();
        let mut must = vec![0u64; p];
        for b in 0..p {
            for x in (0..hn).filter(|&x| x != self.root && st.indeg[b] >> x & 1 == 0) {
                if self.last_out[x] < jj {
                    return;
                }
                if last || self.last_out[x] == jj {
                    must[b] |= 1 << x;
                }
            }
        }
        let nbr_mask = nbrs.iter().fold(0u64, |m, &x| m | 1 << x);
        // one arc (w, x) can serve x in a single layer only
        let mut seen = 0u64;
        for &m in &must {
            if m & !nbr_mask != 0 || m & seen != 0 {
                return;
            }
            seen |= m;
        }
        if nbrs.len() < p {
            return;
        }
        let mut ins = vec![0usize; p];
        let mut touched = vec![0u64; p];
        self.choose_in(st, &nbrs, &must, 0, 0, &mut ins, &mut touched, emit);
    }

    #[allow(clippy::too_many_arguments)]
    fn choose_in(
        &self,
        st: &State,
        nbrs: &[usize],
        must: &[u64],
        layer: usize,
        used: u64,
        ins: &mut Vec<usize>,
        touched: &mut Vec<u64>,
        emit: &mut Emit,
    ) {
        let hn = self.h.len();
        if layer == self.p {
            let mut outs = Vec::new();
            self.choose_out(st, nbrs, must, 0, ins, &mut outs, touched, emit);
            return;
        }
        for (t, &x) in nbrs.iter().enumerate() {
            if used >> t & 1 == 1 {
                continue;
            }
            ins[layer] = x;
            touched[layer] = 1 << st.comp[layer * hn + x];
            self.choose_in(st, nbrs, must, layer + 1, used | 1 << t, ins, touched, emit);
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn choose_out(
        &self,
        st: &State,
        nbrs: &[usize],
        must: &[u64],
        t: usize,
        ins: &[usize],
        outs: &mut Vec<(usize, usize)>,
        touched: &mut Vec<u64>,
        emit: &mut Emit,
    ) {
        let hn = self.h.len();
        if t == nbrs.len() {
            let mut comp = st.comp.clone();
            let mut indeg = st.indeg.clone();
            for &(x, b) in outs.iter() {
                indeg[b] |= 1 << x;
            }
            for (b, &mask) in touched.iter().enumerate() {
                let layer = &mut comp[b * hn..(b + 1) * hn];
                let to = mask.trailing_zeros() as u8;
                layer.iter_mut().filter(|l| mask >> **l & 1 == 1).for_each(|l| *l = to);
                canonicalize(layer);
            }
            let arcs = st.arcs.len() + self.p + outs.len();
            emit(Draft { comp, indeg, arcs }, ins, outs);
            return;
        }
        let x = nbrs[t];
        let forced = (0..self.p).find(|&b| must[b] >> x & 1 == 1);
        if forced.is_none() {
            self.choose_out(st, nbrs, must, t + 1, ins, outs, touched, emit);
        }
        if x == self.root || st.arcs.len() + self.p + outs.len() >= self.budget {
            return;
        }
        for b in forced.map_or(0..self.p, |f| f..f + 1) {
            let label = st.comp[b * hn + x];
            if st.indeg[b] >> x & 1 == 1 || touched[b] >> label & 1 == 1 {
                continue;
            }
            touched[b] |= 1 << label;
            outs.push((x, b));
            self.choose_out(st, nbrs, must, t + 1, ins, outs, touched, emit);
            outs.pop();
            touched[b] &= !(1 << label);
        }
    }

    fn materialize(&self, st: &State, w: Vertex, draft: Draft, ins: &[usize], outs: &[(usize, usize)]) -> State {
        let mut arcs = st.arcs.clone();
        for (b, &x) in ins.iter().enumerate() {
            arcs.push((self.arc_index(self.h[x], w), b as u8));
        }
        for &(x, b) in outs {
            arcs.push((self.arc_index(w, self.h[x]), b as u8));
        }
        let mut outside = st.outside.clone();
        outside.push(w);
        State {
            arcs,
            outside,
            comp: draft.comp,
            indeg: draft.indeg,
        }
    }

    fn arc_index(&self, u: Vertex, v: Vertex) -> usize {
        self.ground.index((u, v)).expect("arc of the graph")
    }

    /// Applies the representative-family reduction where a slot exceeds its
    /// bound, and records statistics.
    fn finish(&mut self, slots: BTreeMap<(usize, usize), Slot>) -> BTreeMap<(usize, usize), Vec<State>> {
        let mut out = BTreeMap::new();
        for (key, slot) in slots {
            let states = self.reduce(key.1, slot.states);
            self.stats.slots_touched += 1;
            self.stats.max_slot_size = self.stats.max_slot_size.max(states.len());
            out.insert(key, states);
        }
        out
    }

    fn reduce(&mut self, arcs: usize, states: Vec<State>) -> Vec<State> {
        let r = 3 * self.budget;
        let s = 3 * arcs;
        let bound = binomial(r, s);
        let limit = self.reduce_above.map_or(bound, |x| bound.min(x as u128));
        if states.len() as u128 <= limit {
            return states;
        }
        let copies = self.ground.len();
        let p = self.p;
        let family: Vec<Vec<usize>> = states
            .iter()
            .map(|st| {
                st.arcs
                    .iter()
                    .flat_map(|&(a, b)| {
                        let b = b as usize;
                        [2 * b * copies + a, (2 * b + 1) * copies + a, 2 * p * copies + a]
                    })
                    .collect()
            })
            .collect();
        let seed = (self.k as u64) << 32 | self.h[0] as u64;
        let m = self.matroid();
        let keep = representative_indices(&family, m, r - s, seed).expect("matroid parts share a modulus");
        self.stats.reductions += 1;
        let mut keep_mask = vec![false; states.len()];
        for i in keep {
            keep_mask[i] = true;
        }
        states.into_iter().zip(keep_mask).filter(|(_, k)| *k).map(|(st, _)| st).collect()
    }

    /// The direct sum `M_1 + ... + M_{2p+1}` over the arc copies.
    fn matroid(&mut self) -> &LinearMatroid {
        let (ground, p, root, uniform_rank) = (self.ground, self.p, self.h[self.root], self.budget);
        self.matroid.get_or_insert_with(|| {
            let graphic = graphic_matroid_on_arcs(ground, DEFAULT_MODULUS).expect("default modulus is prime");
            let out = out_partition_matroid(ground, root, DEFAULT_MODULUS).expect("default modulus is prime");
            let mut parts = Vec::with_capacity(2 * p + 1);
            for _ in 0..p {
                parts.push(graphic.clone());
                parts.push(out.clone());
            }
            parts.push(uniform_matroid(ground.len(), uniform_rank, DEFAULT_MODULUS).expect("default modulus is prime"));
            direct_sum(&parts).expect("matroid parts share a modulus")
        })
    }

    fn witness(&self, st: &State) -> Witness {
        let mut vertices: Vec<Vertex> = self.h.iter().chain(&st.outside).copied().collect();
        vertices.sort_unstable();
        let mut arcs: Vec<TaggedArc> = st
            .arcs
            .iter()
            .map(|&(a, b)| {
                let (tail, head) = self.ground.arcs[a];
                TaggedArc {
                    tail,
                    head,
                    layer: b as usize,
                }
            })
            .collect();
        arcs.sort_unstable();
        let root = self.h[self.root];
        assert!(
            branching_certificate_check(&arcs, &vertices, root, self.p),
            "terminal slot decodes to a branching certificate"
        );
        assert!(self.g.is_vertex_cover(&vertices));
        assert!(edge_connectivity_at_least(&self.g.induced(&vertices), self.p));
        Witness { vertices, root, arcs }
    }
}
