//! Exact solver for `p`-connected vertex cover in `2^O(k^2)` time.
//!
//! After dropping isolated vertices, every vertex of degree above `k` and every
//! neighbor of a vertex of degree below `p` is forced into the solution (`H`).
//! The rest splits into `I` (neighborhood inside `H`) and `R`. Large false-twin
//! classes in `I` are trimmed, which leaves a graph whose size depends on `k`
//! only, and the supersets of `H` are then enumerated.

use std::collections::BTreeMap;

use crate::connectivity::vertex_connectivity_at_least;
use crate::graph::{Graph, Vertex};

/// The structural partition computed before enumeration. Vertex ids are those
/// of `g`, whose labels point back to the input graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcvcInstance {
    pub g: Graph,
    pub h: Vec<Vertex>,
    pub i: Vec<Vertex>,
    pub r: Vec<Vertex>,
    /// Classes of `I` with identical neighborhoods, keyed by that neighborhood.
    pub twin_classes: BTreeMap<Vec<Vertex>, Vec<Vertex>>,
}

impl PcvcInstance {
    /// Partitions `g` (isolated vertices removed, labels kept).
    pub fn new(g: &Graph, k: usize, p: usize) -> Self {
        let busy: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) > 0).collect();
        let g = g.induced(&busy);
        let mut in_h = vec![false; g.n()];
        for v in g.vertices() {
            if g.degree(v) > k {
                in_h[v] = true;
            }
            if g.degree(v) < p {
                for &w in g.neighbors(v) {
                    in_h[w] = true;
                }
            }
        }
        let h: Vec<Vertex> = g.vertices().filter(|&v| in_h[v]).collect();
        let (i, r): (Vec<Vertex>, Vec<Vertex>) = g
            .vertices()
            .filter(|&v| !in_h[v])
            .partition(|&v| g.neighbors(v).iter().all(|&w| in_h[w]));
        let mut twin_classes: BTreeMap<Vec<Vertex>, Vec<Vertex>> = BTreeMap::new();
        for &v in &i {
            twin_classes.entry(g.neighbors(v).to_vec()).or_default().push(v);
        }
        PcvcInstance {
            g,
            h,
            i,
            r,
            twin_classes,
        }
    }

    pub fn r_edge_count(&self) -> usize {
        let in_r = self.g.mask(&self.r);
        self.g
            .edges()
            .iter()
            .filter(|&&(u, v)| in_r[u] && in_r[v])
            .count()
    }
}

/// Deletes vertices of `i` so that every false-twin class inside `i` keeps at
/// most `k + 2` members (the smallest ids). Labels are carried over.
pub fn twin_reduce(g: &Graph, k: usize, _h: &[Vertex], i: &[Vertex]) -> Graph {
    let mut classes: BTreeMap<&[Vertex], Vec<Vertex>> = BTreeMap::new();
    for &v in i {
        classes.entry(g.neighbors(v)).or_default().push(v);
    }
    let mut removed = Vec::new();
    for members in classes.values_mut() {
        members.sort_unstable();
        if members.len() > k + 2 {
            removed.extend_from_slice(&members[k + 2..]);
        }
    }
    if removed.is_empty() {
        return g.clone();
    }
    g.without(&removed)
}

/// Visits vertex covers of `g` of exactly `size` vertices that contain every
/// `forced` vertex and avoid every `banned` one, in lexicographic order, until
/// `visit` accepts one.
fn search_covers(
    g: &Graph,
    forced: &[bool],
    banned: &[bool],
    size: usize,
    visit: &mut dyn FnMut(&[Vertex]) -> bool,
) -> bool {
    struct State<'a> {
        g: &'a Graph,
        banned: &'a [bool],
        must: Vec<u32>,
        chosen: Vec<Vertex>,
        in_set: Vec<bool>,
    }
    fn rec(st: &mut State, v: usize, need: usize, left: usize, visit: &mut dyn FnMut(&[Vertex]) -> bool) -> bool {
        if v == st.g.n() {
            return left == 0 && visit(&st.chosen);
        }
        if need > left {
            return false;
        }
        let is_must = st.must[v] > 0;
        let need_after = need - usize::from(is_must);
        if left > 0 && !st.banned[v] {
            st.chosen.push(v);
            st.in_set[v] = true;
            let hit = rec(st, v + 1, need_after, left - 1, visit);
            st.chosen.pop();
            st.in_set[v] = false;
            if hit {
                return true;
            }
        }
        if is_must {
            return false;
        }
        // leaving v out: earlier neighbors must already be in, later ones become forced
        let nbrs = st.g.neighbors(v);
        if nbrs.iter().any(|&w| (w < v && !st.in_set[w]) || (w > v && st.banned[w])) {
            return false;
        }
        let mut extra = 0;
        for &w in nbrs.iter().filter(|&&w| w > v) {
            if st.must[w] == 0 {
                extra += 1;
            }
            st.must[w] += 1;
        }
        let hit = rec(st, v + 1, need_after + extra, left, visit);
        for &w in nbrs.iter().filter(|&&w| w > v) {
            st.must[w] -= 1;
        }
        hit
    }
    let must: Vec<u32> = forced.iter().map(|&f| u32::from(f)).collect();
    let need = forced.iter().filter(|&&f| f).count();
    let mut st = State {
        g,
        banned,
        must,
        chosen: Vec::new(),
        in_set: vec![false; g.n()],
    };
    rec(&mut st, 0, need, size, visit)
}

/// A `p`-connected vertex cover of `g` with at most `k` vertices, or `None`.
/// The answer has minimum size and is lexicographically least among the
/// minimum-size covers of the reduced graph.
pub fn solve_p_cvc_fpt(g: &Graph, k: usize, p: usize) -> Option<Vec<Vertex>> {
    let base = g.relabeled_identity();
    let inst = PcvcInstance::new(&base, k, p);
    if inst.h.len() > k || inst.r_edge_count() > k * k {
        return None;
    }
    let reduced = twin_reduce(&inst.g, k, &inst.h, &inst.i);
    let inst = PcvcInstance::new(&reduced, k, p);
    if inst.h.len() > k {
        return None;
    }
    let g = &inst.g;
    let forced = g.mask(&inst.h);
    let banned: Vec<bool> = g.vertices().map(|v| g.degree(v) < p).collect();
    if inst.h.iter().any(|&v| banned[v]) {
        return None;
    }
    let mut found = None;
    for size in inst.h.len().max(p + 1)..=k.min(g.n()) {
        let hit = search_covers(g, &forced, &banned, size, &mut |set| {
            if vertex_connectivity_at_least(&g.induced(set), p) {
                found = Some(g.to_labels(set));
                true
            } else {
                false
            }
        });
        if hit {
            break;
        }
    }
    // an edgeless input is covered by the empty set, which is never p-connected
    found
}
