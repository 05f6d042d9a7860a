//! `i`-blocks of a vertex set and the laminar tree they form.
//!
//! An `i`-block of `X` is a maximal subset of `X` whose members are pairwise
//! joined by `i` edge-disjoint paths. They are the nonempty traces of the
//! `i`-segments of a Gomory-Hu tree on `X`, so one tree yields every level.

use std::fmt::Write as _;

use crate::gomory_hu::{gusfield, GomoryHuTree};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockNode {
    pub level: usize,
    /// Sorted members.
    pub block: Vec<Vertex>,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

/// Laminar tree of the `i`-blocks of `X` for `i = 1..=p`, rooted at `X` (level 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockTree {
    nodes: Vec<BlockNode>,
    p: usize,
}

fn traces(tree: &GomoryHuTree, x: &[Vertex], i: usize) -> Vec<Vec<Vertex>> {
    let mut member = vec![false; tree.n()];
    for &v in x {
        member[v] = true;
    }
    tree.i_segments(i)
        .into_iter()
        .map(|seg| seg.into_iter().filter(|&v| member[v]).collect::<Vec<_>>())
        .filter(|part| !part.is_empty())
        .collect()
}

/// Partition of `x` into its `i`-blocks in `g`. Vertices in different
/// components of `g` never share a block for `i >= 1`.
pub fn i_blocks(g: &Graph, x: &[Vertex], i: usize) -> Vec<Vec<Vertex>> {
    let mut x = x.to_vec();
    x.sort_unstable();
    x.dedup();
    if x.is_empty() {
        return Vec::new();
    }
    if i == 0 {
        return vec![x];
    }
    traces(&gusfield(g), &x, i)
}

/// Builds the laminar tree of `x` in `g` from a single Gomory-Hu tree.
pub fn laminar_tree(g: &Graph, x: &[Vertex], p: usize) -> BlockTree {
    let mut x = x.to_vec();
    x.sort_unstable();
    x.dedup();
    let mut nodes = vec![BlockNode {
        level: 0,
        block: x.clone(),
        parent: None,
        children: Vec::new(),
    }];
    if x.is_empty() {
        return BlockTree { nodes, p };
    }
    let tree = gusfield(g);
    // node of the previous level containing each vertex of x
    let mut owner = vec![usize::MAX; g.n()];
    for &v in &x {
        owner[v] = 0;
    }
    for level in 1..=p {
        let parts = traces(&tree, &x, level);
        let mut next_owner = owner.clone();
        for part in parts {
            let id = nodes.len();
            // laminarity: any single member locates the parent
            let parent = owner[part[0]];
            debug_assert!(part.iter().all(|&v| owner[v] == parent));
            nodes[parent].children.push(id);
            for &v in &part {
                next_owner[v] = id;
            }
            nodes.push(BlockNode {
                level,
                block: part,
                parent: Some(parent),
                children: Vec::new(),
            });
        }
        owner = next_owner;
    }
    BlockTree { nodes, p }
}

impl BlockTree {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn root(&self) -> &BlockNode {
        &self.nodes[0]
    }

    pub fn nodes(&self) -> &[BlockNode] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn level(&self, i: usize) -> impl Iterator<Item = &BlockNode> {
        self.nodes.iter().filter(move |n| n.level == i)
    }

    /// The `p`-blocks (the leaves of the tree when `X` is nonempty).
    pub fn leaves(&self) -> Vec<&[Vertex]> {
        self.level(self.p).map(|n| n.block.as_slice()).collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.level(self.p).count()
    }

    /// Renames every vertex through `f`, which must be increasing so blocks stay sorted.
    pub(crate) fn map_vertices(&mut self, f: impl Fn(Vertex) -> Vertex) {
        for node in &mut self.nodes {
            for v in &mut node.block {
                *v = f(*v);
            }
        }
    }

    /// Indented dump, one `level=<i> {v1,v2,...}` line per block (1-indexed vertices).
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let mut stack = vec![0usize];
        while let Some(id) = stack.pop() {
            let node = &self.nodes[id];
            let members: Vec<String> = node.block.iter().map(|v| (v + 1).to_string()).collect();
            let _ = writeln!(
                out,
                "{}level={} {{{}}}",
                "  ".repeat(node.level),
                node.level,
                members.join(",")
            );
            stack.extend(node.children.iter().rev());
        }
        out
    }
}
