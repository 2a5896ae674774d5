//! Structural decorations: weights, heavy/light marks, light-first DFS
//! numbers, supervisors and depths.

use alloc::vec;
use alloc::vec::Vec;

use crate::tree::{NodeId, RootedTree};

/// A tree together with the per-node data the labeling scheme is built on.
///
/// Tie-breaks: among children of maximal weight the smallest id is heavy; the
/// DFS visits light children in increasing id order, then the heavy child.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedTree {
    tree: RootedTree,
    weight: Vec<usize>,
    heavy_child: Vec<Option<NodeId>>,
    heavy: Vec<bool>,
    dfs: Vec<usize>,
    supervisor: Vec<NodeId>,
    depth: Vec<usize>,
}

/// Computes all decorations in time linear in the node count.
pub fn decorate(tree: &RootedTree) -> DecoratedTree {
    let n = tree.node_count();
    let order = tree.bfs_order();

    let mut weight = vec![1usize; n];
    for &v in order.iter().rev() {
        if let Some(p) = tree.parent(v) {
            weight[p] += weight[v];
        }
    }

    let mut heavy_child = vec![None; n];
    let mut heavy = vec![false; n];
    for v in tree.nodes() {
        let mut best: Option<NodeId> = None;
        for &c in tree.children(v) {
            // strict comparison: the first (smallest id) maximum wins
            if best.is_none_or(|b| weight[c] > weight[b]) {
                best = Some(c);
            }
        }
        if let Some(h) = best {
            heavy_child[v] = Some(h);
            heavy[h] = true;
        }
    }

    let mut depth = vec![0usize; n];
    let mut supervisor = vec![0; n];
    for &v in &order {
        match tree.parent(v) {
            None => supervisor[v] = v,
            Some(p) => {
                depth[v] = depth[p] + 1;
                supervisor[v] = if heavy[v] { supervisor[p] } else { v };
            }
        }
    }

    let mut dfs = vec![0usize; n];
    let mut stack = vec![tree.root()];
    let mut next = 0;
    while let Some(v) = stack.pop() {
        dfs[v] = next;
        next += 1;
        if let Some(h) = heavy_child[v] {
            stack.push(h);
        }
        stack.extend(tree.children(v).iter().rev().filter(|&&c| !heavy[c]));
    }

    DecoratedTree {
        tree: tree.clone(),
        weight,
        heavy_child,
        heavy,
        dfs,
        supervisor,
        depth,
    }
}

impl DecoratedTree {
    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn node_count(&self) -> usize {
        self.tree.node_count()
    }

    pub fn root(&self) -> NodeId {
        self.tree.root()
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.tree.parent(v)
    }

    /// Size of the subtree rooted at `v`, including `v`.
    pub fn weight(&self, v: NodeId) -> usize {
        self.weight[v]
    }

    pub fn is_heavy(&self, v: NodeId) -> bool {
        self.heavy[v]
    }

    pub fn heavy_child(&self, v: NodeId) -> Option<NodeId> {
        self.heavy_child[v]
    }

    /// Children of `v` other than its heavy child, in increasing id order.
    pub fn light_children(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.tree
            .children(v)
            .iter()
            .copied()
            .filter(move |&c| !self.heavy[c])
    }

    pub fn dfs(&self, v: NodeId) -> usize {
        self.dfs[v]
    }

    /// Deepest light node on the path from `v` to the root.
    pub fn supervisor(&self, v: NodeId) -> NodeId {
        self.supervisor[v]
    }

    pub fn depth(&self, v: NodeId) -> usize {
        self.depth[v]
    }

    pub fn weights(&self) -> &[usize] {
        &self.weight
    }

    pub fn heavy_marks(&self) -> &[bool] {
        &self.heavy
    }

    pub fn dfs_numbers(&self) -> &[usize] {
        &self.dfs
    }

    pub fn supervisors(&self) -> &[NodeId] {
        &self.supervisor
    }

    pub fn depths(&self) -> &[usize] {
        &self.depth
    }
}

/// Local quasi-ancestors of `u`.
///
/// The nodes of the path from `parent(u)` up to `sp(parent(u))` together with
/// their light children, minus `u`, minus `sp(parent(u))`, minus every node
/// with a larger DFS number than `u`. Empty for the root. Sorted by id.
pub fn local_quasi_ancestors(d: &DecoratedTree, u: NodeId) -> Vec<NodeId> {
    let Some(p) = d.parent(u) else {
        return Vec::new();
    };
    let top = d.supervisor(p);
    let limit = d.dfs(u);
    let mut out = Vec::new();
    let mut w = p;
    loop {
        if w != top && d.dfs(w) < limit {
            out.push(w);
        }
        out.extend(d.light_children(w).filter(|&c| c != u && d.dfs(c) < limit));
        if w == top {
            break;
        }
        w = d.parent(w).expect("supervisor lies on the root path");
    }
    out.sort_unstable();
    out
}
