//! Ground-truth ancestry tests that look only at the parent array.

use alloc::vec;
use alloc::vec::Vec;

use crate::tree::{NodeId, RootedTree};

/// Returns true iff `u != v` and `u` lies on the parent chain of `v`.
///
/// Walks parent links from `v`; no preprocessing.
pub fn oracle_is_ancestor(tree: &RootedTree, u: NodeId, v: NodeId) -> bool {
    let mut w = v;
    while let Some(p) = tree.parent(w) {
        if p == u {
            return true;
        }
        w = p;
    }
    false
}

/// Binary-lifting ancestor table built from parent links and depths.
///
/// Answers in `O(log n)` where the parent walk would take `O(depth)`; used for
/// sampled pairs on deep trees. Shares nothing with the labeling pipeline.
#[derive(Debug, Clone)]
pub struct LiftingOracle {
    depth: Vec<u32>,
    // jump[j][v] is the 2^j-th ancestor of v, or the root when that overshoots.
    jump: Vec<Vec<u32>>,
}

impl LiftingOracle {
    pub fn new(tree: &RootedTree) -> Self {
        let n = tree.node_count();
        let mut depth = vec![0u32; n];
        let mut up = vec![tree.root() as u32; n];
        for v in tree.bfs_order() {
            if let Some(p) = tree.parent(v) {
                depth[v] = depth[p] + 1;
                up[v] = p as u32;
            }
        }
        let max_depth = depth.iter().copied().max().unwrap_or(0);
        let mut jump = vec![up];
        while (1u64 << jump.len()) <= u64::from(max_depth) {
            let prev = jump.last().unwrap();
            let next = prev.iter().map(|&w| prev[w as usize]).collect();
            jump.push(next);
        }
        LiftingOracle { depth, jump }
    }

    pub fn depth(&self, v: NodeId) -> u32 {
        self.depth[v]
    }

    pub fn is_ancestor(&self, u: NodeId, v: NodeId) -> bool {
        let (du, dv) = (self.depth[u], self.depth[v]);
        if du >= dv {
            return false;
        }
        let mut diff = dv - du;
        let mut w = v as u32;
        let mut level = 0;
        while diff > 0 {
            if diff & 1 == 1 {
                w = self.jump[level][w as usize];
            }
            diff >>= 1;
            level += 1;
        }
        w as usize == u
    }
}
