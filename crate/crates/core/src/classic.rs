//! The classic DFS-interval scheme: each node stores its own preorder number
//! and the largest preorder number in its subtree, `2·⌈log n⌉` bits in all.

use alloc::vec;
use alloc::vec::Vec;

use crate::interval::ceil_log2;
use crate::tree::{NodeId, RootedTree};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassicError {
    #[error("tree has {nodes} nodes, more than the family size {family_size}")]
    TreeTooLarge { nodes: usize, family_size: u64 },
    #[error("family size must be positive")]
    ZeroFamilySize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClassicLabel {
    pub dfs_lo: u64,
    pub dfs_hi: u64,
}

impl ClassicLabel {
    /// `dfs_lo` in the low `field_bits` bits, `dfs_hi` above it.
    pub fn to_bits(&self, field_bits: u32) -> u128 {
        u128::from(self.dfs_lo) | (u128::from(self.dfs_hi) << field_bits)
    }

    pub fn from_bits(bits: u128, field_bits: u32) -> Self {
        let mask = (1u128 << field_bits) - 1;
        ClassicLabel {
            dfs_lo: (bits & mask) as u64,
            dfs_hi: ((bits >> field_bits) & mask) as u64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicLabeling {
    pub family_size: u64,
    pub labels: Vec<ClassicLabel>,
}

impl ClassicLabeling {
    /// `⌈log2 n⌉` bits per endpoint (at least one).
    pub fn field_bits(&self) -> u32 {
        ceil_log2(self.family_size).max(1)
    }

    pub fn total_bits(&self) -> u32 {
        2 * self.field_bits()
    }

    pub fn hex_digits(&self) -> usize {
        (self.total_bits() as usize).div_ceil(16) * 4
    }

    pub fn decide(&self, u: NodeId, v: NodeId) -> bool {
        classic_decide(&self.labels[u], &self.labels[v])
    }
}

/// Preorder DFS in increasing child id order; node `u` gets
/// `[dfs(u), dfs(u) + weight(u) - 1]`.
pub fn classic_mark(tree: &RootedTree, family_size: u64) -> Result<ClassicLabeling, ClassicError> {
    if family_size == 0 {
        return Err(ClassicError::ZeroFamilySize);
    }
    let n = tree.node_count();
    if n as u64 > family_size {
        return Err(ClassicError::TreeTooLarge {
            nodes: n,
            family_size,
        });
    }
    let mut preorder = Vec::with_capacity(n);
    let mut stack = vec![tree.root()];
    while let Some(v) = stack.pop() {
        preorder.push(v);
        stack.extend(tree.children(v).iter().rev());
    }
    let mut labels = vec![
        ClassicLabel {
            dfs_lo: 0,
            dfs_hi: 0
        };
        n
    ];
    for (num, &v) in preorder.iter().enumerate() {
        labels[v].dfs_lo = num as u64;
    }
    // Reverse preorder visits children before parents.
    for &v in preorder.iter().rev() {
        let hi = tree
            .children(v)
            .iter()
            .map(|&c| labels[c].dfs_hi)
            .max()
            .unwrap_or(labels[v].dfs_lo);
        labels[v].dfs_hi = hi;
    }
    Ok(ClassicLabeling {
        family_size,
        labels,
    })
}

/// True iff `v`'s interval lies strictly inside `u`'s.
pub fn classic_decide(u: &ClassicLabel, v: &ClassicLabel) -> bool {
    u.dfs_lo <= v.dfs_lo && v.dfs_hi <= u.dfs_hi && (u.dfs_lo, u.dfs_hi) != (v.dfs_lo, v.dfs_hi)
}
