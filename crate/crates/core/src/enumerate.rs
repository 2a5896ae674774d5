//! Exhaustive enumeration of unlabeled rooted trees by canonical level
//! sequences (Beyer–Hedetniemi successor rule, constant amortized time per
//! tree).

use alloc::vec;
use alloc::vec::Vec;

use crate::tree::RootedTree;

pub const DEFAULT_ENUMERATION_CAP: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerateError {
    #[error("tree size must be positive")]
    ZeroSize,
    #[error("enumeration of size {size} exceeds the cap {cap}")]
    AboveCap { size: usize, cap: usize },
}

/// Iterator over every unlabeled rooted tree of a fixed size, each exactly
/// once. Node ids follow preorder of the canonical (lexicographically
/// largest) level sequence, so node 0 is the root.
#[derive(Debug, Clone)]
pub struct RootedTrees {
    levels: Vec<usize>,
    started: bool,
    done: bool,
}

impl RootedTrees {
    fn advance(&mut self) -> bool {
        let n = self.levels.len();
        let Some(p) = (0..n).rev().find(|&i| self.levels[i] > 1) else {
            return false;
        };
        let target = self.levels[p] - 1;
        let q = (0..p)
            .rev()
            .find(|&i| self.levels[i] == target)
            .expect("a node one level up precedes p");
        let period = p - q;
        for i in p..n {
            self.levels[i] = self.levels[i - period];
        }
        true
    }

    fn current(&self) -> RootedTree {
        let n = self.levels.len();
        let mut last_at = vec![0usize; n];
        let mut parents = Vec::with_capacity(n);
        for (i, &lvl) in self.levels.iter().enumerate() {
            parents.push(if lvl == 0 {
                None
            } else {
                Some(last_at[lvl - 1])
            });
            last_at[lvl] = i;
        }
        RootedTree::from_parents(&parents).expect("level sequences encode trees")
    }
}

impl Iterator for RootedTrees {
    type Item = RootedTree;

    fn next(&mut self) -> Option<RootedTree> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(self.current())
    }
}

/// All unlabeled rooted trees with `size` nodes, `size <= DEFAULT_ENUMERATION_CAP`.
pub fn enumerate_rooted_trees(size: usize) -> Result<RootedTrees, EnumerateError> {
    enumerate_rooted_trees_capped(size, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_rooted_trees_capped(
    size: usize,
    cap: usize,
) -> Result<RootedTrees, EnumerateError> {
    if size == 0 {
        return Err(EnumerateError::ZeroSize);
    }
    if size > cap {
        return Err(EnumerateError::AboveCap { size, cap });
    }
    Ok(RootedTrees {
        levels: (0..size).collect(),
        started: false,
        done: false,
    })
}

/// Every tree of sizes `1..=max_size`, smallest first.
pub fn enumerate_up_to(max_size: usize) -> Result<Vec<RootedTree>, EnumerateError> {
    let mut out = Vec::new();
    for size in 1..=max_size {
        out.extend(enumerate_rooted_trees(size)?);
    }
    Ok(out)
}
