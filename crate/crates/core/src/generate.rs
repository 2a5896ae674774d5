//! Deterministic tree families for tests and benchmarks.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::tree::RootedTree;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenerateError {
    #[error("tree size must be positive")]
    ZeroSize,
    #[error("broom with {path_count} paths of {path_length} nodes has {} nodes, not {size}", path_count * path_length + 1)]
    BroomMismatch {
        size: usize,
        path_count: usize,
        path_length: usize,
    },
    #[error("unknown tree family {0:?}")]
    UnknownFamily(alloc::string::String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TreeFamily {
    Path,
    Star,
    /// A spine of `⌈size/2⌉` nodes, the rest attached as single leaves to the
    /// spine nodes from the top down.
    Caterpillar,
    /// Heap-shaped: the parent of `i` is `(i-1)/2`.
    CompleteBinary,
    /// `path_count` disjoint paths of `path_length` nodes below the root.
    Broom {
        path_count: usize,
        path_length: usize,
    },
    /// The parent of node `i` is uniform in `0..i`.
    RandomRecursive,
}

impl TreeFamily {
    pub fn name(&self) -> &'static str {
        match self {
            TreeFamily::Path => "path",
            TreeFamily::Star => "star",
            TreeFamily::Caterpillar => "caterpillar",
            TreeFamily::CompleteBinary => "complete-binary",
            TreeFamily::Broom { .. } => "broom",
            TreeFamily::RandomRecursive => "random-recursive",
        }
    }

    /// Broom of `size` nodes whose path count is the divisor of `size - 1`
    /// closest to `sqrt(size - 1)` (the smaller one on ties).
    pub fn balanced_broom(size: usize) -> TreeFamily {
        let m = size.saturating_sub(1);
        if m == 0 {
            return TreeFamily::Broom {
                path_count: 0,
                path_length: 0,
            };
        }
        let mut best = 1;
        let mut d = 1;
        while d * d <= m {
            if m.is_multiple_of(d) {
                best = d;
            }
            d += 1;
        }
        // best <= sqrt(m) <= m / best; take whichever is closer.
        let other = m / best;
        let count = if other * other - m < m - best * best && other != best {
            other
        } else {
            best
        };
        TreeFamily::Broom {
            path_count: count,
            path_length: m / count,
        }
    }

    /// All families, brooms balanced for `size`.
    pub fn all(size: usize) -> [TreeFamily; 6] {
        [
            TreeFamily::RandomRecursive,
            TreeFamily::balanced_broom(size),
            TreeFamily::Caterpillar,
            TreeFamily::Path,
            TreeFamily::Star,
            TreeFamily::CompleteBinary,
        ]
    }
}

impl fmt::Display for TreeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses a family name; `broom` parses with zero paths and must be given
/// its shape afterwards (see [`TreeFamily::balanced_broom`]).
impl FromStr for TreeFamily {
    type Err = GenerateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "path" => TreeFamily::Path,
            "star" => TreeFamily::Star,
            "caterpillar" => TreeFamily::Caterpillar,
            "complete-binary" => TreeFamily::CompleteBinary,
            "broom" => TreeFamily::Broom {
                path_count: 0,
                path_length: 0,
            },
            "random-recursive" => TreeFamily::RandomRecursive,
            other => return Err(GenerateError::UnknownFamily(other.into())),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TreeFamilySpec {
    pub family: TreeFamily,
    pub size: usize,
    pub seed: u64,
}

impl TreeFamilySpec {
    pub fn new(family: TreeFamily, size: usize, seed: u64) -> Self {
        TreeFamilySpec { family, size, seed }
    }
}

/// Generates the tree described by `spec`. Only `RandomRecursive` consumes
/// the seed; every family is deterministic.
pub fn generate_tree(spec: &TreeFamilySpec) -> Result<RootedTree, GenerateError> {
    let n = spec.size;
    if n == 0 {
        return Err(GenerateError::ZeroSize);
    }
    let mut parents: Vec<Option<usize>> = Vec::with_capacity(n);
    parents.push(None);
    match spec.family {
        TreeFamily::Path => parents.extend((1..n).map(|i| Some(i - 1))),
        TreeFamily::Star => parents.extend((1..n).map(|_| Some(0))),
        TreeFamily::Caterpillar => {
            let spine = n.div_ceil(2);
            parents.extend((1..spine).map(|i| Some(i - 1)));
            parents.extend((spine..n).map(|i| Some(i - spine)));
        }
        TreeFamily::CompleteBinary => parents.extend((1..n).map(|i| Some((i - 1) / 2))),
        TreeFamily::Broom {
            path_count,
            path_length,
        } => {
            if path_count * path_length + 1 != n {
                return Err(GenerateError::BroomMismatch {
                    size: n,
                    path_count,
                    path_length,
                });
            }
            for p in 0..path_count {
                let first = 1 + p * path_length;
                parents.push(Some(0));
                parents.extend((first + 1..first + path_length).map(|i| Some(i - 1)));
            }
        }
        TreeFamily::RandomRecursive => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            parents.extend((1..n).map(|i| Some(rng.random_range(0..i))));
        }
    }
    Ok(RootedTree::from_parents(&parents).expect("generated parent arrays are valid trees"))
}
