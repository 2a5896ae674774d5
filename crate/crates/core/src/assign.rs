//! Recursive assignment of dyadic intervals to tree nodes.
//!
//! A call at level `k` handles a subtree `T` with `|T| <= 2^k` on a window of
//! exactly `4·k·|T|` consecutive integers. When `|T|` is at most `2^(k-1)` the
//! call drops to the smallest level that still fits, keeping the window
//! prefix. Otherwise the subtree root gets `I(k, a, b)` with `a`, `b` the
//! smallest values placing it inside the window, and the pieces of the
//! root's heavy-path decomposition get consecutive sub-windows of that
//! interval at level `k-1`, in DFS order.

use alloc::vec;
use alloc::vec::Vec;

use crate::decorate::DecoratedTree;
use crate::interval::{ceil_log2, DyadicInterval, Interval, SchemeParams};
use crate::tree::NodeId;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AssignError {
    #[error("tree has {nodes} nodes, more than the family size {family_size}")]
    TreeTooLarge { nodes: usize, family_size: u64 },
}

/// One recursive call: subtree rooted at `root` of `size` nodes, handled at
/// level `k` on `window`, whose length is `4·k·size`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AssignmentFrame {
    pub root: NodeId,
    pub size: usize,
    pub k: u32,
    pub window: Interval,
}

/// Result of [`assign_intervals`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalAssignment {
    pub params: SchemeParams,
    pub intervals: Vec<DyadicInterval>,
    /// Number of recursive calls made; at most the node count.
    pub steps: usize,
    /// Every call in the order made, when tracing was requested.
    pub frames: Vec<AssignmentFrame>,
}

impl IntervalAssignment {
    pub fn interval(&self, v: NodeId) -> DyadicInterval {
        self.intervals[v]
    }

    pub fn endpoints(&self, v: NodeId) -> Interval {
        self.intervals[v].interval()
    }
}

/// Calls `f(root, size)` for each piece of the heavy-path decomposition below
/// `root`, in increasing DFS order of the piece roots.
///
/// Pieces are the heavy-path nodes other than `root` (as singletons) and the
/// full subtrees of the light children of heavy-path nodes.
pub(crate) fn for_each_piece(d: &DecoratedTree, root: NodeId, mut f: impl FnMut(NodeId, usize)) {
    let mut v = root;
    loop {
        for c in d.light_children(v) {
            f(c, d.weight(c));
        }
        match d.heavy_child(v) {
            Some(h) => {
                f(h, 1);
                v = h;
            }
            None => break,
        }
    }
}

/// Decomposition of the subtree at `root` into `(piece_root, piece_size)`,
/// ordered by the DFS number of the piece roots. Uses the global heavy marks.
pub fn heavy_path_decompose(d: &DecoratedTree, root: NodeId) -> Vec<(NodeId, usize)> {
    let mut out = Vec::new();
    for_each_piece(d, root, |r, s| out.push((r, s)));
    out
}

struct Assigner<'a> {
    d: &'a DecoratedTree,
    params: SchemeParams,
    intervals: Vec<DyadicInterval>,
    steps: usize,
    frames: Option<Vec<AssignmentFrame>>,
}

impl Assigner<'_> {
    fn place(&mut self, root: NodeId, size: usize, level: u32, alpha: u64) {
        self.steps += 1;
        let size_u = size as u64;
        if let Some(frames) = self.frames.as_mut() {
            frames.push(AssignmentFrame {
                root,
                size,
                k: level,
                window: Interval::new(alpha, alpha + 4 * u64::from(level) * size_u - 1),
            });
        }
        // Levels between `k` and `level` would only keep taking window prefixes.
        let k = ceil_log2(size_u).max(1);
        assert!(
            k <= level,
            "subtree of {size} nodes handed to level {level}"
        );
        let window_end = alpha + 4 * u64::from(k) * size_u - 1;

        if k == 1 {
            let c = (alpha + 1) >> 1;
            match size {
                1 => self.set(root, DyadicInterval::new(1, c, 1), window_end),
                2 => {
                    let child = self
                        .d
                        .heavy_child(root)
                        .expect("two-node subtree has a child");
                    self.set(root, DyadicInterval::new(1, c, 3), window_end);
                    self.set(child, DyadicInterval::new(1, c + 1, 1), window_end);
                }
                _ => unreachable!(),
            }
            return;
        }

        let scale = 1u64 << k;
        let a = (alpha + scale - 1) >> k;
        let child_budget = 4 * u64::from(k - 1) * size_u;
        let b = (child_budget + scale - 1) >> k;
        let own = DyadicInterval::new(k, a, b);
        self.set(root, own, window_end);

        let own_end = own.interval().hi;
        let mut cursor = a << k;
        let d = self.d;
        let per_node = 4 * u64::from(k - 1);
        for_each_piece(d, root, |r, s| {
            self.place(r, s, k - 1, cursor);
            cursor += per_node * s as u64;
        });
        assert!(
            cursor <= own_end + 1,
            "sub-windows overrun I({k}, {a}, {b}) at node {root}"
        );
    }

    fn set(&mut self, v: NodeId, iv: DyadicInterval, window_end: u64) {
        let hi = iv.interval().hi;
        assert!(
            hi <= window_end,
            "window budget violated at node {v}: {iv} ends at {hi} past {window_end}"
        );
        debug_assert!(iv.validate(&self.params).is_ok(), "{iv} out of range");
        self.intervals[v] = iv;
    }
}

fn run(
    d: &DecoratedTree,
    params: &SchemeParams,
    trace: bool,
) -> Result<IntervalAssignment, AssignError> {
    let n = d.node_count();
    if n as u64 > params.family_size() {
        return Err(AssignError::TreeTooLarge {
            nodes: n,
            family_size: params.family_size(),
        });
    }
    let mut assigner = Assigner {
        d,
        params: *params,
        intervals: vec![DyadicInterval::new(0, 0, 0); n],
        steps: 0,
        frames: trace.then(Vec::new),
    };
    assigner.place(d.root(), n, params.ell(), 1);
    assert!(
        assigner.steps <= n,
        "recursion made {} steps for {n} nodes",
        assigner.steps
    );
    Ok(IntervalAssignment {
        params: *params,
        intervals: assigner.intervals,
        steps: assigner.steps,
        frames: assigner.frames.unwrap_or_default(),
    })
}

/// Maps every node to a dyadic interval inside `[1, 4·n·ell]` such that the
/// mapping is one-to-one and the local nesting and precedence conditions
/// hold at every node. Linear in the node count.
///
/// Panics if a sub-window budget is ever exceeded; that cannot happen for a
/// correct implementation.
pub fn assign_intervals(
    d: &DecoratedTree,
    params: &SchemeParams,
) -> Result<IntervalAssignment, AssignError> {
    run(d, params, false)
}

/// [`assign_intervals`], also recording every [`AssignmentFrame`].
pub fn assign_intervals_traced(
    d: &DecoratedTree,
    params: &SchemeParams,
) -> Result<IntervalAssignment, AssignError> {
    run(d, params, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decorate::decorate;
    use crate::interval::{precedes, strictly_contains};
    use crate::tree::RootedTree;

    fn deco(parents: &[i64]) -> DecoratedTree {
        decorate(&RootedTree::from_signed_parents(parents).unwrap())
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(
            heavy_path_decompose(&deco(&[-1, 0, 0, 1, 1]), 0),
            vec![(2, 1), (1, 1), (4, 1), (3, 1)]
        );
        assert_eq!(
            heavy_path_decompose(&deco(&[-1, 0, 1]), 0),
            vec![(1, 1), (2, 1)]
        );
        assert_eq!(
            heavy_path_decompose(&deco(&[-1, 0, 0, 0]), 0),
            vec![(2, 1), (3, 1), (1, 1)]
        );
    }

    #[test]
    fn decomposition_sizes_and_order() {
        // 0 -> {1, 2, 3}, 1 -> {4, 5}, 4 -> {6}, 2 -> {7}
        let d = deco(&[-1, 0, 0, 0, 1, 1, 4, 2]);
        let pieces = heavy_path_decompose(&d, 0);
        let total: usize = pieces.iter().map(|p| p.1).sum();
        assert_eq!(total, 7);
        assert!(pieces.windows(2).all(|w| d.dfs(w[0].0) < d.dfs(w[1].0)));
        for &(r, s) in &pieces {
            if !d.is_heavy(r) {
                assert!(2 * s < d.node_count());
            } else {
                assert_eq!(s, 1);
            }
        }
    }

    #[test]
    fn single_node() {
        let d = deco(&[-1]);
        let p = SchemeParams::for_family_size(2).unwrap();
        let asg = assign_intervals(&d, &p).unwrap();
        assert_eq!(asg.interval(0), DyadicInterval::new(1, 1, 1));
        assert_eq!(asg.endpoints(0), Interval::new(2, 4));
        assert_eq!(asg.steps, 1);
    }

    #[test]
    fn two_node_base_case() {
        let d = deco(&[-1, 0]);
        let p = SchemeParams::for_family_size(2).unwrap();
        let asg = assign_intervals(&d, &p).unwrap();
        assert_eq!(asg.endpoints(0), Interval::new(2, 8));
        assert_eq!(asg.endpoints(1), Interval::new(4, 6));
    }

    #[test]
    fn path_of_three_nests() {
        let d = deco(&[-1, 0, 1]);
        let p = SchemeParams::for_family_size(4).unwrap();
        let asg = assign_intervals(&d, &p).unwrap();
        let (r, u, v) = (asg.endpoints(0), asg.endpoints(1), asg.endpoints(2));
        assert!(strictly_contains(&r, &u));
        assert!(strictly_contains(&r, &v));
        assert!(precedes(&u, &v));
    }

    #[test]
    fn e5_frames_have_exact_budgets() {
        let d = deco(&[-1, 0, 0, 1, 1]);
        let p = SchemeParams::for_family_size(8).unwrap();
        let asg = assign_intervals_traced(&d, &p).unwrap();
        assert_eq!(asg.frames.len(), asg.steps);
        for f in &asg.frames {
            assert_eq!(f.window.len(), 4 * u64::from(f.k) * f.size as u64);
            assert!(f.window.lo >= 1 && f.window.hi <= p.universe());
        }
        // root frame, then the four singleton pieces in DFS order
        let roots: Vec<_> = asg.frames.iter().map(|f| f.root).collect();
        assert_eq!(roots, vec![0, 2, 1, 4, 3]);
        let children = &asg.frames[1..];
        assert!(children
            .windows(2)
            .all(|w| precedes(&w[0].window, &w[1].window)));
        assert!(children
            .iter()
            .all(|f| f.window.is_within(&asg.endpoints(0))));
    }

    #[test]
    fn rejects_oversized_tree() {
        let d = deco(&[-1, 0, 0, 1, 1]);
        let p = SchemeParams::for_family_size(4).unwrap();
        assert_eq!(
            assign_intervals(&d, &p),
            Err(AssignError::TreeTooLarge {
                nodes: 5,
                family_size: 4
            })
        );
    }
}
