#![allow(dead_code)]

use ancestry_core::RootedTree;
use proptest::prelude::*;

/// Random tree of 1..=max_size nodes with shuffled ids, so the root is not
/// necessarily node 0 and parents need not precede children.
pub fn arb_tree(max_size: usize) -> impl Strategy<Value = RootedTree> {
    (1..=max_size)
        .prop_flat_map(|n| {
            (
                proptest::collection::vec(any::<u64>(), n),
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            )
        })
        .prop_map(|(draws, perm)| {
            let n = draws.len();
            let mut parents = vec![None; n];
            for i in 1..n {
                let p = (draws[i] % i as u64) as usize;
                parents[perm[i]] = Some(perm[p]);
            }
            RootedTree::from_parents(&parents).unwrap()
        })
}

/// Canonical string of the unlabeled rooted tree (sorted child encodings).
pub fn canonical_form(tree: &RootedTree) -> String {
    fn enc(t: &RootedTree, v: usize) -> String {
        let mut parts: Vec<String> = t.children(v).iter().map(|&c| enc(t, c)).collect();
        parts.sort();
        format!("({})", parts.concat())
    }
    enc(tree, tree.root())
}
