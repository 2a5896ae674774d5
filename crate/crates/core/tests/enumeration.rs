mod common;

use std::collections::BTreeSet;

use ancestry_core::{enumerate_rooted_trees, RootedTree};
use common::canonical_form;

/// Every parent sequence with `parent[i] < i` reaches each unlabeled rooted
/// tree at least once; collecting canonical forms counts them.
fn brute_force_forms(n: usize) -> BTreeSet<String> {
    let mut forms = BTreeSet::new();
    let mut choice = vec![0usize; n];
    loop {
        let parents: Vec<Option<usize>> = (0..n)
            .map(|i| if i == 0 { None } else { Some(choice[i]) })
            .collect();
        forms.insert(canonical_form(&RootedTree::from_parents(&parents).unwrap()));
        // odometer over choice[i] in 0..i
        let mut i = n;
        loop {
            if i <= 1 {
                return forms;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < i {
                break;
            }
            choice[i] = 0;
        }
    }
}

#[test]
fn enumeration_matches_brute_force() {
    for n in 1..=8 {
        let expected = brute_force_forms(n);
        let trees: Vec<_> = enumerate_rooted_trees(n).unwrap().collect();
        let forms: BTreeSet<String> = trees.iter().map(canonical_form).collect();
        assert_eq!(forms.len(), trees.len(), "size {n}: duplicate trees");
        assert_eq!(forms, expected, "size {n}");
        assert!(trees.iter().all(|t| t.node_count() == n));
    }
}

#[test]
fn counts_up_to_cap() {
    // Sizes 1..=8 were checked against brute force above; 9 is frozen from
    // the same brute force (8! parent sequences).
    let counts: Vec<usize> = (1..=9)
        .map(|n| enumerate_rooted_trees(n).unwrap().count())
        .collect();
    assert_eq!(counts, vec![1, 1, 2, 4, 9, 20, 48, 115, 286]);
    assert_eq!(brute_force_forms(9).len(), 286);
}
