//! Ancestry labeling for rooted trees.
//!
//! Every node of a tree with at most `n` nodes receives a label of
//! `log n + 6⌈log log n⌉ + 8` bits. Whether `u` is an ancestor of `v` is then
//! decided from the two labels alone, in a constant number of shift, add and
//! compare operations.
//!
//! The pipeline is:
//!
//! 1. [`decorate`] computes subtree weights, heavy/light marks, a light-first
//!    DFS numbering and supervisors.
//! 2. [`assign_intervals`] maps every node to a dyadic interval
//!    `[2^i·a, 2^i·(a+b)]` by recursing over heavy-path decompositions.
//! 3. [`mark`] packs each node's interval together with a short reference to
//!    its supervisor's interval into a fixed-width [`Label`].
//! 4. [`decide_ancestry`] answers queries from two labels.
//!
//! The classic `2·log n` DFS-interval scheme lives in [`classic`] as a
//! baseline, and [`verify`] holds the checkers used by the test suites.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod assign;
pub mod classic;
pub mod codec;
pub mod decorate;
pub mod enumerate;
pub mod generate;
pub mod interval;
pub mod oracle;
pub mod tree;
pub mod verify;

pub use assign::{
    assign_intervals, assign_intervals_traced, heavy_path_decompose, AssignError, AssignmentFrame,
    IntervalAssignment,
};
pub use classic::{classic_decide, classic_mark, ClassicError, ClassicLabel, ClassicLabeling};
pub use codec::{
    decide_ancestry, decide_ancestry_with, decide_decoded, mark, mark_detailed, mark_with_layout,
    pack, unpack, CodecError, DecodedLabel, DetailedLabeling, Label, LabelFields, LabelLayout,
    Labeling, OffsetWidth, OpCounter, Plain, WordOps,
};
pub use decorate::{decorate, local_quasi_ancestors, DecoratedTree};
pub use enumerate::{
    enumerate_rooted_trees, enumerate_rooted_trees_capped, enumerate_up_to, EnumerateError,
    RootedTrees, DEFAULT_ENUMERATION_CAP,
};
pub use generate::{generate_tree, GenerateError, TreeFamily, TreeFamilySpec};
pub use interval::{
    endpoints, precedes, strictly_contains, DyadicInterval, Interval, IntervalError, ParamsError,
    SchemeParams, MAX_ELL,
};
pub use oracle::{oracle_is_ancestor, LiftingOracle};
pub use tree::{NodeId, RootedTree, TreeError};
pub use verify::{
    check_label_budget, check_labels_vs_oracle, check_lpo, check_scheme_vs_oracle, PairPlan,
    Scheme, SchemeLabels, VerificationReport,
};
