//! Executable checks over interval mappings and labelings.
//!
//! Every checker returns a [`VerificationReport`]; failures are report
//! entries carrying witness node pairs, never panics.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classic::{classic_decide, classic_mark, ClassicLabel};
use crate::codec::{
    decide_ancestry, decide_decoded, mark_with_layout, DecodedLabel, Label, LabelFields,
    LabelLayout, OffsetWidth,
};
use crate::decorate::{local_quasi_ancestors, DecoratedTree};
use crate::interval::{precedes, strictly_contains, DyadicInterval, Interval, SchemeParams};
use crate::oracle::{oracle_is_ancestor, LiftingOracle};
use crate::tree::{NodeId, RootedTree};

/// Trees up to this size are checked on all ordered pairs.
pub const EXHAUSTIVE_PAIR_LIMIT: usize = 512;
pub const DEFAULT_PAIR_BUDGET: u64 = 100_000;
/// Above this size the LPO2 check uses running maxima instead of listing
/// every local quasi-ancestor.
pub const LISTED_LQA_LIMIT: usize = 1 << 14;
/// Sampled pairs on which the lifting oracle is cross-checked against the
/// parent walk.
pub const WALK_CROSS_CHECKS: u64 = 512;
const MAX_WITNESSES: usize = 16;
const SHRINK_LIMIT: usize = 256;

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Up to 16 offending node pairs; their meaning depends on the check.
    pub witnesses: Vec<(NodeId, NodeId)>,
    pub violations: u64,
}

impl Check {
    fn pass(name: &'static str, detail: String) -> Self {
        Check {
            name,
            passed: true,
            detail,
            witnesses: Vec::new(),
            violations: 0,
        }
    }
}

struct CheckBuilder {
    name: &'static str,
    witnesses: Vec<(NodeId, NodeId)>,
    violations: u64,
    first_detail: Option<String>,
}

impl CheckBuilder {
    fn new(name: &'static str) -> Self {
        CheckBuilder {
            name,
            witnesses: Vec::new(),
            violations: 0,
            first_detail: None,
        }
    }

    fn fail(&mut self, pair: (NodeId, NodeId), detail: impl FnOnce() -> String) {
        self.violations += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(pair);
        }
        if self.first_detail.is_none() {
            self.first_detail = Some(detail());
        }
    }

    fn finish(self, ok_detail: String) -> Check {
        match self.first_detail {
            None => Check::pass(self.name, ok_detail),
            Some(first) => Check {
                name: self.name,
                passed: false,
                detail: format!("{} violation(s); first: {first}", self.violations),
                witnesses: self.witnesses,
                violations: self.violations,
            },
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReportStats {
    pub max_label_bits: u32,
    pub max_offset: u64,
    pub max_endpoint: u64,
    pub recursion_steps: usize,
    pub pairs_checked: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub tree_id: String,
    pub checks: Vec<Check>,
    pub stats: ReportStats,
}

impl VerificationReport {
    pub fn new(tree_id: impl Into<String>) -> Self {
        VerificationReport {
            tree_id: tree_id.into(),
            checks: Vec::new(),
            stats: ReportStats::default(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Appends `other`'s checks and folds its statistics into ours.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
        let (s, o) = (&mut self.stats, other.stats);
        s.max_label_bits = s.max_label_bits.max(o.max_label_bits);
        s.max_offset = s.max_offset.max(o.max_offset);
        s.max_endpoint = s.max_endpoint.max(o.max_endpoint);
        s.recursion_steps = s.recursion_steps.max(o.recursion_steps);
        s.pairs_checked += o.pairs_checked;
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "report for {}", self.tree_id)?;
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "  [{status}] {}: {}", c.name, c.detail)?;
            if !c.witnesses.is_empty() {
                writeln!(f, "         witnesses: {:?}", c.witnesses)?;
            }
        }
        let s = &self.stats;
        writeln!(
            f,
            "  stats: max_label_bits={} max_offset={} max_endpoint={} recursion_steps={} pairs_checked={}",
            s.max_label_bits, s.max_offset, s.max_endpoint, s.recursion_steps, s.pairs_checked
        )
    }
}

/// Universe bounds, one-to-one, LPO1, LPO2 and strict nesting below light
/// nodes for an interval mapping.
pub fn check_lpo(
    d: &DecoratedTree,
    mapping: &[DyadicInterval],
    params: &SchemeParams,
) -> VerificationReport {
    let n = d.node_count();
    let mut report = VerificationReport::new(format!("tree of {n} nodes"));
    assert_eq!(mapping.len(), n, "mapping must cover every node");
    let iv: Vec<Interval> = mapping.iter().map(|m| m.interval()).collect();

    let mut universe = CheckBuilder::new("universe");
    let mut max_endpoint = 0;
    for (v, m) in mapping.iter().enumerate() {
        if let Err(e) = m.validate(params) {
            universe.fail((v, v), || format!("node {v}: {e}"));
            continue;
        }
        let i = iv[v];
        max_endpoint = max_endpoint.max(i.hi);
        if i.lo < 1 || i.hi > params.universe() {
            universe.fail((v, v), || {
                format!("node {v}: {i} outside [1, {}]", params.universe())
            });
        }
    }
    report.stats.max_endpoint = max_endpoint;
    report.checks.push(universe.finish(format!(
        "max endpoint {max_endpoint} <= {}",
        params.universe()
    )));

    let mut distinct = CheckBuilder::new("one-to-one");
    let mut sorted: Vec<(Interval, NodeId)> = iv.iter().copied().zip(0..).collect();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0].0 == w[1].0 {
            let (a, b) = (w[0].1, w[1].1);
            distinct.fail((a, b), || format!("nodes {a} and {b} share {}", w[0].0));
        }
    }
    report
        .checks
        .push(distinct.finish(format!("{n} distinct intervals")));

    let mut lpo1 = CheckBuilder::new("lpo1");
    for u in d.tree().nodes() {
        let Some(p) = d.parent(u) else { continue };
        for s in [d.supervisor(u), d.supervisor(p)] {
            if !iv[u].is_within(&iv[s]) {
                lpo1.fail((u, s), || {
                    format!("I({u}) = {} not inside I({s}) = {}", iv[u], iv[s])
                });
            }
        }
    }
    report
        .checks
        .push(lpo1.finish("I(u) inside I(sp(u)) and I(sp(parent(u)))".into()));

    let violators = if n <= LISTED_LQA_LIMIT {
        lpo2_violators_listed(d, &iv)
    } else {
        lpo2_violators_running_max(d, &iv)
    };
    let mut lpo2 = CheckBuilder::new("lpo2");
    for &u in &violators {
        for x in local_quasi_ancestors(d, u) {
            if !precedes(&iv[x], &iv[u]) {
                lpo2.fail((x, u), || {
                    format!(
                        "x = {x} in lqa({u}) but I(x) = {} does not precede I(u) = {}",
                        iv[x], iv[u]
                    )
                });
            }
        }
    }
    report
        .checks
        .push(lpo2.finish("I(x) precedes I(u) for every local quasi-ancestor x".into()));

    let mut claim1 = CheckBuilder::new("claim1");
    for v in d.tree().nodes() {
        let mut up = d.parent(v);
        while let Some(p) = up {
            let s = d.supervisor(p);
            if !strictly_contains(&iv[s], &iv[v]) {
                claim1.fail((s, v), || {
                    format!(
                        "light ancestor {s}: I = {} does not strictly contain I({v}) = {}",
                        iv[s], iv[v]
                    )
                });
            }
            up = d.parent(s);
        }
    }
    report
        .checks
        .push(claim1.finish("descendants of light nodes nest strictly".into()));
    report
}

/// Nodes `u` with some `x` in `lqa(u)` such that `I(x)` does not precede
/// `I(u)`, by listing every local quasi-ancestor. Quadratic in the worst case.
pub fn lpo2_violators_listed(d: &DecoratedTree, iv: &[Interval]) -> Vec<NodeId> {
    d.tree()
        .nodes()
        .filter(|&u| {
            local_quasi_ancestors(d, u)
                .into_iter()
                .any(|x| !precedes(&iv[x], &iv[u]))
        })
        .collect()
}

/// Same result as [`lpo2_violators_listed`] in linear time.
///
/// For `u` with parent `p`, every local quasi-ancestor is either on the heavy
/// path from `sp(p)` down to `p` (excluding `sp(p)`), a light child of a path
/// node above `p`, or a light child of `p` visited before `u`. A running
/// maximum of right endpoints down each heavy path covers the first two
/// groups; a prefix maximum over `p`'s light children covers the third.
pub fn lpo2_violators_running_max(d: &DecoratedTree, iv: &[Interval]) -> Vec<NodeId> {
    let n = d.node_count();
    // above[w]: max right endpoint over heavy-path nodes from below sp(w)
    // down to w, and light children of path nodes strictly above w.
    let mut above: Vec<Option<u64>> = vec![None; n];
    let mut bad = vec![false; n];
    for p in d.tree().bfs_order() {
        let mut light: Vec<NodeId> = d.light_children(p).collect();
        light.sort_unstable_by_key(|&c| d.dfs(c));
        let mut running = above[p];
        for &c in &light {
            if running.is_some_and(|m| m >= iv[c].lo) {
                bad[c] = true;
            }
            running = Some(running.map_or(iv[c].hi, |m| m.max(iv[c].hi)));
        }
        if let Some(h) = d.heavy_child(p) {
            if running.is_some_and(|m| m >= iv[h].lo) {
                bad[h] = true;
            }
            above[h] = Some(running.map_or(iv[h].hi, |m| m.max(iv[h].hi)));
        }
    }
    (0..n).filter(|&u| bad[u]).collect()
}

/// Removes leaves one at a time while `still_fails` keeps returning true.
pub fn shrink_tree(
    tree: &RootedTree,
    mut still_fails: impl FnMut(&RootedTree) -> bool,
) -> RootedTree {
    let mut current = tree.clone();
    'outer: loop {
        for v in current.nodes().rev() {
            if let Some(smaller) = current.without_leaf(v) {
                if still_fails(&smaller) {
                    current = smaller;
                    continue 'outer;
                }
            }
        }
        return current;
    }
}

/// Which scheme [`check_scheme_vs_oracle`] marks the tree with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Optimal,
    Classic,
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::Optimal => "optimal",
            Scheme::Classic => "classic",
        }
    }
}

/// Labels already produced for one tree.
#[derive(Debug, Clone, Copy)]
pub enum SchemeLabels<'a> {
    Optimal {
        layout: &'a LabelLayout,
        labels: &'a [Label],
    },
    Classic(&'a [ClassicLabel]),
}

/// Which pairs to compare against the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairPlan {
    pub pair_budget: u64,
    pub seed: u64,
    /// Compare all ordered pairs regardless of tree size.
    pub exhaustive: bool,
    /// On sampled trees, also walk every node's parent chain.
    pub chain_pairs: bool,
}

impl Default for PairPlan {
    fn default() -> Self {
        PairPlan {
            pair_budget: DEFAULT_PAIR_BUDGET,
            seed: 0,
            exhaustive: false,
            chain_pairs: true,
        }
    }
}

enum Decider<'a> {
    Optimal(&'a LabelLayout, &'a [Label], Vec<DecodedLabel>),
    Classic(&'a [ClassicLabel]),
}

impl Decider<'_> {
    fn decide(&self, u: NodeId, v: NodeId) -> bool {
        match self {
            Decider::Optimal(layout, labels, _) => decide_ancestry(layout, labels[u], labels[v]),
            Decider::Classic(labels) => classic_decide(&labels[u], &labels[v]),
        }
    }

    fn decide_fast(&self, u: NodeId, v: NodeId) -> bool {
        match self {
            Decider::Optimal(_, _, decoded) => decide_decoded(&decoded[u], &decoded[v]),
            Decider::Classic(labels) => classic_decide(&labels[u], &labels[v]),
        }
    }
}

/// Compares the decoder on `labels` against the ground truth.
///
/// Trees of at most [`EXHAUSTIVE_PAIR_LIMIT`] nodes (or any tree with
/// `plan.exhaustive`) are checked on every ordered pair with the parent
/// walk. Larger trees get `plan.pair_budget` uniform pairs answered by a
/// [`LiftingOracle`] (itself cross-checked against the parent walk) plus,
/// with `plan.chain_pairs`, every (ancestor, node) pair on each parent chain.
pub fn check_labels_vs_oracle(
    tree: &RootedTree,
    labels: SchemeLabels<'_>,
    plan: &PairPlan,
) -> VerificationReport {
    let n = tree.node_count();
    let mut report = VerificationReport::new(format!("tree of {n} nodes"));
    let decider = match labels {
        SchemeLabels::Optimal { layout, labels } => {
            assert_eq!(labels.len(), n);
            report.stats.max_label_bits = layout.total_bits();
            let decoded = if plan.chain_pairs && !(plan.exhaustive || n <= EXHAUSTIVE_PAIR_LIMIT) {
                labels
                    .iter()
                    .map(|&l| DecodedLabel::decode(layout, l))
                    .collect()
            } else {
                Vec::new()
            };
            Decider::Optimal(layout, labels, decoded)
        }
        SchemeLabels::Classic(labels) => {
            assert_eq!(labels.len(), n);
            Decider::Classic(labels)
        }
    };

    let mut agree = CheckBuilder::new("oracle-agreement");
    let mut pairs = 0u64;
    let mismatch = |u: NodeId, v: NodeId, expected: bool| {
        move || {
            format!(
                "decoder says {} for ({u}, {v}), oracle says {expected}",
                !expected
            )
        }
    };

    if plan.exhaustive || n <= EXHAUSTIVE_PAIR_LIMIT {
        for u in tree.nodes() {
            for v in tree.nodes() {
                let expected = oracle_is_ancestor(tree, u, v);
                if decider.decide(u, v) != expected {
                    agree.fail((u, v), mismatch(u, v, expected));
                }
                pairs += 1;
            }
        }
        report.stats.pairs_checked = pairs;
        report
            .checks
            .push(agree.finish(format!("all {pairs} ordered pairs agree")));
        return report;
    }

    let lifting = LiftingOracle::new(tree);
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let mut lifting_check = CheckBuilder::new("lifting-oracle");
    for k in 0..plan.pair_budget {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        let expected = lifting.is_ancestor(u, v);
        if k < WALK_CROSS_CHECKS && oracle_is_ancestor(tree, u, v) != expected {
            lifting_check.fail((u, v), || {
                format!("lifting table disagrees with the parent walk on ({u}, {v})")
            });
        }
        if decider.decide(u, v) != expected {
            agree.fail((u, v), mismatch(u, v, expected));
        }
        pairs += 1;
    }
    let sampled = pairs;
    if plan.chain_pairs {
        // The walk itself is the oracle: every node met is an ancestor.
        for v in tree.nodes() {
            let mut w = v;
            while let Some(u) = tree.parent(w) {
                if !decider.decide_fast(u, v) {
                    agree.fail((u, v), mismatch(u, v, true));
                }
                pairs += 1;
                w = u;
            }
        }
    }
    report.stats.pairs_checked = pairs;
    report.checks.push(agree.finish(format!(
        "{sampled} sampled pairs and {} parent-chain pairs agree",
        pairs - sampled
    )));
    report.checks.push(lifting_check.finish(format!(
        "lifting oracle matches the parent walk on {} pairs",
        plan.pair_budget.min(WALK_CROSS_CHECKS)
    )));
    report
}

/// Marks `tree` with `scheme` and checks the decoder against the oracle.
///
/// On a mismatch the tree is shrunk by deleting leaves while the failure
/// persists (for trees up to 256 nodes) and the smallest failing parent
/// array is appended to the report.
pub fn check_scheme_vs_oracle(
    tree: &RootedTree,
    scheme: Scheme,
    params: &SchemeParams,
    plan: &PairPlan,
) -> VerificationReport {
    let layout = LabelLayout::new(*params);
    let run = |t: &RootedTree| -> VerificationReport {
        match scheme {
            Scheme::Optimal => match mark_with_layout(t, &layout) {
                Ok(lab) => check_labels_vs_oracle(
                    t,
                    SchemeLabels::Optimal {
                        layout: &layout,
                        labels: &lab.labels,
                    },
                    plan,
                ),
                Err(e) => marking_failure(t, e),
            },
            Scheme::Classic => match classic_mark(t, params.family_size()) {
                Ok(lab) => check_labels_vs_oracle(t, SchemeLabels::Classic(&lab.labels), plan),
                Err(e) => marking_failure(t, e),
            },
        }
    };
    let mut report = run(tree);
    report.tree_id = format!("{} tree of {} nodes", scheme.name(), tree.node_count());
    if !report.passed() && tree.node_count() <= SHRINK_LIMIT {
        let small = shrink_tree(tree, |t| !run(t).passed());
        report.checks.push(Check {
            name: "shrunk-counterexample",
            passed: false,
            detail: format!(
                "smallest failing tree: parents {:?}",
                small.signed_parents()
            ),
            witnesses: Vec::new(),
            violations: 1,
        });
    }
    report
}

fn marking_failure(tree: &RootedTree, e: impl fmt::Display) -> VerificationReport {
    let mut r = VerificationReport::new(format!("tree of {} nodes", tree.node_count()));
    r.checks.push(Check {
        name: "marking",
        passed: false,
        detail: format!("{e}"),
        witnesses: Vec::new(),
        violations: 1,
    });
    r
}

/// Label width, field ranges and the largest supervisor offset.
pub fn check_label_budget(labels: &[Label], layout: &LabelLayout) -> VerificationReport {
    let params = layout.params();
    let ell = params.ell();
    let lambda = params.lambda();
    let mut report = VerificationReport::new(format!("{} labels", labels.len()));
    let expected = match layout.offset_width() {
        OffsetWidth::Wide => ell + 6 * lambda + 8,
        OffsetWidth::Tight => ell + 6 * lambda + 7,
    };
    let total = layout.total_bits();
    let mut width = CheckBuilder::new("label-width");
    if total != expected {
        width.fail((0, 0), || {
            format!("layout is {total} bits, expected {expected}")
        });
    }
    let mut offsets = CheckBuilder::new("offset-range");
    let mut max_t = 0;
    for (v, l) in labels.iter().enumerate() {
        if total < 128 && l.0 >> total != 0 {
            width.fail((v, v), || {
                format!("label of node {v} uses bits above {total}")
            });
        }
        let t = LabelFields::read(layout, *l).t;
        max_t = max_t.max(t);
        if t > layout.max_offset() {
            offsets.fail((v, v), || {
                format!("node {v} has t = {t} > {}", layout.max_offset())
            });
        }
    }
    report.stats.max_label_bits = total;
    report.stats.max_offset = max_t;
    report.checks.push(width.finish(format!(
        "every label is {total} = ell + 6*lambda + {} bits (ell = {ell}, lambda = {lambda})",
        total - ell - 6 * lambda
    )));
    let tight_fits = max_t < 4 * u64::from(ell);
    report.checks.push(offsets.finish(format!(
        "max t = {max_t} <= {}; {}",
        layout.max_offset(),
        if tight_fits {
            "fits the lambda+2 bit field (constant +7)"
        } else {
            "needs the lambda+3 bit field (constant +8)"
        }
    )));
    report
}

/// True when every observed offset fits in `[0, 4·ell - 1]`.
pub fn tight_offset_suffices(max_offset: u64, params: &SchemeParams) -> bool {
    max_offset < 4 * u64::from(params.ell())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assign::assign_intervals;
    use crate::codec::mark;
    use crate::decorate::decorate;

    fn e5() -> RootedTree {
        RootedTree::from_signed_parents(&[-1, 0, 0, 1, 1]).unwrap()
    }

    #[test]
    fn e5_mapping_passes() {
        let d = decorate(&e5());
        let p = SchemeParams::for_family_size(8).unwrap();
        let asg = assign_intervals(&d, &p).unwrap();
        let r = check_lpo(&d, &asg.intervals, &p);
        assert!(r.passed(), "{r}");
        assert_eq!(r.checks.len(), 5);
    }

    #[test]
    fn swapped_intervals_break_lpo2() {
        let d = decorate(&e5());
        let p = SchemeParams::for_family_size(8).unwrap();
        let mut m = assign_intervals(&d, &p).unwrap().intervals;
        m.swap(2, 3);
        let r = check_lpo(&d, &m, &p);
        let lpo2 = r.check("lpo2").unwrap();
        assert!(!lpo2.passed);
        assert!(lpo2.witnesses.contains(&(2, 3)), "{:?}", lpo2.witnesses);
        assert!(r.check("lpo1").unwrap().passed);
        assert!(r.check("one-to-one").unwrap().passed);
    }

    #[test]
    fn single_node_is_vacuous() {
        let t = RootedTree::from_signed_parents(&[-1]).unwrap();
        let d = decorate(&t);
        let p = SchemeParams::for_family_size(2).unwrap();
        let asg = assign_intervals(&d, &p).unwrap();
        assert!(check_lpo(&d, &asg.intervals, &p).passed());
        assert!(check_scheme_vs_oracle(&t, Scheme::Optimal, &p, &PairPlan::default()).passed());
    }

    #[test]
    fn duplicate_and_out_of_universe_intervals_are_caught() {
        let d = decorate(&e5());
        let p = SchemeParams::for_family_size(8).unwrap();
        let mut m = assign_intervals(&d, &p).unwrap().intervals;
        m[4] = m[3];
        m[2] = DyadicInterval::new(3, 11, 2);
        let r = check_lpo(&d, &m, &p);
        assert!(!r.check("one-to-one").unwrap().passed);
        assert!(!r.check("universe").unwrap().passed);
    }

    #[test]
    fn label_budget_reports_width() {
        let p = SchemeParams::from_ell(10).unwrap();
        let t = RootedTree::from_signed_parents(&[-1, 0, 0, 1, 1]).unwrap();
        let lab = mark(&t, &p).unwrap();
        let r = check_label_budget(&lab.labels, &lab.layout);
        assert!(r.passed(), "{r}");
        let expected = match OffsetWidth::default() {
            OffsetWidth::Wide => 42,
            OffsetWidth::Tight => 41,
        };
        assert_eq!(r.stats.max_label_bits, expected);
    }

    #[test]
    fn shrinking_finds_minimal_failure() {
        // Failure: the tree has a node with three children.
        let t = RootedTree::from_signed_parents(&[-1, 0, 0, 1, 1, 1, 4, 2]).unwrap();
        let fails = |t: &RootedTree| t.nodes().any(|v| t.children(v).len() >= 3);
        let small = shrink_tree(&t, fails);
        assert_eq!(small.signed_parents(), vec![-1, 0, 1, 1, 1]);
        assert!(fails(&small));
    }

    #[test]
    fn corrupted_labels_are_reported() {
        let t = e5();
        let p = SchemeParams::for_family_size(8).unwrap();
        let lab = mark(&t, &p).unwrap();
        let mut labels = lab.labels.clone();
        labels.swap(1, 2);
        let r = check_labels_vs_oracle(
            &t,
            SchemeLabels::Optimal {
                layout: &lab.layout,
                labels: &labels,
            },
            &PairPlan::default(),
        );
        assert!(!r.passed());
        assert!(!r.check("oracle-agreement").unwrap().witnesses.is_empty());
    }
}
