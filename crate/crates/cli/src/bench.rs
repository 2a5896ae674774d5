//! Marking and query timing.
//!
//! Marking is timed end to end (decoration, interval assignment, packing)
//! with a monotonic clock. Queries are timed over a pre-gathered batch of
//! label pairs, so the measured loop touches the same amount of memory
//! whatever the tree size. Every configuration gets one untimed warmup run
//! and reports per-trial rows plus a median row.

use std::hint::black_box;
use std::io::Write;
use std::time::{Duration, Instant};

use anyhow::{bail, ensure, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ancestry_core::{
    classic_decide, classic_mark, decide_ancestry, generate_tree, mark_with_layout, ClassicLabel,
    Label, LabelLayout, RootedTree, Scheme, SchemeParams, TreeFamily, TreeFamilySpec,
};

use crate::formats::LabelTable;

pub const MIN_QUERY_BATCH: usize = 10_000;
pub const DEFAULT_QUERY_BATCH: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub families: Vec<TreeFamily>,
    pub sizes: Vec<usize>,
    /// One family size per entry of `sizes`, a single value for all of them,
    /// or empty to use each node count as its own family size.
    pub family_sizes: Vec<u64>,
    pub trials: usize,
    pub seed: u64,
    pub schemes: Vec<Scheme>,
    pub queries: usize,
}

impl BenchConfig {
    /// `(node_count, family_size)` pairs after validation.
    pub fn size_pairs(&self) -> Result<Vec<(usize, u64)>> {
        ensure!(self.trials >= 1, "trials must be at least 1");
        ensure!(
            self.queries >= MIN_QUERY_BATCH,
            "query batches must hold at least {MIN_QUERY_BATCH} queries"
        );
        ensure!(!self.sizes.is_empty(), "no sizes given");
        ensure!(!self.families.is_empty(), "no families given");
        ensure!(!self.schemes.is_empty(), "no schemes given");
        let pairs: Vec<(usize, u64)> = match self.family_sizes.len() {
            0 => self.sizes.iter().map(|&s| (s, s as u64)).collect(),
            1 => self
                .sizes
                .iter()
                .map(|&s| (s, self.family_sizes[0]))
                .collect(),
            k if k == self.sizes.len() => self
                .sizes
                .iter()
                .copied()
                .zip(self.family_sizes.iter().copied())
                .collect(),
            k => bail!(
                "{k} family sizes given for {} node counts",
                self.sizes.len()
            ),
        };
        for &(size, n) in &pairs {
            ensure!(size >= 1, "node counts must be positive");
            ensure!(
                size as u64 <= n,
                "node count {size} exceeds family size {n}"
            );
            SchemeParams::for_family_size(n)?;
        }
        Ok(pairs)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub family: String,
    pub node_count: usize,
    pub family_size_n: u64,
    pub scheme: &'static str,
    /// Trial index, or `median`.
    pub trial: String,
    pub max_label_bits: u32,
    pub mark_wall_time_ns: u64,
    pub mean_query_ns: f64,
    pub queries_measured: usize,
}

/// A family with brooms balanced for `size`.
pub fn shaped(family: TreeFamily, size: usize) -> TreeFamily {
    match family {
        TreeFamily::Broom { path_count: 0, .. } => TreeFamily::balanced_broom(size),
        f => f,
    }
}

/// Labels `tree` with `scheme`, timing only the marking itself.
pub fn timed_mark(
    tree: &RootedTree,
    scheme: Scheme,
    params: &SchemeParams,
) -> Result<(Duration, LabelTable)> {
    match scheme {
        Scheme::Optimal => {
            let layout = LabelLayout::new(*params);
            let start = Instant::now();
            let lab = mark_with_layout(black_box(tree), &layout)?;
            let elapsed = start.elapsed();
            Ok((
                elapsed,
                LabelTable::Optimal {
                    layout,
                    labels: lab.labels,
                },
            ))
        }
        Scheme::Classic => {
            let start = Instant::now();
            let lab = classic_mark(black_box(tree), params.family_size())?;
            let elapsed = start.elapsed();
            Ok((elapsed, LabelTable::Classic(lab)))
        }
    }
}

/// Label pairs copied out of a table into one contiguous buffer.
#[derive(Debug, Clone)]
pub enum QueryBatch {
    Optimal(LabelLayout, Vec<(Label, Label)>),
    Classic(Vec<(ClassicLabel, ClassicLabel)>),
}

impl QueryBatch {
    /// `count` uniformly random ordered pairs.
    pub fn sample(table: &LabelTable, count: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = table.len();
        let mut pick = || (rng.random_range(0..n), rng.random_range(0..n));
        match table {
            LabelTable::Optimal { layout, labels } => QueryBatch::Optimal(
                *layout,
                (0..count)
                    .map(|_| {
                        let (u, v) = pick();
                        (labels[u], labels[v])
                    })
                    .collect(),
            ),
            LabelTable::Classic(c) => QueryBatch::Classic(
                (0..count)
                    .map(|_| {
                        let (u, v) = pick();
                        (c.labels[u], c.labels[v])
                    })
                    .collect(),
            ),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            QueryBatch::Optimal(_, p) => p.len(),
            QueryBatch::Classic(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Answers every query once; returns how many were ancestor pairs.
    pub fn run(&self) -> usize {
        match self {
            QueryBatch::Optimal(layout, pairs) => pairs
                .iter()
                .filter(|&&(u, v)| decide_ancestry(layout, black_box(u), black_box(v)))
                .count(),
            QueryBatch::Classic(pairs) => pairs
                .iter()
                .filter(|(u, v)| classic_decide(black_box(u), black_box(v)))
                .count(),
        }
    }

    /// Warmup pass, then one timed pass. Returns mean nanoseconds per query.
    pub fn time(&self) -> f64 {
        black_box(self.run());
        let start = Instant::now();
        black_box(self.run());
        start.elapsed().as_nanos() as f64 / self.len().max(1) as f64
    }
}

pub fn median(values: &[f64]) -> f64 {
    assert!(!values.is_empty(), "median of nothing");
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) / 2.0
    }
}

/// Median optimal-scheme marking time over `trials` trees of `family` with
/// `size` nodes (seeds `seed..seed+trials`), after one warmup run.
pub fn median_mark_ns(
    family: TreeFamily,
    size: usize,
    params: &SchemeParams,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    let family = shaped(family, size);
    let trees: Vec<RootedTree> = (0..trials as u64)
        .map(|t| generate_tree(&TreeFamilySpec::new(family, size, seed + t)))
        .collect::<Result<_, _>>()?;
    timed_mark(&trees[0], Scheme::Optimal, params)?;
    let times: Vec<f64> = trees
        .iter()
        .map(|t| timed_mark(t, Scheme::Optimal, params).map(|(d, _)| d.as_nanos() as f64))
        .collect::<Result<_>>()?;
    Ok(median(&times))
}

pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    let pairs = config.size_pairs()?;
    let mut rows = Vec::new();
    for &template in &config.families {
        for &(size, n) in &pairs {
            let family = shaped(template, size);
            let params = SchemeParams::for_family_size(n)?;
            let trees: Vec<RootedTree> = (0..config.trials as u64)
                .map(|t| generate_tree(&TreeFamilySpec::new(family, size, config.seed + t)))
                .collect::<Result<_, _>>()?;
            for &scheme in &config.schemes {
                let (_, warm) = timed_mark(&trees[0], scheme, &params)?;
                QueryBatch::sample(&warm, config.queries, config.seed).time();
                let mut marks = Vec::new();
                let mut queries = Vec::new();
                let mut bits = 0;
                for (trial, tree) in trees.iter().enumerate() {
                    let (elapsed, table) = timed_mark(tree, scheme, &params)?;
                    let batch =
                        QueryBatch::sample(&table, config.queries, config.seed + trial as u64);
                    let q = batch.time();
                    bits = table.total_bits();
                    marks.push(elapsed.as_nanos() as f64);
                    queries.push(q);
                    rows.push(BenchRow {
                        family: family.name().to_string(),
                        node_count: size,
                        family_size_n: n,
                        scheme: scheme.name(),
                        trial: trial.to_string(),
                        max_label_bits: bits,
                        mark_wall_time_ns: elapsed.as_nanos() as u64,
                        mean_query_ns: q,
                        queries_measured: batch.len(),
                    });
                }
                rows.push(BenchRow {
                    family: family.name().to_string(),
                    node_count: size,
                    family_size_n: n,
                    scheme: scheme.name(),
                    trial: "median".to_string(),
                    max_label_bits: bits,
                    mark_wall_time_ns: median(&marks) as u64,
                    mean_query_ns: median(&queries),
                    queries_measured: config.queries,
                });
            }
        }
    }
    Ok(rows)
}

pub fn write_bench_csv(out: impl Write, rows: &[BenchRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "family",
        "node_count",
        "family_size_n",
        "scheme",
        "trial",
        "max_label_bits",
        "mark_wall_time_ns",
        "mean_query_ns",
        "queries_measured",
    ])?;
    for r in rows {
        w.write_record([
            r.family.clone(),
            r.node_count.to_string(),
            r.family_size_n.to_string(),
            r.scheme.to_string(),
            r.trial.clone(),
            r.max_label_bits.to_string(),
            r.mark_wall_time_ns.to_string(),
            format!("{:.3}", r.mean_query_ns),
            r.queries_measured.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
