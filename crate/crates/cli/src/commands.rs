//! The `gen`, `label`, `query`, `verify` and `bench` subcommands.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};

use ancestry_core::verify::Check;
use ancestry_core::{
    assign_intervals, check_label_budget, check_labels_vs_oracle, check_lpo,
    check_scheme_vs_oracle, classic_mark, decorate, enumerate_rooted_trees_capped, generate_tree,
    mark, PairPlan, RootedTree, Scheme, SchemeLabels, SchemeParams, TreeFamily, TreeFamilySpec,
    VerificationReport,
};

use crate::bench::{run_bench, shaped, write_bench_csv, BenchConfig, DEFAULT_QUERY_BATCH};
use crate::formats::{
    read_label_table, read_pairs, read_tree, write_answers, write_intervals, write_label_table,
    write_report_csv, write_tree, LabelTable,
};

/// Largest tree size `verify --corpus` will enumerate.
pub const CORPUS_CAP: usize = 12;

/// Result of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerificationFailed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Optimal,
    Classic,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Scheme {
        match s {
            SchemeArg::Optimal => Scheme::Optimal,
            SchemeArg::Classic => Scheme::Classic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Csv,
}

fn parse_family(s: &str) -> Result<TreeFamily, String> {
    s.parse()
        .map_err(|e: ancestry_core::GenerateError| e.to_string())
}

fn create_out(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn open_in(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(File::open(path).with_context(|| {
        format!("cannot open {}", path.display())
    })?))
}

fn load_tree(path: &Path) -> Result<RootedTree> {
    read_tree(open_in(path)?).with_context(|| format!("cannot parse tree file {}", path.display()))
}

fn load_labels(path: &Path) -> Result<LabelTable> {
    read_label_table(open_in(path)?)
        .with_context(|| format!("cannot parse label table {}", path.display()))
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// path, star, caterpillar, complete-binary, broom or random-recursive
    #[arg(long, value_parser = parse_family)]
    pub family: TreeFamily,
    #[arg(long)]
    pub size: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Broom shape; both default to the most balanced shape for --size.
    #[arg(long, requires = "path_length")]
    pub path_count: Option<usize>,
    #[arg(long, requires = "path_count")]
    pub path_length: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn cmd_gen(args: &GenArgs) -> Result<Outcome> {
    let family = match (args.family, args.path_count, args.path_length) {
        (TreeFamily::Broom { .. }, Some(path_count), Some(path_length)) => TreeFamily::Broom {
            path_count,
            path_length,
        },
        (TreeFamily::Broom { .. }, ..) => shaped(args.family, args.size),
        (_, None, None) => args.family,
        (f, ..) => bail!("--path-count and --path-length only apply to brooms, not {f}"),
    };
    let tree = generate_tree(&TreeFamilySpec::new(family, args.size, args.seed))?;
    let mut out = create_out(args.out.as_deref())?;
    write_tree(&mut out, &tree)?;
    out.flush()?;
    Ok(Outcome::Success)
}

#[derive(Debug, Args)]
pub struct LabelArgs {
    /// Tree text file.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = SchemeArg::Optimal)]
    pub scheme: SchemeArg,
    /// Family size n; defaults to the node count.
    #[arg(long)]
    pub family_size: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the interval dump CSV here (optimal scheme only).
    #[arg(long)]
    pub intervals: Option<PathBuf>,
}

/// Labels `tree` within the family of trees of at most `n` nodes.
pub fn label_tree(tree: &RootedTree, scheme: Scheme, n: u64) -> Result<LabelTable> {
    if tree.node_count() as u64 > n {
        bail!(
            "tree of {} nodes exceeds family size {n}",
            tree.node_count()
        );
    }
    Ok(match scheme {
        Scheme::Optimal => {
            let lab = mark(tree, &SchemeParams::for_family_size(n)?)?;
            LabelTable::Optimal {
                layout: lab.layout,
                labels: lab.labels,
            }
        }
        Scheme::Classic => LabelTable::Classic(classic_mark(tree, n)?),
    })
}

pub fn cmd_label(args: &LabelArgs) -> Result<Outcome> {
    let tree = load_tree(&args.input)?;
    let n = args.family_size.unwrap_or(tree.node_count() as u64);
    let scheme = Scheme::from(args.scheme);
    if args.intervals.is_some() && scheme != Scheme::Optimal {
        bail!("--intervals needs the optimal scheme");
    }
    let table = label_tree(&tree, scheme, n)?;
    if let Some(path) = &args.intervals {
        let params = SchemeParams::for_family_size(n)?;
        let asg = assign_intervals(&decorate(&tree), &params)?;
        let mut out = create_out(Some(path))?;
        write_intervals(&mut out, &asg)?;
        out.flush()?;
    }
    let mut out = create_out(args.out.as_deref())?;
    write_label_table(&mut out, &table)?;
    out.flush()?;
    Ok(Outcome::Success)
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    /// Label table CSV; the tree itself is never read.
    #[arg(long)]
    pub labels: PathBuf,
    /// File of `u v` lines.
    #[arg(long, conflicts_with_all = ["u", "v"], required_unless_present_all = ["u", "v"])]
    pub pairs: Option<PathBuf>,
    #[arg(long, requires = "v")]
    pub u: Option<usize>,
    #[arg(long, requires = "u")]
    pub v: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn answer_queries(
    table: &LabelTable,
    pairs: &[(usize, usize)],
) -> Result<Vec<((usize, usize), bool)>> {
    pairs
        .iter()
        .map(|&(u, v)| {
            for x in [u, v] {
                if x >= table.len() {
                    bail!("unknown node id {x}; the table has {} labels", table.len());
                }
            }
            Ok(((u, v), table.decide(u, v)))
        })
        .collect()
}

pub fn cmd_query(args: &QueryArgs) -> Result<Outcome> {
    let table = load_labels(&args.labels)?;
    let pairs = match (&args.pairs, args.u, args.v) {
        (Some(path), ..) => read_pairs(open_in(path)?)?,
        (None, Some(u), Some(v)) => vec![(u, v)],
        _ => bail!("give --pairs or both --u and --v"),
    };
    let answers = answer_queries(&table, &pairs)?;
    let mut out = create_out(args.out.as_deref())?;
    write_answers(&mut out, &answers)?;
    out.flush()?;
    Ok(Outcome::Success)
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Tree text file.
    #[arg(long, required_unless_present = "corpus", conflicts_with = "corpus")]
    pub input: Option<PathBuf>,
    /// Verify every unlabeled rooted tree with 1..=N nodes instead.
    #[arg(long, value_name = "N")]
    pub corpus: Option<usize>,
    #[arg(long, value_enum, default_value_t = SchemeArg::Optimal)]
    pub scheme: SchemeArg,
    /// Family size n; defaults to the (largest) node count.
    #[arg(long)]
    pub family_size: Option<u64>,
    /// Compare every ordered pair, whatever the tree size.
    #[arg(long)]
    pub exhaustive: bool,
    /// Check this label table against the tree instead of labeling it afresh.
    #[arg(long, requires = "input")]
    pub labels: Option<PathBuf>,
    #[arg(long, default_value_t = ancestry_core::verify::DEFAULT_PAIR_BUDGET)]
    pub pair_budget: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn classic_width_check(n: u64, total_bits: u32) -> Check {
    let expected = 2 * ceil_log2(n).max(1);
    Check {
        name: "label-width",
        passed: total_bits == expected,
        detail: format!("labels are {total_bits} bits, expected 2*ceil(log2 {n}) = {expected}"),
        witnesses: Vec::new(),
        violations: u64::from(total_bits != expected),
    }
}

fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// Every check that applies to `tree` under `scheme`: the interval-mapping
/// invariants (optimal only), decoder against the oracle and the label budget.
pub fn verify_tree(
    tree: &RootedTree,
    scheme: Scheme,
    params: &SchemeParams,
    plan: &PairPlan,
) -> VerificationReport {
    let mut report = check_scheme_vs_oracle(tree, scheme, params, plan);
    match scheme {
        Scheme::Optimal => {
            let d = decorate(tree);
            if let Ok(asg) = assign_intervals(&d, params) {
                let steps = asg.steps;
                let mut lpo = check_lpo(&d, &asg.intervals, params);
                lpo.stats.recursion_steps = steps;
                report.absorb(lpo);
            }
            if let Ok(lab) = mark(tree, params) {
                report.absorb(check_label_budget(&lab.labels, &lab.layout));
            }
        }
        Scheme::Classic => {
            if let Ok(lab) = classic_mark(tree, params.family_size()) {
                report
                    .checks
                    .push(classic_width_check(params.family_size(), lab.total_bits()));
                report.stats.max_label_bits = lab.total_bits();
            }
        }
    }
    report
}

/// Checks a stored label table against `tree`.
pub fn verify_table(
    tree: &RootedTree,
    table: &LabelTable,
    plan: &PairPlan,
) -> Result<VerificationReport> {
    if table.len() != tree.node_count() {
        bail!(
            "label table has {} rows but the tree has {} nodes",
            table.len(),
            tree.node_count()
        );
    }
    Ok(match table {
        LabelTable::Optimal { layout, labels } => {
            let mut r =
                check_labels_vs_oracle(tree, SchemeLabels::Optimal { layout, labels }, plan);
            r.absorb(check_label_budget(labels, layout));
            r
        }
        LabelTable::Classic(c) => {
            let mut r = check_labels_vs_oracle(tree, SchemeLabels::Classic(&c.labels), plan);
            r.checks
                .push(classic_width_check(c.family_size, c.total_bits()));
            r
        }
    })
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<Outcome> {
    let scheme = Scheme::from(args.scheme);
    let plan = PairPlan {
        pair_budget: args.pair_budget,
        seed: args.seed,
        exhaustive: args.exhaustive,
        chain_pairs: true,
    };
    let mut reports = Vec::new();
    if let Some(max) = args.corpus {
        if max == 0 || max > CORPUS_CAP {
            bail!("--corpus must be between 1 and {CORPUS_CAP}");
        }
        let params = SchemeParams::for_family_size(args.family_size.unwrap_or(max as u64))?;
        if max as u64 > params.family_size() {
            bail!(
                "corpus trees of {max} nodes exceed family size {}",
                params.family_size()
            );
        }
        for size in 1..=max {
            for tree in enumerate_rooted_trees_capped(size, CORPUS_CAP)? {
                let mut r = verify_tree(&tree, scheme, &params, &plan);
                r.tree_id = format!("{} parents {:?}", scheme.name(), tree.signed_parents());
                reports.push(r);
            }
        }
    } else {
        let path = args
            .input
            .as_ref()
            .expect("clap requires --input without --corpus");
        let tree = load_tree(path)?;
        let n = args.family_size.unwrap_or(tree.node_count() as u64);
        let mut r = if let Some(labels) = &args.labels {
            verify_table(&tree, &load_labels(labels)?, &plan)?
        } else {
            if tree.node_count() as u64 > n {
                bail!(
                    "tree of {} nodes exceeds family size {n}",
                    tree.node_count()
                );
            }
            verify_tree(&tree, scheme, &SchemeParams::for_family_size(n)?, &plan)
        };
        r.tree_id = path.display().to_string();
        reports.push(r);
    }

    let failed = reports.iter().filter(|r| !r.passed()).count();
    let mut out = create_out(args.out.as_deref())?;
    match args.format {
        ReportFormat::Csv => write_report_csv(&mut out, &reports)?,
        ReportFormat::Text => {
            let single = reports.len() == 1;
            for r in reports.iter().filter(|r| single || !r.passed()) {
                write!(out, "{r}")?;
            }
            writeln!(
                out,
                "{} of {} tree(s) passed",
                reports.len() - failed,
                reports.len()
            )?;
        }
    }
    out.flush()?;
    Ok(if failed == 0 {
        Outcome::Success
    } else {
        Outcome::VerificationFailed
    })
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated families; brooms are balanced per size.
    #[arg(long, value_delimiter = ',', value_parser = parse_family,
          default_value = "random-recursive,broom,caterpillar,path,star,complete-binary")]
    pub families: Vec<TreeFamily>,
    /// Comma-separated node counts.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    /// Comma-separated family sizes: one per node count, or one for all.
    #[arg(long, value_delimiter = ',')]
    pub family_sizes: Vec<u64>,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(
        long,
        value_delimiter = ',',
        value_enum,
        default_value = "optimal,classic"
    )]
    pub schemes: Vec<SchemeArg>,
    /// Queries per timed batch (at least 10000).
    #[arg(long, default_value_t = DEFAULT_QUERY_BATCH)]
    pub queries: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn cmd_bench(args: &BenchArgs) -> Result<Outcome> {
    let config = BenchConfig {
        families: args.families.clone(),
        sizes: args.sizes.clone(),
        family_sizes: args.family_sizes.clone(),
        trials: args.trials,
        seed: args.seed,
        schemes: args.schemes.iter().map(|&s| s.into()).collect(),
        queries: args.queries,
    };
    let rows = run_bench(&config)?;
    let mut out = create_out(args.out.as_deref())?;
    write_bench_csv(&mut out, &rows)?;
    out.flush()?;
    Ok(Outcome::Success)
}
