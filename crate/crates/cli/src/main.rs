use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ancestry_cli::commands::{
    cmd_bench, cmd_gen, cmd_label, cmd_query, cmd_verify, BenchArgs, GenArgs, LabelArgs, Outcome,
    QueryArgs, VerifyArgs,
};

/// Ancestry labeling for rooted trees.
#[derive(Debug, Parser)]
#[command(name = "ancestry", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a tree in the tree text format.
    Gen(GenArgs),
    /// Label a tree and write the label table CSV.
    Label(LabelArgs),
    /// Answer ancestry queries from a label table alone.
    Query(QueryArgs),
    /// Check labels against the brute-force oracle.
    Verify(VerifyArgs),
    /// Time marking and queries across families and sizes.
    Bench(BenchArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Label(a) => cmd_label(a),
        Command::Query(a) => cmd_query(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
