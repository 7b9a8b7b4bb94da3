use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use quasicartan_cli::input::read_matrix_arg;
use quasicartan_cli::report::Report;
use quasicartan_core::MutationSequence;

/// Mod-4 congruence normal forms and mutation invariants of integer matrices.
///
/// A matrix argument is a file (plain text or JSON), `-` for standard
/// input, or an inline matrix such as "2 1; 1 2".
#[derive(Parser)]
#[command(name = "quasicartan", version)]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical normal form mod 4 with a verified unimodular witness.
    NormalForm { a: String },
    /// Radical dimensions, form class, det mod 4 and canonical parameters.
    Invariants { a: String },
    /// Decide congruence mod 4.
    Congruent {
        a: String,
        a2: String,
        /// Decide by exhaustive search over invertible matrices mod 4 (n <= 3).
        #[arg(long)]
        oracle: bool,
        /// Also check this witness P: det P = ±1 and P^T A P = A2 (mod 4).
        #[arg(long, value_name = "P")]
        verify_witness: Option<String>,
    },
    /// Apply a sequence of mutations (1-based directions).
    Mutate {
        b: String,
        #[arg(long, value_name = "K1,K2,...")]
        seq: MutationSequence,
    },
    /// Quasi-Cartan companion: the standard one, or with the given signs.
    Companion {
        b: String,
        /// Symmetric matrix of ±1 off the diagonal; the diagonal is ignored.
        #[arg(long, value_name = "S")]
        signs: Option<String>,
    },
    /// The delta invariant det(S(B)) mod 4.
    Delta { b: String },
    /// Compare delta of two skew matrices whose reductions mod 2 have equal rank.
    Discrepancy { b: String, b2: String },
    /// Breadth-first scan of the mutation class.
    Scan {
        b: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 10_000)]
        max_nodes: usize,
        /// Seed for the sampled companion signs.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Worked examples and the brute-force oracle.
    Selftest,
}

fn run(command: Command) -> Result<Report> {
    match command {
        Command::NormalForm { a } => quasicartan_cli::normal_form(read_matrix_arg(&a)?),
        Command::Invariants { a } => quasicartan_cli::invariants(read_matrix_arg(&a)?),
        Command::Congruent { a, a2, oracle, verify_witness } => {
            let p = verify_witness.as_deref().map(read_matrix_arg).transpose()?;
            quasicartan_cli::congruent(read_matrix_arg(&a)?, read_matrix_arg(&a2)?, oracle, p)
        }
        Command::Mutate { b, seq } => quasicartan_cli::mutate_cmd(read_matrix_arg(&b)?, seq),
        Command::Companion { b, signs } => {
            let s = signs.as_deref().map(read_matrix_arg).transpose()?;
            quasicartan_cli::companion(read_matrix_arg(&b)?, s)
        }
        Command::Delta { b } => quasicartan_cli::delta_cmd(read_matrix_arg(&b)?),
        Command::Discrepancy { b, b2 } => quasicartan_cli::discrepancy(read_matrix_arg(&b)?, read_matrix_arg(&b2)?),
        Command::Scan { b, depth, max_nodes, seed } => {
            quasicartan_cli::scan(read_matrix_arg(&b)?, depth, max_nodes.max(1), seed)
        }
        Command::Selftest => Ok(quasicartan_cli::selftest()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli.command) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
            } else {
                print!("{}", report.to_text());
            }
            if report.success() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
