//! `pconn`: solvers for highly connected vertex cover.
//!
//! Graphs are read in the shared DIMACS-like text format from a path or stdin,
//! reports are JSON on stdout. Vertex ids on the command line and in reports
//! are 1-indexed. Exit codes: 0 success, 1 failed verification or sweep
//! mismatch, 2 bad input.

mod commands;
mod report;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pconn::Variant;

#[derive(Parser)]
#[command(name = "pconn", version, about = "Exact, kernelized and approximate p-connected vertex cover")]
struct Cli {
    /// Seed for every randomized step; echoed in reports.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    /// p-vertex-connected vertex cover
    Pcvc,
    /// p-edge-connected vertex cover
    Pecvc,
}

impl Problem {
    pub fn variant(self) -> Variant {
        match self {
            Problem::Pcvc => Variant::Vertex,
            Problem::Pecvc => Variant::Edge,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Fpt,
    Brute,
    Approx,
}

#[derive(Args)]
pub struct GraphInput {
    /// Graph file; `-` or absent reads stdin.
    pub graph: Option<PathBuf>,
}

#[derive(Args)]
pub struct KernelArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub p: usize,
    /// Rational, e.g. `1/2`, `0.25` or `1`.
    #[arg(long, default_value = "1", value_parser = pconn::kernel::parse_epsilon)]
    pub epsilon: pconn::kernel::Epsilon,
    #[arg(long, default_value = "edge")]
    pub variant: Variant,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance exactly or approximately.
    Solve {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_enum)]
        problem: Problem,
        #[arg(long, value_enum, default_value = "fpt")]
        algo: Algo,
        /// Size budget; defaults to the vertex count.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        p: usize,
    },
    /// Gomory-Hu based approximation for p-edge-connected vertex cover.
    Approx {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        p: usize,
    },
    /// Lossy kernel: reduced graph plus the data needed to lift solutions.
    Kernel {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        kernel: KernelArgs,
        /// Also write the reduced graph here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lift a solution of the reduced graph back to the input graph.
    Lift {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        kernel: KernelArgs,
        /// Vertex list of the reduced graph, 1-indexed.
        #[arg(long)]
        solution: PathBuf,
    },
    /// Print a Gomory-Hu tree as `t <u> <v> <capacity>` lines.
    Ghtree {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Generate instances.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Check a solution independently of any solver.
    Verify {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        solution: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long, default_value = "edge")]
        variant: Variant,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Cross-check fpt, approx and kernel against brute force on random graphs.
    Sweep {
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 8)]
        nmax: usize,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value = "edge")]
        variant: Variant,
        #[arg(long, default_value = "1", value_parser = pconn::kernel::parse_epsilon)]
        epsilon: pconn::kernel::Epsilon,
        /// Where to write a shrunk failing instance.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
pub enum GenKind {
    /// G(n, prob) random graph.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        prob: f64,
    },
    /// p-edge-connected core with a fringe attached to at least p core vertices each.
    Planted {
        #[arg(long)]
        core: usize,
        #[arg(long)]
        fringe: usize,
        #[arg(long)]
        p: usize,
    },
    /// Connected vertex cover instance to p-vertex-connected vertex cover.
    FromCvc {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
    },
    /// Red-blue dominating set instance to p-edge-connected vertex cover.
    FromRbds {
        /// RBDS file; `-` or absent reads stdin.
        rbds: Option<PathBuf>,
        #[arg(long)]
        p: usize,
    },
    /// Random red-blue dominating set instance.
    Rbds {
        #[arg(long)]
        reds: usize,
        #[arg(long)]
        blues: usize,
        #[arg(long)]
        prob: f64,
        #[arg(long)]
        k: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli.seed;
    let run = match cli.command {
        Command::Solve {
            input,
            problem,
            algo,
            k,
            p,
        } => commands::solve(&input, problem, algo, k, p, seed),
        Command::Approx { input, p } => commands::approx(&input, p, seed),
        Command::Kernel { input, kernel, out } => commands::kernel(&input, &kernel, out.as_deref(), seed),
        Command::Lift {
            input,
            kernel,
            solution,
        } => commands::lift(&input, &kernel, &solution, seed),
        Command::Ghtree { input } => commands::ghtree(&input),
        Command::Gen { kind } => commands::gen(&kind, seed),
        Command::Verify {
            input,
            solution,
            p,
            variant,
            k,
        } => commands::verify(&input, &solution, p, variant, k, seed),
        Command::Sweep {
            p,
            nmax,
            count,
            variant,
            epsilon,
            dump,
        } => sweep::run(
            &sweep::Config {
                p,
                nmax,
                count,
                variant,
                epsilon,
                seed,
            },
            dump.as_deref(),
        ),
    };
    match run {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("pconn: {e}");
            ExitCode::from(2)
        }
    }
}
