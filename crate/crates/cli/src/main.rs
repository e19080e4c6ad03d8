//! `lecount`: command-line front end for the counting engines, reductions and
//! verifiers in `lecount-core`.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "lecount", version, about = "Exact linear-extension and Bruhat-ideal counting")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for the parallel parts (0 picks the core count).
    #[arg(long, default_value_t = 0, global = true)]
    jobs: usize,
    /// Append wall-clock time to the report.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count linear extensions or ideals.
    #[command(subcommand)]
    Count(CountCmd),
    /// Run a reduction and print the resulting instance.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Recover ext(P) from the residues of a reduced instance.
    #[command(subcommand)]
    Recover(RecoverCmd),
    /// Gate discovery and verification.
    #[command(subcommand)]
    Gates(GatesCmd),
    /// #3SAT formula to a Bruhat permutation.
    Compile(CompileArgs),
    /// Number-theory helpers.
    #[command(subcommand)]
    Nt(NtCmd),
    /// Gadget counts.
    #[command(subcommand)]
    Gadget(GadgetCmd),
    /// Run the acceptance suite.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PosetMethod {
    Brute,
    Downset,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphMethod {
    Subset,
    Generic,
}

#[derive(Subcommand, Debug)]
pub enum CountCmd {
    /// ext(P) of a poset file.
    Poset {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = PosetMethod::Downset)]
        method: PosetMethod,
        #[arg(long = "mod", value_name = "P")]
        modulus: Option<u64>,
        /// Downset-table size limit.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Size of the weak-order ideal below a permutation or block sequence,
    /// given inline or as a file.
    Bruhat {
        input: String,
        #[arg(long = "mod", value_name = "P")]
        modulus: Option<u64>,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// ext(C) of a rigid circuit, or of the circuit reduced from a DIMACS formula.
    Circuit { file: PathBuf },
    /// ext(I_G) of a graph file.
    Incidence {
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        graph: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = GraphMethod::Subset)]
        method: GraphMethod,
        #[arg(long = "mod", value_name = "P")]
        modulus: Option<u64>,
    },
}

#[derive(Args, Debug)]
pub struct PosetPrime {
    #[arg(long)]
    poset: PathBuf,
    #[arg(long)]
    prime: u64,
}

#[derive(Subcommand, Debug)]
pub enum ReduceCmd {
    /// Q_p in the poset format.
    Height2(PosetPrime),
    /// G_p(P) in the graph format.
    Incidence(PosetPrime),
    /// The rigid circuit of a DIMACS formula.
    Sat {
        #[arg(long)]
        cnf: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum RecoverCmd {
    Height2 {
        #[arg(long)]
        poset: PathBuf,
    },
    Incidence {
        #[arg(long)]
        poset: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Identity,
    Swap,
    Andor,
    Testeq,
}

impl From<Kind> for lecount::circuit::GateKind {
    fn from(k: Kind) -> Self {
        use lecount::circuit::GateKind as G;
        match k {
            Kind::Identity => G::Identity,
            Kind::Swap => G::Swap,
            Kind::Andor => G::AndOr,
            Kind::Testeq => G::TestEq,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum GatesCmd {
    /// Check a gate's solution point against its equation system mod p.
    Verify {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        prime: u64,
        /// Use the printed point even where a corrected one exists.
        #[arg(long)]
        printed: bool,
    },
    /// Solve the equation systems mod p by exhaustive search.
    Search {
        #[arg(long)]
        prime: u64,
        /// Restrict to one gate (default: swap, andor, testeq).
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        /// Drop the inequations from the system.
        #[arg(long)]
        equalities_only: bool,
        /// Solutions listed per gate.
        #[arg(long, default_value_t = 10)]
        limit: usize,
    },
    /// Enumerate the candidate gate bodies.
    Candidates,
}

#[derive(Args, Debug)]
pub struct CompileArgs {
    #[arg(long)]
    cnf: PathBuf,
    #[arg(long)]
    prime: u64,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Largest σ written to disk.
    #[arg(long, default_value_t = 10_000_000)]
    budget: u128,
    /// Print the exact length of σ without building it.
    #[arg(long)]
    dry_run: bool,
}

#[derive(Subcommand, Debug)]
pub enum NtCmd {
    /// Primes strictly between k and hi (default k²).
    Primes { k: u64, hi: Option<u64> },
    /// Combine residues given as r:m.
    Crt {
        #[arg(required = true)]
        pairs: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum GadgetCmd {
    /// ext(J_p) by the state recurrence.
    Jp {
        #[arg(long)]
        prime: u64,
        /// Also count J_p with the subset DP.
        #[arg(long)]
        direct: bool,
    },
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    /// Smaller random samples.
    #[arg(long)]
    quick: bool,
    /// Run only these criteria.
    #[arg(long, value_delimiter = ',')]
    only: Vec<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    if cli.jobs > 0 {
        // only fails if a pool already exists, which cannot happen this early
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    let start = Instant::now();
    match commands::run(&cli.command, echo.clone()) {
        Ok(mut report) => {
            if cli.timings {
                report.timing = Some(start.elapsed());
            }
            match cli.format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => print!("{}", report.to_json()),
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => print!("{}", report::error_json(&echo, &e)),
            }
            ExitCode::from(report::exit_code(&e) as u8)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn argument_tree_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn global_flags_follow_the_subcommand() {
        let cli = Cli::try_parse_from(["lecount", "nt", "primes", "4", "--format", "json", "--jobs", "3"]).unwrap();
        assert_eq!(cli.format, Format::Json);
        assert_eq!(cli.jobs, 3);
        assert!(Cli::try_parse_from(["lecount", "count", "incidence", "a", "--graph", "b"]).is_err());
    }
}
