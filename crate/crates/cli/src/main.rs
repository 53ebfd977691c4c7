//! `propel`: construct Vasil'ev–Schönheim codes with quadratic switching
//! functions and certify their perfectness and propelinear structure.
//!
//! Every command prints a JSON report on stdout (or the codeword list for
//! `construct --enumerate` without `--words-out`). Exit status is 0 when every
//! requested verdict holds, 1 when some verdict is false, 2 on errors.

mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use propel::Limits;

#[derive(Parser, Debug)]
#[command(name = "propel", version, about = "Propelinear perfect codes from quadratic switching functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest number of words any enumeration or exhaustive sweep may visit.
    #[arg(long, global = true)]
    ceiling: Option<u64>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    json_out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build C(H, f) and write its spec and optionally its codewords.
    Construct(ConstructArgs),
    /// Check 1-perfectness and/or the propelinear certificate of a code.
    Verify(VerifyArgs),
    /// Fingerprint the group {Φ_w} and match it against the catalog.
    Group(GroupArgs),
    /// Count quadratic functions on GF(q)^m.
    CountQuadratics(CountArgs),
    /// Recover the switching function from a codeword file.
    ExtractF(ExtractArgs),
    /// Search for a Hamming-graph automorphism between two codeword files.
    Equivalence(EquivalenceArgs),
}

#[derive(Args, Debug)]
struct ConstructArgs {
    /// Field order (2, 3, 4, 5, 7, 8, 9, ...).
    #[arg(long, default_value_t = 2)]
    q: u32,
    /// Base-code length, required for `full` and `zero`.
    #[arg(long)]
    n: Option<usize>,
    /// hamming:r=R | full | zero | json:PATH
    #[arg(long, default_value = "hamming:r=2")]
    base: String,
    /// zero | random:seed=S | json:PATH | an expression such as "x1*x2 + 2*x3"
    #[arg(long, default_value = "zero")]
    f: String,
    /// Require f(0) = 0 so that the propelinear structure exists.
    #[arg(long)]
    propelinear: bool,
    /// Enumerate the codewords.
    #[arg(long)]
    enumerate: bool,
    /// Write the code spec here.
    #[arg(long, value_name = "PATH")]
    spec_out: Option<PathBuf>,
    /// Write the codewords here instead of stdout (implies --enumerate).
    #[arg(long, value_name = "PATH")]
    words_out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Exhaustive when the space fits under the ceiling, else sampled.
    Auto,
    Exhaustive,
    Sampled,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Code spec JSON.
    #[arg(long, value_name = "PATH")]
    spec: PathBuf,
    /// Check 1-perfectness.
    #[arg(long)]
    perfect: bool,
    /// Check the propelinear certificate.
    #[arg(long)]
    propelinear: bool,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    /// Sampled perfectness trials.
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
}

#[derive(Args, Debug)]
struct GroupArgs {
    /// Code spec JSON.
    #[arg(long, value_name = "PATH")]
    spec: PathBuf,
    /// Report the order and permutation of Φ_w for this codeword.
    #[arg(long = "element", value_name = "WORD")]
    elements: Vec<String>,
    /// A product of Φ_w factors claimed to equal the identity, written as
    /// codewords with optional exponents: "10000*11001*10000*11001".
    #[arg(long = "relation", value_name = "PRODUCT")]
    relations: Vec<String>,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    m: usize,
    /// Also count distinct functions by brute force.
    #[arg(long)]
    confirm: bool,
}

#[derive(Args, Debug)]
struct ExtractArgs {
    /// Codeword file.
    #[arg(long, value_name = "PATH")]
    words: PathBuf,
    /// Take the field and base code from this spec.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["base", "q", "n"])]
    spec: Option<PathBuf>,
    /// Base code as for `construct --base`.
    #[arg(long)]
    base: Option<String>,
    #[arg(long, default_value_t = 2)]
    q: u32,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args, Debug)]
struct EquivalenceArgs {
    #[arg(long, value_name = "PATH")]
    a: PathBuf,
    #[arg(long, value_name = "PATH")]
    b: PathBuf,
    #[arg(long, default_value_t = 2)]
    q: u32,
}

/// Result of a command: the report and whether every verdict held.
pub struct Outcome {
    pub report: serde_json::Value,
    pub ok: bool,
    /// Printed on stdout instead of the report.
    pub stdout: Option<String>,
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global()?;
    }
    let mut limits = Limits::default();
    if let Some(c) = cli.ceiling {
        limits.enumeration = c;
    }
    let ctx = commands::Context { limits, seed: cli.seed };
    let out = match cli.command {
        Command::Construct(a) => commands::construct(&ctx, a)?,
        Command::Verify(a) => commands::verify(&ctx, a)?,
        Command::Group(a) => commands::group(&ctx, a)?,
        Command::CountQuadratics(a) => commands::count_quadratics(&ctx, a)?,
        Command::ExtractF(a) => commands::extract_f(&ctx, a)?,
        Command::Equivalence(a) => commands::equivalence(&ctx, a)?,
    };
    if let Some(path) = &cli.json_out {
        io::write_atomic(path, &io::pretty(&out.report))?;
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            match &out.stdout {
                Some(s) => print!("{s}"),
                None => print!("{}", io::pretty(&out.report)),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
