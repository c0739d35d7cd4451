//! `vertexlie` command-line front end.

mod commands;
mod config;
mod error;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::Ctx;
use crate::output::Format;

#[derive(Parser, Debug)]
#[command(
    name = "vertexlie",
    version,
    about = "Exact computations with vertex Lie algebras, vacuum modules and their Poisson algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Named structure: witt, virasoro, loop-sl2, affine-sl2, heisenberg, heisenberg2, novikov-dual.
    #[arg(long, global = true)]
    pub builder: Option<String>,
    /// Run configuration file (JSON, or TOML when the extension is .toml).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Mode window for verification suites.
    #[arg(long, global = true)]
    pub window: Option<u32>,
    /// Degree bound for characters and state suites.
    #[arg(long, global = true)]
    pub depth: Option<u32>,
    /// Central character entry `name=value`, repeatable.
    #[arg(long, global = true)]
    pub lambda: Vec<String>,
    /// Gram matrix as JSON, e.g. `[[2,-1],[-1,2]]`.
    #[arg(long, global = true)]
    pub gram: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for sample-based suites.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Append wall-clock time to the report. Off by default so that output is reproducible.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a verification suite.
    Check {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Mode bracket `[a(m), b(n)]`.
    Bracket {
        #[arg(long)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Graded dimensions of the vacuum module up to `--depth`.
    Character,
    /// Apply a word of modes to the vacuum, e.g. `--word "omega(-2) omega(-1)"`.
    Act {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Commutator formula for field states on all states up to `--depth`.
    BorcherdsCheck {
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
    },
    /// Presentation of the Poisson quotient of the vacuum module.
    P2 {
        /// Drop generators that are solved by linear relations.
        #[arg(long)]
        eliminate: bool,
    },
    /// Skew symmetry and Leibniz suites for a vertex Poisson table.
    VpCheck {
        /// `ultra-<lie algebra>`, e.g. `ultra-sl2`; used when the config has no table.
        #[arg(long)]
        preset: Option<String>,
    },
    /// Poisson presentation of the quotient of a vertex Poisson table by its derivatives.
    Pvpa {
        #[arg(long)]
        preset: Option<String>,
    },
    /// Finite Poisson algebras of even lattices.
    Lattice {
        #[arg(value_enum)]
        action: LatticeAction,
        /// Parameter of the rank-one comparison algebra.
        #[arg(long)]
        k: Option<u32>,
    },
    /// Decompose a two-variable series into derivatives of the delta function.
    Decompose {
        /// JSON file with `terms` or `cells`.
        #[arg(long)]
        input: PathBuf,
        /// Highest derivative order to solve for.
        #[arg(long)]
        order: Option<u32>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Delta,
    Vla,
    Vacuum,
    P2,
    Lattice,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LatticeAction {
    C2Set,
    P2,
    Poisson,
    BkCompare,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    let format = cli.format;
    let run = Ctx::from_cli(&cli).and_then(|ctx| ctx.run(&cli.command).map(|out| (ctx.seed, out)));
    let mut stdout = std::io::stdout().lock();
    match run {
        Ok((seed, out)) => {
            let elapsed = cli.timing.then(|| start.elapsed().as_millis());
            let _ = stdout.write_all(output::render(&out, format, &argv, seed, elapsed).as_bytes());
            ExitCode::from(if out.passed() { 0 } else { 1 })
        }
        Err(e) => {
            let code = e.exit_code();
            let text = output::render_error(e.message(), code, format, &argv);
            if format == Format::Json {
                let _ = stdout.write_all(text.as_bytes());
            } else {
                let _ = std::io::stderr().write_all(text.as_bytes());
            }
            ExitCode::from(code)
        }
    }
}
