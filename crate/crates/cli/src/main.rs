//! `permgrowth`: growth rates of sum-closed permutation classes from the
//! command line.

mod commands;
mod report;

use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use report::Format;

#[derive(Parser, Debug)]
#[command(name = "permgrowth", version, about = "Certified growth rates of sum-closed permutation classes")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Significant digits in decimal renderings.
    #[arg(long, env = "PERMGROWTH_PRECISION", default_value_t = 6, global = true)]
    pub precision: usize,
    /// Width of certified rate brackets.
    #[arg(long, default_value = "1e-9", global = true)]
    pub tol: String,
    /// Enumerate closures on all cores (output is unchanged).
    #[arg(long, global = true)]
    pub parallel: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Growth rate of the class with sum-indecomposable counts `p1,..;q1,..`.
    Rate {
        sequence: String,
    },
    /// Build a sequence realizing a target growth rate.
    Realize(commands::RealizeArgs),
    /// Members, antichain check and closure counts of an antichain set.
    Antichain {
        /// Built-in name (A, A-prime, A-three, A1, A2, A3, U12-12-odd) or `α/β[/parity]+...`.
        set: String,
        #[arg(long, default_value_t = 16)]
        max_len: usize,
    },
    /// Reproduce every published constant and law in one run.
    VerifyPaper {
        /// Number of realization targets sampled.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, hide = true)]
        corrupt: Option<String>,
    },
    /// Rates obtained from bit strings choosing between two sequences.
    SampleSet(commands::SampleArgs),
    /// Count sum-indecomposables of each length `n`, or the class counts of a sequence.
    Enumerate {
        /// An integer `n` or a sequence `p1,..;q1,..`.
        target: String,
        /// Largest length for class counts.
        #[arg(long, default_value_t = 20)]
        max_len: usize,
        /// Also list the sum-indecomposables of length `n`.
        #[arg(long)]
        list: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::iter::once("permgrowth".to_string())
        .chain(std::env::args().skip(1))
        .collect::<Vec<_>>()
        .join(" ");
    let start = Instant::now();
    let g = &cli.global;
    let result = match cli.command {
        Command::Rate { sequence } => commands::rate(echo, g, &sequence),
        Command::Realize(args) => commands::realize(echo, g, &args),
        Command::Antichain { set, max_len } => commands::antichain(echo, g, &set, max_len),
        Command::VerifyPaper { samples, corrupt } => commands::verify_paper(echo, g, samples, corrupt),
        Command::SampleSet(args) => commands::sample_set(echo, g, &args),
        Command::Enumerate { target, max_len, list } => commands::enumerate(echo, g, &target, max_len, list),
    };
    let mut report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    report.timing.millis = start.elapsed().as_millis();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    if let Err(e) = report.emit(g.format, &mut out).and_then(|_| out.flush()) {
        eprintln!("error: writing report: {e}");
        return ExitCode::from(2);
    }
    if g.format == Format::Text {
        eprintln!("({} ms)", report.timing.millis);
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        eprintln!("one or more checks failed");
        ExitCode::FAILURE
    }
}
