use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use output::Failure;

#[derive(Parser, Debug)]
#[command(name = "wphyp", version, about = "Exact invariants of weighted projective hypersurfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    format: Format,
}

#[derive(Args, Debug, Clone, Copy)]
struct Format {
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Well-formedness, quasi-smoothness, volume and singularities of X_d.
    Analyze {
        #[arg(long)]
        weights: String,
        #[arg(long)]
        degree: u64,
        /// Also list P_1..P_M.
        #[arg(long, value_name = "M")]
        plurigenera: Option<u64>,
        /// Add a truncated decimal approximation with this many digits.
        #[arg(long, value_name = "K")]
        decimal: Option<usize>,
    },
    /// Table of plurigenera P_1..P_M.
    Plurigenera {
        #[arg(long)]
        weights: String,
        #[arg(long)]
        degree: u64,
        #[arg(long, value_name = "M")]
        up_to: u64,
    },
    /// Classify a cyclic quotient singularity such as "1/6(2,2,3)".
    ReidTai {
        singularity: String,
    },
    /// Verify one of the explicit families, or all of them.
    Verify {
        #[arg(long, value_enum, required_unless_present = "all")]
        family: Option<FamilyArg>,
        /// Single value or range "a..b" (inclusive).
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        l: Option<String>,
        #[arg(long)]
        n: Option<String>,
        /// Target volumes for the volume family, e.g. "1/2,5/7".
        #[arg(long)]
        q: Option<String>,
        #[arg(long, conflicts_with = "family")]
        all: bool,
    },
    /// Build a hypersurface with canonical volume r/s.
    ConstructVolume {
        /// Target volume "r/s".
        volume: String,
        #[arg(long)]
        a: Option<u64>,
        #[arg(long)]
        b: Option<u64>,
        #[arg(long, value_name = "K")]
        decimal: Option<usize>,
    },
    /// Exhaustive search for canonical quasi-smooth hypersurfaces.
    Search {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        max_sum: u64,
        /// Require P_1 = ... = P_V = 0.
        #[arg(long, default_value_t = 0)]
        vanishing: u64,
        #[arg(long, value_name = "M", default_value_t = 0)]
        plurigenera: u64,
        #[arg(long, default_value_t = 1)]
        amplitude: i64,
        #[arg(long)]
        jobs: Option<usize>,
        /// Print only the smallest-volume record.
        #[arg(long)]
        min: bool,
        #[arg(long)]
        csv: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FamilyArg {
    Prop,
    Thm3,
    Thm4,
    Ample,
    Volume,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let result = commands::install_limits().and_then(|()| commands::run(cli.command, cli.format.json, echo));
    match result {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(Failure { status, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(status)
        }
    }
}
