use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rank3gcm::linalg::Rational;
use rank3gcm_cli::{cmd_check, cmd_enumerate, cmd_verify, Format, Mode, RunConfig, VerifyConfig};

/// Classifier for rank-3 hyperbolic generalized Cartan matrices with a
/// lattice Weyl vector.
#[derive(Parser)]
#[command(name = "rank3gcm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Elliptic,
    Parabolic,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Run the classification and print the catalogue.
    Enumerate {
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(i64).range(1..))]
        lambda_max: i64,
        #[arg(long, value_enum, default_value = "elliptic")]
        mode: ModeArg,
        /// Only this Weyl square, as `p/q`.
        #[arg(long = "r", allow_hyphen_values = true)]
        r: Option<Rational>,
        #[arg(long, default_value_t = 32, value_parser = clap::value_parser!(u32).range(3..))]
        max_sides: u32,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
        /// Worker threads (default: all processors).
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        jobs: Option<u32>,
        #[arg(long)]
        untwisted_only: bool,
        #[arg(long)]
        noncompact_only: bool,
        /// Cross-check seeds against an exhaustive scan of b up to this bound.
        #[arg(long, hide = true)]
        debug_seed_bound: Option<i64>,
    },
    /// Check the embedded reference data and the engine against it.
    Verify {
        /// Only the static reference data.
        #[arg(long)]
        skip_engine: bool,
        /// Catalogue file to use instead of the embedded one.
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long)]
        matrices: Option<PathBuf>,
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        jobs: Option<u32>,
    },
    /// Verify the realizations in a golden-format file.
    Check { path: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let mut err = io::stderr();
    let code = match cli.command {
        Command::Enumerate {
            lambda_max,
            mode,
            r,
            max_sides,
            format,
            jobs,
            untwisted_only,
            noncompact_only,
            debug_seed_bound,
        } => {
            let cfg = RunConfig {
                lambda_max,
                mode: match mode {
                    ModeArg::Elliptic => Mode::Elliptic,
                    ModeArg::Parabolic => Mode::Parabolic,
                },
                r_filter: r,
                max_sides: max_sides as usize,
                format: match format {
                    FormatArg::Table => Format::Table,
                    FormatArg::Records => Format::Records,
                },
                jobs: jobs.map(|j| j as usize),
                untwisted_only,
                noncompact_only,
                debug_seed_bound,
            };
            cmd_enumerate(&cfg, &mut out, &mut err)
        }
        Command::Verify {
            skip_engine,
            catalog,
            matrices,
            fixtures,
            jobs,
        } => {
            let cfg = VerifyConfig {
                skip_engine,
                catalog,
                matrices,
                fixtures,
                jobs: jobs.map(|j| j as usize),
            };
            cmd_verify(&cfg, &mut out, &mut err)
        }
        Command::Check { path } => cmd_check(&path, &mut out, &mut err),
    };
    if out.flush().is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(code as u8)
}
