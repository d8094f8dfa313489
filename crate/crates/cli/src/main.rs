//! `apolar`: rank bounds, bound tables and apolar algebras from the command line.

mod commands;
mod render;
mod source;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Markdown,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableMode {
    ClosedForm,
    Verify,
}

#[derive(Debug, Parser)]
#[command(name = "apolar", version, about = "Apolarity computations and Waring/cactus rank bounds")]
struct Cli {
    #[arg(long, value_enum, default_value = "markdown", global = true)]
    format: OutputFormat,
    /// Seed for random derivatives.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Number of random derivatives tried by the generic bound (0 skips it).
    #[arg(long, default_value_t = 5, global = true)]
    trials: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
pub struct FormArg {
    /// `builtin:<id>` (det:N, perm:N, pf:N, symdet:N, monprod:N, minors:M,N,D,
    /// matmul:P,Q,R) or a file with one polynomial per line.
    #[arg(long)]
    pub form: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lower and upper rank bounds for a form or linear series.
    Bounds {
        #[command(flatten)]
        form: FormArg,
        /// Linear dual form for the derivative bound, e.g. "d[1,1]" or "d1 - 2*d2".
        #[arg(long)]
        partial: Option<String>,
        /// Assert that the partial spans no proper invariant subspace.
        #[arg(long)]
        assert_invariance: bool,
        /// Group action the assertion refers to.
        #[arg(long)]
        invariance: Option<String>,
        /// Variable for the leading-coefficient bound, e.g. "x[1,1]".
        #[arg(long)]
        leading_var: Option<String>,
        /// Linear form to dehomogenize at for the upper bound (default: last variable).
        #[arg(long)]
        dehomogenize_at: Option<String>,
    },
    /// Bound table for det, pf or symdet.
    Table {
        family: String,
        #[arg(long)]
        n_max: u32,
        #[arg(long, value_enum, default_value = "closed-form")]
        mode: TableMode,
    },
    /// Hilbert function of the apolar algebra.
    Hilbert {
        #[command(flatten)]
        form: FormArg,
    },
    /// Minimal generators of the apolar ideal.
    ApolarGens {
        #[command(flatten)]
        form: FormArg,
        /// Highest degree searched (default: degree of the form + 1).
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Check a power-sum decomposition `coeff ; linear form` per line.
    VerifyDecomposition {
        #[command(flatten)]
        form: FormArg,
        #[arg(long)]
        file: String,
    },
    /// Lower bounds for the matrix multiplication series and tensor.
    Matmul {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        r: u32,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("APOLAR_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("APOLAR_THREADS must be a count, got '{value}'")))?;
    if n > 0 {
        // fails only if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn run(cli: Cli) -> Result<commands::Output, CliError> {
    configure_threads()?;
    let fmt = cli.format;
    match cli.command {
        Command::Bounds { form, partial, assert_invariance, invariance, leading_var, dehomogenize_at } => {
            commands::bounds(
                &form.form,
                commands::BoundsArgs {
                    partial,
                    assert_invariance,
                    invariance,
                    leading_var,
                    dehomogenize_at,
                    trials: cli.trials,
                    seed: cli.seed,
                },
                fmt,
            )
        }
        Command::Table { family, n_max, mode } => commands::table(&family, n_max, mode, fmt),
        Command::Hilbert { form } => commands::hilbert(&form.form, fmt),
        Command::ApolarGens { form, max_degree } => commands::apolar_gens(&form.form, max_degree, fmt),
        Command::VerifyDecomposition { form, file } => commands::verify_decomposition(&form.form, &file, fmt),
        Command::Matmul { p, q, r } => commands::matmul(p, q, r, fmt),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::FAILURE;
            }
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
