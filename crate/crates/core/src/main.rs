use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use prymkit::cli::{self, CliError, CliResult, Format, Report};

#[derive(Parser)]
#[command(
    name = "prymkit",
    version,
    about = "Prym component groups, norms and spectral covers"
)]
struct Args {
    #[arg(long, value_enum, default_value_t = OutputFormat::Json, global = true)]
    format: OutputFormat,

    /// Seed for the randomized suites.
    #[arg(long, env = "PRYMKIT_SEED", default_value_t = 0, global = true)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Component group of the Prym of a spectral cover descriptor.
    Pi0 {
        #[arg(long)]
        input: PathBuf,
    },
    /// Endoscopic dimensions and the variant bound for SL_n, genus g.
    Endoscopy {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        g: u64,
    },
    /// Norm of an element of a spectral algebra.
    Norm {
        #[arg(long)]
        input: PathBuf,
    },
    /// Squarefree decomposition of a spectral polynomial.
    Factor {
        #[arg(long)]
        input: PathBuf,
    },
    /// Pushforward and pullback along a double cover.
    Galois {
        #[arg(long)]
        input: PathBuf,
    },
    /// Run a seeded property suite.
    Verify { suite: String },
}

fn read(path: &PathBuf) -> CliResult<Vec<u8>> {
    std::fs::read(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn run(args: &Args) -> CliResult<(Report, bool)> {
    let ok = |r: Report| (r, true);
    Ok(match &args.command {
        Command::Pi0 { input } => ok(cli::run_pi0(&read(input)?)?),
        Command::Endoscopy { n, g } => ok(cli::run_endoscopy(*n, *g)?),
        Command::Norm { input } => ok(cli::run_norm(&read(input)?)?),
        Command::Factor { input } => ok(cli::run_factor(&read(input)?)?),
        Command::Galois { input } => ok(cli::run_galois(&read(input)?)?),
        Command::Verify { suite } => cli::run_verify(suite, args.seed)?,
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    let format = match args.format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Table => Format::Table,
    };
    match run(&args) {
        Ok((report, passed)) => {
            print!("{}", cli::render(&report, format));
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("prymkit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
