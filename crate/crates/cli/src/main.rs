use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod input;

use commands::{CliError, Report};

#[derive(Parser, Debug)]
#[command(
    name = "clusterweyl",
    version,
    about = "Mutations, companions and Weyl group relations"
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for anything random.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for batch verbs.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Matrix JSON file, or - for stdin.
    #[arg(long)]
    pub matrix: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct Chain {
    #[command(flatten)]
    pub source: Source,

    /// Comma-separated 1-based mutation sequence.
    #[arg(long, default_value = "")]
    pub seq: String,

    /// -1, +1, or a comma list with one sign per step.
    #[arg(long, default_value = "-1", allow_hyphen_values = true)]
    pub eps: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mutate a matrix at one vertex or along a sequence.
    Mutate {
        #[command(flatten)]
        source: Source,
        /// 1-based vertex.
        #[arg(long, conflicts_with = "seq")]
        at: Option<usize>,
        #[arg(long)]
        seq: Option<String>,
    },
    /// Diagram of a matrix with its chordless cycles.
    Diagram {
        #[command(flatten)]
        source: Source,
    },
    /// Check a companion document for admissibility.
    Admissible {
        /// Companion JSON file ({"a", "matrix"}), or - for stdin.
        #[arg(long)]
        companion: PathBuf,
    },
    /// Search for an admissible quasi-Cartan companion of a matrix.
    FindCompanion {
        #[command(flatten)]
        source: Source,
    },
    /// Companion basis after ε-mutating an acyclic seed along a sequence.
    Basis {
        #[command(flatten)]
        chain: Chain,
    },
    /// Pair and cycle relations at the end of a mutation sequence.
    Relations {
        #[command(flatten)]
        chain: Chain,
        /// Check each relation by matrix computation.
        #[arg(long)]
        verify: bool,
    },
    /// Verify relations against a triple document.
    Verify {
        /// Triple JSON as written by `basis --json`.
        #[arg(long)]
        triple: PathBuf,
        /// Relations JSON as written by `relations --json`; defaults to
        /// all pair and cycle relations of the triple's diagram.
        #[arg(long)]
        relations: Option<PathBuf>,
        /// Largest power tried when certifying infinite order.
        #[arg(long, default_value_t = 60)]
        power_bound: u32,
    },
    /// Random mutation walks from a seed with all weights at least 4.
    WalkGe4 {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 10_000)]
        steps: usize,
        /// Number of walks, seeded from --seed upward.
        #[arg(long, default_value_t = 1)]
        runs: u64,
        /// Step back instead of creating entries above this bound.
        #[arg(long, default_value_t = 1_000_000_000_000_000)]
        cap: i64,
    },
    /// Order of the group generated by the companion-basis reflections.
    GroupOrder {
        #[command(flatten)]
        chain: Chain,
        /// Stop after this many elements.
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
    },
    /// Affine D̃n relation check.
    AffineCheck {
        #[arg(long, default_value_t = 5)]
        from: usize,
        #[arg(long)]
        to: Option<usize>,
    },
    /// Run the session service.
    Serve {
        /// TOML config with `addr` and `journal_dir`.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Listen address, overriding config and environment.
        #[arg(long)]
        addr: Option<String>,
    },
}

fn run(cli: Cli) -> Result<Report, CliError> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Internal(e.to_string()))?;
    }
    match cli.command {
        Command::Mutate { source, at, seq } => commands::mutate(&source, at, seq.as_deref()),
        Command::Diagram { source } => commands::diagram(&source),
        Command::Admissible { companion } => commands::admissible(&companion),
        Command::FindCompanion { source } => commands::find_companion(&source),
        Command::Basis { chain } => commands::basis(&chain),
        Command::Relations { chain, verify } => commands::relations(&chain, verify),
        Command::Verify {
            triple,
            relations,
            power_bound,
        } => commands::verify(&triple, relations.as_deref(), power_bound),
        Command::WalkGe4 {
            source,
            steps,
            runs,
            cap,
        } => commands::walk_ge4(&source, steps, cli.seed, runs, cap),
        Command::GroupOrder { chain, cap } => commands::group_order(&chain, cap),
        Command::AffineCheck { from, to } => commands::affine_check(from, to.unwrap_or(from)),
        Command::Serve { config, addr } => commands::serve(config.as_deref(), addr),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("CLUSTERWEYL_LOG")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(report) => {
            if json {
                match serde_json::to_string(&report.value) {
                    Ok(s) => println!("{s}"),
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                }
            } else {
                print!("{}", report.text);
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
