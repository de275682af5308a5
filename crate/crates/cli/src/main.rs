use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod verify;

#[derive(Parser, Debug)]
#[command(
    name = "thetagw",
    version,
    about = "Relative and punctured Gromov-Witten invariants of (P^2, cubic) from ring associativity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Highest curve degree to solve (also the truncation degree in t).
    #[arg(long, global = true, default_value_t = 2)]
    max_degree: u32,

    /// JSON file `{"slab": {"1": "-2", ...}}` overriding or extending the
    /// built-in slab coefficients.
    #[arg(long, global = true)]
    slab_file: Option<PathBuf>,

    /// Fixed triple bound for equation generation (default: 3d per degree).
    #[arg(long, global = true)]
    triple_bound: Option<u32>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Print each degree's normalized equations to stderr.
    #[arg(long, global = true)]
    dump_equations: bool,

    /// Evaluate off-grade punctured queries to 0 instead of failing.
    #[arg(long, global = true)]
    allow_offgrade: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve all degrees up to --max-degree and print invariants and reports.
    Compute,
    /// Expand θ_P · θ_Q at truncation --max-degree.
    Product { p: u32, q: u32 },
    /// Evaluate N_{pqr}^d, or a whole degree with --batch.
    Punctured {
        #[arg(num_args = 0..=4, value_names = ["P", "Q", "R", "D"])]
        values: Vec<u32>,
        /// Tabulate every graded query of this degree.
        #[arg(long, conflicts_with = "values")]
        batch: Option<u32>,
        /// Largest p and q in a batch (default 3D).
        #[arg(long, requires = "batch")]
        cap: Option<u32>,
    },
    /// Check the solver against known values and internal consistency.
    Verify,
    /// Solve and write only the invariant table.
    Export,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// Options shared by every subcommand.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub max_degree: u32,
    pub slab_file: Option<PathBuf>,
    pub triple_bound_override: Option<u32>,
    pub output_format: Format,
    pub output_path: Option<PathBuf>,
    pub dump_equations: bool,
    pub allow_offgrade: bool,
}

impl RunConfig {
    fn validate(&self) -> Result<(), String> {
        if self.max_degree < 1 {
            return Err("--max-degree must be at least 1".into());
        }
        if let Some(b) = self.triple_bound_override {
            if b < 3 * self.max_degree {
                return Err(format!(
                    "--triple-bound {b} is below 3 * max-degree = {}",
                    3 * self.max_degree
                ));
            }
        }
        Ok(())
    }
}

/// Exit status of a command: 0 success, 1 solver or check failure,
/// 2 configuration error.
pub enum Failure {
    Solver(String),
    Config(String),
}

impl From<thetagw_core::Error> for Failure {
    fn from(e: thetagw_core::Error) -> Self {
        if e.is_configuration() {
            Failure::Config(e.to_string())
        } else {
            Failure::Solver(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

fn open_output(cfg: &RunConfig) -> Result<Box<dyn Write>, Failure> {
    Ok(match &cfg.output_path {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let cfg = RunConfig {
        max_degree: cli.max_degree,
        slab_file: cli.slab_file,
        triple_bound_override: cli.triple_bound,
        output_format: cli.format,
        output_path: cli.output,
        dump_equations: cli.dump_equations,
        allow_offgrade: cli.allow_offgrade,
    };
    if let Err(msg) = cfg.validate() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }

    let result = open_output(&cfg).and_then(|mut out| {
        let r = match cli.command {
            Command::Compute => commands::compute(&cfg, &mut out, true),
            Command::Export => commands::compute(&cfg, &mut out, false),
            Command::Product { p, q } => commands::product(&cfg, &mut out, p, q),
            Command::Punctured { values, batch, cap } => match (values.as_slice(), batch) {
                (&[p, q, r, d], None) => commands::punctured(&cfg, &mut out, p, q, r, d),
                ([], Some(d)) => commands::punctured_batch(&cfg, &mut out, d, cap.unwrap_or(3 * d)),
                _ => Err(Failure::Config("punctured needs P Q R D, or --batch D".into())),
            },
            Command::Verify => verify::run(&cfg, &mut out),
        };
        out.flush()?;
        r
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Solver(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
