use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use transemi::commands::{self, GenerateKind, Options};
use transemi::instance::{self, InstanceFile};
use transemi::{Error, Report};

#[derive(Parser)]
#[command(name = "transemi", version, about = "Check and represent finite ∩-semigroups of partial transformations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Instance file (JSON)
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Seed for generated instances
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest semigroup generated from seed maps
    #[arg(long, global = true, default_value_t = 256)]
    cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Brute-force cross-checks (|G| up to TRANSEMI_ORACLE_BUDGET, default 12)
    #[arg(long, global = true, value_enum, default_value_t = Switch::Off)]
    oracle: Switch,
    /// Build the per-pair representations in parallel
    #[arg(long, global = true, value_enum, default_value_t = Switch::On)]
    pairs_parallel: Switch,
    /// Record wall-clock times (output is then no longer reproducible)
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Transformations,
    Abstract,
}

#[derive(Args)]
struct Shape {
    /// Points of the base set
    #[arg(long, default_value_t = 3)]
    points: usize,
    /// Number of random seed maps
    #[arg(long, default_value_t = 2)]
    maps: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize the structure of an instance
    Analyze,
    /// Run every hypothesis and closure check
    Check,
    /// Build and verify the faithful representation
    Represent,
    /// Generate a semigroup, encode it abstractly and verify its representation
    Roundtrip {
        #[command(flatten)]
        shape: Shape,
    },
    /// Write a seeded random instance
    Generate {
        #[arg(long, value_enum, default_value_t = Kind::Transformations)]
        kind: Kind,
        #[command(flatten)]
        shape: Shape,
        /// Carrier size for abstract instances (1 to 3)
        #[arg(long, default_value_t = 2)]
        size: usize,
        /// Write here instead of standard output
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn load(common: &Common) -> Result<InstanceFile, Error> {
    let path = common
        .input
        .as_ref()
        .ok_or_else(|| Error::Instance("--input is required".into()))?;
    instance::parse_instance(path)
}

fn run(cli: Cli) -> Result<Option<Report>, Error> {
    let common = &cli.common;
    let opts = Options {
        cap: common.cap,
        oracle: common.oracle == Switch::On,
        parallel: common.pairs_parallel == Switch::On,
        timings: common.timings,
    };
    let report = match cli.command {
        Command::Analyze => commands::cmd_analyze(&load(common)?, &opts)?,
        Command::Check => commands::cmd_check(&load(common)?, &opts)?,
        Command::Represent => commands::cmd_represent(&load(common)?, &opts)?,
        Command::Roundtrip { shape } => {
            let inst = match &common.input {
                Some(_) => load(common)?,
                None => commands::cmd_generate(
                    GenerateKind::Transformations { points: shape.points, maps: shape.maps },
                    common.seed,
                    common.cap,
                )?,
            };
            commands::cmd_roundtrip(&inst, &opts)?
        }
        Command::Generate { kind, shape, size, output } => {
            let kind = match kind {
                Kind::Transformations => GenerateKind::Transformations { points: shape.points, maps: shape.maps },
                Kind::Abstract => GenerateKind::Abstract { size },
            };
            let inst = commands::cmd_generate(kind, common.seed, common.cap)?;
            match output {
                Some(path) => instance::write_instance(&inst, &path)?,
                None => emit(&instance::to_string(&inst)),
            }
            return Ok(None);
        }
    };
    match common.format {
        Format::Text => emit(&report.to_text()),
        Format::Machine => emit(&format!("{}\n", report.to_json())),
    }
    Ok(Some(report))
}

// A closed pipe (e.g. `| head`) is not an error worth a panic.
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Some(report)) if !report.passed() => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
