mod commands;
mod error;
mod report;
mod workspace;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use modcat::linalg::Field;

use crate::commands::ConvertMode;
use crate::error::CliError;
use crate::report::{Report, Status};
use crate::workspace::Context;

#[derive(Parser, Debug)]
#[command(name = "modcat", version, about = "Check modulations, build their algebras, and test finiteness")]
struct Cli {
    /// `q` or `fp:<p>`; overrides the workspace field
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized module generation and isomorphism search
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every validator on a workspace
    Validate { file: PathBuf },
    /// Build the algebra of a modulation, or the skew algebra of a presheaf
    BuildAlgebra { file: PathBuf, name: String },
    /// Move between representations and modules
    Convert {
        file: PathBuf,
        #[arg(value_enum)]
        mode: ConvertMode,
        name: String,
        /// Use the algebra of this modulation instead of the object's own
        #[arg(long)]
        over: Option<String>,
    },
    /// Finite-type test for a presheaf module
    FiniteType { file: PathBuf, name: String },
    /// Finite-generation test for a module or presheaf module
    Fg {
        file: PathBuf,
        name: String,
        /// JSON list of generator vectors; a greedy set is used when absent
        #[arg(long)]
        gens: Option<String>,
    },
    /// Built-in examples: section5, group:<n>, species-a2
    Demo { name: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::BuildAlgebra { .. } => "build-algebra",
            Command::Convert { .. } => "convert",
            Command::FiniteType { .. } => "finite-type",
            Command::Fg { .. } => "fg",
            Command::Demo { .. } => "demo",
        }
    }
}

fn parse_field(s: &str) -> Result<Field, CliError> {
    s.parse().map_err(|e: modcat::Error| CliError::Parse { line: 0, reason: e.to_string() })
}

fn load(path: &Path, field: Option<Field>) -> Result<Context, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    Context::new(workspace::parse(&text)?, field)
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let field = cli.field.as_deref().map(parse_field).transpose()?;
    match &cli.command {
        Command::Validate { file } => commands::validate(&load(file, field)?),
        Command::BuildAlgebra { file, name } => commands::build_algebra(&load(file, field)?, name),
        Command::Convert { file, mode, name, over } => {
            commands::convert(&load(file, field)?, *mode, name, over.as_deref())
        }
        Command::FiniteType { file, name } => commands::finite_type_cmd(&load(file, field)?, name),
        Command::Fg { file, name, gens } => commands::fg(&load(file, field)?, name, gens.as_deref()),
        Command::Demo { name } => commands::demo(name, field.unwrap_or(Field::Rationals), cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(CliError::Check { location, error }) => {
            let mut r = Report::new(cli.command.name());
            r.error("input", &location, &error);
            r
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    match report.status() {
        Status::Pass => ExitCode::SUCCESS,
        Status::Fail => ExitCode::from(1),
    }
}
