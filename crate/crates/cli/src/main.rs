use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dslf_core::io::{self, Format};
use dslf_core::{compare_configs, evaluate_round, EvaluationConfig, RoundInput, RoundReport};

/// Rank alternatives from panels of intuitionistic fuzzy judgments.
#[derive(Parser)]
#[command(name = "dslf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every round of a judgment file and print the rankings.
    Evaluate {
        file: PathBuf,
        /// JSON evaluation config; omitted fields use the defaults.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Only evaluate the round with this label.
        #[arg(long)]
        round: Option<String>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
        format: OutputFormat,
    },
    /// Write every intermediate value as CSV records.
    Trace {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Evaluate each round under every split/source configuration.
    CompareConfigs {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
        format: OutputFormat,
    },
    /// Write gross estimations per round and alternative for plotting.
    PlotData {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Human,
    Json,
    Csv,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Human => Format::Human,
            OutputFormat::Json => Format::Json,
            OutputFormat::Csv => Format::Csv,
        }
    }
}

/// Failure classes, mapped to exit codes 1 and 2.
enum Failure {
    Input(String),
    Internal(String),
}

impl From<dslf_core::Error> for Failure {
    fn from(e: dslf_core::Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_rounds(path: &Path) -> Result<Vec<RoundInput>, Failure> {
    io::parse_judgments(&read(path)?).map_err(|e| prefixed(path, e))
}

fn load_config(path: Option<&Path>) -> Result<EvaluationConfig, Failure> {
    match path {
        None => Ok(EvaluationConfig::default()),
        Some(p) => io::parse_config(&read(p)?).map_err(|e| prefixed(p, e)),
    }
}

fn prefixed(path: &Path, e: dslf_core::Error) -> Failure {
    match Failure::from(e) {
        Failure::Input(m) => Failure::Input(format!("{}: {m}", path.display())),
        other => other,
    }
}

fn evaluate_rounds(
    rounds: &[RoundInput],
    config: &EvaluationConfig,
) -> Result<Vec<RoundReport>, Failure> {
    rounds
        .iter()
        .map(|r| {
            evaluate_round(r, config).map_err(|e| match Failure::from(e) {
                Failure::Input(m) => Failure::Input(format!("round {}: {m}", r.round_label)),
                Failure::Internal(m) => Failure::Internal(format!("round {}: {m}", r.round_label)),
            })
        })
        .collect()
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Evaluate {
            file,
            config,
            round,
            format,
        } => {
            let mut rounds = load_rounds(&file)?;
            if let Some(label) = round {
                rounds.retain(|r| r.round_label == label);
                if rounds.is_empty() {
                    return Err(Failure::Input(format!(
                        "{}: no round labelled {label:?}",
                        file.display()
                    )));
                }
            }
            let config = load_config(config.as_deref())?;
            let reports = evaluate_rounds(&rounds, &config)?;
            Ok(io::emit_reports(&reports, format.into()))
        }
        Command::Trace { file, out, config } => {
            let rounds = load_rounds(&file)?;
            let config = load_config(config.as_deref())?;
            let reports = evaluate_rounds(&rounds, &config)?;
            write(&out, &io::emit_reports(&reports, Format::Csv))?;
            Ok(String::new())
        }
        Command::CompareConfigs { file, format } => {
            let rounds = load_rounds(&file)?;
            let grid = EvaluationConfig::grid();
            let comparisons = rounds
                .iter()
                .map(|r| compare_configs(r, &grid))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(io::emit_comparisons(&comparisons, format.into()))
        }
        Command::PlotData { file, out, config } => {
            let rounds = load_rounds(&file)?;
            let config = load_config(config.as_deref())?;
            let reports = evaluate_rounds(&rounds, &config)?;
            write(&out, &io::plot_data(&reports))?;
            Ok(String::new())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(2)
        }
    }
}
