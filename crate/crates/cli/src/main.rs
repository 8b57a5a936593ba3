//! Command-line front end: run experiments from a TOML config, generate
//! synthetic datasets, and convert reports between formats.
//!
//! Exit codes: 0 success, 1 configuration error (bad flags, unreadable or
//! invalid config), 2 runtime failure. Set `COVACTION_LOG=debug` (or any
//! env_logger filter) for diagnostics.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use covaction::pipeline::{emit_report, render_csv, run_experiment, ExperimentConfig};
use covaction::skeleton::{generate_synthetic_dataset, save_dataset, SyntheticSpec};
use covaction::{Report, ReportFormat};

#[derive(Parser)]
#[command(name = "covaction", version, about = "Unsupervised skeleton action clustering")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a TOML config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Override the config's seed list (repeatable).
        #[arg(long)]
        seed: Vec<u64>,
        /// Override the cluster count.
        #[arg(long)]
        k: Option<usize>,
        /// Override the pipeline variant: selfexpress | pruned_selfexpress | tsc.
        #[arg(long)]
        variant: Option<String>,
        /// Override the solver: lsr | ssc_admm | ssc_omp | ensc.
        #[arg(long)]
        solver: Option<String>,
        /// Write the report here instead of the config's `output` path.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Report file format: json | csv.
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Generate a synthetic dataset from a TOML spec.
    Generate {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Convert a JSON report to another format.
    Report {
        #[arg(long = "in")]
        input: PathBuf,
        /// Output format: csv | json.
        #[arg(long, default_value = "csv")]
        format: String,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

const EXIT_CONFIG: u8 = 1;
const EXIT_RUNTIME: u8 = 2;

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Failure {
        Failure { code: EXIT_CONFIG, message: message.into() }
    }

    fn runtime(message: impl Into<String>) -> Failure {
        Failure { code: EXIT_RUNTIME, message: message.into() }
    }
}

fn parse_format(s: &str) -> Result<ReportFormat, Failure> {
    match s {
        "json" => Ok(ReportFormat::Json),
        "csv" => Ok(ReportFormat::Csv),
        other => Err(Failure::config(format!("unknown report format '{other}'"))),
    }
}

fn cmd_run(
    config: PathBuf,
    seed: Vec<u64>,
    k: Option<usize>,
    variant: Option<String>,
    solver: Option<String>,
    output: Option<PathBuf>,
    format: String,
) -> Result<(), Failure> {
    let format = parse_format(&format)?;
    let text = std::fs::read_to_string(&config)
        .map_err(|e| Failure::config(format!("cannot read {}: {e}", config.display())))?;
    let mut cfg: ExperimentConfig =
        toml::from_str(&text).map_err(|e| Failure::config(format!("invalid config: {e}")))?;

    if !seed.is_empty() {
        cfg.seeds = seed;
    }
    if let Some(k) = k {
        cfg.k = Some(k);
    }
    if let Some(v) = variant {
        cfg.variant = v.parse().map_err(|e: covaction::Error| Failure::config(e.to_string()))?;
    }
    if let Some(s) = solver {
        cfg.solver = s.parse().map_err(|e: covaction::Error| Failure::config(e.to_string()))?;
    }
    if let Some(out) = output {
        cfg.output = Some(out);
    }
    cfg.validate().map_err(|e| Failure::config(e.to_string()))?;

    let report = run_experiment(&cfg).map_err(|e| Failure::runtime(e.to_string()))?;

    if let Some(path) = &cfg.output {
        emit_report(&report, path, format).map_err(|e| Failure::runtime(e.to_string()))?;
        log::info!("report written to {}", path.display());
    } else {
        print_report(&report, format)?;
    }
    if let (Some(avg), Some(std)) = (report.avg_accuracy, report.std_accuracy) {
        eprintln!("accuracy: {avg:.2}% ± {std:.2} over {} run(s)", report.records.len());
    }
    Ok(())
}

fn print_report(report: &Report, format: ReportFormat) -> Result<(), Failure> {
    match format {
        ReportFormat::Csv => print!("{}", render_csv(report)),
        ReportFormat::Json => {
            let text = serde_json::to_string_pretty(report)
                .map_err(|e| Failure::runtime(e.to_string()))?;
            println!("{text}");
        }
    }
    Ok(())
}

fn cmd_generate(spec: PathBuf, out: PathBuf) -> Result<(), Failure> {
    let text = std::fs::read_to_string(&spec)
        .map_err(|e| Failure::config(format!("cannot read {}: {e}", spec.display())))?;
    let spec: SyntheticSpec =
        toml::from_str(&text).map_err(|e| Failure::config(format!("invalid spec: {e}")))?;
    let dataset = generate_synthetic_dataset(&spec).map_err(|e| match e {
        covaction::Error::InvalidParam(_) => Failure::config(e.to_string()),
        other => Failure::runtime(other.to_string()),
    })?;
    save_dataset(&dataset, &out).map_err(|e| Failure::runtime(e.to_string()))?;
    log::info!("{} samples written to {}", dataset.len(), out.display());
    Ok(())
}

fn cmd_report(input: PathBuf, format: String, out: Option<PathBuf>) -> Result<(), Failure> {
    let format = parse_format(&format)?;
    let report =
        covaction::pipeline::load_report(&input).map_err(|e| Failure::runtime(e.to_string()))?;
    match out {
        Some(path) => {
            emit_report(&report, &path, format).map_err(|e| Failure::runtime(e.to_string()))?
        }
        None => print_report(&report, format)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("COVACTION_LOG")).init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are not errors
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_CONFIG),
            };
        }
    };

    let result = match cli.command {
        Command::Run { config, seed, k, variant, solver, output, format } => {
            cmd_run(config, seed, k, variant, solver, output, format)
        }
        Command::Generate { spec, out } => cmd_generate(spec, out),
        Command::Report { input, format, out } => cmd_report(input, format, out),
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
