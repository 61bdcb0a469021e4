use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use iontrap_core::cli::{self, Mode, OutputFormat, RunOutcome};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Spectrum,
    Evolve,
    Validate,
    Compare,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Spectrum => Mode::Spectrum,
            ModeArg::Evolve => Mode::Evolve,
            ModeArg::Validate => Mode::Validate,
            ModeArg::Compare => Mode::Compare,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> OutputFormat {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

/// Trapped-ion dynamics through a unitary transformation chain.
///
/// All physics parameters live in the JSON config; the flags only choose the
/// file, override the mode or format, and control verbosity. Exit status is
/// 0 on success, 1 when validation fails or a run errors, 2 on a config
/// problem.
#[derive(Parser, Debug)]
#[command(name = "iontrap-ut", version)]
struct Args {
    /// Operation to run (overrides the config's `mode`)
    #[arg(value_enum)]
    mode: ModeArg,

    /// Path to the JSON run configuration
    #[arg(long)]
    config: PathBuf,

    /// Output path (overrides the config's `output`; stdout if neither is set)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output format (overrides the config's `format`)
    #[arg(long, value_enum)]
    format: Option<FormatArg>,

    /// Print the resolved manifest (and validation summary) to stderr
    #[arg(short, long, action = clap::ArgAction::Count)]
    verbose: u8,
}

fn main() -> ExitCode {
    let args = Args::parse();

    let text = match std::fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("iontrap-ut: cannot read {}: {e}", args.config.display());
            return ExitCode::from(2);
        }
    };
    let mut config = match cli::parse_config(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("iontrap-ut: {e}");
            return ExitCode::from(2);
        }
    };
    config.mode = args.mode.into();
    if let Some(f) = args.format {
        config.format = f.into();
    }
    if let Some(path) = args.out {
        config.output = Some(path);
    }

    if args.verbose > 0 {
        match serde_json::to_string_pretty(&cli::RunManifest::new(&config)) {
            Ok(manifest) => eprintln!("{manifest}"),
            Err(e) => eprintln!("iontrap-ut: manifest serialization failed: {e}"),
        }
    }

    if args.verbose > 0 && config.mode == Mode::Validate {
        match cli::run_validation(&config) {
            Ok(report) => eprint!("{}", cli::format_validation_summary(&report)),
            Err(e) => {
                eprintln!("iontrap-ut: {e}");
                return ExitCode::from(1);
            }
        }
    }

    match cli::dispatch(&config) {
        Ok(RunOutcome::Success) => ExitCode::SUCCESS,
        Ok(RunOutcome::ValidationFailed) => {
            eprintln!("iontrap-ut: validation failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("iontrap-ut: {e}");
            ExitCode::from(1)
        }
    }
}
