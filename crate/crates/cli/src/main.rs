//! Command-line workbench: spectra, wavefunctions, oracle verification and
//! parameter sweeps over defect scenario configs.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use landau_defects_cli::config::{parse_config, OutputFormat, ScenarioConfig};
use landau_defects_cli::{output, run};

#[derive(Parser)]
#[command(
    name = "landau-defects",
    about = "Landau levels around crystalline line defects",
    version
)]
struct Cli {
    /// Not accepted: every run is fully deterministic.
    #[arg(long, global = true, value_name = "SEED", hide = true)]
    seed: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(clap::Args)]
struct CommonArgs {
    /// Scenario configuration file.
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Write the table here instead of the config's output.path / stdout.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Override the config's output format.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form spectrum with degeneracy clusters.
    Spectrum(CommonArgs),
    /// Cross-validate the closed forms against the finite-difference oracle.
    Verify(CommonArgs),
    /// Sampled normalized radial eigenfunction of one state.
    Wavefunction {
        #[command(flatten)]
        common: CommonArgs,
        /// Radial index of the state.
        #[arg(long)]
        n: u32,
        /// Angular momentum of the state.
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        /// Number of uniform sample points.
        #[arg(long, default_value_t = 512)]
        samples: usize,
    },
    /// Spectrum over the declared parameter grid (long format).
    Sweep(CommonArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.seed.is_some() {
        eprintln!("error: --seed is not accepted; every run is fully deterministic");
        return ExitCode::from(2);
    }
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn load(common: &CommonArgs) -> Result<ScenarioConfig, String> {
    let text = fs::read_to_string(&common.config)
        .map_err(|e| format!("cannot read {}: {e}", common.config.display()))?;
    let mut config = parse_config(&text).map_err(|errors| {
        errors
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join("\n")
    })?;
    if let Some(format) = common.format {
        config.format = match format {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        };
    }
    if let Some(path) = &common.output {
        config.path = Some(path.display().to_string());
    }
    Ok(config)
}

fn emit(config: &ScenarioConfig, text: &str) -> Result<(), String> {
    match &config.path {
        Some(path) if path != "-" => {
            fs::write(path, text).map_err(|e| format!("cannot write {path}: {e}"))
        }
        _ => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| format!("cannot write to stdout: {e}"))
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Spectrum(common) => {
            let config = load(&common)?;
            let rows = run::spectrum_rows(&config)?;
            let text = match config.format {
                OutputFormat::Csv => output::spectrum_csv(&rows),
                OutputFormat::Json => output::to_json(&rows),
            };
            emit(&config, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep(common) => {
            let config = load(&common)?;
            let rows = run::sweep_rows(&config)?;
            let text = match config.format {
                OutputFormat::Csv => output::spectrum_csv(&rows),
                OutputFormat::Json => output::to_json(&rows),
            };
            emit(&config, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(common) => {
            let config = load(&common)?;
            let outcome = run::verify(&config)?;
            let text = match config.format {
                OutputFormat::Csv => output::verify_csv(&outcome.rows),
                OutputFormat::Json => output::to_json(&outcome.rows),
            };
            emit(&config, &text)?;
            for note in &outcome.notes {
                eprintln!("note: {note}");
            }
            let passed = outcome.rows.iter().filter(|r| r.pass).count();
            eprintln!(
                "verify: {passed}/{} rows pass, max |delta| = {:.3e}, max relative = {:.3e}",
                outcome.rows.len(),
                outcome.max_abs,
                outcome.max_rel
            );
            Ok(if outcome.all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Wavefunction {
            common,
            n,
            l,
            samples,
        } => {
            let config = load(&common)?;
            let (table, notes) = run::wavefunction(&config, n, l, samples)?;
            let text = match config.format {
                OutputFormat::Csv => output::wavefunction_csv(&table),
                OutputFormat::Json => output::to_json(&table),
            };
            emit(&config, &text)?;
            for note in notes {
                eprintln!("note: {note}");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
