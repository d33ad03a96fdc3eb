//! Command-line front end for the beam-splitter attack toolkit.
//!
//! Four subcommands: `qber` evaluates the closed-form attack figures for one
//! splitting-ratio pair, `fit` calibrates the coupling model from a measured
//! table, `simulate` runs a scenario file end to end, and `sweep` tabulates
//! the closed forms over a ratio grid. Validation problems exit with 1,
//! runtime failures with 2.

mod config;
mod error;
mod output;
mod tables;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::config::load_scenario;
use crate::error::CliError;
use crate::tables::read_table;
use wdbs_core::analysis::{
    eve_basis_match_rate, pooled_error_rate, qber_eq2, sweep_correlation, AttackParameters,
};
use wdbs_core::optics::{fit_coupling_model, FitError, SplitterSpec, Wavelength};
use wdbs_core::protocol::secret_key_fraction;
use wdbs_core::simulation::run_simulation;

#[derive(Parser)]
#[command(
    name = "wdbs",
    version,
    about = "Wavelength-dependent beam-splitter attack toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form intercept-resend figures for one splitting-ratio pair.
    Qber {
        /// Coupling ratio seen at the rectilinear resend wavelength.
        #[arg(long)]
        r1: f64,
        /// Coupling ratio seen at the diagonal resend wavelength.
        #[arg(long)]
        r2: f64,
    },
    /// Fit the fused-coupler wavelength model to measured splitting ratios.
    Fit {
        /// Two-column table: wavelength_nm, coupling ratio.
        #[arg(long)]
        table: PathBuf,
        /// Highest phase wrap count tried when seeding the fit.
        #[arg(long, default_value_t = 32)]
        branch_limit: u32,
        /// Directory for curve.csv.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Run a scenario file through the Monte Carlo driver.
    Simulate {
        /// Scenario description (TOML).
        #[arg(long)]
        config: PathBuf,
        /// Override the scenario's seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the scenario's pulse count.
        #[arg(long)]
        pulses: Option<u64>,
        /// Directory for histogram.csv and summary.csv.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Tabulate the closed forms over a grid of ratio pairs.
    Sweep {
        #[arg(long, default_value_t = 0.0)]
        r1_min: f64,
        #[arg(long, default_value_t = 1.0)]
        r1_max: f64,
        #[arg(long, default_value_t = 0.0)]
        r2_min: f64,
        #[arg(long, default_value_t = 1.0)]
        r2_max: f64,
        #[arg(long, default_value_t = 0.1)]
        step: f64,
        /// Directory for sweep.csv.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Qber { r1, r2 } => cmd_qber(r1, r2),
        Command::Fit {
            table,
            branch_limit,
            out_dir,
        } => cmd_fit(&table, branch_limit, &out_dir),
        Command::Simulate {
            config,
            seed,
            pulses,
            out_dir,
        } => cmd_simulate(&config, seed, pulses, &out_dir),
        Command::Sweep {
            r1_min,
            r1_max,
            r2_min,
            r2_max,
            step,
            out_dir,
        } => cmd_sweep(r1_min, r1_max, r2_min, r2_max, step, &out_dir),
    }
}

fn write_report(out_dir: &Path, name: &str, body: &str) -> Result<PathBuf, CliError> {
    fs::create_dir_all(out_dir)?;
    let path = out_dir.join(name);
    fs::write(&path, body)?;
    Ok(path)
}

fn cmd_qber(r1: f64, r2: f64) -> Result<(), CliError> {
    let params = AttackParameters::new(r1, r2).map_err(CliError::validation)?;
    let err_eq2 = qber_eq2(&params).map_err(CliError::validation)?;
    let err_pooled = pooled_error_rate(&params);
    let eve_match = eve_basis_match_rate(&params);
    let key = secret_key_fraction(err_eq2).expect("basis-averaged attack error is at most 1/2");
    println!("err_eq2={err_eq2:.6}");
    println!("err_pooled={err_pooled:.6}");
    println!("eve_basis_match={eve_match:.6}");
    println!("key_fraction={key:.6}");
    Ok(())
}

fn cmd_fit(table: &Path, branch_limit: u32, out_dir: &Path) -> Result<(), CliError> {
    let rows = read_table(table)?;
    let mut points = Vec::with_capacity(rows.len());
    for (nm, ratio) in rows {
        let lambda = Wavelength::new(nm)
            .map_err(|e| CliError::Validation(format!("{}: {e}", table.display())))?;
        points.push((lambda, ratio));
    }
    let outcome = fit_coupling_model(&points, branch_limit).map_err(|e| match e {
        FitError::NonConvergence { .. } => CliError::runtime(e),
        other => CliError::validation(other),
    })?;

    println!("max_amplitude={:.6}", outcome.model.max_amplitude());
    println!(
        "phase_coefficient={:.6e}",
        outcome.model.phase_coefficient()
    );
    println!("sse={:.6e}", outcome.sse);
    for ((lambda, _), residual) in points.iter().zip(&outcome.residuals) {
        println!("residual {lambda} {residual:+.6e}");
    }
    println!("candidates={}", outcome.candidates.len());

    let curve = output::curve_csv(&SplitterSpec::Model(outcome.model));
    let path = write_report(out_dir, "curve.csv", &curve)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_simulate(
    config_path: &Path,
    seed: Option<u64>,
    pulses: Option<u64>,
    out_dir: &Path,
) -> Result<(), CliError> {
    let mut scenario = load_scenario(config_path)?;
    if let Some(seed) = seed {
        scenario.seed = seed;
    }
    if let Some(pulses) = pulses {
        scenario.config.pulses = pulses;
    }
    let report = run_simulation(&scenario.config, scenario.seed)?;

    let histogram_path = write_report(out_dir, "histogram.csv", &output::histogram_csv(&report))?;
    let summary_path = write_report(out_dir, "summary.csv", &output::summary_csv(&report))?;
    println!("{}", output::simulate_summary_line(&report));
    println!("wrote {}", histogram_path.display());
    println!("wrote {}", summary_path.display());
    Ok(())
}

fn grid_values(min: f64, max: f64, step: f64) -> Vec<f64> {
    let span = max - min;
    let count = (span / step + 1e-9).floor() as u64 + 1;
    (0..count)
        .map(|i| (min + i as f64 * step).min(max))
        .collect()
}

fn cmd_sweep(
    r1_min: f64,
    r1_max: f64,
    r2_min: f64,
    r2_max: f64,
    step: f64,
    out_dir: &Path,
) -> Result<(), CliError> {
    for (name, value) in [
        ("--r1-min", r1_min),
        ("--r1-max", r1_max),
        ("--r2-min", r2_min),
        ("--r2-max", r2_max),
    ] {
        if !(value.is_finite() && (0.0..=1.0).contains(&value)) {
            return Err(CliError::Validation(format!(
                "{name}: splitting ratios live in [0, 1], got {value}"
            )));
        }
    }
    if !(step.is_finite() && step > 0.0) {
        return Err(CliError::Validation(format!(
            "--step: must be a positive number, got {step}"
        )));
    }
    if r1_min > r1_max || r2_min > r2_max {
        return Err(CliError::Validation(
            "sweep bounds must satisfy min <= max on both axes".to_string(),
        ));
    }

    let mut grid = Vec::new();
    for &r1 in &grid_values(r1_min, r1_max, step) {
        for &r2 in &grid_values(r2_min, r2_max, step) {
            grid.push(AttackParameters::new(r1, r2).map_err(CliError::validation)?);
        }
    }
    let rows = sweep_correlation(&grid);
    let degenerate = rows.iter().filter(|row| row.degenerate).count();

    let path = write_report(out_dir, "sweep.csv", &output::sweep_csv(&rows))?;
    println!("rows={} degenerate={degenerate}", rows.len());
    println!("wrote {}", path.display());
    Ok(())
}
