//! `cmm` command-line front end.
//!
//! Subcommands: `point`, `sweep`, `figure`, `peaks`. Tables are CSV (or JSON
//! lines) with a `.meta.json` sidecar that reproduces them exactly.

pub mod error;
pub mod input;
pub mod output;
pub mod peaks;

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use cmm_core::{
    evaluate, figure_preset, nonrecip_all, run_sweep_with, Execution, FigureId, ParamsFile,
    Quantity, SweepSpec, SystemParams,
};

pub use error::{CliError, CliResult, ExitCode};
pub use output::{Format, Sidecar};

#[derive(Debug, Parser)]
#[command(
    name = "cmm",
    version,
    about = "Entanglement and nonreciprocity in a cavity-magnon-mechanical system"
)]
pub struct Cli {
    /// Parameter file (flat `*_over_2pi_hz` JSON) or a `.meta.json` sidecar.
    #[arg(long, global = true, value_name = "FILE")]
    pub params: Option<PathBuf>,
    /// Override one parameter, e.g. `delta_n_over_omega_b=-1.3`. Repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    /// Output file (point, sweep, peaks) or directory (figure).
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Worker threads for sweeps; 1 runs sequentially.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a single parameter point.
    Point {
        /// Also evaluate ±|Δ_B| with this magnitude, in units of ω_b.
        #[arg(long, value_name = "DELTA_B_OVER_OMEGA_B")]
        pair: Option<f64>,
    },
    /// Sweep one or two parameters.
    Sweep {
        /// Sweep spec JSON or sidecar; flags below override its fields.
        #[arg(long, value_name = "FILE")]
        spec: Option<PathBuf>,
        /// `name[_over_omega_b|_over_2pi_hz|_over_kappa_n|_over_pi]=start:stop[:count]`
        #[arg(long)]
        axis1: Option<String>,
        #[arg(long)]
        axis2: Option<String>,
        /// Comma-separated, e.g. `e_nm,e_nb` or `n_mb`.
        #[arg(long, value_delimiter = ',')]
        quantities: Vec<String>,
        /// Evaluate both Barnett-shift signs, using |Δ_B| from the parameters.
        #[arg(long)]
        pair: bool,
    },
    /// Write the dataset of one figure panel as `<id>.csv` plus sidecar.
    Figure { id: String },
    /// Peak value, location and 99% window of every quantity in a table.
    Peaks { input: PathBuf },
}

pub fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Point { pair } => cmd_point(cli, *pair),
        Command::Sweep {
            spec,
            axis1,
            axis2,
            quantities,
            pair,
        } => {
            let spec = build_spec(cli, spec.as_deref(), axis1, axis2, quantities, *pair)?;
            cmd_sweep(cli, &spec)
        }
        Command::Figure { id } => cmd_figure(cli, id),
        Command::Peaks { input } => cmd_peaks(cli, input),
    }
}

fn warn_about(p: &SystemParams) {
    for w in p.warnings() {
        eprintln!("warning: {w}");
    }
}

pub fn resolve_params(cli: &Cli) -> CliResult<SystemParams> {
    let mut p = match &cli.params {
        Some(path) => input::load_params(path)?,
        None => ParamsFile::default().resolve()?,
    };
    input::apply_overrides(&mut p, &cli.set)?;
    Ok(p)
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::io(path, e))
}

/// Runs `f` against `--out` or standard output.
fn with_output(
    out: Option<&Path>,
    f: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> CliResult<()> {
    match out {
        Some(path) => {
            let mut w = create(path)?;
            f(&mut w).map_err(|e| CliError::io(path, e))
        }
        None => f(&mut io::stdout().lock()).map_err(|e| CliError::io("<stdout>", e)),
    }
}

pub fn cmd_point(cli: &Cli, pair: Option<f64>) -> CliResult<()> {
    let p = resolve_params(cli)?;
    warn_about(&p);
    let ev = evaluate(&p)?;
    let nonreciprocity = match pair {
        Some(mag) => {
            let magnitude = (mag * p.omega_b).abs();
            Some(output::NonrecipReport {
                delta_b_magnitude: magnitude,
                result: nonrecip_all(&p, magnitude)?,
            })
        }
        None => None,
    };
    let report = output::PointReport {
        tool: output::TOOL,
        version: output::VERSION,
        params_over_2pi_hz: ParamsFile::from_params(&p),
        steady_state: ev.steady,
        stability_margin: ev.margin,
        negativity: ev.pairs,
        nonreciprocity,
    };
    with_output(cli.out.as_deref(), |w| output::write_json_line(w, &report))
}

pub fn build_spec(
    cli: &Cli,
    spec_file: Option<&Path>,
    axis1: &Option<String>,
    axis2: &Option<String>,
    quantities: &[String],
    pair: bool,
) -> CliResult<SweepSpec> {
    let mut spec = match spec_file {
        Some(path) => {
            let mut s = input::load_spec(path)?;
            if let Some(params) = &cli.params {
                s.base = input::load_params(params)?;
            }
            input::apply_overrides(&mut s.base, &cli.set)?;
            s
        }
        None => {
            let base = resolve_params(cli)?;
            let axis1 = axis1
                .as_deref()
                .ok_or_else(|| CliError::Config("sweep needs --axis1 or --spec".into()))?;
            SweepSpec {
                base,
                axis1: input::parse_axis(axis1, &base)?,
                axis2: None,
                quantities: if pair {
                    Quantity::NONRECIPROCITY.to_vec()
                } else {
                    Quantity::ENTANGLEMENT.to_vec()
                },
                nonrecip_pairing: pair,
            }
        }
    };
    if spec_file.is_some() {
        if let Some(a) = axis1 {
            spec.axis1 = input::parse_axis(a, &spec.base)?;
        }
        spec.nonrecip_pairing |= pair;
    }
    if let Some(a) = axis2 {
        spec.axis2 = Some(input::parse_axis(a, &spec.base)?);
    }
    if !quantities.is_empty() {
        spec.quantities = quantities
            .iter()
            .map(|q| q.trim().parse::<Quantity>())
            .collect::<cmm_core::Result<_>>()?;
    }
    spec.validate()?;
    Ok(spec)
}

fn sidecar_path(table: &Path) -> PathBuf {
    let stem = table.file_stem().unwrap_or_default().to_string_lossy();
    table.with_file_name(format!("{stem}.meta.json"))
}

fn run_and_write(
    cli: &Cli,
    spec: &SweepSpec,
    table: Option<&Path>,
    preset: Option<&str>,
) -> CliResult<()> {
    warn_about(&spec.base);
    let result = run_sweep_with(spec, Execution::with_workers(cli.workers))?;
    with_output(table, |w| output::write_table(w, spec, &result, cli.format))?;
    if let Some(table) = table {
        let meta = sidecar_path(table);
        let sidecar = Sidecar::new(spec, preset);
        with_output(Some(&meta), |w| output::write_json_line(w, &sidecar))?;
    }
    Ok(())
}

pub fn cmd_sweep(cli: &Cli, spec: &SweepSpec) -> CliResult<()> {
    run_and_write(cli, spec, cli.out.as_deref(), None)
}

pub fn cmd_figure(cli: &Cli, id: &str) -> CliResult<()> {
    let id: FigureId = id.parse()?;
    let mut spec = figure_preset(id);
    if let Some(params) = &cli.params {
        spec.base = input::load_params(params)?;
    }
    input::apply_overrides(&mut spec.base, &cli.set)?;
    spec.validate()?;

    let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    let table = dir.join(format!("{}.{}", id.name(), cli.format.extension()));
    run_and_write(cli, &spec, Some(&table), Some(id.name()))
}

pub fn cmd_peaks(cli: &Cli, input: &Path) -> CliResult<()> {
    let peaks = peaks::peaks_of_file(input)?;
    with_output(cli.out.as_deref(), |w| output::write_json_line(w, &peaks))
}
