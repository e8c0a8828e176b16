//! Command-line front end: scenario sweeps and BER studies with CSV/SVG
//! output and a reproduction manifest next to every data file.
//!
//! Exit codes: 0 success, 2 usage error, 1 runtime failure. The
//! `OBMLC_THREADS` environment variable caps sweep parallelism.

use crate::channel::GAUSSIAN_METHOD;
use crate::error::{Error, Result};
use crate::experiments::{run_ber, run_mi_sweep, Scenario, ScenarioKind};
use crate::infotheory::{EstimatorSpec, MiCurve};
use crate::numerics::splitmix64;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Debug, Parser)]
#[command(
    name = "obmlc",
    version,
    about = "OB-MLC signaling: mutual-information figures and BER studies"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sweep a mutual-information scenario over an SNR grid; writes
    /// <scenario>.csv plus a manifest (and optionally an SVG plot).
    Mi(MiArgs),
    /// Measure uncoded OB/CB error rates over an SNR grid; writes ber.csv
    /// plus a manifest.
    Ber(BerArgs),
}

fn parse_scenario(s: &str) -> std::result::Result<ScenarioKind, String> {
    s.parse::<ScenarioKind>().map_err(|_| {
        let names: Vec<&str> = ScenarioKind::ALL.iter().map(|k| k.label()).collect();
        format!("unknown scenario '{s}' (expected one of: {})", names.join(", "))
    })
}

/// Inclusive `start:step:stop` dB grid; a bare number is a one-point grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec(pub Vec<f64>);

pub fn parse_grid(s: &str) -> std::result::Result<GridSpec, String> {
    if let Ok(single) = s.trim().parse::<f64>() {
        if !single.is_finite() {
            return Err("grid point must be finite".into());
        }
        return Ok(GridSpec(vec![single]));
    }
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected start:step:stop, got '{s}'"));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("'{p}': {e}")))
        .collect::<std::result::Result<_, _>>()?;
    let (start, step, stop) = (nums[0], nums[1], nums[2]);
    if !(start.is_finite() && step.is_finite() && stop.is_finite()) {
        return Err("grid bounds must be finite".into());
    }
    if step <= 0.0 {
        return Err(format!("step must be positive, got {step}"));
    }
    if stop < start {
        return Err(format!("stop {stop} is below start {start}"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok(GridSpec(
        (0..count).map(|i| start + i as f64 * step).collect(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EstimatorKind {
    /// Gauss-Hermite quadrature (deterministic, no error bars)
    Gh,
    /// Monte Carlo with reported standard errors
    Mc,
}

#[derive(Debug, Clone, Args)]
pub struct MiArgs {
    /// Scenario to sweep (one of: obmlc1d-total, obmlc1d-low, obmlc1d-high,
    /// bpsk, gain1d, obmlc2d-total, qpsk, mlc-qpsk-low, gain2d)
    #[arg(long, value_parser = parse_scenario)]
    pub scenario: ScenarioKind,

    /// SNR grid in dB, inclusive start:step:stop
    #[arg(long = "snr-db", value_parser = parse_grid, default_value = "-10:1:20", allow_hyphen_values = true)]
    pub snr_db: GridSpec,

    /// Expectation estimator
    #[arg(long, value_enum, default_value_t = EstimatorKind::Gh)]
    pub estimator: EstimatorKind,

    /// Gauss-Hermite quadrature order
    #[arg(long, default_value_t = EstimatorSpec::DEFAULT_GH_ORDER)]
    pub order: usize,

    /// Monte Carlo sample count per expectation
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: usize,

    /// Master seed (Monte Carlo only; each grid point derives a substream)
    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// Output directory
    #[arg(long, default_value = ".")]
    pub out: PathBuf,

    /// Also write a <scenario>.svg line plot
    #[arg(long)]
    pub svg: bool,
}

#[derive(Debug, Clone, Args)]
pub struct BerArgs {
    /// SNR grid in dB, inclusive start:step:stop
    #[arg(long = "snr-db", value_parser = parse_grid, default_value = "0:3:9", allow_hyphen_values = true)]
    pub snr_db: GridSpec,

    /// Symbols per grid point
    #[arg(long, default_value_t = 100_000)]
    pub symbols: usize,

    /// Master seed (each grid point derives its own)
    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// Output directory
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

/// Everything needed to reproduce an output file bit-exactly.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command_line: String,
    pub scenario: String,
    pub seeds: Vec<u64>,
    pub estimator: String,
    pub grid_db: Vec<f64>,
    pub artifact_version: String,
    pub gaussian_method: String,
    pub timestamp_unix: u64,
    pub output_file: String,
}

impl RunManifest {
    fn new(
        command_line: String,
        scenario: &str,
        seeds: Vec<u64>,
        estimator: &str,
        grid_db: Vec<f64>,
        output_file: &Path,
    ) -> Self {
        Self {
            command_line,
            scenario: scenario.to_string(),
            seeds,
            estimator: estimator.to_string(),
            grid_db,
            artifact_version: env!("CARGO_PKG_VERSION").to_string(),
            gaussian_method: GAUSSIAN_METHOD.to_string(),
            timestamp_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .unwrap_or_default()
                .as_secs(),
            output_file: output_file.display().to_string(),
        }
    }
}

/// Decimal float formatting with 13 significant digits, stable across the
/// full range of the emitted quantities.
fn fmt_float(v: f64) -> String {
    format!("{v:.12e}")
}

/// Write-then-rename so readers never observe a partial file.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let tmp = match dir {
        Some(d) => tempfile::NamedTempFile::new_in(d)?,
        None => tempfile::NamedTempFile::new_in(".")?,
    };
    std::fs::write(tmp.path(), contents)?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

pub fn mi_csv(curve: &MiCurve) -> String {
    let mut out = String::from("snr_db,mi_bits,std_err,scenario,estimator\n");
    for row in curve.rows() {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fmt_float(row.snr_db),
            fmt_float(row.mi_bits),
            fmt_float(row.std_err),
            row.scenario,
            row.estimator
        );
    }
    out
}

fn build_estimator(args: &MiArgs) -> EstimatorSpec {
    match args.estimator {
        EstimatorKind::Gh => EstimatorSpec::GaussHermite { order: args.order },
        EstimatorKind::Mc => EstimatorSpec::MonteCarlo {
            samples: args.samples,
            seed: args.seed,
        },
    }
}

fn canonical_mi_command(args: &MiArgs) -> String {
    let mut cmd = format!(
        "obmlc mi --scenario {} --snr-db {}",
        args.scenario.label(),
        grid_display(&args.snr_db.0)
    );
    match args.estimator {
        EstimatorKind::Gh => {
            let _ = write!(cmd, " --estimator gh --order {}", args.order);
        }
        EstimatorKind::Mc => {
            let _ = write!(
                cmd,
                " --estimator mc --samples {} --seed {}",
                args.samples, args.seed
            );
        }
    }
    let _ = write!(cmd, " --out {}", args.out.display());
    if args.svg {
        cmd.push_str(" --svg");
    }
    cmd
}

fn grid_display(grid: &[f64]) -> String {
    if grid.len() == 1 {
        return format!("{}", grid[0]);
    }
    let step = grid[1] - grid[0];
    format!("{}:{}:{}", grid[0], step, grid[grid.len() - 1])
}

/// Runs an MI sweep and writes `<scenario>.csv`, `<scenario>.manifest.json`
/// and optionally `<scenario>.svg`. Returns the paths written.
pub fn cmd_mi(args: &MiArgs) -> Result<Vec<PathBuf>> {
    let estimator = build_estimator(args);
    let scenario = Scenario::new(args.scenario, args.snr_db.0.clone(), estimator)?;
    let curve = run_mi_sweep(&scenario)?;

    std::fs::create_dir_all(&args.out)?;
    let label = args.scenario.label();
    let csv_path = args.out.join(format!("{label}.csv"));
    write_atomic(&csv_path, &mi_csv(&curve))?;
    let mut written = vec![csv_path.clone()];

    let seeds = match estimator {
        EstimatorSpec::GaussHermite { .. } => vec![],
        EstimatorSpec::MonteCarlo { seed, .. } => vec![seed],
    };
    let manifest = RunManifest::new(
        canonical_mi_command(args),
        label,
        seeds,
        &estimator.to_string(),
        args.snr_db.0.clone(),
        &csv_path,
    );
    let manifest_path = args.out.join(format!("{label}.manifest.json"));
    write_atomic(&manifest_path, &serde_json::to_string_pretty(&manifest)?)?;
    written.push(manifest_path);

    if args.svg {
        let svg_path = args.out.join(format!("{label}.svg"));
        write_atomic(&svg_path, &render_svg(&curve, label))?;
        written.push(svg_path);
    }
    Ok(written)
}

/// Runs the BER study and writes `ber.csv` plus `ber.manifest.json`.
/// Each grid point derives its own seed from the master seed, recorded in
/// the seed column, so any single row can be reproduced in isolation.
pub fn cmd_ber(args: &BerArgs) -> Result<Vec<PathBuf>> {
    let reports: Result<Vec<_>> = args
        .snr_db
        .0
        .par_iter()
        .enumerate()
        .map(|(index, &snr_db)| {
            let point_seed = splitmix64(args.seed ^ splitmix64(index as u64 + 1));
            run_ber(snr_db, args.symbols, point_seed)
        })
        .collect();
    let reports = reports?;

    let mut csv = String::from("snr_db,n_symbols,ob_ber,cb_ber_genie,cb_pos_err_est,cb_val_err_est,seed\n");
    for r in &reports {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            fmt_float(r.snr_db),
            r.n_symbols,
            fmt_float(r.ob_bit_error_rate),
            fmt_float(r.cb_bit_error_rate_genie),
            fmt_float(r.cb_position_error_rate_estimated),
            fmt_float(r.cb_value_error_rate_estimated),
            r.seed
        );
    }

    std::fs::create_dir_all(&args.out)?;
    let csv_path = args.out.join("ber.csv");
    write_atomic(&csv_path, &csv)?;

    let command = format!(
        "obmlc ber --snr-db {} --symbols {} --seed {} --out {}",
        grid_display(&args.snr_db.0),
        args.symbols,
        args.seed,
        args.out.display()
    );
    let manifest = RunManifest::new(
        command,
        "ber",
        std::iter::once(args.seed)
            .chain(reports.iter().map(|r| r.seed))
            .collect(),
        &format!("simulation(symbols={})", args.symbols),
        args.snr_db.0.clone(),
        &csv_path,
    );
    let manifest_path = args.out.join("ber.manifest.json");
    write_atomic(&manifest_path, &serde_json::to_string_pretty(&manifest)?)?;
    Ok(vec![csv_path, manifest_path])
}

/// Minimal polyline plot; the CSV next to it is the authoritative artifact.
fn render_svg(curve: &MiCurve, title: &str) -> String {
    const W: f64 = 720.0;
    const H: f64 = 480.0;
    const L: f64 = 70.0;
    const R: f64 = 20.0;
    const T: f64 = 40.0;
    const B: f64 = 50.0;
    let rows = curve.rows();
    let x_min = rows.first().map_or(0.0, |r| r.snr_db);
    let x_max = rows.last().map_or(1.0, |r| r.snr_db);
    let x_span = (x_max - x_min).max(1e-9);
    let y_max = rows.iter().map(|r| r.mi_bits).fold(0.0f64, f64::max).max(1e-9) * 1.05;
    let px = |db: f64| L + (db - x_min) / x_span * (W - L - R);
    let py = |mi: f64| T + (1.0 - mi / y_max) * (H - T - B);

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {W} {H}\" font-family=\"sans-serif\" font-size=\"12\">"
    );
    let _ = writeln!(s, "<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>");
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{title}</text>",
        W / 2.0
    );
    // axes
    let _ = writeln!(
        s,
        "<line x1=\"{L}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>",
        H - B,
        W - R,
        H - B
    );
    let _ = writeln!(
        s,
        "<line x1=\"{L}\" y1=\"{T}\" x2=\"{L}\" y2=\"{}\" stroke=\"black\"/>",
        H - B
    );
    for i in 0..=6 {
        let xv = x_min + x_span * i as f64 / 6.0;
        let yv = y_max * i as f64 / 6.0;
        let _ = writeln!(
            s,
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/><text x=\"{0}\" y=\"{3}\" text-anchor=\"middle\">{4:.1}</text>",
            px(xv),
            H - B,
            H - B + 5.0,
            H - B + 18.0,
            xv
        );
        let _ = writeln!(
            s,
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/><text x=\"{3}\" y=\"{4}\" text-anchor=\"end\">{5:.2}</text>",
            L - 5.0,
            py(yv),
            L,
            L - 8.0,
            py(yv) + 4.0,
            yv
        );
    }
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">SNR (dB)</text>",
        (L + W - R) / 2.0,
        H - 10.0
    );
    let _ = writeln!(
        s,
        "<text x=\"16\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">mutual information (bits)</text>",
        (T + H - B) / 2.0,
        (T + H - B) / 2.0
    );
    let points: Vec<String> = rows
        .iter()
        .map(|r| format!("{:.2},{:.2}", px(r.snr_db), py(r.mi_bits)))
        .collect();
    let _ = writeln!(
        s,
        "<polyline points=\"{}\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\"/>",
        points.join(" ")
    );
    s.push_str("</svg>\n");
    s
}

fn init_threads() {
    if let Ok(v) = std::env::var("OBMLC_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

/// Full CLI entry point; returns the process exit code.
pub fn main_with_exit_code() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    init_threads();
    let outcome = match &cli.command {
        Command::Mi(args) => cmd_mi(args).map(|paths| {
            for p in paths {
                println!("wrote {}", p.display());
            }
        }),
        Command::Ber(args) => cmd_ber(args).map(|paths| {
            for p in paths {
                println!("wrote {}", p.display());
            }
        }),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.into())
    }
}
