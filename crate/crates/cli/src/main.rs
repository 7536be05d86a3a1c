//! `aqft`: transforms, spectra, quality sweeps and bound tables.
//!
//! Every subcommand writes a CSV to `--out` and a JSON manifest next to it
//! (`<out>.manifest.json`). Exit codes: 0 success, 1 I/O failure, 2 usage.

mod commands;
mod manifest;
mod parse;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::parse::{parse_f64_list, parse_u32_list, F64List, U32List};

/// Seed used when neither `--seed` nor the environment provides one.
pub const DEFAULT_SEED: u64 = 0x0A0F_7000;

#[derive(Debug, Parser)]
#[command(
    name = "aqft",
    version,
    about = "Approximate quantum Fourier transform under dephasing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Transform one periodic state and write amplitude and phase per Fourier index.
    Transform(TransformArgs),
    /// Mean quality factor of one noisy ensemble.
    Quality(QualityArgs),
    /// Quality factor over a grid of degrees m and kick widths.
    Sweep(SweepArgs),
    /// Exact-transform quality factor as a function of register size.
    Scaling(ScalingArgs),
    /// Tabulate Δ_max, success-probability bounds, minimum orders and run ratios.
    Bounds(BoundsArgs),
}

#[derive(Debug, Args)]
struct Common {
    /// Master seed of the kick streams.
    #[arg(long, env = "AQFT_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Output CSV path; the manifest goes to `<out>.manifest.json`.
    #[arg(long)]
    out: std::path::PathBuf,
}

#[derive(Debug, Args)]
struct StateArgs {
    /// Register size (qubits).
    #[arg(long = "L")]
    l_bits: u32,
    /// Period of the input state.
    #[arg(long, default_value_t = 10)]
    r: u64,
    /// Offset of the input state, smaller than r.
    #[arg(long, default_value_t = 8)]
    l: u64,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[command(flatten)]
    state: StateArgs,
    /// AQFT degree; defaults to L (exact transform).
    #[arg(long)]
    m: Option<u32>,
    /// Kick width in radians; 0 disables noise.
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    /// Which realization of the kick streams to use.
    #[arg(long, default_value_t = 0)]
    realization: u64,
    /// Also write `c,probability,is_peak_target` here.
    #[arg(long)]
    spectrum_out: Option<std::path::PathBuf>,
    /// Dump the applied kicks as JSON lines.
    #[arg(long)]
    trace: Option<std::path::PathBuf>,
    /// Dump the gate program as JSON.
    #[arg(long)]
    network_json: Option<std::path::PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
pub struct QualityArgs {
    #[command(flatten)]
    state: StateArgs,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    /// Number of realizations.
    #[arg(long, default_value_t = 1000)]
    runs: u64,
    /// Worker threads (default: all cores).
    #[arg(long)]
    workers: Option<usize>,
    /// Also write the per-run quality factors to the JSON result.
    #[arg(long)]
    json: Option<std::path::PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Degrees to scan, e.g. `1-9` or `3,5,9`; defaults to 1..=L.
    #[arg(long, value_parser = parse_u32_list)]
    m_values: Option<U32List>,
    /// Kick widths, comma separated.
    #[arg(long, value_parser = parse_f64_list, default_value = "0,0.1,0.2,0.3")]
    deltas: F64List,
    #[arg(long, default_value_t = 1000)]
    runs: u64,
    #[arg(long)]
    workers: Option<usize>,
    /// Also write the table as JSON.
    #[arg(long)]
    json: Option<std::path::PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
pub struct ScalingArgs {
    /// Register sizes, e.g. `4-14`.
    #[arg(long = "L-values", value_parser = parse_u32_list)]
    l_values: U32List,
    #[arg(long, value_parser = parse_f64_list, default_value = "0.1,0.2,0.3,0.4,0.5")]
    deltas: F64List,
    /// Fixed period for every L.
    #[arg(long, default_value_t = 10, conflicts_with = "ratio")]
    r: u64,
    /// Keep 2^L/r fixed instead of r.
    #[arg(long)]
    ratio: Option<f64>,
    #[arg(long, default_value_t = 8)]
    l: u64,
    #[arg(long, default_value_t = 1000)]
    runs: u64,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    json: Option<std::path::PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Register sizes, e.g. `16` or `4-32`.
    #[arg(long = "L-range", value_parser = parse_u32_list)]
    l_range: U32List,
    /// Degrees; defaults to 1..=L for each L. Degrees above L are skipped.
    #[arg(long = "m-range", value_parser = parse_u32_list)]
    m_range: Option<U32List>,
    /// Largest L for the empirical run-ratio constant reported in the manifest.
    #[arg(long, default_value_t = 64)]
    c_max_l: u32,
    /// Output CSV path; the manifest goes to `<out>.manifest.json`.
    #[arg(long)]
    out: std::path::PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Transform(args) => commands::transform(args),
        Command::Quality(args) => commands::quality(args),
        Command::Sweep(args) => commands::sweep(args),
        Command::Scaling(args) => commands::scaling(args),
        Command::Bounds(args) => commands::bounds(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("aqft: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
