use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use aqft_core::bounds::{bound_row, empirical_c};
use aqft_core::ensemble::{
    run_ensemble_with, sweep_l, sweep_m_delta, write_rows_csv, write_rows_json, PeriodRule,
    SweepRow, SweepSettings, Workers,
};
use aqft_core::network::{build_aqft, read_amplitudes, run_traced};
use aqft_core::periodicity::{make_periodic_state, quality_factor, spectrum};
use aqft_core::{ExperimentConfig, NoiseModel, PeriodicStateSpec, RegisterSize};
use serde_json::json;

use crate::manifest::{manifest_path, ManifestBuilder};
use crate::{BoundsArgs, QualityArgs, ScalingArgs, StateArgs, SweepArgs, TransformArgs};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Io(msg) => f.write_str(msg),
        }
    }
}

impl From<aqft_core::Error> for CliError {
    fn from(err: aqft_core::Error) -> Self {
        use aqft_core::Error as E;
        match err {
            E::Domain(_) | E::Contract(_) | E::UndefinedRatio(_) => {
                CliError::Usage(err.to_string())
            }
            E::Resource(_) | E::Io(_) | E::Csv(_) | E::Json(_) => CliError::Io(err.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(err: csv::Error) -> Self {
        CliError::Io(err.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::Io(err.to_string())
    }
}

type CliResult<T = ()> = Result<T, CliError>;

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", path.display())))
}

fn write_manifest(
    builder: ManifestBuilder,
    out: &Path,
    mut extra_outputs: Vec<PathBuf>,
) -> CliResult {
    let mut outputs = vec![out.to_path_buf()];
    outputs.append(&mut extra_outputs);
    let manifest = builder.finish(outputs);
    let mut w = create(&manifest_path(out))?;
    serde_json::to_writer_pretty(&mut w, &manifest)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

fn periodic_spec(args: &StateArgs) -> CliResult<PeriodicStateSpec> {
    let size = RegisterSize::new(args.l_bits)?;
    Ok(PeriodicStateSpec::new(size, args.r, args.l)?)
}

fn workers(n: Option<usize>) -> CliResult<Workers> {
    match n {
        None => Ok(Workers::Auto),
        Some(0) => Err(CliError::Usage("--workers must be at least 1".into())),
        Some(n) => Ok(Workers::Fixed(n)),
    }
}

fn state_params(args: &StateArgs) -> serde_json::Value {
    json!({ "L": args.l_bits, "r": args.r, "l": args.l })
}

pub fn transform(args: TransformArgs) -> CliResult {
    let spec = periodic_spec(&args.state)?;
    let m = args.m.unwrap_or(spec.size.qubits());
    let noise = NoiseModel::new(args.delta, args.common.seed)?;
    let network = build_aqft(spec.size, m)?;

    let mut params = state_params(&args.state);
    params["m"] = json!(m);
    params["delta"] = json!(args.delta);
    params["realization"] = json!(args.realization);
    let mut manifest = ManifestBuilder::new("transform", params, Some(args.common.seed));
    if let Some(w) = spec.sparsity_warning() {
        manifest.warn(w);
    }

    let input = make_periodic_state(&spec)?;
    let (output, trace) = run_traced(&network, &input, Some(&noise), args.realization)?;
    let amplitudes = read_amplitudes(&output);
    let probs: Vec<f64> = amplitudes.iter().map(|z| z.norm_sqr()).collect();
    let result = spectrum(probs, &spec)?;
    let quality = quality_factor(&result);

    let mut wtr = csv::Writer::from_writer(create(&args.common.out)?);
    wtr.write_record(["c", "abs_amplitude", "phase", "is_peak"])?;
    for (c, z) in amplitudes.iter().enumerate() {
        let is_peak = quality.per_peak.contains_key(&(c as u64));
        wtr.serialize((c, z.norm(), z.arg(), is_peak))?;
    }
    wtr.flush()?;

    let mut extra_outputs = Vec::new();
    if let Some(path) = &args.spectrum_out {
        result.write_csv(create(path)?)?;
        extra_outputs.push(path.clone());
    }
    if let Some(path) = &args.trace {
        let mut w = create(path)?;
        trace.write_json_lines(&mut w)?;
        w.flush()?;
        extra_outputs.push(path.clone());
    }
    if let Some(path) = &args.network_json {
        let mut w = create(path)?;
        w.write_all(network.to_json()?.as_bytes())?;
        w.flush()?;
        extra_outputs.push(path.clone());
    }
    manifest
        .extra(json!({ "Q": quality.q, "gates": network.gates.len(), "b_gates": network.num_b() }));
    write_manifest(manifest, &args.common.out, extra_outputs)
}

pub fn quality(args: QualityArgs) -> CliResult {
    let spec = periodic_spec(&args.state)?;
    let m = args.m.unwrap_or(spec.size.qubits());
    let noise = NoiseModel::new(args.delta, args.common.seed)?;
    let config = ExperimentConfig::new(spec, m, noise, args.runs)?;

    let mut params = state_params(&args.state);
    params["m"] = json!(m);
    params["delta"] = json!(args.delta);
    params["runs"] = json!(args.runs);
    let mut manifest = ManifestBuilder::new("quality", params, Some(args.common.seed));
    if let Some(w) = spec.sparsity_warning() {
        manifest.warn(w);
    }

    let result = run_ensemble_with(&config, workers(args.workers)?, args.json.is_some())?;
    let row = SweepRow {
        l_bits: spec.size.qubits(),
        m,
        r: spec.r,
        l: spec.l,
        delta: args.delta,
        n_runs: result.n_runs,
        mean_q: result.mean_q,
        stderr_q: result.stderr_q,
    };
    let mut w = create(&args.common.out)?;
    write_rows_csv(std::slice::from_ref(&row), &mut w)?;
    w.flush()?;

    let mut extra_outputs = Vec::new();
    if let Some(path) = &args.json {
        let mut w = create(path)?;
        serde_json::to_writer_pretty(&mut w, &json!({ "config": config, "result": result }))?;
        w.flush()?;
        extra_outputs.push(path.clone());
    }
    write_manifest(manifest, &args.common.out, extra_outputs)
}

fn write_table(
    rows: &[SweepRow],
    out: &Path,
    json_path: Option<&PathBuf>,
) -> CliResult<Vec<PathBuf>> {
    let mut w = create(out)?;
    write_rows_csv(rows, &mut w)?;
    w.flush()?;
    let mut extra = Vec::new();
    if let Some(path) = json_path {
        let mut w = create(path)?;
        write_rows_json(rows, &mut w)?;
        w.flush()?;
        extra.push(path.clone());
    }
    Ok(extra)
}

pub fn sweep(args: SweepArgs) -> CliResult {
    let spec = periodic_spec(&args.state)?;
    let m_values = args
        .m_values
        .clone()
        .map(|list| list.0)
        .unwrap_or_else(|| (1..=spec.size.qubits()).collect());

    let mut params = state_params(&args.state);
    params["m_values"] = json!(m_values);
    params["deltas"] = json!(args.deltas.0);
    params["runs"] = json!(args.runs);
    let mut manifest = ManifestBuilder::new("sweep", params, Some(args.common.seed));
    if let Some(w) = spec.sparsity_warning() {
        manifest.warn(w);
    }

    let settings = SweepSettings {
        n_runs: args.runs,
        master_seed: args.common.seed,
        workers: workers(args.workers)?,
    };
    let rows = sweep_m_delta(spec, &m_values, &args.deltas.0, settings)?;
    let extra = write_table(&rows, &args.common.out, args.json.as_ref())?;
    write_manifest(manifest, &args.common.out, extra)
}

pub fn scaling(args: ScalingArgs) -> CliResult {
    let rule = match args.ratio {
        Some(ratio) if ratio > 0.0 => PeriodRule::FixedRatio(ratio),
        Some(ratio) => {
            return Err(CliError::Usage(format!(
                "--ratio must be positive, got {ratio}"
            )))
        }
        None => PeriodRule::Fixed(args.r),
    };
    let params = json!({
        "L_values": args.l_values.0,
        "deltas": args.deltas.0,
        "r": args.ratio.is_none().then_some(args.r),
        "ratio": args.ratio,
        "l": args.l,
        "runs": args.runs,
    });
    let mut manifest = ManifestBuilder::new("scaling", params, Some(args.common.seed));
    for &bits in &args.l_values.0 {
        let size = RegisterSize::new(bits)?;
        if let Ok(spec) = PeriodicStateSpec::new(size, rule.period(size), args.l) {
            if let Some(w) = spec.sparsity_warning() {
                manifest.warn(w);
            }
        }
    }

    let settings = SweepSettings {
        n_runs: args.runs,
        master_seed: args.common.seed,
        workers: workers(args.workers)?,
    };
    let rows = sweep_l(&args.l_values.0, &args.deltas.0, rule, args.l, settings)?;
    let extra = write_table(&rows, &args.common.out, args.json.as_ref())?;
    write_manifest(manifest, &args.common.out, extra)
}

pub fn bounds(args: BoundsArgs) -> CliResult {
    let params = json!({
        "L_range": args.l_range.0,
        "m_range": args.m_range.as_ref().map(|list| &list.0),
        "c_max_L": args.c_max_l,
    });
    let mut manifest = ManifestBuilder::new("bounds", params, None);

    let mut wtr = csv::Writer::from_writer(create(&args.out)?);
    let mut wrote_any = false;
    for &l in &args.l_range.0 {
        RegisterSize::new(l)
            .map_err(|_| CliError::Usage(format!("L must be in 1..=24, got {l}")))?;
        let ms: Vec<u32> = match &args.m_range {
            Some(ms) => ms.0.iter().copied().filter(|&m| m >= 1 && m <= l).collect(),
            None => (1..=l).collect(),
        };
        for m in ms {
            wtr.serialize(bound_row(l, m)?)?;
            wrote_any = true;
        }
    }
    if !wrote_any {
        return Err(CliError::Usage(
            "no (L, m) pair with 1 <= m <= L in the requested ranges".into(),
        ));
    }
    wtr.flush()?;

    let (c, at_l, at_m) = empirical_c(args.c_max_l);
    manifest.extra(json!({ "empirical_C": c, "empirical_C_at": { "L": at_l, "m": at_m } }));
    write_manifest(manifest, &args.out, Vec::new())
}
