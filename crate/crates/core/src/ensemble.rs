//! Monte Carlo ensembles of noisy transforms.
//!
//! Realization `i` of an ensemble always uses realization seed `i`, and every
//! kick it receives is keyed by `(master_seed, i, gate_index, slot)`. Runs are
//! distributed over a rayon pool but their quality factors are collected
//! back in run-index order and reduced sequentially, so the result does not
//! depend on the number of workers.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::network::{build_aqft, run_in_place, NetworkSpec};
use crate::noise::NoiseModel;
use crate::periodicity::{make_periodic_state, peak_targets, PeriodicStateSpec};
use crate::state::{bit_reverse, RegisterSize, StateVector};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub state: PeriodicStateSpec,
    pub m: u32,
    pub noise: NoiseModel,
    pub n_runs: u64,
}

impl ExperimentConfig {
    pub fn new(state: PeriodicStateSpec, m: u32, noise: NoiseModel, n_runs: u64) -> Result<Self> {
        if n_runs == 0 {
            return Err(Error::domain("an ensemble needs at least one run"));
        }
        if m == 0 || m > state.size.qubits() {
            return Err(Error::domain(format!(
                "degree m must be in 1..={}, got {m}",
                state.size.qubits()
            )));
        }
        Ok(Self {
            state,
            m,
            noise,
            n_runs,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleResult {
    pub mean_q: f64,
    /// Sample standard deviation over `√n_runs`.
    pub stderr_q: f64,
    pub n_runs: u64,
    pub per_run_q: Option<Vec<f64>>,
}

/// Worker pool sizing for ensemble execution.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Workers {
    /// The global rayon pool.
    #[default]
    Auto,
    Fixed(usize),
}

impl Workers {
    fn install<T: Send>(self, job: impl FnOnce() -> T + Send) -> Result<T> {
        match self {
            Workers::Auto => Ok(job()),
            Workers::Fixed(n) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n.max(1))
                    .build()
                    .map_err(|e| Error::Resource(format!("cannot start worker pool: {e}")))?;
                Ok(pool.install(job))
            }
        }
    }
}

/// Everything a realization needs, built once per ensemble.
struct Prepared {
    network: NetworkSpec,
    input: StateVector,
    /// Register positions holding the peak-target Fourier indices.
    target_slots: Vec<usize>,
}

impl Prepared {
    fn new(config: &ExperimentConfig) -> Result<Self> {
        let size = config.state.size;
        let network = build_aqft(size, config.m)?;
        let input = make_periodic_state(&config.state)?;
        let target_slots = peak_targets(size, config.state.r)
            .into_iter()
            .map(|c| bit_reverse(c as usize, size.qubits()))
            .collect();
        Ok(Self {
            network,
            input,
            target_slots,
        })
    }

    fn quality(&self, noise: &NoiseModel, realization: u64) -> Result<f64> {
        let mut state = self.input.clone();
        run_in_place(&self.network, &mut state, Some(noise), realization, None)?;
        let amps = state.amplitudes();
        Ok(self.target_slots.iter().map(|&i| amps[i].norm_sqr()).sum())
    }
}

/// Welford mean and n−1 variance, accumulated in order.
fn summarize(values: &[f64]) -> (f64, f64) {
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for (i, &x) in values.iter().enumerate() {
        let delta = x - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (x - mean);
    }
    let n = values.len();
    let stderr = if n > 1 {
        (m2 / (n - 1) as f64).sqrt() / (n as f64).sqrt()
    } else {
        0.0
    };
    (mean, stderr)
}

pub fn run_ensemble(config: &ExperimentConfig) -> Result<EnsembleResult> {
    run_ensemble_with(config, Workers::Auto, false)
}

pub fn run_ensemble_with(
    config: &ExperimentConfig,
    workers: Workers,
    keep_runs: bool,
) -> Result<EnsembleResult> {
    let prepared = Prepared::new(config)?;
    let per_run = workers.install(|| {
        (0..config.n_runs)
            .into_par_iter()
            .map(|i| prepared.quality(&config.noise, i))
            .collect::<Result<Vec<f64>>>()
    })??;
    let (mean_q, stderr_q) = summarize(&per_run);
    Ok(EnsembleResult {
        mean_q,
        stderr_q,
        n_runs: config.n_runs,
        per_run_q: keep_runs.then_some(per_run),
    })
}

/// One grid point of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    #[serde(rename = "L")]
    pub l_bits: u32,
    pub m: u32,
    pub r: u64,
    pub l: u64,
    pub delta: f64,
    pub n_runs: u64,
    #[serde(rename = "mean_Q")]
    pub mean_q: f64,
    #[serde(rename = "stderr_Q")]
    pub stderr_q: f64,
}

impl SweepRow {
    fn from_result(config: &ExperimentConfig, result: &EnsembleResult) -> Self {
        Self {
            l_bits: config.state.size.qubits(),
            m: config.m,
            r: config.state.r,
            l: config.state.l,
            delta: config.noise.delta,
            n_runs: result.n_runs,
            mean_q: result.mean_q,
            stderr_q: result.stderr_q,
        }
    }
}

/// Shared settings of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSettings {
    pub n_runs: u64,
    pub master_seed: u64,
    pub workers: Workers,
}

/// Q over an `m × δ` grid, `m` outer, `δ` inner.
pub fn sweep_m_delta(
    state: PeriodicStateSpec,
    m_values: &[u32],
    delta_values: &[f64],
    settings: SweepSettings,
) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::with_capacity(m_values.len() * delta_values.len());
    for &m in m_values {
        for &delta in delta_values {
            let noise = NoiseModel::new(delta, settings.master_seed)?;
            let config = ExperimentConfig::new(state, m, noise, settings.n_runs)?;
            let result = run_ensemble_with(&config, settings.workers, false)?;
            rows.push(SweepRow::from_result(&config, &result));
        }
    }
    Ok(rows)
}

/// How the period is chosen for each register size in [`sweep_l`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PeriodRule {
    Fixed(u64),
    /// `r = max(1, round(2^L / ratio))`.
    FixedRatio(f64),
}

impl PeriodRule {
    pub fn period(self, size: RegisterSize) -> u64 {
        match self {
            PeriodRule::Fixed(r) => r,
            PeriodRule::FixedRatio(ratio) => ((size.dim() as f64 / ratio).round() as u64).max(1),
        }
    }
}

/// Exact-transform (`m = L`) Q for each register size and kick width, `L`
/// outer, `δ` inner.
pub fn sweep_l(
    l_values: &[u32],
    delta_values: &[f64],
    rule: PeriodRule,
    offset: u64,
    settings: SweepSettings,
) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for &bits in l_values {
        let size = RegisterSize::new(bits)?;
        let state = PeriodicStateSpec::new(size, rule.period(size), offset)?;
        rows.extend(sweep_m_delta(state, &[bits], delta_values, settings)?);
    }
    Ok(rows)
}

/// CSV with columns `L,m,r,l,delta,n_runs,mean_Q,stderr_Q`.
pub fn write_rows_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    if rows.is_empty() {
        wtr.write_record(["L", "m", "r", "l", "delta", "n_runs", "mean_Q", "stderr_Q"])?;
    }
    for row in rows {
        wtr.serialize(row)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_rows_json<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    serde_json::to_writer_pretty(out, rows)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(bits: u32, r: u64, l: u64) -> PeriodicStateSpec {
        PeriodicStateSpec::new(RegisterSize::new(bits).unwrap(), r, l).unwrap()
    }

    fn config(bits: u32, m: u32, delta: f64, n: u64) -> ExperimentConfig {
        ExperimentConfig::new(
            state(bits, 10, 8),
            m,
            NoiseModel::new(delta, 2024).unwrap(),
            n,
        )
        .unwrap()
    }

    #[test]
    fn welford_summary() {
        assert_eq!(summarize(&[0.3; 50]), (0.3, 0.0));
        let (mean, se) = summarize(&[1.0, 2.0, 3.0, 4.0]);
        assert!((mean - 2.5).abs() < 1e-15);
        let sd = (5.0f64 / 3.0).sqrt();
        assert!((se - sd / 2.0).abs() < 1e-15);
        assert_eq!(summarize(&[0.7]), (0.7, 0.0));
    }

    #[test]
    fn noiseless_ensemble_is_deterministic() {
        let result = run_ensemble(&config(9, 9, 0.0, 64)).unwrap();
        assert_eq!(result.stderr_q, 0.0);
        assert!((result.mean_q - 0.7776132152395073).abs() < 1e-10);
    }

    #[test]
    fn config_validation() {
        let st = state(6, 10, 8);
        let noise = NoiseModel::new(0.1, 0).unwrap();
        assert!(ExperimentConfig::new(st, 3, noise, 0).is_err());
        assert!(ExperimentConfig::new(st, 7, noise, 10).is_err());
        assert!(ExperimentConfig::new(st, 0, noise, 10).is_err());
    }

    #[test]
    fn results_ignore_worker_count() {
        let cfg = config(8, 6, 0.3, 97);
        let one = run_ensemble_with(&cfg, Workers::Fixed(1), true).unwrap();
        let three = run_ensemble_with(&cfg, Workers::Fixed(3), true).unwrap();
        let auto = run_ensemble_with(&cfg, Workers::Auto, true).unwrap();
        assert_eq!(one, three);
        assert_eq!(one, auto);
        assert!(one.stderr_q > 0.0);
    }

    #[test]
    fn ensembles_extend_as_prefixes() {
        let short = run_ensemble_with(&config(7, 5, 0.4, 20), Workers::Auto, true).unwrap();
        let long = run_ensemble_with(&config(7, 5, 0.4, 50), Workers::Auto, true).unwrap();
        assert_eq!(short.per_run_q.unwrap()[..], long.per_run_q.unwrap()[..20]);
    }

    #[test]
    fn noise_lowers_quality() {
        let clean = run_ensemble(&config(9, 9, 0.0, 1)).unwrap().mean_q;
        let noisy = run_ensemble(&config(9, 9, 0.3, 400)).unwrap();
        assert!(noisy.mean_q < clean - 5.0 * noisy.stderr_q);
    }

    #[test]
    fn stderr_scales_with_run_count() {
        let small = run_ensemble(&config(8, 8, 0.3, 400)).unwrap().stderr_q;
        let large = run_ensemble(&config(8, 8, 0.3, 1600)).unwrap().stderr_q;
        let ratio = small / large;
        assert!(ratio > 2.0 / 1.5 && ratio < 2.0 * 1.5, "ratio {ratio}");
    }

    #[test]
    fn sweep_shapes() {
        let settings = SweepSettings {
            n_runs: 5,
            master_seed: 1,
            workers: Workers::Auto,
        };
        let rows = sweep_m_delta(state(6, 10, 8), &[2, 4, 6], &[0.0, 0.2], settings).unwrap();
        assert_eq!(rows.len(), 6);
        assert_eq!((rows[1].m, rows[1].delta), (2, 0.2));

        let rows = sweep_l(
            &[5, 6],
            &[0.1, 0.2, 0.3],
            PeriodRule::Fixed(10),
            8,
            settings,
        )
        .unwrap();
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().all(|r| r.m == r.l_bits));

        assert_eq!(
            PeriodRule::FixedRatio(51.2).period(RegisterSize::new(9).unwrap()),
            10
        );
        assert!(sweep_m_delta(state(6, 10, 8), &[7], &[0.0], settings).is_err());
    }

    #[test]
    fn csv_header_is_stable() {
        let settings = SweepSettings {
            n_runs: 3,
            master_seed: 1,
            workers: Workers::Auto,
        };
        let rows = sweep_m_delta(state(5, 4, 1), &[5], &[0.0], settings).unwrap();
        let mut buf = Vec::new();
        write_rows_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text.lines().next().unwrap(),
            "L,m,r,l,delta,n_runs,mean_Q,stderr_Q"
        );
        assert!(text.lines().nth(1).unwrap().starts_with("5,5,4,1,0.0,3,"));

        let mut empty = Vec::new();
        write_rows_csv(&[], &mut empty).unwrap();
        assert_eq!(
            String::from_utf8(empty).unwrap(),
            "L,m,r,l,delta,n_runs,mean_Q,stderr_Q\n"
        );

        let mut json = Vec::new();
        write_rows_json(&rows, &mut json).unwrap();
        let value: serde_json::Value = serde_json::from_slice(&json).unwrap();
        assert_eq!(value[0]["mean_Q"], rows[0].mean_q);
    }
}
