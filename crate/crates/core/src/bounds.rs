//! Closed-form success-probability bounds for period estimation with the
//! exact and approximate transforms.
//!
//! Naming: `L` register size, `m` AQFT degree, `r` period. The worst-case
//! phase the degree-`m` transform drops is
//!
//! ```text
//! Δ_max = (2π / 2^m) (L - m - 1 + 2^(m-L))
//! ```
//!
//! and a non-vanishing success probability needs `Δ_max < π/2`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::Serialize;

use crate::{Error, Result};

/// `4/π²`, the QFT success probability bound.
pub const QFT_SUCCESS_BOUND: f64 = 4.0 / (PI * PI);

const EIGHT_OVER_PI_SQ: f64 = 8.0 / (PI * PI);

fn check_degree(l: u32, m: u32) -> Result<()> {
    if m == 0 || m > l {
        return Err(Error::domain(format!(
            "degree m must be in 1..={l}, got {m}"
        )));
    }
    Ok(())
}

/// Worst-case dropped phase of the degree-`m` transform.
pub fn delta_max(l: u32, m: u32) -> f64 {
    let (l, m) = (l as i32, m as i32);
    2.0 * PI / 2f64.powi(m) * ((l - m - 1) as f64 + 2f64.powi(m - l))
}

/// Large-`L` form `(2π / 2^m)(L - m)`.
pub fn delta_max_large_l(l: u32, m: u32) -> f64 {
    2.0 * PI / 2f64.powi(m as i32) * (l as f64 - m as f64)
}

/// Phase the degree-`m` transform drops from the `(a, c)` matrix element:
/// `(2π/2^L) Σ a_j c_k 2^(j+k)` over bit pairs with `j + k < L - m`.
///
/// This is `2π ac/2^L` minus the kept terms, with the `j + k >= L` terms
/// (whole multiples of `2π`) left out, so it lies in `[0, Δ_max]`.
pub fn phase_defect(a: u64, c: u64, l: u32, m: u32) -> f64 {
    let cutoff = l.saturating_sub(m);
    let mut sum: u128 = 0;
    for j in 0..cutoff {
        if (a >> j) & 1 == 0 {
            continue;
        }
        for k in 0..cutoff - j {
            if (c >> k) & 1 == 1 {
                sum += 1u128 << (j + k);
            }
        }
    }
    2.0 * PI * sum as f64 / 2f64.powi(l as i32)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QftBound {
    /// `(r / 2^{2L}) / sin²(π r / 2^{L+1})`, bound on a single peak.
    pub per_peak: f64,
    /// `r` times the per-peak bound.
    pub total: f64,
    /// The small-`r/2^L` limit of `total`, `4/π²`.
    pub total_asymptotic: f64,
}

pub fn prob_qft_lower_bound(l: u32, r: u64) -> QftBound {
    let s = 2f64.powi(l as i32);
    let r = r as f64;
    let per_peak = (r / (s * s)) / (FRAC_PI_2 * r / s).sin().powi(2);
    QftBound {
        per_peak,
        total: r * per_peak,
        total_asymptotic: QFT_SUCCESS_BOUND,
    }
}

/// `(8/π²) sin²((π/2 − Δ_max)/2)`, or 0 once `Δ_max >= π/2`.
pub fn prob_aqft_lower_bound(l: u32, m: u32) -> Result<f64> {
    check_degree(l, m)?;
    Ok(aqft_bound_from_delta(delta_max(l, m)))
}

fn aqft_bound_from_delta(delta: f64) -> f64 {
    if delta >= FRAC_PI_2 {
        return 0.0;
    }
    EIGHT_OVER_PI_SQ * (0.5 * (FRAC_PI_2 - delta)).sin().powi(2)
}

/// The finite-register form `2 (r²/2^{2L}) sin²((π/2 − Δ_max)/2) / sin²(π r/2^{L+1})`.
pub fn prob_aqft_lower_bound_finite(l: u32, m: u32, r: u64) -> Result<f64> {
    check_degree(l, m)?;
    let delta = delta_max(l, m);
    if delta >= FRAC_PI_2 {
        return Ok(0.0);
    }
    let s = 2f64.powi(l as i32);
    let r = r as f64;
    Ok(
        2.0 * r * r / (s * s) * (0.5 * (FRAC_PI_2 - delta)).sin().powi(2)
            / (FRAC_PI_2 * r / s).sin().powi(2),
    )
}

/// Large-`L` form `(8/π²) sin²((π/4)(m/L))`.
pub fn prob_aqft_lower_bound_asymptotic(l: u32, m: u32) -> f64 {
    EIGHT_OVER_PI_SQ * (FRAC_PI_4 * m as f64 / l as f64).sin().powi(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MinOrder {
    /// Smallest integer `m > log2(L) + 2`.
    pub asymptotic: u32,
    /// Smallest `m` with `Δ_max(L, m) < π/2`.
    pub exact: u32,
    /// Smallest `m` with the large-`L` form `(2π/2^m)(L-m) < π/2`.
    pub large_l: u32,
}

pub fn min_order(l: u32) -> Result<MinOrder> {
    if l == 0 {
        return Err(Error::domain("register size must be positive"));
    }
    let first = |pred: &dyn Fn(u32) -> bool| (1..=l).find(|&m| pred(m)).unwrap_or(l);
    Ok(MinOrder {
        asymptotic: l.ilog2() + 3,
        exact: first(&|m| delta_max(l, m) < FRAC_PI_2),
        large_l: first(&|m| delta_max_large_l(l, m) < FRAC_PI_2),
    })
}

/// `k'/k = ln(1 − 4/π²) / ln(1 − p')` with `p' = (8/π²) sin²((π/4)(m/L))`:
/// how many more AQFT runs are needed to match the QFT's success odds.
pub fn run_ratio(l: u32, m: u32) -> Result<f64> {
    check_degree(l, m)?;
    let delta = delta_max(l, m);
    if delta >= FRAC_PI_2 {
        return Err(Error::UndefinedRatio(format!(
            "Δ_max({l}, {m}) = {delta:.4} >= π/2: degree below the minimum order {}",
            min_order(l)?.exact
        )));
    }
    let p_prime = prob_aqft_lower_bound_asymptotic(l, m);
    if p_prime <= 0.0 {
        return Err(Error::UndefinedRatio(format!("p' = 0 at L={l}, m={m}")));
    }
    Ok((1.0 - QFT_SUCCESS_BOUND).ln() / (1.0 - p_prime).ln())
}

/// Largest `(k'/k) / (L/m)³` over `1 <= L <= max_l` and every valid `m`,
/// with the `(L, m)` where it occurs.
pub fn empirical_c(max_l: u32) -> (f64, u32, u32) {
    let mut best = (0.0, 1, 1);
    for l in 1..=max_l {
        for m in 1..=l {
            if let Ok(ratio) = run_ratio(l, m) {
                let scaled = ratio / (l as f64 / m as f64).powi(3);
                if scaled > best.0 {
                    best = (scaled, l, m);
                }
            }
        }
    }
    best
}

/// One line of a bound table; `run_ratio` is `None` where it is undefined.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRow {
    #[serde(rename = "L")]
    pub l: u32,
    pub m: u32,
    pub delta_max: f64,
    pub prob_aqft_bound: f64,
    pub run_ratio: Option<f64>,
    pub prob_aqft_bound_asymptotic: f64,
    pub min_order_exact: u32,
    pub min_order_asymptotic: u32,
    pub valid: bool,
}

pub fn bound_row(l: u32, m: u32) -> Result<BoundRow> {
    check_degree(l, m)?;
    let order = min_order(l)?;
    let ratio = run_ratio(l, m).ok();
    Ok(BoundRow {
        l,
        m,
        delta_max: delta_max(l, m),
        prob_aqft_bound: prob_aqft_lower_bound(l, m)?,
        run_ratio: ratio,
        prob_aqft_bound_asymptotic: prob_aqft_lower_bound_asymptotic(l, m),
        min_order_exact: order.exact,
        min_order_asymptotic: order.asymptotic,
        valid: ratio.is_some(),
    })
}
