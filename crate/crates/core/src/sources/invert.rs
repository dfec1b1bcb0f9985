//! Gain parameters that produce a requested photon budget.

use super::cw::{photon_rate_cw_series, SqueezedCW};
use super::schmidt::SchmidtBasis;
use crate::error::{invalid, non_negative, Result};

/// Bisection on an increasing `f` with `f(0) = 0`.
fn invert_increasing<F: Fn(f64) -> f64>(f: F, target: f64, name: &'static str) -> Result<f64> {
    non_negative(name, target)?;
    if target == 0.0 {
        return Ok(0.0);
    }
    let mut hi = 1.0;
    while f(hi) < target {
        hi *= 2.0;
        if hi > 1e3 {
            return Err(invalid(name, format!("{target:e} needs a gain above 1e3")));
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `|beta_bar|` giving `rate` photons per second in each band.
pub fn beta_bar_for_photon_rate(src: &SqueezedCW, rate: f64) -> Result<f64> {
    invert_increasing(|b| photon_rate_cw_series(&src.with_beta(b)), rate, "photon_rate")
}

/// `|beta|` giving a mean of `n` photons per band and pulse.
pub fn beta_for_photon_number(basis: &SchmidtBasis, n: f64) -> Result<f64> {
    let p = basis.p();
    invert_increasing(|b| p.iter().map(|p| (b * p.sqrt()).sinh().powi(2)).sum(), n, "photons_per_pulse")
}
