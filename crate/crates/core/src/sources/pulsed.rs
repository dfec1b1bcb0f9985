use std::f64::consts::PI;
use std::io::{self, Write};

use crate::error::{invalid, non_negative, positive, Result};
use crate::spectral::SpectralGrid;

/// Pulsed squeezed light with a double-Gaussian joint spectral amplitude.
///
/// `sigma_p` sets the anti-diagonal (pump) width and `sigma_c` the
/// diagonal (phase-matching) width.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SqueezedPulsed {
    pub beta: f64,
    pub phase: f64,
    pub sigma_p: f64,
    pub sigma_c: f64,
    pub center_i: f64,
    pub center_ii: f64,
}

impl SqueezedPulsed {
    pub fn new(beta: f64, phase: f64, sigma_p: f64, sigma_c: f64, center_i: f64, center_ii: f64) -> Result<Self> {
        non_negative("beta", beta)?;
        positive("sigma_p", sigma_p)?;
        positive("sigma_c", sigma_c)?;
        if sigma_c < sigma_p {
            return Err(invalid("sigma_c", "must be >= sigma_p (anti-correlated regime)"));
        }
        if !phase.is_finite() {
            return Err(invalid("phase", "must be finite"));
        }
        Ok(Self {
            beta,
            phase,
            sigma_p,
            sigma_c,
            center_i,
            center_ii,
        })
    }

    pub fn pump(&self) -> f64 {
        self.center_i + self.center_ii
    }

    pub fn ratio(&self) -> f64 {
        self.sigma_c / self.sigma_p
    }
}

/// JSA at detunings from the two band centres.
pub fn jsa_detuned(d_i: f64, d_ii: f64, sigma_p: f64, sigma_c: f64) -> f64 {
    let sum = (d_i + d_ii) / sigma_p;
    let diff = (d_i - d_ii) / sigma_c;
    (PI * sigma_p * sigma_c).powf(-0.5) * (-0.25 * (sum * sum + diff * diff)).exp()
}

pub fn jsa_eval(omega_i: f64, omega_ii: f64, src: &SqueezedPulsed) -> f64 {
    jsa_detuned(omega_i - src.center_i, omega_ii - src.center_ii, src.sigma_p, src.sigma_c)
}

/// Width of the single-photon amplitude after tracing out the partner,
/// in the same convention as `GaussianAmplitude::width`.
pub fn marginal_width(sigma_p: f64, sigma_c: f64) -> f64 {
    (0.5 * (sigma_p * sigma_p + sigma_c * sigma_c)).sqrt()
}

/// Writes `omega_I, omega_II, jsi` rows on the two detuning grids.
pub fn write_jsi_csv<W: Write>(mut w: W, src: &SqueezedPulsed, grid_i: &SpectralGrid, grid_ii: &SpectralGrid) -> io::Result<()> {
    writeln!(w, "omega_I,omega_II,jsi")?;
    for x in grid_i.points() {
        for y in grid_ii.points() {
            let g = jsa_detuned(x, y, src.sigma_p, src.sigma_c);
            writeln!(w, "{:.12e},{:.12e},{:.12e}", src.center_i + x, src.center_ii + y, g * g)?;
        }
    }
    Ok(())
}
