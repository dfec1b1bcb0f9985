//! Peak population of the intermediate level |b>, the yardstick for
//! whether lowest-order perturbation theory can be trusted.
//!
//! In first order the |b> amplitude is `int dw/sqrt(2pi) phi(w) e^{-iwt} / (z - w)`
//! with `z = w_ba - i Gamma_b/2`. For pulses this is evaluated on a lattice
//! with time-dependent sinc weights; CW light is stationary and needs no
//! time grid.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{positive, Result};
use crate::sources::{Band, ClassicalCW, ClassicalPulsed, SchmidtBasis, SchmidtDecomposition, SqueezedCW};
use crate::spectral::{gaussian_amp, green, pole_time_weights, GaussianAmplitude, GradedQuad, SpectralGrid};
use crate::system::FourLevelSystem;

pub const TIME_POINTS: usize = 241;

pub enum PopulationSource<'a> {
    ClassicalCw(&'a ClassicalCW),
    SqueezedCw(&'a SqueezedCW),
    ClassicalPulsed(&'a ClassicalPulsed),
    SqueezedPulsed(&'a SchmidtDecomposition),
}

/// Times from `-6/sigma` to `6/sigma + 10/Gamma_b`, so the decay tail is seen.
pub fn time_grid(sigma: f64, gamma_b: f64) -> Vec<f64> {
    let t0 = -6.0 / sigma;
    let t1 = 6.0 / sigma + 10.0 / gamma_b;
    (0..TIME_POINTS)
        .map(|k| t0 + (t1 - t0) * k as f64 / (TIME_POINTS - 1) as f64)
        .collect()
}

/// `|Y(t)|^2` for each mode, `Y(t) = int dx/sqrt(2pi) f(x) e^{-ixt}/(z - x)`.
#[derive(Clone, Debug)]
pub struct ModeResponse {
    pub times: Vec<f64>,
    /// Indexed `[t][n]`.
    pub abs_sq: Vec<Vec<f64>>,
}

impl ModeResponse {
    pub fn new(lattice: &SpectralGrid, modes: &[&[f64]], z: Complex64, times: Vec<f64>) -> Result<Self> {
        let norm = 1.0 / (2.0 * PI);
        let abs_sq = times
            .iter()
            .map(|&t| {
                let w = pole_time_weights(lattice, z, t)?;
                Ok(modes
                    .iter()
                    .map(|f| {
                        let y: Complex64 = w.iter().zip(f.iter()).map(|(w, f)| w * f).sum();
                        y.norm_sqr() * norm
                    })
                    .collect())
            })
            .collect::<Result<Vec<Vec<f64>>>>()?;
        Ok(Self { times, abs_sq })
    }

    /// Schmidt modes of band I for light centred at `center_i`.
    pub fn for_basis(basis: &SchmidtBasis, sys: &FourLevelSystem, center_i: f64) -> Result<Self> {
        let modes: Vec<&[f64]> = (0..basis.n_modes()).map(|n| basis.mode_i(n)).collect();
        let z = Complex64::new(sys.omega_ba() - center_i, -0.5 * sys.gamma_b());
        let (sigma_p, _) = basis.widths();
        Self::new(basis.grid_i(), &modes, z, time_grid(sigma_p, sys.gamma_b()))
    }

    /// Peak population for squeezed light built on the same basis.
    pub fn population(&self, dec: &SchmidtDecomposition, kappa: f64, a_eff: f64) -> f64 {
        let w: Vec<f64> = dec.s().iter().map(|s| s * s).collect();
        kappa / a_eff * self.peak(&w)
    }

    /// `max_t sum_n weights_n |Y_n(t)|^2`.
    pub fn peak(&self, weights: &[f64]) -> f64 {
        self.abs_sq
            .iter()
            .map(|row| row.iter().zip(weights).map(|(y, w)| y * w).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

/// Peak `<sigma_bb>` for the given light. `kappa` is the one-photon coupling
/// `w |e.mu_ba|^2 / (2 eps0 c hbar)`.
pub fn max_intermediate_population(
    src: PopulationSource<'_>,
    sys: &FourLevelSystem,
    kappa: f64,
    a_eff: f64,
) -> Result<f64> {
    positive("a_eff", a_eff)?;
    let gb = sys.gamma_b();
    match src {
        PopulationSource::ClassicalCw(s) => {
            let g = green(s.center_i, &sys.green_ba())?;
            Ok(s.flux_i * kappa * g.norm_sqr())
        }
        PopulationSource::SqueezedCw(s) => {
            if s.beta_bar == 0.0 {
                return Ok(0.0);
            }
            let z = Complex64::new(sys.omega_ba() - s.center_i, -0.5 * gb);
            let w = s.pmf_width;
            let q = GradedQuad::new(-12.0 * w, 12.0 * w)
                .feature(z.re, 0.5 * gb)
                .feature(0.0, s.s_sq_width())
                .integrate(|x| s.gain_at(x, Band::I).s.powi(2) * (z - x).inv().norm_sqr())?;
            Ok(kappa / a_eff * q.value / (2.0 * PI))
        }
        PopulationSource::ClassicalPulsed(s) => {
            if s.n_photons_i == 0.0 {
                return Ok(0.0);
            }
            let sig = s.amp_i.width;
            let lattice = SpectralGrid::with_step(0.0, 0.5 * sig, 20)?;
            let amp = GaussianAmplitude { center: 0.0, width: sig };
            let f: Vec<f64> = lattice.points().map(|x| gaussian_amp(x, &amp)).collect();
            let z = Complex64::new(sys.omega_ba() - s.amp_i.center, -0.5 * gb);
            let r = ModeResponse::new(&lattice, &[&f], z, time_grid(sig, gb))?;
            Ok(kappa * s.n_photons_i / a_eff * r.peak(&[1.0]))
        }
        PopulationSource::SqueezedPulsed(d) => {
            if d.beta() == 0.0 {
                return Ok(0.0);
            }
            Ok(ModeResponse::for_basis(d.basis(), sys, d.centers().0)?.population(d, kappa, a_eff))
        }
    }
}
