use std::f64::consts::PI;

use num_complex::Complex64;

use super::outcome::{ExcitationOutcome, Regime};
use crate::error::{positive, Result};
use crate::sources::{ClassicalCW, ClassicalPulsed};
use crate::spectral::{gaussian_amp, lorentzian_detuned, Feature, GaussianAmplitude, GradedMesh, GradedQuad};
use crate::system::{cross_section, CrossSectionPrefactor, FourLevelSystem};

/// Relative tolerance of the nested two-dimensional quadratures.
pub const NESTED_REL_TOL: f64 = 1e-6;

/// Interaction time that turns a pulse probability into a CW rate for
/// Gaussian pulses: `1/T = int I_I(t) I_II(t) dt` with unit-area
/// temporal intensities.
pub fn effective_interaction_time(sigma_i: f64, sigma_ii: f64) -> f64 {
    (PI * (sigma_i * sigma_i + sigma_ii * sigma_ii)).sqrt() / (sigma_i * sigma_ii)
}

/// `eta N_I N_II / A^2 int dw L(w) |int dw_I/sqrt(2 pi) G_ba phi_I phi_II(w - w_I)|^2`.
pub fn p_classical_pulsed(
    src: &ClassicalPulsed,
    sys: &FourLevelSystem,
    eta: &CrossSectionPrefactor,
    a_eff: f64,
) -> Result<ExcitationOutcome> {
    positive("a_eff", a_eff)?;
    let regime = Regime::PulsedClassical;
    if src.n_photons_i == 0.0 || src.n_photons_ii == 0.0 {
        return ExcitationOutcome::classical(0.0, regime);
    }
    let (si, sii) = (src.amp_i.width, src.amp_ii.width);
    let amp_i = GaussianAmplitude { center: 0.0, width: si };
    let amp_ii = GaussianAmplitude { center: 0.0, width: sii };
    let gb = sys.gamma_b();
    // All frequencies below are detunings: x from w_I, nu from the pump sum.
    let z = Complex64::new(sys.omega_ba() - src.amp_i.center, -0.5 * gb);
    let nu_l = sys.omega_ca() - src.pump_center();
    let inner = |nu: f64, res: usize| -> Result<Complex64> {
        let lo = (-10.0 * si).max(nu - 10.0 * sii);
        let hi = (10.0 * si).min(nu + 10.0 * sii);
        if lo >= hi {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let features = [
            Feature::new(z.re, 0.5 * gb),
            Feature::new(0.0, si),
            Feature::new(nu, sii),
        ];
        let v = GradedMesh::new(lo, hi, &features, res, None)?
            .try_integrate(|x| Ok(gaussian_amp(x, &amp_i) * gaussian_amp(nu - x, &amp_ii) / (z - x)))?;
        Ok(v / (2.0 * PI).sqrt())
    };
    let s_tot = (si * si + sii * sii).sqrt();
    let outer = GradedQuad::new(-20.0 * s_tot, 20.0 * s_tot)
        .feature(nu_l, 0.5 * sys.gamma_c())
        .feature(0.0, s_tot)
        .rel_tol(NESTED_REL_TOL)
        .integrate_leveled(|nu, res| Ok(lorentzian_detuned(nu - nu_l, sys.gamma_c()) * inner(nu, res)?.norm_sqr()))?;
    let p = eta.eta * src.n_photons_i * src.n_photons_ii / (a_eff * a_eff) * outer.value;
    ExcitationOutcome::classical(p, regime)
}

/// `F_I F_II sigma(w_I, w_II)`, closed form.
pub fn rate_classical_cw(src: &ClassicalCW, sys: &FourLevelSystem, eta: &CrossSectionPrefactor) -> Result<ExcitationOutcome> {
    let sigma = cross_section(src.center_i, src.center_ii, sys, eta)?;
    ExcitationOutcome::classical(src.flux_i * src.flux_ii * sigma, Regime::CwClassical)
}
