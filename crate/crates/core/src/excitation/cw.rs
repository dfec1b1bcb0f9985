use std::f64::consts::PI;

use num_complex::Complex64;

use super::classical::NESTED_REL_TOL;
use super::outcome::{ExcitationOutcome, Regime};
use crate::error::{positive, Error, Result};
use crate::sources::{Band, SqueezedCW};
use crate::spectral::{lorentzian_detuned, Feature, GradedMesh, GradedQuad};
use crate::system::{CrossSectionPrefactor, FourLevelSystem};

/// Smallest `sigma_c / Gamma_b` for which the broadband closed form is offered.
pub const BROADBAND_MIN_RATIO: f64 = 10.0;

/// Full quadrature of both CW squeezed-light rates.
///
/// coherent   = eta L(w_p) |int dw_I/2pi G_ba s_I c_I e^{i theta}|^2 / A^2
/// incoherent = eta int dw/2pi L(w) int dw_I/2pi |G_ba s_I(w_I) s_II(w - w_I)|^2 / A^2
pub fn rate_squeezed_cw(
    src: &SqueezedCW,
    sys: &FourLevelSystem,
    eta: &CrossSectionPrefactor,
    a_eff: f64,
) -> Result<ExcitationOutcome> {
    positive("a_eff", a_eff)?;
    let regime = Regime::CwSqueezed;
    if src.beta_bar == 0.0 {
        return ExcitationOutcome::new(0.0, 0.0, regime);
    }
    let s = src.pmf_width;
    let w = src.s_sq_width();
    let gb = sys.gamma_b();
    let gc = sys.gamma_c();
    let db = sys.omega_ba() - src.center_i;
    let z = Complex64::new(db, -0.5 * gb);
    let nu_l = sys.omega_ca() - src.pump();
    let a2 = a_eff * a_eff;

    let amp = GradedQuad::new(-12.0 * s, 12.0 * s)
        .feature(db, 0.5 * gb)
        .feature(0.0, w)
        .integrate(|x| src.gain_at(x, Band::I).pair() / (z - x))?;
    let amp = amp.value / (2.0 * PI);
    let coherent = eta.eta * lorentzian_detuned(nu_l, gc) * amp.norm_sqr() / a2;

    let inner = |nu: f64, res: usize| -> Result<f64> {
        let lo = (-12.0 * s).max(nu - 12.0 * s);
        let hi = (12.0 * s).min(nu + 12.0 * s);
        if lo >= hi {
            return Ok(0.0);
        }
        let features = [Feature::new(db, 0.5 * gb), Feature::new(0.0, w), Feature::new(nu, w)];
        GradedMesh::new(lo, hi, &features, res, None)?.try_integrate(|u| {
            let si = src.gain_at(u, Band::I).s;
            let sii = src.gain_at(nu - u, Band::II).s;
            let g = (z - u).inv();
            Ok(g.norm_sqr() * si * si * sii * sii)
        })
    };
    let outer = GradedQuad::new(-20.0 * s, 20.0 * s)
        .feature(nu_l, 0.5 * gc)
        .feature(0.0, w)
        .rel_tol(NESTED_REL_TOL)
        .integrate_leveled(|nu, res| Ok(lorentzian_detuned(nu - nu_l, gc) * inner(nu, res)?))?;
    let incoherent = eta.eta * outer.value / (4.0 * PI * PI * a2);
    ExcitationOutcome::new(coherent, incoherent, regime)
}

/// Closed forms when the gain profile is flat across both Lorentzians:
/// coherent = eta s^2 c^2 / (2 pi Gamma_c A^2), incoherent = eta s^4 / (2 pi Gamma_b A^2),
/// with the gains taken at `w_ba`.
pub fn rate_squeezed_cw_broadband(
    src: &SqueezedCW,
    sys: &FourLevelSystem,
    eta: &CrossSectionPrefactor,
    a_eff: f64,
) -> Result<ExcitationOutcome> {
    positive("a_eff", a_eff)?;
    let ratio = src.pmf_width / sys.gamma_b();
    if ratio < BROADBAND_MIN_RATIO {
        return Err(Error::RegimeViolation { ratio });
    }
    let g = src.gain_at(sys.omega_ba() - src.center_i, Band::I);
    let k = eta.eta / (2.0 * PI * a_eff * a_eff);
    let (s2, c2) = (g.s * g.s, g.c * g.c);
    ExcitationOutcome::new(k * s2 * c2 / sys.gamma_c(), k * s2 * s2 / sys.gamma_b(), Regime::CwSqueezed)
}
