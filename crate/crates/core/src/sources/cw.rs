//! CW squeezed light in the long-pump limit.
//!
//! Each band is described by a gain profile `r_J(w)`, the phase-matching
//! amplitude normalised to one at its centre, and by a phase `theta_J(w)`.
//! The Gaussian model uses `r_J = exp(-d^2 / (2 sigma^2))`, whose
//! effective pair bandwidth is `sqrt(pi) sigma`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{invalid, non_negative, positive, Result};
use crate::spectral::GradedQuad;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Band {
    I,
    II,
}

/// A user phase profile `theta_I(d)` as a function of band-I detuning.
#[derive(Clone)]
pub struct PhaseFn(pub Arc<dyn Fn(f64) -> f64 + Send + Sync>);

impl fmt::Debug for PhaseFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("PhaseFn(..)")
    }
}

#[derive(Clone, Debug)]
pub struct SqueezedCW {
    /// `|beta_bar|`.
    pub beta_bar: f64,
    /// Constant phase of the gain parameter.
    pub theta: f64,
    pub pmf_width: f64,
    pub center_i: f64,
    pub center_ii: f64,
    /// Extra detuning-dependent phase. `None` means flat.
    pub phase: Option<PhaseFn>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gain {
    pub s: f64,
    pub c: f64,
    pub theta: f64,
}

impl Gain {
    /// `s c e^{i theta}`, the pair amplitude.
    pub fn pair(&self) -> Complex64 {
        Complex64::from_polar(self.s * self.c, self.theta)
    }
}

impl SqueezedCW {
    pub fn new(beta_bar: f64, theta: f64, pmf_width: f64, center_i: f64, center_ii: f64) -> Result<Self> {
        non_negative("beta_bar", beta_bar)?;
        positive("pmf_width", pmf_width)?;
        if !theta.is_finite() {
            return Err(invalid("theta", "must be finite"));
        }
        Ok(Self {
            beta_bar,
            theta,
            pmf_width,
            center_i,
            center_ii,
            phase: None,
        })
    }

    pub fn with_phase(mut self, phase: PhaseFn) -> Self {
        self.phase = Some(phase);
        self
    }

    pub fn with_beta(&self, beta_bar: f64) -> Self {
        Self {
            beta_bar,
            ..self.clone()
        }
    }

    pub fn pump(&self) -> f64 {
        self.center_i + self.center_ii
    }

    pub fn center(&self, band: Band) -> f64 {
        match band {
            Band::I => self.center_i,
            Band::II => self.center_ii,
        }
    }

    /// `Omega_c = sqrt(pi) sigma`.
    pub fn effective_bandwidth(&self) -> f64 {
        PI.sqrt() * self.pmf_width
    }

    /// Entanglement time `T_c = 2 pi / Omega_c`.
    pub fn coherence_time(&self) -> f64 {
        2.0 * PI / self.effective_bandwidth()
    }

    pub fn profile(&self, detuning: f64) -> f64 {
        let u = detuning / self.pmf_width;
        (-0.5 * u * u).exp()
    }

    /// Gain functions at detuning `d` from the band centre. Band II at
    /// `d` mirrors band I at `-d`, as both photons of a pair share the pump.
    pub fn gain_at(&self, detuning: f64, band: Band) -> Gain {
        let x = self.beta_bar * self.profile(detuning);
        let d_i = match band {
            Band::I => detuning,
            Band::II => -detuning,
        };
        let extra = self.phase.as_ref().map_or(0.0, |p| (p.0)(d_i));
        Gain {
            s: x.sinh(),
            c: x.cosh(),
            theta: self.theta + extra,
        }
    }

    /// Width of `s^2`, which narrows as the gain grows.
    pub fn s_sq_width(&self) -> f64 {
        self.pmf_width / (1.0 + 2.0 * self.beta_bar).sqrt()
    }
}

pub fn gain_functions_cw(omega: f64, src: &SqueezedCW, band: Band) -> Gain {
    src.gain_at(omega - src.center(band), band)
}

/// Photons per second in one band, `int dw/2pi sinh^2(beta r(w))`.
pub fn photon_rate_cw(src: &SqueezedCW, band: Band) -> Result<f64> {
    if src.beta_bar == 0.0 {
        return Ok(0.0);
    }
    let s = src.pmf_width;
    let q = GradedQuad::new(-12.0 * s, 12.0 * s)
        .feature(0.0, src.s_sq_width())
        .integrate(|d| src.gain_at(d, band).s.powi(2))?;
    Ok(q.value / (2.0 * PI))
}

/// Series form of the Gaussian photon rate, summed term by term:
/// `sinh^2 x = sum_k (2x)^{2k} / (2 (2k)!)` and each power of the profile
/// integrates to `sigma sqrt(pi/k)`.
pub fn photon_rate_cw_series(src: &SqueezedCW) -> f64 {
    let b = src.beta_bar;
    let mut total = 0.0;
    let mut coeff = 1.0; // (2b)^{2k} / (2k)!
    for k in 1..400 {
        let kk = k as f64;
        coeff *= (2.0 * b).powi(2) / ((2.0 * kk - 1.0) * (2.0 * kk));
        let term = coeff * src.pmf_width * (PI / kk).sqrt() / 2.0;
        total += term;
        if term < 1e-18 * total {
            break;
        }
    }
    total / (2.0 * PI)
}

/// The two second-order correlation kernels in the long-pump limit.
///
/// The coherent part multiplies `delta(w_I + w_II - w_p) delta(w_I' + w_II' - w_p)`
/// and factorises into the pair amplitudes at `w_I` and `w_I'`. The
/// incoherent part multiplies `delta(w_I - w_I') delta(w_II - w_II')`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CwG2 {
    pub coherent: Complex64,
    pub coherent_primed: Complex64,
    pub incoherent: f64,
}

impl CwG2 {
    /// `conj(A(w_I')) A(w_I)`, the weight multiplying both deltas.
    pub fn coherent_product(&self) -> Complex64 {
        self.coherent_primed.conj() * self.coherent
    }
}

/// Kernels at the given frequencies. Off their delta supports the
/// respective weights are zero.
pub fn g2_cw(omega_i: f64, omega_ii: f64, omega_i_p: f64, omega_ii_p: f64, src: &SqueezedCW) -> CwG2 {
    let scale = src.pump().abs().max(1.0) * 1e-12;
    let on_pump = (omega_i + omega_ii - src.pump()).abs() <= scale
        && (omega_i_p + omega_ii_p - src.pump()).abs() <= scale;
    let diagonal = (omega_i - omega_i_p).abs() <= scale && (omega_ii - omega_ii_p).abs() <= scale;
    let zero = Complex64::new(0.0, 0.0);
    let (coherent, coherent_primed) = if on_pump {
        (
            gain_functions_cw(omega_i, src, Band::I).pair(),
            gain_functions_cw(omega_i_p, src, Band::I).pair(),
        )
    } else {
        (zero, zero)
    };
    let incoherent = if diagonal {
        let si = gain_functions_cw(omega_i, src, Band::I).s;
        let sii = gain_functions_cw(omega_ii, src, Band::II).s;
        si * si * sii * sii
    } else {
        0.0
    };
    CwG2 {
        coherent,
        coherent_primed,
        incoherent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn src(beta: f64) -> SqueezedCW {
        SqueezedCW::new(beta, 0.3, 2.0e6, 2.1e15, 1.4e15).unwrap()
    }

    #[test]
    fn vacuum_gain() {
        let g = gain_functions_cw(2.1e15 + 3e6, &src(0.0), Band::I);
        assert_eq!((g.s, g.c, g.theta), (0.0, 1.0, 0.3));
    }

    #[test]
    fn centre_gain_is_sinh_beta() {
        let s = src(1.7);
        for band in [Band::I, Band::II] {
            let g = gain_functions_cw(s.center(band), &s, band);
            assert_relative_eq!(g.s, 1.7f64.sinh(), max_relative = 1e-15);
        }
    }

    #[test]
    fn hyperbolic_identity_and_mirror_symmetry() {
        let s = src(3.0);
        for k in 0..1000 {
            let d = -1e7 + 2e4 * k as f64;
            let gi = s.gain_at(d, Band::I);
            assert!((gi.c * gi.c - gi.s * gi.s - 1.0).abs() <= 1e-10 * gi.c * gi.c);
            let gii = s.gain_at(-d, Band::II);
            assert_eq!(gi.s, gii.s);
            assert_eq!(gi.theta, gii.theta);
        }
    }

    #[test]
    fn user_phase_mirrors_between_bands() {
        let s = src(1.0).with_phase(PhaseFn(Arc::new(|d| 1e-6 * d)));
        let a = s.gain_at(5e5, Band::I);
        let b = s.gain_at(-5e5, Band::II);
        assert_eq!(a.theta, b.theta);
        assert_relative_eq!(a.theta, 0.3 + 0.5, max_relative = 1e-12);
    }

    #[test]
    fn low_gain_rate_is_beta_sq_over_tc() {
        let s = src(0.01);
        let r = photon_rate_cw(&s, Band::I).unwrap();
        assert_relative_eq!(r, 1e-4 / s.coherence_time(), max_relative = 1e-2);
    }

    #[test]
    fn high_gain_rate_matches_series() {
        let s = src(2.0);
        let q = photon_rate_cw(&s, Band::I).unwrap();
        assert_relative_eq!(q, photon_rate_cw_series(&s), max_relative = 1e-4);
        assert_relative_eq!(q, photon_rate_cw(&s, Band::II).unwrap(), max_relative = 1e-12);
    }

    #[test]
    fn rate_increases_with_beta_and_width() {
        let mut last = 0.0;
        for b in [0.0, 0.1, 0.5, 1.0, 3.0] {
            let r = photon_rate_cw(&src(b), Band::I).unwrap();
            assert!(b == 0.0 || r > last);
            last = r;
        }
        let narrow = photon_rate_cw(&src(1.0), Band::I).unwrap();
        let mut wide = src(1.0);
        wide.pmf_width *= 2.0;
        assert!(photon_rate_cw(&wide, Band::I).unwrap() > narrow);
    }

    #[test]
    fn g2_orders_and_centre_value() {
        let s = src(1e-3);
        let (wi, wii) = (s.center_i, s.center_ii);
        let k = g2_cw(wi, wii, wi, wii, &s);
        assert_relative_eq!(k.coherent.norm(), 1e-3, max_relative = 1e-5);
        assert_relative_eq!(k.incoherent, 1e-12, max_relative = 1e-5);
        let s = src(0.8);
        let k = g2_cw(wi, wii, wi, wii, &s);
        assert_relative_eq!(k.coherent.norm(), 0.8f64.sinh() * 0.8f64.cosh(), max_relative = 1e-14);
    }

    #[test]
    fn flat_phase_cancels_in_coherent_product() {
        let s = src(0.8);
        let d = 1.0e6;
        let k = g2_cw(s.center_i + d, s.center_ii - d, s.center_i - d, s.center_ii + d, &s);
        assert!(k.coherent_product().im.abs() < 1e-15 * k.coherent_product().norm());
        assert_eq!(k.incoherent, 0.0);
    }
}
