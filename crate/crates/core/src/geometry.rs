//! Overlap of two focused Gaussian beams with a Gaussian atom cloud.
//!
//! Beams carry the unit-power intensity `2/(pi w^2) exp(-2 r^2/w^2)` and
//! the cloud density is an isotropic Gaussian normalised to one atom. The
//! effective area is defined by `1/A^2 = integral |l_I|^2 |l_II|^2 rho d^3r`.
//! The transverse integrals are Gaussian and done in closed form, which
//! leaves a smooth one-dimensional integral along the beam axis.

use std::f64::consts::{LN_2, PI};

use crate::error::{positive, Result};
use crate::spectral::{quad_converged_with, SpectralGrid};

pub const AEFF_POINTS: usize = 8001;
pub const AEFF_SPAN_FACTOR: f64 = 10.0;
pub const AEFF_REL_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BeamProfile {
    pub w0: f64,
    pub rayleigh_range: f64,
}

impl BeamProfile {
    pub fn new(w0: f64, rayleigh_range: f64) -> Result<Self> {
        positive("w0", w0)?;
        positive("rayleigh_range", rayleigh_range)?;
        Ok(Self { w0, rayleigh_range })
    }

    /// Rayleigh range `pi w0^2 / lambda`.
    pub fn from_wavelength(w0: f64, wavelength: f64) -> Result<Self> {
        positive("w0", w0)?;
        positive("wavelength", wavelength)?;
        Self::new(w0, PI * w0 * w0 / wavelength)
    }

    pub fn w_sq(&self, z: f64) -> f64 {
        let u = z / self.rayleigh_range;
        self.w0 * self.w0 * (1.0 + u * u)
    }

    /// Peak-normalised intensity at radius `r` and axial offset `z`,
    /// integrating to one over each transverse plane.
    pub fn intensity(&self, r: f64, z: f64) -> f64 {
        let w2 = self.w_sq(z);
        2.0 / (PI * w2) * (-2.0 * r * r / w2).exp()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AtomCloud {
    pub sigma: f64,
    pub n_atoms: f64,
}

impl AtomCloud {
    pub fn new(sigma: f64, n_atoms: f64) -> Result<Self> {
        positive("sigma", sigma)?;
        positive("n_atoms", n_atoms)?;
        Ok(Self { sigma, n_atoms })
    }

    /// Atom number density at distance `r` from the cloud centre.
    pub fn density(&self, r: f64) -> f64 {
        let s2 = self.sigma * self.sigma;
        self.n_atoms * (2.0 * PI * s2).powf(-1.5) * (-0.5 * r * r / s2).exp()
    }

    /// `l0 = sqrt(2 pi sigma^2)`, the axial length scale of the cloud.
    pub fn l0(&self) -> f64 {
        (2.0 * PI).sqrt() * self.sigma
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EffectiveArea {
    pub a_eff: f64,
    pub achieved_rel_err: f64,
    pub n_points: usize,
}

pub fn fwhm_to_sigma(fwhm: f64) -> f64 {
    fwhm / (2.0 * (2.0 * LN_2).sqrt())
}

pub fn sigma_to_fwhm(sigma: f64) -> f64 {
    sigma * 2.0 * (2.0 * LN_2).sqrt()
}

/// `1/e^2` intensity radius of a beam whose intensity FWHM is `fwhm`.
pub fn waist_fwhm_to_w0(fwhm: f64) -> f64 {
    fwhm / (2.0 * LN_2).sqrt()
}

/// General overlap of two (possibly different) beams with the cloud.
pub fn effective_area(beam_i: &BeamProfile, beam_ii: &BeamProfile, cloud: &AtomCloud) -> Result<EffectiveArea> {
    let s2 = cloud.sigma * cloud.sigma;
    let axial = 1.0 / ((2.0 * PI).sqrt() * cloud.sigma);
    integrate_axis(cloud, |z| {
        let (a, b) = (beam_i.w_sq(z), beam_ii.w_sq(z));
        axial * (-0.5 * z * z / s2).exp() * 4.0 / (PI * PI * (a * b + 4.0 * s2 * (a + b)))
    })
}

/// Identical beams: `1/A^2 = (1/l0) int dz exp(-pi z^2/l0^2) / (A0 (2 l0^2 + A0))`
/// with `A0(z) = pi w(z)^2 / 2`.
pub fn effective_area_equal(beam: &BeamProfile, cloud: &AtomCloud) -> Result<EffectiveArea> {
    let l0 = cloud.l0();
    integrate_axis(cloud, |z| {
        let a0 = 0.5 * PI * beam.w_sq(z);
        (-PI * z * z / (l0 * l0)).exp() / (l0 * a0 * (2.0 * l0 * l0 + a0))
    })
}

fn integrate_axis<F: Fn(f64) -> f64>(cloud: &AtomCloud, f: F) -> Result<EffectiveArea> {
    // The cloud Gaussian bounds the integrand regardless of the Rayleigh range.
    let grid = SpectralGrid::new(0.0, AEFF_SPAN_FACTOR * cloud.l0(), AEFF_POINTS)?;
    let q = quad_converged_with(f, &grid, AEFF_REL_TOL, 6)?;
    Ok(EffectiveArea {
        a_eff: q.value.sqrt().recip(),
        // Error of 1/sqrt(I) is half the relative error of I.
        achieved_rel_err: 0.5 * q.achieved_rel_err,
        n_points: q.n_points,
    })
}
