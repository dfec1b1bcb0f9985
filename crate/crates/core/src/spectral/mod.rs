//! Frequency-domain primitives: detuning grids, lineshapes, spectral
//! amplitudes and the quadrature engine shared by every other module.
//!
//! Everything here works in detuning coordinates. Absolute optical
//! frequencies only enter scalar prefactors elsewhere.

mod grid;
mod lineshape;
mod mesh;
mod sinc;

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

pub use grid::{
    default_grid, quad_1d, quad_converged, quad_converged_with, Quad, SpectralGrid,
    CONVERGENCE_REL_TOL, DEFAULT_POINTS, DEFAULT_SPAN_FACTOR, MAX_DOUBLINGS,
};
pub use lineshape::{
    gaussian_amp, green, lorentzian, lorentzian_detuned, GaussianAmplitude, GreenFunctionParams,
    LorentzianLineshape,
};
pub use mesh::{Feature, GradedMesh, GradedQuad};
pub use sinc::{exprel, pole_time_weights, pole_weights, sinc, sinc_interpolate};

/// Values that the quadrature routines can accumulate.
pub trait Quadrable: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn finite(&self) -> bool;
    fn magnitude(&self) -> f64;
}

impl Quadrable for f64 {
    fn zero() -> Self {
        0.0
    }
    fn finite(&self) -> bool {
        self.is_finite()
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Quadrable for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Relative difference used by every convergence loop. Two exact zeros agree.
pub(crate) fn rel_diff<T: Quadrable>(a: T, b: T) -> f64 {
    let scale = a.magnitude().max(b.magnitude());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).magnitude() / scale
    }
}
