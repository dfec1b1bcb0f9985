//! Band-limited (sinc) interpolation on uniform lattices and the matching
//! product-integration weights against a complex pole.
//!
//! A smooth function sampled on a lattice is represented as
//! `f(x) = sum_i f_i sinc((x - x_i)/h)`. Integrals of that interpolant
//! against `1/(z - x)`, optionally times `exp(-i x t)`, have closed forms,
//! so Green functions far narrower than the lattice step are integrated
//! exactly instead of being under-sampled.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{Quadrable, SpectralGrid};
use crate::error::{invalid, Result};

/// Normalised sinc, `sin(pi u)/(pi u)`.
pub fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-8 {
        1.0 - (PI * u).powi(2) / 6.0
    } else {
        (PI * u).sin() / (PI * u)
    }
}

/// `(exp(z) - 1)/z` without cancellation near zero.
pub fn exprel(z: Complex64) -> Complex64 {
    if z.norm() < 1e-5 {
        return Complex64::new(1.0, 0.0) + z * 0.5 + z * z / 6.0;
    }
    let (x, y) = (z.re, z.im);
    let half = (0.5 * y).sin();
    let em1 = Complex64::new(x.exp_m1() * y.cos() - 2.0 * half * half, x.exp() * y.sin());
    em1 / z
}

/// Weights `w_i` with `integral f(x)/(z - x) dx = sum_i w_i f(x_i)` for the
/// sinc interpolant of `f` on `lattice`.
pub fn pole_weights(lattice: &SpectralGrid, z: Complex64) -> Result<Vec<Complex64>> {
    if z.im == 0.0 || !z.im.is_finite() || !z.re.is_finite() {
        return Err(invalid("pole", "must have a finite nonzero imaginary part"));
    }
    let h = lattice.step();
    let i_pi = Complex64::new(0.0, PI);
    Ok((0..lattice.n_points())
        .map(|i| {
            let zeta = (z - lattice.point(i)) / h;
            if zeta.im < 0.0 {
                i_pi * exprel(-i_pi * zeta)
            } else {
                -i_pi * exprel(i_pi * zeta)
            }
        })
        .collect())
}

/// Weights for `integral exp(-i x t) f(x)/(z - x) dx`, pole below the real axis.
///
/// Writing the sinc as a band-limited Fourier integral and closing the
/// contour gives `h e^{-itz} (e^{i v2 a} - e^{i v1 a})/a` with `a = z - x_i`,
/// `v1 = -pi/h` and `v2 = min(t, pi/h)`.
pub fn pole_time_weights(lattice: &SpectralGrid, z: Complex64, t: f64) -> Result<Vec<Complex64>> {
    if !(z.im < 0.0) || !z.re.is_finite() {
        return Err(invalid("pole", "must lie strictly below the real axis"));
    }
    let h = lattice.step();
    let v1 = -PI / h;
    let n = lattice.n_points();
    if t <= v1 {
        return Ok(vec![Complex64::new(0.0, 0.0); n]);
    }
    let v2 = t.min(PI / h);
    let dv = v2 - v1;
    let i = Complex64::new(0.0, 1.0);
    Ok((0..n)
        .map(|k| {
            let x = lattice.point(k);
            let a = z - x;
            let e = |v: f64| (i * ((v - t) * z - v * x)).exp();
            if dv * a.norm() < 1.0 {
                e(v1) * i * dv * exprel(i * dv * a) * h
            } else {
                (e(v2) - e(v1)) * h / a
            }
        })
        .collect())
}

/// Evaluates the sinc interpolant of `samples` (taken on `lattice`) at `x`.
pub fn sinc_interpolate<T: Quadrable>(samples: &[T], lattice: &SpectralGrid, x: f64) -> T {
    let u = lattice.position(x);
    let m = u.round();
    let r = u - m;
    if r.abs() < 1e-12 {
        let k = m as i64;
        return if k >= 0 && (k as usize) < samples.len() {
            samples[k as usize]
        } else {
            T::zero()
        };
    }
    let parity = if (m as i64) % 2 == 0 { 1.0 } else { -1.0 };
    let s = (PI * r).sin() * parity / PI;
    let mut acc = T::zero();
    let mut sign = 1.0;
    for (k, &v) in samples.iter().enumerate() {
        acc = acc + v * (sign * s / (u - k as f64));
        sign = -sign;
    }
    acc
}
