use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{non_negative, positive, Error, Result};

/// Unit-area Lorentzian of full width `fwhm` centred on `center`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzianLineshape {
    pub center: f64,
    pub fwhm: f64,
}

impl LorentzianLineshape {
    pub fn new(center: f64, fwhm: f64) -> Result<Self> {
        positive("fwhm", fwhm)?;
        Ok(Self { center, fwhm })
    }
}

/// Green function `1/(w_pq - w - i(G_p + G_q)/2)` of a single transition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GreenFunctionParams {
    pub transition_frequency: f64,
    pub gamma_upper: f64,
    pub gamma_lower: f64,
}

impl GreenFunctionParams {
    pub fn new(transition_frequency: f64, gamma_upper: f64, gamma_lower: f64) -> Result<Self> {
        non_negative("gamma_upper", gamma_upper)?;
        non_negative("gamma_lower", gamma_lower)?;
        Ok(Self {
            transition_frequency,
            gamma_upper,
            gamma_lower,
        })
    }

    pub fn total_width(&self) -> f64 {
        self.gamma_upper + self.gamma_lower
    }

    /// The pole of the Green function in the complex frequency plane.
    pub fn pole(&self) -> Complex64 {
        Complex64::new(self.transition_frequency, -0.5 * self.total_width())
    }
}

/// Square-normalised Gaussian spectral amplitude.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussianAmplitude {
    pub center: f64,
    pub width: f64,
}

impl GaussianAmplitude {
    pub fn new(center: f64, width: f64) -> Result<Self> {
        positive("width", width)?;
        Ok(Self { center, width })
    }

    pub fn peak(&self) -> f64 {
        (PI * self.width * self.width).powf(-0.25)
    }
}

/// Lorentzian density at detuning `delta` from its centre.
#[inline]
pub fn lorentzian_detuned(delta: f64, fwhm: f64) -> f64 {
    fwhm / (2.0 * PI * (delta * delta + 0.25 * fwhm * fwhm))
}

#[inline]
pub fn lorentzian(omega: f64, shape: &LorentzianLineshape) -> f64 {
    lorentzian_detuned(shape.center - omega, shape.fwhm)
}

pub fn green(omega: f64, g: &GreenFunctionParams) -> Result<Complex64> {
    let den = Complex64::new(g.transition_frequency - omega, -0.5 * g.total_width());
    if den.re == 0.0 && den.im == 0.0 {
        return Err(Error::DegenerateGreen);
    }
    Ok(den.inv())
}

#[inline]
pub fn gaussian_amp(omega: f64, a: &GaussianAmplitude) -> f64 {
    let d = (omega - a.center) / a.width;
    a.peak() * (-0.5 * d * d).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{quad_1d, SpectralGrid};
    use approx::assert_relative_eq;

    #[test]
    fn lorentzian_peak_and_half_maximum() {
        let l = LorentzianLineshape::new(3.0, 0.4).unwrap();
        assert_relative_eq!(lorentzian(3.0, &l), 2.0 / (PI * 0.4), max_relative = 1e-15);
        assert_relative_eq!(lorentzian(3.2, &l), 1.0 / (PI * 0.4), max_relative = 1e-12);
        assert_relative_eq!(lorentzian(2.8, &l), 1.0 / (PI * 0.4), max_relative = 1e-12);
    }

    #[test]
    fn lorentzian_unit_area() {
        let l = LorentzianLineshape::new(0.0, 1.0).unwrap();
        let grid = SpectralGrid::new(0.0, 50.0, 4001).unwrap();
        let area = quad_1d(|w| lorentzian(w, &l), &grid).unwrap();
        // Tails beyond +-50 widths hold 1 - (2/pi) atan(100) of the area.
        let expect = 2.0 / PI * 100f64.atan();
        assert!((area - expect).abs() < 1e-8, "area {area}");
    }

    #[test]
    fn green_on_resonance_is_imaginary() {
        let g = GreenFunctionParams::new(10.0, 2.0, 1.0).unwrap();
        let v = green(10.0, &g).unwrap();
        assert_eq!(v.re, 0.0);
        assert_relative_eq!(v.im, 2.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(v.norm_sqr(), 4.0 / 9.0, max_relative = 1e-15);
    }

    #[test]
    fn green_far_detuned() {
        let g = GreenFunctionParams::new(0.0, 1.0, 0.0).unwrap();
        let v = green(100.0, &g).unwrap();
        assert!((v.norm() * 100.0 - 1.0).abs() < 0.01);
    }

    #[test]
    fn green_degenerate() {
        let g = GreenFunctionParams::new(1.0, 0.0, 0.0).unwrap();
        assert_eq!(green(1.0, &g), Err(Error::DegenerateGreen));
        assert!(green(2.0, &g).is_ok());
        assert!(GreenFunctionParams::new(1.0, -1.0, 0.0).is_err());
    }

    #[test]
    fn gaussian_values() {
        let a = GaussianAmplitude::new(1.0, 0.5).unwrap();
        assert_relative_eq!(gaussian_amp(1.0, &a), (PI * 0.25).powf(-0.25), max_relative = 1e-15);
        assert_relative_eq!(
            gaussian_amp(1.5, &a) / gaussian_amp(1.0, &a),
            (-0.5f64).exp(),
            max_relative = 1e-14
        );
        let grid = SpectralGrid::new(1.0, 12.0 * 0.5, 4001).unwrap();
        let norm = quad_1d(|w| gaussian_amp(w, &a).powi(2), &grid).unwrap();
        assert!((norm - 1.0).abs() < 1e-8);
        assert!(GaussianAmplitude::new(0.0, 0.0).is_err());
    }
}
