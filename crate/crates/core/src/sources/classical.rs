use crate::error::{non_negative, Result};
use crate::spectral::GaussianAmplitude;

/// A pair of coherent pulses with Gaussian spectral amplitudes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassicalPulsed {
    pub amp_i: GaussianAmplitude,
    pub amp_ii: GaussianAmplitude,
    pub n_photons_i: f64,
    pub n_photons_ii: f64,
}

impl ClassicalPulsed {
    pub fn new(
        amp_i: GaussianAmplitude,
        amp_ii: GaussianAmplitude,
        n_photons_i: f64,
        n_photons_ii: f64,
    ) -> Result<Self> {
        GaussianAmplitude::new(amp_i.center, amp_i.width)?;
        GaussianAmplitude::new(amp_ii.center, amp_ii.width)?;
        non_negative("n_photons_I", n_photons_i)?;
        non_negative("n_photons_II", n_photons_ii)?;
        Ok(Self {
            amp_i,
            amp_ii,
            n_photons_i,
            n_photons_ii,
        })
    }

    pub fn pump_center(&self) -> f64 {
        self.amp_i.center + self.amp_ii.center
    }
}

/// Two monochromatic beams, fluxes in photons per m^2 per s.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassicalCW {
    pub flux_i: f64,
    pub flux_ii: f64,
    pub center_i: f64,
    pub center_ii: f64,
}

impl ClassicalCW {
    pub fn new(flux_i: f64, flux_ii: f64, center_i: f64, center_ii: f64) -> Result<Self> {
        non_negative("flux_I", flux_i)?;
        non_negative("flux_II", flux_ii)?;
        Ok(Self {
            flux_i,
            flux_ii,
            center_i,
            center_ii,
        })
    }
}
