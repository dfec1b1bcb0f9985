//! Classical reference sources carrying the same photon budget as a
//! squeezed source.

use crate::error::{positive, Result};
use crate::sources::{photon_number_pulsed, photon_rate_cw, Band, ClassicalCW, ClassicalPulsed, SchmidtDecomposition, SqueezedCW};
use crate::spectral::GaussianAmplitude;

/// Monochromatic beams at the squeezed centres with the same photon rate
/// per band spread over `a_eff`.
pub fn classical_cw_matched(src: &SqueezedCW, a_eff: f64) -> Result<ClassicalCW> {
    positive("a_eff", a_eff)?;
    let r_i = photon_rate_cw(src, Band::I)?;
    let r_ii = photon_rate_cw(src, Band::II)?;
    ClassicalCW::new(r_i / a_eff, r_ii / a_eff, src.center_i, src.center_ii)
}

/// Coherent pulses with spectral width `sigma_c` in both bands and the
/// squeezed mean photon number in each.
pub fn classical_pulsed_matched(dec: &SchmidtDecomposition) -> Result<ClassicalPulsed> {
    let (_, sigma_c) = dec.basis().widths();
    let (ci, cii) = dec.centers();
    let n = photon_number_pulsed(dec);
    ClassicalPulsed::new(
        GaussianAmplitude::new(ci, sigma_c)?,
        GaussianAmplitude::new(cii, sigma_c)?,
        n,
        n,
    )
}
