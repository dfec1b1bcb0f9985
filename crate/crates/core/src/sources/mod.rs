//! Light sources: coherent states, CW squeezed light described by gain
//! functions, and pulsed squeezed light described by a joint spectral
//! amplitude and its Schmidt modes.

mod classical;
mod cw;
mod invert;
mod pulsed;
mod schmidt;

pub use classical::{ClassicalCW, ClassicalPulsed};
pub use cw::{
    g2_cw, gain_functions_cw, photon_rate_cw, photon_rate_cw_series, Band, CwG2, Gain, PhaseFn,
    SqueezedCW,
};
pub use invert::{beta_bar_for_photon_rate, beta_for_photon_number};
pub use pulsed::{jsa_eval, jsa_detuned, marginal_width, write_jsi_csv, SqueezedPulsed};
pub use schmidt::{
    g2_pulsed_kernels, photon_number_pulsed, schmidt_basis, schmidt_decompose, schmidt_lattice,
    write_spectrum_csv, PulsedKernels, SchmidtBasis, SchmidtDecomposition, DEFAULT_TRUNC_TOL,
    MAX_LATTICE_POINTS,
};
