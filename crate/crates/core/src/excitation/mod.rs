//! Excitation probabilities and rates for every source, fluorescence
//! counts, energy bookkeeping and the perturbative-validity estimate.
//!
//! Conventions: CW formulas carry `dw/2pi` measures. Pulsed formulas use
//! `dw/sqrt(2pi)` once in each inner integral and a plain `dw` outside.

mod budget;
mod classical;
mod cw;
mod ledger;
mod outcome;
mod pulsed;
mod validity;

pub use budget::{classical_cw_matched, classical_pulsed_matched};
pub use classical::{effective_interaction_time, p_classical_pulsed, rate_classical_cw, NESTED_REL_TOL};
pub use cw::{rate_squeezed_cw, rate_squeezed_cw_broadband, BROADBAND_MIN_RATIO};
pub use ledger::{
    cascade_populations, energy_ledger, fluorescence, EnergyLedger, FluorescenceResult, PopulationIntegrals,
};
pub use outcome::{ExcitationOutcome, Regime, Validity, VALIDITY_THRESHOLD};
pub use pulsed::{inner_amplitudes, outer_integral, p_squeezed_pulsed, sum_lattice, InnerAmplitudes};
pub use validity::{max_intermediate_population, time_grid, ModeResponse, PopulationSource, TIME_POINTS};
