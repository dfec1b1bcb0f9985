//! Two-photon excitation probabilities, fluorescence counts and energy
//! ledgers for a four-level emitter driven by classical or squeezed light.

pub mod error;
pub mod excitation;
pub mod geometry;
pub mod sources;
pub mod spectral;
pub mod system;

#[cfg(test)]
pub(crate) mod testkit;

pub use error::{Error, Result};
pub use excitation::{ExcitationOutcome, FluorescenceResult, Regime};
pub use geometry::{effective_area, effective_area_equal, AtomCloud, BeamProfile, EffectiveArea};
pub use sources::{SchmidtDecomposition, SqueezedCW, SqueezedPulsed};
pub use system::{
    cross_section, cs_preset, eta_prefactor, eta_resonant, CrossSectionPrefactor, CsRates,
    DipoleCoupling, FourLevelSystem, Level, RateTable, Transition,
};
