//! Shared fixtures for unit tests.

use crate::system::{cs_preset, eta_resonant, CrossSectionPrefactor, CsRates, DipoleCoupling, FourLevelSystem};

pub fn cs_rates() -> CsRates {
    let gamma_b = 1.0 / 34.9e-9;
    let gamma_c = gamma_b / 2.11;
    CsRates {
        gamma_r_ba: Some(gamma_b),
        gamma_r_cb: Some(gamma_c / 3.0),
        gamma_r_cd: Some(2.0 * gamma_c / 3.0),
        gamma_r_da: Some(1.0 / 30.5e-9),
    }
}

pub fn cs() -> (FourLevelSystem, DipoleCoupling, CrossSectionPrefactor) {
    let (sys, c) = cs_preset(&cs_rates()).unwrap();
    let eta = eta_resonant(&sys, &c).unwrap();
    (sys, c, eta)
}
