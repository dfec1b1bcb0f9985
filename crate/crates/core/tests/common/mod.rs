use sqfluor_core::{cs_preset, eta_resonant, CrossSectionPrefactor, CsRates, DipoleCoupling, FourLevelSystem};

/// Cesium with Gamma_b / Gamma_c = 2.11 and a 1:2 split of |c> decay.
pub fn cs() -> (FourLevelSystem, DipoleCoupling, CrossSectionPrefactor) {
    let gamma_b = 1.0 / 34.9e-9;
    let gamma_c = gamma_b / 2.11;
    let rates = CsRates {
        gamma_r_ba: Some(gamma_b),
        gamma_r_cb: Some(gamma_c / 3.0),
        gamma_r_cd: Some(2.0 * gamma_c / 3.0),
        gamma_r_da: Some(1.0 / 30.5e-9),
    };
    let (sys, coupling) = cs_preset(&rates).unwrap();
    let eta = eta_resonant(&sys, &coupling).unwrap();
    (sys, coupling, eta)
}
