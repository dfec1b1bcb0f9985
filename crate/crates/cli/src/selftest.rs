//! Quick oracle suite behind `sqfluor self-test`.

use std::f64::consts::PI;

use sqfluor_core::excitation::{
    cascade_populations, classical_pulsed_matched, effective_interaction_time, energy_ledger, fluorescence,
    p_classical_pulsed, p_squeezed_pulsed, rate_squeezed_cw, ExcitationOutcome, Regime,
};
use sqfluor_core::excitation::{classical_cw_matched, rate_classical_cw};
use sqfluor_core::sources::{
    photon_rate_cw, schmidt_decompose, schmidt_lattice, Band, SqueezedCW, SqueezedPulsed, DEFAULT_TRUNC_TOL,
};
use sqfluor_core::spectral::{lorentzian_detuned, quad_1d, GaussianAmplitude, SpectralGrid};
use sqfluor_core::{cross_section, cs_preset, eta_resonant, CsRates, Result, Transition};

pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub target: f64,
    pub rel_tol: f64,
}

impl Check {
    pub fn pass(&self) -> bool {
        (self.value - self.target).abs() <= self.rel_tol * self.target.abs().max(f64::MIN_POSITIVE)
    }
}

/// Cesium rates with Gamma_b / Gamma_c = 2.11, used when no config is given.
pub fn reference_rates() -> CsRates {
    let gamma_b = 1.0 / 34.9e-9;
    let gamma_c = gamma_b / 2.11;
    CsRates {
        gamma_r_ba: Some(gamma_b),
        gamma_r_cb: Some(gamma_c / 3.0),
        gamma_r_cd: Some(2.0 * gamma_c / 3.0),
        gamma_r_da: Some(1.0 / 30.5e-9),
    }
}

pub fn run() -> Result<Vec<Check>> {
    let (sys, coupling) = cs_preset(&reference_rates())?;
    let eta = eta_resonant(&sys, &coupling)?;
    let gb = sys.gamma_b();
    let a = 2e-8;
    let mut out = Vec::new();

    let grid = SpectralGrid::new(0.0, 50.0, 20001)?;
    out.push(Check {
        name: "lorentzian area over +-50 fwhm",
        value: quad_1d(|x| lorentzian_detuned(x, 1.0), &grid)?,
        target: (2.0 / PI) * 100f64.atan(),
        rel_tol: 1e-6,
    });

    let low = SqueezedCW::new(0.01, 0.0, gb, sys.omega_ba(), sys.omega_cb())?;
    out.push(Check {
        name: "cw low-gain photon rate / (beta^2/T_c)",
        value: photon_rate_cw(&low, Band::I)? * low.coherence_time() / 1e-4,
        target: 1.0,
        rel_tol: 1e-2,
    });

    let narrow = SqueezedCW::new(10.0, 0.0, 0.01 * gb, sys.omega_ba(), sys.omega_cb())?;
    let sq = rate_squeezed_cw(&narrow, &sys, &eta, a)?;
    let cl = rate_classical_cw(&classical_cw_matched(&narrow, a)?, &sys, &eta)?;
    out.push(Check {
        name: "cw narrowband squeezed/classical",
        value: sq.total / cl.total,
        target: 2.0,
        rel_tol: 5e-2,
    });

    let (sp, sc) = (1.0, 10.0);
    let g = schmidt_lattice(sp, sc)?;
    let dec = schmidt_decompose(&SqueezedPulsed::new(1.0, 0.0, sp, sc, 0.0, 0.0)?, &g, &g, DEFAULT_TRUNC_TOL)?;
    let mu = ((sc - sp) / (sc + sp)).powi(2);
    out.push(Check {
        name: "schmidt p_0 at ratio 10",
        value: dec.p()[0],
        target: 1.0 - mu,
        rel_tol: 1e-3,
    });

    let sigma = 2.0 * gb;
    let g = schmidt_lattice(sigma, sigma)?;
    let src = SqueezedPulsed::new(1f64.asinh(), 0.0, sigma, sigma, sys.omega_ba(), sys.omega_cb())?;
    let dec = schmidt_decompose(&src, &g, &g, DEFAULT_TRUNC_TOL)?;
    let sq = p_squeezed_pulsed(&dec, &sys, &eta, a)?;
    let cl = p_classical_pulsed(&classical_pulsed_matched(&dec)?, &sys, &eta, a)?;
    out.push(Check {
        name: "pulsed separable total/classical at N=1",
        value: sq.total / cl.total,
        target: 3.0,
        rel_tol: 1e-2,
    });

    let s = 1e-3 * gb;
    let pulse = sqfluor_core::sources::ClassicalPulsed::new(
        GaussianAmplitude::new(sys.omega_ba(), s)?,
        GaussianAmplitude::new(sys.omega_cb(), s)?,
        1.0,
        1.0,
    )?;
    let p = p_classical_pulsed(&pulse, &sys, &eta, a)?.total;
    let rate = cross_section(sys.omega_ba(), sys.omega_cb(), &sys, &eta)? / (a * a);
    out.push(Check {
        name: "long pulse / (cw rate x interaction time)",
        value: p * effective_interaction_time(s, s) / rate,
        target: 1.0,
        rel_tol: 1e-2,
    });

    let o = ExcitationOutcome::classical(1e-3, Regime::PulsedClassical)?;
    let ledger = energy_ledger(&cascade_populations(o.total, &sys), &sys)?;
    out.push(Check {
        name: "ledger d-a photons / fluorescence count",
        value: ledger.photons(Transition::Da, &sys) / fluorescence(&o, &sys, 1.0)?.total,
        target: 1.0,
        rel_tol: 1e-12,
    });
    Ok(out)
}
