//! End-to-end checks of the excitation engines against closed forms.

mod common;

use std::sync::Arc;

use approx::assert_relative_eq;
use common::cs;
use sqfluor_core::excitation::*;
use sqfluor_core::sources::*;
use sqfluor_core::spectral::GaussianAmplitude;
use sqfluor_core::{cross_section, Transition};

const A_EFF: f64 = 2e-8;

#[test]
fn cw_narrowband_high_gain_doubles_classical() {
    let (sys, _, eta) = cs();
    let src = SqueezedCW::new(10.0, 0.0, 0.01 * sys.gamma_b(), sys.omega_ba(), sys.omega_cb()).unwrap();
    let sq = rate_squeezed_cw(&src, &sys, &eta, A_EFF).unwrap();
    let cl = rate_classical_cw(&classical_cw_matched(&src, A_EFF).unwrap(), &sys, &eta).unwrap();
    assert_relative_eq!(sq.total / cl.total, 2.0, max_relative = 1e-2);
}

#[test]
fn cw_broadband_ratio_law() {
    let (sys, _, eta) = cs();
    for beta in [0.1, 1.0, 10.0] {
        let src = SqueezedCW::new(beta, 0.0, 100.0 * sys.gamma_b(), sys.omega_ba(), sys.omega_cb()).unwrap();
        let o = rate_squeezed_cw(&src, &sys, &eta, A_EFF).unwrap();
        let s = src.gain_at(0.0, Band::I).s;
        let law = sys.gamma_b() / sys.gamma_c() * (1.0 + 1.0 / (s * s));
        assert_relative_eq!(o.ratio(), law, max_relative = 1e-2);
    }
}

#[test]
fn pulsed_separable_identities() {
    let (sys, _, eta) = cs();
    let sigma = 3.0 * sys.gamma_b();
    let g = schmidt_lattice(sigma, sigma).unwrap();
    for n in [0.1f64, 1.0, 10.0] {
        let src = SqueezedPulsed::new(n.sqrt().asinh(), 0.0, sigma, sigma, sys.omega_ba(), sys.omega_cb()).unwrap();
        let dec = schmidt_decompose(&src, &g, &g, DEFAULT_TRUNC_TOL).unwrap();
        let sq = p_squeezed_pulsed(&dec, &sys, &eta, A_EFF).unwrap();
        let cl = p_classical_pulsed(&classical_pulsed_matched(&dec).unwrap(), &sys, &eta, A_EFF).unwrap();
        assert_relative_eq!(sq.ratio(), 1.0 + 1.0 / n, max_relative = 1e-3);
        assert_relative_eq!(sq.total / cl.total, 2.0 + 1.0 / n, max_relative = 1e-3);
    }
}

#[test]
fn pulsed_high_gain_correlations_wash_out() {
    let (sys, _, _) = cs();
    let sp = 10.0 * sys.gamma_b();
    let src = SqueezedPulsed::new(1.0, 0.0, sp, 10.0 * sp, sys.omega_ba(), sys.omega_cb()).unwrap();
    let g = schmidt_lattice(sp, 10.0 * sp).unwrap();
    let basis = Arc::new(schmidt_basis(&src, &g, &g, DEFAULT_TRUNC_TOL).unwrap());
    let w = sys.omega_ba() + sys.omega_cb();
    let ratio_at = |x: f64| {
        let s = SqueezedPulsed { beta: x / basis.p()[0].sqrt(), ..src };
        let dec = SchmidtDecomposition::new(basis.clone(), &s);
        let k = g2_pulsed_kernels(&dec);
        k.coherent(w, sys.omega_ba()).unwrap().powi(2) / k.incoherent_sum_sq(w, sys.omega_ba()).unwrap()
    };
    assert!(ratio_at(0.1) > 10.0);
    assert_relative_eq!(ratio_at(5.0), 1.0, max_relative = 1e-2);
}

#[test]
fn classical_pulse_long_limit_is_cw_rate_times_time() {
    let (sys, _, eta) = cs();
    let sigma = 1e-3 * sys.gamma_b();
    let n = 1e3;
    let src = ClassicalPulsed::new(
        GaussianAmplitude::new(sys.omega_ba(), sigma).unwrap(),
        GaussianAmplitude::new(sys.omega_cb(), sigma).unwrap(),
        n,
        n,
    )
    .unwrap();
    let p = p_classical_pulsed(&src, &sys, &eta, A_EFF).unwrap().total;
    let s = cross_section(sys.omega_ba(), sys.omega_cb(), &sys, &eta).unwrap();
    let peak_rate = n * n * s / (A_EFF * A_EFF);
    assert_relative_eq!(p, peak_rate / effective_interaction_time(sigma, sigma), max_relative = 1e-3);
}

#[test]
fn ledger_count_equals_fluorescence() {
    let (sys, _, eta) = cs();
    let src = SqueezedCW::new(1.0, 0.0, sys.gamma_b(), sys.omega_ba(), sys.omega_cb()).unwrap();
    let o = rate_squeezed_cw(&src, &sys, &eta, A_EFF).unwrap();
    let f = fluorescence(&o, &sys, 1e6).unwrap();
    let l = energy_ledger(&cascade_populations(o.total, &sys), &sys).unwrap();
    assert_eq!(l.residual(), 0.0);
    assert_relative_eq!(l.photons(Transition::Da, &sys) * 1e6, f.total, max_relative = 1e-12);
}

#[test]
fn squeezed_pulse_population_is_quadratic_at_low_gain() {
    let (sys, coupling, _) = cs();
    let kappa = sqfluor_core::system::one_photon_prefactor(sys.omega_ba(), &coupling);
    let sp = sys.gamma_b();
    let src = SqueezedPulsed::new(0.01, 0.0, sp, 10.0 * sp, sys.omega_ba(), sys.omega_cb()).unwrap();
    let g = schmidt_lattice(sp, 10.0 * sp).unwrap();
    let dec = schmidt_decompose(&src, &g, &g, DEFAULT_TRUNC_TOL).unwrap();
    let low = max_intermediate_population(PopulationSource::SqueezedPulsed(&dec), &sys, kappa, A_EFF).unwrap();
    let hi_src = SqueezedPulsed { beta: 0.02, ..src };
    let hi = SchmidtDecomposition::new(dec.basis().clone(), &hi_src);
    let high = max_intermediate_population(PopulationSource::SqueezedPulsed(&hi), &sys, kappa, A_EFF).unwrap();
    assert!(low > 0.0 && low < 0.1);
    // Every mode weight is ~beta^2 p_n at low gain.
    assert_relative_eq!(high / low, 4.0, max_relative = 1e-4);
}
