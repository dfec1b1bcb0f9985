//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::cs;
use sqfluor_core::excitation::*;
use sqfluor_core::geometry::{fwhm_to_sigma, waist_fwhm_to_w0};
use sqfluor_core::sources::*;
use sqfluor_core::spectral::GaussianAmplitude;
use sqfluor_core::system::{CS_LAMBDA_BA, CS_LAMBDA_CB};
use sqfluor_core::{
    effective_area, effective_area_equal, AtomCloud, BeamProfile, FourLevelSystem, RateTable,
    Result, Transition,
};

// Any positive area works for ratios; absolute checks use the same value.
const A_EFF: f64 = 2e-8;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Result<Verdict> {
    Ok(Verdict { pass, detail })
}

fn within(value: f64, target: f64, rel: f64) -> bool {
    (value - target).abs() <= rel * target.abs()
}

/// Least-squares slope of `ln y` against `ln x`.
fn log_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

fn log_points(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| (lo.ln() + (hi / lo).ln() * k as f64 / (n - 1) as f64).exp())
        .collect()
}

fn effective_area_check() -> Result<Verdict> {
    let t0 = Instant::now();
    let fwhm = 0.1e-3;
    let cloud = AtomCloud::new(fwhm_to_sigma(fwhm), 1e6)?;
    let target = 220e-12;
    let mut parts = Vec::new();
    let mut best = f64::INFINITY;
    for (label, w0) in [("w0=fwhm/sqrt(2ln2)", waist_fwhm_to_w0(fwhm)), ("w0=fwhm/2", 0.5 * fwhm)] {
        let ba = BeamProfile::from_wavelength(w0, CS_LAMBDA_BA)?;
        let cb = BeamProfile::from_wavelength(w0, CS_LAMBDA_CB)?;
        for (zr, a) in [
            ("zR(ba)", effective_area_equal(&ba, &cloud)?.a_eff),
            ("zR(cb)", effective_area_equal(&cb, &cloud)?.a_eff),
            ("per-beam", effective_area(&ba, &cb, &cloud)?.a_eff),
        ] {
            parts.push(format!("{label} {zr} {:.0} um^2", a * 1e12));
            if (a - target).abs() < (best - target).abs() {
                best = a;
            }
        }
    }
    let dt = t0.elapsed().as_secs_f64();
    verdict(
        within(best, target, 0.05) && dt < 1.0,
        format!("target 220 um^2 +-5%; closest {:.0} um^2; {}; {dt:.3} s", best * 1e12, parts.join(", ")),
    )
}

fn cw_narrowband() -> Result<Verdict> {
    let (sys, _, eta) = cs();
    let mut ok = true;
    let mut parts = Vec::new();
    for beta in [10.0, 20.0] {
        let t0 = Instant::now();
        let src = SqueezedCW::new(beta, 0.0, 0.01 * sys.gamma_b(), sys.omega_ba(), sys.omega_cb())?;
        let sq = rate_squeezed_cw(&src, &sys, &eta, A_EFF)?;
        let cl = rate_classical_cw(&classical_cw_matched(&src, A_EFF)?, &sys, &eta)?;
        let r = sq.total / cl.total;
        let dt = t0.elapsed().as_secs_f64();
        ok &= within(r, 2.0, 0.05) && dt < 10.0;
        parts.push(format!("beta_bar={beta}: {r:.4} ({dt:.2} s)"));
    }
    verdict(ok, format!("total/classical target 2 +-5%; {}", parts.join(", ")))
}

fn cw_broadband_ratio() -> Result<Verdict> {
    let (sys, _, eta) = cs();
    let gb_gc = sys.gamma_b() / sys.gamma_c();
    let mut ok = true;
    let mut parts = Vec::new();
    for beta in [0.1, 0.3, 1.0, 3.0, 10.0] {
        let src = SqueezedCW::new(beta, 0.0, 100.0 * sys.gamma_b(), sys.omega_ba(), sys.omega_cb())?;
        let o = rate_squeezed_cw(&src, &sys, &eta, A_EFF)?;
        let s = src.gain_at(sys.omega_ba() - src.center_i, Band::I).s;
        let law = gb_gc * (1.0 + 1.0 / (s * s));
        ok &= within(o.ratio(), law, 0.05);
        parts.push(format!("{beta}: {:.4}/{law:.4}", o.ratio()));
    }
    let src = SqueezedCW::new(30.0, 0.0, 100.0 * sys.gamma_b(), sys.omega_ba(), sys.omega_cb())?;
    let limit = rate_squeezed_cw(&src, &sys, &eta, A_EFF)?.ratio();
    ok &= within(limit, 2.11, 0.05);
    verdict(
        ok,
        format!(
            "coh/incoh vs law at beta_bar {}; beta_bar=30: {limit:.4} (target 2.11 +-5%)",
            parts.join(", ")
        ),
    )
}

fn scaling_exponents() -> Result<Verdict> {
    let (sys, _, eta) = cs();
    let mut ok = true;
    let mut parts = Vec::new();
    for col in [0.01, 0.1, 1.0, 10.0, 100.0] {
        let base = SqueezedCW::new(1.0, 0.0, col * sys.gamma_b(), sys.omega_ba(), sys.omega_cb())?;
        let mut slopes = Vec::new();
        let mut cl_slopes = Vec::new();
        for (lo, hi) in [(1e-3, 1e-2), (10.0, 30.0)] {
            let (mut x, mut coh, mut cl) = (Vec::new(), Vec::new(), Vec::new());
            for b in log_points(lo, hi, 5) {
                let src = base.with_beta(b);
                x.push(photon_rate_cw(&src, Band::I)?);
                coh.push(rate_squeezed_cw(&src, &sys, &eta, A_EFF)?.coherent);
                cl.push(rate_classical_cw(&classical_cw_matched(&src, A_EFF)?, &sys, &eta)?.total);
            }
            slopes.push(log_slope(&x, &coh));
            cl_slopes.push(log_slope(&x, &cl));
        }
        let col_ok = within(slopes[0], 1.0, 0.02)
            && within(slopes[1], 2.0, 0.01)
            && cl_slopes.iter().all(|s| within(*s, 2.0, 0.01));
        ok &= col_ok;
        parts.push(format!(
            "{col}Gb: low {:.4} high {:.4} cl {:.4}/{:.4}{}",
            slopes[0],
            slopes[1],
            cl_slopes[0],
            cl_slopes[1],
            if col_ok { "" } else { " (out)" }
        ));
    }
    verdict(ok, format!("slopes target 1.00/2.00/2.00 +-0.02; {}", parts.join("; ")))
}

fn low_gain_rate() -> Result<Verdict> {
    let (sys, _, _) = cs();
    let src = SqueezedCW::new(0.01, 0.0, sys.gamma_b(), sys.omega_ba(), sys.omega_cb())?;
    let r = photon_rate_cw(&src, Band::I)? * src.coherence_time() / 1e-4;
    verdict(within(r, 1.0, 0.01), format!("rate*T_c/beta_bar^2 = {r:.6} (target 1 +-1%)"))
}

fn schmidt_oracle() -> Result<Verdict> {
    let t0 = Instant::now();
    let sp = 1.0;
    let mut ok = true;
    let mut parts = Vec::new();
    for ratio in [10.0, 100.0] {
        let sc = ratio * sp;
        let g = schmidt_lattice(sp, sc)?;
        let basis = schmidt_basis(&SqueezedPulsed::new(1.0, 0.0, sp, sc, 0.0, 0.0)?, &g, &g, DEFAULT_TRUNC_TOL)?;
        let mu = ((sc - sp) / (sc + sp)).powi(2);
        let dev = (0..20)
            .map(|n| (basis.p().get(n).copied().unwrap_or(0.0) - (1.0 - mu) * mu.powi(n as i32)).abs())
            .fold(0.0, f64::max);
        ok &= dev <= 1e-4;
        parts.push(format!("ratio {ratio}: max dev {dev:.2e}"));
    }
    let g = schmidt_lattice(sp, sp)?;
    let sep = schmidt_basis(&SqueezedPulsed::new(1.0, 0.0, sp, sp, 0.0, 0.0)?, &g, &g, DEFAULT_TRUNC_TOL)?;
    let p0 = sep.p()[0];
    ok &= (p0 - 1.0).abs() <= 1e-6;
    let dt = t0.elapsed().as_secs_f64();
    ok &= dt < 5.0;
    verdict(ok, format!("{}; separable p0 = {p0:.9}; {dt:.2} s", parts.join(", ")))
}

fn pulsed_separable() -> Result<Verdict> {
    let (sys, _, eta) = cs();
    let sigma = sys.gamma_b();
    let g = schmidt_lattice(sigma, sigma)?;
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [0.1f64, 1.0, 10.0] {
        let src = SqueezedPulsed::new(n.sqrt().asinh(), 0.0, sigma, sigma, sys.omega_ba(), sys.omega_cb())?;
        let dec = schmidt_decompose(&src, &g, &g, DEFAULT_TRUNC_TOL)?;
        let sq = p_squeezed_pulsed(&dec, &sys, &eta, A_EFF)?;
        let cl = p_classical_pulsed(&classical_pulsed_matched(&dec)?, &sys, &eta, A_EFF)?;
        let (r, t) = (sq.ratio(), sq.total / cl.total);
        ok &= within(r, 1.0 + 1.0 / n, 0.01) && within(t, 2.0 + 1.0 / n, 0.01);
        parts.push(format!("N={n}: coh/incoh {r:.5} tot/cl {t:.5}"));
    }
    verdict(ok, parts.join(", "))
}

fn pulsed_broadband() -> Result<Verdict> {
    let (sys, _, eta) = cs();
    let sp = 10.0 * sys.gamma_b();
    let w = sys.omega_ba() + sys.omega_cb();
    let mut ok = true;
    let mut parts = Vec::new();
    for ratio in [10.0, 100.0] {
        let src = SqueezedPulsed::new(1.0, 0.0, sp, ratio * sp, sys.omega_ba(), sys.omega_cb())?;
        let g = schmidt_lattice(sp, ratio * sp)?;
        let basis = Arc::new(schmidt_basis(&src, &g, &g, DEFAULT_TRUNC_TOL)?);
        let p0 = basis.p()[0];
        let mut g2 = Vec::new();
        let mut full = Vec::new();
        for x in [3.0, 5.0, 8.0] {
            let dec = SchmidtDecomposition::new(basis.clone(), &SqueezedPulsed { beta: x / p0.sqrt(), ..src });
            let k = g2_pulsed_kernels(&dec);
            let r = k.coherent(w, sys.omega_ba())?.powi(2) / k.incoherent_sum_sq(w, sys.omega_ba())?;
            ok &= within(r, 1.0, 0.05);
            g2.push(format!("{r:.4}"));
            full.push(format!("{:.3}", p_squeezed_pulsed(&dec, &sys, &eta, A_EFF)?.ratio()));
        }
        parts.push(format!(
            "ratio {ratio}: G2 coh/incoh at |beta|sqrt(p0)=3,5,8 {}; probability ratio {}",
            g2.join("/"),
            full.join("/")
        ));
    }
    verdict(ok, format!("target 1 +-5%; {}", parts.join("; ")))
}

fn random_system(rng: &mut StdRng) -> Result<FourLevelSystem> {
    let mut rates = || RateTable {
        ba: rng.gen_range(1e6..1e8),
        cb: rng.gen_range(1e6..1e8),
        cd: rng.gen_range(1e6..1e8),
        da: rng.gen_range(1e6..1e8),
    };
    let (radiative, mut nonradiative) = (rates(), rates());
    nonradiative.cb *= rng.gen_range(0.0..1.0);
    let w_ba = rng.gen_range(1e15..3e15);
    let w_cb = rng.gen_range(1e15..3e15);
    let w_cd = rng.gen_range(0.2..0.8) * (w_ba + w_cb);
    FourLevelSystem::new(w_ba, w_cb, w_cd, w_ba + w_cb - w_cd, radiative, nonradiative)
}

fn energy_conservation() -> Result<Verdict> {
    let mut rng = StdRng::seed_from_u64(20_240_601);
    let mut worst_residual = 0.0f64;
    let mut worst_count = 0.0f64;
    for _ in 0..1000 {
        let sys = random_system(&mut rng)?;
        let p = 10f64.powf(rng.gen_range(-12.0..-1.0));
        let n_atoms = 10f64.powf(rng.gen_range(0.0..8.0));
        let coherent = rng.gen_range(0.0..1.0) * p;
        let outcome = ExcitationOutcome::new(coherent, p - coherent, Regime::CwSqueezed)?;
        let ledger = energy_ledger(&cascade_populations(outcome.total, &sys), &sys)?;
        worst_residual = worst_residual.max(ledger.residual().abs());
        let count = fluorescence(&outcome, &sys, n_atoms)?.total;
        let from_ledger = ledger.photons(Transition::Da, &sys) * n_atoms;
        worst_count = worst_count.max(((from_ledger - count) / count).abs());
    }
    verdict(
        worst_residual == 0.0 && worst_count <= 1e-12,
        format!("1000 ledgers: max |residual| {worst_residual:e}, max count rel err {worst_count:.2e}"),
    )
}

fn long_pulse_limit() -> Result<Verdict> {
    let (sys, _, eta) = cs();
    let sigma = 1e-3 * sys.gamma_b();
    let pulse = ClassicalPulsed::new(
        GaussianAmplitude::new(sys.omega_ba(), sigma)?,
        GaussianAmplitude::new(sys.omega_cb(), sigma)?,
        1.0,
        1.0,
    )?;
    let p = p_classical_pulsed(&pulse, &sys, &eta, A_EFF)?.total;
    let cw = ClassicalCW::new(1.0 / A_EFF, 1.0 / A_EFF, sys.omega_ba(), sys.omega_cb())?;
    let rate = rate_classical_cw(&cw, &sys, &eta)?.total;
    let r = p * effective_interaction_time(sigma, sigma) / rate;
    verdict(
        within(r, 1.0, 0.01),
        format!("pulse probability x T / cw rate = {r:.6} at sigma = 1e-3 Gamma_b"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Result<Verdict>); 10] = [
        ("effective area", effective_area_check),
        ("cw narrowband high gain", cw_narrowband),
        ("cw broadband ratio law", cw_broadband_ratio),
        ("scaling exponents", scaling_exponents),
        ("low-gain photon rate", low_gain_rate),
        ("schmidt spectrum oracle", schmidt_oracle),
        ("pulsed separable identities", pulsed_separable),
        ("pulsed broadband convergence", pulsed_broadband),
        ("energy conservation", energy_conservation),
        ("long-pulse oracle equivalence", long_pulse_limit),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let v = check().unwrap_or_else(|e| Verdict {
            pass: false,
            detail: format!("error: {e}"),
        });
        failed += usize::from(!v.pass);
        println!("{} criterion {:>2} {name}: {}", if v.pass { "PASS" } else { "FAIL" }, k + 1, v.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
