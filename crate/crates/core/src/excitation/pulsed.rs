//! Pulsed squeezed light on the Schmidt lattice.
//!
//! The inner frequency integral is taken with sinc product-integration
//! weights against the `G_ba` pole, so the Green function never has to be
//! resolved by the lattice. For a lattice pump detuning `nu_q` the band-II
//! partner of band-I sample `i` is sample `q - i`, which turns both inner
//! integrals into sums along anti-diagonals. The outer integral against
//! the narrow two-photon Lorentzian interpolates those lattice values with
//! the same sinc basis inside a window around the resonance and uses the
//! plain lattice sum elsewhere.

use std::f64::consts::PI;

use faer::Mat;
use num_complex::Complex64;

use super::outcome::{ExcitationOutcome, Regime};
use crate::error::{positive, Result};
use crate::sources::SchmidtDecomposition;
use crate::spectral::{lorentzian_detuned, pole_weights, sinc_interpolate, GradedQuad, Quadrable, SpectralGrid};
use crate::system::{CrossSectionPrefactor, FourLevelSystem};

/// First-order correlation entries below this fraction of the largest are dropped.
const BAND_THRESHOLD: f64 = 1e-13;
/// Lattice rows whose diagonal is below this fraction of the largest carry no light.
const SUPPORT_THRESHOLD: f64 = 1e-24;
/// Half-width of the interpolated window, in units of `Gamma_c`.
const WINDOW_GAMMAS: f64 = 30.0;
const MIN_WINDOW_POINTS: usize = 8;

/// Values of both inner integrals at every lattice pump detuning.
#[derive(Clone, Debug)]
pub struct InnerAmplitudes {
    /// Lattice of pump detunings `nu = (w_I - w_bar_I) + (w_II - w_bar_II)`.
    pub lattice: SpectralGrid,
    /// `sum_n int dw_I/sqrt(2 pi) G_ba f_In f_IIn s_n c_n`.
    pub coherent: Vec<Complex64>,
    /// `sum_{n,m} |int dw_I/sqrt(2 pi) G_ba f_Im f_IIn s_n s_m|^2`.
    pub incoherent: Vec<f64>,
}

/// Lattice of sums of band-I and band-II detunings.
pub fn sum_lattice(grid_i: &SpectralGrid, grid_ii: &SpectralGrid) -> Result<SpectralGrid> {
    let n = grid_i.n_points() + grid_ii.n_points() - 1;
    let h = grid_i.step();
    let lo = grid_i.lo() + grid_ii.lo();
    SpectralGrid::new(lo + 0.5 * (n - 1) as f64 * h, 0.5 * (n - 1) as f64 * h, n)
}

pub fn inner_amplitudes(dec: &SchmidtDecomposition, sys: &FourLevelSystem) -> Result<InnerAmplitudes> {
    let b = dec.basis();
    let (gi, gii) = (b.grid_i(), b.grid_ii());
    let (ni, nii) = (gi.n_points(), gii.n_points());
    let lattice = sum_lattice(gi, gii)?;
    let nq = lattice.n_points();
    let (ci, _) = dec.centers();
    let z = Complex64::new(sys.omega_ba() - ci, -0.5 * sys.gamma_b());
    let wg = pole_weights(gi, z)?;
    let norm = (2.0 * PI).sqrt().recip();

    let t: Vec<f64> = dec.s().iter().zip(dec.c()).map(|(s, c)| s * c).collect();
    let k = b.cross_kernel(&t);
    let mut coherent = vec![Complex64::new(0.0, 0.0); nq];
    for (q, out) in coherent.iter_mut().enumerate() {
        let lo = q.saturating_sub(nii - 1);
        let hi = q.min(ni - 1);
        let mut acc = Complex64::new(0.0, 0.0);
        for i in lo..=hi {
            acc += wg[i] * k.read(i, q - i);
        }
        *out = acc * norm;
    }

    let w: Vec<f64> = dec.s().iter().map(|s| s * s).collect();
    let incoherent = if w.iter().all(|&x| x == 0.0) {
        vec![0.0; nq]
    } else {
        let g1i = b.first_order_i(&w);
        let g1ii = b.first_order_ii(&w);
        incoherent_sums(&wg, &g1i, &g1ii, nq)
    };
    Ok(InnerAmplitudes {
        lattice,
        coherent,
        incoherent,
    })
}

fn support(g: &Mat<f64>) -> (usize, usize) {
    let n = g.nrows();
    let max = (0..n).fold(0.0f64, |a, i| a.max(g.read(i, i)));
    let keep = |i: &usize| g.read(*i, *i) > SUPPORT_THRESHOLD * max;
    let lo = (0..n).find(keep).unwrap_or(0);
    let hi = (0..n).rev().find(keep).unwrap_or(0);
    (lo, hi)
}

/// Largest off-diagonal offset with an entry above threshold.
fn bandwidth(g: &Mat<f64>, (lo, hi): (usize, usize)) -> usize {
    let max = (lo..=hi).fold(0.0f64, |a, i| a.max(g.read(i, i).abs()));
    let thr = BAND_THRESHOLD * max;
    let mut band = 0;
    for d in 1..=(hi - lo) {
        let big = (lo..=hi - d).any(|i| g.read(i, i + d).abs() > thr);
        if !big {
            break;
        }
        band = d;
    }
    band
}

/// `I(q) = (1/2pi) Re sum_{i,k} w_i conj(w_k) G1_I(i,k) G1_II(q-i, q-k)`,
/// restricted to the band `|k - i| <= B` where both correlations live.
fn incoherent_sums(wg: &[Complex64], g1i: &Mat<f64>, g1ii: &Mat<f64>, nq: usize) -> Vec<f64> {
    let (si, sii) = (support(g1i), support(g1ii));
    let band = bandwidth(g1i, si).min(bandwidth(g1ii, sii));
    let (ni, nii) = (g1i.nrows(), g1ii.nrows());

    // a[d][i] = Re(w_i conj(w_{i+d})) G1_I(i, i+d); c[d][j] = G1_II(j, j-d).
    // Offsets -d contribute the same real part as +d.
    let mut a = vec![vec![0.0; ni]; band + 1];
    let mut c = vec![vec![0.0; nii]; band + 1];
    for d in 0..=band {
        for i in si.0..=si.1 {
            if i + d <= si.1 {
                a[d][i] = (wg[i] * wg[i + d].conj()).re * g1i.read(i, i + d);
            }
        }
        for j in (sii.0 + d)..=sii.1 {
            c[d][j] = g1ii.read(j, j - d);
        }
    }

    let mut out = vec![0.0; nq];
    for (q, slot) in out.iter_mut().enumerate() {
        let mut total = 0.0;
        for d in 0..=band {
            // i in the band-I support with q - i in [sii.0 + d, sii.1].
            let lo = si.0.max(q.saturating_sub(sii.1));
            let hi_i = si.1.saturating_sub(d);
            if q < sii.0 + d {
                continue;
            }
            let hi = hi_i.min(q - sii.0 - d);
            if lo > hi {
                continue;
            }
            let mut acc = 0.0;
            let (ad, cd) = (&a[d], &c[d]);
            for i in lo..=hi {
                acc += ad[i] * cd[q - i];
            }
            total += if d == 0 { acc } else { 2.0 * acc };
        }
        *slot = total / (2.0 * PI);
    }
    out
}

/// `int dnu L(nu - nu_l) F(nu)` for `F` known on `lattice`.
pub fn outer_integral<T, F>(
    samples: &[T],
    lattice: &SpectralGrid,
    nu_l: f64,
    gamma_c: f64,
    density: F,
) -> Result<f64>
where
    T: Quadrable,
    F: Fn(T) -> f64,
{
    let h = lattice.step();
    let nq = lattice.n_points();
    let lor = |nu: f64| lorentzian_detuned(nu - nu_l, gamma_c);
    let m = MIN_WINDOW_POINTS.max((WINDOW_GAMMAS * gamma_c / h).ceil() as usize);
    let centre = lattice.position(nu_l).round();
    let lattice_sum = |range: std::ops::Range<usize>| -> f64 {
        range.map(|q| lor(lattice.point(q)) * density(samples[q])).sum::<f64>() * h
    };
    let edge = |q: usize| 0.5 * h * lor(lattice.point(q)) * density(samples[q]);

    if centre < -(m as f64) || centre > (nq - 1 + m) as f64 {
        // The resonance lies outside the light: the lattice sum is smooth enough.
        return Ok(lattice_sum(0..nq) - edge(0) - edge(nq - 1));
    }
    let c = centre.clamp(0.0, (nq - 1) as f64) as usize;
    let a = c.saturating_sub(m);
    let b = (c + m).min(nq - 1);
    let near = GradedQuad::new(lattice.point(a), lattice.point(b))
        .feature(nu_l, 0.5 * gamma_c)
        .max_step(0.25 * h)
        .integrate(|nu| lor(nu) * density(sinc_interpolate(samples, lattice, nu)))?
        .value;
    let left = if a > 0 { lattice_sum(0..a) + edge(a) } else { 0.0 };
    let right = if b < nq - 1 { edge(b) + lattice_sum(b + 1..nq) } else { 0.0 };
    Ok(near + left + right)
}

/// Coherent and incoherent excitation probabilities per pulse.
pub fn p_squeezed_pulsed(
    dec: &SchmidtDecomposition,
    sys: &FourLevelSystem,
    eta: &CrossSectionPrefactor,
    a_eff: f64,
) -> Result<ExcitationOutcome> {
    positive("a_eff", a_eff)?;
    let regime = Regime::PulsedSqueezed;
    if dec.beta() == 0.0 {
        return ExcitationOutcome::new(0.0, 0.0, regime);
    }
    let inner = inner_amplitudes(dec, sys)?;
    let (ci, cii) = dec.centers();
    let nu_l = sys.omega_ca() - (ci + cii);
    let gc = sys.gamma_c();
    let k = eta.eta / (a_eff * a_eff);
    let coherent = outer_integral(&inner.coherent, &inner.lattice, nu_l, gc, |d| d.norm_sqr())?;
    let incoherent = outer_integral(&inner.incoherent, &inner.lattice, nu_l, gc, |v| v.max(0.0))?;
    ExcitationOutcome::new(k * coherent, k * incoherent, regime)
}
