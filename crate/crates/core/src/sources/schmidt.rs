//! Schmidt decomposition of the discretised joint spectral amplitude.
//!
//! The JSA is sampled on two detuning lattices with a common step `h`.
//! The singular vectors of `h * JSA` divided by `sqrt(h)` are the
//! continuum-normalised modes, and the squared singular values are the
//! Schmidt weights. When both lattices coincide the matrix is symmetric
//! and a symmetric eigendecomposition is used instead: the partner mode
//! is then the same vector times the sign of the eigenvalue.

use std::io::{self, Write};
use std::sync::Arc;

use faer::{Mat, Side};

use super::pulsed::{jsa_detuned, SqueezedPulsed};
use crate::error::{invalid, positive, Error, Result};
use crate::spectral::SpectralGrid;

pub const DEFAULT_TRUNC_TOL: f64 = 1e-10;
pub const MAX_LATTICE_POINTS: usize = 1201;
/// Lattice half-span in units of `sigma_c`.
pub const LATTICE_SPAN: f64 = 6.0;
/// Allowed deviation of the discretised JSA norm from one.
pub const NORM_TOL: f64 = 1e-4;
/// JSA entries below this fraction of the peak are stored as zero.
pub const JSA_FLOOR: f64 = 1e-150;

/// Default detuning lattice: step `sigma_p / 2` over `+-6 sigma_c`, with the
/// step widened when the point count would exceed `MAX_LATTICE_POINTS`.
pub fn schmidt_lattice(sigma_p: f64, sigma_c: f64) -> Result<SpectralGrid> {
    positive("sigma_p", sigma_p)?;
    positive("sigma_c", sigma_c)?;
    let half = LATTICE_SPAN * sigma_c.max(sigma_p);
    let mut h = 0.5 * sigma_p;
    let mut half_points = (half / h).ceil() as usize;
    let cap = (MAX_LATTICE_POINTS - 1) / 2;
    if half_points > cap {
        half_points = cap;
        h = half / cap as f64;
    }
    SpectralGrid::with_step(0.0, h, half_points)
}

/// The gain-independent part of a decomposition.
#[derive(Clone, Debug)]
pub struct SchmidtBasis {
    grid_i: SpectralGrid,
    grid_ii: SpectralGrid,
    sigma_p: f64,
    sigma_c: f64,
    p: Vec<f64>,
    raw_norm: f64,
    tail: f64,
    symmetric: bool,
    modes_i: Mat<f64>,
    modes_ii: Mat<f64>,
}

impl SchmidtBasis {
    pub fn grid_i(&self) -> &SpectralGrid {
        &self.grid_i
    }
    pub fn grid_ii(&self) -> &SpectralGrid {
        &self.grid_ii
    }
    pub fn step(&self) -> f64 {
        self.grid_i.step()
    }
    pub fn widths(&self) -> (f64, f64) {
        (self.sigma_p, self.sigma_c)
    }
    pub fn n_modes(&self) -> usize {
        self.p.len()
    }
    /// Schmidt weights of the retained modes, descending, summing to one.
    pub fn p(&self) -> &[f64] {
        &self.p
    }
    /// Sum of all squared singular values before normalisation.
    pub fn raw_norm(&self) -> f64 {
        self.raw_norm
    }
    /// Weight discarded by truncation.
    pub fn tail(&self) -> f64 {
        self.tail
    }
    /// True when both bands share one lattice, so that the band-II modes
    /// equal the band-I modes up to sign.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }
    pub fn mode_i(&self, n: usize) -> &[f64] {
        self.modes_i.col_as_slice(n)
    }
    pub fn mode_ii(&self, n: usize) -> &[f64] {
        self.modes_ii.col_as_slice(n)
    }

    /// `sum_n w_n f_In(x_i) f_IIn(y_j)` as an `N_I x N_II` matrix.
    pub fn cross_kernel(&self, weights: &[f64]) -> Mat<f64> {
        scaled_outer(&self.modes_i, &self.modes_ii, weights)
    }

    /// `sum_n w_n f_In(x_i) f_In(x_k)`.
    pub fn first_order_i(&self, weights: &[f64]) -> Mat<f64> {
        scaled_outer(&self.modes_i, &self.modes_i, weights)
    }

    pub fn first_order_ii(&self, weights: &[f64]) -> Mat<f64> {
        if self.symmetric {
            return self.first_order_i(weights);
        }
        scaled_outer(&self.modes_ii, &self.modes_ii, weights)
    }
}

fn scaled_outer(a: &Mat<f64>, b: &Mat<f64>, w: &[f64]) -> Mat<f64> {
    let k = w.len().min(a.ncols());
    let aw = Mat::from_fn(a.nrows(), k, |i, n| a.read(i, n) * w[n]);
    let bk = b.as_ref().subcols(0, k);
    &aw * bk.transpose()
}

/// Decomposes the JSA of `src` on two detuning lattices.
pub fn schmidt_basis(
    src: &SqueezedPulsed,
    grid_i: &SpectralGrid,
    grid_ii: &SpectralGrid,
    trunc_tol: f64,
) -> Result<SchmidtBasis> {
    if !(trunc_tol > 0.0 && trunc_tol < 1.0) {
        return Err(invalid("trunc_tol", "must lie in (0, 1)"));
    }
    let h = grid_i.step();
    if (grid_ii.step() - h).abs() > 1e-12 * h {
        return Err(invalid("grid_II", "both lattices must share one step"));
    }
    let reach = LATTICE_SPAN * src.sigma_c * (1.0 - 1e-9);
    for g in [grid_i, grid_ii] {
        if g.lo() > -reach || g.hi() < reach {
            return Err(invalid("grid", "lattices must cover +-6 sigma_c about each centre"));
        }
    }
    let (ni, nii) = (grid_i.n_points(), grid_ii.n_points());
    // Corner entries underflow to subnormals, which the dense solvers turn
    // into NaN. Anything this small cannot affect the weights.
    let floor = JSA_FLOOR * h * jsa_detuned(0.0, 0.0, src.sigma_p, src.sigma_c);
    let m = Mat::from_fn(ni, nii, |i, j| {
        let v = h * jsa_detuned(grid_i.point(i), grid_ii.point(j), src.sigma_p, src.sigma_c);
        if v < floor {
            0.0
        } else {
            v
        }
    });

    // (singular value, column in U, column in V, partner sign)
    let (sing, u, v, signs): (Vec<f64>, Mat<f64>, Mat<f64>, Vec<f64>) = if grid_i == grid_ii {
        let eig = m.selfadjoint_eigendecomposition(Side::Lower);
        let vals: Vec<f64> = (0..ni).map(|k| eig.s().column_vector().read(k)).collect();
        let mut order: Vec<usize> = (0..ni).collect();
        order.sort_by(|&a, &b| vals[b].abs().total_cmp(&vals[a].abs()));
        let u = Mat::from_fn(ni, ni, |i, k| eig.u().read(i, order[k]));
        let signs = order.iter().map(|&k| if vals[k] < 0.0 { -1.0 } else { 1.0 }).collect();
        (order.iter().map(|&k| vals[k].abs()).collect(), u.clone(), u, signs)
    } else {
        let svd = m.thin_svd();
        let r = ni.min(nii);
        let s = (0..r).map(|k| svd.s_diagonal().read(k)).collect();
        (s, svd.u().to_owned(), svd.v().to_owned(), vec![1.0; r])
    };

    let raw: Vec<f64> = sing.iter().map(|s| s * s).collect();
    let raw_norm: f64 = raw.iter().sum();
    if !raw_norm.is_finite() {
        return Err(Error::Linalg(format!("decomposition returned a non-finite norm ({raw_norm})")));
    }
    if (raw_norm - 1.0).abs() > NORM_TOL {
        return Err(Error::GridTooCoarse {
            tail: (raw_norm - 1.0).abs(),
            tol: NORM_TOL,
        });
    }
    let mut kept = 0;
    let mut cum = 0.0;
    while kept < raw.len() && cum < 1.0 - trunc_tol {
        cum += raw[kept] / raw_norm;
        kept += 1;
    }
    if cum < 1.0 - trunc_tol {
        return Err(Error::GridTooCoarse {
            tail: 1.0 - cum,
            tol: trunc_tol,
        });
    }
    let tail = (1.0 - cum).max(0.0);
    let p: Vec<f64> = raw[..kept].iter().map(|r| r / (raw_norm * cum)).collect();

    let scale = h.sqrt().recip();
    let centre = grid_i.position(0.0).round().clamp(0.0, (ni - 1) as f64) as usize;
    let mut modes_i = Mat::zeros(ni, kept);
    let mut modes_ii = Mat::zeros(nii, kept);
    for n in 0..kept {
        let col = u.col_as_slice(n);
        let peak = col.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        let first = col[centre..]
            .iter()
            .find(|x| x.abs() > 1e-6 * peak)
            .copied()
            .unwrap_or(1.0);
        let flip = if first < 0.0 { -1.0 } else { 1.0 };
        for i in 0..ni {
            modes_i.write(i, n, flip * scale * u.read(i, n));
        }
        for j in 0..nii {
            modes_ii.write(j, n, flip * signs[n] * scale * v.read(j, n));
        }
    }

    Ok(SchmidtBasis {
        grid_i: *grid_i,
        grid_ii: *grid_ii,
        sigma_p: src.sigma_p,
        sigma_c: src.sigma_c,
        p,
        raw_norm,
        tail,
        symmetric: grid_i == grid_ii,
        modes_i,
        modes_ii,
    })
}

/// A basis together with the per-mode gains of one squeezing strength.
#[derive(Clone, Debug)]
pub struct SchmidtDecomposition {
    basis: Arc<SchmidtBasis>,
    beta: f64,
    phase: f64,
    center_i: f64,
    center_ii: f64,
    s: Vec<f64>,
    c: Vec<f64>,
}

impl SchmidtDecomposition {
    /// `s_n = sinh(|beta| sqrt(p_n))`, `c_n = cosh(|beta| sqrt(p_n))`.
    pub fn new(basis: Arc<SchmidtBasis>, src: &SqueezedPulsed) -> Self {
        let (s, c) = basis
            .p()
            .iter()
            .map(|p| {
                let x = src.beta * p.sqrt();
                (x.sinh(), x.cosh())
            })
            .unzip();
        Self {
            basis,
            beta: src.beta,
            phase: src.phase,
            center_i: src.center_i,
            center_ii: src.center_ii,
            s,
            c,
        }
    }

    pub fn basis(&self) -> &Arc<SchmidtBasis> {
        &self.basis
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    /// Global phase of the gain. It drops out of every probability.
    pub fn phase(&self) -> f64 {
        self.phase
    }
    pub fn centers(&self) -> (f64, f64) {
        (self.center_i, self.center_ii)
    }
    pub fn p(&self) -> &[f64] {
        self.basis.p()
    }
    pub fn s(&self) -> &[f64] {
        &self.s
    }
    pub fn c(&self) -> &[f64] {
        &self.c
    }
    pub fn n_modes(&self) -> usize {
        self.s.len()
    }
    pub fn tail(&self) -> f64 {
        self.basis.tail()
    }
}

pub fn schmidt_decompose(
    src: &SqueezedPulsed,
    grid_i: &SpectralGrid,
    grid_ii: &SpectralGrid,
    trunc_tol: f64,
) -> Result<SchmidtDecomposition> {
    let basis = schmidt_basis(src, grid_i, grid_ii, trunc_tol)?;
    Ok(SchmidtDecomposition::new(Arc::new(basis), src))
}

/// Mean photon number per band, `sum_n sinh^2(|beta| sqrt(p_n))`.
pub fn photon_number_pulsed(dec: &SchmidtDecomposition) -> f64 {
    dec.s().iter().map(|s| s * s).sum()
}

/// Point evaluators of the second-order correlation kernels, with mode
/// tables interpolated linearly between lattice points.
#[derive(Clone, Copy, Debug)]
pub struct PulsedKernels<'a> {
    dec: &'a SchmidtDecomposition,
}

pub fn g2_pulsed_kernels(dec: &SchmidtDecomposition) -> PulsedKernels<'_> {
    PulsedKernels { dec }
}

fn interp(table: &[f64], grid: &SpectralGrid, detuning: f64) -> Result<f64> {
    if !grid.contains(detuning) {
        return Err(Error::OutOfGrid { detuning });
    }
    let u = grid.position(detuning).clamp(0.0, (table.len() - 1) as f64);
    let k = (u.floor() as usize).min(table.len() - 2);
    let t = u - k as f64;
    Ok((1.0 - t) * table[k] + t * table[k + 1])
}

impl PulsedKernels<'_> {
    fn detunings(&self, omega: f64, omega_i: f64) -> (f64, f64) {
        let (ci, cii) = self.dec.centers();
        (omega_i - ci, omega - omega_i - cii)
    }

    fn modes_at(&self, omega: f64, omega_i: f64, n: usize) -> Result<(f64, f64)> {
        let b = self.dec.basis();
        let (di, dii) = self.detunings(omega, omega_i);
        Ok((interp(b.mode_i(n), b.grid_i(), di)?, interp(b.mode_ii(n), b.grid_ii(), dii)?))
    }

    /// `f_IIn(w - w_I) f_In(w_I) s_n c_n` for one mode.
    pub fn coherent_mode(&self, n: usize, omega: f64, omega_i: f64) -> Result<f64> {
        let (fi, fii) = self.modes_at(omega, omega_i, n)?;
        Ok(fii * fi * self.dec.s()[n] * self.dec.c()[n])
    }

    /// `sum_n f_IIn(w - w_I) f_In(w_I) s_n c_n`.
    pub fn coherent(&self, omega: f64, omega_i: f64) -> Result<f64> {
        (0..self.dec.n_modes()).try_fold(0.0, |acc, n| Ok(acc + self.coherent_mode(n, omega, omega_i)?))
    }

    /// `f_IIn(w - w_I) f_Im(w_I) s_n s_m`.
    pub fn incoherent(&self, n: usize, m: usize, omega: f64, omega_i: f64) -> Result<f64> {
        let (_, fii) = self.modes_at(omega, omega_i, n)?;
        let (fi, _) = self.modes_at(omega, omega_i, m)?;
        Ok(fii * fi * self.dec.s()[n] * self.dec.s()[m])
    }

    /// `sum_{n,m} incoherent(n, m)^2`, which factorises into two single sums.
    pub fn incoherent_sum_sq(&self, omega: f64, omega_i: f64) -> Result<f64> {
        let mut a = 0.0;
        let mut b = 0.0;
        for n in 0..self.dec.n_modes() {
            let (fi, fii) = self.modes_at(omega, omega_i, n)?;
            let s2 = self.dec.s()[n].powi(2);
            a += fii * fii * s2;
            b += fi * fi * s2;
        }
        Ok(a * b)
    }
}

/// Writes `n,p_n` rows.
pub fn write_spectrum_csv<W: Write>(mut w: W, basis: &SchmidtBasis) -> io::Result<()> {
    writeln!(w, "n,p_n")?;
    for (n, p) in basis.p().iter().enumerate() {
        writeln!(w, "{n},{p:.15e}")?;
    }
    Ok(())
}
