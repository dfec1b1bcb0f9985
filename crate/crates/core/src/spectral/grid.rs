use super::{rel_diff, Quadrable};
use crate::error::{invalid, positive, Error, Result};

pub const DEFAULT_POINTS: usize = 4001;
/// Default half span in units of the widest width in play.
pub const DEFAULT_SPAN_FACTOR: f64 = 30.0;
pub const CONVERGENCE_REL_TOL: f64 = 1e-6;
pub const MAX_DOUBLINGS: u32 = 6;

/// Uniform odd-sized detuning grid. Point `k` sits at `center - half_span + k * step`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralGrid {
    center: f64,
    half_span: f64,
    n_points: usize,
}

impl SpectralGrid {
    pub fn new(center: f64, half_span: f64, n_points: usize) -> Result<Self> {
        if !center.is_finite() {
            return Err(invalid("center", "must be finite"));
        }
        positive("half_span", half_span)?;
        if n_points < 3 || n_points % 2 == 0 {
            return Err(invalid(
                "n_points",
                format!("must be odd and >= 3, got {n_points}"),
            ));
        }
        Ok(Self {
            center,
            half_span,
            n_points,
        })
    }

    /// Grid with the given step and `2 * half_points + 1` points.
    pub fn with_step(center: f64, step: f64, half_points: usize) -> Result<Self> {
        positive("step", step)?;
        Self::new(center, step * half_points as f64, 2 * half_points + 1)
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn half_span(&self) -> f64 {
        self.half_span
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn step(&self) -> f64 {
        2.0 * self.half_span / (self.n_points - 1) as f64
    }

    pub fn lo(&self) -> f64 {
        self.center - self.half_span
    }

    pub fn hi(&self) -> f64 {
        self.center + self.half_span
    }

    /// Index of the centre point.
    pub fn mid(&self) -> usize {
        (self.n_points - 1) / 2
    }

    #[inline]
    pub fn point(&self, k: usize) -> f64 {
        self.lo() + k as f64 * self.step()
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(move |k| self.point(k))
    }

    /// Fractional index of `x`; integer values land on grid points.
    pub fn position(&self, x: f64) -> f64 {
        (x - self.lo()) / self.step()
    }

    pub fn contains(&self, x: f64) -> bool {
        let eps = 1e-12 * self.half_span;
        x >= self.lo() - eps && x <= self.hi() + eps
    }

    /// Same span with every interval halved; old points stay at even indices.
    pub fn refined(&self) -> Self {
        Self {
            n_points: 2 * (self.n_points - 1) + 1,
            ..*self
        }
    }

    /// Composite Simpson weight of point `k`.
    pub fn simpson_weight(&self, k: usize) -> f64 {
        let h3 = self.step() / 3.0;
        if k == 0 || k == self.n_points - 1 {
            h3
        } else if k % 2 == 1 {
            4.0 * h3
        } else {
            2.0 * h3
        }
    }
}

/// Grid centred on `center` spanning the default multiple of the widest width.
pub fn default_grid(center: f64, widths: &[f64]) -> Result<SpectralGrid> {
    let w = widths.iter().cloned().fold(0.0, f64::max);
    SpectralGrid::new(center, DEFAULT_SPAN_FACTOR * w, DEFAULT_POINTS)
}

/// Result of a certified quadrature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quad<T> {
    pub value: T,
    pub achieved_rel_err: f64,
    pub n_points: usize,
}

fn sample<T: Quadrable, F: Fn(f64) -> T>(f: &F, grid: &SpectralGrid, k: usize) -> Result<T> {
    let x = grid.point(k);
    let v = f(x);
    if v.finite() {
        Ok(v)
    } else {
        Err(Error::NonFiniteIntegrand { index: k, omega: x })
    }
}

fn simpson_sum<T: Quadrable>(values: &[T], grid: &SpectralGrid) -> T {
    values
        .iter()
        .enumerate()
        .fold(T::zero(), |acc, (k, &v)| acc + v * grid.simpson_weight(k))
}

/// Composite Simpson estimate of the integral of `f` over `grid`.
pub fn quad_1d<T: Quadrable, F: Fn(f64) -> T>(f: F, grid: &SpectralGrid) -> Result<T> {
    let values = (0..grid.n_points())
        .map(|k| sample(&f, grid, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(simpson_sum(&values, grid))
}

pub fn quad_converged<T: Quadrable, F: Fn(f64) -> T>(f: F, grid: &SpectralGrid) -> Result<Quad<T>> {
    quad_converged_with(f, grid, CONVERGENCE_REL_TOL, MAX_DOUBLINGS)
}

/// Doubles the number of grid intervals until two successive Simpson
/// estimates agree to `rel_tol`. Earlier samples are reused.
pub fn quad_converged_with<T: Quadrable, F: Fn(f64) -> T>(
    f: F,
    grid: &SpectralGrid,
    rel_tol: f64,
    max_doublings: u32,
) -> Result<Quad<T>> {
    let mut grid = *grid;
    let mut values = (0..grid.n_points())
        .map(|k| sample(&f, &grid, k))
        .collect::<Result<Vec<_>>>()?;
    let mut estimate = simpson_sum(&values, &grid);
    let mut previous = estimate;
    for _ in 0..max_doublings {
        let fine = grid.refined();
        let mut next = Vec::with_capacity(fine.n_points());
        for (k, &v) in values.iter().enumerate() {
            if k > 0 {
                next.push(sample(&f, &fine, 2 * k - 1)?);
            }
            next.push(v);
        }
        let refined = simpson_sum(&next, &fine);
        let err = rel_diff(refined, estimate);
        grid = fine;
        values = next;
        if err <= rel_tol {
            return Ok(Quad {
                value: refined,
                achieved_rel_err: err,
                n_points: grid.n_points(),
            });
        }
        previous = estimate;
        estimate = refined;
    }
    Err(Error::ConvergenceFailure {
        previous: previous.magnitude(),
        last: estimate.magnitude(),
    })
}
