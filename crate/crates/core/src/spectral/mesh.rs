//! Piecewise-uniform Simpson meshes graded around narrow spectral features.
//!
//! A single uniform grid cannot resolve a Green function of width `G` and a
//! source spectrum a thousand times wider at the same time. The mesh places
//! breakpoints at `center +- width * 2^k` for every feature and gives each
//! panel a step proportional to its distance from the nearest feature, never
//! less than that feature's width.

use super::{rel_diff, Quad, Quadrable};
use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Feature {
    pub center: f64,
    pub width: f64,
}

impl Feature {
    pub fn new(center: f64, width: f64) -> Self {
        Self { center, width }
    }

    fn usable(&self) -> bool {
        self.center.is_finite() && self.width.is_finite() && self.width > 0.0
    }

    fn local_scale(&self, a: f64, b: f64) -> f64 {
        let dist = if self.center < a {
            a - self.center
        } else if self.center > b {
            self.center - b
        } else {
            0.0
        };
        dist.max(self.width)
    }
}

/// Nodes and composite Simpson weights over `[lo, hi]`.
#[derive(Clone, Debug)]
pub struct GradedMesh {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GradedMesh {
    /// `resolution` is the number of Simpson intervals per local scale.
    pub fn new(
        lo: f64,
        hi: f64,
        features: &[Feature],
        resolution: usize,
        max_step: Option<f64>,
    ) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(invalid("interval", format!("need finite lo < hi, got [{lo}, {hi}]")));
        }
        if resolution == 0 {
            return Err(invalid("resolution", "must be >= 1"));
        }
        let len = hi - lo;
        let features: Vec<Feature> = features.iter().copied().filter(Feature::usable).collect();

        let mut cuts = vec![lo, hi];
        for f in &features {
            if f.center > lo && f.center < hi {
                cuts.push(f.center);
            }
            let mut off = f.width;
            for _ in 0..2048 {
                let (a, b) = (f.center - off, f.center + off);
                if a > lo && a < hi {
                    cuts.push(a);
                }
                if b > lo && b < hi {
                    cuts.push(b);
                }
                if a <= lo && b >= hi {
                    break;
                }
                off *= 2.0;
            }
        }
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let tiny = 1e-12 * len;
        cuts.dedup_by(|b, a| *b - *a <= tiny);
        if let Some(last) = cuts.last_mut() {
            *last = hi;
        }

        let mut nodes = vec![lo];
        let mut weights = vec![0.0];
        for pair in cuts.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let width = b - a;
            let scale = features
                .iter()
                .map(|f| f.local_scale(a, b))
                .fold(width, f64::min);
            let mut m = ((width / scale) * resolution as f64).ceil() as usize;
            if let Some(h) = max_step {
                m = m.max((width / h).ceil() as usize);
            }
            m = m.max(2);
            m += m % 2;
            let h = width / m as f64;
            let h3 = h / 3.0;
            *weights.last_mut().unwrap() += h3;
            for j in 1..=m {
                nodes.push(if j == m { b } else { a + j as f64 * h });
                let w = if j == m {
                    h3
                } else if j % 2 == 1 {
                    4.0 * h3
                } else {
                    2.0 * h3
                };
                weights.push(w);
            }
        }
        Ok(Self { nodes, weights })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<T: Quadrable, F: FnMut(f64) -> T>(&self, mut f: F) -> Result<T> {
        self.try_integrate(|x| Ok(f(x)))
    }

    pub fn try_integrate<T: Quadrable, F: FnMut(f64) -> Result<T>>(&self, mut f: F) -> Result<T> {
        let mut acc = T::zero();
        for (k, (&x, &w)) in self.nodes.iter().zip(&self.weights).enumerate() {
            let v = f(x)?;
            if !v.finite() {
                return Err(Error::NonFiniteIntegrand { index: k, omega: x });
            }
            acc = acc + v * w;
        }
        Ok(acc)
    }
}

/// Graded-mesh quadrature certified by doubling the resolution.
#[derive(Clone, Debug)]
pub struct GradedQuad {
    lo: f64,
    hi: f64,
    features: Vec<Feature>,
    max_step: Option<f64>,
    rel_tol: f64,
    start_resolution: usize,
    max_doublings: u32,
}

impl GradedQuad {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            features: Vec::new(),
            max_step: None,
            rel_tol: 1e-8,
            start_resolution: 8,
            max_doublings: 6,
        }
    }

    pub fn feature(mut self, center: f64, width: f64) -> Self {
        self.features.push(Feature::new(center, width));
        self
    }

    pub fn max_step(mut self, step: f64) -> Self {
        self.max_step = Some(step);
        self
    }

    pub fn rel_tol(mut self, tol: f64) -> Self {
        self.rel_tol = tol;
        self
    }

    pub fn start_resolution(mut self, resolution: usize) -> Self {
        self.start_resolution = resolution.max(1);
        self
    }

    pub fn max_doublings(mut self, n: u32) -> Self {
        self.max_doublings = n;
        self
    }

    pub fn features(&self) -> &[Feature] {
        &self.features
    }

    pub fn bounds(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn mesh(&self, resolution: usize) -> Result<GradedMesh> {
        GradedMesh::new(self.lo, self.hi, &self.features, resolution, self.max_step)
    }

    pub fn integrate<T: Quadrable, F: FnMut(f64) -> T>(&self, mut f: F) -> Result<Quad<T>> {
        self.integrate_leveled(|x, _| Ok(f(x)))
    }

    /// The integrand also receives the current resolution, so a nested
    /// inner quadrature can be refined together with the outer one.
    pub fn integrate_leveled<T: Quadrable, F: FnMut(f64, usize) -> Result<T>>(
        &self,
        mut f: F,
    ) -> Result<Quad<T>> {
        let mut res = self.start_resolution;
        let mut estimate = self.mesh(res)?.try_integrate(|x| f(x, res))?;
        let mut previous = estimate;
        for _ in 0..self.max_doublings {
            res *= 2;
            let mesh = self.mesh(res)?;
            let refined = mesh.try_integrate(|x| f(x, res))?;
            let err = rel_diff(refined, estimate);
            if err <= self.rel_tol {
                return Ok(Quad {
                    value: refined,
                    achieved_rel_err: err,
                    n_points: mesh.len(),
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
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::lorentzian_detuned;
    use std::f64::consts::PI;

    #[test]
    fn weights_sum_to_length() {
        let m = GradedMesh::new(-3.0, 5.0, &[Feature::new(0.1, 0.01)], 4, None).unwrap();
        let total: f64 = m.weights().iter().sum();
        assert!((total - 8.0).abs() < 1e-12);
        assert!(m.nodes().windows(2).all(|w| w[1] > w[0]));
        assert_eq!(*m.nodes().last().unwrap(), 5.0);
    }

    #[test]
    fn narrow_lorentzian_in_wide_window() {
        // Width 1e-4 inside a window of 2e3: a uniform grid would need 1e8 points.
        let q = GradedQuad::new(-1e3, 1e3)
            .feature(0.0, 1e-4)
            .integrate(|x| lorentzian_detuned(x, 1e-4))
            .unwrap();
        let exact = 2.0 / PI * (1e3f64 / 0.5e-4).atan();
        assert!((q.value - exact).abs() < 1e-9, "{} vs {exact}", q.value);
        assert!(q.n_points < 20_000);
    }

    #[test]
    fn product_of_disparate_scales() {
        // Lorentzian of width 0.01 times a Gaussian of width 100.
        let s = 100.0;
        let q = GradedQuad::new(-12.0 * s, 12.0 * s)
            .feature(0.0, 0.01)
            .feature(0.0, s)
            .integrate(|x: f64| lorentzian_detuned(x, 0.01) * (-(x / s).powi(2)).exp())
            .unwrap();
        // Leading correction is -(2/pi) (fwhm/2) sqrt(pi)/s.
        let approx = 1.0 - 0.005 * 2.0 * PI.sqrt() / (PI * s);
        assert!((q.value - approx).abs() < 1e-6, "{}", q.value);
    }

    #[test]
    fn max_step_is_honoured() {
        let m = GradedMesh::new(0.0, 10.0, &[], 1, Some(0.5)).unwrap();
        assert!(m.nodes().windows(2).all(|w| w[1] - w[0] <= 0.5 + 1e-12));
    }

    #[test]
    fn rejects_bad_interval() {
        assert!(GradedMesh::new(1.0, 1.0, &[], 4, None).is_err());
        assert!(GradedMesh::new(0.0, f64::NAN, &[], 4, None).is_err());
    }
}
