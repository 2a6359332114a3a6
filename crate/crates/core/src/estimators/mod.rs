//! Monte Carlo estimators over SLE ensembles.
//!
//! Every estimator draws sample `i` from its own ChaCha8 stream (key from
//! `base_seed`, stream `i`), collects per-sample outcomes in index order and
//! reduces them with pairwise summation, so results do not depend on the
//! number of workers.
//!
//! Censoring: runs whose deciding event has not happened by the horizon are
//! excluded from the mean and counted in [`Estimate::censored`], except for
//! [`mc_touch_interval`], whose event is "x swallowed strictly before X within
//! the horizon" and therefore averages over all runs.

mod boundary;
mod dipolar;
mod martingale;
mod radius;
mod restriction;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::parallel::pairwise_sum;
use crate::{domain, Result};

pub use boundary::{mc_cardy, mc_same_swallow, mc_touch_interval, mc_zigzag_one, mc_zigzag_two, BoundaryStepper};
pub use dipolar::mc_dipolar_avoidance;
pub use martingale::{mc_polynomial_martingale, CoeffPolynomial};
pub use radius::mc_radius_tail;
pub use restriction::{mc_restriction, RestrictionTuning};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MCConfig {
    pub n_samples: usize,
    /// Grid step. The boundary and radius samplers use adaptive steps and
    /// read this as the step at the initial length scale.
    pub dt: f64,
    pub horizon: f64,
    pub base_seed: u64,
    pub workers: usize,
}

impl Default for MCConfig {
    fn default() -> Self {
        MCConfig {
            n_samples: 10_000,
            dt: 1e-4,
            horizon: 1e4,
            base_seed: 0,
            workers: 1,
        }
    }
}

impl MCConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_samples == 0 {
            return domain("n_samples must be at least 1");
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return domain("dt must be positive");
        }
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return domain("horizon must be positive");
        }
        if self.workers == 0 {
            return domain("workers must be at least 1");
        }
        Ok(())
    }

    /// Number of grid steps, for estimators that need `T/dt` to be an integer.
    pub fn grid_steps(&self) -> Result<usize> {
        self.validate()?;
        let n = self.horizon / self.dt;
        let r = n.round();
        if r < 1.0 || (n - r).abs() > 1e-9 * r.max(1.0) {
            return domain(format!("horizon {} is not a whole number of steps of {}", self.horizon, self.dt));
        }
        Ok(r as usize)
    }

    /// Same configuration with the seed advanced for the `j`-th parameter point.
    pub(crate) fn for_point(&self, j: usize) -> MCConfig {
        MCConfig {
            base_seed: self.base_seed.wrapping_add((j as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)),
            ..*self
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
    /// Samples entering the mean.
    pub n: usize,
    /// Runs excluded (or, for touch, undecided) at the horizon.
    pub censored: usize,
    pub meta: BTreeMap<String, String>,
}

impl Estimate {
    /// Mean and `sd / sqrt(n)` of the decided outcomes; `None` is censored.
    pub fn from_outcomes(outcomes: &[Option<f64>]) -> Estimate {
        let vals: Vec<f64> = outcomes.iter().flatten().copied().collect();
        let mut e = Estimate::from_values(&vals);
        e.censored = outcomes.len() - vals.len();
        e
    }

    pub fn from_values(vals: &[f64]) -> Estimate {
        let n = vals.len();
        let (mean, stderr) = if n == 0 {
            (f64::NAN, f64::NAN)
        } else {
            let mean = pairwise_sum(vals) / n as f64;
            let dev: Vec<f64> = vals.iter().map(|v| (v - mean) * (v - mean)).collect();
            // plug-in variance, so indicator stderrs never exceed 1/(2 sqrt n)
            let var = pairwise_sum(&dev) / n as f64;
            (mean, (var / n as f64).sqrt())
        };
        Estimate {
            mean,
            stderr,
            n,
            censored: 0,
            meta: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Estimate {
        self.meta.insert(key.to_string(), value.to_string());
        self
    }

    /// Whether `target` lies within `k` standard errors (plus `slack`).
    pub fn agrees_with(&self, target: f64, k: f64, slack: f64) -> bool {
        (self.mean - target).abs() <= k * self.stderr + slack
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_stderr: f64,
    /// `(log x, log y, weight)` of the points used.
    pub points: Vec<(f64, f64, f64)>,
}

impl ExponentFit {
    /// Weighted least squares of `log y` on `log x`, weights `1 / var(log y)`.
    /// Points with non-finite logs or weights are dropped; at least 3 must
    /// remain.
    pub fn fit(xs: &[f64], estimates: &[Estimate]) -> Result<ExponentFit> {
        let pts: Vec<(f64, f64, f64)> = xs
            .iter()
            .zip(estimates)
            .filter_map(|(&x, e)| {
                let rel = e.stderr / e.mean;
                let w = 1.0 / (rel * rel);
                let p = (x.ln(), e.mean.ln(), w);
                (p.0.is_finite() && p.1.is_finite() && w.is_finite() && w > 0.0).then_some(p)
            })
            .collect();
        ExponentFit::weighted(pts)
    }

    pub fn weighted(points: Vec<(f64, f64, f64)>) -> Result<ExponentFit> {
        if points.len() < 3 {
            return domain(format!("exponent fit needs at least 3 usable points, got {}", points.len()));
        }
        let (mut s, mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for &(x, y, w) in &points {
            s += w;
            sx += w * x;
            sy += w * y;
            sxx += w * x * x;
            sxy += w * x * y;
        }
        let det = s * sxx - sx * sx;
        if !(det > 0.0) {
            return domain("degenerate abscissae in exponent fit");
        }
        let slope = (s * sxy - sx * sy) / det;
        let intercept = (sxx * sy - sx * sxy) / det;
        Ok(ExponentFit {
            slope,
            intercept,
            slope_stderr: (s / det).sqrt(),
            points,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn estimate_moments() {
        let e = Estimate::from_values(&[1.0, 0.0, 1.0, 0.0]);
        assert_eq!(e.mean, 0.5);
        assert_eq!(e.stderr, 0.25);
        let e = Estimate::from_outcomes(&[Some(1.0), None, Some(0.0)]);
        assert_eq!((e.n, e.censored), (2, 1));
    }

    #[test]
    fn fit_recovers_power_law() {
        let xs = [1e-3, 1e-2, 1e-1, 1.0];
        let es: Vec<Estimate> = xs
            .iter()
            .map(|&x: &f64| Estimate {
                mean: 2.0 * x.powf(0.4),
                stderr: 0.01 * x.powf(0.4),
                n: 1,
                censored: 0,
                meta: BTreeMap::new(),
            })
            .collect();
        let f = ExponentFit::fit(&xs, &es).unwrap();
        assert!((f.slope - 0.4).abs() < 1e-12);
        assert!((f.intercept - 2f64.ln()).abs() < 1e-12);
        assert!(ExponentFit::fit(&xs[..2], &es[..2]).is_err());
    }

    #[test]
    fn grid_steps() {
        let c = MCConfig {
            dt: 1e-3,
            horizon: 2.0,
            ..MCConfig::default()
        };
        assert_eq!(c.grid_steps().unwrap(), 2000);
        assert!(MCConfig { horizon: 0.0015, ..c }.grid_steps().is_err());
        assert!(MCConfig { n_samples: 0, ..c }.validate().is_err());
    }
}
