use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

/// Driving function sampled on a uniform grid, `values[k] = xi(k dt)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Driver {
    pub kappa: f64,
    pub dt: f64,
    pub values: Vec<f64>,
    pub seed: u64,
}

impl Driver {
    pub fn n_steps(&self) -> usize {
        self.values.len() - 1
    }

    pub fn horizon(&self) -> f64 {
        self.n_steps() as f64 * self.dt
    }

    pub fn time(&self, k: usize) -> f64 {
        k as f64 * self.dt
    }

    /// Increment over step `k` (from grid point `k` to `k + 1`).
    pub fn increment(&self, k: usize) -> f64 {
        self.values[k + 1] - self.values[k]
    }

    /// The driver of the scaled path `lambda xi(t / lambda^2)` on the grid
    /// `lambda^2 dt`.
    pub fn rescaled(&self, lambda: f64) -> Driver {
        Driver {
            kappa: self.kappa,
            dt: self.dt * lambda * lambda,
            values: self.values.iter().map(|x| lambda * x).collect(),
            seed: self.seed,
        }
    }
}

/// Brownian driver `sqrt(kappa) B_t` with `n_steps` Gaussian increments.
pub fn sample_driver(kappa: f64, dt: f64, n_steps: usize, seed: u64) -> Driver {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = driver_from_rng(kappa, dt, n_steps, &mut rng);
    d.seed = seed;
    d
}

/// As [`sample_driver`], drawing the increments from `rng`. The `seed` field
/// is left at 0.
pub fn driver_from_rng<R: Rng + ?Sized>(kappa: f64, dt: f64, n_steps: usize, rng: &mut R) -> Driver {
    assert!(kappa >= 0.0 && dt > 0.0, "kappa >= 0 and dt > 0 required");
    let sd = (kappa * dt).sqrt();
    let mut values = Vec::with_capacity(n_steps + 1);
    let mut x = 0.0;
    values.push(x);
    for _ in 0..n_steps {
        let g: f64 = StandardNormal.sample(rng);
        x += sd * g;
        values.push(x);
    }
    Driver {
        kappa,
        dt,
        values,
        seed: 0,
    }
}

/// Deterministic driver equal to `value` at every grid point.
pub fn constant_driver(value: f64, dt: f64, n_steps: usize) -> Driver {
    Driver {
        kappa: 0.0,
        dt,
        values: vec![value; n_steps + 1],
        seed: 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn starts_at_zero_and_is_reproducible() {
        let a = sample_driver(6.0, 1e-3, 100, 7);
        let b = sample_driver(6.0, 1e-3, 100, 7);
        assert_eq!(a.values[0], 0.0);
        assert_eq!(a, b);
        assert_ne!(a, sample_driver(6.0, 1e-3, 100, 8));
        assert!(sample_driver(0.0, 1e-3, 10, 1).values.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn variance_at_unit_time() {
        // xi_1 over many seeds: mean 0, variance kappa
        let n = 10_000;
        let xs: Vec<f64> = (0..n).map(|s| *sample_driver(6.0, 0.05, 20, s).values.last().unwrap()).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        // stderr of the sample variance of a Gaussian is var * sqrt(2/(n-1))
        let se = 6.0 * (2.0 / (n - 1) as f64).sqrt();
        assert!((var - 6.0).abs() < 3.0 * se, "var={var}");
    }

    #[test]
    fn constant() {
        let d = constant_driver(0.3, 0.1, 5);
        assert_eq!(d.values.len(), 6);
        assert!(d.values.iter().all(|&x| x == 0.3));
        assert_eq!(d.increment(2), 0.0);
    }
}
