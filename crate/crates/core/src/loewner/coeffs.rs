use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::loewner::driver::Driver;
use crate::{domain, Result};

/// Expansion coefficients of `f_t(z) = z + sum_{m <= -1} f_m z^{m+1}` at
/// infinity, for `m = -1, ..., -M`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientPath {
    pub times: Vec<f64>,
    pub coeffs: BTreeMap<i32, Vec<f64>>,
    pub truncation: usize,
}

impl CoefficientPath {
    /// `f_m` at grid index `k`.
    pub fn at(&self, m: i32, k: usize) -> f64 {
        self.coeffs[&m][k]
    }

    /// The values `[f_{-1}, ..., f_{-M}]` at grid index `k`.
    pub fn vector(&self, k: usize) -> Vec<f64> {
        (1..=self.truncation as i32).map(|j| self.coeffs[&-j][k]).collect()
    }
}

/// Square root of a series with constant term 1, through `u^{len-1}`.
pub(crate) fn sqrt_unit(a: &[f64], out: &mut [f64]) {
    out[0] = 1.0;
    for n in 1..a.len() {
        let mut s = 0.0;
        for k in 1..n {
            s += out[k] * out[n - k];
        }
        out[n] = (a[n] - s) / 2.0;
    }
}

/// One exact step on the series `F(u) = u f(1/u)`:
/// `F <- sqrt((F - dxi u)^2 + 4 h u^2)`.
pub(crate) fn series_step(big_f: &mut [f64], h: f64, dxi: f64, work: &mut Vec<f64>) {
    let len = big_f.len();
    big_f[1] -= dxi;
    work.clear();
    work.resize(len, 0.0);
    for i in 0..len {
        if big_f[i] == 0.0 {
            continue;
        }
        for j in 0..len - i {
            work[i + j] += big_f[i] * big_f[j];
        }
    }
    if len > 2 {
        work[2] += 4.0 * h;
    }
    let sq = work.clone();
    sqrt_unit(&sq, big_f);
}

/// Integrate the coefficient hierarchy through `f_{-M}`.
pub fn coefficient_path(driver: &Driver, m: usize) -> Result<CoefficientPath> {
    if m < 2 {
        return domain("coefficient truncation M >= 2 required");
    }
    let n = driver.n_steps();
    let mut big_f = vec![0.0; m + 1];
    big_f[0] = 1.0;
    big_f[1] = -driver.values[0];
    let mut coeffs: BTreeMap<i32, Vec<f64>> = (1..=m as i32).map(|j| (-j, Vec::with_capacity(n + 1))).collect();
    let push = |coeffs: &mut BTreeMap<i32, Vec<f64>>, f: &[f64]| {
        for j in 1..=m {
            coeffs.get_mut(&-(j as i32)).unwrap().push(f[j]);
        }
    };
    push(&mut coeffs, &big_f);
    let mut work = Vec::new();
    for k in 0..n {
        series_step(&mut big_f, driver.dt, driver.increment(k), &mut work);
        push(&mut coeffs, &big_f);
    }
    Ok(CoefficientPath {
        times: (0..=n).map(|k| driver.time(k)).collect(),
        coeffs,
        truncation: m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loewner::driver::{constant_driver, sample_driver};

    #[test]
    fn first_two_coefficients() {
        let d = sample_driver(6.0, 1e-3, 500, 3);
        let c = coefficient_path(&d, 5).unwrap();
        for k in 0..=500 {
            assert!((c.at(-1, k) + d.values[k]).abs() < 1e-12);
            assert!((c.at(-2, k) - 2.0 * d.time(k)).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_driver_matches_sqrt() {
        // sqrt(z^2 + 4t) = z (1 + 4t u^2)^{1/2} = z (1 + 2t u^2 - 2t^2 u^4 + 4t^3 u^6 ...)
        let d = constant_driver(0.0, 1e-3, 700);
        let c = coefficient_path(&d, 6).unwrap();
        let t: f64 = 0.7;
        let want = [0.0, 2.0 * t, 0.0, -2.0 * t * t, 0.0, 4.0 * t.powi(3)];
        for (j, w) in want.iter().enumerate() {
            assert!((c.at(-(j as i32) - 1, 700) - w).abs() < 1e-10, "j={j}");
        }
    }

    #[test]
    fn agrees_with_point_evolution_far_away() {
        use crate::loewner::point::{evolve_point, Geometry};
        use crate::C64;
        let d = sample_driver(2.0, 1e-3, 300, 9);
        let c = coefficient_path(&d, 8).unwrap();
        let z = C64::new(0.5, 30.0);
        let ev = evolve_point(Geometry::Chordal, &d, z).unwrap();
        let mut series = z;
        for (j, fm) in c.vector(300).iter().enumerate() {
            series += fm * z.powi(-(j as i32));
        }
        assert!((series - ev.last().1).norm() < 1e-12);
    }
}
