//! Ensemble means of polynomials in the expansion coefficients `f_{-k}`.

use serde::{Deserialize, Serialize};

use super::{Estimate, MCConfig};
use crate::loewner::coeffs::coefficient_path;
use crate::loewner::driver::driver_from_rng;
use crate::parallel::run_samples;
use crate::{domain, Result};

/// `sum_j c_j prod_i f_{-k_i}^{p_i}`, each monomial stored as `(k, p)` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoeffPolynomial {
    pub terms: Vec<(f64, Vec<(usize, u32)>)>,
}

impl CoeffPolynomial {
    /// Parse e.g. `"f1^2 - 3*f2"` or `"f1^2 - 1.5 f2 + 2"`; `fk` stands for
    /// `f_{-k}`.
    pub fn parse(src: &str) -> Result<CoeffPolynomial> {
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return domain("empty polynomial");
        }
        let mut terms = Vec::new();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1.0, &rest[1..]),
                b'-' => (-1.0, &rest[1..]),
                _ => (1.0, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            if term.is_empty() {
                return domain(format!("malformed polynomial {src:?}"));
            }
            let mut coef = sign;
            let mut mono = Vec::new();
            for factor in term.split('*') {
                if let Some(idx) = factor.strip_prefix('f') {
                    let (k, p) = match idx.split_once('^') {
                        Some((k, p)) => (k, p),
                        None => (idx, "1"),
                    };
                    let k: usize = k.parse().map_err(|_| crate::SleError::Domain(format!("bad index in {factor:?}")))?;
                    let p: u32 = p.parse().map_err(|_| crate::SleError::Domain(format!("bad power in {factor:?}")))?;
                    if k == 0 {
                        return domain("coefficient indices start at 1");
                    }
                    mono.push((k, p));
                } else {
                    // a number, possibly glued to a monomial as in "3f2"
                    let split = factor.find('f').unwrap_or(factor.len());
                    let num: f64 = factor[..split]
                        .parse()
                        .map_err(|_| crate::SleError::Domain(format!("bad factor {factor:?}")))?;
                    coef *= num;
                    if split < factor.len() {
                        let sub = CoeffPolynomial::parse(&factor[split..])?;
                        mono.extend(sub.terms[0].1.iter().copied());
                    }
                }
            }
            terms.push((coef, mono));
        }
        Ok(CoeffPolynomial { terms })
    }

    pub fn max_index(&self) -> usize {
        self.terms
            .iter()
            .flat_map(|t| t.1.iter().map(|&(k, _)| k))
            .max()
            .unwrap_or(1)
    }

    /// Evaluate on `[f_{-1}, f_{-2}, ...]`.
    pub fn eval(&self, f: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, mono)| c * mono.iter().map(|&(k, p)| f[k - 1].powi(p as i32)).product::<f64>())
            .sum()
    }
}

/// `E[P(f_t)]` at each requested time, which must lie on the grid.
pub fn mc_polynomial_martingale(poly: &CoeffPolynomial, kappa: f64, times: &[f64], cfg: &MCConfig) -> Result<Vec<Estimate>> {
    cfg.validate()?;
    if !(kappa >= 0.0) || times.is_empty() {
        return domain("need kappa >= 0 and at least one time");
    }
    let mut idx = Vec::with_capacity(times.len());
    for &t in times {
        let k = t / cfg.dt;
        if !(t >= 0.0) || (k - k.round()).abs() > 1e-9 * k.max(1.0) {
            return domain(format!("time {t} is not on the grid of step {}", cfg.dt));
        }
        idx.push(k.round() as usize);
    }
    let n = *idx.iter().max().expect("nonempty");
    let m = poly.max_index().max(2);
    let vals = run_samples(cfg.n_samples, cfg.base_seed, cfg.workers, |_, rng| {
        let d = driver_from_rng(kappa, cfg.dt, n.max(1), rng);
        let path = coefficient_path(&d, m).expect("valid truncation");
        idx.iter().map(|&k| poly.eval(&path.vector(k))).collect::<Vec<f64>>()
    });
    Ok(times
        .iter()
        .enumerate()
        .map(|(j, &t)| {
            let col: Vec<f64> = vals.iter().map(|v| v[j]).collect();
            Estimate::from_values(&col).with("t", t)
        })
        .collect())
}
