//! Tail of the conformal radius `rho(z0, gamma)` of the complement of the
//! full chordal trace, seen from a bulk point.

use rand::Rng;
use rand_distr::StandardNormal;

use super::{Estimate, ExponentFit, MCConfig};
use crate::loewner::radius::radius_and_angle;
use crate::parallel::run_samples;
use crate::{domain, Result, C64};

const MAX_STEPS: usize = 2_000_000;

/// Angle below which the point is treated as settled. Near the real axis
/// `log sin(alpha/2)` is a Brownian motion with drift `-(4 - k/2)` and
/// variance `k` per unit of `dt / |f|^2`, so the chance of coming back to
/// angles of order one is `sin(alpha/2)^{|8/k - 1|}`; the cutoff makes it
/// `1e-3`.
fn angle_cutoff(kappa: f64) -> f64 {
    let e = (8.0 / kappa - 1.0).abs().max(1e-3);
    (1e-3f64).powf(1.0 / e).clamp(1e-9, 1e-2)
}

/// Per-run outcome: final conformal radius, and whether the run hit the
/// horizon or step budget before settling.
pub(crate) fn radius_run<R: Rng + ?Sized>(z0: C64, kappa: f64, dt: f64, horizon: f64, rho_stop: f64, rng: &mut R) -> (f64, bool) {
    let cutoff = angle_cutoff(kappa);
    let scale = z0.norm();
    let mut f = z0;
    let mut df = C64::new(1.0, 0.0);
    let mut t = 0.0;
    let mut steps = 0;
    let mut rho = 2.0 * z0.im;
    loop {
        if rho <= rho_stop || f.im / f.norm() < cutoff {
            return (rho, false);
        }
        if t >= horizon || steps >= MAX_STEPS {
            return (rho, true);
        }
        let r = f.norm() / scale;
        let h = (dt * r * r).min(horizon - t);
        let g: f64 = rng.sample(StandardNormal);
        let v = f - (kappa * h).sqrt() * g;
        let mut s = (v * v + 4.0 * h).sqrt();
        if s.im < 0.0 {
            s = -s;
        }
        df *= v / s;
        f = s;
        t += h;
        steps += 1;
        rho = radius_and_angle(f, df).0;
    }
}

/// `P[rho(z0, gamma) <= eps]` for each `eps`, and the fit of its logarithm
/// against `log eps`, whose slope estimates `2 h_{0;1} = (8 - k)/8`.
/// Runs still unsettled at the horizon are excluded.
pub fn mc_radius_tail(z0: C64, kappa: f64, epsilons: &[f64], cfg: &MCConfig) -> Result<(Vec<Estimate>, ExponentFit)> {
    cfg.validate()?;
    if !(z0.im > 0.0) || !(kappa > 0.0 && kappa < 8.0) {
        return domain("need Im z0 > 0 and 0 < kappa < 8");
    }
    let rho0 = 2.0 * z0.im;
    if epsilons.is_empty() || epsilons.iter().any(|&e| !(e > 0.0 && e < rho0)) {
        return domain("epsilons must lie in (0, 2 Im z0)");
    }
    let eps_min = epsilons.iter().copied().fold(f64::INFINITY, f64::min);
    let out = run_samples(cfg.n_samples, cfg.base_seed, cfg.workers, |_, rng| {
        radius_run(z0, kappa, cfg.dt, cfg.horizon, eps_min, rng)
    });
    let ests: Vec<Estimate> = epsilons
        .iter()
        .map(|&eps| {
            let o: Vec<Option<f64>> = out
                .iter()
                .map(|&(rho, cens)| {
                    if rho <= eps {
                        Some(1.0)
                    } else if cens {
                        None
                    } else {
                        Some(0.0)
                    }
                })
                .collect();
            Estimate::from_outcomes(&o)
                .with("estimand", "P[rho <= eps]")
                .with("eps", eps)
        })
        .collect();
    let fit = ExponentFit::fit(epsilons, &ests)?;
    Ok((ests, fit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parallel::sample_rng;

    #[test]
    fn deterministic_radius() {
        // xi = 0: rho = 2 (1 - 4t) for z0 = i until it reaches the threshold
        let mut rng = sample_rng(0, 0);
        let (rho, cens) = radius_run(C64::new(0.0, 1.0), 0.0, 1e-3, 0.2, 0.0, &mut rng);
        assert!(cens);
        assert!((rho - 2.0 * (1.0 - 0.8) / 1.0).abs() < 1e-9, "{rho}");
    }

    #[test]
    fn tail_is_monotone_in_eps() {
        let cfg = MCConfig {
            n_samples: 300,
            dt: 1e-2,
            ..MCConfig::default()
        };
        let eps = [0.05, 0.1, 0.2, 0.4, 0.8];
        let (es, _) = mc_radius_tail(C64::new(0.0, 1.0), 6.0, &eps, &cfg).unwrap();
        for w in es.windows(2) {
            assert!(w[0].mean <= w[1].mean);
        }
        assert!(mc_radius_tail(C64::new(0.0, 1.0), 6.0, &[3.0], &cfg).is_err());
    }
}
