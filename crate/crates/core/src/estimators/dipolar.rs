//! How close dipolar traces come to the forbidden set `R \ (-1, 1)`.

use super::{Estimate, MCConfig};
use crate::loewner::driver::driver_from_rng;
use crate::loewner::point::Geometry;
use crate::loewner::trace::{min_distance_to_set, trace_every, BoundarySet};
use crate::parallel::run_samples;
use crate::{domain, Result};

/// Trace points per run; the zipper costs `O(n * n / stride)`.
const TRACE_POINTS: usize = 250;

/// `P[min distance from the trace to R \ (-1, 1) <= delta]` by time `T`, for
/// each `delta`. The trace is sampled every `n / 250` grid steps; its starting
/// point 0 is at distance 1.
pub fn mc_dipolar_avoidance(kappa: f64, deltas: &[f64], cfg: &MCConfig) -> Result<Vec<Estimate>> {
    let n = cfg.grid_steps()?;
    if !(kappa > 0.0) || deltas.iter().any(|&d| !(d > 0.0 && d <= 1.0)) {
        return domain("need kappa > 0 and delta in (0, 1]");
    }
    let stride = (n / TRACE_POINTS).max(1);
    let set = BoundarySet::RealComplement { lo: -1.0, hi: 1.0 };
    let dists = run_samples(cfg.n_samples, cfg.base_seed, cfg.workers, |_, rng| {
        let d = driver_from_rng(kappa, cfg.dt, n, rng);
        trace_every(Geometry::Dipolar, &d, stride)
            .map(|tr| min_distance_to_set(&tr, &set))
            .ok()
    });
    let closest = dists.iter().flatten().copied().fold(f64::INFINITY, f64::min);
    let positive = dists.iter().flatten().filter(|&&d| d > 0.0).count();
    Ok(deltas
        .iter()
        .map(|&delta| {
            let o: Vec<Option<f64>> = dists
                .iter()
                .map(|d| d.map(|d| if d <= delta { 1.0 } else { 0.0 }))
                .collect();
            Estimate::from_outcomes(&o)
                .with("estimand", "P[dist(trace, I) <= delta]")
                .with("delta", delta)
                .with("stride", stride)
                .with("min_distance", closest)
                .with("positive_runs", positive)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_delta_is_certain_and_nested() {
        let cfg = MCConfig {
            n_samples: 40,
            dt: 1e-2,
            horizon: 1.0,
            ..MCConfig::default()
        };
        let es = mc_dipolar_avoidance(6.0, &[1.0, 0.5, 0.1], &cfg).unwrap();
        assert_eq!(es[0].mean, 1.0);
        let closest: f64 = es[0].meta["min_distance"].parse().unwrap();
        assert!(closest > 0.0 && closest < 1.0);
        assert_eq!(es[0].meta["positive_runs"], "40");
        assert!(es[1].mean >= es[2].mean);
        assert!(mc_dipolar_avoidance(6.0, &[0.0], &cfg).is_err());
    }
}
