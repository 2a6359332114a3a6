//! Chordal SLE seen from a few marked real points.
//!
//! Each step moves the recentred images `u = g_t(x) - xi_t` by a half slit
//! map, a driver jump and another half slit map. Steps grow with the size of
//! the hull, `h = dt (R_t / R_0)^2` with `R_t^2 = R_0^2 + (4 + k) t` and
//! `R_0 = max |x|`, so the sampler reaches times where everything is decided
//! in a number of steps logarithmic in the horizon. (Scaling by the distance
//! of the points to the tip instead would let them approach it forever
//! without crossing.) Steps during which some point is within a few standard
//! deviations of the driver are refined by Brownian-bridge bisection, so a
//! point is only recorded as swallowed in a substep of length `h / 2^100` or
//! one where the crossing is already unambiguous.

use rand::Rng;
use rand_distr::StandardNormal;

use super::{Estimate, ExponentFit, MCConfig};
use crate::parallel::run_samples;
use crate::{domain, Result};

const BRIDGE_SIGMAS: f64 = 6.0;
/// The ratio `f_t(x) / f_t(X)` of two points approaching the tip settles to 0
/// or 1 only like the cube root of the resolution, hence the deep cap.
const MAX_DEPTH: u32 = 100;
const MAX_STEPS: usize = 5_000_000;

#[derive(Clone, Debug)]
pub struct BoundaryStepper {
    kappa: f64,
    dt: f64,
    r0_sq: f64,
    pub t: f64,
    /// Recentred positions `g_t(x) - xi_t`.
    pub u: Vec<f64>,
    /// Derivatives `g_t'(x)`.
    pub du: Vec<f64>,
    /// Substep index at which each point was swallowed.
    pub swallowed: Vec<Option<u64>>,
    pub substeps: u64,
    pub steps: usize,
}

impl BoundaryStepper {
    pub fn new(points: &[f64], kappa: f64, dt: f64) -> BoundaryStepper {
        let r0 = points.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        BoundaryStepper {
            kappa,
            dt,
            r0_sq: r0 * r0,
            t: 0.0,
            u: points.to_vec(),
            du: vec![1.0; points.len()],
            swallowed: vec![None; points.len()],
            substeps: 0,
            steps: 0,
        }
    }

    pub fn alive(&self, i: usize) -> bool {
        self.swallowed[i].is_none()
    }

    /// One adaptive step, truncated at `horizon`.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R, horizon: f64) {
        let grow = 1.0 + (4.0 + self.kappa) * self.t / self.r0_sq;
        let h = (self.dt * grow).min(horizon - self.t);
        let g: f64 = rng.sample(StandardNormal);
        self.advance((self.kappa * h).sqrt() * g, h, 0, rng);
        self.steps += 1;
    }

    fn needs_refinement(&self, dxi: f64, h: f64) -> bool {
        let band = BRIDGE_SIGMAS * (self.kappa * h).sqrt();
        (0..self.u.len()).any(|i| {
            self.alive(i) && (self.u[i].abs() < band || (self.u[i] - dxi).signum() != self.u[i].signum())
        })
    }

    fn advance<R: Rng + ?Sized>(&mut self, dxi: f64, h: f64, depth: u32, rng: &mut R) {
        if depth < MAX_DEPTH && self.kappa > 0.0 && self.needs_refinement(dxi, h) {
            let g: f64 = rng.sample(StandardNormal);
            let mid = dxi / 2.0 + (self.kappa * h / 4.0).sqrt() * g;
            self.advance(mid, h / 2.0, depth + 1, rng);
            self.advance(dxi - mid, h / 2.0, depth + 1, rng);
            return;
        }
        self.substeps += 1;
        // symmetric splitting: half slit, jump, half slit. This matches the
        // diffusion's mean through O(h^2); jump-then-slit does not.
        let half = 2.0 * h;
        for i in 0..self.u.len() {
            if !self.alive(i) {
                continue;
            }
            let u = self.u[i];
            let a = (u * u + half).sqrt().copysign(u);
            let v = a - dxi;
            if v == 0.0 || v.signum() != u.signum() {
                self.swallowed[i] = Some(self.substeps);
                continue;
            }
            let b = (v * v + half).sqrt();
            self.du[i] *= (u.abs() / a.abs()) * (v.abs() / b);
            self.u[i] = b.copysign(v);
        }
        self.t += h;
    }

    /// Step until `done` holds, the horizon is reached, or the step budget
    /// runs out. Returns whether `done` held.
    pub fn run<R: Rng + ?Sized>(&mut self, rng: &mut R, horizon: f64, done: impl Fn(&Self) -> bool) -> bool {
        while !done(self) {
            if self.t >= horizon || self.steps >= MAX_STEPS {
                return false;
            }
            self.step(rng, horizon);
        }
        true
    }

    /// Swallowed strictly before the other point (which may be unswallowed).
    pub fn strictly_before(&self, i: usize, j: usize) -> bool {
        match (self.swallowed[i], self.swallowed[j]) {
            (Some(a), Some(b)) => a < b,
            (Some(_), None) => true,
            _ => false,
        }
    }
}

fn check_dense(kappa: f64) -> Result<()> {
    if kappa > 4.0 && kappa < 8.0 {
        Ok(())
    } else {
        domain(format!("kappa must lie strictly inside (4, 8), got {kappa}"))
    }
}

/// `P_1([x, X]) = P[tau_x < tau_X]`, averaged over all runs; runs where `x`
/// is still unswallowed at the horizon count as 0 and are reported as
/// censored.
pub fn mc_touch_interval(x: f64, big_x: f64, kappa: f64, cfg: &MCConfig) -> Result<Estimate> {
    cfg.validate()?;
    if !(x > 0.0 && big_x > x) || !(kappa >= 0.0) {
        return domain("need 0 < x < X and kappa >= 0");
    }
    let out = run_samples(cfg.n_samples, cfg.base_seed, cfg.workers, |_, rng| {
        let mut s = BoundaryStepper::new(&[x, big_x], kappa, cfg.dt);
        let decided = s.run(rng, cfg.horizon, |s| !s.alive(0));
        (decided, if s.strictly_before(0, 1) { 1.0 } else { 0.0 })
    });
    let vals: Vec<f64> = out.iter().map(|o| o.1).collect();
    let mut e = Estimate::from_values(&vals);
    e.censored = out.iter().filter(|o| !o.0).count();
    Ok(e.with("estimand", "P[tau_x < tau_X]").with("censoring", "undecided runs count as 0"))
}

/// `P[tau_x = tau_X]` over runs decided within the horizon.
pub fn mc_same_swallow(x: f64, big_x: f64, kappa: f64, cfg: &MCConfig) -> Result<Estimate> {
    cfg.validate()?;
    check_dense(kappa)?;
    if !(x > 0.0 && big_x > x) {
        return domain("need 0 < x < X");
    }
    let out = run_samples(cfg.n_samples, cfg.base_seed, cfg.workers, |_, rng| {
        let mut s = BoundaryStepper::new(&[x, big_x], kappa, cfg.dt);
        // once x goes, X either went in the same substep or later
        s.run(rng, cfg.horizon, |s| !s.alive(0))
            .then(|| if s.swallowed[0] == s.swallowed[1] { 1.0 } else { 0.0 })
    });
    Ok(Estimate::from_outcomes(&out)
        .with("estimand", "P[tau_x = tau_X]")
        .with("censoring", "undecided runs excluded"))
}

/// `P[tau_a < tau_b]` for `a < 0 < b`, over runs decided within the horizon.
pub fn mc_cardy(a: f64, b: f64, kappa: f64, cfg: &MCConfig) -> Result<Estimate> {
    cfg.validate()?;
    check_dense(kappa)?;
    if !(a < 0.0 && b > 0.0) {
        return domain("need a < 0 < b");
    }
    let out = run_samples(cfg.n_samples, cfg.base_seed, cfg.workers, |_, rng| {
        let mut s = BoundaryStepper::new(&[a, b], kappa, cfg.dt);
        s.run(rng, cfg.horizon, |s| !s.alive(0) || !s.alive(1))
            .then(|| if s.strictly_before(0, 1) { 1.0 } else { 0.0 })
    });
    Ok(Estimate::from_outcomes(&out)
        .with("estimand", "P[tau_a < tau_b]")
        .with("censoring", "undecided runs excluded"))
}

/// `P_1([x, x + dx])` for each `dx`, and the fit of its logarithm against
/// `log(dx / x)`, whose slope estimates `h_{1;3}`.
pub fn mc_zigzag_one(x: f64, dxs: &[f64], kappa: f64, cfg: &MCConfig) -> Result<(Vec<Estimate>, ExponentFit)> {
    check_dense(kappa)?;
    if !(x > 0.0) || dxs.iter().any(|&d| !(d > 0.0)) {
        return domain("need x > 0 and positive dx values");
    }
    let ests = dxs
        .iter()
        .enumerate()
        .map(|(j, &dx)| mc_touch_interval(x, x + dx, kappa, &cfg.for_point(j)).map(|e| e.with("dx", dx)))
        .collect::<Result<Vec<_>>>()?;
    let ratios: Vec<f64> = dxs.iter().map(|d| d / x).collect();
    let fit = ExponentFit::fit(&ratios, &ests)?;
    Ok((ests, fit))
}

/// `E[1{tau_x < tau_X} 1{tau_x < tau_y} |f'(y) / f(y)|^{h_{1;3}}]` evaluated at
/// `tau_x`, for `y < 0 < x < X`, over runs decided within the horizon.
pub fn mc_zigzag_two(x: f64, big_x: f64, y: f64, kappa: f64, cfg: &MCConfig) -> Result<Estimate> {
    cfg.validate()?;
    check_dense(kappa)?;
    if !(y < 0.0 && x > 0.0 && big_x > x) {
        return domain("need y < 0 < x < X");
    }
    let h13 = (8.0 - kappa) / kappa;
    let out = run_samples(cfg.n_samples, cfg.base_seed, cfg.workers, |_, rng| {
        let mut s = BoundaryStepper::new(&[y, x, big_x], kappa, cfg.dt);
        let decided = s.run(rng, cfg.horizon, |s| !s.alive(0) || !s.alive(1));
        decided.then(|| {
            if s.strictly_before(1, 2) && s.strictly_before(1, 0) {
                (s.du[0] / s.u[0]).abs().powf(h13)
            } else {
                0.0
            }
        })
    });
    Ok(Estimate::from_outcomes(&out)
        .with("estimand", "E[1{tau_x<tau_X, tau_x<tau_y} |f'(y)/f(y)|^h13]")
        .with("censoring", "undecided runs excluded"))
}
