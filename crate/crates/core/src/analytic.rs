//! Closed-form and quadrature SLE quantities.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::loewner::rk45::{integrate as ode, Tolerance};
use crate::quad::integrate;
use crate::{domain, Result, C64};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CFTParams {
    pub kappa: f64,
    pub c: f64,
}

impl CFTParams {
    /// Kac weight `h_{r;s} = ((r k - 4 s)^2 - (k - 4)^2) / (16 k)`.
    pub fn h(&self, r: f64, s: f64) -> f64 {
        let k = self.kappa;
        ((r * k - 4.0 * s).powi(2) - (k - 4.0).powi(2)) / (16.0 * k)
    }

    pub fn h12(&self) -> f64 {
        self.h(1.0, 2.0)
    }

    pub fn h13(&self) -> f64 {
        self.h(1.0, 3.0)
    }

    pub fn h01(&self) -> f64 {
        self.h(0.0, 1.0)
    }

    pub fn h0_half(&self) -> f64 {
        self.h(0.0, 0.5)
    }
}

pub fn central_charge(kappa: f64) -> f64 {
    (6.0 - kappa) * (3.0 * kappa - 8.0) / (2.0 * kappa)
}

pub fn central_charge_alt(kappa: f64) -> f64 {
    1.0 - 6.0 * (kappa - 4.0).powi(2) / (4.0 * kappa)
}

pub fn cft_params(kappa: f64) -> Result<CFTParams> {
    if !(kappa > 0.0) {
        return domain(format!("kappa must be positive, got {kappa}"));
    }
    Ok(CFTParams {
        kappa,
        c: central_charge(kappa),
    })
}

fn check_dense_phase(kappa: f64) -> Result<()> {
    if kappa > 4.0 && kappa < 8.0 {
        Ok(())
    } else {
        domain(format!("kappa must lie strictly inside (4, 8), got {kappa}"))
    }
}

/// `P[tau_x = tau_X]`, the probability that `x` and `X` are swallowed at the
/// same time, by quadrature of the one-interval integral after the
/// substitution `sigma = u^{k/(k-4)}` that removes the endpoint singularity.
pub fn same_swallow_probability(x: f64, big_x: f64, kappa: f64) -> Result<f64> {
    check_dense_phase(kappa)?;
    if !(x > 0.0 && big_x > x) {
        return domain("need 0 < x < X");
    }
    let s = x / big_x;
    let k = kappa;
    let e = k / (k - 4.0);
    let pw = 2.0 * (4.0 - k) / k;
    let g = |u: f64| e * (1.0 - s * u.powf(e)).powf(pw);
    // near u = 1 the factor behaves like (1 - u)^pw once s -> 1; u = 1 - v^r
    // with r = 1 / (1 + pw) flattens it
    let r = 1.0 / (1.0 + pw);
    let head = integrate(g, 0.0, 0.5, 1e-13);
    let tail = integrate(|v| g(1.0 - v.powf(r)) * r * v.powf(r - 1.0), 0.0, 0.5f64.powf(1.0 / r), 1e-13);
    let q = head.value + tail.value;
    let log_pref = ((k - 4.0) / k) * s.ln() + ln_gamma(4.0 / k) - ln_gamma((k - 4.0) / k) - ln_gamma((8.0 - k) / k);
    Ok((log_pref.exp() * q).clamp(0.0, 1.0))
}

/// Fundamental solution of the crossing ODE `w(1-w)P'' + (4/k)(1-2w)P' = 0`
/// with `P(0) = 0`, normalised so that `dP/dtau = 1` at `tau = 0` in the
/// variable `tau = w^{1-4/k}`. Returns `(P, dP/dw)` at `w <= 1/2`.
fn crossing_branch(w: f64, kappa: f64) -> Result<(f64, f64)> {
    let a = 1.0 - 4.0 / kappa;
    let tau1 = w.powf(a);
    // state (P, Q = dP/dtau); dQ/dtau = (4/k) Q w^{1-a} / (a (1 - w))
    let mut y = [C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
    let mut h = 1e-3;
    let tol = Tolerance {
        abs: 1e-14,
        rel: 1e-13,
        h_min: 1e-16,
    };
    ode(
        |tau, y, dy| {
            let w = tau.max(0.0).powf(1.0 / a);
            dy[0] = y[1];
            dy[1] = y[1] * ((4.0 / kappa) * w.powf(1.0 - a) / (a * (1.0 - w)));
        },
        &mut y,
        0.0,
        tau1,
        &mut h,
        tol,
    )?;
    let dpdw = y[1].re * a * w.powf(a - 1.0);
    Ok((y[0].re, dpdw))
}

/// `P[tau_a < tau_b]` for `a < 0 < b`: the crossing ODE in the cross ratio
/// `w = |a| / (|a| + b)` solved as a boundary-value problem with `P(0) = 1`
/// and `P(1) = 0`, by shooting from both endpoints and matching value and
/// slope at `w = 1/2`.
pub fn cardy_probability(a: f64, b: f64, kappa: f64) -> Result<f64> {
    check_dense_phase(kappa)?;
    if !(a < 0.0 && b > 0.0) {
        return domain("need a < 0 < b");
    }
    let w = -a / (b - a);
    // P = 1 - s L(w) on the left, P = s' L(1 - w) on the right (the equation
    // is invariant under w -> 1 - w)
    let (lm, dlm) = crossing_branch(0.5, kappa)?;
    // 1 - s lm = s' lm  and  -s dlm = -s' dlm
    let s = 1.0 / (2.0 * lm);
    let sp = s * dlm / dlm;
    let p = if w <= 0.5 {
        1.0 - s * crossing_branch(w, kappa)?.0
    } else {
        sp * crossing_branch(1.0 - w, kappa)?.0
    };
    Ok(p.clamp(0.0, 1.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum HullSpec {
    SemiDisk { x: f64, r: f64 },
    VerticalSlit { x: f64, h: f64 },
}

impl HullSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            HullSpec::SemiDisk { x, r } if x != 0.0 && r > 0.0 && r < x.abs() => Ok(()),
            HullSpec::VerticalSlit { x, h } if x != 0.0 && h > 0.0 => Ok(()),
            _ => domain(format!("invalid hull {self:?}")),
        }
    }

    /// `f_A'(0)` for the normalised map removing the hull.
    pub fn map_derivative_at_origin(&self) -> f64 {
        match *self {
            HullSpec::SemiDisk { x, r } => 1.0 - r * r / (x * x),
            HullSpec::VerticalSlit { x, h } => x.abs() / (x * x + h * h).sqrt(),
        }
    }
}

/// `P[trace avoids A] = f_A'(0)^{5/8}` at `kappa = 8/3`.
pub fn restriction_probability(hull: &HullSpec) -> Result<f64> {
    hull.validate()?;
    Ok(hull.map_derivative_at_origin().powf(5.0 / 8.0))
}

/// Bulk one-point function `|2 Im z0|^{-2h_{0;1}} sin(alpha_0/2)^{8/k - 1}`
/// with `z0 / conj(z0) = e^{i alpha_0}`.
pub fn one_point_function(z0: C64, kappa: f64) -> Result<f64> {
    if !(z0.im > 0.0) || !(kappa > 0.0 && kappa < 8.0) {
        return domain("need Im z0 > 0 and 0 < kappa < 8");
    }
    let alpha = 2.0 * z0.im.atan2(z0.re);
    let two_h01 = (8.0 - kappa) / 8.0;
    Ok((2.0 * z0.im).powf(-two_h01) * (alpha / 2.0).sin().powf(8.0 / kappa - 1.0))
}

pub fn fractal_dimension(kappa: f64) -> Result<f64> {
    if !(kappa > 0.0) {
        return domain("kappa must be positive");
    }
    Ok((1.0 + kappa / 8.0).min(2.0))
}
