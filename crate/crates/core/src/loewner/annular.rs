//! Annular Loewner flow in the disk picture, modulus `p - t` at time `t`.

use serde::{Deserialize, Serialize};

use crate::loewner::driver::Driver;
use crate::loewner::rk45::{integrate, Tolerance};
use crate::{domain, Result, SleError, C64};

/// Exponents beyond this contribute below double precision; complex division
/// squares the modulus of the denominator, so stay well inside the f64 range.
const EXP_CAP: f64 = 150.0;

/// Right-hand side of the recentred annular equation (tip at 1) and its
/// derivative in `f`, with both lattice sums truncated at `m_max`.
pub fn annular_rhs(f: C64, q: f64, m_max: usize) -> (C64, C64) {
    let one = C64::new(1.0, 0.0);
    let mut v = f * (one + f) / (one - f);
    let mut dv = (one + 2.0 * f - f * f) / ((one - f) * (one - f));
    for m in 1..=m_max {
        let a = 2.0 * m as f64 * q;
        if a > EXP_CAP {
            break;
        }
        let big = a.exp();
        let small = (-a).exp();
        let db = big - f;
        let ds = small - f;
        v += 2.0 * f * f / db + 2.0 * f * small / ds;
        dv += 2.0 * f * (2.0 * big - f) / db / db + 2.0 * small * small / ds / ds;
    }
    (v, dv)
}

/// The radial equation in the disk, `Z (1 + Z) / (1 - Z)`, the `p -> infinity`
/// limit of [`annular_rhs`].
pub fn radial_disk_rhs(f: C64) -> C64 {
    let one = C64::new(1.0, 0.0);
    f * (one + f) / (one - f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Outer,
    Inner,
}

/// Drift of the outer-boundary angle.
pub fn outer_drift(theta: f64, q: f64, m_max: usize) -> f64 {
    let mut d = 1.0 / (theta / 2.0).tan();
    for m in 1..=m_max {
        let a = 2.0 * m as f64 * q;
        if a > EXP_CAP {
            break;
        }
        d += 2.0 * theta.sin() / (a.cosh() - theta.cos());
    }
    d
}

/// Drift of the inner-boundary angle.
pub fn inner_drift(phi: f64, q: f64, m_max: usize) -> f64 {
    let mut d = 0.0;
    for m in 0..=m_max {
        let a = (2 * m + 1) as f64 * q;
        if a > EXP_CAP {
            break;
        }
        d += 2.0 * phi.sin() / (a.cosh() - phi.cos());
    }
    d
}

/// Default bound on the boundary drift before it is reported as singular.
pub const DRIFT_BOUND: f64 = 1e8;

/// Angle of a boundary point relative to the tip, at every grid time.
///
/// Each step applies the driver jump and then integrates the drift. An outer
/// point whose angle leaves `(0, 2 pi)` has been swallowed and the path ends.
pub fn annular_boundary_motion(
    which: Boundary,
    p: f64,
    driver: &Driver,
    angle0: f64,
    m_max: usize,
) -> Result<Vec<(f64, f64)>> {
    annular_boundary_motion_bounded(which, p, driver, angle0, m_max, DRIFT_BOUND)
}

pub fn annular_boundary_motion_bounded(
    which: Boundary,
    p: f64,
    driver: &Driver,
    angle0: f64,
    m_max: usize,
    bound: f64,
) -> Result<Vec<(f64, f64)>> {
    if p <= 0.0 || m_max == 0 {
        return domain("annular modulus p > 0 and truncation M >= 1 required");
    }
    if driver.horizon() >= p {
        return Err(SleError::AnnularTimeExceeded {
            horizon: driver.horizon(),
            p,
        });
    }
    let drift = |a: f64, t: f64| match which {
        Boundary::Outer => outer_drift(a, p - t, m_max),
        Boundary::Inner => inner_drift(a, p - t, m_max),
    };
    let mut out = Vec::with_capacity(driver.values.len());
    let mut a = angle0;
    out.push((0.0, a));
    let mut h0 = driver.dt;
    let tol = Tolerance {
        abs: 1e-12,
        rel: 1e-10,
        h_min: 1e-15,
    };
    for k in 0..driver.n_steps() {
        a += driver.increment(k);
        if which == Boundary::Outer && !(a > 0.0 && a < 2.0 * std::f64::consts::PI) {
            break;
        }
        let t0 = driver.time(k);
        let d0 = drift(a, t0);
        if d0.abs() > bound {
            return Err(SleError::SingularDrift { t: t0, drift: d0 });
        }
        let mut y = [C64::new(a, 0.0)];
        integrate(
            |t, y, dy| dy[0] = C64::new(drift(y[0].re, t), 0.0),
            &mut y,
            t0,
            t0 + driver.dt,
            &mut h0,
            tol,
        )?;
        a = y[0].re;
        if !a.is_finite() {
            return Err(SleError::NonFiniteState { t: t0 });
        }
        out.push((driver.time(k + 1), a));
    }
    Ok(out)
}
