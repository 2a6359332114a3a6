use serde::{Deserialize, Serialize};

use crate::loewner::annular::annular_rhs;
use crate::loewner::driver::Driver;
use crate::loewner::maps::Flow;
use crate::loewner::rk45::{integrate, Tolerance};
use crate::{domain, Result, SleError, C64};

/// Default swallowing threshold on `|f_t(z)|` (distance to the tip).
pub const EPS_SWALLOW: f64 = 1e-6;

/// Default lattice-sum truncation for annular SLE.
pub const ANNULAR_TRUNCATION: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "lowercase")]
pub enum Geometry {
    Chordal,
    Radial,
    Dipolar,
    Annular { p: f64, m: usize },
}

impl Geometry {
    pub fn annular(p: f64) -> Geometry {
        Geometry::Annular {
            p,
            m: ANNULAR_TRUNCATION,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Geometry::Annular { p, m } if !(p > 0.0) || m == 0 => {
                domain("annular geometry needs p > 0 and M >= 1")
            }
            _ => Ok(()),
        }
    }

    pub(crate) fn flow(&self) -> Option<Flow> {
        match self {
            Geometry::Chordal => Some(Flow::Chordal),
            Geometry::Radial => Some(Flow::Radial),
            Geometry::Dipolar => Some(Flow::Dipolar),
            Geometry::Annular { .. } => None,
        }
    }

    /// Where the tip sits in recentred coordinates.
    pub fn tip(&self) -> C64 {
        match self {
            Geometry::Annular { .. } => C64::new(1.0, 0.0),
            _ => C64::new(0.0, 0.0),
        }
    }
}

/// Trajectory of `f_t(z0)`, the uniformizing map recentred so that the tip
/// sits at [`Geometry::tip`], and of its derivative in `z0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointEvolution {
    pub z0: C64,
    pub times: Vec<f64>,
    pub w: Vec<C64>,
    pub dw: Vec<C64>,
    pub swallow_time: Option<f64>,
    pub alive: bool,
}

impl PointEvolution {
    pub fn last(&self) -> (f64, C64, C64) {
        let k = self.times.len() - 1;
        (self.times[k], self.w[k], self.dw[k])
    }
}

fn finite(z: C64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Evolve one point under the geometry's Loewner flow driven by `driver`.
///
/// Chordal, radial and dipolar steps use the closed-form flow for a constant
/// driver, so they are exact for the piecewise-constant driver on the grid.
/// Annular steps integrate the ODE with adaptive Dormand-Prince.
pub fn evolve_point(geometry: Geometry, driver: &Driver, z0: C64) -> Result<PointEvolution> {
    evolve_point_eps(geometry, driver, z0, EPS_SWALLOW)
}

pub fn evolve_point_eps(geometry: Geometry, driver: &Driver, z0: C64, eps: f64) -> Result<PointEvolution> {
    geometry.validate()?;
    if let Geometry::Annular { p, .. } = geometry {
        if driver.horizon() >= p {
            return Err(SleError::AnnularTimeExceeded {
                horizon: driver.horizon(),
                p,
            });
        }
    }
    let n = driver.n_steps();
    let mut ev = PointEvolution {
        z0,
        times: Vec::with_capacity(n + 1),
        w: Vec::with_capacity(n + 1),
        dw: Vec::with_capacity(n + 1),
        swallow_time: None,
        alive: true,
    };
    let xi0 = driver.values[0];
    let (mut f, mut df) = match geometry.flow() {
        Some(flow) => flow.jump(z0, xi0),
        None => {
            let r = C64::from_polar(1.0, xi0);
            (z0 * r, r)
        }
    };
    ev.times.push(0.0);
    ev.w.push(f);
    ev.dw.push(df);
    let tip = geometry.tip();
    let real = z0.im == 0.0;
    let mut h0 = driver.dt;
    for k in 0..n {
        let dxi = driver.increment(k);
        let t1 = driver.time(k + 1);
        let before = f;
        match geometry {
            Geometry::Annular { p, m } => {
                let r = C64::from_polar(1.0, dxi);
                f *= r;
                df *= r;
                let crossed = real_crossing_annular(before, f);
                let mut y = [f, df];
                integrate(
                    |t, y, dy| {
                        let (v, dv) = annular_rhs(y[0], p - t, m);
                        dy[0] = v;
                        dy[1] = dv * y[1];
                    },
                    &mut y,
                    driver.time(k),
                    t1,
                    &mut h0,
                    Tolerance::default(),
                )?;
                f = y[0];
                df = y[1];
                if crossed {
                    ev.swallow_time = Some(t1);
                }
            }
            _ => {
                let flow = geometry.flow().expect("non-annular");
                let (u, _) = flow.jump(f, dxi);
                let crossed = real && crosses_tip(flow, f, u);
                let (w, d) = flow.step(f, driver.dt, dxi);
                f = w;
                df *= d;
                if crossed {
                    ev.swallow_time = Some(t1);
                }
            }
        }
        if !finite(f) || !finite(df) {
            return Err(SleError::NonFiniteState { t: t1 });
        }
        if ev.swallow_time.is_none() && (f - tip).norm() < eps {
            ev.swallow_time = Some(t1);
        }
        ev.times.push(t1);
        ev.w.push(f);
        ev.dw.push(df);
        if ev.swallow_time.is_some() {
            ev.alive = false;
            break;
        }
    }
    Ok(ev)
}

/// A real boundary point is swallowed when the driver jump carries the tip
/// across it. Radial boundary points may also wrap through infinity, which
/// is not a swallowing.
fn crosses_tip(flow: Flow, before: C64, after: C64) -> bool {
    let flipped = before.re * after.re < 0.0 || after.re == 0.0;
    match flow {
        Flow::Radial => flipped && before.re.abs() <= 1.0 && after.re.abs() <= 1.0,
        _ => flipped,
    }
}

/// Outer-circle points are swallowed when their angle passes the tip at 1.
fn real_crossing_annular(before: C64, after: C64) -> bool {
    if (before.norm() - 1.0).abs() > 1e-12 {
        return false;
    }
    // crossing angle 0 from either side, not the antipode
    before.im * after.im < 0.0 && before.re > 0.0 && after.re > 0.0
}
