use serde::{Deserialize, Serialize};

use crate::loewner::driver::Driver;
use crate::loewner::point::Geometry;
use crate::{domain, Result, SleError, C64};

/// Sampled SLE trace. Chordal and dipolar traces live in the upper half
/// plane; radial traces are reported in the unit disk, emerging from 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    pub times: Vec<f64>,
    pub points: Vec<C64>,
    pub geometry: Geometry,
}

/// Half plane to disk, `0 -> 1`, `i -> 0`.
pub fn half_plane_to_disk(z: C64) -> C64 {
    let i = C64::new(0.0, 1.0);
    -(z - i) / (z + i)
}

/// Trace at every grid time, by the zipper: `gamma(t_k)` is the tip 0 pulled
/// back through the exact inverse step maps `k, k-1, ..., 1`. Costs
/// `O(n^2)` map evaluations.
pub fn trace(geometry: Geometry, driver: &Driver) -> Result<Trace> {
    trace_every(geometry, driver, 1)
}

/// As [`trace`], but only at every `stride`-th grid time (and the last).
pub fn trace_every(geometry: Geometry, driver: &Driver, stride: usize) -> Result<Trace> {
    let flow = match geometry.flow() {
        Some(f) => f,
        None => return domain("annular traces are not supported"),
    };
    if stride == 0 {
        return domain("stride must be positive");
    }
    let n = driver.n_steps();
    let h = driver.dt;
    let xi0 = driver.values[0];
    let mut ks: Vec<usize> = (0..=n).step_by(stride).collect();
    if *ks.last().unwrap() != n {
        ks.push(n);
    }
    let inv: Vec<_> = (0..n).map(|j| flow.inverse_params(h, driver.increment(j))).collect();
    let mut times = Vec::with_capacity(ks.len());
    let mut points = Vec::with_capacity(ks.len());
    for &k in &ks {
        let mut w = C64::new(0.0, 0.0);
        for p in inv[..k].iter().rev() {
            w = flow.unstep_with(w, *p);
        }
        w = flow.uncentre(w, xi0);
        if !(w.re.is_finite() && w.im.is_finite()) || w.im < -1e-12 {
            return Err(SleError::TipEscape { t: driver.time(k) });
        }
        times.push(driver.time(k));
        points.push(if geometry == Geometry::Radial { half_plane_to_disk(w) } else { w });
    }
    Ok(Trace {
        times,
        points,
        geometry,
    })
}

/// Boundary sets for distance queries.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundarySet {
    /// The whole real axis.
    RealAxis,
    /// The segment between two points.
    Segment { a: C64, b: C64 },
    /// `start + s * dir` for `s >= 0`.
    Ray { start: C64, dir: C64 },
    /// `(-inf, lo] U [hi, inf)` on the real axis.
    RealComplement { lo: f64, hi: f64 },
    Circle { center: C64, radius: f64 },
}

pub fn distance_to_segment(z: C64, a: C64, b: C64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let s = ((z - a) * d.conj()).re / len2;
    (z - (a + d * s.clamp(0.0, 1.0))).norm()
}

impl BoundarySet {
    pub fn distance(&self, z: C64) -> f64 {
        match *self {
            BoundarySet::RealAxis => z.im.abs(),
            BoundarySet::Segment { a, b } => distance_to_segment(z, a, b),
            BoundarySet::Ray { start, dir } => {
                let d = dir / dir.norm();
                let s = ((z - start) * d.conj()).re.max(0.0);
                (z - (start + d * s)).norm()
            }
            BoundarySet::RealComplement { lo, hi } => {
                if z.re <= lo || z.re >= hi {
                    z.im.abs()
                } else {
                    (z - lo).norm().min((z - hi).norm())
                }
            }
            BoundarySet::Circle { center, radius } => ((z - center).norm() - radius).abs(),
        }
    }
}

/// Minimum distance from the sampled trace points to a boundary set.
pub fn min_distance_to_set(trace: &Trace, set: &BoundarySet) -> f64 {
    assert!(!trace.points.is_empty(), "empty trace");
    trace.points.iter().map(|&z| set.distance(z)).fold(f64::INFINITY, f64::min)
}
