use serde::{Deserialize, Serialize};

use crate::loewner::driver::Driver;
use crate::loewner::point::{evolve_point, Geometry};
use crate::{domain, Result, C64};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusSample {
    pub t: f64,
    pub rho: f64,
    pub alpha: f64,
}

/// `rho = 2 Im f / |f'|`, the conformal radius seen from `z0`, and the angle
/// `alpha = arg(f / conj f)` in `(0, 2 pi)`.
pub fn radius_and_angle(f: C64, df: C64) -> (f64, f64) {
    (2.0 * f.im / df.norm(), 2.0 * f.im.atan2(f.re))
}

/// Conformal radius process of a chordal path seen from `z0`, until
/// swallowing or the end of the driver.
pub fn conformal_radius_process(driver: &Driver, z0: C64) -> Result<Vec<RadiusSample>> {
    if !(z0.im > 0.0) {
        return domain("z0 must lie in the upper half plane");
    }
    let ev = evolve_point(Geometry::Chordal, driver, z0)?;
    let mut out = Vec::with_capacity(ev.times.len());
    let mut prev: Option<f64> = None;
    for ((&t, &f), &df) in ev.times.iter().zip(&ev.w).zip(&ev.dw) {
        if f.im <= 0.0 {
            break;
        }
        let (rho, raw) = radius_and_angle(f, df);
        // unwrap to the branch nearest the previous angle
        let alpha = match prev {
            Some(p) => raw + (2.0 * std::f64::consts::PI) * ((p - raw) / (2.0 * std::f64::consts::PI)).round(),
            None => raw,
        };
        prev = Some(alpha);
        out.push(RadiusSample { t, rho, alpha });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loewner::driver::{constant_driver, sample_driver};
    use std::f64::consts::PI;

    #[test]
    fn initial_value() {
        let d = sample_driver(6.0, 1e-3, 10, 1);
        let z0 = C64::new(0.7, 0.4);
        let r = conformal_radius_process(&d, z0).unwrap();
        assert!((r[0].rho - 0.8).abs() < 1e-15);
        let u = z0 / z0.conj();
        assert!((C64::from_polar(1.0, r[0].alpha) - u).norm() < 1e-14);
    }

    #[test]
    fn zero_driver_closed_form() {
        let y: f64 = 1.5;
        let d = constant_driver(0.0, 1e-3, 500);
        let r = conformal_radius_process(&d, C64::new(0.0, y)).unwrap();
        for s in &r {
            assert!((s.rho - 2.0 * (y * y - 4.0 * s.t) / y).abs() < 1e-9);
            assert!((s.alpha - PI).abs() < 1e-12);
        }
    }

    #[test]
    fn monotone() {
        for seed in 0..20 {
            let d = sample_driver(6.0, 1e-3, 2000, seed);
            let r = conformal_radius_process(&d, C64::new(0.2, 1.0)).unwrap();
            assert!(r.windows(2).all(|w| w[1].rho <= w[0].rho * (1.0 + 1e-12)));
        }
    }
}
