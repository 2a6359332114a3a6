//! Adaptive Dormand-Prince 5(4) integration of complex systems.

use crate::{SleError, C64};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

#[derive(Clone, Copy, Debug)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub h_min: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs: 1e-12,
            rel: 1e-11,
            h_min: 1e-14,
        }
    }
}

/// Integrates `y' = rhs(t, y)` from `t0` to `t1`, returning the number of
/// accepted steps. `h0` is the initial step guess and is updated in place.
pub fn integrate<F>(mut rhs: F, y: &mut [C64], t0: f64, t1: f64, h0: &mut f64, tol: Tolerance) -> Result<usize, SleError>
where
    F: FnMut(f64, &[C64], &mut [C64]),
{
    let n = y.len();
    let mut k = vec![vec![C64::new(0.0, 0.0); n]; 7];
    let mut tmp = vec![C64::new(0.0, 0.0); n];
    let mut y5 = vec![C64::new(0.0, 0.0); n];
    let mut t = t0;
    let mut h = h0.min(t1 - t0).max(tol.h_min);
    let mut accepted = 0;
    rhs(t, y, &mut k[0]);
    while t < t1 {
        if t + h > t1 {
            h = t1 - t;
        }
        for s in 1..7 {
            for i in 0..n {
                let mut acc = y[i];
                for (j, kj) in k.iter().enumerate().take(s) {
                    acc += kj[i] * (h * A[s][j]);
                }
                tmp[i] = acc;
            }
            rhs(t + C[s] * h, &tmp, &mut k[s]);
        }
        let mut err: f64 = 0.0;
        for i in 0..n {
            let mut a5 = y[i];
            let mut d = C64::new(0.0, 0.0);
            for s in 0..7 {
                a5 += k[s][i] * (h * B5[s]);
                d += k[s][i] * (h * (B5[s] - B4[s]));
            }
            y5[i] = a5;
            let sc = tol.abs + tol.rel * y[i].norm().max(a5.norm());
            err = err.max(d.norm() / sc);
        }
        if !err.is_finite() || y5.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            if h <= tol.h_min {
                return Err(SleError::NonFiniteState { t });
            }
            h = (h * 0.1).max(tol.h_min);
            continue;
        }
        if err <= 1.0 || h <= tol.h_min {
            t += h;
            y.copy_from_slice(&y5);
            // first-same-as-last
            let last = k[6].clone();
            k[0].copy_from_slice(&last);
            accepted += 1;
            *h0 = h;
        }
        let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h = (h * fac).max(tol.h_min);
    }
    Ok(accepted)
}
