//! Elementary maps for one grid step with a constant driver.
//!
//! Over a step the driver first jumps by `dxi` (a Moebius recentring fixing
//! the geometry's marked points) and then stays constant for time `h`, during
//! which the flow has a closed form. All maps act on recentred coordinates,
//! where the tip sits at 0.

use crate::C64;

/// Square root on the closed upper half plane. Real inputs keep the sign of
/// `hint` (points on the real axis never change side during a slit step).
#[inline]
pub(crate) fn sqrt_up(w: C64, hint: f64) -> C64 {
    let s = w.sqrt();
    if s.im < 0.0 || (s.im == 0.0 && hint < 0.0) {
        -s
    } else {
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct InverseStep {
    shift: f64,
    scale: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Flow {
    Chordal,
    Radial,
    Dipolar,
}

impl Flow {
    /// Recentring after a driver jump, with its derivative.
    #[inline]
    pub(crate) fn jump(self, f: C64, dxi: f64) -> (C64, C64) {
        match self {
            Flow::Chordal => (f - dxi, C64::new(1.0, 0.0)),
            Flow::Radial => {
                // rotation about i taking tan(dxi) to 0
                let t = dxi.tan();
                let den = 1.0 + f * t;
                ((f - t) / den, C64::new(1.0 + t * t, 0.0) / (den * den))
            }
            Flow::Dipolar => {
                // hyperbolic map fixing +-1 taking tanh(dxi) to 0
                let t = dxi.tanh();
                let den = 1.0 - f * t;
                ((f - t) / den, C64::new(1.0 - t * t, 0.0) / (den * den))
            }
        }
    }

    /// Inverse of [`Flow::jump`].
    #[inline]
    pub(crate) fn unjump(self, w: C64, dxi: f64) -> C64 {
        self.jump(w, -dxi).0
    }

    /// Flow for time `h` with the driver at 0, with its derivative.
    #[inline]
    pub(crate) fn slit(self, u: C64, h: f64) -> (C64, C64) {
        match self {
            Flow::Chordal => {
                let s = sqrt_up(u * u + 4.0 * h, u.re);
                (s, u / s)
            }
            Flow::Radial => {
                let e = (4.0 * h).exp();
                let s = sqrt_up((1.0 + u * u) * e - 1.0, u.re);
                (s, u * e / s)
            }
            Flow::Dipolar => {
                let e = (-4.0 * h).exp();
                let s = sqrt_up(u * u * e + (1.0 - e), u.re);
                (s, u * e / s)
            }
        }
    }

    /// Inverse of [`Flow::slit`]; maps the tip 0 to the top of the new slit.
    #[cfg(test)]
    pub(crate) fn unslit(self, w: C64, h: f64) -> C64 {
        match self {
            Flow::Chordal => sqrt_up(w * w - 4.0 * h, w.re),
            Flow::Radial => sqrt_up((1.0 + w * w) * (-4.0 * h).exp() - 1.0, w.re),
            Flow::Dipolar => sqrt_up(1.0 - (1.0 - w * w) * (4.0 * h).exp(), w.re),
        }
    }

    /// One grid step: jump, then slit. Returns the new point and the
    /// derivative of the step map at the old point.
    #[inline]
    pub(crate) fn step(self, f: C64, h: f64, dxi: f64) -> (C64, C64) {
        let (u, du) = self.jump(f, dxi);
        let (w, dw) = self.slit(u, h);
        (w, du * dw)
    }

    #[cfg(test)]
    pub(crate) fn unstep(self, w: C64, h: f64, dxi: f64) -> C64 {
        self.unjump(self.unslit(w, h), dxi)
    }

    /// Constants of one inverse step, so that repeated pullbacks through the
    /// same step avoid recomputing `exp` and `tan`/`tanh`.
    pub(crate) fn inverse_params(self, h: f64, dxi: f64) -> InverseStep {
        match self {
            Flow::Chordal => InverseStep { shift: dxi, scale: 4.0 * h },
            Flow::Radial => InverseStep { shift: dxi.tan(), scale: (-4.0 * h).exp() },
            Flow::Dipolar => InverseStep { shift: dxi.tanh(), scale: (4.0 * h).exp() },
        }
    }

    /// [`Flow::unstep`] with precomputed constants.
    #[inline]
    pub(crate) fn unstep_with(self, w: C64, p: InverseStep) -> C64 {
        let one = C64::new(1.0, 0.0);
        match self {
            Flow::Chordal => sqrt_up(w * w - p.scale, w.re) + p.shift,
            Flow::Radial => {
                let u = sqrt_up((one + w * w) * p.scale - 1.0, w.re);
                (u + p.shift) / (one - u * p.shift)
            }
            Flow::Dipolar => {
                let u = sqrt_up(one - (one - w * w) * p.scale, w.re);
                (u + p.shift) / (one + u * p.shift)
            }
        }
    }

    /// Right-hand side of the (uncentred) Loewner equation for `g_t`.
    #[cfg(test)]
    pub(crate) fn rhs(self, g: C64, xi: f64) -> C64 {
        match self {
            Flow::Chordal => 2.0 / (g - xi),
            Flow::Radial => {
                let t = xi.tan();
                2.0 * (1.0 + g * g) * (1.0 + g * t) / (g - t)
            }
            Flow::Dipolar => {
                let t = xi.tanh();
                2.0 * (1.0 - g * g) * (1.0 - g * t) / (g - t)
            }
        }
    }

    /// `g -> f`, the recentring by the full driver value.
    #[cfg(test)]
    pub(crate) fn recentre(self, g: C64, xi: f64) -> C64 {
        self.jump(g, xi).0
    }

    pub(crate) fn uncentre(self, f: C64, xi: f64) -> C64 {
        self.unjump(f, xi)
    }
}
