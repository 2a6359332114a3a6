//! Truncated Laurent series with exact coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Ring;

/// `sum_{e = val}^{prec - 1} c[e - val] x^e + O(x^prec)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<R: Ring> {
    val: i32,
    c: Vec<R>,
}

impl<R: Ring> Series<R> {
    /// Series starting at exponent `val`; coefficients known up to `val + c.len()`.
    pub fn new(val: i32, c: Vec<R>) -> Self {
        Series { val, c }
    }

    pub fn zero(val: i32, prec: i32) -> Self {
        Series {
            val,
            c: vec![R::zero(); (prec - val).max(0) as usize],
        }
    }

    /// `1 + O(x^prec)`.
    pub fn one(prec: i32) -> Self {
        let mut s = Self::zero(0, prec);
        if prec > 0 {
            s.c[0] = R::one();
        }
        s
    }

    pub fn monomial(e: i32, coef: R, prec: i32) -> Self {
        let mut s = Self::zero(e.min(prec), prec);
        if e < prec {
            s.c[(e - s.val) as usize] = coef;
        }
        s
    }

    pub fn val(&self) -> i32 {
        self.val
    }

    pub fn prec(&self) -> i32 {
        self.val + self.c.len() as i32
    }

    /// Coefficient of `x^e`; panics if `e` is beyond the known precision.
    pub fn coeff(&self, e: i32) -> R {
        assert!(e < self.prec(), "coefficient x^{} beyond precision {}", e, self.prec());
        if e < self.val {
            R::zero()
        } else {
            self.c[(e - self.val) as usize].clone()
        }
    }

    pub fn truncate(&self, prec: i32) -> Self {
        let p = prec.min(self.prec());
        Series {
            val: self.val.min(p),
            c: (self.val.min(p)..p).map(|e| self.coeff(e)).collect(),
        }
    }

    fn rebase(&self, val: i32) -> Self {
        assert!(val <= self.val);
        let mut c = vec![R::zero(); (self.val - val) as usize];
        c.extend(self.c.iter().cloned());
        Series { val, c }
    }

    pub fn scale(&self, k: &R) -> Self {
        Series {
            val: self.val,
            c: self.c.iter().map(|a| a.clone() * k.clone()).collect(),
        }
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: i32) -> Self {
        Series {
            val: self.val + k,
            c: self.c.clone(),
        }
    }

    pub fn derivative(&self) -> Self {
        if self.val == 0 && !self.c.is_empty() {
            // the constant term differentiates to nothing
            return Series::new(1, self.c[1..].to_vec()).derivative();
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .map(|(i, a)| a.clone() * R::from_int((self.val + i as i32) as i64))
            .collect();
        Series {
            val: self.val - 1,
            c,
        }
    }

    /// Inverse of a series whose lowest coefficient is one.
    pub fn recip(&self) -> Self {
        let v = self.val;
        assert!(!self.c.is_empty() && self.c[0] == R::one(), "recip needs a unit leading coefficient");
        let n = self.c.len();
        let mut out: Vec<R> = Vec::with_capacity(n);
        out.push(R::one());
        for k in 1..n {
            let mut s = R::zero();
            for j in 1..=k {
                s = s + self.c[j].clone() * out[k - j].clone();
            }
            out.push(-s);
        }
        Series { val: -v, c: out }
    }

    /// Integer power of a series with unit leading coefficient.
    pub fn powi(&self, k: i64) -> Self {
        let base = if k < 0 { self.recip() } else { self.clone() };
        let mut acc = Series::one(base.c.len() as i32);
        let lead = base.val;
        let unit = Series {
            val: 0,
            c: base.c.clone(),
        };
        let mut e = k.unsigned_abs();
        let mut sq = unit;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * sq.clone();
            }
            e >>= 1;
            if e > 0 {
                sq = sq.clone() * sq;
            }
        }
        acc.shift(lead * k.unsigned_abs() as i32)
    }

    /// `self(inner)` for a power series `self` and `inner` with positive valuation.
    pub fn compose(&self, inner: &Series<R>) -> Self {
        assert!(self.val >= 0, "compose needs a power series");
        assert!(
            (inner.val..1.min(inner.prec())).all(|e| inner.coeff(e).is_zero()),
            "inner series must vanish at the origin"
        );
        let prec = self.prec().min(inner.prec());
        let mut out = Series::zero(0, prec);
        let mut p = Series::one(prec);
        for e in 0..self.prec() {
            if e >= self.val {
                let a = self.coeff(e);
                if !a.is_zero() {
                    out = out + p.scale(&a);
                }
            }
            p = (p * inner.clone()).truncate(prec);
        }
        out.truncate(prec)
    }

    /// Schwarzian derivative `f'''/f' - 3/2 (f''/f')^2`.
    pub fn schwarzian(&self) -> Self {
        let d1 = self.derivative();
        let d2 = d1.derivative();
        let d3 = d2.derivative();
        let inv = d1.recip();
        let r2 = d2 * inv.clone();
        d3 * inv - (r2.clone() * r2).scale(&R::from_ratio(3, 2))
    }
}

impl<R: Ring> Add for Series<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let val = self.val.min(rhs.val);
        let prec = self.prec().min(rhs.prec());
        let (a, b) = (self.rebase(val), rhs.rebase(val));
        let n = (prec - val).max(0) as usize;
        Series {
            val,
            c: a.c.into_iter().zip(b.c).take(n).map(|(x, y)| x + y).collect(),
        }
    }
}

impl<R: Ring> Neg for Series<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Series {
            val: self.val,
            c: self.c.into_iter().map(|x| -x).collect(),
        }
    }
}

impl<R: Ring> Sub for Series<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<R: Ring> Mul for Series<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let val = self.val + rhs.val;
        let prec = (self.prec() + rhs.val).min(rhs.prec() + self.val);
        let n = (prec - val).max(0) as usize;
        let mut c = vec![R::zero(); n];
        for (i, a) in self.c.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate().take(n - i) {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Series { val, c }
    }
}
