//! Exact polynomials: multivariate over any ring, and rational functions
//! of a single formal parameter over Q.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{rat, Field, Rational, Ring};

fn q0() -> Rational {
    <Rational as Zero>::zero()
}

fn q1() -> Rational {
    <Rational as One>::one()
}

/// Exponent vector with trailing zeros removed.
pub type Monomial = Vec<u32>;

fn trim(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let n = a.len().max(b.len());
    let mut out = vec![0; n];
    for (i, e) in a.iter().enumerate() {
        out[i] += e;
    }
    for (i, e) in b.iter().enumerate() {
        out[i] += e;
    }
    out
}

/// Sparse multivariate polynomial in variables `x_0, x_1, ...`.
#[derive(Clone, PartialEq, Debug)]
pub struct MPoly<R: Ring> {
    terms: BTreeMap<Monomial, R>,
}

impl<R: Ring> MPoly<R> {
    pub fn constant(c: R) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MPoly { terms }
    }

    pub fn var(i: usize) -> Self {
        let mut m = vec![0; i + 1];
        m[i] = 1;
        Self::monomial(m, R::one())
    }

    pub fn monomial(m: Monomial, c: R) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(trim(m), c);
        }
        MPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: R) {
        if c.is_zero() {
            return;
        }
        let m = trim(m);
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = MPoly::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v.clone() * c.clone());
        }
        out
    }

    /// Partial derivative with respect to `x_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = MPoly::zero();
        for (m, v) in &self.terms {
            if let Some(&e) = m.get(i) {
                if e > 0 {
                    let mut m2 = m.clone();
                    m2[i] -= 1;
                    out.add_term(m2, v.clone() * R::from_int(e as i64));
                }
            }
        }
        out
    }

    /// Largest variable index present, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(|m| m.len().checked_sub(1)).max()
    }

    /// Weighted degree of each monomial; `None` for the zero polynomial.
    pub fn grades(&self, weight: impl Fn(usize) -> u32) -> Vec<u32> {
        let mut g: Vec<u32> = self
            .terms
            .keys()
            .map(|m| m.iter().enumerate().map(|(i, e)| weight(i) * e).sum())
            .collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    pub fn homogeneous_part(&self, grade: u32, weight: impl Fn(usize) -> u32) -> Self {
        let mut out = MPoly::zero();
        for (m, v) in &self.terms {
            let g: u32 = m.iter().enumerate().map(|(i, e)| weight(i) * e).sum();
            if g == grade {
                out.add_term(m.clone(), v.clone());
            }
        }
        out
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&R) -> T) -> MPoly<T> {
        let mut out = MPoly::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), f(v));
        }
        out
    }

    /// Coefficient of an exact monomial.
    pub fn coeff(&self, m: &[u32]) -> R {
        self.terms
            .get(&trim(m.to_vec()))
            .cloned()
            .unwrap_or_else(R::zero)
    }

    pub fn constant_term(&self) -> R {
        self.coeff(&[])
    }

    /// Substitute values for every variable (missing entries count as zero).
    pub fn eval_with<T: Ring>(&self, vals: &[T], lift: impl Fn(&R) -> T) -> T {
        let mut acc = T::zero();
        for (m, v) in &self.terms {
            let mut t = lift(v);
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    let x = vals.get(i).cloned().unwrap_or_else(T::zero);
                    t = t * x.pow(e);
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn fmt_with(&self, f: &mut fmt::Formatter<'_>, name: &dyn Fn(usize) -> String) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, v)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:?})", v)?;
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*{}", name(i))?,
                    _ => write!(f, "*{}^{}", name(i), e)?,
                }
            }
        }
        Ok(())
    }
}

impl MPoly<Rational> {
    pub fn eval_f64(&self, vals: &[f64]) -> f64 {
        self.eval_with(vals, |r| r.to_f64().unwrap_or(f64::NAN))
    }
}

impl<R: Ring> fmt::Display for MPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &|i| format!("x{}", i))
    }
}

impl<R: Ring> Add for MPoly<R> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (m, v) in rhs.terms {
            self.add_term(m, v);
        }
        self
    }
}

impl<R: Ring> Sub for MPoly<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<R: Ring> Neg for MPoly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        MPoly {
            terms: self.terms.into_iter().map(|(m, v)| (m, -v)).collect(),
        }
    }
}

impl<R: Ring> Mul for MPoly<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = MPoly::zero();
        for (ma, va) in &self.terms {
            for (mb, vb) in &rhs.terms {
                out.add_term(mono_mul(ma, mb), va.clone() * vb.clone());
            }
        }
        out
    }
}

impl<R: Ring> Ring for MPoly<R> {
    fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }
    fn one() -> Self {
        MPoly::constant(R::one())
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        MPoly::constant(R::from_ratio(num, den))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_q(q: &Rational) -> Self {
        MPoly::constant(R::from_q(q))
    }
}

/// Dense univariate polynomial over Q, coefficients from low to high degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UPoly(Vec<Rational>);

impl UPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn constant(c: Rational) -> Self {
        UPoly::new(vec![c])
    }

    pub fn x() -> Self {
        UPoly::new(vec![q0(), q1()])
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    fn lead(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(q0)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(q0(), |acc, c| acc * x + c)
    }

    fn scale(&self, c: &Rational) -> Self {
        UPoly::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.lead().recip();
        let mut r = self.0.clone();
        let mut q = vec![q0(); self.0.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let coef = r.last().unwrap() * &lead_inv;
            for (i, dc) in d.0.iter().enumerate() {
                r[k + i] = &r[k + i] - &coef * dc;
            }
            q[k] = coef;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (UPoly::new(q), UPoly::new(r))
    }

    /// `Some(j)` when the polynomial is `a x^j`.
    fn monomial_degree(&self) -> Option<usize> {
        let d = self.degree()?;
        self.0[..d].iter().all(Zero::is_zero).then_some(d)
    }

    fn monic(&self) -> UPoly {
        if self.0.is_empty() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while b.degree().is_some() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl Add for UPoly {
    type Output = UPoly;
    fn add(self, rhs: UPoly) -> UPoly {
        let n = self.0.len().max(rhs.0.len());
        UPoly::new(
            (0..n)
                .map(|i| {
                    self.0.get(i).cloned().unwrap_or_else(q0)
                        + rhs.0.get(i).cloned().unwrap_or_else(q0)
                })
                .collect(),
        )
    }
}

impl Neg for UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly(self.0.into_iter().map(|c| -c).collect())
    }
}

impl Sub for UPoly {
    type Output = UPoly;
    fn sub(self, rhs: UPoly) -> UPoly {
        self + (-rhs)
    }
}

impl Mul for UPoly {
    type Output = UPoly;
    fn mul(self, rhs: UPoly) -> UPoly {
        if self.0.is_empty() || rhs.0.is_empty() {
            return UPoly(Vec::new());
        }
        let mut out = vec![q0(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }
}

/// Rational function in one formal parameter (used for symbolic kappa).
/// Kept reduced with a monic denominator, so equality is structural.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFn {
    num: UPoly,
    den: UPoly,
}

impl RatFn {
    pub fn new(num: UPoly, den: UPoly) -> Self {
        assert!(den.degree().is_some(), "zero denominator");
        if num.degree().is_none() {
            return RatFn {
                num,
                den: UPoly::constant(q1()),
            };
        }
        let (n, d) = if let Some(j) = den.monomial_degree() {
            // cheap path for denominators `a x^j`, the common case for kappa
            let t = num.0.iter().take_while(|c| Zero::is_zero(*c)).count().min(j);
            (UPoly(num.0[t..].to_vec()), UPoly(den.0[t..].to_vec()))
        } else {
            let g = UPoly::gcd(&num, &den);
            (num.divrem(&g).0, den.divrem(&g).0)
        };
        let l = d.lead().recip();
        RatFn {
            num: n.scale(&l),
            den: d.scale(&l),
        }
    }

    /// The formal parameter itself.
    pub fn param() -> Self {
        RatFn::new(UPoly::x(), UPoly::constant(q1()))
    }

    pub fn constant(c: Rational) -> Self {
        RatFn::new(UPoly::constant(c), UPoly::constant(q1()))
    }

    pub fn numerator(&self) -> &UPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UPoly {
        &self.den
    }

    /// Order of vanishing at `x0` (negative at a pole). `None` for zero.
    pub fn order_at(&self, x0: &Rational) -> Option<i32> {
        fn mult(p: &UPoly, x0: &Rational) -> i32 {
            let lin = UPoly::new(vec![-x0.clone(), q1()]);
            let mut p = p.clone();
            let mut k = 0;
            loop {
                let (q, r) = p.divrem(&lin);
                if r.degree().is_some() {
                    return k;
                }
                p = q;
                k += 1;
            }
        }
        self.num.degree()?;
        Some(mult(&self.num, x0) - mult(&self.den, x0))
    }

    /// Value of `self / (x - x0)^ord` at `x0`, assuming it is finite there.
    pub fn eval_divided(&self, x0: &Rational, ord: i32) -> Option<Rational> {
        let lin = UPoly::new(vec![-x0.clone(), q1()]);
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        for _ in 0..ord.max(0) {
            den = den * lin.clone();
        }
        for _ in 0..(-ord).max(0) {
            num = num * lin.clone();
        }
        RatFn::new(num, den).eval(x0)
    }

    /// Value at a rational point, `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if Zero::is_zero(&d) {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &UPoly| -> String {
            if p.0.is_empty() {
                return "0".into();
            }
            let mut s = String::new();
            for (i, c) in p.0.iter().enumerate().rev() {
                if Zero::is_zero(c) {
                    continue;
                }
                let sign = if c.is_negative() { "-" } else { "+" };
                if !s.is_empty() || c.is_negative() {
                    s.push_str(sign);
                }
                let a = c.abs();
                match i {
                    0 => s.push_str(&a.to_string()),
                    1 => s.push_str(&format!("{}k", a)),
                    _ => s.push_str(&format!("{}k^{}", a, i)),
                }
            }
            s
        };
        if self.den.degree() == Some(0) {
            write!(f, "{}", show(&self.num))
        } else {
            write!(f, "({})/({})", show(&self.num), show(&self.den))
        }
    }
}

impl Add for RatFn {
    type Output = RatFn;
    fn add(self, rhs: RatFn) -> RatFn {
        if self.den == rhs.den {
            return RatFn::new(self.num + rhs.num, self.den);
        }
        RatFn::new(
            self.num * rhs.den.clone() + rhs.num * self.den.clone(),
            self.den * rhs.den,
        )
    }
}

impl Sub for RatFn {
    type Output = RatFn;
    fn sub(self, rhs: RatFn) -> RatFn {
        self + (-rhs)
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for RatFn {
    type Output = RatFn;
    fn mul(self, rhs: RatFn) -> RatFn {
        RatFn::new(self.num * rhs.num, self.den * rhs.den)
    }
}

impl Ring for RatFn {
    fn zero() -> Self {
        RatFn::constant(q0())
    }
    fn one() -> Self {
        RatFn::constant(q1())
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        RatFn::constant(rat(num, den))
    }
    fn is_zero(&self) -> bool {
        self.num.degree().is_none()
    }
    fn from_q(q: &Rational) -> Self {
        RatFn::constant(q.clone())
    }
}

impl Field for RatFn {
    fn inv(&self) -> Self {
        RatFn::new(self.den.clone(), self.num.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = MPoly<Rational>;

    #[test]
    fn mpoly_arithmetic() {
        let x = P::var(0);
        let y = P::var(2);
        let p = (x.clone() + y.clone()) * (x.clone() - y.clone());
        let q = x.clone() * x.clone() - y.clone() * y.clone();
        assert_eq!(p, q);
        assert_eq!(p.partial(0), x.scale(&rat(2, 1)));
        assert_eq!(p.max_var(), Some(2));
        assert!((p.clone() - q).is_zero());
    }

    #[test]
    fn mpoly_grades_and_eval() {
        let p = P::var(0) * P::var(0) + P::var(1).scale(&rat(3, 1));
        assert_eq!(p.grades(|i| i as u32 + 1), vec![2]);
        assert_eq!(p.eval_f64(&[2.0, 1.0]), 7.0);
    }

    #[test]
    fn ratfn_reduces() {
        let k = RatFn::param();
        let one = RatFn::one();
        let a = (k.clone() * k.clone() - one.clone()) * (k.clone() - one.clone()).inv();
        assert_eq!(a, k.clone() + one);
        let b = k.clone() * k.inv();
        assert_eq!(b, RatFn::one());
        assert_eq!(RatFn::param().eval(&rat(3, 2)), Some(rat(3, 2)));
    }

    #[test]
    fn upoly_gcd() {
        let x = UPoly::x();
        let one = UPoly::constant(rat(1, 1));
        let a = (x.clone() - one.clone()) * (x.clone() + one.clone());
        let b = (x.clone() - one.clone()) * (x.clone() * x.clone() + one.clone());
        assert_eq!(UPoly::gcd(&a, &b), x - one);
    }
}
