//! Differential operators on polynomials in the coefficients of
//! `f(z) = z + f_{-1} + f_{-2}/z + ...` (maps normalized at infinity).
//!
//! Variable `x_{k-1}` of an [`MPoly`] stands for `f_{-k}`, of grade `k`.
//! Series are written in `u = 1/z` with `f = F(u)/u` and
//! `F = 1 + sum_k f_{-k} u^k`, so `f'(z) = F - u F'(u)`.

use crate::poly::MPoly;
use crate::scalar::{Rational, Ring};
use crate::series::Series;
use crate::VirasoroError;

pub type CoeffPolynomial<R> = MPoly<R>;

/// `f_{-k}` as a polynomial.
pub fn f_var<R: Ring>(k: usize) -> CoeffPolynomial<R> {
    assert!(k >= 1);
    MPoly::var(k - 1)
}

/// Grade of `x_i` (that is, of `f_{-(i+1)}`).
pub fn weight(i: usize) -> u32 {
    i as u32 + 1
}

/// A first-order differential operator plus a multiplicative part:
/// `P -> sum_k derivs[k-1] dP/df_{-k} + scalar P`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffOperator<R: Ring> {
    pub derivs: Vec<CoeffPolynomial<R>>,
    pub scalar: CoeffPolynomial<R>,
    pub cutoff: usize,
}

impl<R: Ring> CoeffOperator<R> {
    pub fn apply(&self, p: &CoeffPolynomial<R>) -> Result<CoeffPolynomial<R>, VirasoroError> {
        if let Some(i) = p.max_var() {
            if i >= self.cutoff {
                return Err(VirasoroError::CutoffExceeded {
                    index: i + 1,
                    cutoff: self.cutoff,
                });
            }
        }
        let mut out = self.scalar.clone() * p.clone();
        for (i, d) in self.derivs.iter().enumerate() {
            let dp = p.partial(i);
            if !dp.is_zero() {
                out = out + d.clone() * dp;
            }
        }
        if let Some(i) = out.max_var() {
            if i >= self.cutoff {
                return Err(VirasoroError::CutoffExceeded {
                    index: i + 1,
                    cutoff: self.cutoff,
                });
            }
        }
        Ok(out)
    }

    fn lift<T: Ring>(&self) -> CoeffOperator<T>
    where
        R: Into<Rational> + Clone,
    {
        let f = |p: &MPoly<R>| p.map(|q| T::from_q(&q.clone().into()));
        CoeffOperator {
            derivs: self.derivs.iter().map(f).collect(),
            scalar: f(&self.scalar),
            cutoff: self.cutoff,
        }
    }

    /// Value on the generator `f_{-k}` (the derivation part only).
    pub fn on_var(&self, k: usize) -> &CoeffPolynomial<R> {
        &self.derivs[k - 1]
    }
}

/// `F(u) = 1 + sum_{k=1}^{len} f_{-k} u^k`, exact through `u^len`.
fn symbolic_f<R: Ring>(len: usize) -> Series<MPoly<R>> {
    let mut c = vec![MPoly::one()];
    c.extend((1..=len).map(f_var));
    Series::new(0, c)
}

/// `f'(z)` as a series in `u`.
fn f_prime<R: Ring>(big_f: &Series<MPoly<R>>) -> Series<MPoly<R>> {
    big_f.clone() - big_f.derivative().shift(1)
}

/// `S_n`, induced by `f -> f + eps f^{1-n}` for `n >= 1`.
///
/// The correction `yhat_n f'` vanishes for `n >= 1` because `f^{1-n}/f'`
/// has no strictly positive powers of `z`. The operator lowers the grade by `n`.
pub fn s_operator<R: Ring>(n: usize, cutoff: usize) -> CoeffOperator<R> {
    s_operator_q(n, cutoff).lift()
}

fn s_operator_q(n: usize, cutoff: usize) -> CoeffOperator<Rational> {
    assert!(n >= 1, "S_n is defined for n >= 1");
    let big_f = symbolic_f::<Rational>(cutoff + 1);
    // f^{1-n} = u^{n-1} F^{1-n}; its z^{1-k} = u^{k-1} coefficient is [u^{k-n}] F^{1-n}.
    let p = big_f.powi(1 - n as i64);
    let derivs = (1..=cutoff)
        .map(|k| {
            if k < n {
                MPoly::zero()
            } else {
                p.coeff((k - n) as i32)
            }
        })
        .collect();
    CoeffOperator {
        derivs,
        scalar: MPoly::zero(),
        cutoff,
    }
}

/// `R_n` on `V(c, h)`: the derivation induced by
/// `f -> f + eps (-z^{1-n} f'(z) + ytilde_n(f))` plus, for `n <= 0`, the
/// multiplicative part `c zeta + h y_0`.
///
/// `ytilde_n(w) = sum_{j=0}^{-n} y_j w^{j+1}` with
/// `y_j = [z^{-1}] z^{1-n} f'^2 / f^{j+2}` restores the normalization at
/// infinity, and `zeta = (1/12) [z^{-1}] z^{1-n} Sf(z)`.
pub fn r_operator<R: Ring>(n: i32, c: &R, h: &R, cutoff: usize) -> CoeffOperator<R> {
    let (op, zeta, y0) = r_operator_q(n, cutoff);
    let mut out: CoeffOperator<R> = op.lift();
    let lift = |p: &MPoly<Rational>| p.map(|q| R::from_q(q));
    out.scalar = lift(&zeta).scale(c) + lift(&y0).scale(h);
    out
}

/// Derivation part of `R_n` over Q, with `zeta` and `y_0`.
///
/// Every series is truncated at the order its coefficient is read from;
/// the products are the expensive part.
fn r_operator_q(n: i32, cutoff: usize) -> (CoeffOperator<Rational>, MPoly<Rational>, MPoly<Rational>) {
    let m = (-n).max(0);
    let f_to = |e: i32| symbolic_f::<Rational>(e.max(0) as usize).truncate(e.max(0) + 1);
    let d_to = |e: i32| f_prime(&f_to(e)).truncate(e.max(0) + 1);
    // -z^{1-n} f' = -u^{n-1} D(u); coefficients up to u^{cutoff-1}
    let top = cutoff as i32 - 1;
    let mut var = (-d_to(top - n + 1)).shift(n - 1);
    let mut y0 = MPoly::zero();
    for j in (0..=m).filter(|_| n <= 0) {
        let e = m - j;
        let d = d_to(e);
        let yj = (d.clone() * d * f_to(e).powi(-(j as i64) - 2)).coeff(e);
        if j == 0 {
            y0 = yj.clone();
        }
        // f^{j+1} = u^{-j-1} F^{j+1}
        let fj = f_to(top + j + 1).powi(j as i64 + 1).shift(-j - 1);
        var = var + fj.scale(&yj);
    }
    let derivs = (1..=cutoff).map(|k| var.coeff(k as i32 - 1)).collect();
    let mut zeta = MPoly::zero();
    if n <= 0 {
        // Sf through u^{2-n}, using f'' = -u^2 D' and f''' = 2u^3 D' + u^4 D''
        let e = 2 - n;
        let d = d_to(e);
        let ddu = d.derivative();
        let d2u = ddu.derivative();
        let f2 = (-ddu.clone()).shift(2);
        let f3 = (ddu.scale(&MPoly::from_int(2)).shift(3)) + d2u.shift(4);
        let inv = d.recip();
        let r = f2 * inv.clone();
        let sf = f3 * inv - (r.clone() * r).scale(&MPoly::from_ratio(3, 2));
        zeta = sf.coeff(e).scale(&Rational::from_ratio(1, 12));
    }
    let op = CoeffOperator {
        derivs,
        scalar: MPoly::zero(),
        cutoff,
    };
    (op, zeta, y0)
}

/// Coefficients of positive powers of `z` in the variation defining `R_n`;
/// all must vanish for the variation to preserve the normalization.
pub fn r_variation_positive_part<R: Ring>(n: i32, cutoff: usize) -> Vec<CoeffPolynomial<R>> {
    let len = cutoff + n.unsigned_abs() as usize + 4;
    let big_f = symbolic_f::<R>(len);
    let d = f_prime(&big_f);
    let mut var = (-d.clone()).shift(n - 1);
    if n <= 0 {
        let d2 = d.clone() * d;
        for j in 0..=(-n) {
            let yj = (d2.clone() * big_f.powi(-(j as i64) - 2)).coeff(-n - j);
            var = var + big_f.powi(j as i64 + 1).shift(-j - 1).scale(&yj);
        }
    }
    (var.val()..0).map(|e| var.coeff(e)).collect()
}

/// Commutator `[A, B] P = A(B P) - B(A P)`.
pub fn commutator_on<R: Ring>(
    a: &CoeffOperator<R>,
    b: &CoeffOperator<R>,
    p: &CoeffPolynomial<R>,
) -> Result<CoeffPolynomial<R>, VirasoroError> {
    Ok(a.apply(&b.apply(p)?)? - b.apply(&a.apply(p)?)?)
}

/// All monomials in `f_{-1}, ..., f_{-grade}` of exact grade `grade`.
pub fn monomials_of_grade<R: Ring>(grade: u32) -> Vec<CoeffPolynomial<R>> {
    crate::verma::partitions(grade)
        .into_iter()
        .map(|p| {
            p.iter()
                .fold(MPoly::one(), |acc, &k| acc * f_var::<R>(k as usize))
        })
        .collect()
}
