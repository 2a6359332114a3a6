//! The operators `G_f` for maps `f(z) = z + sum_{m>=1} f_m z^{m+1}`.
//!
//! `G_f` is a graded series in the positive modes, the solution of
//! `dG_f/df_m = -G_f A_m(f)` with
//! `A_m(f) = sum_{n>=m} L_n [w^{-m-2}] f'(w) / f(w)^{n+2}`.
//! Grade `k` carries `f`-degree `k` (with `f_m` of degree `m`) and lowers the
//! level by `k`. Applying the Euler operator `sum_m m f_m d/df_m` gives
//!
//! `k G_k = - sum_{m=1}^k m f_m sum_{n=m}^k c_{m,n} G_{k-n} L_n`,
//!
//! where `c_{m,n}` is the `z^{n-m}` coefficient of `f'(z) (f(z)/z)^{-n-2}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Ring;
use crate::series::Series;
use crate::verma::{VermaModule, VermaVector};
use crate::VirasoroError;

/// Element of the enveloping algebra of the positive modes, stored in the
/// ordered basis `L_{a_1} L_{a_2} ... L_{a_k}` with `a_1 <= a_2 <= ...`.
#[derive(Clone, PartialEq, Debug)]
pub struct UPlus<R: Ring> {
    terms: BTreeMap<Vec<u32>, R>,
}

impl<R: Ring> UPlus<R> {
    pub fn zero() -> Self {
        UPlus {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::word(&[], R::one())
    }

    /// `coef * L_{a_1} ... L_{a_k}`, normal ordered.
    pub fn word(w: &[u32], coef: R) -> Self {
        let mut out = Self::zero();
        out.add_ordered(w, coef);
        out
    }

    pub fn mode(n: u32) -> Self {
        Self::word(&[n], R::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &R)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[u32]) -> R {
        self.terms.get(w).cloned().unwrap_or_else(R::zero)
    }

    fn add_sorted(&mut self, w: Vec<u32>, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                let s = x.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    /// Add `c` times an arbitrary word, rewriting it with
    /// `L_a L_b = L_b L_a + (a - b) L_{a+b}`.
    fn add_ordered(&mut self, w: &[u32], c: R) {
        if c.is_zero() {
            return;
        }
        match w.windows(2).position(|p| p[0] > p[1]) {
            None => self.add_sorted(w.to_vec(), c),
            Some(i) => {
                let (a, b) = (w[i], w[i + 1]);
                let mut swapped = w.to_vec();
                swapped.swap(i, i + 1);
                self.add_ordered(&swapped, c.clone());
                let mut merged = w[..i].to_vec();
                merged.push(a + b);
                merged.extend_from_slice(&w[i + 2..]);
                self.add_ordered(&merged, c * R::from_int(a as i64 - b as i64));
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_sorted(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &R) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_sorted(w.clone(), c.clone() * k.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_ordered(&w, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn act(&self, module: &VermaModule<R>, v: &VermaVector<R>) -> Result<VermaVector<R>, VirasoroError> {
        let mut out = VermaVector::zero();
        for (w, c) in &self.terms {
            let word: Vec<i32> = w.iter().map(|&a| a as i32).collect();
            out = out.add(&module.apply_word(&word, v)?.scale(c));
        }
        Ok(out)
    }
}

impl<R: Ring> fmt::Display for UPlus<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:?})", c)?;
            for a in w {
                write!(f, " L{}", a)?;
            }
        }
        Ok(())
    }
}

/// Graded operator `sum_k G_k`, `G_k` of grade `k`.
#[derive(Clone, PartialEq, Debug)]
pub struct GradedOperatorExpansion<R: Ring> {
    pub grades: Vec<UPlus<R>>,
}

impl<R: Ring> GradedOperatorExpansion<R> {
    pub fn max_grade(&self) -> usize {
        self.grades.len() - 1
    }

    pub fn grade(&self, k: usize) -> &UPlus<R> {
        &self.grades[k]
    }

    /// Grade-by-grade product, truncated at the smaller maximal grade.
    pub fn compose(&self, other: &Self) -> Self {
        let k_max = self.max_grade().min(other.max_grade());
        let grades = (0..=k_max)
            .map(|k| {
                (0..=k).fold(UPlus::zero(), |acc, a| {
                    acc.add(&self.grades[a].mul(&other.grades[k - a]))
                })
            })
            .collect();
        GradedOperatorExpansion { grades }
    }

    /// Inverse as a graded series: `H_k = -sum_{j>=1} G_j H_{k-j}`.
    pub fn inverse(&self) -> Self {
        let mut h: Vec<UPlus<R>> = vec![UPlus::one()];
        for k in 1..=self.max_grade() {
            let mut acc = UPlus::zero();
            for j in 1..=k {
                acc = acc.add(&self.grades[j].mul(&h[k - j]));
            }
            h.push(acc.scale(&R::from_int(-1)));
        }
        GradedOperatorExpansion { grades: h }
    }

    pub fn apply(&self, module: &VermaModule<R>, v: &VermaVector<R>) -> Result<VermaVector<R>, VirasoroError> {
        let mut out = VermaVector::zero();
        for g in &self.grades {
            out = out.add(&g.act(module, v)?);
        }
        Ok(out)
    }
}

fn check_normalized<R: Ring>(f: &Series<R>, k: usize) -> Result<(), VirasoroError> {
    let ok = f.val() >= 0 && f.prec() >= k as i32 + 2 && f.coeff(0).is_zero() && f.coeff(1) == R::one();
    if ok {
        Ok(())
    } else {
        Err(VirasoroError::Domain(format!(
            "map must be z + O(z^2) known through z^{}",
            k + 1
        )))
    }
}

/// `f(z) / z`, a unit power series.
fn reduced<R: Ring>(f: &Series<R>) -> Series<R> {
    let p = f.prec();
    Series::new(0, (1..p).map(|e| f.coeff(e)).collect())
}

/// Coefficient table `c[m][n] = [z^{n-m}] f'(z) (f(z)/z)^{-n-2}` for `1 <= m <= n <= k`.
fn connection_coeffs<R: Ring>(f: &Series<R>, k: usize) -> Vec<Vec<R>> {
    let fr = reduced(f).truncate(k as i32 + 1);
    let df = f.derivative().truncate(k as i32 + 1);
    let mut c = vec![vec![R::zero(); k + 1]; k + 1];
    for n in 1..=k {
        let p = df.clone() * fr.powi(-(n as i64) - 2);
        for (m, row) in c.iter_mut().enumerate().take(n + 1).skip(1) {
            row[n] = p.coeff((n - m) as i32);
        }
    }
    c
}

/// `G_f` through grade `k`.
pub fn gf_expand<R: Ring>(f: &Series<R>, k: usize) -> Result<GradedOperatorExpansion<R>, VirasoroError> {
    check_normalized(f, k)?;
    let c = connection_coeffs(f, k);
    let fm = |m: usize| f.coeff(m as i32 + 1);
    let mut g: Vec<UPlus<R>> = vec![UPlus::one()];
    for kk in 1..=k {
        let mut acc = UPlus::zero();
        for m in 1..=kk {
            let a = fm(m);
            if a.is_zero() {
                continue;
            }
            let weight = a * R::from_int(m as i64);
            for n in m..=kk {
                let term = g[kk - n].mul(&UPlus::mode(n as u32));
                acc = acc.add(&term.scale(&(weight.clone() * c[m][n].clone())));
            }
        }
        g.push(acc.scale(&R::from_ratio(-1, kk as i64)));
    }
    Ok(GradedOperatorExpansion { grades: g })
}

/// Right-hand side of the conjugation formula
/// `G_f^{-1} L_m G_f = (c/12) [w^{-m-2}] Sf + sum_{n>=m} L_n [w^{-m-2}] f'^2 / f^{n+2}`,
/// split by grade.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjugatedMode<R: Ring> {
    pub m: i32,
    /// Coefficient of `c` at each grade.
    pub central: Vec<R>,
    /// `modes[j]` is the coefficient of `L_{m+j}`.
    pub modes: Vec<R>,
}

pub fn conjugate_mode_direct<R: Ring>(f: &Series<R>, m: i32, k: usize) -> Result<ConjugatedMode<R>, VirasoroError> {
    check_normalized(f, k)?;
    let fr = reduced(f).truncate(k as i32 + 1);
    let df = f.derivative().truncate(k as i32 + 1);
    let df2 = df.clone() * df;
    let mut modes = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let n = m + j as i32;
        // f'^2 / f^{n+2} = z^{-n-2} f'^2 (f/z)^{-n-2}; the w^{-m-2} coefficient is z^{n-m} = z^j.
        let p = df2.clone() * fr.powi(-(n as i64) - 2);
        modes.push(p.coeff(j as i32));
    }
    let mut central = vec![R::zero(); k + 1];
    let e = -m - 2;
    if e >= 0 {
        let j = (e + 2) as usize;
        if j <= k {
            let sf = f.truncate(k as i32 + 2).schwarzian();
            central[j] = sf.coeff(e) * R::from_ratio(1, 12);
        }
    }
    Ok(ConjugatedMode { m, central, modes })
}

/// Grade-`j` part of `G^{-1} L_m G` applied to `v`, computed from the operators.
pub fn conjugate_mode_action<R: Ring>(
    g: &GradedOperatorExpansion<R>,
    ginv: &GradedOperatorExpansion<R>,
    module: &VermaModule<R>,
    m: i32,
    j: usize,
    v: &VermaVector<R>,
) -> Result<VermaVector<R>, VirasoroError> {
    let mut out = VermaVector::zero();
    for b in 0..=j {
        let w = g.grade(b).act(module, v)?;
        let w = module.apply_mode(m, &w)?;
        out = out.add(&ginv.grade(j - b).act(module, &w)?);
    }
    Ok(out)
}

/// Grade-`j` part of the direct formula applied to `v`.
pub fn conjugate_mode_formula<R: Ring>(
    d: &ConjugatedMode<R>,
    module: &VermaModule<R>,
    j: usize,
    v: &VermaVector<R>,
) -> Result<VermaVector<R>, VirasoroError> {
    let mut out = module.apply_mode(d.m + j as i32, v)?.scale(&d.modes[j]);
    out = out.add(&v.scale(&(module.c().clone() * d.central[j].clone())));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MPoly;
    use crate::scalar::{rat, Rational};
    use crate::verma::VermaVector;

    type P = MPoly<Rational>;

    /// `z + sum f_m z^{m+1}` with `f_m` the variable `x_{m-1}`.
    fn symbolic_map(k: usize) -> Series<P> {
        let mut c = vec![P::zero(), P::one()];
        for m in 1..=k {
            c.push(P::var(m - 1));
        }
        Series::new(0, c)
    }

    #[test]
    fn uplus_reordering() {
        let a: UPlus<Rational> = UPlus::word(&[2, 1], rat(1, 1));
        let mut expect = UPlus::word(&[1, 2], rat(1, 1));
        expect = expect.add(&UPlus::word(&[3], rat(1, 1)));
        assert_eq!(a, expect);
    }

    #[test]
    fn identity_map() {
        let f: Series<Rational> = Series::new(0, vec![rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)]);
        let g = gf_expand(&f, 3).unwrap();
        assert_eq!(g.grade(0), &UPlus::one());
        for k in 1..=3 {
            assert!(g.grade(k).is_zero());
        }
    }

    #[test]
    fn lowest_orders() {
        let g = gf_expand(&symbolic_map(2), 2).unwrap();
        let f1 = P::var(0);
        let f2 = P::var(1);
        assert_eq!(g.grade(1), &UPlus::word(&[1], -f1.clone()));
        let half_f1sq = f1.clone() * f1.clone() * P::from_ratio(1, 2);
        let expect = UPlus::word(&[1, 1], half_f1sq.clone())
            .add(&UPlus::word(&[2], half_f1sq * P::from_int(2)))
            .add(&UPlus::word(&[2], -f2));
        assert_eq!(g.grade(2), &expect);
    }

    #[test]
    fn inverse_is_inverse() {
        let g = gf_expand(&symbolic_map(4), 4).unwrap();
        let id = g.compose(&g.inverse());
        assert_eq!(id.grade(0), &UPlus::one());
        for k in 1..=4 {
            assert!(id.grade(k).is_zero(), "grade {}", k);
        }
    }

    #[test]
    fn conjugation_symbolic_low_grade() {
        let k = 3;
        let f = symbolic_map(k);
        let c = P::var(10);
        let h = P::var(11);
        let module = VermaModule::new(c, h, 6);
        let g = gf_expand(&f, k).unwrap();
        let gi = g.inverse();
        for m in [-2, -1, 0, 1, 2] {
            let d = conjugate_mode_direct(&f, m, k).unwrap();
            for p in module.basis() {
                if crate::verma::level(&p) as i32 - m.min(0) > 6 {
                    continue;
                }
                let v = VermaVector::basis(p);
                for j in 0..=k {
                    let lhs = conjugate_mode_action(&g, &gi, &module, m, j, &v).unwrap();
                    let rhs = conjugate_mode_formula(&d, &module, j, &v).unwrap();
                    assert_eq!(lhs, rhs, "m={} j={}", m, j);
                }
            }
        }
    }
}
