//! Level-truncated Verma modules over the Virasoro algebra.
//!
//! Basis vectors are PBW monomials `L_{-l1} L_{-l2} ... |h>` with
//! `l1 >= l2 >= ... >= 1`, indexed by the partition `[l1, l2, ...]`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::scalar::{Field, Ring};
use crate::VirasoroError;

pub type Partition = Vec<u32>;

pub fn level(p: &[u32]) -> u32 {
    p.iter().sum()
}

/// All partitions of `n` with weakly decreasing parts, in reverse
/// lexicographic order (`[n]` first).
pub fn partitions(n: u32) -> Vec<Partition> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, PartialEq, Debug)]
pub struct VermaVector<R: Ring> {
    coeffs: BTreeMap<Partition, R>,
}

impl<R: Ring> Default for VermaVector<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Ring> VermaVector<R> {
    pub fn zero() -> Self {
        VermaVector {
            coeffs: BTreeMap::new(),
        }
    }

    /// The highest-weight vector `|h>`.
    pub fn vacuum() -> Self {
        Self::basis(Vec::new())
    }

    pub fn basis(p: Partition) -> Self {
        let mut v = Self::zero();
        v.add_term(p, R::one());
        v
    }

    pub fn add_term(&mut self, p: Partition, c: R) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&p) {
            Some(x) => {
                let s = x.clone() + c;
                if s.is_zero() {
                    self.coeffs.remove(&p);
                } else {
                    *x = s;
                }
            }
            None => {
                self.coeffs.insert(p, c);
            }
        }
    }

    pub fn coeff(&self, p: &[u32]) -> R {
        self.coeffs.get(p).cloned().unwrap_or_else(R::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &R)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, k: &R) -> Self {
        let mut out = Self::zero();
        for (p, c) in &self.coeffs {
            out.add_term(p.clone(), c.clone() * k.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.coeffs {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&R::from_int(-1)))
    }

    pub fn map_coeffs<T: Ring>(&self, f: impl Fn(&R) -> T) -> VermaVector<T> {
        let mut out = VermaVector::zero();
        for (p, c) in &self.coeffs {
            out.add_term(p.clone(), f(c));
        }
        out
    }

    /// Highest level carrying a nonzero coefficient.
    pub fn max_level(&self) -> Option<u32> {
        self.coeffs.keys().map(|p| level(p)).max()
    }
}

impl VermaVector<f64> {
    pub fn max_abs(&self) -> f64 {
        self.coeffs.values().fold(0.0, |m, c| m.max(c.abs()))
    }
}

impl<R: Ring> fmt::Display for VermaVector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (p, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:?})", c)?;
            for l in p {
                write!(f, " L_-{}", l)?;
            }
            write!(f, " |h>")?;
        }
        Ok(())
    }
}

/// Verma module `V(c, h)` truncated at level `max_level`.
pub struct VermaModule<R: Ring> {
    c: R,
    h: R,
    max_level: u32,
    cache: RefCell<HashMap<(i32, Partition), VermaVector<R>>>,
}

impl<R: Ring> VermaModule<R> {
    pub fn new(c: R, h: R, max_level: u32) -> Self {
        VermaModule {
            c,
            h,
            max_level,
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn c(&self) -> &R {
        &self.c
    }

    pub fn h(&self) -> &R {
        &self.h
    }

    pub fn max_level(&self) -> u32 {
        self.max_level
    }

    /// Basis of the truncation, level by level.
    pub fn basis(&self) -> Vec<Partition> {
        (0..=self.max_level).flat_map(partitions).collect()
    }

    /// Action of `L_n` on a vector.
    pub fn apply_mode(&self, n: i32, v: &VermaVector<R>) -> Result<VermaVector<R>, VirasoroError> {
        let mut out = VermaVector::zero();
        for (p, c) in v.terms() {
            let w = self.act_basis(n, p)?;
            for (q, d) in w.terms() {
                out.add_term(q.clone(), c.clone() * d.clone());
            }
        }
        Ok(out)
    }

    /// Apply `L_{n_1} L_{n_2} ... L_{n_k}` (rightmost first).
    pub fn apply_word(&self, word: &[i32], v: &VermaVector<R>) -> Result<VermaVector<R>, VirasoroError> {
        let mut w = v.clone();
        for &n in word.iter().rev() {
            w = self.apply_mode(n, &w)?;
        }
        Ok(w)
    }

    fn act_basis(&self, n: i32, p: &Partition) -> Result<VermaVector<R>, VirasoroError> {
        let lvl = level(p) as i32;
        if n == 0 {
            return Ok(VermaVector::basis(p.clone()).scale(&(self.h.clone() + R::from_int(lvl as i64))));
        }
        if lvl - n > self.max_level as i32 {
            return Err(VirasoroError::TruncationOverflow {
                level: (lvl - n) as u32,
                max: self.max_level,
            });
        }
        if lvl - n < 0 {
            return Ok(VermaVector::zero());
        }
        if n < 0 && (p.is_empty() || (-n) as u32 >= p[0]) {
            let mut q = Vec::with_capacity(p.len() + 1);
            q.push((-n) as u32);
            q.extend_from_slice(p);
            return Ok(VermaVector::basis(q));
        }
        let key = (n, p.clone());
        if let Some(v) = self.cache.borrow().get(&key) {
            return Ok(v.clone());
        }
        // L_n L_{-l} rest = L_{-l} L_n rest + [L_n, L_{-l}] rest
        let l = p[0] as i32;
        let rest: Partition = p[1..].to_vec();
        let inner = self.act_basis(n, &rest)?;
        let mut out = self.apply_mode(-l, &inner)?;
        if n + l != 0 {
            let t = self.act_basis(n - l, &rest)?;
            out = out.add(&t.scale(&R::from_int((n + l) as i64)));
        }
        if n == l {
            let central = self.c.clone() * R::from_ratio((n * n * n - n) as i64, 12);
            out = out.add(&VermaVector::basis(rest).scale(&central));
        }
        self.cache.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    /// Shapovalov form `<h| L_{-p}^dagger L_{-q} |h>`.
    pub fn gram_entry(&self, p: &[u32], q: &[u32]) -> Result<R, VirasoroError> {
        let mut v = VermaVector::basis(q.to_vec());
        for &l in p {
            v = self.apply_mode(l as i32, &v)?;
        }
        Ok(v.coeff(&[]))
    }

    pub fn gram_matrix(&self, lvl: u32) -> Result<Vec<Vec<R>>, VirasoroError> {
        let b = partitions(lvl);
        b.iter()
            .map(|p| b.iter().map(|q| self.gram_entry(p, q)).collect())
            .collect()
    }
}

/// A subspace kept in echelon form, used to reduce vectors modulo it.
#[derive(Clone, Debug, Default)]
pub struct Subspace<R: Ring> {
    rows: Vec<(Partition, VermaVector<R>)>,
}

impl<R: Field> Subspace<R> {
    pub fn new() -> Self {
        Subspace { rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &VermaVector<R>) -> VermaVector<R> {
        let mut w = v.clone();
        for (pivot, row) in &self.rows {
            let c = w.coeff(pivot);
            if !c.is_zero() {
                w = w.sub(&row.scale(&c));
            }
        }
        w
    }

    pub fn contains(&self, v: &VermaVector<R>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns false if it was already contained.
    pub fn insert(&mut self, v: &VermaVector<R>) -> bool {
        let w = self.reduce(v);
        let Some((pivot, c)) = w.terms().next().map(|(p, c)| (p.clone(), c.clone())) else {
            return false;
        };
        self.rows.push((pivot, w.scale(&c.inv())));
        true
    }
}

/// The submodule generated by a singular vector `n` of level `lvl`,
/// spanned by `L_{-mu} n` up to the module truncation.
pub fn singular_submodule<R: Field>(
    module: &VermaModule<R>,
    n: &VermaVector<R>,
    lvl: u32,
) -> Result<Subspace<R>, VirasoroError> {
    let mut sub = Subspace::new();
    for l in lvl..=module.max_level() {
        for mu in partitions(l - lvl) {
            let word: Vec<i32> = mu.iter().map(|&a| -(a as i32)).collect();
            let v = module.apply_word(&word, n)?;
            sub.insert(&v);
        }
    }
    Ok(sub)
}

/// Determinant by cofactor expansion (division free, fine for small matrices).
pub fn determinant<R: Ring>(m: &[Vec<R>]) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = R::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<R>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = m[0][j].clone() * determinant(&minor);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}
