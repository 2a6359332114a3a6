//! Verification routines producing pass/fail reports.

use serde::Serialize;

use crate::coeff::{
    commutator_on, f_var, monomials_of_grade, r_operator, s_operator, CoeffOperator, CoeffPolynomial,
};
use crate::gf::{gf_expand, UPlus};
use crate::kac::{central_charge, h12, kac_weight};
use crate::poly::{MPoly, RatFn};
use crate::scalar::{Field, Rational, Ring};
use crate::series::Series;
use crate::verma::{determinant, partitions, singular_submodule, VermaModule, VermaVector};
use crate::VirasoroError;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Check {
    pub identity: String,
    pub params: String,
    pub residual: String,
    pub pass: bool,
}

impl Check {
    pub fn new(identity: impl Into<String>, params: impl Into<String>, residual: impl Into<String>, pass: bool) -> Self {
        Check {
            identity: identity.into(),
            params: params.into(),
            residual: residual.into(),
            pass,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn residual_str<R: Ring>(v: &VermaVector<R>) -> String {
    if v.is_zero() {
        "0".into()
    } else {
        v.to_string()
    }
}

/// Module `V(c_k, h_{1;2})` truncated at `level`.
pub fn omega_module<R: Field>(kappa: &R, level: u32) -> VermaModule<R> {
    VermaModule::new(central_charge(kappa), h12(kappa), level)
}

/// `(-2 L_{-2} + (k/2) L_{-1}^2)|h>`.
pub fn null_vector<R: Ring>(kappa: &R) -> VermaVector<R> {
    let mut v = VermaVector::zero();
    v.add_term(vec![2], R::from_int(-2));
    v.add_term(vec![1, 1], kappa.clone() * R::from_ratio(1, 2));
    v
}

#[derive(Clone, Debug)]
pub struct NullVectorReport<R: Ring> {
    pub vector: VermaVector<R>,
    pub l1: VermaVector<R>,
    pub l2: VermaVector<R>,
    pub gram: Vec<Vec<R>>,
    pub gram_det: R,
    pub norm: R,
}

impl<R: Ring> NullVectorReport<R> {
    pub fn is_null(&self) -> bool {
        self.l1.is_zero() && self.l2.is_zero() && self.norm.is_zero() && self.gram_det.is_zero()
    }
}

/// Level-two null vector in `V(c_k, h_{1;2})` with its annihilation data.
pub fn null_vector_level2<R: Field>(kappa: &R) -> Result<NullVectorReport<R>, VirasoroError> {
    if kappa.is_zero() {
        return Err(VirasoroError::Domain("kappa must be nonzero".into()));
    }
    let module = omega_module(kappa, 2);
    null_vector_in(&module, kappa)
}

/// Same data in an arbitrary module, for negative controls.
pub fn null_vector_in<R: Ring>(module: &VermaModule<R>, kappa: &R) -> Result<NullVectorReport<R>, VirasoroError> {
    let n = null_vector(kappa);
    let l1 = module.apply_mode(1, &n)?;
    let l2 = module.apply_mode(2, &n)?;
    let gram = module.gram_matrix(2)?;
    let basis = partitions(2);
    let mut norm = R::zero();
    for (i, p) in basis.iter().enumerate() {
        for (j, q) in basis.iter().enumerate() {
            norm = norm + n.coeff(p) * gram[i][j].clone() * n.coeff(q);
        }
    }
    let gram_det = determinant(&gram);
    Ok(NullVectorReport {
        vector: n,
        l1,
        l2,
        gram,
        gram_det,
        norm,
    })
}

/// Exact check that the Ito drift `(-2 L_{-2} + (k/2) L_{-1}^2)|omega>`
/// vanishes in the irreducible quotient: the null vector is singular (killed
/// by `L_1`, `L_2`, hence by every positive mode) and the drift, together with
/// all its descendants through `level`, lies in the submodule it generates.
pub fn sle_generator_check<R: Field>(kappa: &R, level: u32) -> Result<Report, VirasoroError> {
    let level = level.max(2);
    let module = omega_module(kappa, level);
    let vac = VermaVector::vacuum();
    let drift = module
        .apply_word(&[-2], &vac)?
        .scale(&R::from_int(-2))
        .add(&module.apply_word(&[-1, -1], &vac)?.scale(&(kappa.clone() * R::from_ratio(1, 2))));
    let mut rep = Report::default();
    let params = format!("kappa={:?} level={}", kappa, level);
    let n = null_vector(kappa);
    for k in 1..=2 {
        let r = module.apply_mode(k, &n)?;
        rep.push(Check::new(format!("L_{} annihilates null vector", k), params.clone(), residual_str(&r), r.is_zero()));
    }
    let sub = singular_submodule(&module, &n, 2)?;
    let rem = sub.reduce(&drift);
    rep.push(Check::new("drift on omega vanishes in the quotient", params.clone(), residual_str(&rem), rem.is_zero()));
    // L_{-1} of the drift is the dxi-coefficient's descendant; it must stay in the submodule.
    let mut worst = 0usize;
    for l in 0..=level.saturating_sub(2) {
        for mu in partitions(l) {
            let word: Vec<i32> = mu.iter().map(|&a| -(a as i32)).collect();
            let v = module.apply_word(&word, &drift)?;
            if !sub.contains(&v) {
                worst += 1;
            }
        }
    }
    rep.push(Check::new(
        "descendants of the drift stay null",
        params,
        format!("{} escaping descendants", worst),
        worst == 0 && sub.dim() > 0,
    ));
    Ok(rep)
}

/// `2 S_2 + (k/2) S_1^2`, the generator of the coefficient diffusion.
pub fn sle_coefficient_generator<R: Ring>(
    kappa: &R,
    p: &CoeffPolynomial<R>,
    cutoff: usize,
) -> Result<CoeffPolynomial<R>, VirasoroError> {
    let s1 = s_operator::<R>(1, cutoff);
    let s2 = s_operator::<R>(2, cutoff);
    let a = s2.apply(p)?.scale(&R::from_int(2));
    let b = s1.apply(&s1.apply(p)?)?.scale(&(kappa.clone() * R::from_ratio(1, 2)));
    Ok(a + b)
}

/// Polynomials `R_{-l_1} ... R_{-l_j} 1` over all partitions `l` of `grade`.
pub fn martingale_spanning_set<R: Field>(
    kappa: &R,
    grade: u32,
    cutoff: usize,
) -> Result<Vec<CoeffPolynomial<R>>, VirasoroError> {
    let c = central_charge(kappa);
    let h = h12(kappa);
    let ops: Vec<CoeffOperator<R>> = (1..=grade as i32).map(|m| r_operator(-m, &c, &h, cutoff)).collect();
    let mut out = Vec::new();
    for p in partitions(grade) {
        let mut poly = MPoly::one();
        for &l in p.iter().rev() {
            poly = ops[l as usize - 1].apply(&poly)?;
        }
        out.push(poly);
    }
    Ok(out)
}

/// Exact check that `2 S_2 + (k/2) S_1^2` annihilates the span generated by
/// the `R_{-m}` from `1`, grade by grade.
pub fn martingale_subspace_check<R: Field>(kappa: &R, max_grade: u32) -> Result<Report, VirasoroError> {
    let cutoff = max_grade as usize + 2;
    let mut rep = Report::default();
    for g in 1..=max_grade {
        let span = martingale_spanning_set(kappa, g, cutoff)?;
        let mut bad = 0;
        let mut nonzero = 0;
        for p in &span {
            if !p.is_zero() {
                nonzero += 1;
            }
            if !sle_coefficient_generator(kappa, p, cutoff)?.is_zero() {
                bad += 1;
            }
        }
        rep.push(Check::new(
            format!("generator annihilates grade {} martingales", g),
            format!("kappa={:?} spanning={} nonzero={}", kappa, span.len(), nonzero),
            format!("{} nonvanishing images", bad),
            bad == 0 && nonzero > 0,
        ));
    }
    Ok(rep)
}

/// The spanning set computed with symbolic kappa and specialised at `kappa0`.
/// Each polynomial is first divided by the largest power of `(k - kappa0)`
/// dividing it, so families that degenerate at `kappa0` (at `k = 6` every
/// `R_{-m} 1` vanishes) still yield nonzero martingales.
pub fn martingale_spanning_set_at(
    kappa0: &Rational,
    grade: u32,
    cutoff: usize,
) -> Result<Vec<CoeffPolynomial<Rational>>, VirasoroError> {
    let span = martingale_spanning_set(&RatFn::param(), grade, cutoff)?;
    let mut out = Vec::with_capacity(span.len());
    for p in span {
        let ord = p.terms().filter_map(|(_, c)| c.order_at(kappa0)).min();
        let Some(ord) = ord else {
            out.push(MPoly::zero());
            continue;
        };
        if let Some((_, c)) = p.terms().find(|(_, c)| c.eval_divided(kappa0, ord).is_none()) {
            return Err(VirasoroError::Domain(format!("coefficient {} has a pole at kappa={}", c, kappa0)));
        }
        out.push(p.map(|c| c.eval_divided(kappa0, ord).unwrap_or_else(Rational::zero)));
    }
    Ok(out)
}

/// Exact martingale check at a rational kappa: the generator annihilates the
/// symbolic family identically, and also every specialised member, which
/// must not all vanish.
pub fn martingale_check_at(kappa0: &Rational, max_grade: u32) -> Result<Report, VirasoroError> {
    let cutoff = max_grade as usize + 2;
    let k = RatFn::param();
    let mut rep = Report::default();
    for g in 1..=max_grade {
        let sym = martingale_spanning_set(&k, g, cutoff)?;
        let mut bad_sym = 0;
        for p in &sym {
            if !sle_coefficient_generator(&k, p, cutoff)?.is_zero() {
                bad_sym += 1;
            }
        }
        let span = martingale_spanning_set_at(kappa0, g, cutoff)?;
        let mut bad = 0;
        let mut nonzero = 0;
        for p in &span {
            if !p.is_zero() {
                nonzero += 1;
            }
            if !sle_coefficient_generator(kappa0, p, cutoff)?.is_zero() {
                bad += 1;
            }
        }
        rep.push(Check::new(
            format!("generator annihilates grade {} martingales", g),
            format!("kappa={} spanning={} nonzero={}", kappa0, span.len(), nonzero),
            format!("{} nonvanishing images, {} symbolic", bad, bad_sym),
            bad == 0 && bad_sym == 0 && nonzero > 0,
        ));
    }
    Ok(rep)
}

/// `[S_n, S_m] = (n - m) S_{n+m}` on all monomials of grade `<= max_grade`.
pub fn s_bracket_check<R: Ring>(max_grade: u32, max_mode: usize) -> Result<Report, VirasoroError> {
    let cutoff = max_grade as usize + 2;
    let ops: Vec<CoeffOperator<R>> = (1..=max_mode).map(|n| s_operator(n, cutoff)).collect();
    let mut rep = Report::default();
    for n in 1..=max_mode {
        for m in 1..=max_mode {
            if n + m > max_mode || n == m {
                continue;
            }
            let mut bad = 0;
            for g in 0..=max_grade {
                for p in monomials_of_grade::<R>(g) {
                    let lhs = commutator_on(&ops[n - 1], &ops[m - 1], &p)?;
                    let rhs = ops[n + m - 1].apply(&p)?.scale(&R::from_int(n as i64 - m as i64));
                    if lhs != rhs {
                        bad += 1;
                    }
                }
            }
            rep.push(Check::new(
                format!("[S_{}, S_{}] = {} S_{}", n, m, n as i64 - m as i64, n + m),
                format!("grade<={}", max_grade),
                format!("{} failing monomials", bad),
                bad == 0,
            ));
        }
    }
    Ok(rep)
}

/// `[R_n, R_m] = (n - m) R_{n+m} + (c/12) n (n^2 - 1) delta_{n,-m}` on
/// `1` and on all monomials of grade `<= max_grade`.
pub fn r_bracket_check<R: Ring>(c: &R, h: &R, max_grade: u32, modes: &[i32]) -> Result<Report, VirasoroError> {
    let span = modes.iter().map(|m| m.unsigned_abs()).max().unwrap_or(0);
    let cutoff = (max_grade + 2 * span) as usize + 2;
    let mut rep = Report::default();
    for &n in modes {
        for &m in modes {
            if n <= m {
                continue;
            }
            let rn = r_operator(n, c, h, cutoff);
            let rm = r_operator(m, c, h, cutoff);
            let rnm = r_operator(n + m, c, h, cutoff);
            let central = if n + m == 0 {
                c.clone() * R::from_ratio((n * (n * n - 1)) as i64, 12)
            } else {
                R::zero()
            };
            let mut bad = 0;
            for g in 0..=max_grade {
                for p in monomials_of_grade::<R>(g) {
                    let lhs = commutator_on(&rn, &rm, &p)?;
                    let rhs = rnm.apply(&p)?.scale(&R::from_int((n - m) as i64)) + p.scale(&central);
                    if lhs != rhs {
                        bad += 1;
                    }
                }
            }
            rep.push(Check::new(
                format!("[R_{}, R_{}] bracket", n, m),
                format!("c={:?} h={:?} grade<={}", c, h, max_grade),
                format!("{} failing monomials", bad),
                bad == 0,
            ));
        }
    }
    Ok(rep)
}

/// Geometry of the diffusion operator `A = -2 W_{-2} + (k/2) W_{-1}^2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DiffusionGeometry {
    Radial,
    Dipolar,
}

/// Mode expansions `(W_{-1}, W_{-2})` as lists of `(n, coefficient of L_n)`.
type ModeSum<R> = Vec<(i32, R)>;

fn apply_sum<R: Ring>(module: &VermaModule<R>, w: &ModeSum<R>, v: &VermaVector<R>) -> Result<VermaVector<R>, VirasoroError> {
    let mut out = VermaVector::zero();
    for (n, c) in w {
        out = out.add(&module.apply_mode(*n, v)?.scale(c));
    }
    Ok(out)
}

fn diffusion_on_omega<R: Ring>(
    module: &VermaModule<R>,
    kappa: &R,
    w1: &ModeSum<R>,
    w2: &ModeSum<R>,
) -> Result<VermaVector<R>, VirasoroError> {
    let vac = VermaVector::vacuum();
    let a = apply_sum(module, w2, &vac)?.scale(&R::from_int(-2));
    let b = apply_sum(module, w1, &apply_sum(module, w1, &vac)?)?;
    Ok(a.add(&b.scale(&(kappa.clone() * R::from_ratio(1, 2)))))
}

#[derive(Clone, Debug)]
pub struct Eigen<R: Ring> {
    pub lambda: R,
    pub residual: VermaVector<R>,
}

/// Eigenvalue of the radial or dipolar diffusion operator on `|omega>`,
/// read off from the `|omega>` component; the residual is what remains.
pub fn diffusion_eigenvalue<R: Field>(geometry: DiffusionGeometry, kappa: &R) -> Result<Eigen<R>, VirasoroError> {
    let module = omega_module(kappa, 2);
    let s = match geometry {
        DiffusionGeometry::Radial => R::one(),
        DiffusionGeometry::Dipolar => R::from_int(-1),
    };
    let w1 = vec![(-1, R::one()), (1, s.clone())];
    let w2 = vec![(-2, R::one()), (0, s)];
    let av = diffusion_on_omega(&module, kappa, &w1, &w2)?;
    let lambda = av.coeff(&[]);
    let sub = singular_submodule(&module, &null_vector(kappa), 2)?;
    let residual = sub.reduce(&av.sub(&VermaVector::vacuum().scale(&lambda)));
    Ok(Eigen { lambda, residual })
}

/// `8 h_{0;1/2}`.
pub fn eight_h_zero_half<R: Field>(kappa: &R) -> R {
    kac_weight(&R::zero(), &R::from_ratio(1, 2), kappa) * R::from_int(8)
}

/// Coefficients `a_{-1}, a_0, ..., a_{n_max}` of the annular vector field
/// `W_{-2} = sum_{n>=-1} a_n L_{2n}`, with the lattice sums truncated at `m`.
pub fn annular_w_coeffs(p: f64, n_max: usize, m: usize) -> Vec<f64> {
    let mut out = vec![0.25];
    let s0: f64 = (1..=m).map(|j| (j as f64 * p).sinh().powi(-2)).sum();
    out.push(0.25 * (1.0 + 2.0 * s0));
    for n in 1..=n_max as i32 {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let s: f64 = (1..=m)
            .map(|j| {
                let x = j as f64 * p;
                (1.0 / x.tanh()).powi(2 * n - 2) * x.sinh().powi(-4)
            })
            .sum();
        out.push(0.5 * sign * s);
    }
    out
}

/// Upper bound on the dropped lattice terms `sum_{j>m} sinh^{-2}(j p)`.
pub fn annular_tail_bound(p: f64, m: usize) -> f64 {
    let q = (-2.0 * p).exp();
    4.0 * (-2.0 * (m as f64 + 1.0) * p).exp() / (1.0 - q).powi(3)
}

#[derive(Clone, Debug, Serialize)]
pub struct AnnularEigen {
    pub p: f64,
    pub m: usize,
    pub kappa: f64,
    pub lambda: f64,
    pub expected: f64,
    pub residual_norm: f64,
    pub tail_bound: f64,
}

/// Annular diffusion operator on `|omega>` in floating point.
pub fn diffusion_eigenvalue_annular(kappa: f64, p: f64, m: usize) -> Result<AnnularEigen, VirasoroError> {
    if p <= 0.0 || m == 0 {
        return Err(VirasoroError::Domain("annular modulus must be positive".into()));
    }
    let n_max = 3;
    let module = VermaModule::new(
        (6.0 - kappa) * (3.0 * kappa - 8.0) / (2.0 * kappa),
        (6.0 - kappa) / (2.0 * kappa),
        2 * n_max as u32 + 2,
    );
    let a = annular_w_coeffs(p, n_max, m);
    let w1 = vec![(-1, 0.5), (1, 0.5)];
    let w2: ModeSum<f64> = a.iter().enumerate().map(|(i, &c)| (2 * (i as i32 - 1), c)).collect();
    let av = diffusion_on_omega(&module, &kappa, &w1, &w2)?;
    let lambda = av.coeff(&[]);
    let sub = singular_submodule(&module, &null_vector(&kappa), 2)?;
    let residual = sub.reduce(&av.sub(&VermaVector::vacuum().scale(&lambda)));
    let h = (6.0 - kappa) / (2.0 * kappa);
    let two_h0half = (kappa - 2.0) * (6.0 - kappa) / (8.0 * kappa);
    let s: f64 = (1..=m).map(|j| (j as f64 * p).sinh().powi(-2)).sum();
    Ok(AnnularEigen {
        p,
        m,
        kappa,
        lambda,
        expected: two_h0half - h * s,
        residual_norm: residual.max_abs(),
        tail_bound: annular_tail_bound(p, m),
    })
}

/// Full exact suite for one rational kappa.
pub fn virasoro_suite(kappa: &Rational, max_grade: u32) -> Result<Report, VirasoroError> {
    type R = Rational;
    let mut rep = Report::default();
    let params = format!("kappa={:?}", kappa);
    let nv = null_vector_level2(kappa)?;
    rep.push(Check::new("L_1 annihilates level-2 null vector", params.clone(), residual_str(&nv.l1), nv.l1.is_zero()));
    rep.push(Check::new("L_2 annihilates level-2 null vector", params.clone(), residual_str(&nv.l2), nv.l2.is_zero()));
    rep.push(Check::new("level-2 Gram determinant vanishes", params.clone(), format!("{:?}", nv.gram_det), nv.gram_det.is_zero()));
    rep.extend(sle_generator_check(kappa, 4)?);
    rep.extend(martingale_check_at(kappa, max_grade)?);
    for (geom, sign) in [(DiffusionGeometry::Radial, 1), (DiffusionGeometry::Dipolar, -1)] {
        let e = diffusion_eigenvalue(geom, kappa)?;
        let expect = eight_h_zero_half(kappa) * R::from_int(sign);
        rep.push(Check::new(
            format!("{:?} eigenvalue equals {}8 h_(0;1/2)", geom, if sign < 0 { "-" } else { "" }),
            params.clone(),
            format!("lambda={:?} residual={}", e.lambda, residual_str(&e.residual)),
            e.residual.is_zero() && e.lambda == expect,
        ));
    }
    Ok(rep)
}

/// `G_f` through grade two for a map with symbolic coefficients, compared
/// with `1 - f_1 L_1 + (f_1^2/2)(L_1^2 + 2 L_2) - f_2 L_2`.
pub fn gf_lowest_order_check() -> Result<Report, VirasoroError> {
    type P = MPoly<Rational>;
    let f = Series::new(0, vec![P::zero(), P::one(), P::var(0), P::var(1)]);
    let g = gf_expand(&f, 2)?;
    let (f1, f2) = (P::var(0), P::var(1));
    let half_sq = f1.clone() * f1.clone() * P::from_ratio(1, 2);
    let expect = [
        UPlus::one(),
        UPlus::word(&[1], -f1),
        UPlus::word(&[1, 1], half_sq.clone())
            .add(&UPlus::word(&[2], half_sq * P::from_int(2)))
            .add(&UPlus::word(&[2], -f2)),
    ];
    let mut rep = Report::default();
    for (k, e) in expect.iter().enumerate() {
        let diff = g.grade(k).add(&e.scale(&P::from_int(-1)));
        rep.push(Check::new(
            format!("G_f grade {} matches the lowest-order expansion", k),
            "f = z + f_1 z^2 + f_2 z^3",
            if diff.is_zero() { "0".to_string() } else { diff.to_string() },
            diff.is_zero(),
        ));
    }
    Ok(rep)
}

/// Null vector checks with `kappa` kept as a symbol.
pub fn null_vector_symbolic_check() -> Result<Report, VirasoroError> {
    let k = RatFn::param();
    let nv = null_vector_level2(&k)?;
    let mut rep = Report::default();
    for (name, v) in [("L_1", &nv.l1), ("L_2", &nv.l2)] {
        rep.push(Check::new(
            format!("{} annihilates level-2 null vector", name),
            "kappa symbolic",
            residual_str(v),
            v.is_zero(),
        ));
    }
    Ok(rep)
}

/// `f_{-1}^2 - (k/2) f_{-2}`, the grade-two martingale.
pub fn grade_two_martingale<R: Ring>(kappa: &R) -> CoeffPolynomial<R> {
    f_var::<R>(1) * f_var::<R>(1) - f_var::<R>(2).scale(&(kappa.clone() * R::from_ratio(1, 2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RatFn;
    use crate::scalar::{rat, Rational};

    #[test]
    fn null_vector_symbolic_kappa() {
        let k = RatFn::param();
        let r = null_vector_level2(&k).unwrap();
        assert!(r.is_null());
    }

    #[test]
    fn null_vector_negative_controls() {
        let k = rat(6, 1);
        // wrong weight: L_1 n = (-6 + (k/2)(4h + 2)) L_{-1}|h>
        let h = rat(1, 3);
        let m = VermaModule::new(rat(0, 1), h.clone(), 2);
        let r = null_vector_in(&m, &k).unwrap();
        let coef = rat(-6, 1) + k.clone() * rat(1, 2) * (h * rat(4, 1) + rat(2, 1));
        assert_eq!(r.l1, VermaVector::basis(vec![1]).scale(&coef));
        assert!(!r.l1.is_zero());
        // right weight, wrong central charge
        let m = VermaModule::new(rat(1, 2), h12(&k), 2);
        let r = null_vector_in(&m, &k).unwrap();
        assert!(!r.l2.is_zero());
    }

    #[test]
    fn martingale_grades_small() {
        for k in [rat(8, 3), rat(10, 3)] {
            let rep = martingale_subspace_check(&k, 4).unwrap();
            assert!(rep.all_pass(), "{:?}", rep);
        }
        for k in [rat(6, 1), rat(8, 3), rat(10, 3)] {
            let rep = martingale_check_at(&k, 4).unwrap();
            assert!(rep.all_pass(), "{:?}", rep);
        }
    }

    #[test]
    fn grade_two_is_proportional_to_known_martingale() {
        let k = rat(10, 3);
        let span = martingale_spanning_set(&k, 2, 4).unwrap();
        let target = grade_two_martingale(&k);
        for p in span {
            // p = a * target + b with constants a, b
            let a = p.coeff(&[2]) ;
            let b = p.constant_term();
            let diff = p - target.scale(&a) - MPoly::constant(b);
            assert!(diff.is_zero());
        }
        let gen = sle_coefficient_generator(&k, &f_var::<Rational>(2), 4).unwrap();
        assert_eq!(gen, MPoly::from_int(2));
    }

    #[test]
    fn eigenvalues_exact() {
        let k = RatFn::param();
        let r = diffusion_eigenvalue(DiffusionGeometry::Radial, &k).unwrap();
        assert!(r.residual.is_zero(), "{} / {}", r.residual, r.lambda);
        assert_eq!(r.lambda, eight_h_zero_half(&k));
        let d = diffusion_eigenvalue(DiffusionGeometry::Dipolar, &k).unwrap();
        assert!(d.residual.is_zero());
        assert_eq!(d.lambda, -eight_h_zero_half(&k));
    }

    #[test]
    fn annular_coefficients() {
        let a = annular_w_coeffs(1.0, 2, 40);
        let b = annular_w_coeffs(1.0, 2, 80);
        assert_eq!(a[0], 0.25);
        let direct: f64 = -0.5 * (1..=40).map(|m| (m as f64).sinh().powi(-4)).sum::<f64>();
        assert!((a[2] - direct).abs() < 1e-15);
        assert!((a[2] - b[2]).abs() < 1e-14);
        let far = annular_w_coeffs(30.0, 3, 40);
        assert!((far[1] - 0.25).abs() < 1e-20);
        assert!(far[2..].iter().all(|x| x.abs() < 1e-20));
    }

    #[test]
    fn annular_eigenvalue() {
        let e = diffusion_eigenvalue_annular(6.0 / 1.7, 2.0, 40).unwrap();
        assert!(e.residual_norm < 1e-12);
        assert!((e.lambda - e.expected).abs() < 1e-12);
    }
}
