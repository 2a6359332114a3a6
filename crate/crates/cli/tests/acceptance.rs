//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! fails. Runs without the libtest harness so the lines always print.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command as Proc;
use std::time::Instant;

use sle_core::analytic::{cardy_probability, same_swallow_probability, HullSpec};
use sle_core::estimators::{
    mc_cardy, mc_dipolar_avoidance, mc_polynomial_martingale, mc_radius_tail, mc_restriction, mc_same_swallow,
    mc_zigzag_one, mc_zigzag_two, CoeffPolynomial, Estimate, MCConfig, RestrictionTuning,
};
use sle_core::loewner::{constant_driver, evolve_point, Geometry};
use sle_core::C64;
use sle_virasoro::checks::{
    diffusion_eigenvalue, diffusion_eigenvalue_annular, eight_h_zero_half, gf_lowest_order_check, martingale_check_at,
    null_vector_symbolic_check, r_bracket_check, s_bracket_check, DiffusionGeometry, Report,
};
use sle_virasoro::{rat, Field, RatFn, Rational};

type Verdict = (bool, String);
type Criterion = (&'static str, fn() -> Verdict);

fn mc(n: usize, dt: f64, horizon: f64, seed: u64) -> MCConfig {
    MCConfig {
        n_samples: n,
        dt,
        horizon,
        base_seed: seed,
        workers: std::thread::available_parallelism().map_or(1, |w| w.get()),
    }
}

fn show(e: &Estimate) -> String {
    format!("{:.4} +- {:.4}", e.mean, e.stderr)
}

fn sqrt_up(w: C64) -> C64 {
    let s = w.sqrt();
    if s.im < 0.0 {
        -s
    } else {
        s
    }
}

fn closed_form_error(geometry: Geometry, zs: &[C64], t: f64, exact: impl Fn(C64) -> C64) -> f64 {
    let d = constant_driver(0.0, t / 100.0, 100);
    zs.iter()
        .map(|&z| (evolve_point(geometry, &d, z).unwrap().last().1 - exact(z)).norm())
        .fold(0.0, f64::max)
}

fn c1_closed_forms() -> Verdict {
    let start = Instant::now();
    let grid: Vec<C64> = (0..100)
        .map(|i| C64::new(-2.0 + 0.4 * (i % 10) as f64 + 0.2, 0.1 + 0.3 * (i / 10) as f64))
        .collect();
    let t = 1.0;
    let chordal = closed_form_error(Geometry::Chordal, &grid, t, |z| sqrt_up(z * z + 4.0 * t));
    let e = (-4.0 * t).exp();
    let dipolar = closed_form_error(Geometry::Dipolar, &grid, t, |z| sqrt_up(z * z * e + (1.0 - e)));
    // g_t(iy) = i sqrt(1 - (1 - y^2) e^{4t}) for xi = 0, defined for y^2 > 1 - e^{-4t}
    let tr = 0.1;
    let axis: Vec<C64> = (0..100).map(|i| C64::new(0.0, 0.6 + 0.025 * i as f64)).collect();
    let radial = closed_form_error(Geometry::Radial, &axis, tr, |z| {
        C64::new(0.0, (1.0 - (1.0 - z.im * z.im) * (4.0 * tr).exp()).sqrt())
    });
    let secs = start.elapsed().as_secs_f64();
    let worst = chordal.max(dipolar).max(radial);
    (
        worst < 1e-8 && secs < 5.0,
        format!("max errors chordal {chordal:.1e}, dipolar {dipolar:.1e}, radial {radial:.1e}; {secs:.2}s"),
    )
}

fn failing(rep: &Report) -> Vec<String> {
    rep.checks.iter().filter(|c| !c.pass).map(|c| format!("{} ({})", c.identity, c.params)).collect()
}

fn c2_algebra() -> Verdict {
    let start = Instant::now();
    let mut rep = Report::default();
    rep.extend(null_vector_symbolic_check().unwrap());
    rep.extend(gf_lowest_order_check().unwrap());
    for k in [rat(6, 1), rat(8, 3), rat(10, 3)] {
        rep.extend(martingale_check_at(&k, 6).unwrap());
    }
    rep.extend(s_bracket_check::<Rational>(6, 4).unwrap());
    rep.extend(r_bracket_check(&rat(1, 2), &rat(1, 16), 4, &[-2, -1, 0, 1, 2]).unwrap());
    rep.extend(r_bracket_check(&rat(0, 1), &rat(5, 8), 4, &[-2, -1, 0, 1, 2]).unwrap());
    let secs = start.elapsed().as_secs_f64();
    let bad = failing(&rep);
    (
        bad.is_empty() && secs < 60.0,
        format!("{} exact identities, failing {:?}; {secs:.1}s", rep.checks.len(), bad),
    )
}

fn exact_eigen<R: Field>(kappa: &R) -> bool {
    let r = diffusion_eigenvalue(DiffusionGeometry::Radial, kappa).unwrap();
    let d = diffusion_eigenvalue(DiffusionGeometry::Dipolar, kappa).unwrap();
    let target = eight_h_zero_half(kappa);
    r.residual.is_zero() && d.residual.is_zero() && r.lambda == target && d.lambda == R::zero() - target
}

fn c3_eigenvalues() -> Verdict {
    let symbolic = exact_eigen(&RatFn::param());
    let rationals = [rat(6, 1), rat(8, 3), rat(4, 1), rat(2, 1)].iter().all(exact_eigen);
    let a = diffusion_eigenvalue_annular(6.0, 2.0, 40).unwrap();
    let err = (a.lambda - a.expected).abs();
    (
        symbolic && rationals && err < 1e-12 && a.residual_norm < 1e-12,
        format!(
            "radial/dipolar exact (symbolic kappa: {symbolic}, rationals: {rationals}); annular p=2 M=40 error {err:.1e}, residual {:.1e}",
            a.residual_norm
        ),
    )
}

fn c4_cardy() -> Verdict {
    let sym = mc_cardy(-1.0, 1.0, 6.0, &mc(10_000, 1e-4, 1e30, 41)).unwrap();
    let exact = cardy_probability(-1.0, 3.0, 6.0).unwrap();
    let asym = mc_cardy(-1.0, 3.0, 6.0, &mc(10_000, 1e-4, 1e30, 42)).unwrap();
    (
        sym.agrees_with(0.5, 3.0, 0.0) && asym.agrees_with(exact, 3.0, 0.0),
        format!("a=-b: {} vs 0.5; a=-1 b=3: {} vs {exact:.4}", show(&sym), show(&asym)),
    )
}

fn c5_same_swallow() -> Verdict {
    let exact = same_swallow_probability(1.0, 2.0, 6.0).unwrap();
    let e = mc_same_swallow(1.0, 2.0, 6.0, &mc(100_000, 1e-4, 1e30, 51)).unwrap();
    (
        e.agrees_with(exact, 3.0, 0.0),
        format!("MC {} (n={}, censored {}) vs quadrature {exact:.4}", show(&e), e.n, e.censored),
    )
}

fn c6_dimension() -> Verdict {
    let eps: Vec<f64> = (0..6).map(|i| 2.0 * 10f64.powf(-0.5 - 0.2 * i as f64)).collect();
    let mut ok = true;
    let mut msg = Vec::new();
    for (j, kappa) in [8.0 / 3.0, 6.0].into_iter().enumerate() {
        let (_, fit) = mc_radius_tail(C64::new(0.0, 1.0), kappa, &eps, &mc(100_000, 1e-3, 1e30, 61 + j as u64)).unwrap();
        let want = (8.0 - kappa) / 8.0;
        ok &= (fit.slope - want).abs() <= 0.05;
        msg.push(format!(
            "kappa={kappa:.3}: slope {:.4} +- {:.4} vs {want:.4} (d = {:.3})",
            fit.slope,
            fit.slope_stderr,
            2.0 - fit.slope
        ));
    }
    (ok, msg.join("; "))
}

fn c7_zigzag_exponent() -> Verdict {
    let dxs = [1e-3, 3e-3, 1e-2, 3e-2, 1e-1];
    let (_, fit) = mc_zigzag_one(1.0, &dxs, 6.0, &mc(10_000, 1e-3, 1e30, 71)).unwrap();
    (
        (fit.slope - 1.0 / 3.0).abs() <= 0.1,
        format!("slope {:.4} +- {:.4} vs h13 = 1/3", fit.slope, fit.slope_stderr),
    )
}

fn c8_restriction() -> Verdict {
    let tune = RestrictionTuning::default();
    let mut ok = true;
    let mut msg = Vec::new();
    let cases = [
        (HullSpec::SemiDisk { x: 2.0, r: 1.0 }, 0.75f64.powf(5.0 / 8.0)),
        (HullSpec::VerticalSlit { x: 1.0, h: 1.0 }, 0.5f64.powf(5.0 / 16.0)),
    ];
    for (j, (hull, want)) in cases.iter().enumerate() {
        let e = mc_restriction(hull, &mc(5000, 1e-3, 1e30, 81 + j as u64), &tune).unwrap();
        let bias: f64 = e.meta["bias_bound"].parse().unwrap();
        ok &= e.agrees_with(*want, 3.0, bias);
        msg.push(format!("{hull:?}: {} (bias bound {bias:.1e}) vs {want:.4}", show(&e)));
    }
    (ok, msg.join("; "))
}

fn c9_martingales() -> Verdict {
    let times = [0.25, 0.5, 1.0];
    let cfg = mc(10_000, 1e-3, 1.0, 91);
    let mut ok = true;
    let mut msg = Vec::new();
    for src in ["f1", "f1^2 - 3*f2"] {
        let es = mc_polynomial_martingale(&CoeffPolynomial::parse(src).unwrap(), 6.0, &times, &cfg).unwrap();
        ok &= es.iter().all(|e| e.mean.abs() < 3.0 * e.stderr);
        msg.push(format!("E[{src}] = {}", es.iter().map(show).collect::<Vec<_>>().join(", ")));
    }
    let es = mc_polynomial_martingale(&CoeffPolynomial::parse("f2").unwrap(), 6.0, &times, &cfg).unwrap();
    let dev = times.iter().zip(&es).map(|(t, e)| (e.mean - 2.0 * t).abs()).fold(0.0, f64::max);
    ok &= dev < 1e-9;
    msg.push(format!("E[f2] - 2t max {dev:.1e}"));
    (ok, msg.join("; "))
}

fn c10_dipolar() -> Verdict {
    let n = 10_000;
    let es = mc_dipolar_avoidance(6.0, &[1e-1, 1e-2, 1e-3], &mc(n, 2e-3, 2.0, 101)).unwrap();
    let closest: f64 = es[0].meta["min_distance"].parse().unwrap();
    let positive: usize = es[0].meta["positive_runs"].parse().unwrap();
    let separated = es.windows(2).all(|w| w[0].mean - w[1].mean >= 3.0 * w[0].stderr.hypot(w[1].stderr));
    (
        positive == n && closest > 0.0 && separated,
        format!(
            "min distance over {positive}/{n} runs {closest:.2e}; P[d <= delta] = {}",
            es.iter().map(show).collect::<Vec<_>>().join(", ")
        ),
    )
}

/// Decreasing means with the last one below a quarter of the first.
fn tends_to_zero(es: &[Estimate]) -> bool {
    es.windows(2).all(|w| w[1].mean < w[0].mean) && es.last().unwrap().mean < 0.25 * es[0].mean
}

fn c11_q2_boundary() -> Verdict {
    let kappa = 6.0;
    let h13 = (8.0 - kappa) / kappa;
    let ys: Vec<Estimate> = [-1.0, -0.1, -0.01, -0.001]
        .iter()
        .enumerate()
        .map(|(j, &y)| mc_zigzag_two(1.0, 2.0, y, kappa, &mc(4000, 1e-3, 1e30, 110 + j as u64)).unwrap())
        .collect();
    let xs: Vec<Estimate> = [2.0, 1.1, 1.01, 1.001]
        .iter()
        .enumerate()
        .map(|(j, &big_x)| mc_zigzag_two(1.0, big_x, -1.0, kappa, &mc(4000, 1e-3, 1e30, 120 + j as u64)).unwrap())
        .collect();
    let scaled: Vec<(f64, f64)> = [-1.0f64, -2.0]
        .iter()
        .enumerate()
        .map(|(j, &y)| {
            let e = mc_zigzag_two(1e-6, 2.0, y, kappa, &mc(10_000, 1e-3, 1e30, 130 + j as u64)).unwrap();
            let s = y.abs().powf(h13);
            (e.mean * s, e.stderr * s)
        })
        .collect();
    let agree = (scaled[0].0 - scaled[1].0).abs() <= 3.0 * scaled[0].1.hypot(scaled[1].1);
    let list = |es: &[Estimate]| es.iter().map(|e| format!("{:.4}", e.mean)).collect::<Vec<_>>().join(", ");
    (
        tends_to_zero(&ys) && tends_to_zero(&xs) && agree,
        format!(
            "y -> 0-: {}; X -> x+: {}; x -> 0+ rescaled: {:.4} +- {:.4} (y=-1) vs {:.4} +- {:.4} (y=-2)",
            list(&ys),
            list(&xs),
            scaled[0].0,
            scaled[0].1,
            scaled[1].0,
            scaled[1].1
        ),
    )
}

fn c12_determinism() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let runs: [&[&str]; 12] = [
        &["trace", "--steps", "200", "--seed", "3"],
        &["cardy", "--samples", "200", "--dt", "1e-3", "--workers", "2"],
        &["touch", "--samples", "200", "--dt", "1e-3", "--format", "csv"],
        &["same-swallow", "--samples", "200", "--dt", "1e-3", "--workers", "2"],
        &["dim", "--samples", "300", "--dt", "1e-2", "--format", "csv"],
        &["zigzag1", "--samples", "300", "--dt", "1e-2", "--dxs", "0.1,0.2,0.4"],
        &["zigzag2", "--samples", "200", "--dt", "1e-3", "--workers", "3"],
        &["dipolar-avoid", "--samples", "50", "--dt", "1e-2", "--horizon", "1"],
        &["restriction", "--samples", "50", "--hull", "vertical_slit", "--hull-x", "1", "--hull-size", "1"],
        &["annular-boundary", "--steps", "200", "--seed", "9", "--format", "csv"],
        &["martingale", "--samples", "200", "--dt", "0.01", "--poly", "f1^2 - 3*f2"],
        &["virasoro-check", "--kappa", "8/3", "--grade", "3"],
    ];
    let mut bad = Vec::new();
    for args in runs {
        let out = dir.path().join(format!("{}.out", args[0]));
        let mut bytes = Vec::new();
        for _ in 0..2 {
            let status = Proc::new(env!("CARGO_BIN_EXE_sle"))
                .args(args)
                .args(["--out", out.to_str().unwrap()])
                .status()
                .unwrap();
            assert!(status.success(), "{args:?}");
            bytes.push(std::fs::read(&out).unwrap());
        }
        if bytes[0] != bytes[1] || bytes[0].is_empty() {
            bad.push(args[0]);
        }
    }
    (bad.is_empty(), format!("12 commands rerun, differing outputs: {bad:?}"))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("closed-form Loewner oracles", c1_closed_forms),
        ("exact algebra suite", c2_algebra),
        ("diffusion eigenvalues", c3_eigenvalues),
        ("Cardy crossing", c4_cardy),
        ("same-swallow probability", c5_same_swallow),
        ("fractal dimension", c6_dimension),
        ("boundary zig-zag exponent", c7_zigzag_exponent),
        ("restriction at kappa = 8/3", c8_restriction),
        ("polynomial martingales", c9_martingales),
        ("dipolar avoidance", c10_dipolar),
        ("Q2 boundary conditions", c11_q2_boundary),
        ("determinism", c12_determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (pass, detail) = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| (false, "panicked".into()));
        println!(
            "criterion {:>2} {}: {name}: {detail} [{:.0}s]",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
        if !pass {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        println!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
