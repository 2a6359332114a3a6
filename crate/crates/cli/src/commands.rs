//! One function per command; each reads the resolved configuration.

use sle_core::analytic::{cardy_probability, cft_params, restriction_probability, same_swallow_probability, HullSpec};
use sle_core::estimators::{
    mc_cardy, mc_dipolar_avoidance, mc_polynomial_martingale, mc_radius_tail, mc_restriction, mc_same_swallow,
    mc_touch_interval, mc_zigzag_one, mc_zigzag_two, CoeffPolynomial, Estimate, MCConfig, RestrictionTuning,
};
use sle_core::loewner::annular::annular_boundary_motion;
use sle_core::loewner::{constant_driver, sample_driver, trace_every, Boundary, Geometry};
use sle_core::C64;
use sle_virasoro::checks::{
    diffusion_eigenvalue_annular, gf_lowest_order_check, null_vector_symbolic_check, r_bracket_check, s_bracket_check,
    virasoro_suite, Check, Report,
};
use sle_virasoro::kac::{central_charge, h12};
use sle_virasoro::{rat, Rational};

use crate::config::{Command, ExperimentConfig};
use crate::output::{Output, Record, RecordBuilder};
use crate::CliError;

fn need<T: Clone>(v: &Option<T>, name: &str) -> Result<T, CliError> {
    v.clone().ok_or_else(|| CliError::Domain(format!("missing parameter {name}")))
}

fn mc_config(c: &ExperimentConfig) -> Result<MCConfig, CliError> {
    Ok(MCConfig {
        n_samples: need(&c.samples, "samples")?,
        dt: need(&c.dt, "dt")?,
        horizon: need(&c.horizon, "horizon")?,
        base_seed: need(&c.seed, "seed")?,
        workers: need(&c.workers, "workers")?,
    })
}

fn estimate_meta(b: RecordBuilder, e: &Estimate, keys: &[&str]) -> RecordBuilder {
    keys.iter().fold(b, |b, k| match e.meta.get(*k).and_then(|v| v.parse::<f64>().ok()) {
        Some(v) => b.num(k, v),
        None => b,
    })
}

/// Run the configured experiment. `config` need not be resolved.
pub fn run(config: &ExperimentConfig) -> Result<Output, CliError> {
    let c = config.resolve()?;
    let cmd = c.command()?;
    let mut out = Output {
        command: cmd,
        params: c.clone(),
        records: Vec::new(),
        fit: None,
        all_pass: None,
        trace: None,
    };
    let kappa = need(&c.kappa, "kappa");
    match cmd {
        Command::Trace => {
            let geometry = parse_geometry(&need(&c.geometry, "geometry")?)?;
            let dt = need(&c.dt, "dt")?;
            let steps = need(&c.steps, "steps")?;
            let driver = match c.driver {
                Some(v) => constant_driver(v, dt, steps),
                None => sample_driver(kappa?, dt, steps, need(&c.seed, "seed")?),
            };
            let tr = trace_every(geometry, &driver, need(&c.stride, "stride")?)?;
            out.records = tr
                .times
                .iter()
                .zip(&tr.points)
                .map(|(&t, z)| RecordBuilder::new().num("t", t).num("x", z.re).num("y", z.im).build())
                .collect();
            out.trace = Some(tr);
        }
        Command::Cardy => {
            let (a, b, k) = (need(&c.a, "a")?, need(&c.b, "b")?, kappa?);
            let e = mc_cardy(a, b, k, &mc_config(&c)?)?;
            let exact = cardy_probability(a, b, k)?;
            out.records.push(RecordBuilder::new().num("a", a).num("b", b).estimate(&e).num("exact", exact).build());
        }
        Command::Touch | Command::SameSwallow => {
            let (x, big_x, k) = (need(&c.x, "x")?, need(&c.big_x, "X")?, kappa?);
            let cfg = mc_config(&c)?;
            let same = if k > 4.0 && k < 8.0 { same_swallow_probability(x, big_x, k).ok() } else { None };
            let (e, exact) = if cmd == Command::Touch {
                let touch_exact = if k <= 4.0 { Some(0.0) } else { same.map(|p| 1.0 - p) };
                (mc_touch_interval(x, big_x, k, &cfg)?, touch_exact)
            } else {
                (mc_same_swallow(x, big_x, k, &cfg)?, same)
            };
            out.records.push(
                RecordBuilder::new()
                    .num("x", x)
                    .num("X", big_x)
                    .estimate(&e)
                    .num("exact", exact.unwrap_or(f64::NAN))
                    .build(),
            );
        }
        Command::Dim => {
            let k = kappa?;
            let z0 = C64::new(need(&c.z0_re, "z0_re")?, need(&c.z0_im, "z0_im")?);
            let eps = need(&c.epsilons, "epsilons")?;
            let (es, fit) = mc_radius_tail(z0, k, &eps, &mc_config(&c)?)?;
            let expected = 1.0 - k / 8.0;
            out.records = eps
                .iter()
                .zip(&es)
                .map(|(&e, est)| RecordBuilder::new().num("eps", e).estimate(est).num("expected_slope", expected).build())
                .collect();
            out.fit = Some(fit);
        }
        Command::Zigzag1 => {
            let (x, k) = (need(&c.x, "x")?, kappa?);
            let dxs = need(&c.dxs, "dxs")?;
            let (es, fit) = mc_zigzag_one(x, &dxs, k, &mc_config(&c)?)?;
            let h13 = cft_params(k)?.h13();
            out.records = dxs
                .iter()
                .zip(&es)
                .map(|(&dx, e)| {
                    RecordBuilder::new()
                        .num("dx", dx)
                        .num("dx_over_x", dx / x.abs())
                        .estimate(e)
                        .num("expected_exponent", h13)
                        .build()
                })
                .collect();
            out.fit = Some(fit);
        }
        Command::Zigzag2 => {
            let (x, big_x, y, k) = (need(&c.x, "x")?, need(&c.big_x, "X")?, need(&c.y, "y")?, kappa?);
            let e = mc_zigzag_two(x, big_x, y, k, &mc_config(&c)?)?;
            let scale = y.abs().powf(cft_params(k)?.h13());
            out.records.push(
                RecordBuilder::new()
                    .num("x", x)
                    .num("X", big_x)
                    .num("y", y)
                    .estimate(&e)
                    .num("rescaled", e.mean * scale)
                    .num("rescaled_stderr", e.stderr * scale)
                    .build(),
            );
        }
        Command::DipolarAvoid => {
            let deltas = need(&c.deltas, "deltas")?;
            let es = mc_dipolar_avoidance(kappa?, &deltas, &mc_config(&c)?)?;
            out.records = deltas
                .iter()
                .zip(&es)
                .map(|(&d, e)| {
                    let b = RecordBuilder::new().num("delta", d).estimate(e);
                    estimate_meta(b, e, &["min_distance", "positive_runs"]).build()
                })
                .collect();
        }
        Command::Restriction => {
            let hull = parse_hull(&need(&c.hull, "hull")?, need(&c.hull_x, "hull_x")?, need(&c.hull_size, "hull_size")?)?;
            let tune = RestrictionTuning {
                eta: need(&c.eta, "eta")?,
                ..RestrictionTuning::default()
            };
            let e = mc_restriction(&hull, &mc_config(&c)?, &tune)?;
            let exact = restriction_probability(&hull)?;
            let b = RecordBuilder::new().estimate(&e).num("exact", exact);
            out.records.push(estimate_meta(b, &e, &["bias_bound", "max_arc_points"]).build());
        }
        Command::AnnularBoundary => {
            let which = match need(&c.boundary, "boundary")?.as_str() {
                "outer" => Boundary::Outer,
                "inner" => Boundary::Inner,
                other => return Err(CliError::Domain(format!("unknown boundary {other:?}"))),
            };
            let d = sample_driver(kappa?, need(&c.dt, "dt")?, need(&c.steps, "steps")?, need(&c.seed, "seed")?);
            let path = annular_boundary_motion(which, need(&c.p, "p")?, &d, need(&c.angle, "angle")?, need(&c.trunc, "trunc")?)?;
            out.records = path
                .iter()
                .map(|&(t, a)| RecordBuilder::new().num("t", t).num("angle", a).build())
                .collect();
        }
        Command::Martingale => {
            let src = need(&c.poly, "poly")?;
            let poly = CoeffPolynomial::parse(&src)?;
            let times = need(&c.times, "times")?;
            let es = mc_polynomial_martingale(&poly, kappa?, &times, &mc_config(&c)?)?;
            out.records = times
                .iter()
                .zip(&es)
                .map(|(&t, e)| RecordBuilder::new().text("poly", src.clone()).num("t", t).estimate(e).build())
                .collect();
        }
        Command::VirasoroCheck => {
            let rep = virasoro_report(kappa?, need(&c.grade, "grade")?, need(&c.p, "p")?, need(&c.trunc, "trunc")?)?;
            out.all_pass = Some(rep.all_pass());
            out.records = rep.checks.iter().map(check_record).collect();
        }
    }
    Ok(out)
}

fn check_record(c: &Check) -> Record {
    RecordBuilder::new()
        .text("identity", c.identity.clone())
        .text("params", c.params.clone())
        .text("residual", c.residual.clone())
        .flag("pass", c.pass)
        .build()
}

fn parse_geometry(s: &str) -> Result<Geometry, CliError> {
    match s {
        "chordal" => Ok(Geometry::Chordal),
        "radial" => Ok(Geometry::Radial),
        "dipolar" => Ok(Geometry::Dipolar),
        other => Err(CliError::Domain(format!("trace geometry must be chordal, radial or dipolar, got {other:?}"))),
    }
}

fn parse_hull(shape: &str, x: f64, size: f64) -> Result<HullSpec, CliError> {
    let h = match shape {
        "semi_disk" => HullSpec::SemiDisk { x, r: size },
        "vertical_slit" => HullSpec::VerticalSlit { x, h: size },
        other => return Err(CliError::Domain(format!("unknown hull {other:?}"))),
    };
    h.validate()?;
    Ok(h)
}

/// The nearest fraction with denominator at most 1000.
pub fn rational_kappa(kappa: f64) -> Result<Rational, CliError> {
    for q in 1..=1000i64 {
        let p = (kappa * q as f64).round();
        if (p / q as f64 - kappa).abs() < 1e-12 * kappa.abs().max(1.0) {
            return Ok(rat(p as i64, q));
        }
    }
    Err(CliError::Domain(format!("kappa {kappa} is not a fraction with denominator <= 1000")))
}

/// Exact identities at the given kappa plus the floating-point annular
/// eigenvalue check.
pub fn virasoro_report(kappa: f64, grade: u32, p: f64, trunc: usize) -> Result<Report, CliError> {
    let k = rational_kappa(kappa)?;
    if k == rat(0, 1) {
        return Err(CliError::Domain("kappa must be nonzero".into()));
    }
    let mut rep = Report::default();
    rep.extend(null_vector_symbolic_check()?);
    rep.extend(gf_lowest_order_check()?);
    rep.extend(virasoro_suite(&k, grade)?);
    rep.extend(s_bracket_check::<Rational>(grade, 4)?);
    rep.extend(r_bracket_check(&central_charge(&k), &h12(&k), grade.min(4), &[-2, -1, 0, 1, 2])?);
    let e = diffusion_eigenvalue_annular(kappa, p, trunc)?;
    let err = (e.lambda - e.expected).abs();
    rep.push(Check::new(
        "annular eigenvalue equals 2 h_(0;1/2) - h_(1;2) sum sinh^-2(m p)",
        format!("kappa={kappa} p={p} M={trunc}"),
        format!("eigenvalue error {err:e}, residual {:e}", e.residual_norm),
        err < 1e-12 && e.residual_norm < 1e-12,
    ));
    Ok(rep)
}
