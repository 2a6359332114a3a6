use sle_core::analytic::{same_swallow_probability, HullSpec};
use sle_core::estimators::{mc_cardy, mc_restriction, mc_touch_interval, mc_zigzag_one, MCConfig, RestrictionTuning};

fn cfg(n: usize, dt: f64, seed: u64) -> MCConfig {
    MCConfig {
        n_samples: n,
        dt,
        horizon: 1e30,
        base_seed: seed,
        workers: 1,
    }
}

#[test]
fn touch_matches_same_swallow_complement() {
    let e = mc_touch_interval(1.0, 2.0, 6.0, &cfg(4000, 1e-3, 1)).unwrap();
    let want = 1.0 - same_swallow_probability(1.0, 2.0, 6.0).unwrap();
    assert!(e.agrees_with(want, 3.0, 0.0), "{e:?} vs {want}");
}

#[test]
fn touch_vanishes_with_the_interval() {
    let wide = mc_touch_interval(1.0, 1.1, 6.0, &cfg(2000, 1e-3, 2)).unwrap();
    let narrow = mc_touch_interval(1.0, 1.0001, 6.0, &cfg(2000, 1e-3, 3)).unwrap();
    assert!(narrow.mean < 0.5 * wide.mean && narrow.mean < 0.05, "{} {}", narrow.mean, wide.mean);
}

#[test]
fn cardy_near_origin_is_certain() {
    let e = mc_cardy(-1e-4, 1.0, 6.0, &cfg(1000, 1e-3, 4)).unwrap();
    assert!(e.mean > 0.95, "{e:?}");
}

#[test]
fn small_hull_is_avoided() {
    let e = mc_restriction(&HullSpec::SemiDisk { x: 2.0, r: 0.02 }, &cfg(400, 1e-3, 5), &RestrictionTuning::default()).unwrap();
    assert!(e.mean > 0.98, "{e:?}");
}

// the boundary sampler is scale covariant once dt scales with x^2
#[test]
fn zigzag_fit_is_scale_invariant() {
    let dxs = [0.01, 0.03, 0.1];
    let (a, fa) = mc_zigzag_one(1.0, &dxs, 6.0, &cfg(1000, 1e-3, 6)).unwrap();
    let dxs2: Vec<f64> = dxs.iter().map(|d| 2.0 * d).collect();
    let (b, fb) = mc_zigzag_one(2.0, &dxs2, 6.0, &cfg(1000, 4e-3, 6)).unwrap();
    for (ea, eb) in a.iter().zip(&b) {
        assert!((ea.mean - eb.mean).abs() <= 0.005, "{ea:?} {eb:?}");
    }
    assert!((fa.slope - fb.slope).abs() < fa.slope_stderr.hypot(fb.slope_stderr), "{fa:?} {fb:?}");
}
