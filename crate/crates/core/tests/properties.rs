use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sle_core::estimators::{mc_cardy, mc_dipolar_avoidance, mc_touch_interval, BoundaryStepper, MCConfig};
use sle_core::loewner::{evolve_point, sample_driver, trace, Geometry};
use sle_core::C64;

fn cfg(n: usize, dt: f64, horizon: f64, seed: u64, workers: usize) -> MCConfig {
    MCConfig {
        n_samples: n,
        dt,
        horizon,
        base_seed: seed,
        workers,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // lambda xi(t / lambda^2) generates the hull scaled by lambda
    #[test]
    fn chordal_scaling_covariance(seed in 0u64..1000, lambda in 0.25f64..4.0) {
        let d = sample_driver(6.0, 1e-3, 120, seed);
        let a = trace(Geometry::Chordal, &d).unwrap();
        let b = trace(Geometry::Chordal, &d.rescaled(lambda)).unwrap();
        for (za, zb) in a.points.iter().zip(&b.points) {
            prop_assert!((za * lambda - zb).norm() < 1e-9 * (1.0 + zb.norm()));
        }
    }

    #[test]
    fn chordal_map_scaling(seed in 0u64..1000, lambda in 0.25f64..4.0, x in -2.0f64..2.0, y in 0.1f64..2.0) {
        let d = sample_driver(3.0, 1e-3, 100, seed);
        let z = C64::new(x, y);
        let a = evolve_point(Geometry::Chordal, &d, z).unwrap();
        let b = evolve_point(Geometry::Chordal, &d.rescaled(lambda), z * lambda).unwrap();
        let (_, wa, _) = a.last();
        let (_, wb, _) = b.last();
        prop_assert!((wa * lambda - wb).norm() < 1e-9 * (1.0 + wb.norm()));
    }

    // points nearer the origin on the same side are swallowed no later
    #[test]
    fn swallowing_is_monotone(seed in 0u64..10_000, x in 0.1f64..1.0, gap in 0.01f64..1.0) {
        let pts = [x, x + gap, -x, -x - gap];
        let mut s = BoundaryStepper::new(&pts, 6.0, 1e-2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        s.run(&mut rng, 1e3, |s| !s.alive(1) && !s.alive(3));
        prop_assert!(!s.strictly_before(1, 0));
        prop_assert!(!s.strictly_before(3, 2));
    }

    #[test]
    fn indicator_estimates_are_bounded(seed in 0u64..1000, n in 1usize..40, a in 0.2f64..2.0, b in 0.2f64..2.0) {
        let c = cfg(n, 1e-2, 1e3, seed, 1);
        for e in [mc_cardy(-a, b, 6.0, &c).unwrap(), mc_touch_interval(a, a + b, 6.0, &c).unwrap()] {
            prop_assert!((0.0..=1.0).contains(&e.mean));
            let n_used = e.n as f64;
            prop_assert!(e.stderr <= 0.5 / n_used.sqrt() + 1e-12);
        }
    }
}

#[test]
fn estimates_do_not_depend_on_workers() {
    let one = mc_cardy(-1.0, 2.0, 6.0, &cfg(200, 1e-2, 1e3, 5, 1)).unwrap();
    let three = mc_cardy(-1.0, 2.0, 6.0, &cfg(200, 1e-2, 1e3, 5, 3)).unwrap();
    assert_eq!(one, three);
    let a = mc_dipolar_avoidance(6.0, &[0.5, 0.1], &cfg(40, 1e-2, 1.0, 9, 1)).unwrap();
    let b = mc_dipolar_avoidance(6.0, &[0.5, 0.1], &cfg(40, 1e-2, 1.0, 9, 4)).unwrap();
    assert_eq!(a, b);
}

// halving dt must not move the estimate beyond the combined statistical error
#[test]
fn refinement_smoke() {
    let coarse = mc_cardy(-1.0, 3.0, 6.0, &cfg(3000, 2e-3, 1e30, 11, 1)).unwrap();
    let fine = mc_cardy(-1.0, 3.0, 6.0, &cfg(3000, 1e-3, 1e30, 12, 1)).unwrap();
    let se = coarse.stderr.hypot(fine.stderr);
    assert!((coarse.mean - fine.mean).abs() < 3.0 * se, "{coarse:?} {fine:?}");
}
