use proptest::prelude::*;
use sle_virasoro::checks::{
    diffusion_eigenvalue_annular, gf_lowest_order_check, martingale_check_at, null_vector_symbolic_check, r_bracket_check, s_bracket_check, virasoro_suite,
};
use sle_virasoro::gf::gf_expand;
use sle_virasoro::{partitions, rat, Rational, Ring, Series, VermaModule, VermaVector};

fn bracket(
    m: &VermaModule<Rational>,
    a: i32,
    b: i32,
    v: &VermaVector<Rational>,
) -> VermaVector<Rational> {
    let ab = m.apply_word(&[a, b], v).unwrap();
    let ba = m.apply_word(&[b, a], v).unwrap();
    ab.sub(&ba)
}

fn series(c: &[i64]) -> Series<Rational> {
    let mut v = vec![rat(0, 1), rat(1, 1)];
    v.extend(c.iter().map(|&x| rat(x, 3)));
    Series::new(0, v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn commutator_relation(a in -3i32..=3, b in -3i32..=3, idx in 0usize..20, cn in -5i64..5, hn in -5i64..5) {
        let c = rat(cn, 2);
        let h = rat(hn, 3);
        let m = VermaModule::new(c.clone(), h, 10);
        let basis: Vec<_> = (0..=4).flat_map(partitions).collect();
        let v = VermaVector::basis(basis[idx % basis.len()].clone());
        let lhs = bracket(&m, a, b, &v);
        let mut rhs = m.apply_mode(a + b, &v).unwrap().scale(&Rational::from_int((a - b) as i64));
        if a + b == 0 {
            rhs = rhs.add(&v.scale(&(c * Rational::from_ratio((a * a * a - a) as i64, 12))));
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jacobi_identity(a in -2i32..=2, b in -2i32..=2, d in -2i32..=2, idx in 0usize..12) {
        let m = VermaModule::new(rat(7, 5), rat(-2, 3), 9);
        let basis: Vec<_> = (0..=3).flat_map(partitions).collect();
        let v = VermaVector::basis(basis[idx % basis.len()].clone());
        // [[a,b],d] + [[b,d],a] + [[d,a],b], each term expanded into words
        let w = |x: i32, y: i32, z: i32| {
            let xyz = m.apply_word(&[x, y, z], &v).unwrap();
            let yxz = m.apply_word(&[y, x, z], &v).unwrap();
            let zxy = m.apply_word(&[z, x, y], &v).unwrap();
            let zyx = m.apply_word(&[z, y, x], &v).unwrap();
            xyz.sub(&yxz).sub(&zxy).add(&zyx)
        };
        let total = w(a, b, d).add(&w(b, d, a)).add(&w(d, a, b));
        prop_assert!(total.is_zero());
    }

    #[test]
    fn gf_composition_law(f in proptest::collection::vec(-4i64..=4, 4), g in proptest::collection::vec(-4i64..=4, 4)) {
        let k = 4;
        let fs = series(&f);
        let gs = series(&g);
        let gf = gf_expand(&fs, k).unwrap();
        let gg = gf_expand(&gs, k).unwrap();
        let comp = gf_expand(&gs.compose(&fs), k).unwrap();
        prop_assert_eq!(gf.compose(&gg), comp);
    }
}

#[test]
fn s_brackets_through_grade_six() {
    let rep = s_bracket_check::<Rational>(6, 4).unwrap();
    assert!(rep.all_pass(), "{:?}", rep);
}

#[test]
fn r_brackets_through_grade_four() {
    let rep = r_bracket_check(&rat(1, 2), &rat(1, 16), 4, &[-2, -1, 0, 1, 2]).unwrap();
    assert!(rep.all_pass(), "{:?}", rep);
}

#[test]
fn martingales_through_grade_six() {
    for k in [rat(6, 1), rat(8, 3), rat(10, 3)] {
        let rep = martingale_check_at(&k, 6).unwrap();
        assert!(rep.all_pass(), "{:?}", rep);
    }
}

#[test]
fn full_suite_passes() {
    for k in [rat(6, 1), rat(8, 3), rat(4, 1)] {
        let rep = virasoro_suite(&k, 3).unwrap();
        assert!(rep.all_pass(), "{:?}", rep);
    }
}

#[test]
fn annular_eigenvalue_p2() {
    for kappa in [6.0, 8.0 / 3.0, 3.0] {
        let e = diffusion_eigenvalue_annular(kappa, 2.0, 40).unwrap();
        assert!((e.lambda - e.expected).abs() < 1e-12, "{:?}", e);
        assert!(e.residual_norm < 1e-12);
    }
}

#[test]
fn gf_and_symbolic_null_reports() {
    assert!(gf_lowest_order_check().unwrap().all_pass());
    assert!(null_vector_symbolic_check().unwrap().all_pass());
}
