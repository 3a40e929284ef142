use ember_core::functions::{defs, Attribute, DimClass, Registry};
use ember_core::Rng;
use proptest::prelude::*;
use rand::{Rng as _, SeedableRng};

fn reg() -> &'static Registry {
    Registry::standard()
}

fn point(n: usize, lo: f64, hi: f64) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(lo..=hi, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn separable_functions_are_coordinate_sums(n in 2usize..=50, seed in any::<u64>()) {
        for name in ["sphere", "rastrigin", "alpine"] {
            let f = reg().get(name).unwrap();
            let (lo, hi) = f.domain();
            let mut rng = Rng::seed_from_u64(seed);
            let x: Vec<f64> = (0..n).map(|_| rng.random_range(lo..=hi)).collect();
            let whole = f.evaluate(&x).unwrap();
            let parts: f64 = x.iter().map(|&xi| f.evaluate(&[xi]).unwrap()).sum();
            prop_assert!((whole - parts).abs() <= 1e-9, "{name}: {whole} vs {parts}");
        }
    }

    #[test]
    fn permutation_and_sign_symmetry(x in point(6, -5.0, 5.0), rot in 0usize..6) {
        for name in ["drop_wave", "sphere", "ackley", "rastrigin"] {
            let f = reg().get(name).unwrap();
            let v = f.evaluate(&x).unwrap();
            let mut p = x.clone();
            p.rotate_left(rot);
            p.swap(0, 5);
            let neg: Vec<f64> = x.iter().map(|a| -a).collect();
            prop_assert!((v - f.evaluate(&p).unwrap()).abs() <= 1e-9, "{name} permutation");
            prop_assert!((v - f.evaluate(&neg).unwrap()).abs() <= 1e-9, "{name} sign");
        }
    }

    #[test]
    fn griewank_sign_symmetry(x in point(8, -600.0, 600.0)) {
        // the sqrt(i) weights rule out permutation symmetry
        let neg: Vec<f64> = x.iter().map(|a| -a).collect();
        prop_assert!((defs::griewank(&x) - defs::griewank(&neg)).abs() <= 1e-9);
    }

    #[test]
    fn expanded_forms_wrap_cyclically(x in point(5, -2.0, 2.0)) {
        let kernel = |a: f64, b: f64| defs::goldstein_price(&[a, b]);
        let by_hand: f64 = (0..5).map(|i| kernel(x[i], x[(i + 1) % 5])).sum();
        prop_assert!((defs::goldstein_price(&x) - by_hand).abs() <= 1e-9 * by_hand.abs().max(1.0));
    }
}

#[test]
fn griewank_is_not_permutation_invariant() {
    let x = [100.0, -3.0, 0.5];
    let p = [-3.0, 100.0, 0.5];
    assert!((defs::griewank(&x) - defs::griewank(&p)).abs() > 1e-6);
}

#[test]
fn sphere_zero_across_dimensions() {
    for n in [2, 20, 50] {
        assert_eq!(reg().evaluate("sphere", &vec![0.0; n]).unwrap(), 0.0);
    }
}

#[test]
fn himmelblau_minimizers() {
    let km = reg().known_minimum("himmelblau", 2).unwrap();
    assert_eq!(km.minimizers.len(), 4);
    for m in &km.minimizers {
        assert!(reg().evaluate("himmelblau", m).unwrap().abs() <= 1e-6, "{m:?}");
    }
}

#[test]
fn replicable_expanded_minima_scale_with_n() {
    for n in [3, 20, 50] {
        let km = reg().known_minimum("easom", n).unwrap();
        assert_eq!(km.value, Some(-(n as f64)));
        let v = reg().evaluate("easom", &km.minimizers[0]).unwrap();
        assert!((v + n as f64).abs() <= 1e-9);
        assert_eq!(reg().known_minimum("eggholder", n).unwrap().value, None);
        assert_eq!(reg().known_minimum("goldstein_price", n).unwrap().value, None);
    }
}

#[test]
fn fuzz_inside_domain_is_finite() {
    let mut rng = Rng::seed_from_u64(0xF122);
    for f in reg().iter() {
        let (lo, hi) = f.domain();
        let dims: &[usize] = match f.dim_class() {
            DimClass::Fixed2D => &[2],
            DimClass::NDimensional => &[2, 20],
        };
        for &n in dims {
            for _ in 0..10_000 {
                let x: Vec<f64> = (0..n).map(|_| rng.random_range(lo..=hi)).collect();
                let v = f.evaluate(&x);
                assert!(v.is_ok(), "{} at {x:?}: {v:?}", f.name());
            }
        }
        // corners of the box
        for n in dims {
            for c in [lo, hi] {
                assert!(f.evaluate(&vec![c; *n]).is_ok(), "{} at corner {c}", f.name());
            }
        }
    }
}

#[test]
fn separable_tag_matches_behaviour() {
    // changing x_j shifts f by an amount independent of the other coordinates
    let mut rng = Rng::seed_from_u64(5);
    for f in reg().list_functions(&[Attribute::Separable.as_str()]) {
        if f.dim_class() != DimClass::NDimensional {
            continue;
        }
        let (lo, hi) = f.domain();
        for _ in 0..100 {
            let mut draw = |n: usize| -> Vec<f64> { (0..n).map(|_| rng.random_range(lo..=hi)).collect() };
            let (mut x, mut y, ab) = (draw(7), draw(7), draw(2));
            let j = (ab[0].to_bits() % 7) as usize;
            x[j] = ab[0];
            y[j] = ab[0];
            let (fx_a, fy_a) = (f.evaluate(&x).unwrap(), f.evaluate(&y).unwrap());
            x[j] = ab[1];
            y[j] = ab[1];
            let (fx_b, fy_b) = (f.evaluate(&x).unwrap(), f.evaluate(&y).unwrap());
            let scale = fx_a.abs().max(fy_a.abs()).max(1.0);
            assert!(
                ((fx_a - fx_b) - (fy_a - fy_b)).abs() <= 1e-9 * scale,
                "{} coordinate {j}",
                f.name()
            );
        }
    }
}
