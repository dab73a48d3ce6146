use proptest::prelude::*;
use slocc::chsh::{self, ChshAngles, ChshDirections, WitnessSign};
use slocc::classify;
use slocc::linalg;
use slocc::lorentz::{self, LocalFilter};
use slocc::pauli::{self, FourVector, HermitianOp};
use slocc::sampling::{self, DEFAULT_SEED, MAX_RAPIDITY};

fn unit() -> impl Strategy<Value = [f64; 3]> {
    (0.0f64..std::f64::consts::PI, 0.0f64..std::f64::consts::TAU)
        .prop_map(|(t, p)| [t.sin() * p.cos(), t.sin() * p.sin(), t.cos()])
}

fn directions() -> impl Strategy<Value = ChshDirections<f64>> {
    (unit(), unit(), unit(), unit())
        .prop_map(|(a, ap, b, bp)| ChshDirections::new(a, ap, b, bp).unwrap())
}

fn normalized(w: &HermitianOp<f64>) -> HermitianOp<f64> {
    w.scaled(1.0 / w.trace())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn circle_law_matches_spatial_svd(d in directions()) {
        let (w1, w2) = chsh::chsh_circle_values(&d.angles());
        prop_assert!((w1 * w1 + w2 * w2 - 1.0).abs() < 1e-12);
        let s = linalg::svd3(&pauli::spatial_block(&chsh::chsh_witness_tensor(&d, WitnessSign::Minus).unwrap())).s;
        prop_assert!((s[0] - w1).abs() < 1e-10 && (s[1] - w2).abs() < 1e-10 && s[2].abs() < 1e-10, "{s:?} vs {w1} {w2}");
    }

    #[test]
    fn witnesses_are_nonnegative_on_products(d in directions(), qa in unit(), qb in unit(), ra in 0.0f64..1.0, rb in 0.0f64..1.0) {
        let fa = FourVector([1.0, ra * qa[0], ra * qa[1], ra * qa[2]]);
        let fb = FourVector([1.0, rb * qb[0], rb * qb[1], rb * qb[2]]);
        let product = pauli::product_state(&fa, &fb).unwrap();
        for sign in [WitnessSign::Plus, WitnessSign::Minus] {
            let w = chsh::chsh_witness(&d, sign).unwrap();
            prop_assert!(product.pairing(&w) >= -1e-12);
            prop_assert!(classify::is_potential_witness(&w));
        }
    }

    #[test]
    fn horodecki_bounds_every_setting(seed in any::<u64>(), d in directions()) {
        let rho: HermitianOp<f64> = sampling::random_state(&mut sampling::rng_for(seed, 0));
        let best = chsh::horodecki_optimum(&rho).unwrap().value;
        let om = pauli::from_hermitian(&rho).unwrap();
        for sign in [WitnessSign::Plus, WitnessSign::Minus] {
            let v = chsh::witness_value(&om, &d, sign);
            prop_assert!(v >= best - 1e-12, "{v} < {best}");
            let direct = rho.pairing(&chsh::chsh_witness(&d, sign).unwrap());
            prop_assert!((v - direct).abs() < 1e-12);
        }
    }
}

#[test]
fn horodecki_matches_direct_minimisation() {
    for i in 0..12 {
        let rho: HermitianOp<f64> =
            sampling::random_state(&mut sampling::rng_for(DEFAULT_SEED, 100 + i));
        let closed = chsh::horodecki_optimum(&rho).unwrap().value;
        let (direct, d) = chsh::direct_chsh_minimum(&rho).unwrap();
        assert!((closed - direct).abs() < 1e-6, "{closed} vs {direct}");
        let at = chsh::witness_value(
            &pauli::from_hermitian(&rho).unwrap(),
            &chsh::horodecki_directions(&rho).unwrap(),
            WitnessSign::Plus,
        );
        assert!((at - closed).abs() < 1e-12);
        assert!(
            (chsh::witness_value(&pauli::from_hermitian(&rho).unwrap(), &d, WitnessSign::Plus)
                - direct)
                .abs()
                < 1e-12
        );
    }
}

#[test]
fn werner_optimum_decreases_with_p() {
    let mut last = f64::INFINITY;
    for k in 0..=20 {
        let p = k as f64 / 20.0;
        let v = chsh::horodecki_optimum(&pauli::werner(p)).unwrap().value;
        assert!((v - (1.0 - std::f64::consts::SQRT_2 * p)).abs() < 1e-12);
        assert!(v < last);
        last = v;
    }
}

#[test]
fn werner_inside_cylinders_never_violates_after_filtering() {
    let rho = pauli::werner(0.6);
    assert!(chsh::slocc_chsh_satisfies(&rho).unwrap().member);
    for i in 0..300 {
        let f: LocalFilter<f64> =
            sampling::random_filter(&mut sampling::rng_for(DEFAULT_SEED, i), MAX_RAPIDITY);
        let out = normalized(&lorentz::apply_filter_state(&rho, &f));
        let v = chsh::horodecki_optimum(&out).unwrap().value;
        assert!(v >= -1e-10, "filter {i} gives {v}");
    }
}

#[test]
fn filters_to_violation_are_sound() {
    let mut found = 0;
    for i in 0..400 {
        let rho: HermitianOp<f64> =
            sampling::random_state(&mut sampling::rng_for(DEFAULT_SEED ^ 0xF1, i));
        let report = chsh::slocc_chsh_satisfies(&rho).unwrap();
        match chsh::filter_to_violation(&rho) {
            Ok(v) => {
                found += 1;
                let out = normalized(&lorentz::apply_filter_state(&rho, &v.filter));
                assert!(out.max_deviation(&v.filtered) < 1e-9);
                let pairing =
                    out.pairing(&chsh::chsh_witness(&v.directions, WitnessSign::Plus).unwrap());
                assert!(pairing < 0.0 && (pairing - v.value).abs() < 1e-9);
                // the filtered state attains the cylinder margin
                assert!(
                    (v.value - report.margin).abs() < 1e-7,
                    "{} vs {}",
                    v.value,
                    report.margin
                );
                let p = lorentz::filter_success_probability(&rho, &v.filter).unwrap();
                assert!(p > 0.0 && p <= 1.0 + 1e-12);
            }
            Err(e) => assert!(report.margin >= -chsh::VIOLATION_MARGIN, "{e}"),
        }
    }
    assert!(found > 0);
}

#[test]
fn circle_values_at_orthogonal_settings() {
    let (w1, w2) = chsh::chsh_circle_values(&ChshAngles {
        alpha: std::f64::consts::FRAC_PI_2,
        beta: std::f64::consts::FRAC_PI_2,
    });
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert!((w1 - h).abs() < 1e-15 && (w2 - h).abs() < 1e-15);
}
