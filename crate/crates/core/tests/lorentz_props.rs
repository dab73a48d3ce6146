use num_complex::Complex;
use proptest::prelude::*;
use slocc::eigen;
use slocc::linalg::{self, CMat2};
use slocc::lorentz::{self, LorentzTransform};
use slocc::pauli::{self, HermitianOp, PauliTensor};
use slocc::sampling::{self, MAX_RAPIDITY};

fn state(seed: u64) -> HermitianOp<f64> {
    sampling::random_state(&mut sampling::rng_for(seed, 0))
}

fn filter(seed: u64) -> lorentz::LocalFilter<f64> {
    sampling::random_filter(&mut sampling::rng_for(seed, 1), MAX_RAPIDITY)
}

fn max_dev<const N: usize>(a: &linalg::Mat<f64, N>, b: &linalg::Mat<f64, N>) -> f64 {
    linalg::max_abs(&linalg::sub(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pauli_round_trip(seed in any::<u64>()) {
        let rho = state(seed);
        let om = pauli::from_hermitian(&rho).unwrap();
        prop_assert!(pauli::to_hermitian(&om).max_deviation(&rho) < 1e-12);
        prop_assert!((om.omega[0][0] - 0.25).abs() < 1e-12);
    }

    #[test]
    fn filter_acts_by_lorentz_pair(seed in any::<u64>()) {
        let rho = state(seed);
        let f = filter(seed);
        let (la, lb) = f.lorentz_pair();
        let direct = pauli::from_hermitian(&lorentz::apply_filter_state(&rho, &f)).unwrap();
        let via = lorentz::transform_tensor(&la, &pauli::from_hermitian(&rho).unwrap(), &lb);
        let scale = direct.max_abs().max(1.0);
        prop_assert!(max_dev(&direct.omega, &via.omega) < 1e-10 * scale);
    }

    #[test]
    fn singular_values_are_filter_invariant(seed in any::<u64>()) {
        let rho = state(seed);
        let f = filter(seed);
        let om = pauli::from_hermitian(&rho).unwrap();
        let om2 = pauli::from_hermitian(&lorentz::apply_filter_state(&rho, &f)).unwrap();
        let a = lorentz::lorentz_singular_values(&om).unwrap();
        let b = lorentz::lorentz_singular_values(&om2).unwrap();
        prop_assert!(a.is_ordered() && b.is_ordered());
        prop_assert!(b.relative_deviation(&a) < 1e-8, "{:?} vs {:?}", a, b);
        let d1 = linalg::det(&om.omega);
        let d2 = linalg::det(&om2.omega);
        prop_assert!((d1 - d2).abs() <= 1e-8 * d1.abs().max(om.max_abs().powi(4)) );
    }

    #[test]
    fn witness_pairing_is_contragradient(seed in any::<u64>()) {
        let rho = state(seed);
        let w = state(seed ^ 0xABCD).plus(&HermitianOp::identity().scaled(-0.3));
        let f = filter(seed);
        let before = rho.pairing(&w);
        let after = lorentz::apply_filter_state(&rho, &f).pairing(&lorentz::apply_filter_witness(&w, &f));
        prop_assert!((before - after).abs() < 1e-10 * (1.0 + before.abs()));
    }

    #[test]
    fn spin_homomorphism(seed in any::<u64>()) {
        let mut rng = sampling::rng_for(seed, 2);
        let a: CMat2<f64> = sampling::random_sl2c(&mut rng, MAX_RAPIDITY);
        let b: CMat2<f64> = sampling::random_sl2c(&mut rng, MAX_RAPIDITY);
        let la = lorentz::lorentz_from_sl2c(&a).unwrap();
        let lb = lorentz::lorentz_from_sl2c(&b).unwrap();
        let lab = lorentz::lorentz_from_sl2c(&linalg::matmul(&a, &b)).unwrap();
        prop_assert!(max_dev(lab.matrix(), la.compose(&lb).matrix()) < 1e-10 * linalg::max_abs(lab.matrix()).max(1.0));
        // validated as proper orthochronous
        prop_assert!(LorentzTransform::new(*la.matrix()).is_ok());
    }

    #[test]
    fn spinor_round_trip(seed in any::<u64>()) {
        let mut rng = sampling::rng_for(seed, 3);
        let a: CMat2<f64> = sampling::random_sl2c(&mut rng, MAX_RAPIDITY);
        let l = lorentz::lorentz_from_sl2c(&a).unwrap();
        let back = lorentz::sl2c_from_lorentz(l.matrix()).unwrap();
        let same = (0..2).all(|i| (0..2).all(|j| (back[i][j] - a[i][j]).norm() < 1e-8));
        let neg = (0..2).all(|i| (0..2).all(|j| (back[i][j] + a[i][j]).norm() < 1e-8));
        prop_assert!(same || neg);
        let det = lorentz::det2(&back);
        prop_assert!((det - Complex::new(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn lorentz_svd_diagonalizes_states(seed in any::<u64>()) {
        let rho = state(seed);
        let om = pauli::from_hermitian(&rho).unwrap();
        let d = lorentz::lorentz_svd(&om).unwrap();
        let diag = d.diagonalized(&om);
        let target = linalg::diag(d.sv.w);
        let scale = d.sv.w[0];
        prop_assert!(max_dev(&diag.omega, &target) < 1e-8 * scale, "{:?}", diag.omega);
        let sv = lorentz::lorentz_singular_values(&om).unwrap();
        prop_assert!(d.sv.relative_deviation(&sv) < 1e-8);
        prop_assert!(LorentzTransform::new(*d.lambda_a.matrix()).is_ok());
        prop_assert!(LorentzTransform::new(*d.lambda_b.matrix()).is_ok());
        // the realising filter brings the state to a multiple of its canonical form
        let f = d.filter().unwrap();
        let canon = pauli::from_hermitian(&lorentz::apply_filter_state(&rho, &f)).unwrap();
        prop_assert!(max_dev(&canon.omega, &target) < 1e-7 * scale);
    }

    #[test]
    fn time_like_eigenvector_residual(seed in any::<u64>()) {
        let om = pauli::from_hermitian(&state(seed)).unwrap();
        let sv = lorentz::lorentz_singular_values(&om).unwrap();
        let n = lorentz::minkowski_square(&om);
        let v = eigen::inverse_iteration(&n, sv.w[0] * sv.w[0], [1.0, 0.0, 0.0, 0.0]).unwrap();
        let nv = linalg::matvec(&n, &v);
        let res = (0..4).map(|i| (nv[i] - sv.w[0] * sv.w[0] * v[i]).abs()).fold(0.0, f64::max);
        let norm2 = linalg::frobenius(&om.omega).powi(2);
        prop_assert!(res <= 1e-8 * norm2 * linalg::norm(&v));
    }

    #[test]
    fn canonical_form_inverts_svd(seed in any::<u64>()) {
        let om = pauli::from_hermitian(&state(seed)).unwrap();
        let sv = lorentz::lorentz_singular_values(&om).unwrap();
        let back = pauli::from_hermitian(&lorentz::canonical_form(&sv)).unwrap();
        prop_assert!(max_dev(&back.omega, &PauliTensor::diagonal(sv.w).omega) < 1e-14);
    }

    #[test]
    fn orbit_preserves_norm(x in -1.0f64..1.0, y in -1.0f64..1.0, z in -1.0f64..1.0) {
        let c = lorentz::SloccCoord::new(x, y, z);
        let orbit = lorentz::tetrahedral_orbit(&c);
        prop_assert!(orbit.len() <= 24 && !orbit.is_empty());
        prop_assert!(orbit.contains(&c));
        for o in orbit {
            prop_assert!((o.dot(&o) - c.dot(&c)).abs() < 1e-15);
            prop_assert!((o.x * o.y * o.z - x * y * z).abs() < 1e-15);
        }
    }
}
