//! The generic core in `f32`, checked loosely against `f64` results.

use slocc::chsh;
use slocc::classify;
use slocc::i3322::{self, TripleDirections};
use slocc::lorentz;
use slocc::pauli::{self, HermitianOp};
use slocc::sampling;
use slocc::{HermitianOpF32, LocalFilterF32, SloccCoordF32};

#[test]
fn singlet_classification() {
    let c = classify::classify(&pauli::singlet::<f32>()).unwrap();
    assert!(c.is_state && !c.is_separable && c.is_potential_witness);
    let k = c.coords.unwrap();
    assert!((k.x - 1.0).abs() < 1e-5 && (k.y - 1.0).abs() < 1e-5 && (k.z + 1.0).abs() < 1e-5);
}

#[test]
fn werner_threshold_in_single_precision() {
    assert!(classify::is_ppt(&pauli::werner(0.3f32)).unwrap());
    assert!(!classify::is_ppt(&pauli::werner(0.34f32)).unwrap());
    let c: SloccCoordF32 = SloccCoordF32::new(0.3, 0.3, -0.3);
    assert!(classify::octahedron_membership(&c).member);
}

#[test]
fn horodecki_and_filters() {
    let v = chsh::horodecki_optimum(&pauli::singlet::<f32>())
        .unwrap()
        .value;
    assert!((v - (1.0 - 2f32.sqrt())).abs() < 1e-5);
    let f = chsh::filter_to_violation(&pauli::werner(0.8f32)).unwrap();
    assert!((f.value - (1.0 - 1.28f32.sqrt())).abs() < 1e-4);
}

#[test]
fn singular_values_track_double_precision() {
    for i in 0..50 {
        let rho64: HermitianOp<f64> = sampling::random_state(&mut sampling::rng_for(3, i));
        let rho32: HermitianOpF32 = sampling::random_state(&mut sampling::rng_for(3, i));
        assert!(rho32
            .matrix()
            .iter()
            .flatten()
            .zip(rho64.matrix().iter().flatten())
            .all(|(a, b)| (a.re as f64 - b.re).abs() < 1e-6));
        let sv64 =
            lorentz::lorentz_singular_values(&pauli::from_hermitian(&rho64).unwrap()).unwrap();
        let sv32 =
            lorentz::lorentz_singular_values(&pauli::from_hermitian(&rho32).unwrap()).unwrap();
        for k in 0..4 {
            assert!(
                (sv32.w[k] as f64 - sv64.w[k]).abs() < 1e-3 * sv64.w[0],
                "{sv32:?} vs {sv64:?}"
            );
        }
        let f: LocalFilterF32 = sampling::random_filter(&mut sampling::rng_for(4, i), 0.5);
        let filtered = lorentz::apply_filter_state(&rho32, &f);
        let after =
            lorentz::lorentz_singular_values(&pauli::from_hermitian(&filtered).unwrap()).unwrap();
        assert!(after.relative_deviation(&sv32) < 1e-3);
    }
}

#[test]
fn i3322_scan_in_single_precision() {
    let scan = i3322::scan::<f32>(200, 5);
    assert!(scan.summary.min_margin >= -1e-3);
    let t: TripleDirections<f32> = TripleDirections::random(&mut sampling::rng_for(1, 0));
    assert!(i3322::i3322_singular_values(&t).unwrap().w[0] > 0.0);
}
