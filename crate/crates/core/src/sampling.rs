//! Seeded random states, filters and directions.
//!
//! Every sample is drawn from its own ChaCha8 stream selected by index, so
//! results do not depend on thread scheduling or sample order.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::linalg::{self, CMat2};
use crate::lorentz::LocalFilter;
use crate::pauli::HermitianOp;
use crate::scalar::Real;

pub const DEFAULT_SEED: u64 = 0x5EED;

/// Largest rapidity used by [`random_sl2c`].
pub const MAX_RAPIDITY: f64 = 1.5;

/// Stream `index` of the generator for `seed`.
pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn gaussian_c<R: Rng>(rng: &mut R) -> Complex<f64> {
    Complex::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

/// Haar-random unit vector in `C⁴`.
pub fn haar_pure_state<T: Real, R: Rng>(rng: &mut R) -> [Complex<T>; 4] {
    let v: [Complex<f64>; 4] = std::array::from_fn(|_| gaussian_c(rng));
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.map(|z| Complex::new(T::lit(z.re / n), T::lit(z.im / n)))
}

/// Mixture of four Haar pure states with flat Dirichlet weights.
pub fn random_state<T: Real, R: Rng>(rng: &mut R) -> HermitianOp<T> {
    let w: [f64; 4] = std::array::from_fn(|_| Exp1.sample(rng));
    let total: f64 = w.iter().sum();
    let mut rho = HermitianOp::zero();
    for wk in w {
        let psi = haar_pure_state::<T, R>(rng);
        rho = rho.plus(&HermitianOp::projector(&psi).scaled(T::lit(wk / total)));
    }
    rho
}

/// Haar-random element of SU(2).
pub fn random_su2<T: Real, R: Rng>(rng: &mut R) -> CMat2<T> {
    let q: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(rng));
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let a = Complex::new(q[0] / n, q[1] / n);
    let b = Complex::new(q[2] / n, q[3] / n);
    let m = [[a, -b.conj()], [b, a.conj()]];
    m.map(|row| row.map(|z| Complex::new(T::lit(z.re), T::lit(z.im))))
}

/// `U₁ · diag(eʳ, e⁻ʳ) · U₂` with `r` uniform in `[-max_rapidity, max_rapidity]`.
pub fn random_sl2c<T: Real, R: Rng>(rng: &mut R, max_rapidity: f64) -> CMat2<T> {
    let u1 = random_su2::<T, R>(rng);
    let u2 = random_su2::<T, R>(rng);
    let r: f64 = if max_rapidity > 0.0 {
        rng.random_range(-max_rapidity..=max_rapidity)
    } else {
        0.0
    };
    let z = Complex::new(T::zero(), T::zero());
    let d = [
        [Complex::new(T::lit(r.exp()), T::zero()), z],
        [z, Complex::new(T::lit((-r).exp()), T::zero())],
    ];
    linalg::matmul_chain(&[&u1, &d, &u2])
}

/// Local filter with both factors drawn by [`random_sl2c`].
pub fn random_filter<T: Real, R: Rng>(rng: &mut R, max_rapidity: f64) -> LocalFilter<T> {
    let a = random_sl2c(rng, max_rapidity);
    let b = random_sl2c(rng, max_rapidity);
    // unit determinant holds to rounding; renormalise to keep it exact
    LocalFilter::normalized(a, b).expect("SL(2,C) sample is invertible")
}

/// Uniform direction on the unit sphere.
pub fn random_unit_vector<T: Real, R: Rng>(rng: &mut R) -> [T; 3] {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| StandardNormal.sample(rng));
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 {
            return v.map(|x| T::lit(x / n));
        }
    }
}
