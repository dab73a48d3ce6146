//! CHSH operators and witnesses, the optimal violation of a state, and the
//! three-cylinder set of classes whose filtered states never violate.

use crate::error::{Error, Result};
use crate::linalg::{self, Mat3};
use crate::lorentz::{self, LocalFilter, LorentzSvd, SloccCoord};
use crate::optim;
use crate::pauli::{self, HermitianOp, PauliTensor};
use crate::sampling;
use crate::scalar::Real;

/// Unit-norm tolerance for measurement directions.
pub const UNIT_TOL: f64 = 1e-12;
/// Slack on cylinder margins.
pub const CYLINDER_TOL: f64 = 1e-9;
/// Cylinder margin below which a violating filter is constructed.
pub const VIOLATION_MARGIN: f64 = 1e-6;

pub(crate) fn check_unit<T: Real>(v: &[T; 3]) -> Result<()> {
    if !((linalg::norm(v) - T::one()).abs() <= T::tol(UNIT_TOL)) {
        return Err(Error::NotUnitVector(v.map(|x| x.to_f64_lossy())));
    }
    Ok(())
}

/// Alice measures along `a` or `a_prime`, Bob along `b` or `b_prime`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshDirections<T> {
    pub a: [T; 3],
    pub a_prime: [T; 3],
    pub b: [T; 3],
    pub b_prime: [T; 3],
}

impl<T: Real> ChshDirections<T> {
    pub fn new(a: [T; 3], a_prime: [T; 3], b: [T; 3], b_prime: [T; 3]) -> Result<Self> {
        for v in [&a, &a_prime, &b, &b_prime] {
            check_unit(v)?;
        }
        Ok(Self {
            a,
            a_prime,
            b,
            b_prime,
        })
    }

    /// The settings that reach the Tsirelson bound on the singlet.
    pub fn tsirelson() -> Self {
        let h = T::lit(std::f64::consts::FRAC_1_SQRT_2);
        let (o, l) = (T::zero(), T::one());
        Self {
            a: [l, o, o],
            a_prime: [o, l, o],
            b: [h, h, o],
            b_prime: [h, -h, o],
        }
    }

    pub fn angles(&self) -> ChshAngles<T> {
        let clamp = |x: T| x.max(-T::one()).min(T::one());
        ChshAngles {
            alpha: clamp(linalg::dot(&self.a, &self.a_prime)).acos(),
            beta: clamp(linalg::dot(&self.b, &self.b_prime)).acos(),
        }
    }

    /// Bob's settings reversed, which turns the `+` witness into the `−` one.
    pub fn flip_bob(&self) -> Self {
        Self {
            b: self.b.map(|x| -x),
            b_prime: self.b_prime.map(|x| -x),
            ..*self
        }
    }

    /// Spatial tensor `a (b + b')ᵀ + a' (b − b')ᵀ` of the CHSH operator.
    pub fn spatial_tensor(&self) -> Mat3<T> {
        let mut s = [[T::zero(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                s[i][j] = self.a[i] * (self.b[j] + self.b_prime[j])
                    + self.a_prime[i] * (self.b[j] - self.b_prime[j]);
            }
        }
        s
    }
}

/// `cos α = a·a'`, `cos β = b·b'`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshAngles<T> {
    pub alpha: T,
    pub beta: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessSign {
    Plus,
    Minus,
}

impl WitnessSign {
    fn factor<T: Real>(self) -> T {
        match self {
            WitnessSign::Plus => T::one(),
            WitnessSign::Minus => -T::one(),
        }
    }
}

fn tensor_with_spatial<T: Real>(w0: T, s: &Mat3<T>, scale: T) -> PauliTensor<T> {
    let mut om = [[T::zero(); 4]; 4];
    om[0][0] = w0;
    for i in 0..3 {
        for j in 0..3 {
            om[i + 1][j + 1] = s[i][j] * scale;
        }
    }
    PauliTensor::new(om)
}

/// `a·σ ⊗ (b + b')·σ + a'·σ ⊗ (b − b')·σ`.
pub fn chsh_operator<T: Real>(d: &ChshDirections<T>) -> Result<HermitianOp<T>> {
    let d = ChshDirections::new(d.a, d.a_prime, d.b, d.b_prime)?;
    Ok(pauli::to_hermitian(&tensor_with_spatial(
        T::zero(),
        &d.spatial_tensor(),
        T::one(),
    )))
}

/// `(2 ± B) / 2`.
pub fn chsh_witness<T: Real>(d: &ChshDirections<T>, sign: WitnessSign) -> Result<HermitianOp<T>> {
    Ok(pauli::to_hermitian(&chsh_witness_tensor(d, sign)?))
}

/// Pauli tensor of [`chsh_witness`]: `ω₀₀ = 1`, spatial block `±S/2`.
pub fn chsh_witness_tensor<T: Real>(
    d: &ChshDirections<T>,
    sign: WitnessSign,
) -> Result<PauliTensor<T>> {
    let d = ChshDirections::new(d.a, d.a_prime, d.b, d.b_prime)?;
    Ok(tensor_with_spatial(
        T::one(),
        &d.spatial_tensor(),
        sign.factor::<T>() * T::lit(0.5),
    ))
}

/// Singular values `(w1, w2)` of a witness spatial block, `w3 = 0`:
/// `2 w² = 1 ± √(1 − sin²α sin²β)`.
pub fn chsh_circle_values<T: Real>(ang: &ChshAngles<T>) -> (T, T) {
    let s = ang.alpha.sin() * ang.beta.sin();
    let disc = (T::one() - s * s).max(T::zero()).sqrt();
    let half = T::lit(0.5);
    let w1 = (half * (T::one() + disc)).sqrt();
    let w2 = (half * (T::one() - disc)).max(T::zero()).sqrt();
    (w1, w2)
}

/// Plane spanned by two coordinate axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Plane {
    Xy,
    Yz,
    Xz,
}

impl Plane {
    pub fn name(self) -> &'static str {
        match self {
            Plane::Xy => "xy",
            Plane::Yz => "yz",
            Plane::Xz => "xz",
        }
    }

    fn normal_to(axis: usize) -> Self {
        match axis {
            0 => Plane::Yz,
            1 => Plane::Xz,
            _ => Plane::Xy,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HorodeckiOptimum<T> {
    /// `min Tr(ρ W_B) / Tr ρ` over all directions and both signs.
    pub value: T,
    /// Coordinate plane closest to the optimal measurement plane.
    pub plane: Plane,
    /// Singular values of the normalised correlation block, descending.
    pub correlations: [T; 3],
}

/// Correlation block `T_ij = ω_ij / ω₀₀`, equal to `Tr(ρ σ^i ⊗ σ^j)` for
/// a normalised state. The local vectors `ω_0j`, `ω_i0` never enter the
/// CHSH pairing and are dropped.
fn correlation_block<T: Real>(rho: &HermitianOp<T>) -> Result<Mat3<T>> {
    lorentz::check_normalized_state(rho)?;
    let om = pauli::from_hermitian(rho)?;
    let s = om.omega[0][0].recip();
    Ok(pauli::spatial_block(&om).map(|row| row.map(|x| x * s)))
}

/// Closed-form optimum `1 − √(t1² + t2²)` over the two largest
/// correlation singular values.
pub fn horodecki_optimum<T: Real>(rho: &HermitianOp<T>) -> Result<HorodeckiOptimum<T>> {
    let t = correlation_block(rho)?;
    let d = linalg::svd3(&t);
    let value = T::one() - (d.s[0] * d.s[0] + d.s[1] * d.s[1]).sqrt();
    let normal = [d.v[0][2], d.v[1][2], d.v[2][2]];
    let mut axis = 0;
    for k in 1..3 {
        if normal[k].abs() > normal[axis].abs() {
            axis = k;
        }
    }
    Ok(HorodeckiOptimum {
        value,
        plane: Plane::normal_to(axis),
        correlations: d.s,
    })
}

/// Directions attaining [`horodecki_optimum`] with the `+` witness.
pub fn horodecki_directions<T: Real>(rho: &HermitianOp<T>) -> Result<ChshDirections<T>> {
    let t = correlation_block(rho)?;
    let d = linalg::svd3(&t);
    let col = |m: &Mat3<T>, k: usize| [m[0][k], m[1][k], m[2][k]];
    let (c, cp) = (col(&d.v, 0), col(&d.v, 1));
    let r = (d.s[0] * d.s[0] + d.s[1] * d.s[1]).sqrt();
    let (cos, sin) = if r > T::zero() {
        (d.s[0] / r, d.s[1] / r)
    } else {
        (T::one(), T::zero())
    };
    let b: [T; 3] = std::array::from_fn(|i| cos * c[i] + sin * cp[i]);
    let b_prime: [T; 3] = std::array::from_fn(|i| cos * c[i] - sin * cp[i]);
    // T c = t1 p1, so a = −p1 and a' = −p2
    let a = col(&d.u, 0).map(|x| -x);
    let a_prime = col(&d.u, 1).map(|x| -x);
    let unit = |v: [T; 3]| {
        let n = linalg::norm(&v);
        v.map(|x| x / n)
    };
    Ok(ChshDirections {
        a: unit(a),
        a_prime: unit(a_prime),
        b: unit(b),
        b_prime: unit(b_prime),
    })
}

/// `Tr(ρ W_B) / Tr ρ` in terms of the Pauli tensor of `ρ`.
pub fn witness_value<T: Real>(rho: &PauliTensor<T>, d: &ChshDirections<T>, sign: WitnessSign) -> T {
    let s = d.spatial_tensor();
    let mut acc = T::zero();
    for i in 0..3 {
        for j in 0..3 {
            acc += s[i][j] * rho.omega[i + 1][j + 1];
        }
    }
    T::one() + sign.factor::<T>() * T::lit(0.5) * acc / rho.omega[0][0]
}

fn spherical(theta: f64, phi: f64) -> [f64; 3] {
    [
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    ]
}

fn directions_from_angles(x: &[f64]) -> ChshDirections<f64> {
    ChshDirections {
        a: spherical(x[0], x[1]),
        a_prime: spherical(x[2], x[3]),
        b: spherical(x[4], x[5]),
        b_prime: spherical(x[6], x[7]),
    }
}

/// Direct minimisation of `Tr(ρ W_B) / Tr ρ` over the eight direction
/// angles: seeded coarse starts, then cyclic coordinate descent with
/// golden-section line searches.
pub fn direct_chsh_minimum(rho: &HermitianOp<f64>) -> Result<(f64, ChshDirections<f64>)> {
    lorentz::check_normalized_state(rho)?;
    let om = pauli::from_hermitian(rho)?;
    let f = |x: &[f64]| witness_value(&om, &directions_from_angles(x), WitnessSign::Plus);
    let mut rng = sampling::rng_for(sampling::DEFAULT_SEED, 1);
    let grid = 16;
    let mut starts: Vec<(Vec<f64>, f64)> = (0..grid * grid)
        .map(|_| {
            let x: Vec<f64> = (0..4)
                .flat_map(|_| {
                    let v = sampling::random_unit_vector::<f64, _>(&mut rng);
                    [v[2].clamp(-1.0, 1.0).acos(), v[1].atan2(v[0])]
                })
                .collect();
            let fx = f(&x);
            (x, fx)
        })
        .collect();
    starts.sort_by(|a, b| a.1.total_cmp(&b.1));
    let mut best = (Vec::new(), f64::INFINITY);
    for (x0, _) in starts.iter().take(4) {
        let (x, fx) = optim::coordinate_descent(f, x0, std::f64::consts::FRAC_PI_2, 200);
        let (x, fx) = {
            let (y, fy) = optim::nelder_mead(
                f,
                &x,
                optim::NelderMead {
                    step: 1e-3,
                    max_evals: 4000,
                    ftol: 1e-16,
                },
            );
            if fy < fx {
                (y, fy)
            } else {
                (x, fx)
            }
        };
        if fx < best.1 {
            best = (x, fx);
        }
    }
    Ok((best.1, directions_from_angles(&best.0)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylinderReport<T> {
    pub member: bool,
    /// `1 − √(max of the pairwise square sums)`.
    pub margin: T,
    /// Axis of the first cylinder left, when outside.
    pub violating_axis: Option<usize>,
    pub coords: SloccCoord<T>,
}

pub fn cylinder_membership<T: Real>(c: &SloccCoord<T>) -> CylinderReport<T> {
    cylinder_membership_with(c, CYLINDER_TOL)
}

pub fn cylinder_membership_with<T: Real>(c: &SloccCoord<T>, tol: f64) -> CylinderReport<T> {
    let (x2, y2, z2) = (c.x * c.x, c.y * c.y, c.z * c.z);
    // cylinder along axis k bounds the two other coordinates
    let sums = [y2 + z2, x2 + z2, x2 + y2];
    let mut axis = 0;
    for k in 1..3 {
        if sums[k] > sums[axis] {
            axis = k;
        }
    }
    let margin = T::one() - sums[axis].sqrt();
    let member = margin >= -T::lit(tol);
    CylinderReport {
        member,
        margin,
        violating_axis: if member { None } else { Some(axis) },
        coords: *c,
    }
}

/// Whether every state filtered from `rho` satisfies all CHSH inequalities.
pub fn slocc_chsh_satisfies<T: Real>(rho: &HermitianOp<T>) -> Result<CylinderReport<T>> {
    lorentz::check_normalized_state(rho)?;
    let sv = lorentz::lorentz_singular_values(&pauli::from_hermitian(rho)?)?;
    Ok(cylinder_membership(&lorentz::slocc_coord(&sv)?))
}

/// A filter bringing a state to canonical form, with CHSH settings that the
/// filtered state violates.
#[derive(Debug, Clone, PartialEq)]
pub struct ViolatingFilter<T> {
    pub filter: LocalFilter<T>,
    pub directions: ChshDirections<T>,
    /// `Tr(ρ' W_B)` for the normalised filtered state, negative.
    pub value: T,
    pub filtered: HermitianOp<T>,
}

/// Canonical frame of a state; the maximally entangled class is handled by
/// its exact factorisation.
fn canonical_frame<T: Real>(omega: &PauliTensor<T>) -> Result<LorentzSvd<T>> {
    match lorentz::lorentz_svd(omega) {
        Err(e @ Error::BoundaryClass { .. }) => lorentz::maximal_class_svd(omega).map_err(|_| e),
        other => other,
    }
}

pub fn filter_to_violation<T: Real>(rho: &HermitianOp<T>) -> Result<ViolatingFilter<T>> {
    let report = slocc_chsh_satisfies(rho)?;
    if !(report.margin < -T::lit(VIOLATION_MARGIN)) {
        return Err(Error::NotOutsideCylinders(report.margin.to_f64_lossy()));
    }
    let frame = canonical_frame(&pauli::from_hermitian(rho)?)?;
    let filter = frame.filter()?;
    let out = lorentz::apply_filter_state(rho, &filter);
    let filtered = out.scaled(out.trace().recip());
    let directions = horodecki_directions(&filtered)?;
    let value = witness_value(
        &pauli::from_hermitian(&filtered)?,
        &directions,
        WitnessSign::Plus,
    );
    Ok(ViolatingFilter {
        filter,
        directions,
        value,
        filtered,
    })
}
