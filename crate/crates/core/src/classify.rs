//! Membership in the nested cones of separable states, states and potential
//! witnesses, in operator form and in class coordinates.

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg;
use crate::lorentz::{self, LorentzSV, SloccCoord};
use crate::pauli::{self, HermitianOp, PauliTensor};
use crate::sampling;
use crate::scalar::Real;

/// Tolerances used by the predicates. All defaults are the module constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Smallest eigenvalue allowed, relative to the trace norm.
    pub state: f64,
    /// Lowest product-state pairing allowed, relative to `max|ω|`.
    pub witness: f64,
    /// Slack in the singular value certificate `w0 ≥ max(w1, w2, |w3|)`.
    pub certificate: f64,
    /// Slack on polytope margins.
    pub membership: f64,
    /// Threshold for incrimination by a dual plane.
    pub detection: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            state: 1e-10,
            witness: 1e-9,
            certificate: 1e-9,
            membership: 1e-9,
            detection: 1e-9,
        }
    }
}

impl Tolerances {
    /// Sets a field by name; returns false for unknown keys.
    pub fn set(&mut self, key: &str, value: f64) -> bool {
        let slot = match key {
            "state" => &mut self.state,
            "witness" => &mut self.witness,
            "certificate" => &mut self.certificate,
            "membership" => &mut self.membership,
            "detection" => &mut self.detection,
            _ => return false,
        };
        *slot = value;
        true
    }
}

/// Result of a polytope test: positive margin inside, negative outside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Membership<T> {
    pub member: bool,
    pub margin: T,
}

impl<T: Real> Membership<T> {
    fn with_tol(margin: T, tol: f64) -> Self {
        Self {
            member: margin >= -T::lit(tol),
            margin,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification<T> {
    pub is_state: bool,
    pub is_separable: bool,
    pub is_potential_witness: bool,
    /// Lorentz singular values, when the spectrum of `ω*ω` is real.
    pub sv: Option<LorentzSV<T>>,
    /// `None` marks a degenerate class or a non-real spectrum.
    pub coords: Option<SloccCoord<T>>,
    /// Why `sv` or `coords` is missing.
    pub class_error: Option<Error>,
    /// Operator eigenvalues, ascending.
    pub eigenvalues: [T; 4],
}

fn trace_norm<T: Real>(ev: &[T; 4]) -> T {
    ev.iter().map(|x| x.abs()).sum()
}

fn psd_with<T: Real>(w: &HermitianOp<T>, tol: f64) -> bool {
    let ev = w.eigenvalues();
    ev[0] >= -T::lit(tol) * trace_norm(&ev)
}

pub fn is_state<T: Real>(w: &HermitianOp<T>) -> bool {
    psd_with(w, Tolerances::default().state)
}

/// `min` over `|a|, |b| ≤ 1` of `(1, a)ᵀ ω (1, b)` by alternating exact
/// minimisation, starting from `a`.
fn alternate<T: Real>(om: &[[T; 4]; 4], mut a: [T; 3], sweeps: usize) -> T {
    let pair = |a: &[T; 3], b: &[T; 3]| {
        let qa = [T::one(), a[0], a[1], a[2]];
        let qb = [T::one(), b[0], b[1], b[2]];
        linalg::dot(&qa, &linalg::matvec(om, &qb))
    };
    let best_partner = |g: [T; 3]| {
        let n = linalg::norm(&g);
        if n > T::zero() {
            g.map(|x| -x / n)
        } else {
            [T::zero(); 3]
        }
    };
    let mut best = T::infinity();
    for _ in 0..sweeps {
        // gradient of the pairing in b at fixed a, then in a at fixed b
        let gb: [T; 3] = std::array::from_fn(|j| {
            om[0][j + 1] + (0..3).map(|i| a[i] * om[i + 1][j + 1]).sum::<T>()
        });
        let b = best_partner(gb);
        let ga: [T; 3] = std::array::from_fn(|i| {
            om[i + 1][0] + (0..3).map(|j| om[i + 1][j + 1] * b[j]).sum::<T>()
        });
        a = best_partner(ga);
        let v = pair(&a, &b);
        // each half-step is an exact minimisation, so values never increase
        let stalled = best.is_finite() && v >= best - T::tol(1e-15) * (T::one() + best.abs());
        best = best.min(v);
        if stalled {
            break;
        }
    }
    best
}

/// Smallest pairing `Tr(W ρ_a ⊗ ρ_b)` found over pure product states.
pub fn min_product_pairing<T: Real>(omega: &PauliTensor<T>) -> T {
    let om = &omega.omega;
    let mut best = T::infinity();
    let s = T::lit(std::f64::consts::FRAC_1_SQRT_2);
    let mut starts: Vec<[T; 3]> = Vec::with_capacity(20);
    for k in 0..3 {
        for sign in [T::one(), -T::one()] {
            let mut e = [T::zero(); 3];
            e[k] = sign;
            starts.push(e);
        }
    }
    for sx in [T::one(), -T::one()] {
        for sy in [T::one(), -T::one()] {
            for sz in [T::one(), -T::one()] {
                let c = T::lit(1.0 / 3f64.sqrt());
                starts.push([sx * c, sy * c, sz * c]);
            }
        }
    }
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        for sign in [T::one(), -T::one()] {
            let mut e = [T::zero(); 3];
            e[i] = s;
            e[j] = sign * s;
            starts.push(e);
        }
    }
    debug_assert_eq!(starts.len(), 20);
    for a in starts {
        best = best.min(alternate(om, a, 200));
    }
    // random product-state probes, each polished by the same iteration
    let mut rng = sampling::rng_for(sampling::DEFAULT_SEED, 0);
    for _ in 0..1000 {
        let a = sampling::random_unit_vector::<T, _>(&mut rng);
        let b = sampling::random_unit_vector::<T, _>(&mut rng);
        let qa = [T::one(), a[0], a[1], a[2]];
        let qb = [T::one(), b[0], b[1], b[2]];
        best = best.min(linalg::dot(&qa, &linalg::matvec(om, &qb)));
        if rng.random::<u8>() < 16 {
            best = best.min(alternate(om, a, 50));
        }
    }
    best
}

pub fn is_potential_witness<T: Real>(w: &HermitianOp<T>) -> bool {
    is_potential_witness_with(w, &Tolerances::default())
}

/// Product-state minimisation, cross-checked by the singular value
/// certificate whenever the spectrum of `ω*ω` is real.
pub fn is_potential_witness_with<T: Real>(w: &HermitianOp<T>, tol: &Tolerances) -> bool {
    let Ok(omega) = pauli::from_hermitian(w) else {
        return false;
    };
    let scale = omega.max_abs();
    if scale == T::zero() {
        return true;
    }
    let normalized = PauliTensor::new(linalg::scale(&omega.omega, scale.recip()));
    if min_product_pairing(&normalized) < -T::lit(tol.witness) {
        return false;
    }
    match lorentz::lorentz_singular_values(&normalized) {
        Ok(sv) => sv.w[0] >= sv.spatial_max() - T::lit(tol.certificate),
        Err(_) => true,
    }
}

pub fn is_ppt<T: Real>(rho: &HermitianOp<T>) -> Result<bool> {
    is_ppt_with(rho, &Tolerances::default())
}

pub fn is_ppt_with<T: Real>(rho: &HermitianOp<T>, tol: &Tolerances) -> Result<bool> {
    if !psd_with(rho, tol.state) {
        return Err(Error::NotAState(format!(
            "smallest eigenvalue {}",
            rho.eigenvalues()[0]
        )));
    }
    Ok(psd_with(&pauli::partial_transpose(rho), tol.state))
}

pub fn octahedron_membership<T: Real>(c: &SloccCoord<T>) -> Membership<T> {
    octahedron_membership_with(c, &Tolerances::default())
}

pub fn octahedron_membership_with<T: Real>(c: &SloccCoord<T>, tol: &Tolerances) -> Membership<T> {
    Membership::with_tol(
        T::one() - (c.x.abs() + c.y.abs() + c.z.abs()),
        tol.membership,
    )
}

pub fn tetrahedron_membership<T: Real>(c: &SloccCoord<T>) -> Membership<T> {
    tetrahedron_membership_with(c, &Tolerances::default())
}

/// Margin is the smallest eigenvalue combination `1 + ε₁x + ε₂y − ε₁ε₂z`.
pub fn tetrahedron_membership_with<T: Real>(c: &SloccCoord<T>, tol: &Tolerances) -> Membership<T> {
    let mut margin = T::infinity();
    for e1 in [T::one(), -T::one()] {
        for e2 in [T::one(), -T::one()] {
            margin = margin.min(T::one() + e1 * c.x + e2 * c.y - e1 * e2 * c.z);
        }
    }
    Membership::with_tol(margin, tol.membership)
}

pub fn cube_membership<T: Real>(c: &SloccCoord<T>) -> Membership<T> {
    cube_membership_with(c, &Tolerances::default())
}

pub fn cube_membership_with<T: Real>(c: &SloccCoord<T>, tol: &Tolerances) -> Membership<T> {
    Membership::with_tol(
        T::one() - c.x.abs().max(c.y.abs()).max(c.z.abs()),
        tol.membership,
    )
}

/// `4 (w0 w0' − w1 w1' − w2 w2' + w3 w3')` for ordered singular values.
pub fn duality_pairing<T: Real>(sv: &LorentzSV<T>, other: &LorentzSV<T>) -> T {
    let (a, b) = (&sv.w, &other.w);
    T::lit(4.0) * (a[0] * b[0] - a[1] * b[1] - a[2] * b[2] + a[3] * b[3])
}

/// `4 min Σ w_α w'_α` over the tetrahedral representatives of `other`.
pub fn duality_pairing_orbit<T: Real>(sv: &LorentzSV<T>, other: &LorentzSV<T>) -> T {
    let s = SloccCoord::new(sv.w[1], sv.w[2], sv.w[3]);
    let reps = lorentz::tetrahedral_orbit(&SloccCoord::new(other.w[1], other.w[2], other.w[3]));
    let m = reps.iter().map(|r| s.dot(r)).fold(T::infinity(), T::min);
    T::lit(4.0) * (sv.w[0] * other.w[0] + m)
}

pub fn dual_plane_detection<T: Real>(witness: &SloccCoord<T>, rho: &SloccCoord<T>) -> bool {
    dual_plane_detection_with(witness, rho, &Tolerances::default())
}

/// True when some representative of `rho` lies beyond the plane
/// `ω⃗ · ρ⃗ = −1`.
pub fn dual_plane_detection_with<T: Real>(
    witness: &SloccCoord<T>,
    rho: &SloccCoord<T>,
    tol: &Tolerances,
) -> bool {
    let m = lorentz::tetrahedral_orbit(rho)
        .iter()
        .map(|r| T::one() + witness.dot(r))
        .fold(T::infinity(), T::min);
    m < -T::lit(tol.detection)
}

pub fn classify<T: Real>(w: &HermitianOp<T>) -> Result<Classification<T>> {
    classify_with(w, &Tolerances::default())
}

/// Aggregates the predicates so that separable ⇒ state ⇒ witness always holds.
pub fn classify_with<T: Real>(w: &HermitianOp<T>, tol: &Tolerances) -> Result<Classification<T>> {
    // reject non-Hermitian input through the checked constructor
    let w = HermitianOp::new(*w.matrix())?;
    let omega = pauli::from_hermitian(&w)?;
    let eigenvalues = w.eigenvalues();
    let is_state = psd_with(&w, tol.state);
    let is_separable = is_state && psd_with(&pauli::partial_transpose(&w), tol.state);
    let is_potential_witness = is_state || is_potential_witness_with(&w, tol);
    let (sv, coords, class_error) = match lorentz::lorentz_singular_values(&omega) {
        Ok(sv) => match lorentz::slocc_coord(&sv) {
            Ok(c) => (Some(sv), Some(c), None),
            Err(e) => (Some(sv), None, Some(e)),
        },
        Err(e) => (None, None, Some(e)),
    };
    Ok(Classification {
        is_state,
        is_separable,
        is_potential_witness,
        sv,
        coords,
        class_error,
        eigenvalues,
    })
}
