//! Lorentz geometry of two-qubit operators.
//!
//! A local filter `M = A ⊗ B` with `A, B ∈ SL(2, C)` acts on the Pauli tensor
//! of a state as `ω ↦ Λ_A ω Λ_Bᵀ`, where `Λ_A, Λ_B ∈ SO⁺(1, 3)` are the images
//! of `A` and `B` under the spin homomorphism. Witnesses transform
//! contragradiently so that `Tr(ρ W)` is invariant.
//!
//! The Minkowski adjoint `ω* = η ωᵀ η` makes `ω*ω` transform by similarity,
//! so its spectrum is a filter invariant. The square roots of that spectrum,
//! ordered `w0 ≥ w1 ≥ w2 ≥ |w3|` with `sign(w3) = sign(det ω)`, are the
//! Lorentz singular values; `(w1, w2, w3) / w0` locates the equivalence class
//! in three dimensions.

use num_complex::Complex;

use crate::eigen;
use crate::error::{Error, Result};
use crate::linalg::{self, CMat2, Mat3, Mat4};
use crate::pauli::{self, HermitianOp, PauliTensor};
use crate::scalar::Real;

/// Relative size of an imaginary eigenvalue part that counts as genuine.
pub const COMPLEX_SPECTRUM_TOL: f64 = 1e-8;
/// Negative eigenvalues above `-NEGATIVE_CLAMP_TOL · ‖ω‖²` are clamped to 0.
pub const NEGATIVE_CLAMP_TOL: f64 = 1e-9;
/// `w0` at or below this is treated as zero.
pub const DEGENERATE_W0: f64 = 1e-12;
/// Required relative gap `w0 - max(w1, w2, |w3|)` for a strict class.
pub const STRICT_GAP_TOL: f64 = 1e-8;
/// Unit-determinant tolerance for filters.
pub const UNIT_DET_TOL: f64 = 1e-10;
/// Tolerance on `L η Lᵀ = η` (relative to `max(1, max|L|²)`).
pub const LORENTZ_TOL: f64 = 1e-10;

/// Ordered signed Lorentz singular values `(w0, w1, w2, w3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzSV<T> {
    pub w: [T; 4],
}

impl<T: Real> LorentzSV<T> {
    /// Wraps values that already satisfy the ordering convention.
    pub fn new(w: [T; 4]) -> Self {
        Self { w }
    }

    pub fn w0(&self) -> T {
        self.w[0]
    }

    /// Largest spatial magnitude `max(w1, w2, |w3|)`.
    pub fn spatial_max(&self) -> T {
        self.w[1].abs().max(self.w[2].abs()).max(self.w[3].abs())
    }

    /// True when `w0 ≥ w1 ≥ w2 ≥ |w3|` and `w1, w2 ≥ 0`.
    pub fn is_ordered(&self) -> bool {
        let w = &self.w;
        w[0] >= w[1] && w[1] >= w[2] && w[2] >= w[3].abs() && w[2] >= T::zero()
    }

    /// Relative deviation from `other`, measured against `other.w0`.
    pub fn relative_deviation(&self, other: &Self) -> T {
        let s = other.w[0].abs().max(T::min_positive_value());
        (0..4)
            .map(|i| (self.w[i] - other.w[i]).abs())
            .fold(T::zero(), T::max)
            / s
    }
}

/// Class coordinates `(w1, w2, w3) / w0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SloccCoord<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> SloccCoord<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn from_array(a: [T; 3]) -> Self {
        Self {
            x: a[0],
            y: a[1],
            z: a[2],
        }
    }

    pub fn to_array(&self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, other: &Self) -> T {
        self.x * other.x + self.y * other.y + self.z * other.z
    }
}

/// Local filter `A ⊗ B` with `det A = det B = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalFilter<T> {
    a: CMat2<T>,
    b: CMat2<T>,
}

pub fn det2<T: Real>(m: &CMat2<T>) -> Complex<T> {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Adjugate of a 2×2 matrix; the inverse when the determinant is one.
pub fn adj2<T: Real>(m: &CMat2<T>) -> CMat2<T> {
    [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]]
}

fn check_unit_det<T: Real>(m: &CMat2<T>) -> Result<()> {
    let d = det2(m);
    let one = Complex::new(T::one(), T::zero());
    if !((d - one).norm() <= T::tol(UNIT_DET_TOL)) {
        return Err(Error::NotUnitDeterminant(format!("{} + {}i", d.re, d.im)));
    }
    Ok(())
}

impl<T: Real> LocalFilter<T> {
    pub fn new(a: CMat2<T>, b: CMat2<T>) -> Result<Self> {
        check_unit_det(&a)?;
        check_unit_det(&b)?;
        Ok(Self { a, b })
    }

    /// Rescales two invertible matrices to unit determinant.
    pub fn normalized(a: CMat2<T>, b: CMat2<T>) -> Result<Self> {
        let fix = |m: CMat2<T>| -> Result<CMat2<T>> {
            let d = det2(&m);
            if d.norm() == T::zero() {
                return Err(Error::NotUnitDeterminant("0".into()));
            }
            let s = d.sqrt().inv();
            Ok([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
        };
        Self::new(fix(a)?, fix(b)?)
    }

    pub fn identity() -> Self {
        Self {
            a: linalg::identity(),
            b: linalg::identity(),
        }
    }

    pub fn a(&self) -> &CMat2<T> {
        &self.a
    }

    pub fn b(&self) -> &CMat2<T> {
        &self.b
    }

    /// `M = A ⊗ B`.
    pub fn operator(&self) -> linalg::CMat4<T> {
        linalg::kron2(&self.a, &self.b)
    }

    /// `M⁻¹ = adj(A) ⊗ adj(B)`.
    pub fn inverse_operator(&self) -> linalg::CMat4<T> {
        linalg::kron2(&adj2(&self.a), &adj2(&self.b))
    }

    /// The filter `M⁻¹`.
    pub fn inverse(&self) -> Self {
        Self {
            a: adj2(&self.a),
            b: adj2(&self.b),
        }
    }

    /// The pair `(Λ_A, Λ_B)` acting on Pauli tensors of states.
    pub fn lorentz_pair(&self) -> (LorentzTransform<T>, LorentzTransform<T>) {
        (lorentz_from_unit(&self.a), lorentz_from_unit(&self.b))
    }
}

/// Proper orthochronous Lorentz transformation acting on coefficient vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzTransform<T> {
    l: Mat4<T>,
}

impl<T: Real> LorentzTransform<T> {
    /// Validates `L η Lᵀ = η`, `det L = 1` and `L₀₀ > 0`.
    pub fn new(l: Mat4<T>) -> Result<Self> {
        let eta = linalg::eta::<T>();
        let g = linalg::matmul_chain(&[&l, &eta, &linalg::transpose(&l)]);
        let scale = T::one().max(linalg::max_abs(&l).powi(2));
        let dev = linalg::max_abs(&linalg::sub(&g, &eta));
        if !(dev <= T::tol(LORENTZ_TOL) * scale) {
            return Err(Error::NotProperLorentz(format!(
                "|L η Lᵀ - η| = {:e}",
                dev.to_f64_lossy()
            )));
        }
        let d = linalg::det(&l);
        if d < T::zero() {
            return Err(Error::NotProperLorentz(format!("det L = {d}")));
        }
        if l[0][0] < T::zero() {
            return Err(Error::NotOrthochronous(l[0][0].to_f64_lossy()));
        }
        Ok(Self { l })
    }

    pub fn identity() -> Self {
        Self {
            l: linalg::identity(),
        }
    }

    pub fn matrix(&self) -> &Mat4<T> {
        &self.l
    }

    /// `L⁻¹ = η Lᵀ η`.
    pub fn inverse(&self) -> Self {
        let eta = linalg::eta::<T>();
        Self {
            l: linalg::matmul_chain(&[&eta, &linalg::transpose(&self.l), &eta]),
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            l: linalg::matmul(&self.l, &other.l),
        }
    }

    pub fn apply(&self, q: &[T; 4]) -> [T; 4] {
        linalg::matvec(&self.l, q)
    }

    /// Pure boost taking `e0` to the unit time-like future vector `v`.
    pub fn boost_to(v: &[T; 4]) -> Self {
        let mut l = [[T::zero(); 4]; 4];
        l[0][0] = v[0];
        for i in 1..4 {
            l[0][i] = v[i];
            l[i][0] = v[i];
            for j in 1..4 {
                let delta = if i == j { T::one() } else { T::zero() };
                l[i][j] = delta + v[i] * v[j] / (T::one() + v[0]);
            }
        }
        Self { l }
    }

    /// `diag(1, R)` for a rotation `R`.
    pub fn rotation(r: &Mat3<T>) -> Self {
        let mut l: Mat4<T> = linalg::identity();
        for i in 0..3 {
            for j in 0..3 {
                l[i + 1][j + 1] = r[i][j];
            }
        }
        Self { l }
    }
}

/// `Λ_A ω Λ_Bᵀ`.
pub fn transform_tensor<T: Real>(
    lambda_a: &LorentzTransform<T>,
    omega: &PauliTensor<T>,
    lambda_b: &LorentzTransform<T>,
) -> PauliTensor<T> {
    PauliTensor::new(linalg::matmul_chain(&[
        &lambda_a.l,
        &omega.omega,
        &linalg::transpose(&lambda_b.l),
    ]))
}

/// `ω* = η ωᵀ η`.
pub fn minkowski_adjoint<T: Real>(omega: &PauliTensor<T>) -> PauliTensor<T> {
    let eta = linalg::eta::<T>();
    PauliTensor::new(linalg::matmul_chain(&[
        &eta,
        &linalg::transpose(&omega.omega),
        &eta,
    ]))
}

/// `ω* ω`, whose spectrum is invariant under local filters.
pub fn minkowski_square<T: Real>(omega: &PauliTensor<T>) -> Mat4<T> {
    linalg::matmul(&minkowski_adjoint(omega).omega, &omega.omega)
}

/// Orders four nonnegative magnitudes and applies the determinant sign to the
/// smallest one.
pub fn order_singular_values<T: Real>(mut mags: [T; 4], det_sign: T) -> LorentzSV<T> {
    mags.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    if det_sign < T::zero() {
        mags[3] = -mags[3];
    }
    LorentzSV { w: mags }
}

/// Square roots of a spectrum after the complex/negative screening.
pub(crate) fn roots_of_spectrum<T: Real>(eig: &[Complex<T>; 4], scale: T) -> Result<[T; 4]> {
    let mut out = [T::zero(); 4];
    for (k, z) in eig.iter().enumerate() {
        if z.im.abs() > T::tol(COMPLEX_SPECTRUM_TOL) * scale {
            return Err(Error::ComplexSpectrum {
                imag: z.im.abs().to_f64_lossy(),
                scale: scale.to_f64_lossy(),
            });
        }
        if z.re < -T::tol(NEGATIVE_CLAMP_TOL) * scale {
            return Err(Error::NegativeSpectrum {
                value: z.re.to_f64_lossy(),
                scale: scale.to_f64_lossy(),
            });
        }
        out[k] = z.re.max(T::zero()).sqrt();
    }
    Ok(out)
}

/// Singular values from the spectrum of `ω*ω` alone. Small values lose
/// accuracy to the square root when `ω` is far from canonical.
fn spectral_singular_values<T: Real>(omega: &PauliTensor<T>) -> Result<LorentzSV<T>> {
    let norm = linalg::frobenius(&omega.omega);
    if norm == T::zero() {
        return Ok(LorentzSV { w: [T::zero(); 4] });
    }
    let scale = norm * norm;
    let eig = eigen::eigenvalues(&minkowski_square(omega)).map_err(|_| Error::NoConvergence)?;
    let mags = roots_of_spectrum(&eig, scale)?;
    let d = linalg::det(&omega.omega);
    Ok(order_singular_values(mags, d))
}

fn is_strict<T: Real>(sv: &LorentzSV<T>) -> bool {
    let w0 = sv.w[0];
    w0 > sv.spatial_max() + T::tol(STRICT_GAP_TOL) * w0 && w0 > T::tol(DEGENERATE_W0)
}

/// Lorentz singular values of `ω`.
///
/// The spectrum of `ω*ω` screens out complex and negative cases. For strict
/// classes the values are then recomputed in the canonical frame, where
/// the spatial ones come from an ordinary SVD and keep full accuracy.
pub fn lorentz_singular_values<T: Real>(omega: &PauliTensor<T>) -> Result<LorentzSV<T>> {
    let sv = spectral_singular_values(omega)?;
    if !is_strict(&sv) {
        return Ok(sv);
    }
    Ok(refined_singular_values(omega, &sv).unwrap_or(sv))
}

fn refined_singular_values<T: Real>(
    omega: &PauliTensor<T>,
    sv: &LorentzSV<T>,
) -> Option<LorentzSV<T>> {
    let first = PauliTensor::new(boost_to_canonical(omega, sv).ok()?.2);
    // a second pass removes what the first left of the time-space coupling
    let sv1 = spectral_singular_values(&first).ok()?;
    let (_, _, reduced) = boost_to_canonical(&first, &sv1).ok()?;
    let w0 = reduced[0][0];
    let s = linalg::svd3(&pauli::spatial_block(&PauliTensor::new(reduced))).s;
    let refined = order_singular_values([w0, s[0], s[1], s[2]], linalg::det(&omega.omega));
    (refined.w[0] == w0 && is_strict(&refined)).then_some(refined)
}

/// Class coordinates of ordered singular values.
pub fn slocc_coord<T: Real>(sv: &LorentzSV<T>) -> Result<SloccCoord<T>> {
    let w0 = sv.w[0];
    if !(w0 > T::tol(DEGENERATE_W0)) {
        return Err(Error::DegenerateClass(w0.to_f64_lossy()));
    }
    Ok(SloccCoord {
        x: sv.w[1] / w0,
        y: sv.w[2] / w0,
        z: sv.w[3] / w0,
    })
}

/// The 24 images of a coordinate under permutations and paired sign flips,
/// with duplicates removed.
pub fn tetrahedral_orbit<T: Real>(c: &SloccCoord<T>) -> Vec<SloccCoord<T>> {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let signs = [
        [1.0, 1.0, 1.0],
        [-1.0, -1.0, 1.0],
        [-1.0, 1.0, -1.0],
        [1.0, -1.0, -1.0],
    ];
    let v = c.to_array();
    let mut out: Vec<SloccCoord<T>> = Vec::with_capacity(24);
    for p in PERMS {
        for s in signs {
            let img = [0, 1, 2].map(|i| {
                let x = v[p[i]] * T::lit(s[i]);
                // fold -0 onto +0 so that duplicates compare equal
                if x == T::zero() {
                    T::zero()
                } else {
                    x
                }
            });
            let cand = SloccCoord::from_array(img);
            if !out.contains(&cand) {
                out.push(cand);
            }
        }
    }
    out
}

/// `ρ ↦ M ρ M†`.
pub fn apply_filter_state<T: Real>(rho: &HermitianOp<T>, f: &LocalFilter<T>) -> HermitianOp<T> {
    let m = f.operator();
    let out = linalg::matmul_chain(&[&m, rho.matrix(), &linalg::dagger(&m)]);
    HermitianOp::hermitian_part(&out)
}

/// `W ↦ (M†)⁻¹ W M⁻¹`.
pub fn apply_filter_witness<T: Real>(w: &HermitianOp<T>, f: &LocalFilter<T>) -> HermitianOp<T> {
    let minv = f.inverse_operator();
    let out = linalg::matmul_chain(&[&linalg::dagger(&minv), w.matrix(), &minv]);
    HermitianOp::hermitian_part(&out)
}

/// Operator norm of a 2×2 complex matrix.
pub fn spectral_norm2<T: Real>(m: &CMat2<T>) -> T {
    let h = linalg::matmul(&linalg::dagger(m), m);
    let tr = h[0][0].re + h[1][1].re;
    let d = det2(m).norm_sqr();
    let disc = (tr * tr - T::lit(4.0) * d).max(T::zero()).sqrt();
    ((tr + disc) * T::lit(0.5)).sqrt()
}

/// Tolerance for the normalized-state precondition.
pub const STATE_TOL: f64 = 1e-10;

pub(crate) fn check_normalized_state<T: Real>(rho: &HermitianOp<T>) -> Result<()> {
    let tr = rho.trace();
    if !((tr - T::one()).abs() <= T::tol(STATE_TOL)) {
        return Err(Error::NotAState(format!("trace {tr} differs from 1")));
    }
    let ev = rho.eigenvalues();
    let scale = ev.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    if ev[0] < -T::tol(STATE_TOL) * scale {
        return Err(Error::NotAState(format!("negative eigenvalue {}", ev[0])));
    }
    Ok(())
}

/// Success probability `Tr(ρ M†M) / ‖M‖²` of the filter on a normalised state.
pub fn filter_success_probability<T: Real>(rho: &HermitianOp<T>, f: &LocalFilter<T>) -> Result<T> {
    check_normalized_state(rho)?;
    let m = f.operator();
    let mdm = HermitianOp::hermitian_part(&linalg::matmul(&linalg::dagger(&m), &m));
    let n2 = (spectral_norm2(&f.a) * spectral_norm2(&f.b)).powi(2);
    Ok(rho.pairing(&mdm) / n2)
}

/// `Λ^ν_μ = ½ Re Tr(σ^ν A σ^μ A†)` without the determinant check.
fn lorentz_from_unit<T: Real>(a: &CMat2<T>) -> LorentzTransform<T> {
    let ad = linalg::dagger(a);
    let mut l = [[T::zero(); 4]; 4];
    for mu in 0..4 {
        let img = linalg::matmul_chain(&[a, &pauli::sigma::<T>(mu), &ad]);
        for (nu, row) in l.iter_mut().enumerate() {
            let s = pauli::sigma::<T>(nu);
            let tr = s[0][0] * img[0][0]
                + s[0][1] * img[1][0]
                + s[1][0] * img[0][1]
                + s[1][1] * img[1][1];
            row[mu] = tr.re * T::lit(0.5);
        }
    }
    LorentzTransform { l }
}

/// Image of `A ∈ SL(2, C)` in `SO⁺(1, 3)`: `A (q·σ) A† = (Λ q)·σ`.
pub fn lorentz_from_sl2c<T: Real>(a: &CMat2<T>) -> Result<LorentzTransform<T>> {
    check_unit_det(a)?;
    Ok(lorentz_from_unit(a))
}

/// Picks the sign of `±A` so that the entry of largest modulus has
/// nonnegative real part (ties: nonnegative imaginary part).
fn canonical_sign<T: Real>(a: CMat2<T>) -> CMat2<T> {
    let entries = [a[0][0], a[0][1], a[1][0], a[1][1]];
    let big = entries.iter().fold(T::zero(), |m, z| m.max(z.norm()));
    let tie = big * T::tol(1e-12);
    let lead = entries
        .iter()
        .find(|z| z.norm() >= big - tie)
        .copied()
        .unwrap_or(entries[0]);
    let flip = if lead.re.abs() > tie {
        lead.re < T::zero()
    } else {
        lead.im < T::zero()
    };
    if flip {
        [[-a[0][0], -a[0][1]], [-a[1][0], -a[1][1]]]
    } else {
        a
    }
}

/// Preimage of a proper orthochronous Lorentz transformation in `SL(2, C)`,
/// with the overall sign fixed by [`canonical_sign`].
pub fn sl2c_from_lorentz<T: Real>(l: &Mat4<T>) -> Result<CMat2<T>> {
    let lt = LorentzTransform::new(*l)?;
    // Σ_{μν} Λ_{νμ} σ^ν X σ^μ = 2 Tr(A† X) A for every X; try X = σ^κ.
    let mut best: Option<(T, CMat2<T>)> = None;
    for kappa in 0..4 {
        let x = pauli::sigma::<T>(kappa);
        let mut m: CMat2<T> = linalg::zeros();
        for mu in 0..4 {
            for nu in 0..4 {
                let c = l[nu][mu];
                if c == T::zero() {
                    continue;
                }
                let term =
                    linalg::matmul_chain(&[&pauli::sigma::<T>(nu), &x, &pauli::sigma::<T>(mu)]);
                for i in 0..2 {
                    for j in 0..2 {
                        m[i][j] += term[i][j] * c;
                    }
                }
            }
        }
        let n = m
            .iter()
            .flatten()
            .fold(T::zero(), |acc, z| acc.max(z.norm()));
        if best.as_ref().is_none_or(|(bn, _)| n > *bn) {
            best = Some((n, m));
        }
    }
    let (_, m) = best.expect("four candidates");
    let d = det2(&m);
    if d.norm() == T::zero() {
        return Err(Error::NotProperLorentz("degenerate spinor preimage".into()));
    }
    let s = d.sqrt().inv();
    let a = canonical_sign([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]]);
    let back = lorentz_from_unit(&a);
    let scale = T::one().max(linalg::max_abs(l));
    let dev = linalg::max_abs(&linalg::sub(&back.l, &lt.l));
    if !(dev <= T::tol(1e-8) * scale * scale) {
        return Err(Error::NotProperLorentz(format!(
            "spinor preimage mismatch {:e}",
            dev.to_f64_lossy()
        )));
    }
    Ok(a)
}

/// Lorentz singular value decomposition `Λ_A ω Λ_Bᵀ = diag(sv)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzSvd<T> {
    pub lambda_a: LorentzTransform<T>,
    pub sv: LorentzSV<T>,
    pub lambda_b: LorentzTransform<T>,
}

impl<T: Real> LorentzSvd<T> {
    /// `Λ_A ω Λ_Bᵀ`, diagonal up to rounding.
    pub fn diagonalized(&self, omega: &PauliTensor<T>) -> PauliTensor<T> {
        transform_tensor(&self.lambda_a, omega, &self.lambda_b)
    }

    /// The local filter realising the decomposition on states.
    pub fn filter(&self) -> Result<LocalFilter<T>> {
        LocalFilter::new(
            sl2c_from_lorentz(&self.lambda_a.l)?,
            sl2c_from_lorentz(&self.lambda_b.l)?,
        )
    }
}

/// Boosts `Bu⁻¹`, `Bv` taking the time-like singular vectors `v0` of `ω*ω`
/// and `u0 ∝ ω v0` to the time axis, with `Bu⁻¹ ω Bv`.
fn boost_to_canonical<T: Real>(
    omega: &PauliTensor<T>,
    sv: &LorentzSV<T>,
) -> Result<(LorentzTransform<T>, LorentzTransform<T>, Mat4<T>)> {
    let w0 = sv.w[0];
    let boundary = || Error::BoundaryClass {
        w0: w0.to_f64_lossy(),
        spatial: sv.spatial_max().to_f64_lossy(),
    };
    let n = minkowski_square(omega);
    let mut v0 = eigen::inverse_iteration(&n, w0 * w0, [T::one(), T::zero(), T::zero(), T::zero()])
        .ok_or_else(boundary)?;
    let vv = linalg::minkowski(&v0, &v0);
    if !(vv > T::zero()) {
        return Err(boundary());
    }
    let sgn = if v0[0] < T::zero() {
        -T::one()
    } else {
        T::one()
    };
    v0 = v0.map(|x| x * sgn / vv.sqrt());

    let mut u0 = linalg::matvec(&omega.omega, &v0);
    let uu = linalg::minkowski(&u0, &u0);
    if !(uu > T::zero()) {
        return Err(boundary());
    }
    if u0[0] < T::zero() {
        return Err(Error::NotAWitness);
    }
    u0 = u0.map(|x| x / uu.sqrt());

    let bv = LorentzTransform::boost_to(&v0);
    let bu_inv = LorentzTransform::boost_to(&u0).inverse();
    let reduced = linalg::matmul_chain(&[&bu_inv.l, &omega.omega, &bv.l]);
    Ok((bu_inv, bv, reduced))
}

/// Brings a strict potential witness (or state) to its diagonal canonical form.
///
/// The time-like eigenvector `v0` of `ω*ω` and its image `u0 = ω v0 / w0`
/// are boosted to the time axis; the remaining spatial 3×3 block is then
/// diagonalised by an ordinary rotation SVD. The spatial eigen-frames are
/// therefore fixed by the SVD (with both rotations proper, the sign of the
/// last singular value absorbing any reflection), which keeps degenerate
/// spatial values well defined.
pub fn lorentz_svd<T: Real>(omega: &PauliTensor<T>) -> Result<LorentzSvd<T>> {
    let sv = lorentz_singular_values(omega)?;
    if !is_strict(&sv) {
        return Err(Error::BoundaryClass {
            w0: sv.w[0].to_f64_lossy(),
            spatial: sv.spatial_max().to_f64_lossy(),
        });
    }
    let (bu_inv, bv, reduced) = boost_to_canonical(omega, &sv)?;
    let block = pauli::spatial_block(&PauliTensor::new(reduced));
    let d = linalg::svd3(&block);
    let (mut p, mut q) = (d.u, d.v);
    let mut s = d.s;
    if linalg::det(&p) < T::zero() {
        for row in p.iter_mut() {
            row[2] = -row[2];
        }
        s[2] = -s[2];
    }
    if linalg::det(&q) < T::zero() {
        for row in q.iter_mut() {
            row[2] = -row[2];
        }
        s[2] = -s[2];
    }
    let lambda_a = LorentzTransform::rotation(&linalg::transpose(&p)).compose(&bu_inv);
    // boosts are symmetric, so Bvᵀ = Bv
    let lambda_b = LorentzTransform::rotation(&linalg::transpose(&q)).compose(&bv);
    let diag = transform_tensor(&lambda_a, omega, &lambda_b);
    let w = [diag.omega[0][0], s[0], s[1], s[2]];
    Ok(LorentzSvd {
        lambda_a,
        sv: LorentzSV { w },
        lambda_b,
    })
}

/// Canonical frame for the maximally entangled class, where `ω*ω = w0² I`
/// and [`lorentz_svd`] reports a boundary class.
///
/// Here `ω η / w0` is itself proper orthochronous, so `ω = w0 L η` and
/// `Λ_A = R_z(π) L⁻¹`, `Λ_B = I` give `diag(w0, w0, w0, −w0)`.
pub fn maximal_class_svd<T: Real>(omega: &PauliTensor<T>) -> Result<LorentzSvd<T>> {
    let sv = lorentz_singular_values(omega)?;
    let w0 = sv.w[0];
    let boundary = || Error::BoundaryClass {
        w0: w0.to_f64_lossy(),
        spatial: sv.spatial_max().to_f64_lossy(),
    };
    if !(w0 > T::tol(DEGENERATE_W0)) {
        return Err(boundary());
    }
    let n = minkowski_square(omega);
    let w2: Mat4<T> = linalg::scale(&linalg::identity(), w0 * w0);
    if !(linalg::max_abs(&linalg::sub(&n, &w2)) <= T::tol(1e-8) * w0 * w0) {
        return Err(boundary());
    }
    let eta = linalg::eta::<T>();
    let l = LorentzTransform::new(linalg::scale(
        &linalg::matmul(&omega.omega, &eta),
        w0.recip(),
    ))
    .map_err(|_| boundary())?;
    let rz = LorentzTransform {
        l: linalg::diag([T::one(), -T::one(), -T::one(), T::one()]),
    };
    let lambda_a = rz.compose(&l.inverse());
    let lambda_b = LorentzTransform::identity();
    Ok(LorentzSvd {
        lambda_a,
        sv: LorentzSV {
            w: [w0, w0, w0, -w0],
        },
        lambda_b,
    })
}

/// `Σ w_α σ^α ⊗ σ^α`.
pub fn canonical_form<T: Real>(sv: &LorentzSV<T>) -> HermitianOp<T> {
    pauli::to_hermitian(&PauliTensor::diagonal(sv.w))
}
