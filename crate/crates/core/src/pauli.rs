//! Pauli-tensor representation of two-qubit operators.
//!
//! A Hermitian 4×4 operator is written `W = Σ ω[μ][ν] σ^μ ⊗ σ^ν` with
//! `σ^0 = I`, the standard Pauli matrices `σ^1..σ^3` (`σ^2 = [[0, -i], [i, 0]]`),
//! the first factor belonging to Alice and the second to Bob. Since
//! `Tr(σ^μ σ^ν) = 2 δ^{μν}` the coefficients are recovered by
//! `ω[μ][ν] = Tr(W (σ^μ ⊗ σ^ν)) / 4`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{self, CMat2, CMat4, Mat3, Mat4};
use crate::scalar::Real;

/// Entrywise Hermiticity tolerance (absolute).
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Largest imaginary part tolerated in a Pauli coefficient, relative to
/// `max(1, max |W_ij|)`.
pub const IMAG_RESIDUE_TOL: f64 = 1e-10;

/// `σ^μ` for `μ ∈ {0, 1, 2, 3}`.
pub fn sigma<T: Real>(mu: usize) -> CMat2<T> {
    let o = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    match mu {
        0 => [[one, o], [o, one]],
        1 => [[o, one], [one, o]],
        2 => [[o, -i], [i, o]],
        3 => [[one, o], [o, -one]],
        _ => panic!("Pauli index {mu} out of range"),
    }
}

/// `σ^μ ⊗ σ^ν`.
pub fn sigma2<T: Real>(mu: usize, nu: usize) -> CMat4<T> {
    linalg::kron2(&sigma(mu), &sigma(nu))
}

/// `q_μ σ^μ` for a real four-vector or `Σ_j v_j σ^j` for a spatial vector.
pub fn sigma_dot<T: Real>(q: &[T; 4]) -> CMat2<T> {
    let mut out: CMat2<T> = linalg::zeros();
    for (mu, &c) in q.iter().enumerate() {
        let s = sigma::<T>(mu);
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] += s[i][j] * c;
            }
        }
    }
    out
}

/// A 4×4 complex Hermitian matrix: a state, an observable or a witness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianOp<T> {
    m: CMat4<T>,
}

impl<T: Real> HermitianOp<T> {
    /// Validates Hermiticity within [`HERMITIAN_TOL`] and stores the matrix.
    pub fn new(m: CMat4<T>) -> Result<Self> {
        let tol = T::tol(HERMITIAN_TOL);
        for i in 0..4 {
            for j in i..4 {
                let dev = (m[i][j] - m[j][i].conj()).norm();
                if !(dev <= tol) {
                    return Err(Error::NotHermitian {
                        row: i,
                        col: j,
                        deviation: dev.to_f64_lossy(),
                    });
                }
            }
        }
        Ok(Self { m })
    }

    /// Projects an arbitrary matrix onto its Hermitian part `(X + X†)/2`.
    /// Used for results of products that are Hermitian up to rounding.
    pub fn hermitian_part(m: &CMat4<T>) -> Self {
        let d = linalg::dagger(m);
        let half = Complex::new(T::lit(0.5), T::zero());
        Self {
            m: linalg::scale(&linalg::add(m, &d), half),
        }
    }

    pub fn from_real(m: &Mat4<T>) -> Result<Self> {
        Self::new(linalg::to_complex(m))
    }

    pub fn identity() -> Self {
        Self {
            m: linalg::identity(),
        }
    }

    pub fn zero() -> Self {
        Self { m: linalg::zeros() }
    }

    /// Projector `|ψ⟩⟨ψ|` (not normalised).
    pub fn projector(psi: &[Complex<T>; 4]) -> Self {
        let mut m: CMat4<T> = linalg::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = psi[i] * psi[j].conj();
            }
        }
        Self::hermitian_part(&m)
    }

    pub fn matrix(&self) -> &CMat4<T> {
        &self.m
    }

    pub fn trace(&self) -> T {
        (0..4).map(|i| self.m[i][i].re).sum()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [T; 4] {
        linalg::hermitian_eigenvalues(&self.m)
    }

    pub fn scaled(&self, s: T) -> Self {
        Self {
            m: linalg::scale(&self.m, Complex::new(s, T::zero())),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self {
            m: linalg::add(&self.m, &other.m),
        }
    }

    /// `Re Tr(self · other)`; real for Hermitian arguments.
    pub fn pairing(&self, other: &Self) -> T {
        let mut s = T::zero();
        for i in 0..4 {
            for k in 0..4 {
                s += (self.m[i][k] * other.m[k][i]).re;
            }
        }
        s
    }

    /// Largest entrywise deviation from `other`.
    pub fn max_deviation(&self, other: &Self) -> T {
        linalg::max_abs_c(&linalg::sub(&self.m, &other.m))
    }

    pub fn max_abs(&self) -> T {
        linalg::max_abs_c(&self.m)
    }
}

/// Real coefficient tensor `ω` of a two-qubit operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliTensor<T> {
    pub omega: Mat4<T>,
}

impl<T: Real> PauliTensor<T> {
    pub fn new(omega: Mat4<T>) -> Self {
        Self { omega }
    }

    pub fn diagonal(d: [T; 4]) -> Self {
        Self {
            omega: linalg::diag(d),
        }
    }

    pub fn get(&self, mu: usize, nu: usize) -> T {
        self.omega[mu][nu]
    }

    /// Transposition on Bob's factor: flips the sign of the `ν = 2` column.
    pub fn partial_transpose(&self) -> Self {
        let mut omega = self.omega;
        for row in omega.iter_mut() {
            row[2] = -row[2];
        }
        Self { omega }
    }

    /// `(1/4) Tr(W)`-normalised copy (`ω₀₀ = 1`); `None` when `ω₀₀ = 0`.
    pub fn normalized(&self) -> Option<Self> {
        let w00 = self.omega[0][0];
        if w00 == T::zero() {
            return None;
        }
        Some(Self {
            omega: linalg::scale(&self.omega, T::one() / w00),
        })
    }

    pub fn max_abs(&self) -> T {
        linalg::max_abs(&self.omega)
    }
}

/// Real four-vector `q` of a single-qubit operator `Q = q_μ σ^μ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVector<T>(pub [T; 4]);

impl<T: Real> FourVector<T> {
    pub fn new(q0: T, q1: T, q2: T, q3: T) -> Self {
        Self([q0, q1, q2, q3])
    }

    /// Minkowski square `q_μ q^μ = det Q`.
    pub fn interval(&self) -> T {
        linalg::minkowski(&self.0, &self.0)
    }

    /// Closed forward light-cone test with relative tolerance `tol`.
    pub fn in_forward_cone(&self, tol: T) -> bool {
        let q0 = self.0[0];
        let spatial =
            (self.0[1] * self.0[1] + self.0[2] * self.0[2] + self.0[3] * self.0[3]).sqrt();
        q0 >= T::zero() && q0 - spatial >= -tol * q0.max(spatial)
    }

    /// Single-qubit operator `q_μ σ^μ`.
    pub fn operator(&self) -> CMat2<T> {
        sigma_dot(&self.0)
    }
}

/// Pauli coefficients of a Hermitian operator.
pub fn from_hermitian<T: Real>(w: &HermitianOp<T>) -> Result<PauliTensor<T>> {
    let quarter = T::lit(0.25);
    let tol = T::tol(IMAG_RESIDUE_TOL) * T::one().max(w.max_abs());
    let mut omega = [[T::zero(); 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            let s = sigma2::<T>(mu, nu);
            let mut tr = Complex::new(T::zero(), T::zero());
            for i in 0..4 {
                for k in 0..4 {
                    tr += w.m[i][k] * s[k][i];
                }
            }
            if tr.im.abs() * quarter > tol {
                return Err(Error::ImaginaryResidue {
                    mu,
                    nu,
                    residue: (tr.im * quarter).to_f64_lossy(),
                });
            }
            omega[mu][nu] = tr.re * quarter;
        }
    }
    Ok(PauliTensor { omega })
}

/// `Σ ω[μ][ν] σ^μ ⊗ σ^ν`.
pub fn to_hermitian<T: Real>(omega: &PauliTensor<T>) -> HermitianOp<T> {
    let mut m: CMat4<T> = linalg::zeros();
    for mu in 0..4 {
        for nu in 0..4 {
            let c = omega.omega[mu][nu];
            if c == T::zero() {
                continue;
            }
            let s = sigma2::<T>(mu, nu);
            for i in 0..4 {
                for j in 0..4 {
                    m[i][j] += s[i][j] * c;
                }
            }
        }
    }
    HermitianOp { m }
}

/// Transposition on the second (Bob's) tensor factor.
pub fn partial_transpose<T: Real>(w: &HermitianOp<T>) -> HermitianOp<T> {
    let mut m = w.m;
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    m[2 * a + b][2 * c + d] = w.m[2 * a + d][2 * c + b];
                }
            }
        }
    }
    HermitianOp { m }
}

/// `(q_a · σ) ⊗ (q_b · σ)` for two vectors in the closed forward light-cone.
pub fn product_state<T: Real>(q_a: &FourVector<T>, q_b: &FourVector<T>) -> Result<HermitianOp<T>> {
    let tol = T::tol(1e-12);
    for q in [q_a, q_b] {
        if !q.in_forward_cone(tol) {
            return Err(Error::NotInLightCone(q.0.map(|x| x.to_f64_lossy())));
        }
    }
    Ok(HermitianOp::hermitian_part(&linalg::kron2(
        &q_a.operator(),
        &q_b.operator(),
    )))
}

/// The spatial `i, j ∈ {1, 2, 3}` block of `ω`.
pub fn spatial_block<T: Real>(omega: &PauliTensor<T>) -> Mat3<T> {
    let mut out = [[T::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = omega.omega[i + 1][j + 1];
        }
    }
    out
}

/// The four Bell states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellState {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellState {
    pub fn amplitudes<T: Real>(self) -> [Complex<T>; 4] {
        let h = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
        let o = Complex::new(T::zero(), T::zero());
        match self {
            BellState::PhiPlus => [h, o, o, h],
            BellState::PhiMinus => [h, o, o, -h],
            BellState::PsiPlus => [o, h, h, o],
            BellState::PsiMinus => [o, h, -h, o],
        }
    }

    pub fn projector<T: Real>(self) -> HermitianOp<T> {
        HermitianOp::projector(&self.amplitudes())
    }
}

/// `|ψ⁻⟩⟨ψ⁻|`.
pub fn singlet<T: Real>() -> HermitianOp<T> {
    BellState::PsiMinus.projector()
}

/// `I ⊗ I / 4`.
pub fn maximally_mixed<T: Real>() -> HermitianOp<T> {
    HermitianOp::identity().scaled(T::lit(0.25))
}

/// Werner state `p |ψ⁻⟩⟨ψ⁻| + (1 - p) I/4`.
pub fn werner<T: Real>(p: T) -> HermitianOp<T> {
    singlet()
        .scaled(p)
        .plus(&maximally_mixed().scaled(T::one() - p))
}
