use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(
        "operator is not Hermitian: |W[{row}][{col}] - conj(W[{col}][{row}])| = {deviation:e}"
    )]
    NotHermitian {
        row: usize,
        col: usize,
        deviation: f64,
    },

    #[error("Pauli coefficient has imaginary residue {residue:e} at ({mu}, {nu})")]
    ImaginaryResidue { mu: usize, nu: usize, residue: f64 },

    #[error("four-vector {0:?} is outside the closed forward light-cone")]
    NotInLightCone([f64; 4]),

    #[error("spectrum of the Minkowski product is complex (|Im λ| = {imag:e} at scale {scale:e})")]
    ComplexSpectrum { imag: f64, scale: f64 },

    #[error(
        "spectrum of the Minkowski product has a negative eigenvalue {value:e} at scale {scale:e}"
    )]
    NegativeSpectrum { value: f64, scale: f64 },

    #[error("leading Lorentz singular value {0:e} vanishes; class coordinates undefined")]
    DegenerateClass(f64),

    #[error(
        "boundary class: leading Lorentz singular value {w0:e} is not separated from {spatial:e}"
    )]
    BoundaryClass { w0: f64, spatial: f64 },

    #[error("operator does not map the forward light-cone into itself")]
    NotAWitness,

    #[error("matrix determinant {0} differs from 1")]
    NotUnitDeterminant(String),

    #[error("Lorentz transformation is not orthochronous (L00 = {0})")]
    NotOrthochronous(f64),

    #[error("matrix is not a proper Lorentz transformation: {0}")]
    NotProperLorentz(String),

    #[error("operator is not a normalized state: {0}")]
    NotAState(String),

    #[error("direction {0:?} is not a unit vector")]
    NotUnitVector([f64; 3]),

    #[error("class lies inside the three cylinders (margin {0:e}); no violating filter exists")]
    NotOutsideCylinders(f64),

    #[error("eigenvalue iteration did not converge")]
    NoConvergence,

    #[error("malformed operator file: {0}")]
    Parse(String),
}
