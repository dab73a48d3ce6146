//! Two-qubit states and entanglement witnesses up to local filtering
//! (SLOCC), seen through the Lorentz group acting on Pauli tensors.
//!
//! Every numerical routine is generic over [`scalar::Real`], which is
//! implemented for `f32` and `f64`. The aliases below fix the scalar.

// Matrix code reads better with explicit indices, and `!(a < b)` is the
// NaN-rejecting form used throughout.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod chsh;
pub mod classify;
pub mod eigen;
pub mod error;
pub mod geometry;
pub mod i3322;
pub mod io;
pub mod linalg;
pub mod lorentz;
pub mod optim;
pub mod pauli;
pub mod sampling;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

pub type HermitianOpF64 = pauli::HermitianOp<f64>;
pub type HermitianOpF32 = pauli::HermitianOp<f32>;
pub type PauliTensorF64 = pauli::PauliTensor<f64>;
pub type PauliTensorF32 = pauli::PauliTensor<f32>;
pub type LorentzSVF64 = lorentz::LorentzSV<f64>;
pub type LorentzSVF32 = lorentz::LorentzSV<f32>;
pub type SloccCoordF64 = lorentz::SloccCoord<f64>;
pub type SloccCoordF32 = lorentz::SloccCoord<f32>;
pub type LocalFilterF64 = lorentz::LocalFilter<f64>;
pub type LocalFilterF32 = lorentz::LocalFilter<f32>;
pub type LorentzTransformF64 = lorentz::LorentzTransform<f64>;
pub type LorentzTransformF32 = lorentz::LorentzTransform<f32>;
pub type ChshDirectionsF64 = chsh::ChshDirections<f64>;
pub type ChshDirectionsF32 = chsh::ChshDirections<f32>;
pub type TripleDirectionsF64 = i3322::TripleDirections<f64>;
pub type TripleDirectionsF32 = i3322::TripleDirections<f32>;
