//! Explicit matrix representations of the fractional supersymmetric
//! oscillator (quon ⊗ k-fermion, generalized Weyl–Heisenberg and
//! `U_q(sl_2)` constructions), a small relation language to check their
//! identities on truncated Fock spaces, and spectrum / coherent-state tools.
//!
//! Everything is generic over the real scalar type (`f32` or `f64`); the
//! `*64` aliases below fix it to double precision.

pub mod basis;
pub mod constructions;
pub mod error;
pub mod matrix;
pub mod qarith;
pub mod representations;
pub mod scalar;
pub mod spectra;
pub mod verifier;

pub use basis::{GradedBasis, InteriorMask};
pub use error::{Error, Result};
pub use matrix::{relation_residual, tensor_embed, MatrixJson, OperatorMatrix};
pub use qarith::{q_factorial, q_number, root_of_unity, GradingParams};
pub use scalar::Real;
pub use spectra::{degeneracy_pattern, fractional_supercoherent_coeffs, q_coherent_coeffs, spectrum, SpectrumReport};

pub type C64 = num_complex::Complex<f64>;
pub type Grading64 = GradingParams<f64>;
pub type Operator64 = OperatorMatrix<f64>;
pub type Projectors64 = constructions::ProjectorFamily<f64>;
pub type Structure64 = constructions::Structure<f64>;
pub type System64 = constructions::SusySystem<f64>;
