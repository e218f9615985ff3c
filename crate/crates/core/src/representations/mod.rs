//! Concrete matrices for the boson, k-fermion, quon and U_q(sl_2) generators.

mod boson;
mod kfermion;
mod quon;
mod uqsl2;

pub use boson::{boson_ops, BosonOps};
pub use kfermion::{kfermion_ops, KFermionOps};
pub use quon::{quon_ops, QuonOps};
pub use uqsl2::{uqsl2_ops, uqsl2_ops_twice_spin, UqSl2Ops};

use crate::matrix::OperatorMatrix;
use crate::scalar::Real;

/// Conjugate transpose.
pub(crate) fn adjoint<T: Real>(m: &OperatorMatrix<T>) -> OperatorMatrix<T> {
    OperatorMatrix::from_fn(m.dim(), |(i, j)| m.get(j, i).conj())
}

pub(crate) fn transpose<T: Real>(m: &OperatorMatrix<T>) -> OperatorMatrix<T> {
    OperatorMatrix::from_fn(m.dim(), |(i, j)| m.get(j, i))
}
