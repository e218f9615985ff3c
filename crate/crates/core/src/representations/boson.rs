use num_complex::Complex;

use super::adjoint;
use crate::matrix::OperatorMatrix;
use crate::scalar::{real, Real};

/// Truncated boson ladder on `|0>, ..., |nmax>`.
#[derive(Debug, Clone)]
pub struct BosonOps<T: Real> {
    pub lower: OperatorMatrix<T>,
    pub raise: OperatorMatrix<T>,
    pub number: OperatorMatrix<T>,
}

/// `b+|n> = sqrt(n+1)|n+1>` below the cutoff, `b+|nmax> = 0`, `b- = (b+)†`.
pub fn boson_ops<T: Real>(nmax: usize) -> BosonOps<T> {
    let dim = nmax + 1;
    let raise = OperatorMatrix::from_entries(
        dim,
        (0..nmax).map(|n| (n + 1, n, real(T::from_count(n + 1).sqrt()))),
    )
    .labeled("b+");
    let lower = adjoint(&raise).labeled("b-");
    let number = OperatorMatrix::from_diagonal((0..dim).map(|n| Complex::new(T::from_count(n), T::zero())))
        .labeled("Nb");
    BosonOps { lower, raise, number }
}
