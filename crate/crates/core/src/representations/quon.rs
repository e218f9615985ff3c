use super::adjoint;
use crate::error::{Error, Result};
use crate::matrix::OperatorMatrix;
use crate::qarith::q_number_real;
use crate::scalar::{real, Real};

#[derive(Debug, Clone)]
pub struct QuonOps<T: Real> {
    pub lower: OperatorMatrix<T>,
    pub raise: OperatorMatrix<T>,
    pub number: OperatorMatrix<T>,
    pub deformation: T,
}

/// `a+|n> = sqrt([n+1]_Q)|n+1>` truncated at `nmax`, `a- = (a+)†`.
pub fn quon_ops<T: Real>(deformation: T, nmax: usize) -> Result<QuonOps<T>> {
    if deformation == T::zero() || !deformation.is_finite() {
        return Err(Error::InvalidDeformation(deformation.to_f64_lossy()));
    }
    let mut items = Vec::with_capacity(nmax);
    for n in 0..nmax {
        let w = q_number_real(n + 1, deformation);
        if w < T::zero() {
            return Err(Error::RepresentationBreakdown {
                level: n + 1,
                detail: format!("[{}]_Q = {} is negative", n + 1, w),
            });
        }
        items.push((n + 1, n, real(w.sqrt())));
    }
    let raise = OperatorMatrix::from_entries(nmax + 1, items).labeled("a+");
    let lower = adjoint(&raise).labeled("a-");
    let number = OperatorMatrix::from_diagonal((0..=nmax).map(|n| real(T::from_count(n)))).labeled("N");
    Ok(QuonOps {
        lower,
        raise,
        number,
        deformation,
    })
}
