use num_complex::Complex;
use num_traits::One;

use crate::matrix::OperatorMatrix;
use crate::qarith::GradingParams;
use crate::scalar::Real;

/// k-fermion operators on the exactly `k`-dimensional space `|0>, ..., |k-1>`.
#[derive(Debug, Clone)]
pub struct KFermionOps<T: Real> {
    pub lower: OperatorMatrix<T>,
    pub raise: OperatorMatrix<T>,
    pub number: OperatorMatrix<T>,
    /// `K = f- f+ - f+ f-`, diagonal with entries `q^s`.
    pub grading: OperatorMatrix<T>,
}

/// Asymmetric gauge: `f+|s> = |s+1>`, `f-|s> = [s]_q |s-1>`. Both
/// `f- f+ - q f+ f- = 1` and `(f±)^k = 0` hold without truncation defects;
/// `f+` and `f-` are not mutually adjoint once `k >= 3`.
pub fn kfermion_ops<T: Real>(g: &GradingParams<T>) -> KFermionOps<T> {
    let k = g.k();
    let raise = OperatorMatrix::from_entries(k, (0..k - 1).map(|s| (s + 1, s, Complex::one()))).labeled("f+");
    let lower = OperatorMatrix::from_entries(k, (1..k).map(|s| (s - 1, s, g.q_number(s)))).labeled("f-");
    let number =
        OperatorMatrix::from_diagonal((0..k).map(|s| Complex::new(T::from_count(s), T::zero()))).labeled("Nf");
    let grading = (&(&lower * &raise) - &(&raise * &lower)).labeled("K");
    KFermionOps {
        lower,
        raise,
        number,
        grading,
    }
}
