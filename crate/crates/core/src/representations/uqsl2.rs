use num_complex::Complex;

use super::transpose;
use crate::error::{Error, Result};
use crate::matrix::OperatorMatrix;
use crate::qarith::GradingParams;
use crate::scalar::Real;

/// Spin-`j` module `|j, m>`, `m = -j..j`, stored at index `m + j`.
#[derive(Debug, Clone)]
pub struct UqSl2Ops<T: Real> {
    pub lower: OperatorMatrix<T>,
    pub raise: OperatorMatrix<T>,
    /// `q^{J3}`
    pub q_j3: OperatorMatrix<T>,
    /// `q^{-J3}`
    pub q_j3_inv: OperatorMatrix<T>,
    two_j: usize,
}

impl<T: Real> UqSl2Ops<T> {
    pub fn two_j(&self) -> usize {
        self.two_j
    }

    pub fn is_integer_spin(&self) -> bool {
        self.two_j.is_multiple_of(2)
    }

    /// `2 J3` eigenvalues in basis order.
    pub fn twice_weights(&self) -> impl Iterator<Item = i64> + '_ {
        (0..=self.two_j).map(move |a| 2 * a as i64 - self.two_j as i64)
    }
}

/// Integer-spin representation (the one compatible with `K^k = 1`).
pub fn uqsl2_ops<T: Real>(j: usize, g: &GradingParams<T>) -> Result<UqSl2Ops<T>> {
    uqsl2_ops_twice_spin(2 * j, g)
}

/// Classical-type representation with `2j + 1 <= k`. Matrix elements use the
/// symmetric q-number `[n] = (q^n - q^{-n}) / (q - q^{-1})`:
/// `J+|j,m> = sqrt([j-m][j+m+1]) |j,m+1>` (principal root), `J- = J+^T`.
/// Half-integer `j` is accepted here for standalone relation checks only.
pub fn uqsl2_ops_twice_spin<T: Real>(two_j: usize, g: &GradingParams<T>) -> Result<UqSl2Ops<T>> {
    let dim = two_j + 1;
    if dim > g.k() {
        return Err(Error::UnsupportedRepresentation(format!(
            "spin {}/2 has dimension {dim} > k = {}; cyclic representations are not supported",
            two_j,
            g.k()
        )));
    }
    let mut items = Vec::with_capacity(two_j);
    for a in 0..two_j {
        // j - m = two_j - a, j + m + 1 = a + 1
        let w = g.sym_number((two_j - a) as i64)? * g.sym_number(a as i64 + 1)?;
        items.push((a + 1, a, w.sqrt()));
    }
    let raise = OperatorMatrix::from_entries(dim, items).labeled("J+");
    let lower = transpose(&raise).labeled("J-");
    let phase = |twice_m: i64| -> Complex<T> {
        if twice_m % 2 == 0 {
            g.pow(twice_m / 2)
        } else {
            // q^{m} for half-integer m lies outside the k-th roots
            let theta = T::PI() * T::from_i64(twice_m).unwrap() / T::from_count(g.k());
            Complex::from_polar(T::one(), theta)
        }
    };
    let weights: Vec<i64> = (0..dim).map(|a| 2 * a as i64 - two_j as i64).collect();
    let q_j3 = OperatorMatrix::from_diagonal(weights.iter().map(|&w| phase(w))).labeled("qJ3");
    let q_j3_inv = OperatorMatrix::from_diagonal(weights.iter().map(|&w| phase(-w))).labeled("qJ3inv");
    Ok(UqSl2Ops {
        lower,
        raise,
        q_j3,
        q_j3_inv,
        two_j,
    })
}
