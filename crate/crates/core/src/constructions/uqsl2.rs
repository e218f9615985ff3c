//! Fractional supersymmetry from the spin-`j` modules of `U_q(sl_2)`.

use num_complex::Complex;

use super::projectors::ProjectorFamily;
use crate::error::{shape_err, Error, Result};
use crate::matrix::OperatorMatrix;
use crate::qarith::GradingParams;
use crate::representations::UqSl2Ops;
use crate::scalar::Real;

/// `C = J-J+ + (q q^{2J3} + q^{-1} q^{-2J3}) / (q - q^{-1})^2`.
pub fn casimir<T: Real>(ops: &UqSl2Ops<T>, g: &GradingParams<T>) -> Result<OperatorMatrix<T>> {
    let den = g.sym_denominator()?;
    let den2 = den * den;
    let up = ops.q_j3.pow(2).scale(g.q());
    let down = ops.q_j3_inv.pow(2).scale(g.pow(-1));
    let tail = (&up + &down).scale(den2.inv());
    let c = ops.lower.try_mul(&ops.raise)?.try_add(&tail)?;
    Ok(c.labeled("C"))
}

/// Diagonal `G(J3 + shift)`.
fn g_of_j3<T: Real>(ops: &UqSl2Ops<T>, g: &GradingParams<T>, shift: i64) -> Result<OperatorMatrix<T>> {
    let diag: Vec<Complex<T>> = ops
        .twice_weights()
        .map(|w| g.g_function(w / 2 + shift))
        .collect::<Result<_>>()?;
    Ok(OperatorMatrix::from_diagonal(diag))
}

/// Hamiltonian on an integer-spin module, with `K = q^{J3}`:
///
/// ```text
/// H = J-J+ Π_1 + J+J- (1 - Π_{k-1})
///   + Σ_{m=2}^{k-1} [J+J- + Σ_{t=1}^{m-1} G(J3 - t)] (Π_0 + ... + Π_{k-m-1})
///   + Σ_{m=2}^{k-1} [m J-J+ - Σ_{t=1}^{m-1} (m - t) G(J3 + t)] Π_m
/// ```
pub fn hamiltonian_uqsl2<T: Real>(
    ops: &UqSl2Ops<T>,
    proj: &ProjectorFamily<T>,
    g: &GradingParams<T>,
) -> Result<OperatorMatrix<T>> {
    g.sym_denominator()?;
    if !ops.is_integer_spin() {
        return Err(Error::UnsupportedRepresentation(format!(
            "spin {}/2: q^J3 does not satisfy K^k = 1 on half-integer modules",
            ops.two_j()
        )));
    }
    let k = g.k();
    if proj.len() != k || proj.dim() != ops.raise.dim() {
        return Err(shape_err(
            format!("{k} projectors of dim {}", ops.raise.dim()),
            format!("{} projectors of dim {}", proj.len(), proj.dim()),
        ));
    }
    let jmjp = ops.lower.try_mul(&ops.raise)?;
    let jpjm = ops.raise.try_mul(&ops.lower)?;
    let mut h = &jmjp.try_mul(proj.get(1))? + &jpjm.try_mul(&proj.complement(k - 1))?;
    for m in 2..k {
        let mut bracket = jpjm.clone();
        for t in 1..m {
            bracket = &bracket + &g_of_j3(ops, g, -(t as i64))?;
        }
        h = &h + &bracket.try_mul(&proj.partial_sum(k - m))?;
    }
    for m in 2..k {
        let mut bracket = jmjp.scale(Complex::new(T::from_count(m), T::zero()));
        for t in 1..m {
            let weight = Complex::new(T::from_count(m - t), T::zero());
            bracket = &bracket - &g_of_j3(ops, g, t as i64)?.scale(weight);
        }
        h = &h + &bracket.try_mul(proj.get(m))?;
    }
    Ok(h.labeled("H"))
}
