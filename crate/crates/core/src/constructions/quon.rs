use super::projectors::ProjectorFamily;
use crate::basis::GradedBasis;
use crate::error::{shape_err, Result};
use crate::matrix::{tensor_embed, OperatorMatrix};
use crate::qarith::GradingParams;
use crate::representations::{BosonOps, KFermionOps};
use crate::scalar::{real, Real};

/// `X-`, `X+`, `K`, `M` of the quon construction on the graded space.
#[derive(Debug, Clone)]
pub struct QuonLadder<T: Real> {
    pub lower: OperatorMatrix<T>,
    pub raise: OperatorMatrix<T>,
    pub grading: OperatorMatrix<T>,
    pub number: OperatorMatrix<T>,
}

/// Fermionic factor `f- + (f+)^{k-1} / [k-1]_q!`. Its k-th power is the
/// identity, so `A^{k-1}` is its inverse.
pub fn fermionic_factor<T: Real>(f: &KFermionOps<T>, g: &GradingParams<T>) -> OperatorMatrix<T> {
    let k = g.k();
    let top = f.raise.pow(k as u32 - 1).scale(g.q_factorial(k - 1).inv());
    &f.lower + &top
}

/// `X- = b- A`, `X+ = b+ A^{k-1}`, `K` from the fermion factor, `M = X+ X-`.
pub fn quon_ladder<T: Real>(
    b: &BosonOps<T>,
    f: &KFermionOps<T>,
    basis: &GradedBasis,
    g: &GradingParams<T>,
) -> Result<QuonLadder<T>> {
    if f.raise.dim() != g.k() || basis.k() != g.k() {
        return Err(shape_err(
            format!("k = {}", g.k()),
            format!("fermion dim {}, basis k {}", f.raise.dim(), basis.k()),
        ));
    }
    let a = fermionic_factor(f, g);
    let lower = tensor_embed(&b.lower, &a, basis)?.labeled("X-");
    let raise = tensor_embed(&b.raise, &a.pow(g.k() as u32 - 1), basis)?.labeled("X+");
    let id_b = OperatorMatrix::identity(basis.nmax() + 1);
    let grading = tensor_embed(&id_b, &f.grading, basis)?.labeled("K");
    let number = (&raise * &lower).labeled("M");
    Ok(QuonLadder {
        lower,
        raise,
        grading,
        number,
    })
}

/// `Q- = X- (1 - Π_{k-1})`, `Q+ = X+ (1 - Π_0)`.
pub fn supercharges<T: Real>(
    lower: &OperatorMatrix<T>,
    raise: &OperatorMatrix<T>,
    proj: &ProjectorFamily<T>,
) -> Result<(OperatorMatrix<T>, OperatorMatrix<T>)> {
    let k = proj.len();
    let qm = lower.try_mul(&proj.complement(k - 1))?.labeled("Q-");
    let qp = raise.try_mul(&proj.complement(0))?.labeled("Q+");
    Ok((qm, qp))
}

/// Closed-form quon Hamiltonian:
///
/// ```text
/// H = X-X+ Π_1 + Σ_{l=2}^{k-1} (X+X- - l + 1)(Π_0 + ... + Π_{k-l-1})
///   + Σ_{l=2}^{k-1} l (X-X+ + (l-1)/2) Π_l + X+X- (1 - Π_{k-1})
/// ```
pub fn hamiltonian_quon<T: Real>(
    lower: &OperatorMatrix<T>,
    raise: &OperatorMatrix<T>,
    proj: &ProjectorFamily<T>,
    g: &GradingParams<T>,
) -> Result<OperatorMatrix<T>> {
    let k = g.k();
    if proj.len() != k {
        return Err(shape_err(format!("{k} projectors"), format!("{}", proj.len())));
    }
    let xmxp = lower.try_mul(raise)?;
    let xpxm = raise.try_mul(lower)?;
    let mut h = xmxp.try_mul(proj.get(1))?;
    for l in 2..k {
        let shifted = xpxm.add_identity(real(-T::from_count(l - 1)));
        h = &h + &(&shifted * &proj.partial_sum(k - l));
    }
    for l in 2..k {
        let lt = T::from_count(l);
        let shifted = xmxp.add_identity(real(T::from_count(l - 1) / T::lit(2.0)));
        h = &h + &(&shifted * proj.get(l)).scale(real(lt));
    }
    h = &h + &(&xpxm * &proj.complement(k - 1));
    Ok(h.labeled("H"))
}

/// `Σ_{j=0}^{k-1} (Q-)^{k-1-j} Q+ (Q-)^j - (Q-)^{k-2} H`, accumulated in the
/// same left-to-right order the relation evaluator uses for the textual form.
pub fn defining_relation_operator<T: Real>(
    qm: &OperatorMatrix<T>,
    qp: &OperatorMatrix<T>,
    h: &OperatorMatrix<T>,
    k: usize,
) -> Result<OperatorMatrix<T>> {
    let factor = |p: usize| if p == 1 { qm.clone() } else { qm.pow(p as u32) };
    let mut total: Option<OperatorMatrix<T>> = None;
    for j in 0..k {
        let before = k - 1 - j;
        let mut term = if before > 0 {
            factor(before).try_mul(qp)?
        } else {
            qp.clone()
        };
        if j > 0 {
            term = term.try_mul(&factor(j))?;
        }
        total = Some(match total {
            None => term,
            Some(acc) => acc.try_add(&term)?,
        });
    }
    let rhs = if k == 2 { h.clone() } else { factor(k - 2).try_mul(h)? };
    total.expect("k >= 2").try_sub(&rhs)
}

/// Residual of the multilinear relation defining `H`.
pub fn defining_relation_residual<T: Real>(
    qm: &OperatorMatrix<T>,
    qp: &OperatorMatrix<T>,
    h: &OperatorMatrix<T>,
    k: usize,
    mask: &crate::basis::InteriorMask,
) -> Result<T> {
    defining_relation_operator(qm, qp, h, k)?.masked_max_abs(mask)
}
