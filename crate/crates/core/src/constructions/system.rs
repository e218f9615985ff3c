//! A fully assembled fractional supersymmetric system and its JSON bundle.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::gwh::{gwh_rep, hamiltonian_gwh, structure_operator, Structure};
use super::projectors::{projectors, ProjectorFamily};
use super::quon::{hamiltonian_quon, quon_ladder, supercharges};
use super::uqsl2::{casimir, hamiltonian_uqsl2};
use crate::basis::{GradedBasis, InteriorMask};
use crate::error::{Error, Result};
use crate::matrix::{tensor_embed, MatrixJson, OperatorMatrix};
use crate::qarith::GradingParams;
use crate::representations::{boson_ops, kfermion_ops, uqsl2_ops};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    Quon,
    Gwh,
    Uqsl2,
}

impl Construction {
    pub fn tag(self) -> &'static str {
        match self {
            Construction::Quon => "quon",
            Construction::Gwh => "gwh",
            Construction::Uqsl2 => "uqsl2",
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Construction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quon" => Ok(Construction::Quon),
            "gwh" => Ok(Construction::Gwh),
            "uqsl2" => Ok(Construction::Uqsl2),
            other => Err(Error::UnsupportedInput(format!(
                "unknown construction '{other}' (expected quon, gwh or uqsl2)"
            ))),
        }
    }
}

/// Ladder pair, grading, number-like operator, projectors, supercharges and
/// Hamiltonian of one construction, plus construction-specific extras
/// (embedded `b±`, `f±` for quon; `S` for gwh; `C`, `qJ3inv` for uqsl2).
#[derive(Debug, Clone)]
pub struct SusySystem<T: Real> {
    construction: Construction,
    grading_params: GradingParams<T>,
    nmax: usize,
    basis: Option<GradedBasis>,
    j: Option<usize>,
    pub lower: OperatorMatrix<T>,
    pub raise: OperatorMatrix<T>,
    pub grading: OperatorMatrix<T>,
    pub number: OperatorMatrix<T>,
    pub projectors: ProjectorFamily<T>,
    pub qm: OperatorMatrix<T>,
    pub qp: OperatorMatrix<T>,
    pub hamiltonian: OperatorMatrix<T>,
    extras: Vec<OperatorMatrix<T>>,
}

fn require_nmax(nmax: usize) -> Result<()> {
    if nmax < 1 {
        return Err(Error::UnsupportedInput("nmax must be at least 1".into()));
    }
    Ok(())
}

impl<T: Real> SusySystem<T> {
    /// Boson ⊗ k-fermion construction.
    pub fn quon(k: usize, nmax: usize) -> Result<Self> {
        require_nmax(nmax)?;
        let g = GradingParams::new(k)?;
        let basis = GradedBasis::new(k, nmax);
        let b = boson_ops::<T>(nmax);
        let f = kfermion_ops(&g);
        let ladder = quon_ladder(&b, &f, &basis, &g)?;
        let proj = projectors(&ladder.grading, &g)?;
        let (qm, qp) = supercharges(&ladder.lower, &ladder.raise, &proj)?;
        let h = hamiltonian_quon(&ladder.lower, &ladder.raise, &proj, &g)?;
        let id_b = OperatorMatrix::identity(nmax + 1);
        let id_f = OperatorMatrix::identity(k);
        let extras = vec![
            tensor_embed(&b.lower, &id_f, &basis)?.labeled("b-"),
            tensor_embed(&b.raise, &id_f, &basis)?.labeled("b+"),
            tensor_embed(&id_b, &f.lower, &basis)?.labeled("f-"),
            tensor_embed(&id_b, &f.raise, &basis)?.labeled("f+"),
        ];
        Ok(Self {
            construction: Construction::Quon,
            grading_params: g,
            nmax,
            basis: Some(basis),
            j: None,
            lower: ladder.lower,
            raise: ladder.raise,
            grading: ladder.grading,
            number: ladder.number,
            projectors: proj,
            qm,
            qp,
            hamiltonian: h,
            extras,
        })
    }

    /// Generalized Weyl–Heisenberg construction with the given structure functions.
    pub fn gwh(k: usize, nmax: usize, structure: &Structure<T>) -> Result<Self> {
        require_nmax(nmax)?;
        let g = GradingParams::new(k)?;
        let basis = GradedBasis::new(k, nmax);
        let rep = gwh_rep(&g, nmax, structure)?;
        let proj = projectors(&rep.grading, &g)?;
        let (qm, qp) = supercharges(&rep.lower, &rep.raise, &proj)?;
        let h = hamiltonian_gwh(&rep.lower, &rep.raise, &rep.number, &proj, structure, &g)?;
        let s = structure_operator(&rep.number, &proj, structure)?;
        Ok(Self {
            construction: Construction::Gwh,
            grading_params: g,
            nmax,
            basis: Some(basis),
            j: None,
            lower: rep.lower,
            raise: rep.raise,
            grading: rep.grading,
            number: rep.number,
            projectors: proj,
            qm,
            qp,
            hamiltonian: h,
            extras: vec![s],
        })
    }

    /// Spin-`j` module of `U_q(sl_2)` with `K = q^{J3}`; needs `k >= 3`, `2j + 1 <= k`.
    pub fn uqsl2(k: usize, j: usize) -> Result<Self> {
        let g = GradingParams::new(k)?;
        g.sym_denominator()?;
        let ops = uqsl2_ops(j, &g)?;
        let proj = projectors(&ops.q_j3, &g)?;
        let (qm, qp) = supercharges(&ops.lower, &ops.raise, &proj)?;
        let h = hamiltonian_uqsl2(&ops, &proj, &g)?;
        let c = casimir(&ops, &g)?;
        let number = OperatorMatrix::from_diagonal(
            ops.twice_weights()
                .map(|w| num_complex::Complex::new(T::from_i64(w / 2).unwrap(), T::zero())),
        )
        .labeled("J3");
        Ok(Self {
            construction: Construction::Uqsl2,
            grading_params: g,
            nmax: 2 * j,
            basis: None,
            j: Some(j),
            lower: ops.lower,
            raise: ops.raise,
            grading: ops.q_j3,
            number,
            projectors: proj,
            qm,
            qp,
            hamiltonian: h,
            extras: vec![ops.q_j3_inv, c],
        })
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    pub fn grading_params(&self) -> &GradingParams<T> {
        &self.grading_params
    }

    pub fn k(&self) -> usize {
        self.grading_params.k()
    }

    /// Boson truncation; `2j` for the `U_q(sl_2)` construction.
    pub fn nmax(&self) -> usize {
        self.nmax
    }

    pub fn j(&self) -> Option<usize> {
        self.j
    }

    pub fn basis(&self) -> Option<&GradedBasis> {
        self.basis.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.hamiltonian.dim()
    }

    /// Interior of the truncated space; the `U_q(sl_2)` modules are not
    /// truncated, so every margin selects the whole module there.
    pub fn mask(&self, margin: usize) -> InteriorMask {
        match &self.basis {
            Some(b) => InteriorMask::new(b, margin),
            None => InteriorMask::full(self.dim()),
        }
    }

    pub fn extra(&self, label: &str) -> Option<&OperatorMatrix<T>> {
        self.extras.iter().find(|m| m.label() == label)
    }

    /// Every operator of the system, keyed by label.
    pub fn operators(&self) -> Vec<&OperatorMatrix<T>> {
        let mut out = vec![&self.lower, &self.raise, &self.grading, &self.number];
        out.extend(self.projectors.iter());
        out.extend([&self.qm, &self.qp, &self.hamiltonian]);
        out.extend(self.extras.iter());
        out
    }

    /// Name binding for the relation evaluator: every operator plus `I`.
    pub fn env(&self) -> BTreeMap<String, OperatorMatrix<T>> {
        let mut env: BTreeMap<String, OperatorMatrix<T>> = self
            .operators()
            .into_iter()
            .map(|m| (m.label().to_string(), m.clone()))
            .collect();
        env.insert("I".into(), OperatorMatrix::identity(self.dim()));
        env
    }

    pub fn to_bundle(&self) -> SystemBundle {
        SystemBundle {
            construction: self.construction,
            k: self.k(),
            nmax: self.nmax,
            j: self.j,
            operators: self
                .operators()
                .into_iter()
                .map(|m| (m.label().to_string(), m.to_json()))
                .collect(),
        }
    }
}

/// JSON form of a system: `{"construction", "k", "nmax", "operators": {label: matrix}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemBundle {
    pub construction: Construction,
    pub k: usize,
    pub nmax: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    pub operators: BTreeMap<String, MatrixJson>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quon_bundle_labels() {
        let sys = SusySystem::<f64>::quon(3, 4).unwrap();
        let bundle = sys.to_bundle();
        for label in ["X-", "X+", "K", "M", "Q-", "Q+", "H", "Pi0", "Pi1", "Pi2", "b-", "f+"] {
            assert!(bundle.operators.contains_key(label), "{label}");
        }
        assert_eq!(bundle.operators["H"].dim, 15);
        let text = serde_json::to_string(&bundle).unwrap();
        assert!(text.contains("\"construction\":\"quon\""));
        assert!(!text.contains("\"j\""));
        assert!(sys.env().contains_key("I"));
    }

    #[test]
    fn gwh_and_uqsl2_labels() {
        let sys = SusySystem::<f64>::gwh(2, 4, &Structure::ones(2)).unwrap();
        let env = sys.env();
        for label in ["Y-", "Y+", "N", "K", "S", "Q-", "Q+", "H", "Pi0", "Pi1"] {
            assert!(env.contains_key(label), "{label}");
        }
        let sys = SusySystem::<f64>::uqsl2(5, 2).unwrap();
        assert_eq!(sys.dim(), 5);
        assert_eq!(sys.nmax(), 4);
        assert_eq!(sys.to_bundle().j, Some(2));
        assert_eq!(sys.mask(10).len(), 5);
        for label in ["J-", "J+", "qJ3", "qJ3inv", "C", "J3"] {
            assert!(sys.env().contains_key(label), "{label}");
        }
    }

    #[test]
    fn uqsl2_at_k2_reports_the_singular_denominator() {
        let err = SusySystem::<f64>::uqsl2(2, 0).unwrap_err();
        assert!(err.to_string().contains("singular denominator at q = −1"));
    }

    #[test]
    fn construction_tags_round_trip() {
        for c in [Construction::Quon, Construction::Gwh, Construction::Uqsl2] {
            assert_eq!(c.tag().parse::<Construction>().unwrap(), c);
        }
        assert!("boson".parse::<Construction>().is_err());
    }

    #[test]
    fn single_precision_builds() {
        let sys = SusySystem::<f32>::quon(3, 9).unwrap();
        let mask = sys.mask(6);
        assert!(sys.hamiltonian.commutator(&sys.qm).masked_max_abs(&mask).unwrap() < 1e-4);
    }
}
