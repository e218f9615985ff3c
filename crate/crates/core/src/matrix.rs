//! Dense complex operator matrices on a flat-indexed basis.

use std::ops::{Add, Mul, Sub};
use std::path::Path;

use ndarray::Array2;
use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::basis::{GradedBasis, InteriorMask};
use crate::error::{shape_err, Error, Result};
use crate::scalar::{from_c64, to_c64, Real};

/// A labeled dense `dim x dim` complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix<T: Real> {
    label: String,
    entries: Array2<Complex<T>>,
}

impl<T: Real> OperatorMatrix<T> {
    pub fn new(label: impl Into<String>, entries: Array2<Complex<T>>) -> Result<Self> {
        let label = label.into();
        let (rows, cols) = entries.dim();
        if rows != cols {
            return Err(shape_err("square matrix", format!("{rows}x{cols}")));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite(label));
        }
        Ok(Self { label, entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            label: String::new(),
            entries: Array2::zeros((dim, dim)),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            label: "I".into(),
            entries: Array2::from_diag_elem(dim, Complex::one()),
        }
    }

    pub fn from_fn(dim: usize, f: impl FnMut((usize, usize)) -> Complex<T>) -> Self {
        Self {
            label: String::new(),
            entries: Array2::from_shape_fn((dim, dim), f),
        }
    }

    pub fn from_diagonal(diag: impl IntoIterator<Item = Complex<T>>) -> Self {
        let diag: Vec<_> = diag.into_iter().collect();
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[[i, i]] = d;
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triples; later triples overwrite.
    pub fn from_entries(dim: usize, items: impl IntoIterator<Item = (usize, usize, Complex<T>)>) -> Self {
        let mut m = Self::zeros(dim);
        for (i, j, v) in items {
            m.entries[[i, j]] = v;
        }
        m
    }

    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Array2<Complex<T>> {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[[row, col]]
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(shape_err(format!("dim {}", self.dim()), format!("dim {}", other.dim())));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let n = self.dim();
        let mut out = Array2::<Complex<T>>::zeros((n, n));
        // Row-major i-k-j loop; structural zeros of the left factor are skipped.
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[[i, k]];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.entries[[k, j]];
                    out[[i, j]] = out[[i, j]] + a * b;
                }
            }
        }
        Ok(Self {
            label: String::new(),
            entries: out,
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self {
            label: String::new(),
            entries: &self.entries + &other.entries,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self {
            label: String::new(),
            entries: &self.entries - &other.entries,
        })
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            label: String::new(),
            entries: self.entries.mapv(|z| z * s),
        }
    }

    /// `self + s * I`.
    pub fn add_identity(&self, s: Complex<T>) -> Self {
        let mut out = self.clone().labeled("");
        for i in 0..self.dim() {
            out.entries[[i, i]] = out.entries[[i, i]] + s;
        }
        out
    }

    /// Repeated left-to-right multiplication; `pow(0)` is the identity.
    pub fn pow(&self, n: u32) -> Self {
        if n == 0 {
            return Self::identity(self.dim()).labeled("");
        }
        let mut acc = self.clone().labeled("");
        for _ in 1..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn try_commutator(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    pub fn try_anticommutator(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)?.try_add(&other.try_mul(self)?)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.try_commutator(other).expect("commutator of mismatched operators")
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        self.try_anticommutator(other).expect("anticommutator of mismatched operators")
    }

    pub fn max_abs(&self) -> T {
        self.entries.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    pub fn max_abs_off_diagonal(&self) -> T {
        self.entries
            .indexed_iter()
            .filter(|((i, j), _)| i != j)
            .fold(T::zero(), |m, (_, z)| m.max(z.norm()))
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.indexed_iter().all(|((i, j), z)| i == j || z.is_zero())
    }

    pub fn diagonal(&self) -> Vec<Complex<T>> {
        self.entries.diag().to_vec()
    }

    /// Applies `f` to each diagonal entry of an exactly diagonal operator.
    pub fn map_diagonal(&self, mut f: impl FnMut(Complex<T>) -> Complex<T>) -> Result<Self> {
        if !self.is_diagonal() {
            return Err(Error::UnsupportedInput(format!(
                "function of non-diagonal operator `{}`",
                self.label
            )));
        }
        Ok(Self::from_diagonal(self.diagonal().into_iter().map(&mut f)))
    }

    /// Max-absolute-entry norm of `P self P` with `P` the mask projector.
    pub fn masked_max_abs(&self, mask: &InteriorMask) -> Result<T> {
        if mask.dim() != self.dim() {
            return Err(shape_err(format!("mask dim {}", mask.dim()), format!("dim {}", self.dim())));
        }
        let mut m = T::zero();
        for &i in mask.selected() {
            for &j in mask.selected() {
                m = m.max(self.entries[[i, j]].norm());
            }
        }
        Ok(m)
    }

    /// Block restricted to the mask's selected indices.
    pub fn restrict(&self, mask: &InteriorMask) -> Result<Self> {
        if mask.dim() != self.dim() {
            return Err(shape_err(format!("mask dim {}", mask.dim()), format!("dim {}", self.dim())));
        }
        let sel = mask.selected();
        Ok(Self {
            label: self.label.clone(),
            entries: Array2::from_shape_fn((sel.len(), sel.len()), |(a, b)| self.entries[[sel[a], sel[b]]]),
        })
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            dim: self.dim(),
            label: self.label.clone(),
            entries: self
                .entries
                .iter()
                .map(|&z| {
                    let z = to_c64(z);
                    [z.re, z.im]
                })
                .collect(),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self> {
        if json.entries.len() != json.dim * json.dim {
            return Err(shape_err(
                format!("{} entries", json.dim * json.dim),
                format!("{} entries", json.entries.len()),
            ));
        }
        let data = json
            .entries
            .iter()
            .map(|&[re, im]| from_c64(Complex::new(re, im)))
            .collect();
        let entries = Array2::from_shape_vec((json.dim, json.dim), data)
            .map_err(|e| shape_err("row-major square data", e))?;
        Self::new(json.label.clone(), entries)
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        let file = std::fs::File::create(path)?;
        serde_json::to_writer(std::io::BufWriter::new(file), &self.to_json())?;
        Ok(())
    }

    pub fn read_json(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&serde_json::from_str(&text)?)
    }
}

/// Wire form: `{"dim": n, "label": "...", "entries": [[re, im], ...]}`,
/// row-major with `dim * dim` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub label: String,
    pub entries: Vec<[f64; 2]>,
}

impl<T: Real> Mul for &OperatorMatrix<T> {
    type Output = OperatorMatrix<T>;
    fn mul(self, rhs: Self) -> OperatorMatrix<T> {
        self.try_mul(rhs).expect("product of mismatched operators")
    }
}

impl<T: Real> Add for &OperatorMatrix<T> {
    type Output = OperatorMatrix<T>;
    fn add(self, rhs: Self) -> OperatorMatrix<T> {
        self.try_add(rhs).expect("sum of mismatched operators")
    }
}

impl<T: Real> Sub for &OperatorMatrix<T> {
    type Output = OperatorMatrix<T>;
    fn sub(self, rhs: Self) -> OperatorMatrix<T> {
        self.try_sub(rhs).expect("difference of mismatched operators")
    }
}

/// Operator acting as `boson` on the `r` index and `fermion` on the `s` index
/// of the graded basis (a Kronecker product under `n = r k + s`).
pub fn tensor_embed<T: Real>(
    boson: &OperatorMatrix<T>,
    fermion: &OperatorMatrix<T>,
    basis: &GradedBasis,
) -> Result<OperatorMatrix<T>> {
    let nb = basis.nmax() + 1;
    let k = basis.k();
    if boson.dim() != nb {
        return Err(shape_err(format!("boson factor dim {nb}"), format!("dim {}", boson.dim())));
    }
    if fermion.dim() != k {
        return Err(shape_err(format!("fermion factor dim {k}"), format!("dim {}", fermion.dim())));
    }
    Ok(OperatorMatrix::from_fn(basis.dim(), |(i, j)| {
        let (r, s) = basis.state(i);
        let (rp, sp) = basis.state(j);
        boson.get(r, rp) * fermion.get(s, sp)
    }))
}

/// Max-absolute-entry norm of `P (lhs - rhs) P`.
pub fn relation_residual<T: Real>(
    lhs: &OperatorMatrix<T>,
    rhs: &OperatorMatrix<T>,
    mask: &InteriorMask,
) -> Result<T> {
    lhs.try_sub(rhs)?.masked_max_abs(mask)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    fn one() -> Complex<f64> {
        Complex::one()
    }

    fn raise(n: usize) -> OperatorMatrix<f64> {
        OperatorMatrix::from_entries(n, (0..n - 1).map(|i| (i + 1, i, c(((i + 1) as f64).sqrt(), 0.0))))
    }

    #[test]
    fn embed_identity_pair() {
        let basis = GradedBasis::new(3, 2);
        let e = tensor_embed(&OperatorMatrix::identity(3), &OperatorMatrix::identity(3), &basis).unwrap();
        assert_eq!(e.entries(), OperatorMatrix::<f64>::identity(9).entries());
    }

    #[test]
    fn embed_index_arithmetic() {
        let basis = GradedBasis::new(2, 1);
        let bp = raise(2);
        let e = tensor_embed(&bp, &OperatorMatrix::identity(2), &basis).unwrap();
        let nonzero: Vec<_> = e.entries().indexed_iter().filter(|(_, z)| !z.is_zero()).map(|(ij, z)| (ij, *z)).collect();
        assert_eq!(nonzero, vec![((2, 0), one()), ((3, 1), one())]);

        let fp = OperatorMatrix::from_entries(2, [(1, 0, one())]);
        let e = tensor_embed(&OperatorMatrix::identity(2), &fp, &basis).unwrap();
        let nonzero: Vec<_> = e.entries().indexed_iter().filter(|(_, z)| !z.is_zero()).map(|(ij, _)| ij).collect();
        assert_eq!(nonzero, vec![(1, 0), (3, 2)]);
    }

    #[test]
    fn embed_shape_errors() {
        let basis = GradedBasis::new(2, 3);
        let r = tensor_embed(&OperatorMatrix::<f64>::identity(3), &OperatorMatrix::identity(2), &basis);
        assert!(matches!(r, Err(Error::Shape { .. })));
    }

    #[test]
    fn boson_commutator_residuals() {
        let nmax = 6;
        let basis = GradedBasis::new(1, nmax);
        let bp = raise(nmax + 1);
        let bm = OperatorMatrix::from_fn(nmax + 1, |(i, j)| bp.get(j, i).conj());
        let comm = bm.commutator(&bp);
        let id = OperatorMatrix::identity(nmax + 1);
        let interior = relation_residual(&comm, &id, &InteriorMask::new(&basis, 2)).unwrap();
        assert!(interior < 1e-12);
        let full = relation_residual(&comm, &id, &InteriorMask::new(&basis, 0)).unwrap();
        assert!((full - (nmax as f64 + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn residual_of_identical_operands_is_zero() {
        let a = raise(5).add_identity(c(0.3, -1.0));
        assert_eq!(relation_residual(&a, &a, &InteriorMask::full(5)).unwrap(), 0.0);
    }

    #[test]
    fn rejects_non_finite_and_non_square() {
        let bad = Array2::from_elem((2, 2), Complex::new(f64::NAN, 0.0));
        assert!(matches!(OperatorMatrix::new("x", bad), Err(Error::NonFinite(_))));
        let rect = Array2::<Complex<f64>>::zeros((2, 3));
        assert!(matches!(OperatorMatrix::new("x", rect), Err(Error::Shape { .. })));
    }

    #[test]
    fn json_round_trip() {
        let a = raise(4).add_identity(c(0.25, 1.0 / 3.0)).labeled("b+");
        let text = serde_json::to_string(&a.to_json()).unwrap();
        let back = OperatorMatrix::<f64>::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.label(), "b+");
        assert!(relation_residual(&a, &back, &InteriorMask::full(4)).unwrap() <= 1e-12);
    }

    #[test]
    fn json_length_mismatch() {
        let json = MatrixJson { dim: 2, label: "x".into(), entries: vec![[0.0, 0.0]; 3] };
        assert!(OperatorMatrix::<f64>::from_json(&json).is_err());
    }

    #[test]
    fn map_diagonal_rejects_off_diagonal() {
        assert!(raise(3).map_diagonal(|z| z).is_err());
        let d = OperatorMatrix::<f64>::from_diagonal([c(1.0, 0.0), c(2.0, 0.0)]);
        let sq = d.map_diagonal(|z| z * z).unwrap();
        assert_eq!(sq.diagonal(), vec![c(1.0, 0.0), c(4.0, 0.0)]);
    }
}
