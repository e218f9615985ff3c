//! Spectra with degeneracy clustering, and coherent-state coefficient tables.

use nalgebra::DMatrix;
use num_complex::Complex;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::basis::InteriorMask;
use crate::error::{Error, Result};
use crate::matrix::OperatorMatrix;
use crate::qarith::{q_factorial_real, GradingParams};
use crate::scalar::{to_c64, Real};

/// Default cluster width for degenerate levels.
pub const CLUSTER_TOLERANCE: f64 = 1e-6;
/// Largest imaginary part accepted on an eigenvalue.
pub const IMAGINARY_TOLERANCE: f64 = 1e-8;
/// Off-diagonal size below which a Hamiltonian block is read as diagonal.
const DIAGONAL_TOLERANCE: f64 = 1e-10;

/// Energy levels `(E, degeneracy)` in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub levels: Vec<(f64, usize)>,
    pub cluster_tol: f64,
    /// Number of interior states the levels were computed from.
    pub interior: usize,
}

impl SpectrumReport {
    pub fn energies(&self) -> impl Iterator<Item = f64> + '_ {
        self.levels.iter().map(|l| l.0)
    }

    pub fn degeneracies(&self) -> impl Iterator<Item = usize> + '_ {
        self.levels.iter().map(|l| l.1)
    }

    pub fn to_json(&self, pattern_levels: usize) -> SpectrumJson {
        SpectrumJson {
            levels: self.levels.iter().map(|&(e, d)| (e, d)).collect(),
            pattern: degeneracy_pattern(self, pattern_levels),
        }
    }
}

/// Wire form `{"levels": [[E, d], ...], "pattern": "1 ⊕ 2 ⊕ ..."}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub levels: Vec<(f64, usize)>,
    pub pattern: String,
}

fn eigenvalues<T: Real>(block: &OperatorMatrix<T>) -> Vec<Complex<f64>> {
    if block.max_abs_off_diagonal().to_f64_lossy() <= DIAGONAL_TOLERANCE {
        return block.diagonal().into_iter().map(to_c64).collect();
    }
    let n = block.dim();
    let m = DMatrix::from_fn(n, n, |i, j| to_c64(block.get(i, j)));
    m.schur()
        .eigenvalues()
        .expect("complex Schur form always exposes its eigenvalues")
        .iter()
        .copied()
        .collect()
}

/// Eigenvalues of `H` restricted to the mask, checked to be real, sorted and
/// grouped into clusters whose consecutive members lie within `cluster_tol`.
pub fn spectrum<T: Real>(h: &OperatorMatrix<T>, mask: &InteriorMask, cluster_tol: f64) -> Result<SpectrumReport> {
    let block = h.restrict(mask)?;
    let mut values = Vec::with_capacity(block.dim());
    for z in eigenvalues(&block) {
        if z.im.abs() > IMAGINARY_TOLERANCE || !z.re.is_finite() {
            return Err(Error::NonRealSpectrum { re: z.re, im: z.im });
        }
        values.push(z.re);
    }
    values.sort_by(f64::total_cmp);
    let mut clusters: Vec<Vec<f64>> = Vec::new();
    for v in values {
        match clusters.last_mut() {
            Some(c) if v - c[c.len() - 1] <= cluster_tol => c.push(v),
            _ => clusters.push(vec![v]),
        }
    }
    Ok(SpectrumReport {
        levels: clusters
            .iter()
            .map(|c| (c.iter().sum::<f64>() / c.len() as f64, c.len()))
            .collect(),
        cluster_tol,
        interior: mask.len(),
    })
}

/// First `levels` degeneracies joined by ` ⊕ `.
pub fn degeneracy_pattern(rep: &SpectrumReport, levels: usize) -> String {
    rep.degeneracies()
        .take(levels)
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(" ⊕ ")
}

/// Parameters a coefficient table was generated from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CoherentParams {
    /// `|Z) = Σ_n Z^n / sqrt([n]_Q!) |n>`
    Quon {
        #[serde(rename = "Z")]
        z: [f64; 2],
        #[serde(rename = "Q")]
        deformation: f64,
        nmax: usize,
    },
    /// `|z, θ) = Σ_{r,s} θ^s / sqrt([s]_q!) z^r / sqrt(r!) |kr + s>`
    Fractional { z: [f64; 2], k: usize, rmax: usize },
}

/// Coefficients `c_{r,s}`; one-index tables use `s = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentTable<T: Real> {
    pub params: CoherentParams,
    pub coeffs: Vec<(usize, usize, Complex<T>)>,
}

/// Wire form `{"params": {...}, "coeffs": [[r, s, re, im], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoherentJson {
    pub params: CoherentParams,
    pub coeffs: Vec<(usize, usize, f64, f64)>,
}

impl<T: Real> CoherentTable<T> {
    pub fn get(&self, r: usize, s: usize) -> Option<Complex<T>> {
        self.coeffs.iter().find(|c| c.0 == r && c.1 == s).map(|c| c.2)
    }

    pub fn to_json(&self) -> CoherentJson {
        CoherentJson {
            params: self.params.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|&(r, s, v)| {
                    let v = to_c64(v);
                    (r, s, v.re, v.im)
                })
                .collect(),
        }
    }
}

fn cpow<T: Real>(z: Complex<T>, n: usize) -> Complex<T> {
    (0..n).fold(Complex::one(), |acc, _| acc * z)
}

/// `c_n = Z^n / sqrt([n]_Q!)` for `n <= nmax`.
pub fn q_coherent_coeffs<T: Real>(z: Complex<T>, deformation: T, nmax: usize) -> Result<CoherentTable<T>> {
    if deformation == T::zero() || !deformation.is_finite() {
        return Err(Error::InvalidDeformation(deformation.to_f64_lossy()));
    }
    let mut coeffs = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let fact = q_factorial_real(n, deformation);
        if fact <= T::zero() {
            return Err(Error::RepresentationBreakdown {
                level: n,
                detail: format!("[{n}]_Q! = {fact} is not positive"),
            });
        }
        coeffs.push((n, 0, cpow(z, n) / fact.sqrt()));
    }
    let z = to_c64(z);
    Ok(CoherentTable {
        params: CoherentParams::Quon {
            z: [z.re, z.im],
            deformation: deformation.to_f64_lossy(),
            nmax,
        },
        coeffs,
    })
}

/// `c_{r,s} = z^r / (sqrt(r!) sqrt([s]_q!))` for `r <= rmax`, `s < k`, with
/// the principal root of the complex q-factorial.
pub fn fractional_supercoherent_coeffs<T: Real>(
    z: Complex<T>,
    g: &GradingParams<T>,
    rmax: usize,
) -> CoherentTable<T> {
    let k = g.k();
    let grade_norms: Vec<Complex<T>> = (0..k).map(|s| g.q_factorial(s).sqrt()).collect();
    let mut coeffs = Vec::with_capacity((rmax + 1) * k);
    let mut r_fact = T::one();
    for r in 0..=rmax {
        if r > 0 {
            r_fact = r_fact * T::from_count(r);
        }
        let zr = cpow(z, r);
        for (s, norm) in grade_norms.iter().enumerate() {
            let denom = *norm * r_fact.sqrt();
            coeffs.push((r, s, zr / denom));
        }
    }
    let z = to_c64(z);
    CoherentTable {
        params: CoherentParams::Fractional {
            z: [z.re, z.im],
            k,
            rmax,
        },
        coeffs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{Structure, SusySystem};
    use crate::scalar::c;

    #[test]
    fn k2_levels_count_quanta() {
        let sys = SusySystem::<f64>::quon(2, 16).unwrap();
        let rep = spectrum(&sys.hamiltonian, &sys.mask(4), CLUSTER_TOLERANCE).unwrap();
        // oracle: E = n_b + n_f over the interior r <= nmax - 4
        let mut oracle = std::collections::BTreeMap::<i64, usize>::new();
        for r in 0..=12 {
            for s in 0..2 {
                *oracle.entry(r + s).or_default() += 1;
            }
        }
        assert_eq!(rep.levels.len(), oracle.len());
        for ((e, d), (oe, od)) in rep.levels.iter().zip(&oracle) {
            assert!((e - *oe as f64).abs() < 1e-10);
            assert_eq!(d, od);
        }
        assert_eq!(degeneracy_pattern(&rep, 3), "1 ⊕ 2 ⊕ 2");
    }

    #[test]
    fn k3_levels_follow_the_mixed_closed_form() {
        let sys = SusySystem::<f64>::quon(3, 24).unwrap();
        let g = sys.grading_params();
        let rep = spectrum(&sys.hamiltonian, &sys.mask(6), CLUSTER_TOLERANCE).unwrap();
        let q = g.q();
        let mut oracle: Vec<f64> = Vec::new();
        for r in 0..=18 {
            for s in 0..3 {
                let n = g.q_number(s);
                let e = c::<f64>(2.0 * r as f64 - 1.0, 0.0)
                    + (c::<f64>(1.0, 0.0) - q * 2.0) * n * 2.0
                    + (c::<f64>(1.0, 0.0) + q * 2.0) * n * n * 2.0;
                assert!(e.im.abs() < 1e-12);
                oracle.push(e.re);
            }
        }
        oracle.sort_by(f64::total_cmp);
        let expanded: Vec<f64> = rep.levels.iter().flat_map(|&(e, d)| std::iter::repeat_n(e, d)).collect();
        assert_eq!(expanded.len(), oracle.len());
        for (a, b) in expanded.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-9);
        }
        let e: Vec<f64> = rep.energies().take(4).collect();
        for (x, want) in e.iter().zip([-1.0, 1.0, 3.0, 5.0]) {
            assert!((x - want).abs() < 1e-10);
        }
        assert_eq!(degeneracy_pattern(&rep, 4), "1 ⊕ 2 ⊕ 3 ⊕ 3");
        assert_eq!(degeneracy_pattern(&rep, 5), "1 ⊕ 2 ⊕ 3 ⊕ 3 ⊕ 3");
        let spacing: Vec<f64> = rep.levels.windows(2).map(|w| w[1].0 - w[0].0).collect();
        assert!(spacing.iter().all(|d| (d - 2.0).abs() < 1e-10));
    }

    #[test]
    fn identity_is_one_cluster() {
        let id = OperatorMatrix::<f64>::identity(12);
        let rep = spectrum(&id, &InteriorMask::full(12), CLUSTER_TOLERANCE).unwrap();
        assert_eq!(rep.levels, vec![(1.0, 12)]);
        assert_eq!(degeneracy_pattern(&rep, 1), "12");
        assert_eq!(degeneracy_pattern(&rep, 0), "");
    }

    #[test]
    fn dense_fallback_and_non_real_spectra() {
        let flip = OperatorMatrix::<f64>::from_entries(2, [(0, 1, c(1.0, 0.0)), (1, 0, c(1.0, 0.0))]);
        let rep = spectrum(&flip, &InteriorMask::full(2), CLUSTER_TOLERANCE).unwrap();
        assert_eq!(rep.levels.len(), 2);
        assert!((rep.levels[0].0 + 1.0).abs() < 1e-12 && (rep.levels[1].0 - 1.0).abs() < 1e-12);

        let rot = OperatorMatrix::<f64>::from_entries(2, [(0, 1, c(1.0, 0.0)), (1, 0, c(-1.0, 0.0))]);
        match spectrum(&rot, &InteriorMask::full(2), CLUSTER_TOLERANCE) {
            Err(Error::NonRealSpectrum { im, .. }) => assert!((im.abs() - 1.0).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn scaling_preserves_the_pattern() {
        let sys = SusySystem::<f64>::gwh(3, 18, &Structure::ones(3)).unwrap();
        let mask = sys.mask(6);
        let base = spectrum(&sys.hamiltonian, &mask, CLUSTER_TOLERANCE).unwrap();
        let scaled = spectrum(&sys.hamiltonian.scale(c(2.5, 0.0)), &mask, CLUSTER_TOLERANCE).unwrap();
        assert_eq!(degeneracy_pattern(&base, 6), degeneracy_pattern(&scaled, 6));
        for (a, b) in base.energies().zip(scaled.energies()) {
            assert!((2.5 * a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn quon_coherent_coefficients() {
        let t = q_coherent_coeffs(c::<f64>(0.0, 0.0), 0.5, 5).unwrap();
        assert_eq!(t.get(0, 0), Some(c(1.0, 0.0)));
        assert!(t.coeffs[1..].iter().all(|x| x.2 == c(0.0, 0.0)));

        let t = q_coherent_coeffs(c::<f64>(1.0, 0.0), 0.5, 12).unwrap();
        assert!((t.get(2, 0).unwrap().re - 1.0 / 1.5f64.sqrt()).abs() < 1e-15);

        let z = c::<f64>(0.7, -0.4);
        let t = q_coherent_coeffs(z, 1.0, 15).unwrap();
        let mut fact = 1.0f64;
        for n in 0..=15usize {
            if n > 0 {
                fact *= n as f64;
            }
            let expected = z.powi(n as i32) / fact.sqrt();
            assert!((t.get(n, 0).unwrap() - expected).norm() < 1e-12);
        }
        assert!(matches!(q_coherent_coeffs(z, 0.0, 4), Err(Error::InvalidDeformation(_))));
        assert!(matches!(
            q_coherent_coeffs(z, -2.0, 4),
            Err(Error::RepresentationBreakdown { level: 2, .. })
        ));
    }

    #[test]
    fn fractional_coefficients() {
        let g = GradingParams::<f64>::new(3).unwrap();
        let t = fractional_supercoherent_coeffs(c(0.0, 0.0), &g, 4);
        assert_eq!(t.coeffs.len(), 15);
        for s in 0..3 {
            assert!((t.get(0, s).unwrap() - g.q_factorial(s).sqrt().inv()).norm() < 1e-15);
            for r in 1..=4 {
                assert_eq!(t.get(r, s).unwrap(), c(0.0, 0.0));
            }
        }
        let t = fractional_supercoherent_coeffs(c(1.0, 0.0), &g, 2);
        let expected = (c::<f64>(1.0, 0.0) + g.q()).sqrt().inv();
        assert!((t.get(1, 2).unwrap() - expected).norm() < 1e-15);

        let z = c::<f64>(0.5, 0.2);
        let t = fractional_supercoherent_coeffs(z, &g, 10);
        assert_eq!(t.coeffs.len(), 33);
        assert_eq!(t.get(0, 0), Some(c(1.0, 0.0)));
        for r in 0..10 {
            for s in 0..3 {
                let ratio = t.get(r + 1, s).unwrap() / t.get(r, s).unwrap();
                assert!((ratio - z / ((r + 1) as f64).sqrt()).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn z2_table_is_the_supersymmetric_oscillator() {
        let g = GradingParams::<f64>::new(2).unwrap();
        let z = c::<f64>(-0.3, 0.8);
        let t = fractional_supercoherent_coeffs(z, &g, 8);
        let mut fact = 1.0f64;
        for r in 0..=8usize {
            if r > 0 {
                fact *= r as f64;
            }
            let expected = z.powi(r as i32) / fact.sqrt();
            assert!((t.get(r, 0).unwrap() - expected).norm() < 1e-12);
            assert!((t.get(r, 1).unwrap() - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn json_shapes() {
        let rep = SpectrumReport {
            levels: vec![(0.0, 1), (1.0, 2)],
            cluster_tol: CLUSTER_TOLERANCE,
            interior: 3,
        };
        let text = serde_json::to_string(&rep.to_json(2)).unwrap();
        assert_eq!(text, r#"{"levels":[[0.0,1],[1.0,2]],"pattern":"1 ⊕ 2"}"#);
        let g = GradingParams::<f64>::new(2).unwrap();
        let json = serde_json::to_value(fractional_supercoherent_coeffs(c(1.0, 0.0), &g, 0).to_json()).unwrap();
        assert_eq!(json["params"]["kind"], "fractional");
        assert_eq!(json["coeffs"][1], serde_json::json!([0, 1, 1.0, 0.0]));
    }
}
