use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{shape_err, Error, Result};
use crate::matrix::OperatorMatrix;
use crate::qarith::GradingParams;
use crate::scalar::Real;

/// Round-off scale used for structural comparisons (`K^k = 1`, projector spectra).
pub(crate) fn structural_tol<T: Real>() -> T {
    T::epsilon() * T::lit(4096.0)
}

/// `Π_0, ..., Π_{k-1}` on a common space.
#[derive(Debug, Clone)]
pub struct ProjectorFamily<T: Real> {
    members: Vec<OperatorMatrix<T>>,
}

impl<T: Real> ProjectorFamily<T> {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.members[0].dim()
    }

    pub fn get(&self, i: usize) -> &OperatorMatrix<T> {
        &self.members[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &OperatorMatrix<T>> {
        self.members.iter()
    }

    /// `Π_0 + Π_1 + ... + Π_{upto-1}`; zero operator when `upto = 0`.
    pub fn partial_sum(&self, upto: usize) -> OperatorMatrix<T> {
        let mut acc = OperatorMatrix::zeros(self.dim());
        for p in &self.members[..upto] {
            acc = &acc + p;
        }
        acc
    }

    /// `1 - Π_i`.
    pub fn complement(&self, i: usize) -> OperatorMatrix<T> {
        self.members[i].scale(-Complex::one()).add_identity(Complex::one())
    }
}

/// `Π_i = (1/k) Σ_s q^{si} K^s`, with `q^{si}` taken from the power table.
///
/// When `K` is diagonal the projectors are diagonal with spectrum `{0, 1}`;
/// each entry of the literal sum is then checked to lie within round-off of
/// 0 or 1 and set to that value, so `1 - Π_i` annihilates its sector exactly.
pub fn projectors<T: Real>(grading: &OperatorMatrix<T>, g: &GradingParams<T>) -> Result<ProjectorFamily<T>> {
    let k = g.k();
    let dim = grading.dim();
    let tol = structural_tol::<T>();
    let defect = grading
        .pow(k as u32)
        .add_identity(-Complex::one())
        .max_abs();
    if defect > tol {
        return Err(Error::GradingViolation(defect.to_f64_lossy()));
    }
    let powers: Vec<OperatorMatrix<T>> = (0..k).map(|s| grading.pow(s as u32)).collect();
    let inv_k = Complex::new(T::one() / T::from_count(k), T::zero());
    let mut members = Vec::with_capacity(k);
    for i in 0..k {
        let mut acc = OperatorMatrix::zeros(dim);
        for (s, ks) in powers.iter().enumerate() {
            acc = &acc + &ks.scale(g.pow((s * i) as i64));
        }
        members.push(acc.scale(inv_k).labeled(format!("Pi{i}")));
    }
    if grading.is_diagonal() {
        let snap = |z: Complex<T>| -> Option<Complex<T>> {
            if z.norm() <= tol {
                Some(Complex::zero())
            } else if (z - Complex::one()).norm() <= tol {
                Some(Complex::one())
            } else {
                None
            }
        };
        let all_snappable = members
            .iter()
            .all(|p| p.is_diagonal() && p.diagonal().into_iter().all(|z| snap(z).is_some()));
        if all_snappable {
            members = members
                .into_iter()
                .map(|p| {
                    let label = p.label().to_string();
                    OperatorMatrix::from_diagonal(p.diagonal().into_iter().map(|z| snap(z).unwrap())).labeled(label)
                })
                .collect();
        }
    }
    Ok(ProjectorFamily { members })
}

/// Constants `f_i = Σ_s c_s q^{-is}` with `Σ_i f_i Π_i = Σ_s c_s K^s`.
pub fn kpowers_to_grades<T: Real>(coeffs: &[Complex<T>], g: &GradingParams<T>) -> Vec<Complex<T>> {
    (0..g.k())
        .map(|i| {
            coeffs
                .iter()
                .enumerate()
                .fold(Complex::zero(), |acc, (s, &c)| acc + c * g.pow(-((i * s) as i64)))
        })
        .collect()
}

/// `Σ_i w_i Π_i` for constant weights.
pub fn weighted_projector_sum<T: Real>(weights: &[Complex<T>], proj: &ProjectorFamily<T>) -> Result<OperatorMatrix<T>> {
    if weights.len() != proj.len() {
        return Err(shape_err(format!("{} weights", proj.len()), format!("{} weights", weights.len())));
    }
    let mut acc = OperatorMatrix::zeros(proj.dim());
    for (w, p) in weights.iter().zip(proj.iter()) {
        acc = &acc + &p.scale(*w);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::InteriorMask;
    use crate::matrix::relation_residual;
    use crate::representations::kfermion_ops;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn family(k: usize) -> (GradingParams<f64>, OperatorMatrix<f64>, ProjectorFamily<f64>) {
        let g = GradingParams::new(k).unwrap();
        let kop = kfermion_ops(&g).grading;
        let p = projectors(&kop, &g).unwrap();
        (g, kop, p)
    }

    #[test]
    fn k2_chirality_projectors() {
        let (_, kop, p) = family(2);
        let full = InteriorMask::full(2);
        let plus = kop.add_identity(Complex::one()).scale(Complex::new(0.5, 0.0));
        let minus = kop.scale(-Complex::one()).add_identity(Complex::one()).scale(Complex::new(0.5, 0.0));
        assert!(relation_residual(p.get(0), &plus, &full).unwrap() < 1e-15);
        assert!(relation_residual(p.get(1), &minus, &full).unwrap() < 1e-15);
    }

    #[test]
    fn k3_projector_one() {
        let (g, kop, p) = family(3);
        let lit = (&(&OperatorMatrix::identity(3) + &kop.scale(g.q())) + &kop.pow(2).scale(g.pow(2)))
            .scale(Complex::new(1.0 / 3.0, 0.0));
        assert!(relation_residual(p.get(1), &lit, &InteriorMask::full(3)).unwrap() < 1e-12);
    }

    #[test]
    fn projector_selects_negative_grade() {
        // Oracle: Σ_s q^{s(i+m)} = k δ_{i+m ≡ 0}; evaluated independently with cis().
        for k in 2..=7 {
            let (_, _, p) = family(k);
            for i in 0..k {
                for m in 0..k {
                    let oracle: Complex<f64> = (0..k)
                        .map(|s| Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * (s * (i + m)) as f64 / k as f64))
                        .sum::<Complex<f64>>()
                        / k as f64;
                    assert!((p.get(i).get(m, m) - oracle).norm() < 1e-12, "k={k} i={i} m={m}");
                }
                let selected: Vec<usize> = (0..k).filter(|&m| p.get(i).get(m, m).re > 0.5).collect();
                assert_eq!(selected, vec![(k - i) % k]);
            }
        }
    }

    #[test]
    fn family_axioms() {
        for k in 2..=8 {
            let (_, _, p) = family(k);
            let full = InteriorMask::full(k);
            let id = OperatorMatrix::identity(k);
            assert!(relation_residual(&p.partial_sum(k), &id, &full).unwrap() < 1e-12);
            for i in 0..k {
                assert!(p.get(i).is_diagonal());
                assert!(relation_residual(&(p.get(i) * p.get(i)), p.get(i), &full).unwrap() < 1e-12);
                for j in 0..k {
                    if i != j {
                        assert!((p.get(i) * p.get(j)).max_abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn non_grading_operator_is_rejected() {
        let g = GradingParams::<f64>::new(3).unwrap();
        let bad = OperatorMatrix::from_diagonal([Complex::new(2.0, 0.0); 3]);
        assert!(matches!(projectors(&bad, &g), Err(Error::GradingViolation(_))));
    }

    #[test]
    fn kpowers_examples() {
        let g = GradingParams::<f64>::new(4).unwrap();
        let f = kpowers_to_grades(&[Complex::one(), Complex::zero(), Complex::zero(), Complex::zero()], &g);
        assert!(f.iter().all(|z| (z - 1.0).norm() < 1e-15));
        let g2 = GradingParams::<f64>::new(2).unwrap();
        let f = kpowers_to_grades(&[Complex::one(), Complex::new(0.3, 0.1)], &g2);
        assert!((f[0] - Complex::new(1.3, 0.1)).norm() < 1e-15);
        assert!((f[1] - Complex::new(0.7, -0.1)).norm() < 1e-15);
    }

    #[test]
    fn kpowers_round_trip_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let k = 5;
        let (g, kop, p) = family(k);
        for _ in 0..20 {
            let c: Vec<Complex<f64>> = (0..k).map(|_| Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
            let f = kpowers_to_grades(&c, &g);
            let lhs = weighted_projector_sum(&f, &p).unwrap();
            let mut rhs = OperatorMatrix::zeros(k);
            for (s, cs) in c.iter().enumerate() {
                rhs = &rhs + &kop.pow(s as u32).scale(*cs);
            }
            assert!(relation_residual(&lhs, &rhs, &InteriorMask::full(k)).unwrap() <= 1e-12);
        }
    }
}
