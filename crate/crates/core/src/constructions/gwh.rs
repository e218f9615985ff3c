//! Generalized Weyl–Heisenberg construction: `[Y-, Y+] = Σ_s f_s(N) Π_s`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use num_traits::{One, Zero};

use super::projectors::{kpowers_to_grades, structural_tol, ProjectorFamily};
use crate::basis::GradedBasis;
use crate::error::{shape_err, Error, Result};
use crate::matrix::OperatorMatrix;
use crate::qarith::GradingParams;
use crate::scalar::{real, Real};

pub type GradeFn<T> = Arc<dyn Fn(i64) -> Complex<T> + Send + Sync>;

/// The k structure functions `f_0, ..., f_{k-1}` (integers to complex).
#[derive(Clone)]
pub struct Structure<T: Real> {
    label: String,
    grades: Vec<GradeFn<T>>,
}

impl<T: Real> fmt::Debug for Structure<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Structure")
            .field("label", &self.label)
            .field("k", &self.grades.len())
            .finish()
    }
}

impl<T: Real> Structure<T> {
    pub fn from_fns(label: impl Into<String>, grades: Vec<GradeFn<T>>) -> Self {
        Self {
            label: label.into(),
            grades,
        }
    }

    /// `f_s = 1` for every grade: reduces to the quon construction.
    pub fn ones(k: usize) -> Self {
        Self::constants("ones", vec![Complex::one(); k])
    }

    pub fn constants(label: impl Into<String>, values: Vec<Complex<T>>) -> Self {
        let grades = values
            .into_iter()
            .map(|v| Arc::new(move |_: i64| v) as GradeFn<T>)
            .collect();
        Self::from_fns(label, grades)
    }

    /// `Σ_s c_s K^s`, converted to per-grade constants.
    pub fn kpoly(coeffs: &[Complex<T>], g: &GradingParams<T>) -> Self {
        let label = format!(
            "kpoly:{}",
            coeffs.iter().map(|c| format!("{}{:+}i", c.re, c.im)).collect::<Vec<_>>().join(",")
        );
        Self::constants(label, kpowers_to_grades(coeffs, g))
    }

    /// `1 + c K`.
    pub fn affine(c: Complex<T>, g: &GradingParams<T>) -> Self {
        let mut s = Self::kpoly(&[Complex::one(), c], g);
        s.label = format!("affine:{}{:+}i", c.re, c.im);
        s
    }

    pub fn relabeled(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn k(&self) -> usize {
        self.grades.len()
    }

    pub fn eval(&self, grade: usize, n: i64) -> Complex<T> {
        (self.grades[grade])(n)
    }
}

/// `Y-`, `Y+`, `N`, `K` of the generalized Weyl–Heisenberg construction.
#[derive(Debug, Clone)]
pub struct GwhRep<T: Real> {
    pub lower: OperatorMatrix<T>,
    pub raise: OperatorMatrix<T>,
    pub number: OperatorMatrix<T>,
    pub grading: OperatorMatrix<T>,
}

/// Direct sum of `k` ladders on the graded basis. The ladder whose lowest
/// state has grade `s0` holds `|r, (r + s0) mod k>`; on every ladder
/// `N|r, s> = r|r, s>`, `K|r, s> = q^s|r, s>` and
/// `Y+|r, s> = sqrt(F(r + 1)) |r + 1, s + 1>`, where `F(0) = 0` and
/// `F(r + 1) = F(r) + f_σ(r)` with `σ = (-s) mod k` the index of the
/// projector selecting grade `s`. `Y-` is the conjugate transpose.
pub fn gwh_rep<T: Real>(g: &GradingParams<T>, nmax: usize, structure: &Structure<T>) -> Result<GwhRep<T>> {
    let k = g.k();
    if structure.k() != k {
        return Err(shape_err(format!("{k} structure functions"), structure.k()));
    }
    let basis = GradedBasis::new(k, nmax);
    let tol = structural_tol::<T>();
    let mut items = Vec::with_capacity(basis.dim());
    for s0 in 0..k {
        let mut cumulative = Complex::<T>::zero();
        for r in 0..nmax {
            let s = (r + s0) % k;
            let sigma = (k - s) % k;
            cumulative = cumulative + structure.eval(sigma, r as i64);
            let scale = T::one().max(cumulative.norm());
            if cumulative.im.abs() > tol * scale || cumulative.re < -tol * scale {
                return Err(Error::RepresentationBreakdown {
                    level: r + 1,
                    detail: format!(
                        "F = {}{:+}i on the ladder starting at grade {s0} is not a nonnegative real",
                        cumulative.re, cumulative.im
                    ),
                });
            }
            let w = cumulative.re.max(T::zero()).sqrt();
            items.push((basis.index(r + 1, (s + 1) % k), basis.index(r, s), real(w)));
        }
    }
    let raise = OperatorMatrix::from_entries(basis.dim(), items).labeled("Y+");
    let lower = crate::representations::adjoint(&raise).labeled("Y-");
    let number = OperatorMatrix::from_diagonal((0..basis.dim()).map(|n| real(T::from_count(basis.state(n).0))))
        .labeled("N");
    let grading = OperatorMatrix::from_diagonal((0..basis.dim()).map(|n| g.pow(basis.state(n).1 as i64))).labeled("K");
    Ok(GwhRep {
        lower,
        raise,
        number,
        grading,
    })
}

/// `f_grade(N + shift)` for diagonal `N`.
fn f_of_number<T: Real>(
    structure: &Structure<T>,
    grade: usize,
    number: &OperatorMatrix<T>,
    shift: i64,
) -> Result<OperatorMatrix<T>> {
    number.map_diagonal(|x| {
        let n = x.re.round().to_i64().expect("integral number eigenvalue");
        structure.eval(grade % structure.k(), n + shift)
    })
}

/// `Σ_s f_s(N) Π_s`.
pub fn structure_operator<T: Real>(
    number: &OperatorMatrix<T>,
    proj: &ProjectorFamily<T>,
    structure: &Structure<T>,
) -> Result<OperatorMatrix<T>> {
    let mut acc = OperatorMatrix::zeros(number.dim());
    for s in 0..proj.len() {
        acc = &acc + &f_of_number(structure, s, number, 0)?.try_mul(proj.get(s))?;
    }
    Ok(acc.labeled("S"))
}

fn check_inputs<T: Real>(
    proj: &ProjectorFamily<T>,
    structure: &Structure<T>,
    g: &GradingParams<T>,
    number: &OperatorMatrix<T>,
) -> Result<()> {
    if proj.len() != g.k() || structure.k() != g.k() {
        return Err(shape_err(
            format!("k = {}", g.k()),
            format!("{} projectors, {} structure functions", proj.len(), structure.k()),
        ));
    }
    if !number.is_diagonal() {
        return Err(Error::UnsupportedInput("number operator N must be diagonal".into()));
    }
    Ok(())
}

/// Hamiltonian of the generalized Weyl–Heisenberg oscillator, valid for every
/// `k >= 2` and `N`-dependent structure functions:
///
/// ```text
/// H = Σ_i [ (k-1) Y+Y- + Σ_{j=1}^{i} j f_j(N+i-j)
///           - Σ_{e=1}^{k-2-i} (k-1-i-e) f_{i+e}(N-e) ] Π_i
/// ```
///
/// On a complete multiplet the bracket equals `F(n+1) + ... + F(n+k-1)`,
/// the sum of the ladder weights the supercharges pass through.
pub fn hamiltonian_gwh<T: Real>(
    lower: &OperatorMatrix<T>,
    raise: &OperatorMatrix<T>,
    number: &OperatorMatrix<T>,
    proj: &ProjectorFamily<T>,
    structure: &Structure<T>,
    g: &GradingParams<T>,
) -> Result<OperatorMatrix<T>> {
    check_inputs(proj, structure, g, number)?;
    let k = g.k();
    let km1 = real(T::from_count(k - 1));
    let ypym = raise.try_mul(lower)?.scale(km1);
    let mut h = OperatorMatrix::zeros(number.dim());
    for i in 0..k {
        let mut bracket = ypym.clone();
        for j in 1..=i {
            let term = f_of_number(structure, j, number, (i - j) as i64)?;
            bracket = &bracket + &term.scale(real(T::from_count(j)));
        }
        for e in 1..(k - 1).saturating_sub(i) {
            let term = f_of_number(structure, i + e, number, -(e as i64))?;
            bracket = &bracket - &term.scale(real(T::from_count(k - 1 - i - e)));
        }
        h = &h + &bracket.try_mul(proj.get(i))?;
    }
    Ok(h.labeled("H"))
}

/// The four-line closed form as usually printed for this construction. It
/// agrees with [`hamiltonian_gwh`] for `k <= 5` and `N`-independent
/// structure functions; outside that range it no longer commutes with the
/// supercharges (kept for comparison).
pub fn hamiltonian_gwh_printed<T: Real>(
    lower: &OperatorMatrix<T>,
    raise: &OperatorMatrix<T>,
    number: &OperatorMatrix<T>,
    proj: &ProjectorFamily<T>,
    structure: &Structure<T>,
    g: &GradingParams<T>,
) -> Result<OperatorMatrix<T>> {
    check_inputs(proj, structure, g, number)?;
    let k = g.k();
    let km1 = real(T::from_count(k - 1));
    let ypym = raise.try_mul(lower)?.scale(km1);
    let ymyp = lower.try_mul(raise)?.scale(km1);
    let weight = |w: usize| real(T::from_count(w));

    let mut line0 = ypym.clone();
    for l in 1..=k.saturating_sub(2) {
        line0 = &line0 - &f_of_number(structure, l, number, -1)?.scale(weight(k - 1 - l));
    }
    let mut line1 = ymyp.clone();
    for l in 1..=k.saturating_sub(2) {
        line1 = &line1 - &f_of_number(structure, l, number, 1 - l as i64)?.scale(weight(k - 1 - l));
    }
    let mut h = &line0.try_mul(proj.get(0))? + &line1.try_mul(proj.get(1))?;
    if k >= 3 {
        let mut line2 = &ymyp + &f_of_number(structure, 1, number, 1)?;
        for l in 2..=k - 2 {
            line2 = &line2 - &f_of_number(structure, l, number, 2 - l as i64)?.scale(weight(k - 1 - l));
        }
        h = &h + &line2.try_mul(proj.get(2))?;
    }
    for l in 3..k {
        let mut line = ypym.clone();
        for j in 1..=l {
            line = &line + &f_of_number(structure, j, number, (l - j) as i64)?.scale(weight(j));
        }
        h = &h + &line.try_mul(proj.get(l))?;
    }
    Ok(h.labeled("H"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::InteriorMask;
    use crate::constructions::{hamiltonian_quon, projectors, quon_ladder, supercharges};
    use crate::matrix::relation_residual;
    use crate::representations::{boson_ops, kfermion_ops};

    fn build(k: usize, nmax: usize, s: &Structure<f64>) -> (GradingParams<f64>, GwhRep<f64>, ProjectorFamily<f64>) {
        let g = GradingParams::new(k).unwrap();
        let rep = gwh_rep(&g, nmax, s).unwrap();
        let proj = projectors(&rep.grading, &g).unwrap();
        (g, rep, proj)
    }

    fn affine_half(k: usize) -> Structure<f64> {
        let g = GradingParams::new(k).unwrap();
        Structure::affine(Complex::new(0.5, 0.0), &g)
    }

    /// Real positive constants for any `k`; `1 + cK` only stays real at `k = 2`.
    fn stepped(k: usize) -> Structure<f64> {
        if k == 2 {
            return affine_half(2);
        }
        Structure::constants("stepped", (0..k).map(|s| Complex::new(1.0 + 0.3 * s as f64, 0.0)).collect())
    }

    /// Grade-dependent and `N`-dependent, with positive values throughout.
    fn ramp(k: usize) -> Structure<f64> {
        let fns = (0..k)
            .map(|s| Arc::new(move |n: i64| Complex::new(1.0 + 0.25 * s as f64 + 0.1 * n as f64, 0.0)) as GradeFn<f64>)
            .collect();
        Structure::from_fns("ramp", fns)
    }

    #[test]
    fn unit_structure_is_a_boson_ladder() {
        let (_, rep, _) = build(3, 5, &Structure::ones(3));
        let basis = GradedBasis::new(3, 5);
        for r in 0..5 {
            for s in 0..3 {
                let w = rep.raise.get(basis.index(r + 1, (s + 1) % 3), basis.index(r, s));
                assert!((w.re - ((r + 1) as f64).sqrt()).abs() < 1e-15 && w.im == 0.0);
            }
        }
    }

    #[test]
    fn affine_increments_at_k2() {
        let (_, rep, _) = build(2, 4, &affine_half(2));
        let basis = GradedBasis::new(2, 4);
        assert!((rep.raise.get(basis.index(1, 1), basis.index(0, 0)).re - 1.5f64.sqrt()).abs() < 1e-15);
        assert!((rep.raise.get(basis.index(2, 0), basis.index(1, 1)).re - 2.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn vanishing_structure() {
        let s = Structure::constants("zero", vec![Complex::new(0.0, 0.0); 3]);
        let (_, rep, proj) = build(3, 4, &s);
        assert_eq!(rep.raise.max_abs(), 0.0);
        let sop = structure_operator(&rep.number, &proj, &s).unwrap();
        assert_eq!(rep.lower.commutator(&rep.raise).max_abs(), 0.0);
        assert_eq!(sop.max_abs(), 0.0);
    }

    #[test]
    fn negative_structure_breaks_down() {
        let g = GradingParams::<f64>::new(2).unwrap();
        let s = Structure::affine(Complex::new(-3.0, 0.0), &g);
        assert!(matches!(gwh_rep(&g, 4, &s), Err(Error::RepresentationBreakdown { level: 1, .. })));
    }

    #[test]
    fn ladder_commutator_is_the_structure_operator() {
        for k in 2..=6 {
            for s in [Structure::ones(k), stepped(k), ramp(k)] {
                let (_, rep, proj) = build(k, 6 * k, &s);
                let sop = structure_operator(&rep.number, &proj, &s).unwrap();
                let mask = InteriorMask::new(&GradedBasis::new(k, 6 * k), 2);
                let comm = rep.lower.commutator(&rep.raise);
                assert!(relation_residual(&comm, &sop, &mask).unwrap() < 1e-10, "k={k} {}", s.label());
            }
        }
    }

    #[test]
    fn hamiltonian_commutes_with_supercharges() {
        for k in 2..=7 {
            for s in [Structure::ones(k), stepped(k), ramp(k)] {
                let (g, rep, proj) = build(k, 6 * k, &s);
                let (qm, qp) = supercharges(&rep.lower, &rep.raise, &proj).unwrap();
                let h = hamiltonian_gwh(&rep.lower, &rep.raise, &rep.number, &proj, &s, &g).unwrap();
                let mask = InteriorMask::new(&GradedBasis::new(k, 6 * k), 2 * k);
                assert!(h.commutator(&qm).masked_max_abs(&mask).unwrap() < 1e-10, "k={k} {}", s.label());
                assert!(h.commutator(&qp).masked_max_abs(&mask).unwrap() < 1e-10, "k={k} {}", s.label());
            }
        }
    }

    #[test]
    fn printed_form_range_of_validity() {
        for k in 2..=6 {
            let s = stepped(k);
            let (g, rep, proj) = build(k, 6 * k, &s);
            let mask = InteriorMask::new(&GradedBasis::new(k, 6 * k), 2 * k);
            let general = hamiltonian_gwh(&rep.lower, &rep.raise, &rep.number, &proj, &s, &g).unwrap();
            let printed = hamiltonian_gwh_printed(&rep.lower, &rep.raise, &rep.number, &proj, &s, &g).unwrap();
            let gap = relation_residual(&general, &printed, &mask).unwrap();
            if k <= 5 {
                assert!(gap < 1e-10, "k={k} gap={gap}");
            } else {
                assert!(gap > 1e-3, "k={k} gap={gap}");
            }
        }
    }

    #[test]
    fn unit_structure_reproduces_quon_hamiltonian() {
        for k in 2..=4 {
            let nmax = 6 * k;
            let s = Structure::ones(k);
            let (g, rep, proj) = build(k, nmax, &s);
            let h = hamiltonian_gwh(&rep.lower, &rep.raise, &rep.number, &proj, &s, &g).unwrap();
            let basis = GradedBasis::new(k, nmax);
            let ladder = quon_ladder(&boson_ops(nmax), &kfermion_ops(&g), &basis, &g).unwrap();
            let qproj = projectors(&ladder.grading, &g).unwrap();
            let hq = hamiltonian_quon(&ladder.lower, &ladder.raise, &qproj, &g).unwrap();
            let mask = InteriorMask::new(&basis, 2 * k);
            assert!(relation_residual(&h, &hq, &mask).unwrap() < 1e-10, "k={k}");
        }
    }

    #[test]
    fn structure_shape_is_checked() {
        let g = GradingParams::<f64>::new(3).unwrap();
        assert!(matches!(gwh_rep(&g, 4, &Structure::ones(2)), Err(Error::Shape { .. })));
    }
}
