//! q-arithmetic and the Z_k grading context.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// `exp(2πi/k)`. For `k = 2` the value is exactly `-1`.
pub fn root_of_unity<T: Real>(k: usize) -> Result<Complex<T>> {
    if k < 2 {
        return Err(Error::InvalidGrading(k));
    }
    if k == 2 {
        return Ok(Complex::new(-T::one(), T::zero()));
    }
    let theta = T::PI() * T::lit(2.0) / T::from_count(k);
    Ok(Complex::from_polar(T::one(), theta))
}

/// `[n]_q = 1 + q + ... + q^{n-1}`, evaluated by the recursion
/// `[n+1]_q = 1 + q [n]_q`. Well defined at `q = 1` (gives `n`).
pub fn q_number<T: Real>(n: usize, q: Complex<T>) -> Complex<T> {
    let mut acc = Complex::zero();
    for _ in 0..n {
        acc = Complex::<T>::one() + q * acc;
    }
    acc
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`, with `[0]_q! = 1`.
pub fn q_factorial<T: Real>(n: usize, q: Complex<T>) -> Complex<T> {
    (1..=n).fold(Complex::one(), |acc, m| acc * q_number(m, q))
}

/// Real-deformation specialisation used by the quon representation.
pub fn q_number_real<T: Real>(n: usize, q: T) -> T {
    q_number(n, Complex::new(q, T::zero())).re
}

pub fn q_factorial_real<T: Real>(n: usize, q: T) -> T {
    q_factorial(n, Complex::new(q, T::zero())).re
}

/// Order `k` of the grading together with `q = exp(2πi/k)` and the cached
/// table `q^0, ..., q^{k-1}` built by repeated multiplication. All powers of
/// `q` used anywhere in the crate come from this table.
#[derive(Debug, Clone, PartialEq)]
pub struct GradingParams<T: Real> {
    k: usize,
    q: Complex<T>,
    powers: Vec<Complex<T>>,
}

impl<T: Real> GradingParams<T> {
    pub fn new(k: usize) -> Result<Self> {
        let q = root_of_unity::<T>(k)?;
        let mut powers = Vec::with_capacity(k);
        let mut acc = Complex::one();
        for _ in 0..k {
            powers.push(acc);
            acc = acc * q;
        }
        Ok(Self { k, q, powers })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> Complex<T> {
        self.q
    }

    /// `q^e` for any integer exponent, reduced mod `k` into the power table.
    pub fn pow(&self, e: i64) -> Complex<T> {
        self.powers[e.rem_euclid(self.k as i64) as usize]
    }

    pub fn powers(&self) -> &[Complex<T>] {
        &self.powers
    }

    pub fn q_number(&self, n: usize) -> Complex<T> {
        q_number(n, self.q)
    }

    pub fn q_factorial(&self, n: usize) -> Complex<T> {
        q_factorial(n, self.q)
    }

    /// `q - q^{-1}`; zero (and rejected) for `k = 2`.
    pub fn sym_denominator(&self) -> Result<Complex<T>> {
        if self.k == 2 {
            return Err(Error::SingularDenominator);
        }
        Ok(self.q - self.pow(-1))
    }

    /// Symmetric q-number `(q^n - q^{-n}) / (q - q^{-1})`.
    pub fn sym_number(&self, n: i64) -> Result<Complex<T>> {
        let den = self.sym_denominator()?;
        Ok((self.pow(n) - self.pow(-n)) / den)
    }

    /// `G(x) = (q^{2x} - q^{-2x}) / (q - q^{-1})` at integer `x`.
    pub fn g_function(&self, x: i64) -> Result<Complex<T>> {
        self.sym_number(2 * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn roots_match_closed_forms() {
        let q2 = root_of_unity::<f64>(2).unwrap();
        assert_eq!(q2, Complex::new(-1.0, 0.0));
        let q4 = root_of_unity::<f64>(4).unwrap();
        assert_abs_diff_eq!(q4.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q4.im, 1.0, epsilon = 1e-15);
        let q3 = root_of_unity::<f64>(3).unwrap();
        assert_abs_diff_eq!(q3.re, -0.5, epsilon = 1e-7);
        assert_abs_diff_eq!(q3.im, 0.8660254, epsilon = 1e-7);
        assert!(matches!(root_of_unity::<f64>(1), Err(Error::InvalidGrading(1))));
    }

    #[test]
    fn powers_are_primitive() {
        for k in 2..=8 {
            let g = GradingParams::<f64>::new(k).unwrap();
            let qk = g.powers()[k - 1] * g.q();
            assert!((qk - 1.0).norm() < 1e-12, "k={k}");
            for j in 1..k {
                assert!((g.pow(j as i64) - 1.0).norm() > 0.1);
            }
            if k >= 3 {
                assert!(g.q().im > 0.0);
            }
        }
    }

    #[test]
    fn q_numbers_at_cube_root() {
        let g = GradingParams::<f64>::new(3).unwrap();
        assert_eq!(g.q_number(0), Complex::zero());
        let two = g.q_number(2);
        assert_abs_diff_eq!(two.re, 0.5, epsilon = 1e-7);
        assert_abs_diff_eq!(two.im, 0.8660254, epsilon = 1e-7);
        assert!(g.q_number(3).norm() < 1e-15);
        assert_eq!(g.q_factorial(0), Complex::one());
        assert!(g.q_factorial(3).norm() < 1e-15);
        assert!((g.q_factorial(2) - two).norm() < 1e-15);
    }

    #[test]
    fn q_number_recursion_is_exact() {
        for k in 2..=8 {
            let q = GradingParams::<f64>::new(k).unwrap().q();
            for n in 0..=20 {
                assert_eq!(q_number(n + 1, q), Complex::<f64>::one() + q * q_number(n, q));
            }
        }
    }

    #[test]
    fn q_number_at_one_is_n() {
        for n in 0..10 {
            assert_eq!(q_number_real(n, 1.0f64), n as f64);
        }
        assert_abs_diff_eq!(q_factorial_real(2, 0.5f64), 1.5, epsilon = 1e-15);
    }

    #[test]
    fn q_number_matches_closed_form() {
        let q = Complex::new(0.3f64, 0.7);
        for n in 0..12 {
            let closed: Complex<f64> = (Complex::<f64>::one() - q.powi(n as i32)) / (Complex::<f64>::one() - q);
            assert!((q_number(n, q) - closed).norm() < 1e-13);
        }
    }

    #[test]
    fn symmetric_numbers_reject_k2() {
        let g = GradingParams::<f64>::new(2).unwrap();
        assert!(matches!(g.sym_number(1), Err(Error::SingularDenominator)));
        let g = GradingParams::<f64>::new(3).unwrap();
        // q + q^-1 = 2 cos(2π/3) = -1
        assert!((g.sym_number(2).unwrap() + 1.0).norm() < 1e-15);
    }
}
