//! Evaluation of relation trees against named operator matrices.

use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::{One, Zero};

use super::ast::{Exponent, Expr, Scalar};
use crate::error::{Error, Result};
use crate::matrix::OperatorMatrix;
use crate::qarith::GradingParams;
use crate::scalar::Real;

/// Name → operator binding; all operators share one dimension.
pub type Env<T> = BTreeMap<String, OperatorMatrix<T>>;

#[derive(Debug, Clone)]
pub enum Value<T: Real> {
    Scalar(Complex<T>),
    Op(OperatorMatrix<T>),
}

impl<T: Real> Value<T> {
    /// Scalars become multiples of the identity.
    pub fn into_operator(self, dim: usize) -> OperatorMatrix<T> {
        match self {
            Value::Op(m) => m,
            Value::Scalar(s) => OperatorMatrix::identity(dim).scale(s),
        }
    }
}

fn scalar_value<T: Real>(s: Scalar, g: &GradingParams<T>) -> Complex<T> {
    match s {
        Scalar::Rational { num, den } => {
            let num = T::from_u64(num).expect("representable numerator");
            let den = T::from_u64(den).expect("representable denominator");
            Complex::new(num / den, T::zero())
        }
        Scalar::QPow(n) => g.pow(n as i64),
    }
}

fn exponent_value<T: Real>(e: Exponent, g: &GradingParams<T>) -> u32 {
    match e {
        Exponent::Int(n) => n,
        Exponent::K => g.k() as u32,
    }
}

fn scalar_pow<T: Real>(s: Complex<T>, n: u32) -> Complex<T> {
    if n == 0 {
        return Complex::one();
    }
    let mut acc = s;
    for _ in 1..n {
        acc = acc * s;
    }
    acc
}

fn add<T: Real>(a: Value<T>, b: Value<T>, negate: bool) -> Result<Value<T>> {
    Ok(match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(if negate { x - y } else { x + y }),
        (Value::Op(a), Value::Op(b)) => Value::Op(if negate { a.try_sub(&b)? } else { a.try_add(&b)? }),
        (Value::Op(a), Value::Scalar(y)) => Value::Op(a.add_identity(if negate { -y } else { y })),
        (Value::Scalar(x), Value::Op(b)) => Value::Op(if negate {
            b.scale(-Complex::<T>::one()).add_identity(x)
        } else {
            b.add_identity(x)
        }),
    })
}

fn mul<T: Real>(a: Value<T>, b: Value<T>) -> Result<Value<T>> {
    Ok(match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x * y),
        (Value::Op(a), Value::Op(b)) => Value::Op(a.try_mul(&b)?),
        (Value::Op(a), Value::Scalar(y)) => Value::Op(a.scale(y)),
        (Value::Scalar(x), Value::Op(b)) => Value::Op(b.scale(x)),
    })
}

/// Evaluates `expr`. Operator ± scalar adds a multiple of the identity, a
/// commutator with a scalar argument vanishes, products fold left to right
/// and powers are repeated left multiplication.
pub fn eval_value<T: Real>(expr: &Expr, env: &Env<T>, g: &GradingParams<T>) -> Result<Value<T>> {
    match expr {
        Expr::Ident(name) => env
            .get(name)
            .cloned()
            .map(Value::Op)
            .ok_or_else(|| Error::UnboundIdentifier(name.clone())),
        Expr::Scalar(s) => Ok(Value::Scalar(scalar_value(*s, g))),
        Expr::Sum(a, b) => add(eval_value(a, env, g)?, eval_value(b, env, g)?, false),
        Expr::Difference(a, b) => add(eval_value(a, env, g)?, eval_value(b, env, g)?, true),
        Expr::Product(factors) => {
            let mut iter = factors.iter();
            let first = iter.next().expect("products have at least one factor");
            let mut acc = eval_value(first, env, g)?;
            for f in iter {
                acc = mul(acc, eval_value(f, env, g)?)?;
            }
            Ok(acc)
        }
        Expr::Power(base, e) => {
            let n = exponent_value(*e, g);
            Ok(match eval_value(base, env, g)? {
                Value::Scalar(s) => Value::Scalar(scalar_pow(s, n)),
                Value::Op(m) => Value::Op(m.pow(n)),
            })
        }
        Expr::Commutator(a, b) => match (eval_value(a, env, g)?, eval_value(b, env, g)?) {
            (Value::Op(a), Value::Op(b)) => Ok(Value::Op(a.try_commutator(&b)?)),
            _ => Ok(Value::Scalar(Complex::zero())),
        },
        Expr::Anticommutator(a, b) => {
            let two = Complex::new(T::lit(2.0), T::zero());
            match (eval_value(a, env, g)?, eval_value(b, env, g)?) {
                (Value::Op(a), Value::Op(b)) => Ok(Value::Op(a.try_anticommutator(&b)?)),
                (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(two * x * y)),
                (Value::Scalar(x), Value::Op(m)) | (Value::Op(m), Value::Scalar(x)) => Ok(Value::Op(m.scale(two * x))),
            }
        }
        Expr::Group(inner) => eval_value(inner, env, g),
    }
}

/// Evaluates to an operator; a scalar result is a multiple of the identity
/// of the environment's common dimension.
pub fn eval_relation<T: Real>(expr: &Expr, env: &Env<T>, g: &GradingParams<T>) -> Result<OperatorMatrix<T>> {
    let dim = match env.values().next() {
        Some(m) => m.dim(),
        None => return Err(Error::UnsupportedInput("empty operator environment".into())),
    };
    if let Some(m) = env.values().find(|m| m.dim() != dim) {
        return Err(crate::error::shape_err(format!("dim {dim}"), format!("`{}` of dim {}", m.label(), m.dim())));
    }
    Ok(eval_value(expr, env, g)?.into_operator(dim))
}
