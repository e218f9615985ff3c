//! Random relation trees shaped the way the parser produces them.
#![allow(dead_code)]

use fsusy_core::verifier::{Exponent, Expr, Scalar};
use rand::Rng;

const NAMES: &[&str] = &["X-", "X+", "K", "H", "Q-", "Q+", "Pi0", "Pi2", "b_1", "k", "qJ3", "Y+", "J-", "M"];

fn name<R: Rng>(rng: &mut R) -> Expr {
    Expr::ident(NAMES[rng.random_range(0..NAMES.len())])
}

fn scalar<R: Rng>(rng: &mut R) -> Scalar {
    if rng.random_bool(0.3) {
        Scalar::QPow(1)
    } else if rng.random_bool(0.5) {
        Scalar::int(rng.random_range(0..50))
    } else {
        Scalar::Rational {
            num: rng.random_range(0..1000),
            den: rng.random_range(2..100),
        }
    }
}

fn atom<R: Rng>(rng: &mut R, depth: u32) -> Expr {
    let choice = if depth == 0 { rng.random_range(0..2) } else { rng.random_range(0..5) };
    match choice {
        0 => name(rng),
        1 => Expr::Scalar(scalar(rng)),
        2 => Expr::group(expr(rng, depth - 1)),
        3 => Expr::commutator(expr(rng, depth - 1), expr(rng, depth - 1)),
        _ => Expr::anticommutator(expr(rng, depth - 1), expr(rng, depth - 1)),
    }
}

fn exponent<R: Rng>(rng: &mut R) -> Exponent {
    if rng.random_bool(0.3) {
        Exponent::K
    } else {
        Exponent::Int(rng.random_range(0..6))
    }
}

fn factor<R: Rng>(rng: &mut R, depth: u32) -> Expr {
    match rng.random_range(0..6) {
        0 => Expr::Scalar(Scalar::QPow(rng.random_range(-9..10))),
        1 => Expr::power(Expr::Scalar(Scalar::QPow(1)), Exponent::K),
        2 => {
            // `q^n` is a scalar literal, not a power of `q`
            let base = loop {
                let a = atom(rng, depth);
                if a != Expr::Scalar(Scalar::QPow(1)) {
                    break a;
                }
            };
            Expr::power(base, exponent(rng))
        }
        _ => atom(rng, depth),
    }
}

fn term<R: Rng>(rng: &mut R, depth: u32) -> Expr {
    let n = rng.random_range(1..4);
    let mut factors: Vec<Expr> = (0..n).map(|_| factor(rng, depth)).collect();
    if n == 1 {
        factors.pop().unwrap()
    } else {
        Expr::Product(factors)
    }
}

/// Left-associated chain of terms, as produced by the `expr` rule.
pub fn expr<R: Rng>(rng: &mut R, depth: u32) -> Expr {
    let mut acc = term(rng, depth);
    for _ in 0..rng.random_range(0..3) {
        let rhs = term(rng, depth);
        acc = if rng.random_bool(0.5) {
            Expr::sum(acc, rhs)
        } else {
            Expr::difference(acc, rhs)
        };
    }
    acc
}
