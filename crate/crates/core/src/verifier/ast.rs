//! Relation syntax tree and its canonical printer.

use std::fmt;

/// Exact scalar literal: a nonnegative rational or an integer power of `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational { num: u64, den: u64 },
    QPow(i32),
}

impl Scalar {
    pub fn int(n: u64) -> Self {
        Scalar::Rational { num: n, den: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exponent {
    Int(u32),
    /// The grading order `k` of the evaluation context.
    K,
}

/// Parsed relation. `Sum` and `Difference` are binary and left-associative,
/// `Product` is n-ary (juxtaposition, at least two factors) and `Group`
/// records explicit parentheses, so printing and re-parsing gives back an
/// equal tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Ident(String),
    Scalar(Scalar),
    Sum(Box<Expr>, Box<Expr>),
    Difference(Box<Expr>, Box<Expr>),
    Product(Vec<Expr>),
    Power(Box<Expr>, Exponent),
    Commutator(Box<Expr>, Box<Expr>),
    Anticommutator(Box<Expr>, Box<Expr>),
    Group(Box<Expr>),
}

impl Expr {
    pub fn ident(name: impl Into<String>) -> Self {
        Expr::Ident(name.into())
    }

    pub fn sum(a: Expr, b: Expr) -> Self {
        Expr::Sum(Box::new(a), Box::new(b))
    }

    pub fn difference(a: Expr, b: Expr) -> Self {
        Expr::Difference(Box::new(a), Box::new(b))
    }

    pub fn power(base: Expr, e: Exponent) -> Self {
        Expr::Power(Box::new(base), e)
    }

    pub fn commutator(a: Expr, b: Expr) -> Self {
        Expr::Commutator(Box::new(a), Box::new(b))
    }

    pub fn anticommutator(a: Expr, b: Expr) -> Self {
        Expr::Anticommutator(Box::new(a), Box::new(b))
    }

    pub fn group(inner: Expr) -> Self {
        Expr::Group(Box::new(inner))
    }

    fn is_additive(&self) -> bool {
        matches!(self, Expr::Sum(..) | Expr::Difference(..))
    }

    /// Nodes that print as a single `atom` of the grammar.
    fn is_atom(&self) -> bool {
        match self {
            Expr::Ident(_) | Expr::Commutator(..) | Expr::Anticommutator(..) | Expr::Group(_) => true,
            Expr::Scalar(Scalar::QPow(1)) | Expr::Scalar(Scalar::Rational { .. }) => true,
            // `q^n` already carries an exponent
            Expr::Scalar(Scalar::QPow(_)) => false,
            _ => false,
        }
    }

    fn is_factor(&self) -> bool {
        self.is_atom() || matches!(self, Expr::Power(..) | Expr::Scalar(Scalar::QPow(_)))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Scalar::Rational { num, den: 1 } => write!(f, "{num}"),
            Scalar::Rational { num, den } => write!(f, "{num}/{den}"),
            Scalar::QPow(1) => f.write_str("q"),
            Scalar::QPow(n) => write!(f, "q^{n}"),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Int(n) => write!(f, "{n}"),
            Exponent::K => f.write_str("k"),
        }
    }
}

/// Writes `e`, adding parentheses when the tree does not have the shape the
/// parser would produce at this position.
fn write_wrapped(f: &mut fmt::Formatter<'_>, e: &Expr, ok: bool) -> fmt::Result {
    if ok {
        write!(f, "{e}")
    } else {
        write!(f, "({e})")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Ident(name) => f.write_str(name),
            Expr::Scalar(s) => write!(f, "{s}"),
            Expr::Sum(a, b) | Expr::Difference(a, b) => {
                write!(f, "{a}")?;
                f.write_str(if matches!(self, Expr::Sum(..)) { " + " } else { " - " })?;
                write_wrapped(f, b, !b.is_additive())
            }
            Expr::Product(factors) => {
                for (i, x) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write_wrapped(f, x, x.is_factor())?;
                }
                Ok(())
            }
            Expr::Power(base, e) => {
                let bare = match **base {
                    // `q^k` stays a power node; `q^n` would re-parse as a literal
                    Expr::Scalar(Scalar::QPow(1)) => *e == Exponent::K,
                    Expr::Scalar(Scalar::QPow(_)) => false,
                    _ => base.is_atom(),
                };
                write_wrapped(f, base, bare)?;
                write!(f, "^{e}")
            }
            Expr::Commutator(a, b) => write!(f, "[{a}, {b}]"),
            Expr::Anticommutator(a, b) => write!(f, "{{{a}, {b}}}"),
            Expr::Group(inner) => write!(f, "({inner})"),
        }
    }
}
