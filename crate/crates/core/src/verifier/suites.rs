//! Packaged relation suites for the three constructions and their
//! comparison. Every relation exists twice: as text, evaluated through the
//! parser, and as a direct composition of matrix operations performed in the
//! same order, so the two residuals agree bit for bit.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::eval::{eval_relation, Env};
use super::parser::parse_relation;
use crate::basis::{GradedBasis, InteriorMask};
use crate::constructions::{defining_relation_operator, Structure, SusySystem};
use crate::error::{Error, Result};
use crate::matrix::OperatorMatrix;
use crate::qarith::GradingParams;
use crate::scalar::Real;

/// Default bound for "relation holds".
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
/// Bound for structural identities free of truncation (`K^k = 1`, projectors, nilpotency).
pub const STRUCTURAL_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteName {
    Quon,
    Gwh,
    Uqsl2,
    Cross,
}

impl SuiteName {
    pub fn tag(self) -> &'static str {
        match self {
            SuiteName::Quon => "quon",
            SuiteName::Gwh => "gwh",
            SuiteName::Uqsl2 => "uqsl2",
            SuiteName::Cross => "cross",
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SuiteName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quon" => Ok(SuiteName::Quon),
            "gwh" => Ok(SuiteName::Gwh),
            "uqsl2" => Ok(SuiteName::Uqsl2),
            "cross" => Ok(SuiteName::Cross),
            other => Err(Error::UnknownSuite(other.to_string())),
        }
    }
}

/// How the per-relation tolerances are adjusted at run time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Replaces [`DEFAULT_TOLERANCE`] wherever a relation uses it.
    pub default: f64,
    /// Replaces every tolerance, structural ones included.
    pub all: Option<f64>,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            default: DEFAULT_TOLERANCE,
            all: None,
        }
    }
}

impl Tolerances {
    pub fn resolve(&self, stated: f64) -> f64 {
        match self.all {
            Some(t) => t,
            None if stated == DEFAULT_TOLERANCE => self.default,
            None => stated,
        }
    }
}

/// Parameters for building a suite's system(s).
#[derive(Debug, Clone)]
pub struct SuiteParams<T: Real> {
    pub k: usize,
    /// Boson truncation (quon, gwh, cross).
    pub nmax: usize,
    /// Spin (uqsl2).
    pub j: usize,
    /// Structure functions for gwh; `f_s = 1` when absent.
    pub structure: Option<Structure<T>>,
}

impl<T: Real> SuiteParams<T> {
    pub fn new(k: usize, nmax: usize) -> Self {
        Self {
            k,
            nmax,
            j: 0,
            structure: None,
        }
    }

    pub fn with_j(mut self, j: usize) -> Self {
        self.j = j;
        self
    }

    pub fn with_structure(mut self, s: Structure<T>) -> Self {
        self.structure = Some(s);
        self
    }
}

/// Outcome of one relation check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub relation: String,
    pub residual: f64,
    pub tolerance: f64,
    pub margin: usize,
    pub pass: bool,
    /// Dimension of the full space.
    pub dim: usize,
    /// Number of basis states inside the mask.
    pub interior: usize,
    /// Set when the relation could not be evaluated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

/// One line of a suite file: `{"relation": ..., "margin": ..., "tolerance": ...}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteFileEntry {
    pub relation: String,
    pub margin: usize,
    pub tolerance: f64,
}

pub fn read_suite_file(path: impl AsRef<Path>) -> Result<Vec<SuiteFileEntry>> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_suite_file(path: impl AsRef<Path>, entries: &[SuiteFileEntry]) -> Result<()> {
    std::fs::write(path, serde_json::to_string_pretty(entries)?)?;
    Ok(())
}

/// Operators and grading a suite evaluates against.
pub struct Context<T: Real> {
    pub env: Env<T>,
    pub grading: GradingParams<T>,
    basis: Option<GradedBasis>,
    dim: usize,
}

impl<T: Real> Context<T> {
    fn new(env: Env<T>, grading: GradingParams<T>, basis: Option<GradedBasis>) -> Self {
        let dim = env["I"].dim();
        Self {
            env,
            grading,
            basis,
            dim,
        }
    }

    fn from_system(sys: &SusySystem<T>) -> Self {
        let mut env = sys.env();
        if !env.contains_key("K") {
            env.insert("K".into(), sys.grading.clone().labeled("K"));
        }
        Self::new(env, sys.grading_params().clone(), sys.basis().copied())
    }

    pub fn op(&self, name: &str) -> &OperatorMatrix<T> {
        self.env
            .get(name)
            .unwrap_or_else(|| panic!("suite context lacks `{name}`"))
    }

    pub fn mask(&self, margin: usize) -> InteriorMask {
        match &self.basis {
            Some(b) => InteriorMask::new(b, margin),
            None => InteriorMask::full(self.dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn q(&self) -> Complex<T> {
        self.grading.q()
    }

    fn k(&self) -> usize {
        self.grading.k()
    }
}

type Program<T> = Arc<dyn Fn(&Context<T>) -> Result<OperatorMatrix<T>> + Send + Sync>;

/// A relation (`expression = 0`) with its margin, tolerance and direct form.
#[derive(Clone)]
pub struct SuiteEntry<T: Real> {
    pub relation: String,
    pub margin: usize,
    pub tolerance: f64,
    program: Program<T>,
}

impl<T: Real> fmt::Debug for SuiteEntry<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SuiteEntry")
            .field("relation", &self.relation)
            .field("margin", &self.margin)
            .field("tolerance", &self.tolerance)
            .finish()
    }
}

fn entry<T: Real>(
    relation: impl Into<String>,
    margin: usize,
    tolerance: f64,
    program: impl Fn(&Context<T>) -> Result<OperatorMatrix<T>> + Send + Sync + 'static,
) -> SuiteEntry<T> {
    SuiteEntry {
        relation: relation.into(),
        margin,
        tolerance,
        program: Arc::new(program),
    }
}

/// Literal scalar as the evaluator produces it.
fn lit<T: Real>(n: u64) -> Complex<T> {
    Complex::new(T::from_u64(n).unwrap() / T::one(), T::zero())
}

fn neg<T: Real>(z: Complex<T>) -> Complex<T> {
    -z
}

/// `name name ...` folded left to right.
fn chain<T: Real>(c: &Context<T>, names: &[&str]) -> Result<OperatorMatrix<T>> {
    let mut acc = c.op(names[0]).clone();
    for n in &names[1..] {
        acc = acc.try_mul(c.op(n))?;
    }
    Ok(acc)
}

/// A built suite: its evaluation context and relation list.
pub struct Suite<T: Real> {
    pub name: SuiteName,
    pub context: Context<T>,
    pub entries: Vec<SuiteEntry<T>>,
}

impl<T: Real> fmt::Debug for Suite<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Suite")
            .field("name", &self.name)
            .field("entries", &self.entries)
            .finish()
    }
}

// ---- shared relation families -------------------------------------------

fn grading_entries<T: Real>(k: usize) -> Vec<SuiteEntry<T>> {
    let mut out = vec![entry("K^k - 1", 0, STRUCTURAL_TOLERANCE, |c: &Context<T>| {
        Ok(c.op("K").pow(c.k() as u32).add_identity(neg(lit(1))))
    })];
    for i in 0..k {
        let pi = format!("Pi{i}");
        out.push(entry(format!("{pi} {pi} - {pi}"), 0, STRUCTURAL_TOLERANCE, move |c: &Context<T>| {
            c.op(&pi).try_mul(c.op(&pi))?.try_sub(c.op(&pi))
        }));
    }
    for i in 0..k {
        for j in i + 1..k {
            let (a, b) = (format!("Pi{i}"), format!("Pi{j}"));
            out.push(entry(format!("{a} {b}"), 0, STRUCTURAL_TOLERANCE, move |c: &Context<T>| {
                c.op(&a).try_mul(c.op(&b))
            }));
        }
    }
    let names: Vec<String> = (0..k).map(|i| format!("Pi{i}")).collect();
    out.push(entry(format!("{} - 1", names.join(" + ")), 0, STRUCTURAL_TOLERANCE, move |c: &Context<T>| {
        let mut acc = c.op(&names[0]).clone();
        for n in &names[1..] {
            acc = acc.try_add(c.op(n))?;
        }
        Ok(acc.add_identity(neg(lit(1))))
    }));
    out
}

/// `K L+ - q L+ K` and `K L- - q^-1 L- K` for a ladder pair.
fn q_commutation_entries<T: Real>(lower: &'static str, raise: &'static str, k_name: &'static str) -> Vec<SuiteEntry<T>> {
    vec![
        entry(format!("{k_name} {raise} - q {raise} {k_name}"), 0, STRUCTURAL_TOLERANCE, move |c: &Context<T>| {
            let lhs = c.op(k_name).try_mul(c.op(raise))?;
            let rhs = c.op(raise).scale(c.q()).try_mul(c.op(k_name))?;
            lhs.try_sub(&rhs)
        }),
        entry(format!("{k_name} {lower} - q^-1 {lower} {k_name}"), 0, STRUCTURAL_TOLERANCE, move |c: &Context<T>| {
            let lhs = c.op(k_name).try_mul(c.op(lower))?;
            let rhs = c.op(lower).scale(c.grading.pow(-1)).try_mul(c.op(k_name))?;
            lhs.try_sub(&rhs)
        }),
    ]
}

/// `[Nop, L+] - L+`, `[Nop, L-] + L-`, `[Nop, K]`.
fn number_entries<T: Real>(number: &'static str, lower: &'static str, raise: &'static str) -> Vec<SuiteEntry<T>> {
    vec![
        entry(format!("[{number}, {raise}] - {raise}"), 2, DEFAULT_TOLERANCE, move |c: &Context<T>| {
            c.op(number).try_commutator(c.op(raise))?.try_sub(c.op(raise))
        }),
        entry(format!("[{number}, {lower}] + {lower}"), 2, DEFAULT_TOLERANCE, move |c: &Context<T>| {
            c.op(number).try_commutator(c.op(lower))?.try_add(c.op(lower))
        }),
        entry(format!("[{number}, K]"), 2, DEFAULT_TOLERANCE, move |c: &Context<T>| {
            c.op(number).try_commutator(c.op("K"))
        }),
    ]
}

fn nilpotency_and_conservation<T: Real>(k: usize) -> Vec<SuiteEntry<T>> {
    let mut out = Vec::new();
    for q in ["Q-", "Q+"] {
        out.push(entry(format!("{q}^k"), 0, STRUCTURAL_TOLERANCE, move |c: &Context<T>| {
            Ok(c.op(q).pow(c.k() as u32))
        }));
    }
    for q in ["Q-", "Q+"] {
        out.push(entry(format!("[H, {q}]"), 2 * k, DEFAULT_TOLERANCE, move |c: &Context<T>| {
            c.op("H").try_commutator(c.op(q))
        }));
    }
    out
}

/// Text of `Σ_j Q-^{k-1-j} Q+ Q-^j - Q-^{k-2} H`.
pub fn defining_relation_text(k: usize) -> String {
    let pow = |p: usize| if p == 1 { "Q-".to_string() } else { format!("Q-^{p}") };
    let terms: Vec<String> = (0..k)
        .map(|j| {
            let mut parts = Vec::new();
            if k - 1 - j > 0 {
                parts.push(pow(k - 1 - j));
            }
            parts.push("Q+".to_string());
            if j > 0 {
                parts.push(pow(j));
            }
            parts.join(" ")
        })
        .collect();
    let rhs = if k == 2 { "H".to_string() } else { format!("{} H", pow(k - 2)) };
    format!("{} - {rhs}", terms.join(" + "))
}

fn defining_entry<T: Real>(k: usize) -> SuiteEntry<T> {
    entry(defining_relation_text(k), k + 1, DEFAULT_TOLERANCE, |c: &Context<T>| {
        defining_relation_operator(c.op("Q-"), c.op("Q+"), c.op("H"), c.k())
    })
}

// ---- per-construction suites ---------------------------------------------

fn quon_entries<T: Real>(k: usize) -> Vec<SuiteEntry<T>> {
    let mut out = grading_entries(k);
    out.push(entry("[X-, X+] - 1", 2, DEFAULT_TOLERANCE, |c: &Context<T>| {
        Ok(c.op("X-").try_commutator(c.op("X+"))?.add_identity(neg(lit(1))))
    }));
    out.extend(q_commutation_entries("X-", "X+", "K"));
    out.extend(number_entries("M", "X-", "X+"));
    out.extend(nilpotency_and_conservation(k));
    out.push(defining_entry(k));
    match k {
        2 => {
            out.push(entry("Q- - f+ b-", 2, DEFAULT_TOLERANCE, |c: &Context<T>| {
                c.op("Q-").try_sub(&chain(c, &["f+", "b-"])?)
            }));
            out.push(entry("Q+ - f- b+", 2, DEFAULT_TOLERANCE, |c: &Context<T>| {
                c.op("Q+").try_sub(&chain(c, &["f-", "b+"])?)
            }));
            out.push(entry("H - (b+ b- + f+ f-)", 2, DEFAULT_TOLERANCE, |c: &Context<T>| {
                let rhs = chain(c, &["b+", "b-"])?.try_add(&chain(c, &["f+", "f-"])?)?;
                c.op("H").try_sub(&rhs)
            }));
            out.push(entry("{Q-, Q+} - H", 3, DEFAULT_TOLERANCE, |c: &Context<T>| {
                c.op("Q-").try_anticommutator(c.op("Q+"))?.try_sub(c.op("H"))
            }));
        }
        3 => {
            out.push(entry("Q- - X- (Pi0 + Pi1)", 2, DEFAULT_TOLERANCE, |c: &Context<T>| {
                let rhs = c.op("X-").try_mul(&c.op("Pi0").try_add(c.op("Pi1"))?)?;
                c.op("Q-").try_sub(&rhs)
            }));
            out.push(entry(
                "H - ((2 X+ X- - 1) Pi0 + (2 X+ X- + 1) Pi1 + (2 X+ X- + 3) Pi2)",
                2,
                DEFAULT_TOLERANCE,
                |c: &Context<T>| {
                    let two_xpxm = || -> Result<OperatorMatrix<T>> { c.op("X+").scale(lit(2)).try_mul(c.op("X-")) };
                    let l0 = two_xpxm()?.add_identity(neg(lit(1))).try_mul(c.op("Pi0"))?;
                    let l1 = two_xpxm()?.add_identity(lit(1)).try_mul(c.op("Pi1"))?;
                    let l2 = two_xpxm()?.add_identity(lit(3)).try_mul(c.op("Pi2"))?;
                    c.op("H").try_sub(&l0.try_add(&l1)?.try_add(&l2)?)
                },
            ));
            out.push(entry(
                "H - (2 b+ b- - 1 + 2 (1 - 2 q) f+ f- + 2 (1 + 2 q) (f+ f-)^2)",
                2,
                DEFAULT_TOLERANCE,
                |c: &Context<T>| {
                    let bb = c.op("b+").scale(lit(2)).try_mul(c.op("b-"))?.add_identity(neg(lit(1)));
                    let minus = lit::<T>(2) * (lit::<T>(1) - lit::<T>(2) * c.q());
                    let plus = lit::<T>(2) * (lit::<T>(1) + lit::<T>(2) * c.q());
                    let ff = c.op("f+").scale(minus).try_mul(c.op("f-"))?;
                    let ff2 = chain(c, &["f+", "f-"])?.pow(2).scale(plus);
                    c.op("H").try_sub(&bb.try_add(&ff)?.try_add(&ff2)?)
                },
            ));
        }
        _ => {}
    }
    out
}

fn gwh_entries<T: Real>(k: usize) -> Vec<SuiteEntry<T>> {
    let mut out = grading_entries(k);
    out.push(entry("[Y-, Y+] - S", 2, DEFAULT_TOLERANCE, |c: &Context<T>| {
        c.op("Y-").try_commutator(c.op("Y+"))?.try_sub(c.op("S"))
    }));
    out.extend(q_commutation_entries("Y-", "Y+", "K"));
    out.extend(number_entries("N", "Y-", "Y+"));
    out.extend(nilpotency_and_conservation(k));
    out.push(defining_entry(k));
    out
}

fn uqsl2_entries<T: Real>(k: usize) -> Vec<SuiteEntry<T>> {
    let mut out = grading_entries(k);
    out.push(entry("qJ3 J+ qJ3inv - q J+", 0, STRUCTURAL_TOLERANCE, |c: &Context<T>| {
        chain(c, &["qJ3", "J+", "qJ3inv"])?.try_sub(&c.op("J+").scale(c.q()))
    }));
    out.push(entry("qJ3 J- qJ3inv - q^-1 J-", 0, STRUCTURAL_TOLERANCE, |c: &Context<T>| {
        chain(c, &["qJ3", "J-", "qJ3inv"])?.try_sub(&c.op("J-").scale(c.grading.pow(-1)))
    }));
    out.push(entry("qJ3 qJ3inv - 1", 0, STRUCTURAL_TOLERANCE, |c: &Context<T>| {
        Ok(chain(c, &["qJ3", "qJ3inv"])?.add_identity(neg(lit(1))))
    }));
    out.push(entry(
        "(q - q^-1) [J+, J-] - (qJ3^2 - qJ3inv^2)",
        0,
        DEFAULT_TOLERANCE,
        |c: &Context<T>| {
            let den = c.q() - c.grading.pow(-1);
            let lhs = c.op("J+").try_commutator(c.op("J-"))?.scale(den);
            let rhs = c.op("qJ3").pow(2).try_sub(&c.op("qJ3inv").pow(2))?;
            lhs.try_sub(&rhs)
        },
    ));
    for x in ["J+", "J-", "qJ3", "qJ3inv"] {
        out.push(entry(format!("[C, {x}]"), 0, DEFAULT_TOLERANCE, move |c: &Context<T>| {
            c.op("C").try_commutator(c.op(x))
        }));
    }
    out.extend(nilpotency_and_conservation(k));
    out
}

fn cross_entries<T: Real>(k: usize) -> Vec<SuiteEntry<T>> {
    let mut out = vec![
        entry("H - Hgwh", 2 * k, DEFAULT_TOLERANCE, |c: &Context<T>| c.op("H").try_sub(c.op("Hgwh"))),
        entry("K - Kgwh", 0, STRUCTURAL_TOLERANCE, |c: &Context<T>| c.op("K").try_sub(c.op("Kgwh"))),
        entry("M - Ngwh", 2, DEFAULT_TOLERANCE, |c: &Context<T>| c.op("M").try_sub(c.op("Ngwh"))),
    ];
    for q in ["Q-", "Q+"] {
        out.push(entry(format!("[Hgwh, {q}]"), 2 * k, DEFAULT_TOLERANCE, move |c: &Context<T>| {
            c.op("Hgwh").try_commutator(c.op(q))
        }));
    }
    out
}

impl<T: Real> Suite<T> {
    /// Builds the system(s) for `name` and the matching relation list.
    pub fn build(name: SuiteName, params: &SuiteParams<T>) -> Result<Self> {
        let k = params.k;
        let (context, entries) = match name {
            SuiteName::Quon => {
                let sys = SusySystem::quon(k, params.nmax)?;
                (Context::from_system(&sys), quon_entries(k))
            }
            SuiteName::Gwh => {
                let structure = params.structure.clone().unwrap_or_else(|| Structure::ones(k));
                let sys = SusySystem::gwh(k, params.nmax, &structure)?;
                (Context::from_system(&sys), gwh_entries(k))
            }
            SuiteName::Uqsl2 => {
                let sys = SusySystem::uqsl2(k, params.j)?;
                (Context::from_system(&sys), uqsl2_entries(k))
            }
            SuiteName::Cross => {
                let quon = SusySystem::quon(k, params.nmax)?;
                let gwh = SusySystem::gwh(k, params.nmax, &Structure::ones(k))?;
                let mut ctx = Context::from_system(&quon);
                ctx.env.insert("Hgwh".into(), gwh.hamiltonian.clone().labeled("Hgwh"));
                ctx.env.insert("Kgwh".into(), gwh.grading.clone().labeled("Kgwh"));
                ctx.env.insert("Ngwh".into(), gwh.number.clone().labeled("Ngwh"));
                (ctx, cross_entries(k))
            }
        };
        Ok(Self { name, context, entries })
    }

    /// Relations as suite-file lines.
    pub fn file_entries(&self) -> Vec<SuiteFileEntry> {
        self.entries
            .iter()
            .map(|e| SuiteFileEntry {
                relation: e.relation.clone(),
                margin: e.margin,
                tolerance: e.tolerance,
            })
            .collect()
    }

    fn report(&self, relation: &str, margin: usize, stated: f64, tol: &Tolerances, value: Result<OperatorMatrix<T>>) -> CheckReport {
        let mask = self.context.mask(margin);
        let tolerance = tol.resolve(stated);
        let residual = value.and_then(|m| m.masked_max_abs(&mask));
        let (residual, skipped) = match residual {
            Ok(r) => (r.to_f64_lossy(), None),
            Err(e) => (f64::NAN, Some(e.to_string())),
        };
        CheckReport {
            relation: relation.to_string(),
            residual,
            tolerance,
            margin,
            pass: skipped.is_none() && residual <= tolerance,
            dim: self.context.dim(),
            interior: mask.len(),
            skipped,
        }
    }

    /// Evaluates every relation through the parser.
    pub fn run(&self, tol: &Tolerances) -> Vec<CheckReport> {
        self.run_file(&self.file_entries(), tol)
    }

    /// Evaluates every relation through its direct matrix form.
    pub fn run_programmatic(&self, tol: &Tolerances) -> Vec<CheckReport> {
        self.entries
            .par_iter()
            .map(|e| self.report(&e.relation, e.margin, e.tolerance, tol, (e.program)(&self.context)))
            .collect()
    }

    /// Evaluates arbitrary suite-file lines against this suite's operators.
    pub fn run_file(&self, entries: &[SuiteFileEntry], tol: &Tolerances) -> Vec<CheckReport> {
        entries
            .par_iter()
            .map(|e| {
                let value = parse_relation(&e.relation)
                    .and_then(|ast| eval_relation(&ast, &self.context.env, &self.context.grading));
                self.report(&e.relation, e.margin, e.tolerance, tol, value)
            })
            .collect()
    }
}

/// Builds and runs a named suite through the parser.
pub fn run_suite<T: Real>(name: SuiteName, params: &SuiteParams<T>, tol: &Tolerances) -> Result<Vec<CheckReport>> {
    Ok(Suite::build(name, params)?.run(tol))
}
