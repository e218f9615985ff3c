//! Relation language: parser, evaluator and packaged suites.

mod ast;
mod eval;
mod parser;
mod suites;

pub use ast::{Exponent, Expr, Scalar};
pub use eval::{eval_relation, eval_value, Env, Value};
pub use parser::parse_relation;
pub use suites::{
    defining_relation_text, read_suite_file, run_suite, write_suite_file, CheckReport, Context, Suite, SuiteEntry,
    SuiteFileEntry, SuiteName, SuiteParams, Tolerances, DEFAULT_TOLERANCE, STRUCTURAL_TOLERANCE,
};
