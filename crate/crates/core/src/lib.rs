//! Translational solver for ground constraint answer set (CAS) programs.
//!
//! A program is parsed, its positive dependency graph analysed, and the
//! program translated into an SMT formula (input completion plus level
//! rankings where needed). The formula is emitted as SMT-LIB and handed to
//! an external solver; models are read back as extended answer sets. A
//! brute-force oracle implements the semantics directly for small inputs.

pub mod analysis;
pub mod backend;
pub mod cli;
pub mod emit;
pub mod error;
pub mod fixtures;
pub mod model;
pub mod oracle;
pub mod parser;
pub mod translate;

pub use error::{Error, Result};
pub use model::{
    Atom, AtomId, AtomKind, CasProgram, Constraint, ExtendedAnswerSet, LinearExpression,
    NumericVariable, Rational, Relation, Sort, Valuation,
};
pub use parser::parse_program;
