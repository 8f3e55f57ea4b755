//! Exact symbolic scalars.
//!
//! The algebra is rational-coefficient polynomials in coordinates and
//! parameters, times exponentials of rational linear forms in coordinates.
//! It is closed under `+`, `*` and partial differentiation, and every
//! element has a unique canonical form, so equality is decidable.

mod expr;
mod linear;
mod parse;

pub use expr::{Expr, Monomial, Symbol, SymbolKind, Term};
pub use linear::{solve_linear, LinearEquation, LinearSolution};
pub use parse::{parse_expr, SymbolTable};

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("quotient leaves the expression algebra")]
    NonDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("'{0}' is not a coordinate")]
    NotACoordinate(String),
    #[error("cannot substitute for coordinate '{0}'")]
    CoordinateSubstitution(String),
    #[error("expression is not linear in '{0}'")]
    NonLinear(String),
    #[error("term coefficient must be nonzero")]
    ZeroTerm,
    #[error("syntax error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

impl SymError {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        SymError::Parse {
            offset,
            message: message.into(),
        }
    }
}
