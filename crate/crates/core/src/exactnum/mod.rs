//! Exact arithmetic: rationals, sums of square roots with a decidable order,
//! quadratic polynomials and continuous piecewise-quadratic functions.

mod breakpoint;
mod piecewise;
mod poly;
mod rational;
mod surd;

pub use breakpoint::Breakpoint;
pub use piecewise::PiecewiseQuadratic;
pub use poly::QuadraticPoly;
pub use rational::{int, parse_rational, q, Rational};
pub use surd::{squarefree_split, surd_compare, SurdSum};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("value is not rational: {0}")]
    NotRational(String),
}
