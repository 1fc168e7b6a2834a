//! Beta-invariants of toric valuations, stability thresholds, the wall search
//! and the instability certificates.

mod certificates;
mod threshold;
mod walls;

pub use certificates::{
    first_wall_bound, index3_certificate, quotient_point_certificate, QuotientCertificate,
};
pub use threshold::{
    check_vectors, threshold, vector_label, Bound, StabilityThreshold, ThresholdClass, ToricCheck,
};
pub use walls::{
    confirm_wall, engine_wall, enumerate_candidates, enumerate_walls, one_ps_of_vector,
    wall_formula, CandidateSource, Confirmation, WallBranch, WallCandidate,
};

use crate::exactnum::{Rational, SurdSum};
use crate::pairs::{curve_order, toric_log_discrepancy, CurvePair, PairsError};
use crate::surface::Surface;
use crate::volume::{s_toric, ChartCase, VolumeError};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilityError {
    #[error(transparent)]
    Pairs(#[from] PairsError),
    #[error(transparent)]
    Volume(#[from] VolumeError),
    #[error("coefficient c = {0} is outside (0, 1/2)")]
    Coefficient(String),
    #[error("curve is not invariant under {0:?}")]
    NotInvariant([i64; 3]),
    #[error("invalid valuation: {0}")]
    Valuation(String),
    #[error("curve does not pass through the 1/4(1,1) point")]
    NotThroughQuotientPoint,
    #[error("S-value {0} is irrational; the threshold needs rational S on toric valuations")]
    Irrational(String),
}

/// A valuation given by an invariant curve, a chart, or a raw lattice vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Valuation {
    Divisor(String),
    Chart(ChartCase),
    Vector([i64; 2]),
}

impl Valuation {
    pub fn vector(&self, s: Surface) -> Result<[i64; 2], StabilityError> {
        match self {
            Valuation::Divisor(l) => {
                let fan = s.fan();
                let i = fan.index_of(l).ok_or_else(|| {
                    StabilityError::Valuation(format!("no invariant curve {l} on {s}"))
                })?;
                Ok(fan.rays()[i].v)
            }
            Valuation::Chart(ch) => {
                if ch.surface() != s {
                    return Err(StabilityError::Valuation(format!(
                        "{} is not a chart of {s}",
                        ch.tag
                    )));
                }
                Ok(ch.lattice_vector())
            }
            Valuation::Vector(w) if *w == [0, 0] => {
                Err(StabilityError::Valuation("zero vector".into()))
            }
            Valuation::Vector(w) => Ok(*w),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Divisor(l) => write!(f, "ord_{l}"),
            Valuation::Chart(ch) => write!(f, "{ch}"),
            Valuation::Vector(w) => write!(f, "w=({},{})", w[0], w[1]),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Destabilizing,
    Critical,
    Positive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaReport {
    pub a: Rational,
    pub s: SurdSum,
    pub beta: SurdSum,
    pub valuation: String,
    pub verdict: Verdict,
}

impl BetaReport {
    pub fn new(a: Rational, s: SurdSum, valuation: String) -> Self {
        let beta = &SurdSum::from_rational(a.clone()) - &s;
        let verdict = match beta.signum() {
            -1 => Verdict::Destabilizing,
            0 => Verdict::Critical,
            _ => Verdict::Positive,
        };
        Self {
            a,
            s,
            beta,
            valuation,
            verdict,
        }
    }
}

pub(crate) fn check_c(c: &Rational) -> Result<(), StabilityError> {
    let half = Rational::new(1.into(), 2.into());
    if *c <= Rational::from_integer(0.into()) || *c >= half {
        return Err(StabilityError::Coefficient(c.to_string()));
    }
    Ok(())
}

/// `beta = A - S` of a toric valuation for the pair `(X, cC)`.
pub fn beta(
    curve: &CurvePair,
    valuation: &Valuation,
    c: &Rational,
) -> Result<BetaReport, StabilityError> {
    check_c(c)?;
    let w = valuation.vector(curve.surface)?;
    let a = toric_log_discrepancy(curve.surface, w) - c * curve_order(curve, w);
    let s = s_toric(curve.surface, w, c)?;
    Ok(BetaReport::new(a, s, valuation.to_string()))
}
