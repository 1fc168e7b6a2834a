use super::{check_c, BetaReport, StabilityError, Verdict};
use crate::exactnum::{q, Rational, SurdSum};
use crate::pairs::{curve_order, CurvePair};
use crate::surface::{index3m, DivisorClass, Surface};
use crate::volume::{s_toric, volume_profile};
use num_traits::{One, Zero};

fn one_minus_2c(c: &Rational) -> Rational {
    Rational::one() - q(2, 1) * c
}

/// The exceptional curve `F1` over the index-3 point: `A = 1/3 - 2c/3` and
/// `S` from the volume of `L0 - tF`, where `F = F1 + F2/2`. Beta is negative for
/// every admissible `c`.
pub fn index3_certificate(c: &Rational) -> Result<BetaReport, StabilityError> {
    check_c(c)?;
    let m = index3m();
    let f = DivisorClass(vec![q(1, 1), q(1, 2), q(0, 1), q(0, 1)]);
    let p = volume_profile(&m, &m.anticanonical, &f)?;
    let a = q(1, 3) - q(2, 3) * c;
    Ok(BetaReport::new(a, p.s_at(c), "ord_F (index 3)".into()))
}

/// Beta of the `(-4)`-curve over the `1/4(1,1)` point of BlP114.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientCertificate {
    pub ord: Rational,
    pub engine: BetaReport,
    /// Beta with the printed value `S = (2 sqrt 2 / 3)(1 - 2c)`.
    pub printed: BetaReport,
}

impl QuotientCertificate {
    /// Both computations destabilize.
    pub fn destabilizing(&self) -> bool {
        self.engine.verdict == Verdict::Destabilizing
            && self.printed.verdict == Verdict::Destabilizing
    }
}

pub fn quotient_point_certificate(
    curve: &CurvePair,
    c: &Rational,
) -> Result<QuotientCertificate, StabilityError> {
    check_c(c)?;
    if curve.surface != Surface::BlP114 {
        return Err(StabilityError::Valuation(format!(
            "the 1/4(1,1) point lives on BlP114, not {}",
            curve.surface
        )));
    }
    let w = [0, -1];
    let ord = curve_order(curve, w);
    if ord.is_zero() {
        return Err(StabilityError::NotThroughQuotientPoint);
    }
    let a = q(1, 2) - c * &ord;
    let s = s_toric(Surface::BlP114, w, c)?;
    let printed = SurdSum::sqrt_int(2).scale(&(q(2, 3) * one_minus_2c(c)));
    Ok(QuotientCertificate {
        ord,
        engine: BetaReport::new(a.clone(), s, "ord_F (1/4(1,1))".into()),
        printed: BetaReport::new(a, printed, "ord_F (1/4(1,1)), printed S".into()),
    })
}

/// Lower bound for the first wall: the smallest `1 / (20 - 3 i0 - 6 j0)` over
/// `i0 >= 0`, `j0 >= 1` with a positive denominator, and its minimizer.
pub fn first_wall_bound() -> (Rational, (i64, i64)) {
    let mut best: Option<(i64, (i64, i64))> = None;
    for j0 in 1..=3 {
        for i0 in 0..=6 {
            let d = 20 - 3 * i0 - 6 * j0;
            if d > 0 && best.is_none_or(|(b, _)| d > b) {
                best = Some((d, (i0, j0)));
            }
        }
    }
    let (d, at) = best.expect("(0, 1) qualifies");
    (q(1, d), at)
}
