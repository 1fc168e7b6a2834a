//! The printed closed forms for `S(ord_F)` per chart, kept verbatim so that
//! they can be checked against the engine.

use super::{ChartCase, ChartTag};
use crate::exactnum::{Rational, SurdSum};
use num_traits::One;

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn frac(n: i64, d: i64) -> SurdSum {
    SurdSum::from_rational(Rational::new(n.into(), d.into()))
}

fn sqrt_times(k: i64, n: i64) -> SurdSum {
    SurdSum::sqrt_int(n as u64).scale(&r(k))
}

/// Which printed branch a chart's weights fall into.
pub fn branch_name(ch: &ChartCase) -> &'static str {
    let (a, b) = (ch.a, ch.b);
    match ch.tag {
        ChartTag::Case1At010 | ChartTag::Case1At001 => {
            if b < a {
                "b<a"
            } else {
                "b>=a"
            }
        }
        ChartTag::Case2Zu | ChartTag::Case2Yv | ChartTag::Case1p => "linear",
        ChartTag::Case2p => {
            if b < 3 * a {
                "b<3a"
            } else {
                "b>=3a"
            }
        }
        ChartTag::Case3p => {
            if b < 3 * a {
                "b<3a"
            } else if b <= 4 * a {
                "3a<=b<=4a"
            } else {
                "b>4a"
            }
        }
    }
}

fn case2p_low(a: i64, b: i64) -> SurdSum {
    (sqrt_times(18, a * (a + b)) - frac(b + 26 * a, 3)).scale(&Rational::new(1.into(), 8.into()))
}

fn case2p_high(a: i64, b: i64) -> SurdSum {
    frac(25 * b + 83 * a, 48)
}

fn case3p_low(a: i64, b: i64) -> SurdSum {
    (frac(72 * a + 27 * b, 1) + sqrt_times(4, a * (4 * a - b)))
        .scale(&Rational::new(1.into(), 48.into()))
}

fn case3p_mid(a: i64, b: i64) -> SurdSum {
    frac(82 * a + 25 * b, 48)
}

fn case3p_high(a: i64, b: i64) -> SurdSum {
    (sqrt_times(2, b * (b - 3 * a)) + frac(110 * b + 375 * a, 1))
        .scale(&Rational::new(1.into(), 216.into()))
}

/// The printed value of `S / (1 - 2c)`. Case 3' at `b = 4a` uses the middle
/// branch (the outer branch agrees there).
pub fn s_closed_form_base(ch: &ChartCase) -> SurdSum {
    let (a, b) = (ch.a, ch.b);
    match ch.tag {
        ChartTag::Case1At010 | ChartTag::Case1At001 => {
            if b < a {
                SurdSum::from_rational(r(a + b) - Rational::new((b * b).into(), (12 * a).into()))
            } else {
                frac(13 * a + 10 * b, 12)
            }
        }
        ChartTag::Case2Zu | ChartTag::Case2Yv => frac(14 * a + 13 * b, 12),
        ChartTag::Case1p => frac(106 * b + 83 * a, 48),
        ChartTag::Case2p if b < 3 * a => case2p_low(a, b),
        ChartTag::Case2p => case2p_high(a, b),
        ChartTag::Case3p if b < 3 * a => case3p_low(a, b),
        ChartTag::Case3p if b <= 4 * a => case3p_mid(a, b),
        ChartTag::Case3p => case3p_high(a, b),
    }
}

/// Both neighbouring branch formulas evaluated on a branch boundary: Case 2'
/// at `b = 3a` and Case 3' at `b = 3a` and `b = 4a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchSeam {
    pub tag: ChartTag,
    pub a: i64,
    pub b: i64,
    pub left: SurdSum,
    pub right: SurdSum,
}

impl BranchSeam {
    pub fn continuous(&self) -> bool {
        self.left == self.right
    }
}

pub fn branch_seams(a: i64) -> Vec<BranchSeam> {
    vec![
        BranchSeam {
            tag: ChartTag::Case2p,
            a,
            b: 3 * a,
            left: case2p_low(a, 3 * a),
            right: case2p_high(a, 3 * a),
        },
        BranchSeam {
            tag: ChartTag::Case3p,
            a,
            b: 3 * a,
            left: case3p_low(a, 3 * a),
            right: case3p_mid(a, 3 * a),
        },
        BranchSeam {
            tag: ChartTag::Case3p,
            a,
            b: 4 * a,
            left: case3p_mid(a, 4 * a),
            right: case3p_high(a, 4 * a),
        },
    ]
}

/// The printed closed form at the coefficient `c`.
pub fn s_closed_form(ch: &ChartCase, c: &Rational) -> SurdSum {
    s_closed_form_base(ch).scale(&(Rational::one() - r(2) * c))
}

/// The two orderings printed for Case 1': the statement's `(106b + 83a)/48`
/// and the proof's `(106a + 83b)/48`.
pub fn case1p_variants(a: i64, b: i64) -> (Rational, Rational) {
    (
        Rational::new((106 * b + 83 * a).into(), 48.into()),
        Rational::new((106 * a + 83 * b).into(), 48.into()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, q};

    fn ch(tag: ChartTag, a: i64, b: i64) -> ChartCase {
        ChartCase::new(tag, a, b).unwrap()
    }

    #[test]
    fn printed_examples() {
        assert_eq!(
            s_closed_form(&ch(ChartTag::Case2Yv, 2, 1), &int(0)),
            frac(41, 12)
        );
        assert_eq!(
            s_closed_form(&ch(ChartTag::Case1At010, 1, 1), &int(0)),
            frac(23, 12)
        );
        assert_eq!(
            s_closed_form(&ch(ChartTag::Case3p, 1, 4), &int(0)),
            frac(91, 24)
        );
        assert_eq!(
            s_closed_form(&ch(ChartTag::Case2p, 1, 3), &int(0)),
            frac(79, 24)
        );
        assert!(s_closed_form(&ch(ChartTag::Case3p, 1, 4), &q(1, 2)).is_zero());
    }

    #[test]
    fn branches_meet() {
        for a in 1..=12 {
            for seam in branch_seams(a) {
                assert!(seam.continuous(), "{:?}", seam);
            }
        }
        let s = branch_seams(1);
        assert_eq!(s[1].left, frac(157, 48));
        assert_eq!(s[2].right, frac(91, 24));
    }
}
