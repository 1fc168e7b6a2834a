use super::StabilityError;
use crate::exactnum::Rational;
use crate::pairs::{curve_order, monomial_order, toric_log_discrepancy, CurvePair};
use crate::surface::Surface;
use crate::volume::{s_toric_base, ChartCase};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::fmt;

/// The data of one toric valuation for a fixed curve: `beta(c) = h - c m - s (1 - 2c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricCheck {
    pub w: [i64; 2],
    pub label: String,
    pub h: Rational,
    pub m: Rational,
    pub s: Rational,
}

/// One side of a threshold: a bound and the valuations achieving it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound {
    pub value: Rational,
    pub binding: Vec<String>,
    pub vectors: Vec<[i64; 2]>,
}

impl ToricCheck {
    pub fn new(curve: &CurvePair, w: [i64; 2]) -> Result<Self, StabilityError> {
        let s = s_toric_base(curve.surface, w)?;
        let s = s
            .as_rational()
            .ok_or_else(|| StabilityError::Irrational(s.to_string()))?;
        Ok(Self {
            w,
            label: vector_label(curve.surface, w),
            h: toric_log_discrepancy(curve.surface, w),
            m: curve_order(curve, w),
            s,
        })
    }

    pub fn beta(&self, c: &Rational) -> Rational {
        let two = Rational::from_integer(2.into());
        &self.h - c * &self.m - &self.s * (Rational::from_integer(1.into()) - two * c)
    }

    /// `beta(c) >= 0` written as `c k >= r`; returns `(k, r)`.
    pub fn constraint(&self) -> (Rational, Rational) {
        let two = Rational::from_integer(2.into());
        (&two * &self.s - &self.m, &self.s - &self.h)
    }
}

/// Human-readable name of a toric valuation: the invariant curve on a ray,
/// the chart and weights inside a smooth cone, the raw vector otherwise.
pub fn vector_label(s: Surface, w: [i64; 2]) -> String {
    let fan = s.fan();
    let g = w[0].gcd(&w[1]).max(1);
    let prim = [w[0] / g, w[1] / g];
    if let Some(i) = fan.ray_at(prim) {
        return if g == 1 {
            format!("ord_{}", fan.label(i))
        } else {
            format!("{g}*ord_{}", fan.label(i))
        };
    }
    match ChartCase::from_lattice_vector(s, w) {
        Some(ch) => ch.to_string(),
        None => format!("w=({},{})", w[0], w[1]),
    }
}

fn primitive(w: [i64; 2]) -> [i64; 2] {
    let g = w[0].gcd(&w[1]);
    [w[0] / g, w[1] / g]
}

/// Valuations whose signs decide the threshold: the rays of the fan and, in
/// each cone, every direction where two monomials of the curve tie. On each
/// region between consecutive such directions both `A` and `S` are linear.
pub fn check_vectors(curve: &CurvePair) -> Vec<[i64; 2]> {
    let fan = curve.surface.fan();
    let n = fan.len();
    let support = curve.support();
    let mut out: BTreeSet<[i64; 2]> = fan.rays().iter().map(|r| r.v).collect();
    for i in 0..n {
        let v1 = fan.rays()[i].v;
        let v2 = fan.rays()[(i + 1) % n].v;
        let loc: Vec<(Rational, Rational)> = support
            .iter()
            .map(|e| {
                (
                    monomial_order(curve.surface, *e, v1),
                    monomial_order(curve.surface, *e, v2),
                )
            })
            .collect();
        for x in 0..loc.len() {
            for y in x + 1..loc.len() {
                let dp = &loc[x].0 - &loc[y].0;
                let dq = &loc[y].1 - &loc[x].1;
                if (dp.is_positive() && dq.is_positive()) || (dp.is_negative() && dq.is_negative())
                {
                    // alpha : beta = dq : dp, made integral
                    let r = dq.abs() / dp.abs();
                    let (al, be) = (r.numer().clone(), r.denom().clone());
                    let al: i64 = al.try_into().expect("small");
                    let be: i64 = be.try_into().expect("small");
                    out.insert(primitive([
                        al * v1[0] + be * v2[0],
                        al * v1[1] + be * v2[1],
                    ]));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Lattice vectors `a v1 + b v2` with `a, b >= 1`, `a + b <= bound`, over all
/// cones, reduced to primitive vectors.
fn grid_vectors(s: Surface, bound: u32) -> Vec<[i64; 2]> {
    let fan = s.fan();
    let n = fan.len();
    let mut out = BTreeSet::new();
    for i in 0..n {
        let v1 = fan.rays()[i].v;
        let v2 = fan.rays()[(i + 1) % n].v;
        for a in 1..bound as i64 {
            for b in 1..=(bound as i64 - a) {
                out.insert(primitive([a * v1[0] + b * v2[0], a * v1[1] + b * v2[1]]));
            }
        }
    }
    out.into_iter().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ThresholdClass {
    Empty,
    Point,
    Interval,
}

/// `{c in (0, 1/2) : beta >= 0 for every toric valuation}`, as an intersection
/// of half-lines. `lower = None` means unbounded below, `upper = None` unbounded
/// above (before clipping to `(0, 1/2)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityThreshold {
    pub lower: Option<Bound>,
    pub upper: Option<Bound>,
    /// A valuation whose constraint holds for no `c` at all.
    pub contradiction: Option<String>,
    pub classification: ThresholdClass,
    pub checked: usize,
    pub grid_bound: Option<u32>,
    /// Every grid valuation is nonnegative on the reported set.
    pub grid_consistent: bool,
}

impl StabilityThreshold {
    pub fn point(&self) -> Option<&Rational> {
        match self.classification {
            ThresholdClass::Point => self.lower.as_ref().map(|b| &b.value),
            _ => None,
        }
    }

    pub fn lower_text(&self) -> String {
        self.lower
            .as_ref()
            .map_or("-inf".into(), |b| b.value.to_string())
    }

    pub fn upper_text(&self) -> String {
        self.upper
            .as_ref()
            .map_or("inf".into(), |b| b.value.to_string())
    }
}

impl fmt::Display for StabilityThreshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.classification {
            ThresholdClass::Empty => write!(f, "empty"),
            ThresholdClass::Point => write!(f, "{{{}}}", self.lower_text()),
            ThresholdClass::Interval => write!(f, "[{}, {}]", self.lower_text(), self.upper_text()),
        }
    }
}

fn tighten(
    slot: &mut Option<Bound>,
    value: Rational,
    ch: &ToricCheck,
    better: impl Fn(&Rational, &Rational) -> bool,
) {
    match slot {
        Some(b) if b.value == value => {
            b.binding.push(ch.label.clone());
            b.vectors.push(ch.w);
        }
        Some(b) if !better(&value, &b.value) => {}
        _ => {
            *slot = Some(Bound {
                value,
                binding: vec![ch.label.clone()],
                vectors: vec![ch.w],
            })
        }
    }
}

fn classify(lower: &Option<Bound>, upper: &Option<Bound>, contradiction: bool) -> ThresholdClass {
    if contradiction {
        return ThresholdClass::Empty;
    }
    let zero = Rational::zero();
    let half = Rational::new(1.into(), 2.into());
    let lo = lower.as_ref().map(|b| &b.value);
    let up = upper.as_ref().map(|b| &b.value);
    if let (Some(l), Some(u)) = (lo, up) {
        if l == u {
            return if *l > zero && *l < half {
                ThresholdClass::Point
            } else {
                ThresholdClass::Empty
            };
        }
        if l > u {
            return ThresholdClass::Empty;
        }
    }
    let l_eff = lo.map_or(zero.clone(), |l| l.clone().max(zero.clone()));
    let u_eff = up.map_or(half.clone(), |u| u.clone().min(half.clone()));
    if l_eff < u_eff {
        ThresholdClass::Interval
    } else {
        ThresholdClass::Empty
    }
}

fn checks_for(curve: &CurvePair, ws: &[[i64; 2]]) -> Result<Vec<ToricCheck>, StabilityError> {
    ws.par_iter().map(|w| ToricCheck::new(curve, *w)).collect()
}

/// The stability threshold of the pair over all toric valuations. The ray and
/// tie directions of [`check_vectors`] decide it exactly; with `grid = Some(B)`
/// every chart weight with `a + b <= B` is evaluated as a cross-check.
pub fn threshold(
    curve: &CurvePair,
    grid: Option<u32>,
) -> Result<StabilityThreshold, StabilityError> {
    let ws = check_vectors(curve);
    let checks = checks_for(curve, &ws)?;
    let mut lower: Option<Bound> = None;
    let mut upper: Option<Bound> = None;
    let mut contradiction = None;
    for ch in &checks {
        let (k, r) = ch.constraint();
        if k.is_zero() {
            if r.is_positive() && contradiction.is_none() {
                contradiction = Some(ch.label.clone());
            }
        } else if k.is_positive() {
            tighten(&mut lower, &r / &k, ch, |a, b| a > b);
        } else {
            tighten(&mut upper, &r / &k, ch, |a, b| a < b);
        }
    }
    let classification = classify(&lower, &upper, contradiction.is_some());
    let mut grid_consistent = true;
    if let Some(b) = grid {
        let seen: BTreeSet<[i64; 2]> = ws.iter().copied().collect();
        let extra: Vec<[i64; 2]> = grid_vectors(curve.surface, b)
            .into_iter()
            .filter(|w| !seen.contains(w))
            .collect();
        let grid_checks = checks_for(curve, &extra)?;
        let zero = Rational::zero();
        let half = Rational::new(1.into(), 2.into());
        let ends: Vec<Rational> = match classification {
            ThresholdClass::Empty => Vec::new(),
            _ => vec![
                lower
                    .as_ref()
                    .map_or(zero.clone(), |l| l.value.clone().max(zero.clone())),
                upper
                    .as_ref()
                    .map_or(half.clone(), |u| u.value.clone().min(half.clone())),
            ],
        };
        grid_consistent = grid_checks
            .iter()
            .all(|g| ends.iter().all(|c| !g.beta(c).is_negative()));
    }
    Ok(StabilityThreshold {
        lower,
        upper,
        contradiction,
        classification,
        checked: checks.len(),
        grid_bound: grid,
        grid_consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::q;
    use crate::pairs::{admissible_monomials, parse_curve};

    #[test]
    fn first_and_last_f1_walls() {
        let c = parse_curve("x^4*y*z", Surface::F1).unwrap();
        let t = threshold(&c, Some(30)).unwrap();
        assert_eq!(t.point(), Some(&q(1, 14)));
        assert!(t.grid_consistent);
        let c = parse_curve("x^3*z^3 + x*y^5", Surface::F1).unwrap();
        let t = threshold(&c, Some(30)).unwrap();
        assert_eq!(t.point(), Some(&q(2, 7)));
    }

    #[test]
    fn generic_curve_is_stable_after_first_wall() {
        let full =
            CurvePair::from_exponents(Surface::F1, &admissible_monomials(Surface::F1)).unwrap();
        let t = threshold(&full, Some(30)).unwrap();
        assert_eq!(t.classification, ThresholdClass::Interval);
        assert!(t.lower.as_ref().unwrap().value <= q(1, 14));
    }

    #[test]
    fn curve_without_z3_is_unstable() {
        let c = parse_curve("z^2*x^4", Surface::BlP114).unwrap();
        let t = threshold(&c, None).unwrap();
        assert_eq!(t.classification, ThresholdClass::Empty);
    }
}
