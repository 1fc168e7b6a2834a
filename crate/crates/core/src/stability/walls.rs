use super::threshold::{threshold, vector_label, ToricCheck};
use super::StabilityError;
use crate::exactnum::Rational;
use crate::pairs::{
    admissible_monomials, curve_order, monomial_order, toric_log_discrepancy, CurvePair,
};
use crate::surface::{DivisorClass, Surface};
use crate::volume::{s_toric_base, volume_profile, ChartCase, ChartTag};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// Which printed wall formula applies to a chart valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WallBranch {
    Case1Low,
    Case1High,
    Case2,
}

/// Closed-form wall for an F1 chart valuation with weights `(a, b)` and
/// multiplicity `m`. Returns `None` for BlP114 charts and when the value lies
/// outside `(0, 1/2)`.
pub fn wall_formula(ch: &ChartCase, m: i64) -> Option<(WallBranch, Rational)> {
    let (a, b) = (ch.a, ch.b);
    let (branch, num, den) = match ch.tag {
        ChartTag::Case2Zu | ChartTag::Case2Yv => {
            (WallBranch::Case2, 2 * a + b, 28 * a + 26 * b - 12 * m)
        }
        ChartTag::Case1At010 | ChartTag::Case1At001 if b >= a => {
            (WallBranch::Case1High, 2 * b - a, 12 * m - 26 * a - 20 * b)
        }
        ChartTag::Case1At010 | ChartTag::Case1At001 => (
            WallBranch::Case1Low,
            b * b,
            12 * a * m - 24 * a * a - 24 * a * b - 2 * b * b,
        ),
        _ => return None,
    };
    if den == 0 {
        return None;
    }
    let v = Rational::new(num.into(), den.into());
    (v.is_positive() && v < Rational::new(1.into(), 2.into())).then_some((branch, v))
}

/// Wall of the toric valuation `w` for a curve of order `m` along it: the zero
/// of `beta(c) = A_X(w) - c m - S_0(w)(1 - 2c)`, when it lies in `(0, 1/2)`.
pub fn engine_wall(
    s: Surface,
    w: [i64; 2],
    m: &Rational,
) -> Result<Option<Rational>, StabilityError> {
    let s0 = s_toric_base(s, w)?;
    let s0 = s0
        .as_rational()
        .ok_or_else(|| StabilityError::Irrational(s0.to_string()))?;
    let den = m - Rational::from_integer(2.into()) * &s0;
    if den.is_zero() {
        return Ok(None);
    }
    let v = (toric_log_discrepancy(s, w) - s0) / den;
    Ok((v.is_positive() && v < Rational::new(1.into(), 2.into())).then_some(v))
}

/// A one-parameter subgroup `(l1, l2, l3)` with nonnegative entries inducing
/// the lattice vector `w`.
pub fn one_ps_of_vector(s: Surface, w: [i64; 2]) -> [i64; 3] {
    let q = s.z_weight();
    let k = 0.max(-w[0]).max(Integer::div_ceil(&-w[1], &q));
    [k, w[0] + k, w[1] + q * k]
}

/// How a candidate curve was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CandidateSource {
    /// Two monomials tie at an interior direction of a cone.
    Tie,
    /// Monomials of equal order along an invariant curve.
    ToricGroup,
    /// A single monomial.
    Monomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallCandidate {
    pub surface: Surface,
    pub curve: CurvePair,
    /// Destabilizing valuation (primitive).
    pub w: [i64; 2],
    pub lambda: [i64; 3],
    pub chart: Option<ChartCase>,
    /// Order of the curve along `w`.
    pub m: Rational,
    pub wall: Rational,
    pub formula: Option<(WallBranch, Rational)>,
    pub source: CandidateSource,
    pub binding: Vec<String>,
}

impl WallCandidate {
    pub fn label(&self) -> String {
        vector_label(self.surface, self.w)
    }
}

fn primitive(w: [i64; 2]) -> [i64; 2] {
    let g = w[0].gcd(&w[1]);
    [w[0] / g, w[1] / g]
}

fn tie_directions(s: Surface, mons: &[[i64; 3]]) -> BTreeSet<[i64; 2]> {
    let fan = s.fan();
    let n = fan.len();
    let mut out = BTreeSet::new();
    for i in 0..n {
        let v1 = fan.rays()[i].v;
        let v2 = fan.rays()[(i + 1) % n].v;
        let loc: Vec<(Rational, Rational)> = mons
            .iter()
            .map(|e| (monomial_order(s, *e, v1), monomial_order(s, *e, v2)))
            .collect();
        for x in 0..loc.len() {
            for y in x + 1..loc.len() {
                let dp = &loc[x].0 - &loc[y].0;
                let dq = &loc[y].1 - &loc[x].1;
                if !dp.is_zero() && dp.signum() == dq.signum() {
                    let t = dq.abs() / dp.abs();
                    let al: i64 = t.numer().try_into().expect("small");
                    let be: i64 = t.denom().try_into().expect("small");
                    out.insert(primitive([
                        al * v1[0] + be * v2[0],
                        al * v1[1] + be * v2[1],
                    ]));
                }
            }
        }
    }
    out
}

/// Partition of `mons` by order along `w`.
fn groups(s: Surface, mons: &[[i64; 3]], w: [i64; 2]) -> Vec<Vec<[i64; 3]>> {
    let mut by: BTreeMap<Rational, Vec<[i64; 3]>> = BTreeMap::new();
    for e in mons {
        by.entry(monomial_order(s, *e, w)).or_default().push(*e);
    }
    by.into_values().collect()
}

/// Swapping `y` and `z` is an automorphism of F1. Of each mirror pair keep the
/// support with more `z` in its highest `x`-power terms.
fn is_canonical(g: &[[i64; 3]]) -> bool {
    let key = |g: &[[i64; 3]]| {
        let mut k: Vec<(i64, i64)> = g.iter().map(|e| (e[0], e[2])).collect();
        k.sort_by(|a, b| b.cmp(a));
        k
    };
    let mirror: Vec<[i64; 3]> = g.iter().map(|e| [e[0], e[2], e[1]]).collect();
    key(g) >= key(&mirror)
}

/// Every torus-semi-invariant curve in `|-2K|` whose stability threshold is a
/// single point, with the valuation that destabilizes it on either side.
pub fn enumerate_candidates(s: Surface) -> Result<Vec<WallCandidate>, StabilityError> {
    let mons = admissible_monomials(s);
    let mut seeds: BTreeMap<Vec<[i64; 3]>, CandidateSource> = BTreeMap::new();
    let mut add = |mut g: Vec<[i64; 3]>, src: CandidateSource| {
        g.sort();
        seeds.entry(g).or_insert(src);
    };
    for w in tie_directions(s, &mons) {
        for g in groups(s, &mons, w) {
            if g.len() >= 2 {
                add(g, CandidateSource::Tie);
            }
        }
    }
    for ray in s.fan().rays() {
        for g in groups(s, &mons, ray.v) {
            add(g, CandidateSource::ToricGroup);
        }
    }
    for e in &mons {
        add(vec![*e], CandidateSource::Monomial);
    }
    let z3 = [0, 0, s.curve_degree() / s.z_weight()];
    let seeds: Vec<_> = seeds
        .into_iter()
        .filter(|(g, _)| s != Surface::BlP114 || g.contains(&z3))
        .filter(|(g, _)| s != Surface::F1 || is_canonical(g))
        .collect();
    let found: Vec<Option<WallCandidate>> = seeds
        .par_iter()
        .map(|(g, src)| candidate(s, g, *src))
        .collect::<Result<_, _>>()?;
    let mut out: Vec<WallCandidate> = found.into_iter().flatten().collect();
    out.sort_by(|x, y| {
        (&x.wall, x.source, x.curve.support()).cmp(&(&y.wall, y.source, y.curve.support()))
    });
    Ok(out)
}

fn candidate(
    s: Surface,
    support: &[[i64; 3]],
    source: CandidateSource,
) -> Result<Option<WallCandidate>, StabilityError> {
    let curve = CurvePair::from_exponents(s, support)?;
    let t = threshold(&curve, None)?;
    let Some(p) = t.point().cloned() else {
        return Ok(None);
    };
    let lo = t.lower.as_ref().expect("point has bounds");
    let up = t.upper.as_ref().expect("point has bounds");
    // Among the binding valuations preserving the whole support (all monomials
    // of equal order), rank: the chart formula reproduces the wall; on F1 a
    // subgroup fixing x; destabilizing just above the wall.
    let invariant = |w: &[i64; 2]| {
        let o: BTreeSet<Rational> = support.iter().map(|e| monomial_order(s, *e, *w)).collect();
        o.len() == 1
    };
    let all: Vec<[i64; 2]> = up
        .vectors
        .iter()
        .chain(lo.vectors.iter())
        .copied()
        .collect();
    let rank = |w: &[i64; 2]| {
        let by_formula = ChartCase::from_lattice_vector(s, *w)
            .and_then(|ch| wall_formula(&ch, curve_order(&curve, *w).to_integer().try_into().ok()?))
            .is_some_and(|(_, v)| v == p);
        let fixes_x = s == Surface::F1 && support.len() > 1 && w[0] >= 0 && w[1] >= 0;
        (!invariant(w), !by_formula, !fixes_x)
    };
    let w = *all
        .iter()
        .enumerate()
        .min_by_key(|(i, w)| (rank(w), *i))
        .map(|(_, w)| w)
        .expect("a point threshold has binding valuations");
    let chart = ChartCase::from_lattice_vector(s, w);
    let m = curve_order(&curve, w);
    let formula = chart.and_then(|ch| {
        let mi: i64 = m.to_integer().try_into().ok()?;
        wall_formula(&ch, mi)
    });
    let mut binding = lo.binding.clone();
    binding.extend(up.binding.iter().cloned());
    binding.sort();
    binding.dedup();
    Ok(Some(WallCandidate {
        surface: s,
        lambda: one_ps_of_vector(s, w),
        curve,
        w,
        chart,
        m,
        wall: p,
        formula,
        source,
        binding,
    }))
}

/// Result of re-checking a wall candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Confirmation {
    /// The curve is preserved by the one-parameter subgroup.
    pub invariant: bool,
    /// `beta(w) = 0` at the wall.
    pub horizontal_zero: bool,
    /// `beta` on the other invariant curves at the wall, when checked.
    pub vertical: Vec<(String, Rational)>,
    pub vertical_positive: bool,
    /// The stability threshold is exactly the wall.
    pub threshold_point: bool,
}

impl Confirmation {
    pub fn confirmed(&self) -> bool {
        self.invariant && self.horizontal_zero && self.vertical_positive && self.threshold_point
    }
}

pub fn confirm_wall(cand: &WallCandidate) -> Result<Confirmation, StabilityError> {
    let s = cand.surface;
    let c = &cand.wall;
    let invariant = cand.curve.is_invariant(cand.lambda);
    let horizontal_zero = ToricCheck::new(&cand.curve, cand.w)?.beta(c).is_zero();
    let mut vertical = Vec::new();
    if cand.curve.support().len() > 1 {
        let parallel = |v: [i64; 2]| v[0] * cand.w[1] == v[1] * cand.w[0];
        for ray in s.fan().rays().iter().filter(|r| !parallel(r.v)) {
            let b = ToricCheck::new(&cand.curve, ray.v)?.beta(c);
            vertical.push((ray.label.clone(), b));
        }
        vertical.push(("fiber".into(), fiber_beta(s, cand.w, c)?));
    }
    let vertical_positive = vertical.iter().all(|(_, b)| b.is_positive());
    let t = threshold(&cand.curve, None)?;
    Ok(Confirmation {
        invariant,
        horizontal_zero,
        vertical,
        vertical_positive,
        threshold_point: t.point() == Some(c),
    })
}

/// Beta of a non-toric orbit closure of the subgroup `w`, taken as a
/// component of the curve: `1 - c - S(D)`, where `D` is the divisor of poles
/// of the primitive invariant character.
fn fiber_beta(s: Surface, w: [i64; 2], c: &Rational) -> Result<Rational, StabilityError> {
    let m0 = [w[1], -w[0]];
    let model = s.model();
    let mut d = DivisorClass::zero(model.rank());
    for ray in s.fan().rays() {
        let k = m0[0] * ray.v[0] + m0[1] * ray.v[1];
        if k > 0 {
            let cl = model.class_of(&ray.label).expect("rays are model curves");
            d = d.add_scaled(&Rational::from_integer(k.into()), cl);
        }
    }
    let sv = volume_profile(&model, &model.anticanonical, &d)?.s_at(c);
    let sv = sv
        .as_rational()
        .ok_or_else(|| StabilityError::Irrational(sv.to_string()))?;
    Ok(Rational::one() - c - sv)
}

/// Confirmed walls of `s`, ordered by value, each with its curve.
pub fn enumerate_walls(s: Surface) -> Result<Vec<WallCandidate>, StabilityError> {
    let cands = enumerate_candidates(s)?;
    let ok: Vec<bool> = cands
        .par_iter()
        .map(|c| confirm_wall(c).map(|r| r.confirmed()))
        .collect::<Result<_, _>>()?;
    Ok(cands
        .into_iter()
        .zip(ok)
        .filter_map(|(c, k)| k.then_some(c))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::q;

    fn values(s: Surface) -> Vec<Rational> {
        let mut v: Vec<Rational> = enumerate_walls(s)
            .unwrap()
            .into_iter()
            .map(|c| c.wall)
            .collect();
        v.dedup();
        v
    }

    #[test]
    fn f1_walls() {
        let want = [
            (1, 14),
            (5, 58),
            (1, 10),
            (7, 62),
            (1, 8),
            (5, 34),
            (1, 6),
            (7, 38),
            (1, 5),
            (5, 22),
            (2, 7),
        ];
        let want: Vec<Rational> = want.iter().map(|(a, b)| q(*a, *b)).collect();
        assert_eq!(values(Surface::F1), want);
    }

    #[test]
    fn blp114_walls() {
        // the last three come from Case 2' weights with b < 3a, where the exact
        // S is linear on the cone
        let want: Vec<Rational> = [
            (29, 106),
            (31, 110),
            (2, 7),
            (35, 118),
            (41, 130),
            (47, 142),
            (59, 166),
        ]
        .iter()
        .map(|(a, b)| q(*a, *b))
        .collect();
        assert_eq!(values(Surface::BlP114), want);
    }

    #[test]
    fn table_weights() {
        let f1 = enumerate_walls(Surface::F1).unwrap();
        assert_eq!(f1.len(), 16);
        assert_eq!(f1[0].lambda, [1, 0, 0]);
        assert!(f1[1..].iter().all(|c| c.lambda[0] == 0));
        let bl = enumerate_walls(Surface::BlP114).unwrap();
        let lams: Vec<[i64; 3]> = bl.iter().take(4).map(|c| c.lambda).collect();
        assert_eq!(lams, [[1, 0, 4], [2, 0, 7], [3, 0, 10], [1, 0, 3]]);
        assert!(bl.iter().all(|c| c.chart.unwrap().tag == ChartTag::Case3p));
    }

    #[test]
    fn mirror_curves_are_not_repeated() {
        assert!(is_canonical(&[[4, 0, 2], [3, 3, 0]]));
        assert!(!is_canonical(&[[4, 2, 0], [3, 0, 3]]));
        assert!(is_canonical(&[[4, 1, 1]]));
    }

    #[test]
    fn display_subgroups() {
        assert_eq!(one_ps_of_vector(Surface::F1, [-1, -1]), [1, 0, 0]);
        assert_eq!(one_ps_of_vector(Surface::F1, [1, 1]), [0, 1, 1]);
        assert_eq!(one_ps_of_vector(Surface::BlP114, [-1, 0]), [1, 0, 4]);
        assert_eq!(one_ps_of_vector(Surface::F1, [2, 3]), [0, 2, 3]);
    }

    #[test]
    fn formulas_match_engine_walls() {
        let ch = ChartCase::new(ChartTag::Case2Yv, 2, 1).unwrap();
        assert_eq!(wall_formula(&ch, 2), Some((WallBranch::Case2, q(5, 58))));
        let w = ch.lattice_vector();
        assert_eq!(
            engine_wall(Surface::F1, w, &q(2, 1)).unwrap(),
            Some(q(5, 58))
        );
        assert_eq!(
            engine_wall(Surface::BlP114, [-1, 0], &q(12, 1)).unwrap(),
            Some(q(29, 106))
        );
    }
}
