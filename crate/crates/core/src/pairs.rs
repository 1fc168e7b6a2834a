//! Boundary curves as monomial supports, their local expansions in the
//! blowup charts, multiplicities and log discrepancies.

use crate::exactnum::{parse_rational, Rational};
use crate::surface::{base_fan, DivisorClass, Surface, SurfaceModel};
use crate::volume::{ChartCase, VolumeError};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairsError {
    #[error("syntax error in curve: {0}")]
    Syntax(String),
    #[error("monomial {mono} has weighted degree {got}, expected {want}")]
    Degree { mono: String, got: i64, want: i64 },
    #[error("monomial {0} has multiplicity below 2 at the blown-up point [1,0,0]")]
    Multiplicity(String),
    #[error("empty curve or support")]
    Empty,
    #[error("one-parameter subgroup {0:?} acts trivially")]
    Trivial([i64; 3]),
    #[error("one-parameter subgroup {0:?} gives degenerate chart weights (a or b is 0); use the invariant curve {1} as a toric divisor valuation")]
    Degenerate([i64; 3], String),
    #[error("one-parameter subgroup {0:?} has its valuation centered at the 1/4(1,1) point; no smooth chart applies")]
    SingularCenter([i64; 3]),
    #[error(transparent)]
    Volume(#[from] VolumeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoeffTag {
    One,
    GenericNonzero,
    Generic,
}

/// `x^ex y^ey z^ez` together with the order in which the variables were written.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub ex: i64,
    pub ey: i64,
    pub ez: i64,
    pub coeff: Coeff,
    order: Vec<char>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Unit,
    Symbol(String),
    Value(Rational),
}

impl Coeff {
    pub fn tag(&self) -> CoeffTag {
        match self {
            Coeff::Unit => CoeffTag::One,
            Coeff::Value(v) if v.is_one() => CoeffTag::One,
            _ => CoeffTag::GenericNonzero,
        }
    }
}

impl Monomial {
    pub fn new(ex: i64, ey: i64, ez: i64) -> Self {
        Self {
            ex,
            ey,
            ez,
            coeff: Coeff::Unit,
            order: vec!['x', 'y', 'z'],
        }
    }

    pub fn exponents(&self) -> [i64; 3] {
        [self.ex, self.ey, self.ez]
    }

    /// `(i, j)`: the exponents of `y` and `z`.
    pub fn ij(&self) -> (i64, i64) {
        (self.ey, self.ez)
    }

    /// Multiplicity at `[1,0,0]` in the smooth local coordinates `y/x`, `z/x^k`.
    pub fn local_degree(&self) -> i64 {
        self.ey + self.ez
    }

    fn var_text(&self) -> String {
        let mut parts = Vec::new();
        for v in &self.order {
            let e = match v {
                'x' => self.ex,
                'y' => self.ey,
                _ => self.ez,
            };
            match e {
                0 => {}
                1 => parts.push(v.to_string()),
                _ => parts.push(format!("{v}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.coeff {
            Coeff::Unit => {}
            Coeff::Symbol(s) => write!(f, "{s}*")?,
            Coeff::Value(v) => write!(f, "{v}*")?,
        }
        f.write_str(&self.var_text())
    }
}

/// A boundary curve `C` given by the monomial support of its image on the
/// plane or on P(1,1,4).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvePair {
    pub surface: Surface,
    pub monomials: Vec<Monomial>,
    pub warnings: Vec<String>,
}

/// Local exponents of a curve in a chart: `(ord_{u1}, ord_{u2})` per monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialSupport {
    pub chart: crate::volume::ChartTag,
    pub exponents: Vec<(i64, i64)>,
}

fn parse_monomial(src: &str) -> Result<Monomial, PairsError> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(PairsError::Syntax("empty monomial".into()));
    }
    let mut coeff = Coeff::Unit;
    let mut body = s.as_str();
    if let Some((head, tail)) = s.split_once('*') {
        let is_symbol = head.starts_with('a') && head[1..].chars().all(|c| c.is_ascii_digit());
        let is_number = head
            .chars()
            .all(|c| c.is_ascii_digit() || c == '/' || c == '-');
        if is_symbol {
            coeff = Coeff::Symbol(head.to_string());
            body = tail;
        } else if is_number {
            let v = parse_rational(head).map_err(|e| PairsError::Syntax(e.to_string()))?;
            if v.is_zero() {
                return Err(PairsError::Syntax(format!("zero coefficient in {src}")));
            }
            coeff = Coeff::Value(v);
            body = tail;
        }
    }
    let mut exps = [0i64; 3];
    let mut order = Vec::new();
    let chars: Vec<char> = body.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let slot = match c {
            'x' => 0,
            'y' => 1,
            'z' => 2,
            '*' if k > 0 && k + 1 < chars.len() => {
                k += 1;
                continue;
            }
            _ => return Err(PairsError::Syntax(format!("unexpected '{c}' in {src}"))),
        };
        k += 1;
        let mut e = 1;
        if k < chars.len() && chars[k] == '^' {
            k += 1;
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            if start == k {
                return Err(PairsError::Syntax(format!("missing exponent in {src}")));
            }
            e = chars[start..k]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| PairsError::Syntax(format!("exponent too large in {src}")))?;
        }
        if order.contains(&c) {
            return Err(PairsError::Syntax(format!(
                "variable {c} repeated in {src}"
            )));
        }
        order.push(c);
        exps[slot] = e;
    }
    if order.is_empty() {
        return Err(PairsError::Syntax(format!("no variables in {src}")));
    }
    Ok(Monomial {
        ex: exps[0],
        ey: exps[1],
        ez: exps[2],
        coeff,
        order,
    })
}

/// Checks degree and multiplicity; the monomial must lie in `|-2K|` and
/// vanish to order at least 2 at the blown-up point.
pub fn check_monomial(surface: Surface, m: &Monomial) -> Result<(), PairsError> {
    let got = m.ex + m.ey + surface.z_weight() * m.ez;
    let want = surface.curve_degree();
    if got != want {
        return Err(PairsError::Degree {
            mono: m.var_text(),
            got,
            want,
        });
    }
    if m.local_degree() < 2 {
        return Err(PairsError::Multiplicity(m.var_text()));
    }
    Ok(())
}

/// Parses `"x^4*z^2 + x^3*y^3"`-style text. Coefficients `a*`, `a1*` or a
/// rational followed by `*` are allowed; they never affect the invariants.
pub fn parse_curve(text: &str, surface: Surface) -> Result<CurvePair, PairsError> {
    let monomials = text
        .split('+')
        .map(parse_monomial)
        .collect::<Result<Vec<_>, _>>()?;
    CurvePair::new(surface, monomials)
}

impl CurvePair {
    pub fn new(surface: Surface, monomials: Vec<Monomial>) -> Result<Self, PairsError> {
        if monomials.is_empty() {
            return Err(PairsError::Empty);
        }
        for m in &monomials {
            check_monomial(surface, m)?;
        }
        let mut warnings = Vec::new();
        if surface == Surface::BlP114 && !monomials.iter().any(|m| m.exponents() == [0, 0, 3]) {
            warnings.push(
                "z^3 absent: the curve passes through the 1/4(1,1) point and the pair is K-unstable for every c"
                    .into(),
            );
        }
        Ok(Self {
            surface,
            monomials,
            warnings,
        })
    }

    /// Curve with every listed monomial at coefficient 1.
    pub fn from_exponents(surface: Surface, exps: &[[i64; 3]]) -> Result<Self, PairsError> {
        Self::new(
            surface,
            exps.iter()
                .map(|e| Monomial::new(e[0], e[1], e[2]))
                .collect(),
        )
    }

    pub fn render(&self) -> String {
        self.monomials
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Distinct exponent vectors in first-seen order.
    pub fn support(&self) -> Vec<[i64; 3]> {
        let mut out: Vec<[i64; 3]> = Vec::new();
        for m in &self.monomials {
            if !out.contains(&m.exponents()) {
                out.push(m.exponents());
            }
        }
        out
    }

    pub fn contains_z3(&self) -> bool {
        self.support().contains(&[0, 0, 3])
    }

    /// Every monomial has the same weight under the one-parameter subgroup.
    pub fn is_invariant(&self, lambda: [i64; 3]) -> bool {
        let wt = |e: &[i64; 3]| e[0] * lambda[0] + e[1] * lambda[1] + e[2] * lambda[2];
        let s = self.support();
        s.iter().all(|e| wt(e) == wt(&s[0]))
    }

    pub fn to_json(&self) -> CurveJson {
        CurveJson {
            surface: self.surface,
            monomials: self
                .monomials
                .iter()
                .map(|m| MonomialJson {
                    i: m.ey,
                    j: m.ez,
                    coeff_tag: m.coeff.tag(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &CurveJson) -> Result<Self, PairsError> {
        let deg = j.surface.curve_degree();
        let monos = j
            .monomials
            .iter()
            .map(|m| {
                let mut mono = Monomial::new(deg - m.i - j.surface.z_weight() * m.j, m.i, m.j);
                if m.coeff_tag != CoeffTag::One {
                    mono.coeff = Coeff::Symbol("a".into());
                }
                mono
            })
            .collect();
        Self::new(j.surface, monos)
    }
}

impl fmt::Display for CurvePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialJson {
    pub i: i64,
    pub j: i64,
    pub coeff_tag: CoeffTag,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    pub surface: Surface,
    pub monomials: Vec<MonomialJson>,
}

/// Order of vanishing of the strict transform of a monomial curve along the
/// toric valuation `w`: the base divisor's piecewise-linear function at `w`
/// minus twice the exceptional curve's.
pub fn monomial_order(surface: Surface, e: [i64; 3], w: [i64; 2]) -> Rational {
    let base = base_fan(surface);
    let phi = base.pl_coords(w);
    let mut total = Rational::zero();
    for (k, lbl) in ["H_x", "H_y", "H_z"].iter().enumerate() {
        let i = base.index_of(lbl).expect("base ray");
        total += &phi[i] * Rational::from_integer(e[k].into());
    }
    let fan = surface.fan();
    let ie = fan.index_of("E").expect("E is a ray");
    total - Rational::from_integer(2.into()) * &fan.pl_coords(w)[ie]
}

/// `ord_w(C)` for a curve with generic coefficients: minimum over its support.
pub fn curve_order(curve: &CurvePair, w: [i64; 2]) -> Rational {
    curve
        .support()
        .iter()
        .map(|e| monomial_order(curve.surface, *e, w))
        .min()
        .expect("curve is nonempty")
}

/// Log discrepancy `A_X(w)` of the toric valuation: the sum of its
/// coordinates in the cone of the surface's fan containing it.
pub fn toric_log_discrepancy(surface: Surface, w: [i64; 2]) -> Rational {
    surface.fan().pl_coords(w).into_iter().sum()
}

/// `A_{(X, cC)}(w) = A_X(w) - c ord_w(C)`.
pub fn valuation_log_discrepancy(curve: &CurvePair, w: [i64; 2], c: &Rational) -> Rational {
    toric_log_discrepancy(curve.surface, w) - c * curve_order(curve, w)
}

/// Coefficients of the strict transform of a monomial curve on the invariant
/// curves of the surface, in fan order.
pub fn toric_divisor(surface: Surface, e: [i64; 3]) -> Vec<(String, i64)> {
    surface
        .fan()
        .rays()
        .iter()
        .map(|r| {
            let o = monomial_order(surface, e, r.v);
            (r.label.clone(), o.to_integer().try_into().expect("small"))
        })
        .collect()
}

/// Class of the curve on the surface model; equals `-2K` by construction.
pub fn curve_class(curve: &CurvePair, model: &SurfaceModel) -> DivisorClass {
    let e = curve.support()[0];
    let mut d = DivisorClass::zero(model.rank());
    for (l, k) in toric_divisor(curve.surface, e) {
        let c = model.class_of(&l).expect("fan and model share labels");
        d = d.add_scaled(&Rational::from_integer(k.into()), c);
    }
    d
}

/// Lattice vector of the valuation induced by a one-parameter subgroup
/// `t -> [t^l1 x, t^l2 y, t^l3 z]`, reduced to a primitive vector.
pub fn one_ps_vector(lambda: [i64; 3], surface: Surface) -> Result<[i64; 2], PairsError> {
    let w = [
        lambda[1] - lambda[0],
        lambda[2] - surface.z_weight() * lambda[0],
    ];
    if w == [0, 0] {
        return Err(PairsError::Trivial(lambda));
    }
    let g = w[0].gcd(&w[1]);
    Ok([w[0] / g, w[1] / g])
}

/// Chart and weights of the valuation induced by `lambda`. Inside the singular
/// cone of BlP114 the opposite subgroup is used (it preserves the same curves).
pub fn one_ps_to_chart(lambda: [i64; 3], surface: Surface) -> Result<ChartCase, PairsError> {
    let w = one_ps_vector(lambda, surface)?;
    let fan = surface.fan();
    if let Some(i) = fan.ray_at(w) {
        return Err(PairsError::Degenerate(lambda, fan.label(i).to_string()));
    }
    if let Some(ch) = ChartCase::from_lattice_vector(surface, w) {
        return Ok(ch);
    }
    let neg = [-w[0], -w[1]];
    if let Some(i) = fan.ray_at(neg) {
        return Err(PairsError::Degenerate(lambda, fan.label(i).to_string()));
    }
    ChartCase::from_lattice_vector(surface, neg).ok_or(PairsError::SingularCenter(lambda))
}

/// Local exponents `(ord_{u1}, ord_{u2})` of each monomial in the chart.
pub fn chart_expand(curve: &CurvePair, chart: &ChartCase) -> Result<MonomialSupport, PairsError> {
    if chart.surface() != curve.surface {
        return Err(PairsError::Volume(VolumeError::InvalidChart(format!(
            "{} lives on {}, the curve on {}",
            chart.tag,
            chart.surface(),
            curve.surface
        ))));
    }
    let fan = curve.surface.fan();
    let (c1, c2) = chart.tag.curves();
    let v1 = fan.rays()[fan.index_of(c1).expect("ray")].v;
    let v2 = fan.rays()[fan.index_of(c2).expect("ray")].v;
    let to_int = |r: Rational| -> i64 { r.to_integer().try_into().expect("small") };
    let exponents = curve
        .support()
        .iter()
        .map(|e| {
            (
                to_int(monomial_order(curve.surface, *e, v1)),
                to_int(monomial_order(curve.surface, *e, v2)),
            )
        })
        .collect();
    Ok(MonomialSupport {
        chart: chart.tag,
        exponents,
    })
}

/// `min (a i + b j)` over the support.
pub fn multiplicity(support: &MonomialSupport, a: i64, b: i64) -> Result<i64, PairsError> {
    support
        .exponents
        .iter()
        .map(|(i, j)| a * i + b * j)
        .min()
        .ok_or(PairsError::Empty)
}

/// `A = a + b - c m` for a weighted blowup at a smooth point.
pub fn log_discrepancy(
    chart: &ChartCase,
    support: &MonomialSupport,
    c: &Rational,
) -> Result<Rational, PairsError> {
    let m = multiplicity(support, chart.a, chart.b)?;
    Ok(Rational::from_integer((chart.a + chart.b).into()) - c * Rational::from_integer(m.into()))
}

/// All monomials of `|-2K|` with multiplicity at least 2 at the blown-up point.
pub fn admissible_monomials(surface: Surface) -> Vec<[i64; 3]> {
    let d = surface.curve_degree();
    let k = surface.z_weight();
    let mut out = Vec::new();
    for ez in 0..=d / k {
        for ey in 0..=(d - k * ez) {
            let ex = d - k * ez - ey;
            if ey + ez >= 2 {
                out.push([ex, ey, ez]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, q};
    use crate::surface::f1;
    use crate::volume::ChartTag;

    #[test]
    fn parse_and_render() {
        let c = parse_curve("x^4*z^2 + x^3*y^3", Surface::F1).unwrap();
        assert_eq!(c.render(), "x^4*z^2 + x^3*y^3");
        let ij: Vec<(i64, i64)> = c.monomials.iter().map(|m| m.ij()).collect();
        assert_eq!(ij, [(0, 2), (3, 0)]);
        let c = parse_curve("x^4*z^2+x^3*z*y^2+a*x^2*y^4", Surface::F1).unwrap();
        assert_eq!(c.render(), "x^4*z^2 + x^3*z*y^2 + a*x^2*y^4");
        assert_eq!(parse_curve(&c.render(), Surface::F1).unwrap(), c);
        assert!(matches!(
            parse_curve("x^4*y", Surface::F1),
            Err(PairsError::Degree { .. })
        ));
        assert!(matches!(
            parse_curve("x^5*y", Surface::F1),
            Err(PairsError::Multiplicity(_))
        ));
        assert!(matches!(
            parse_curve("x^4*q^2", Surface::F1),
            Err(PairsError::Syntax(_))
        ));
        assert!(parse_curve("x^4 y z", Surface::F1).is_ok());
    }

    #[test]
    fn z3_warning() {
        let c = parse_curve("z^2*x^4", Surface::BlP114).unwrap();
        assert_eq!(c.warnings.len(), 1);
        let c = parse_curve("z^3 + z^2*x^4", Surface::BlP114).unwrap();
        assert!(c.warnings.is_empty());
    }

    #[test]
    fn class_of_x4yz() {
        let c = parse_curve("x^4*y*z", Surface::F1).unwrap();
        let div = toric_divisor(Surface::F1, [4, 1, 1]);
        let get = |l: &str| div.iter().find(|(x, _)| x == l).unwrap().1;
        assert_eq!((get("H_x"), get("H_y"), get("H_z"), get("E")), (4, 1, 1, 0));
        let m = f1();
        assert_eq!(curve_class(&c, &m), m.anticanonical.scale(&int(2)));
    }

    #[test]
    fn one_ps_charts() {
        let ch = one_ps_to_chart([0, 2, 3], Surface::F1).unwrap();
        assert_eq!((ch.tag, ch.a, ch.b), (ChartTag::Case2Yv, 2, 1));
        let ch = one_ps_to_chart([0, 1, 2], Surface::F1).unwrap();
        assert_eq!((ch.tag, ch.a, ch.b), (ChartTag::Case2Yv, 1, 1));
        let ch = one_ps_to_chart([1, 0, 4], Surface::BlP114).unwrap();
        assert_eq!((ch.tag, ch.a, ch.b), (ChartTag::Case3p, 1, 4));
        assert!(matches!(
            one_ps_to_chart([1, 0, 0], Surface::F1),
            Err(PairsError::Degenerate(..))
        ));
        assert!(matches!(
            one_ps_to_chart([0, 1, 1], Surface::F1),
            Err(PairsError::Degenerate(..))
        ));
        assert!(matches!(
            one_ps_to_chart([2, 2, 2], Surface::F1),
            Err(PairsError::Trivial(_))
        ));
    }

    #[test]
    fn expansions() {
        let c = parse_curve("x^4*z^2 + x^3*y^3", Surface::F1).unwrap();
        let ch = ChartCase::new(ChartTag::Case2Yv, 2, 1).unwrap();
        let s = chart_expand(&c, &ch).unwrap();
        assert_eq!(s.exponents, [(0, 2), (1, 0)]);
        assert_eq!(multiplicity(&s, 2, 1).unwrap(), 2);
        assert_eq!(log_discrepancy(&ch, &s, &q(5, 58)).unwrap(), q(82, 29));

        let c = parse_curve("x^4*z^2 + x^3*z*y^2 + x^2*y^4", Surface::F1).unwrap();
        let s = chart_expand(&c, &ch).unwrap();
        assert_eq!(s.exponents, [(0, 2), (1, 1), (2, 0)]);

        let c = parse_curve("z^3 + z^2*x^4", Surface::BlP114).unwrap();
        let ch = ChartCase::new(ChartTag::Case3p, 1, 4).unwrap();
        let s = chart_expand(&c, &ch).unwrap();
        assert_eq!(s.exponents, [(0, 3), (4, 2)]);
        assert_eq!(multiplicity(&s, 1, 4).unwrap(), 12);
        assert_eq!(log_discrepancy(&ch, &s, &int(0)).unwrap(), int(5));

        let ch = ChartCase::new(ChartTag::Case1At010, 1, 1).unwrap();
        let c = parse_curve("x^4*z^2", Surface::F1).unwrap();
        assert_eq!(chart_expand(&c, &ch).unwrap().exponents, [(4, 2)]);
    }

    #[test]
    fn admissible_sets() {
        // 28 plane sextic monomials minus x^6, x^5y, x^5z
        assert_eq!(admissible_monomials(Surface::F1).len(), 25);
        assert!(admissible_monomials(Surface::BlP114).contains(&[0, 0, 3]));
    }
}
