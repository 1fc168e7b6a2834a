//! Coordinate changes from the K-moduli parameter `c` to the HKL parameter and
//! to cone-construction thresholds, Noether and Cartier-index checks, and the
//! dimension audit of the wall atlas.

mod atlas;

pub use atlas::{reproduce_row, AtlasRow, NlLocus, RowCheck, RowMethod, WallAtlas};

use crate::exactnum::{q, Rational};
use crate::pairs::PairsError;
use crate::stability::StabilityError;
use crate::surface::Surface;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HklError {
    #[error("atlas: {0}")]
    Atlas(String),
    #[error("2 - c*ord = {0} is not positive")]
    Skoda(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Pairs(#[from] PairsError),
    #[error(transparent)]
    Stability(#[from] StabilityError),
}

/// `s(c)`, or the pole at `c = 1/14`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum HklValue {
    Finite(Rational),
    Pole,
}

impl fmt::Display for HklValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HklValue::Finite(v) => write!(f, "{v}"),
            HklValue::Pole => f.write_str("pole"),
        }
    }
}

/// `s(c) = (1 - 2c) / (56c - 4)`.
pub fn hkl_param(c: &Rational) -> HklValue {
    let den = q(56, 1) * c - q(4, 1);
    if den.is_zero() {
        HklValue::Pole
    } else {
        HklValue::Finite((Rational::one() - q(2, 1) * c) / den)
    }
}

/// Inverse of [`hkl_param`]: `c(s) = (4s + 1) / (56s + 2)`.
pub fn hkl_inverse(s: &Rational) -> Rational {
    (q(4, 1) * s + Rational::one()) / (q(56, 1) * s + q(2, 1))
}

/// Coefficient of the cone-construction threefold pair: `(4c + 1) / 3`.
pub fn cone_threshold(c: &Rational) -> Rational {
    (q(4, 1) * c + Rational::one()) / q(3, 1)
}

/// The `n` with `s = 1/n` predicted on the arithmetic side.
pub const PREDICTED_N: [i64; 13] = [1, 2, 3, 4, 6, 8, 10, 12, 16, 25, 27, 28, 31];

/// Families of hyperelliptic walls by singularity type, with their predicted images.
pub const REMARK_FAMILIES: [(&str, [i64; 3]); 5] = [
    ("A", [1, 2, 3]),
    ("A'", [4, 6, 8]),
    ("D", [4, 6, 8]),
    ("D'", [10, 12, 16]),
    ("E", [10, 16, 28]),
];

/// Predicted unigonal images.
pub const REMARK_UNIGONAL: [i64; 4] = [25, 27, 28, 31];

/// Family of a row, read from its NL label: the letter, primed when the label
/// carries a prime; `u` on BlP114.
pub fn family(row: &AtlasRow) -> Option<&'static str> {
    if row.surface == Surface::BlP114 {
        return Some("u");
    }
    let label = &row.e_plus.as_ref()?.label;
    let inner = label.trim_start_matches("NL(");
    let primed = inner.contains('\'');
    Some(match (inner.chars().next()?, primed) {
        ('A', false) => "A",
        ('A', true) => "A'",
        ('D', false) => "D",
        ('D', true) => "D'",
        ('E', _) => "E",
        _ => return None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapRow {
    pub wall: Rational,
    pub surface: Surface,
    pub family: Option<&'static str>,
    pub s: HklValue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyCheck {
    pub family: &'static str,
    pub computed: BTreeSet<Rational>,
    pub predicted: BTreeSet<Rational>,
}

impl FamilyCheck {
    pub fn agrees(&self) -> bool {
        self.computed == self.predicted
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapReport {
    pub rows: Vec<MapRow>,
    /// Images of F1 walls (hyperelliptic side) and BlP114 walls (unigonal side).
    pub hyperelliptic: BTreeSet<Rational>,
    pub unigonal: BTreeSet<Rational>,
    /// Walls sent to the pole.
    pub poles: Vec<Rational>,
    /// Predicted values not hit.
    pub missing: Vec<Rational>,
    /// Images outside the prediction.
    pub unexpected: Vec<Rational>,
    pub families: Vec<FamilyCheck>,
}

impl MapReport {
    pub fn ok(&self) -> bool {
        self.missing.is_empty()
            && self.unexpected.is_empty()
            && self.unigonal == inverses(&REMARK_UNIGONAL)
            && self.families.iter().all(FamilyCheck::agrees)
    }
}

fn inverses(ns: &[i64]) -> BTreeSet<Rational> {
    ns.iter().map(|n| q(1, *n)).collect()
}

/// Images of the atlas walls under `s(c)`, compared with the predicted set.
pub fn map_walls(atlas: &WallAtlas) -> Result<MapReport, HklError> {
    let mut rows = Vec::new();
    let mut seen = BTreeSet::new();
    for r in &atlas.walls {
        let w = r.wall_value()?;
        let fam = family(r);
        if seen.insert((r.surface, w.clone(), fam)) {
            rows.push(MapRow {
                s: hkl_param(&w),
                wall: w,
                surface: r.surface,
                family: fam,
            });
        }
    }
    rows.sort_by(|a, b| (a.surface, &a.wall, a.family).cmp(&(b.surface, &b.wall, b.family)));
    let mut hyperelliptic = BTreeSet::new();
    let mut unigonal = BTreeSet::new();
    let mut poles = Vec::new();
    for r in &rows {
        match (&r.s, r.surface) {
            (HklValue::Pole, _) => poles.push(r.wall.clone()),
            (HklValue::Finite(v), Surface::F1) => {
                hyperelliptic.insert(v.clone());
            }
            (HklValue::Finite(v), Surface::BlP114) => {
                unigonal.insert(v.clone());
            }
        }
    }
    poles.dedup();
    let predicted = inverses(&PREDICTED_N);
    let all: BTreeSet<Rational> = hyperelliptic.union(&unigonal).cloned().collect();
    let families = REMARK_FAMILIES
        .iter()
        .map(|(f, ns)| FamilyCheck {
            family: f,
            computed: rows
                .iter()
                .filter(|r| r.family == Some(*f))
                .filter_map(|r| match &r.s {
                    HklValue::Finite(v) => Some(v.clone()),
                    HklValue::Pole => None,
                })
                .collect(),
            predicted: inverses(ns),
        })
        .collect();
    Ok(MapReport {
        missing: predicted.difference(&all).cloned().collect(),
        unexpected: all.difference(&predicted).cloned().collect(),
        rows,
        hyperelliptic,
        unigonal,
        poles,
        families,
    })
}

/// A printed family `(p + n) / (q + n)` of cone thresholds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConeFamily {
    pub surface: Surface,
    pub p: i64,
    pub q: i64,
    pub listed: &'static [i64],
}

pub const CONE_FAMILIES: [ConeFamily; 3] = [
    ConeFamily {
        surface: Surface::F1,
        p: 11,
        q: 27,
        listed: &[1, 2, 3, 4, 5],
    },
    ConeFamily {
        surface: Surface::F1,
        p: 3,
        q: 11,
        listed: &[6, 7, 8, 9, 11],
    },
    ConeFamily {
        surface: Surface::BlP114,
        p: 36,
        q: 52,
        listed: &[1, 3, 4, 7],
    },
];

impl ConeFamily {
    /// The index `n` with `(p + n)/(q + n) = r`, if it is a positive integer.
    pub fn index_of(&self, r: &Rational) -> Option<i64> {
        if r.is_one() {
            return None;
        }
        let n = (q(self.p, 1) - r * q(self.q, 1)) / (r - Rational::one());
        (n.is_integer() && n.is_positive()).then(|| n.to_integer().to_i64())?
    }

    pub fn describe(&self, n: i64) -> String {
        format!("({}+n)/({}+n), n={n}", self.p, self.q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeRow {
    pub wall: String,
    pub surface: Surface,
    pub image: String,
    /// The printed family containing the image, if any.
    pub family: Option<String>,
    pub listed: bool,
    /// Set when the image is missing from the printed lists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Cone thresholds of every atlas wall, matched against the printed families.
pub fn cone_report(atlas: &WallAtlas) -> Result<Vec<ConeRow>, HklError> {
    let mut out = Vec::new();
    for s in Surface::ALL {
        for w in atlas.wall_values(s)? {
            let img = cone_threshold(&w);
            let fams: Vec<(ConeFamily, i64)> = CONE_FAMILIES
                .iter()
                .filter(|f| f.surface == s)
                .filter_map(|f| f.index_of(&img).map(|n| (*f, n)))
                .collect();
            let hit = fams.iter().find(|(f, n)| f.listed.contains(n));
            let (family, listed, note) = match (hit, fams.last()) {
                (Some((f, n)), _) => (Some(f.describe(*n)), true, None),
                (None, Some((f, n))) => (
                    Some(f.describe(*n)),
                    false,
                    Some(format!(
                        "{img} is not among the printed values of this family"
                    )),
                ),
                (None, None) => (
                    None,
                    false,
                    Some("no printed family contains this value".into()),
                ),
            };
            out.push(ConeRow {
                wall: w.to_string(),
                surface: s,
                image: img.to_string(),
                family,
                listed,
                note,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AdeKind {
    A,
    D,
    E,
}

/// Singularities admitting a Q-Gorenstein smoothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TSingularity {
    Ade {
        kind: AdeKind,
        n: u32,
    },
    /// `1/(l n^2)(1, l n a - 1)` with `gcd(a, n) = 1`.
    Cyclic {
        l: u32,
        n: u32,
        a: u32,
    },
}

impl TSingularity {
    pub fn ade(kind: AdeKind, n: u32) -> Result<Self, HklError> {
        let ok = match kind {
            AdeKind::A => n >= 1,
            AdeKind::D => n >= 4,
            AdeKind::E => (6..=8).contains(&n),
        };
        if !ok {
            return Err(HklError::Invalid(format!("no singularity {kind:?}{n}")));
        }
        Ok(TSingularity::Ade { kind, n })
    }

    pub fn cyclic(l: u32, n: u32, a: u32) -> Result<Self, HklError> {
        if l == 0 || n < 2 || a == 0 || a.gcd(&n) != 1 {
            return Err(HklError::Invalid(format!(
                "1/(l n^2) data l={l} n={n} a={a}"
            )));
        }
        Ok(TSingularity::Cyclic { l, n, a })
    }

    /// Milnor number of a smoothing fiber.
    pub fn milnor(&self) -> u32 {
        match *self {
            TSingularity::Ade { n, .. } => n,
            TSingularity::Cyclic { l, .. } => l - 1,
        }
    }
}

impl fmt::Display for TSingularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TSingularity::Ade { kind, n } => write!(f, "{kind:?}{n}"),
            TSingularity::Cyclic { l, n, a } => write!(f, "1/{}(1,{})", l * n * n, l * n * a - 1),
        }
    }
}

/// `10 - (K^2 + rho + sum of Milnor numbers)`; zero for a smoothable rational surface.
pub fn noether_budget(k2: &Rational, rho: i64, sings: &[TSingularity]) -> Rational {
    let mu: i64 = sings.iter().map(|s| i64::from(s.milnor())).sum();
    q(10, 1) - k2 - q(rho + mu, 1)
}

/// Largest `n` with `(4d/9)(1 - 2c)^2 <= (2 - c ord)^2 / n^2`.
pub fn cartier_index_max(d: &Rational, c: &Rational, ord: u32) -> Result<u64, HklError> {
    if !d.is_positive() {
        return Err(HklError::Invalid(format!("degree {d} is not positive")));
    }
    if !c.is_positive() && !c.is_zero() || *c >= q(1, 2) {
        return Err(HklError::Invalid(format!("c = {c} is outside [0, 1/2)")));
    }
    let top = q(2, 1) - c * q(i64::from(ord), 1);
    if !top.is_positive() {
        return Err(HklError::Skoda(top.to_string()));
    }
    let one_m = Rational::one() - q(2, 1) * c;
    // n^2 <= 9 top^2 / (4 d (1-2c)^2) =: r, so n = isqrt(floor(r))
    let r = q(9, 1) * &top * &top / (q(4, 1) * d * &one_m * &one_m);
    let fl: BigInt = r.floor().to_integer();
    Ok(fl.sqrt().to_u64().expect("bounded"))
}

/// Rows whose residual is expected to vanish.
pub const VERIFIED_AUDIT: [(&str, &str); 13] = [
    ("1/10", "A3"),
    ("7/62", "A4"),
    ("1/8", "A5"),
    ("1/8", "D4"),
    ("5/34", "A7"),
    ("5/34", "D5"),
    ("1/6", "A9"),
    ("1/6", "D6"),
    ("7/38", "D7"),
    ("7/38", "E6"),
    ("1/5", "D8"),
    ("2/7", "E8"),
    ("5/22", "E7"),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditRow {
    pub wall: String,
    pub surface: Surface,
    pub branch: String,
    pub e_minus: u32,
    pub e_plus: u32,
    pub center_dim: u32,
    /// `dim E^- + dim E^+ - 17 - dim Z`.
    pub residual: i64,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub rows: Vec<AuditRow>,
}

impl AuditReport {
    pub fn verified_ok(&self) -> bool {
        self.rows
            .iter()
            .filter(|r| r.verified)
            .all(|r| r.residual == 0)
    }

    pub fn anomalies(&self) -> impl Iterator<Item = &AuditRow> {
        self.rows.iter().filter(|r| r.residual != 0)
    }
}

/// Checks `dim E^- + dim E^+ = 17 + dim Z` for every row carrying both dimensions.
pub fn audit_dim_formula(atlas: &WallAtlas) -> AuditReport {
    let rows = atlas
        .walls
        .iter()
        .filter_map(|r| {
            let em = r.e_minus?;
            let ep = r.e_plus.as_ref()?.dim;
            let z = r.center_dim();
            let branch = r.branch().to_string();
            Some(AuditRow {
                verified: r.surface == Surface::F1
                    && VERIFIED_AUDIT
                        .iter()
                        .any(|(w, b)| *w == r.wall && *b == branch),
                residual: i64::from(em) + i64::from(ep) - 17 - i64::from(z),
                wall: r.wall.clone(),
                surface: r.surface,
                branch,
                e_minus: em,
                e_plus: ep,
                center_dim: z,
            })
        })
        .collect();
    AuditReport { rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_examples() {
        assert_eq!(hkl_param(&q(5, 58)), HklValue::Finite(q(1, 1)));
        assert_eq!(hkl_param(&q(2, 7)), HklValue::Finite(q(1, 28)));
        assert_eq!(hkl_param(&q(1, 14)), HklValue::Pole);
        assert_eq!(hkl_inverse(&q(1, 28)), q(2, 7));
        assert_eq!(cone_threshold(&q(1, 14)), q(3, 7));
        assert_eq!(cone_threshold(&q(29, 106)), q(37, 53));
        assert_eq!(cone_threshold(&q(2, 7)), q(5, 7));
    }

    #[test]
    fn wall_images() {
        let r = map_walls(&WallAtlas::bundled()).unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.poles, vec![q(1, 14)]);
        assert_eq!(r.hyperelliptic.len(), 10);
        assert!(r.hyperelliptic.contains(&q(1, 28)) && r.unigonal.contains(&q(1, 28)));
    }

    #[test]
    fn cone_families() {
        let rows = cone_report(&WallAtlas::bundled()).unwrap();
        assert_eq!(rows.len(), 15);
        let unlisted: Vec<&ConeRow> = rows.iter().filter(|r| !r.listed).collect();
        assert_eq!(unlisted.len(), 1);
        assert_eq!(
            (unlisted[0].wall.as_str(), unlisted[0].image.as_str()),
            ("2/7", "5/7")
        );
        assert_eq!(unlisted[0].family.as_deref(), Some("(3+n)/(11+n), n=17"));
    }

    #[test]
    fn noether() {
        let p114 = TSingularity::cyclic(1, 2, 1).unwrap();
        assert_eq!(p114.to_string(), "1/4(1,1)");
        assert!(noether_budget(&q(8, 1), 2, &[]).is_zero());
        assert!(noether_budget(&q(8, 1), 2, &[p114]).is_zero());
        let i3 = TSingularity::cyclic(1, 3, 1).unwrap();
        assert_eq!(i3.to_string(), "1/9(1,2)");
        assert!(noether_budget(&q(8, 1), 2, &[i3]).is_zero());
        assert_eq!(TSingularity::ade(AdeKind::E, 8).unwrap().milnor(), 8);
        assert!(TSingularity::ade(AdeKind::D, 3).is_err());
        assert!(TSingularity::cyclic(1, 4, 2).is_err());
    }

    #[test]
    fn cartier() {
        for c in [q(0, 1), q(1, 7), q(2, 5)] {
            assert_eq!(cartier_index_max(&q(8, 1), &c, 4).unwrap(), 1);
        }
        assert_eq!(cartier_index_max(&q(8, 1), &q(0, 1), 0).unwrap(), 1);
        assert_eq!(cartier_index_max(&q(1, 1), &q(0, 1), 0).unwrap(), 3);
        assert!(matches!(
            cartier_index_max(&q(8, 1), &q(2, 5), 5),
            Err(HklError::Skoda(_))
        ));
    }

    #[test]
    fn audit() {
        let r = audit_dim_formula(&WallAtlas::bundled());
        assert!(r.verified_ok());
        assert_eq!(r.rows.iter().filter(|x| x.verified).count(), 13);
        let odd: Vec<(&str, &str, i64)> = r
            .anomalies()
            .map(|x| (x.wall.as_str(), x.branch.as_str(), x.residual))
            .collect();
        assert_eq!(odd, [("5/22", "D9", 1), ("35/118", "D4", -1)]);
    }
}
