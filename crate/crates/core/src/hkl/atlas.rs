use super::HklError;
use crate::exactnum::{parse_rational, Rational};
use crate::pairs::{chart_expand, multiplicity, one_ps_to_chart, parse_curve, PairsError};
use crate::stability::{engine_wall, threshold, wall_formula};
use crate::surface::Surface;
use serde::{Deserialize, Serialize};
use std::path::Path;

const BUNDLED: &str = include_str!("../../data/atlas.json");

/// Name and dimension of the Noether-Lefschetz locus met by `E^+`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NlLocus {
    pub label: String,
    pub dim: u32,
}

/// One center curve of one wall.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasRow {
    pub wall: String,
    pub surface: Surface,
    /// Machine-readable equation; a free `a*` coefficient marks a one-parameter center.
    pub curve: String,
    /// The equation as usually written.
    pub label: String,
    pub weight: [i64; 3],
    /// The BlP114 table's `(a, b, m)` column, kept verbatim.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abm: Option<String>,
    pub singularity: String,
    pub e_minus: Option<u32>,
    pub e_plus: Option<NlLocus>,
}

impl AtlasRow {
    pub fn wall_value(&self) -> Result<Rational, HklError> {
        parse_rational(&self.wall).map_err(|e| HklError::Atlas(format!("wall {}: {e}", self.wall)))
    }

    /// Dimension of the wall center: 1 when the equation has a free parameter.
    pub fn center_dim(&self) -> u32 {
        let free = self.curve.split('+').any(|m| {
            let m = m.trim();
            m.split_once('*').is_some_and(|(h, _)| {
                h.starts_with('a') && h[1..].chars().all(|c| c.is_ascii_digit())
            })
        });
        u32::from(free)
    }

    /// Singularity type without the qualifying text, e.g. `D8` for `D8 with L_z`.
    pub fn branch(&self) -> &str {
        self.singularity.split_whitespace().next().unwrap_or("")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallAtlas {
    pub version: u32,
    pub walls: Vec<AtlasRow>,
}

impl WallAtlas {
    pub fn bundled() -> Self {
        Self::from_json(BUNDLED).expect("bundled atlas is valid")
    }

    pub fn from_json(text: &str) -> Result<Self, HklError> {
        let a: WallAtlas =
            serde_json::from_str(text).map_err(|e| HklError::Atlas(e.to_string()))?;
        for r in &a.walls {
            r.wall_value()?;
        }
        Ok(a)
    }

    pub fn from_path(path: &Path) -> Result<Self, HklError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HklError::Atlas(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("atlas serializes")
    }

    pub fn rows(&self, s: Surface) -> impl Iterator<Item = &AtlasRow> {
        self.walls.iter().filter(move |r| r.surface == s)
    }

    /// Distinct wall values of one surface, ascending.
    pub fn wall_values(&self, s: Surface) -> Result<Vec<Rational>, HklError> {
        let mut v = self
            .rows(s)
            .map(|r| r.wall_value())
            .collect::<Result<Vec<_>, _>>()?;
        v.sort();
        v.dedup();
        Ok(v)
    }
}

/// How an atlas row's wall was recomputed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowMethod {
    /// Chart weights, local multiplicity and the closed-form wall.
    Formula,
    /// Chart weights, local multiplicity and the exact S of the valuation.
    Engine,
    /// The weight lies on an invariant curve; the full threshold decides.
    Threshold,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowCheck {
    pub expected: Rational,
    pub method: RowMethod,
    pub chart: Option<String>,
    pub m: Option<i64>,
    pub formula: Option<Rational>,
    pub engine: Option<Rational>,
    pub threshold: Option<Rational>,
}

impl RowCheck {
    /// The value produced by the row's method.
    pub fn computed(&self) -> Option<&Rational> {
        match self.method {
            RowMethod::Formula => self.formula.as_ref(),
            RowMethod::Engine => self.engine.as_ref(),
            RowMethod::Threshold => self.threshold.as_ref(),
        }
    }

    pub fn ok(&self) -> bool {
        self.computed() == Some(&self.expected)
    }
}

/// Recomputes the wall of a row from its curve and weight alone.
pub fn reproduce_row(row: &AtlasRow) -> Result<RowCheck, HklError> {
    let expected = row.wall_value()?;
    let curve = parse_curve(&row.curve, row.surface)?;
    match one_ps_to_chart(row.weight, row.surface) {
        Ok(ch) => {
            let sup = chart_expand(&curve, &ch)?;
            let m = multiplicity(&sup, ch.a, ch.b)?;
            let formula = wall_formula(&ch, m).map(|(_, v)| v);
            let engine = engine_wall(
                row.surface,
                ch.lattice_vector(),
                &Rational::from_integer(m.into()),
            )?;
            Ok(RowCheck {
                expected,
                method: if formula.is_some() {
                    RowMethod::Formula
                } else {
                    RowMethod::Engine
                },
                chart: Some(ch.to_string()),
                m: Some(m),
                formula,
                engine,
                threshold: None,
            })
        }
        Err(PairsError::Degenerate(..)) => {
            let t = threshold(&curve, None)?;
            Ok(RowCheck {
                expected,
                method: RowMethod::Threshold,
                chart: None,
                m: None,
                formula: None,
                engine: None,
                threshold: t.point().cloned(),
            })
        }
        Err(e) => Err(e.into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_shape() {
        let a = WallAtlas::bundled();
        assert_eq!(a.rows(Surface::F1).count(), 16);
        assert_eq!(a.rows(Surface::BlP114).count(), 4);
        assert_eq!(a.wall_values(Surface::F1).unwrap().len(), 11);
        let dims: Vec<u32> = a.walls.iter().map(|r| r.center_dim()).collect();
        assert_eq!(dims.iter().sum::<u32>(), 3);
        assert_eq!(WallAtlas::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn every_row_reproduces() {
        for row in &WallAtlas::bundled().walls {
            let r = reproduce_row(row).unwrap();
            assert!(r.ok(), "{} {}: {:?}", row.wall, row.label, r);
            if r.method == RowMethod::Formula {
                assert_eq!(r.engine, r.formula, "{}", row.label);
            }
        }
    }
}
