use super::VolumeError;
use crate::surface::{toric_blowup, BlowupModel, Surface, SurfaceError};
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Charts of the weighted blowups at torus-fixed points. `(u1, u2)` are the
/// invariant curves through the center; the valuation has weight `a` along
/// `u1` and `b` along `u2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ChartTag {
    /// F1, center `H_x ∩ H_z` (the point `[0,1,0]` of the plane).
    Case1At010,
    /// F1, center `H_x ∩ H_y` (`[0,0,1]`).
    Case1At001,
    /// F1, center `E ∩ H_y`.
    Case2Zu,
    /// F1, center `E ∩ H_z`.
    Case2Yv,
    /// BlP114, center `E ∩ H_y`.
    Case1p,
    /// BlP114, center `E ∩ H_z`.
    Case2p,
    /// BlP114, center `H_x ∩ H_z`.
    Case3p,
}

impl ChartTag {
    pub const ALL: [ChartTag; 7] = [
        ChartTag::Case1At010,
        ChartTag::Case1At001,
        ChartTag::Case2Zu,
        ChartTag::Case2Yv,
        ChartTag::Case1p,
        ChartTag::Case2p,
        ChartTag::Case3p,
    ];

    pub fn surface(self) -> Surface {
        match self {
            ChartTag::Case1At010 | ChartTag::Case1At001 | ChartTag::Case2Zu | ChartTag::Case2Yv => {
                Surface::F1
            }
            _ => Surface::BlP114,
        }
    }

    /// The two invariant curves through the center, in `(a, b)` order.
    pub fn curves(self) -> (&'static str, &'static str) {
        match self {
            ChartTag::Case1At010 => ("H_x", "H_z"),
            ChartTag::Case1At001 => ("H_x", "H_y"),
            ChartTag::Case2Zu | ChartTag::Case1p => ("E", "H_y"),
            ChartTag::Case2Yv | ChartTag::Case2p => ("E", "H_z"),
            ChartTag::Case3p => ("H_x", "H_z"),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ChartTag::Case1At010 => "Case1-at-[0,1,0]",
            ChartTag::Case1At001 => "Case1-at-[0,0,1]",
            ChartTag::Case2Zu => "Case2-(z,u)",
            ChartTag::Case2Yv => "Case2-(y,v)",
            ChartTag::Case1p => "Case1'",
            ChartTag::Case2p => "Case2'",
            ChartTag::Case3p => "Case3'",
        }
    }

    /// Short command-line spelling.
    pub fn slug(self) -> &'static str {
        match self {
            ChartTag::Case1At010 => "case1-010",
            ChartTag::Case1At001 => "case1-001",
            ChartTag::Case2Zu => "case2-zu",
            ChartTag::Case2Yv => "case2-yv",
            ChartTag::Case1p => "case1p",
            ChartTag::Case2p => "case2p",
            ChartTag::Case3p => "case3p",
        }
    }

    fn ray(self, label: &str) -> [i64; 2] {
        let fan = self.surface().fan();
        fan.rays()[fan.index_of(label).expect("chart curve is a ray")].v
    }
}

impl fmt::Display for ChartTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChartTag {
    type Err = VolumeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase();
        ChartTag::ALL
            .into_iter()
            .find(|t| t.slug() == key || t.name().to_ascii_lowercase() == key)
            .ok_or_else(|| VolumeError::InvalidChart(format!("unknown chart {s}")))
    }
}

/// A chart together with positive integer weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChartCase {
    pub tag: ChartTag,
    pub a: i64,
    pub b: i64,
}

impl ChartCase {
    pub fn new(tag: ChartTag, a: i64, b: i64) -> Result<Self, VolumeError> {
        if a <= 0 || b <= 0 {
            return Err(VolumeError::InvalidChart(format!(
                "weights must be positive, got a = {a}, b = {b}"
            )));
        }
        Ok(Self { tag, a, b })
    }

    pub fn surface(&self) -> Surface {
        self.tag.surface()
    }

    /// `a u1 + b u2` in the lattice of one-parameter subgroups.
    pub fn lattice_vector(&self) -> [i64; 2] {
        let (c1, c2) = self.tag.curves();
        let (u, v) = (self.tag.ray(c1), self.tag.ray(c2));
        [self.a * u[0] + self.b * v[0], self.a * u[1] + self.b * v[1]]
    }

    pub fn gcd(&self) -> i64 {
        self.a.gcd(&self.b)
    }

    /// The chart whose cone contains the primitive or non-primitive vector `w`
    /// in its interior; `None` on rays and inside the singular cone of BlP114.
    pub fn from_lattice_vector(s: Surface, w: [i64; 2]) -> Option<Self> {
        let fan = s.fan();
        let (i, j, a, b) = fan.cone_containing(w);
        if !a.is_integer() || !b.is_integer() || a.is_zero() || b.is_zero() {
            return None;
        }
        let pair = (fan.label(i), fan.label(j));
        let (a, b) = (
            a.to_integer().try_into().ok()?,
            b.to_integer().try_into().ok()?,
        );
        ChartTag::ALL.into_iter().find_map(|t| {
            if t.surface() != s {
                return None;
            }
            let (c1, c2) = t.curves();
            if pair == (c1, c2) {
                Some(ChartCase { tag: t, a, b })
            } else if pair == (c2, c1) {
                Some(ChartCase { tag: t, a: b, b: a })
            } else {
                None
            }
        })
    }

    /// Model realizing the primitive valuation of this chart.
    pub fn blowup(&self) -> Result<BlowupModel, SurfaceError> {
        let w = self.lattice_vector();
        let g = self.gcd();
        toric_blowup(self.surface(), [w[0] / g, w[1] / g])
    }
}

impl fmt::Display for ChartCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} a={} b={}", self.tag, self.a, self.b)
    }
}
