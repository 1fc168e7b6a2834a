//! The surfaces of the degree-8 problem and their toric weighted blowups.
//!
//! Convention: the blown-up point of the plane (or of P(1,1,4)) is `[1,0,0]`.
//! In the lattice of the one-parameter subgroups the invariant divisors
//! `{y=0}`, `{z=0}`, `{x=0}` sit at `(1,0)`, `(0,1)` and `(-1,-1)` (plane) or
//! `(-1,-4)` (P(1,1,4)); the exceptional curve `E` is the ray `(1,1)`.

use super::linalg::Mat;
use super::{DivisorClass, Fan, SurfaceError, SurfaceModel};
use crate::exactnum::{q, Rational};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// The two degree-8 del Pezzo surfaces carrying the boundary curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Surface {
    F1,
    BlP114,
}

impl Surface {
    pub const ALL: [Surface; 2] = [Surface::F1, Surface::BlP114];

    pub fn name(self) -> &'static str {
        match self {
            Surface::F1 => "F1",
            Surface::BlP114 => "BlP114",
        }
    }

    /// Weight of `z` in the ambient weighted projective plane.
    pub fn z_weight(self) -> i64 {
        match self {
            Surface::F1 => 1,
            Surface::BlP114 => 4,
        }
    }

    /// Weighted degree of a boundary curve in `|-2K|` before blowing up.
    pub fn curve_degree(self) -> i64 {
        match self {
            Surface::F1 => 6,
            Surface::BlP114 => 12,
        }
    }

    pub fn fan(self) -> Fan {
        base_fan(self)
            .insert("E", [1, 1])
            .expect("E is a new primitive ray")
    }

    pub fn model(self) -> SurfaceModel {
        match self {
            Surface::F1 => f1(),
            Surface::BlP114 => blp114(),
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Surface {
    type Err = SurfaceError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "f1" => Ok(Surface::F1),
            "blp114" => Ok(Surface::BlP114),
            _ => Err(SurfaceError::UnknownSurface(s.to_string())),
        }
    }
}

/// Fan of the ambient surface before the blowup: the plane or P(1,1,4).
pub fn base_fan(s: Surface) -> Fan {
    let x = match s {
        Surface::F1 => [-1, -1],
        Surface::BlP114 => [-1, -4],
    };
    Fan::new(vec![
        ("H_y".into(), [1, 0]),
        ("H_z".into(), [0, 1]),
        ("H_x".into(), x),
    ])
    .expect("valid fan")
}

fn ones(n: usize) -> Vec<Rational> {
    vec![Rational::one(); n]
}

/// The first Hirzebruch surface, basis `(H_z, E)`, `-K = 3H_z + 2E`.
pub fn f1() -> SurfaceModel {
    Surface::F1
        .fan()
        .model("F1", &["H_z", "E"], &ones(4))
        .expect("F1 is a valid model")
}

/// P(1,1,4) blown up at a smooth point, basis `(H_y, E)`, `-K = 6H_y + 5E`.
pub fn blp114() -> SurfaceModel {
    Surface::BlP114
        .fan()
        .model("BlP114", &["H_y", "E"], &ones(4))
        .expect("BlP114 is a valid model")
}

/// Minimal resolution of the 1/4(1,1) point of `BlP114`; the (-4)-curve is `F`
/// and the anticanonical class is pulled back from `BlP114`.
pub fn quotient_resolution() -> SurfaceModel {
    toric_blowup(Surface::BlP114, [0, -1])
        .expect("(0,-1) subdivides the singular cone")
        .model
}

/// Rank-4 lattice of the index-3 surface: basis `(F1, F2, E1, E2)` with the
/// basis curves spanning the Mori cone; the anticanonical class is the pullback
/// `L0` with `L0^2 = 8`.
pub fn index3m() -> SurfaceModel {
    let m: Mat = [[-5, 1, 0, 0], [1, -2, 1, 1], [0, 1, -1, 0], [0, 1, 0, -1]]
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let labels = ["F1", "F2", "E1", "E2"];
    let curves = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.to_string(), DivisorClass::unit(4, i)))
        .collect();
    let l0 = DivisorClass(vec![q(4, 3), q(20, 3), q(6, 1), q(6, 1)]);
    SurfaceModel::new(
        "Index3M",
        labels.iter().map(|s| s.to_string()).collect(),
        m,
        curves,
        l0,
    )
    .expect("valid matrix")
}

/// A toric valuation of one of the two surfaces realized as a divisor on a
/// model: either an existing invariant curve or the exceptional curve `F` of
/// the weighted blowup at the primitive vector `w`.
#[derive(Clone, Debug)]
pub struct BlowupModel {
    pub surface: Surface,
    pub w: [i64; 2],
    pub fan: Fan,
    pub model: SurfaceModel,
    /// Label of the divisor realizing `w` (`F` for a new ray).
    pub divisor: String,
    pub exceptional: DivisorClass,
    /// Pullback of `-K` of the surface; equals `model.anticanonical`.
    pub l0: DivisorClass,
    /// Log discrepancy of the valuation with respect to the surface, `A_X(w)`.
    pub log_discrepancy: Rational,
}

/// Realizes the toric valuation `w` (primitive, nonzero) on `s`.
pub fn toric_blowup(s: Surface, w: [i64; 2]) -> Result<BlowupModel, SurfaceError> {
    if w == [0, 0] || w[0].gcd(&w[1]) != 1 {
        return Err(SurfaceError::InvalidWeights(format!(
            "({}, {}) is not a primitive lattice vector",
            w[0], w[1]
        )));
    }
    let base = s.fan();
    let h: Rational = base.pl_coords(w).into_iter().sum();
    if let Some(i) = base.ray_at(w) {
        let model = s.model();
        let label = base.label(i).to_string();
        let exceptional = model.class_of(&label).expect("ray is named").clone();
        return Ok(BlowupModel {
            surface: s,
            w,
            l0: model.anticanonical.clone(),
            fan: base,
            model,
            divisor: label,
            exceptional,
            log_discrepancy: h,
        });
    }
    let fan = base.insert("F", w)?;
    let coeffs: Vec<Rational> = fan
        .rays()
        .iter()
        .map(|r| {
            if r.label == "F" {
                h.clone()
            } else {
                Rational::one()
            }
        })
        .collect();
    let basis: &[&str] = match s {
        Surface::F1 => &["F", "H_z", "E"],
        Surface::BlP114 => &["F", "H_y", "E"],
    };
    let name = format!("{}[w=({},{})]", s.name(), w[0], w[1]);
    let model = fan.model(&name, basis, &coeffs)?;
    let exceptional = model.class_of("F").expect("F is a ray").clone();
    debug_assert!(!model.degree.is_zero());
    Ok(BlowupModel {
        surface: s,
        w,
        l0: model.anticanonical.clone(),
        fan,
        model,
        divisor: "F".into(),
        exceptional,
        log_discrepancy: h,
    })
}

/// Model by identifier: `f1`, `blp114`, `index3m`, `quotient-resolution`, or a
/// toric blowup written `f1:w=p,q` / `blp114:w=p,q`.
pub fn builtin_surface(id: &str) -> Result<SurfaceModel, SurfaceError> {
    let lower = id.trim().to_ascii_lowercase();
    match lower.as_str() {
        "f1" => return Ok(f1()),
        "blp114" => return Ok(blp114()),
        "index3m" => return Ok(index3m()),
        "quotient-resolution" => return Ok(quotient_resolution()),
        _ => {}
    }
    let unknown = || SurfaceError::UnknownSurface(id.to_string());
    let (surf, rest) = lower.split_once(':').ok_or_else(unknown)?;
    let surface: Surface = surf.parse()?;
    let coords = rest.strip_prefix("w=").ok_or_else(unknown)?;
    let (p, r) = coords.split_once(',').ok_or_else(unknown)?;
    let p: i64 = p.trim().parse().map_err(|_| unknown())?;
    let r: i64 = r.trim().parse().map_err(|_| unknown())?;
    Ok(toric_blowup(surface, [p, r])?.model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    #[test]
    fn f1_numbers() {
        let m = f1();
        let hz = m.class_of("H_z").unwrap().clone();
        let e = m.class_of("E").unwrap().clone();
        assert_eq!(m.dot(&hz, &hz), int(0));
        assert_eq!(m.dot(&hz, &e), int(1));
        assert_eq!(m.dot(&e, &e), int(-1));
        assert_eq!(
            m.anticanonical,
            m.combination(&[("H_z", int(3)), ("E", int(2))]).unwrap()
        );
        assert_eq!(m.degree, int(8));
        assert_eq!(m.class_of("H_y"), Some(&hz));
        assert_eq!(m.cone_generators.len(), 3);
        let d = m.combination(&[("H_z", int(1)), ("E", int(1))]).unwrap();
        assert!(m.is_nef(&d));
        assert!(!m.is_nef(&e));
        assert!(m.is_pseudoeffective(&e));
        assert!(!m.is_pseudoeffective(&hz.scale(&int(-1))));
    }

    #[test]
    fn blp114_numbers() {
        let m = blp114();
        let hy = m.class_of("H_y").unwrap().clone();
        let e = m.class_of("E").unwrap().clone();
        assert_eq!(m.dot(&hy, &hy), q(-3, 4));
        assert_eq!(m.dot(&hy, &e), int(1));
        assert_eq!(m.dot(&e, &e), int(-1));
        assert_eq!(
            m.anticanonical,
            m.combination(&[("H_y", int(6)), ("E", int(5))]).unwrap()
        );
        assert_eq!(m.degree, int(8));
        assert_eq!(
            m.class_of("H_z").unwrap(),
            &m.combination(&[("H_y", int(4)), ("E", int(3))]).unwrap()
        );
    }

    #[test]
    fn index3_numbers() {
        let m = index3m();
        assert_eq!(m.degree, int(8));
        let u = |i| DivisorClass::unit(4, i);
        assert_eq!(m.dot(&u(0), &u(0)), int(-5));
        assert_eq!(m.dot(&u(0), &u(1)), int(1));
        assert_eq!(m.dot(&u(1), &u(1)), int(-2));
        assert_eq!(m.dot(&u(2), &u(2)), int(-1));
        assert_eq!(m.dot(&u(3), &u(3)), int(-1));
    }

    #[test]
    fn case2_gram() {
        // w = 2E + H_z, i.e. a = 2, b = 1 in the cone (E, H_z)
        let b = toric_blowup(Surface::F1, [2, 3]).unwrap();
        let m = &b.model;
        assert_eq!(m.basis, ["F", "H_z", "E"]);
        assert_eq!(m.gram[0], vec![q(-1, 2), q(1, 2), int(1)]);
        assert_eq!(m.gram[2][2], int(-3));
        assert_eq!(m.gram[1][1], q(-1, 2));
        assert_eq!(b.log_discrepancy, int(3));
        assert_eq!(m.degree, int(8));
    }

    #[test]
    fn quotient_resolution_numbers() {
        let m = quotient_resolution();
        let f = m.class_of("F").unwrap();
        assert_eq!(m.dot(f, f), int(-4));
        assert_eq!(m.degree, int(8));
        let b = toric_blowup(Surface::BlP114, [0, -1]).unwrap();
        assert_eq!(b.log_discrepancy, q(1, 2));
    }

    #[test]
    fn descriptors_roundtrip() {
        for id in ["f1", "blp114", "index3m", "quotient-resolution", "f1:w=2,3"] {
            let m = builtin_surface(id).unwrap();
            let d = m.descriptor();
            let json = serde_json::to_string(&d).unwrap();
            let back: crate::surface::SurfaceDescriptor = serde_json::from_str(&json).unwrap();
            assert_eq!(SurfaceModel::from_descriptor(&back).unwrap(), m);
        }
        assert!(builtin_surface("p2").is_err());
        assert!(builtin_surface("f1:w=2,4").is_err());
    }
}
