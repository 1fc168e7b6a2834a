use super::linalg::{self, combinations, Mat};
use super::SurfaceError;
use crate::exactnum::{parse_rational, Rational};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Coordinates of a divisor class in a model's Néron–Severi basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorClass(pub Vec<Rational>);

impl DivisorClass {
    pub fn zero(n: usize) -> Self {
        Self(vec![Rational::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = Rational::from_integer(1.into());
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self(self.0.iter().map(|a| a * r).collect())
    }

    /// `self + r * o`
    pub fn add_scaled(&self, r: &Rational, o: &Self) -> Self {
        Self(self.0.iter().zip(&o.0).map(|(a, b)| a + r * b).collect())
    }

    /// Scales so that the first nonzero coordinate is +-1; used to compare rays.
    pub fn ray_normalized(&self) -> Self {
        match self.0.iter().find(|x| !x.is_zero()) {
            Some(f) => self.scale(&(Rational::from_integer(1.into()) / f.abs())),
            None => self.clone(),
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(", "))
    }
}

/// A surface as a rational lattice: intersection form, the curves spanning
/// its Mori cone, and the class playing the role of `-K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceModel {
    pub name: String,
    pub basis: Vec<String>,
    pub gram: Mat,
    pub cone_generators: Vec<DivisorClass>,
    pub generator_labels: Vec<String>,
    pub anticanonical: DivisorClass,
    pub degree: Rational,
    /// Every named curve, including ones whose class repeats a generator.
    pub named: Vec<(String, DivisorClass)>,
}

/// JSON form of a model; every rational is a string in `p/q` form.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SurfaceDescriptor {
    pub name: String,
    pub basis: Vec<String>,
    pub gram: Vec<Vec<String>>,
    pub cone_generators: Vec<NamedClass>,
    pub anticanonical: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct NamedClass {
    pub label: String,
    pub class: Vec<String>,
}

impl SurfaceModel {
    /// Builds a model; generators with identical classes are merged (the first
    /// label wins) but every label stays addressable through [`Self::class_of`].
    pub fn new(
        name: impl Into<String>,
        basis: Vec<String>,
        gram: Mat,
        curves: Vec<(String, DivisorClass)>,
        anticanonical: DivisorClass,
    ) -> Result<Self, SurfaceError> {
        let n = basis.len();
        if gram.len() != n || gram.iter().any(|r| r.len() != n) {
            return Err(SurfaceError::DimensionMismatch(format!(
                "gram must be {n}x{n}"
            )));
        }
        if (0..n).any(|i| (0..i).any(|j| gram[i][j] != gram[j][i])) {
            return Err(SurfaceError::Invalid("gram matrix is not symmetric".into()));
        }
        if anticanonical.dim() != n || curves.iter().any(|(_, c)| c.dim() != n) {
            return Err(SurfaceError::DimensionMismatch(
                "class dimension differs from the basis".into(),
            ));
        }
        let mut gens: Vec<DivisorClass> = Vec::new();
        let mut labels = Vec::new();
        for (l, c) in &curves {
            if c.is_zero() {
                return Err(SurfaceError::Invalid(format!("curve {l} has zero class")));
            }
            if !gens.contains(c) {
                gens.push(c.clone());
                labels.push(l.clone());
            }
        }
        let mut m = Self {
            name: name.into(),
            basis,
            gram,
            cone_generators: gens,
            generator_labels: labels,
            anticanonical: anticanonical.clone(),
            degree: Rational::zero(),
            named: curves,
        };
        m.degree = m.dot(&anticanonical, &anticanonical);
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Intersection number; unchecked dimensions.
    pub fn dot(&self, a: &DivisorClass, b: &DivisorClass) -> Rational {
        let mut s = Rational::zero();
        for (i, ai) in a.0.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.0.iter().enumerate() {
                if !bj.is_zero() && !self.gram[i][j].is_zero() {
                    s += ai * &self.gram[i][j] * bj;
                }
            }
        }
        s
    }

    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> Result<Rational, SurfaceError> {
        if a.dim() != self.rank() || b.dim() != self.rank() {
            return Err(SurfaceError::DimensionMismatch(format!(
                "expected {} coordinates, got {} and {}",
                self.rank(),
                a.dim(),
                b.dim()
            )));
        }
        Ok(self.dot(a, b))
    }

    /// Class of a named curve (generator or alias).
    pub fn class_of(&self, label: &str) -> Option<&DivisorClass> {
        self.named.iter().find(|(l, _)| l == label).map(|(_, c)| c)
    }

    pub fn generator_index(&self, c: &DivisorClass) -> Option<usize> {
        self.cone_generators.iter().position(|g| g == c)
    }

    /// Class from coordinates given as a label->coefficient list.
    pub fn combination(&self, terms: &[(&str, Rational)]) -> Result<DivisorClass, SurfaceError> {
        let mut d = DivisorClass::zero(self.rank());
        for (l, r) in terms {
            let c = self
                .class_of(l)
                .ok_or_else(|| SurfaceError::UnknownCurve(l.to_string()))?;
            d = d.add_scaled(r, c);
        }
        Ok(d)
    }

    pub fn is_nef(&self, d: &DivisorClass) -> bool {
        self.cone_generators
            .iter()
            .all(|g| !self.dot(d, g).is_negative())
    }

    /// Membership in the closed cone spanned by the generators, decided by
    /// Carathéodory: some linearly independent subset writes `d` with
    /// nonnegative coefficients.
    pub fn is_pseudoeffective(&self, d: &DivisorClass) -> bool {
        self.cone_coefficients(d).is_some()
    }

    /// Nonnegative coefficients on generators expressing `d`, if any.
    pub fn cone_coefficients(&self, d: &DivisorClass) -> Option<Vec<Rational>> {
        let n = self.rank();
        let g = self.cone_generators.len();
        if d.is_zero() {
            return Some(vec![Rational::zero(); g]);
        }
        for k in 1..=n.min(g) {
            for subset in combinations(g, k) {
                let a: Mat = (0..n)
                    .map(|row| {
                        subset
                            .iter()
                            .map(|&j| self.cone_generators[j].0[row].clone())
                            .collect()
                    })
                    .collect();
                if let Some(x) = linalg::solve(&a, &d.0) {
                    if x.iter().all(|v| !v.is_negative()) {
                        let mut out = vec![Rational::zero(); g];
                        for (v, &j) in x.into_iter().zip(&subset) {
                            out[j] = v;
                        }
                        return Some(out);
                    }
                }
            }
        }
        None
    }

    /// Extremal rays of the nef cone (dual of the generator cone).
    pub fn nef_rays(&self) -> Vec<DivisorClass> {
        let n = self.rank();
        let g = self.cone_generators.len();
        let dual_rows: Vec<Vec<Rational>> = self
            .cone_generators
            .iter()
            .map(|c| {
                (0..n)
                    .map(|j| self.dot(c, &DivisorClass::unit(n, j)))
                    .collect()
            })
            .collect();
        let mut out: Vec<DivisorClass> = Vec::new();
        for subset in combinations(g, n.saturating_sub(1)) {
            let a: Mat = subset.iter().map(|&i| dual_rows[i].clone()).collect();
            let ker = linalg::nullspace(&a, n);
            if ker.len() != 1 {
                continue;
            }
            let v = DivisorClass(ker[0].clone());
            for cand in [v.clone(), v.scale(&Rational::from_integer((-1).into()))] {
                if self.is_nef(&cand) {
                    let r = cand.ray_normalized();
                    if !out.contains(&r) {
                        out.push(r);
                    }
                }
            }
        }
        out
    }

    /// A nef class with negative intersection against `d`, if one exists.
    pub fn separating_nef_class(&self, d: &DivisorClass) -> Option<DivisorClass> {
        self.nef_rays()
            .into_iter()
            .find(|n| self.dot(d, n).is_negative())
    }

    pub fn descriptor(&self) -> SurfaceDescriptor {
        let strs = |c: &DivisorClass| c.0.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        SurfaceDescriptor {
            name: self.name.clone(),
            basis: self.basis.clone(),
            gram: self
                .gram
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect(),
            cone_generators: self
                .named
                .iter()
                .map(|(l, c)| NamedClass {
                    label: l.clone(),
                    class: strs(c),
                })
                .collect(),
            anticanonical: strs(&self.anticanonical),
        }
    }

    /// Builds a model from a JSON descriptor. The listed curves are taken to
    /// span the effective cone; that is the caller's responsibility.
    pub fn from_descriptor(d: &SurfaceDescriptor) -> Result<Self, SurfaceError> {
        let parse = |v: &[String]| -> Result<Vec<Rational>, SurfaceError> {
            v.iter()
                .map(|s| parse_rational(s).map_err(|e| SurfaceError::Invalid(e.to_string())))
                .collect()
        };
        let gram = d
            .gram
            .iter()
            .map(|r| parse(r))
            .collect::<Result<Mat, _>>()?;
        let curves = d
            .cone_generators
            .iter()
            .map(|n| Ok((n.label.clone(), DivisorClass(parse(&n.class)?))))
            .collect::<Result<Vec<_>, SurfaceError>>()?;
        let k = DivisorClass(parse(&d.anticanonical)?);
        Self::new(d.name.clone(), d.basis.clone(), gram, curves, k)
    }
}
