//! Complete toric surfaces given by a fan of rays in the plane.

use super::linalg::{self, combinations, Mat};
use super::{DivisorClass, SurfaceError, SurfaceModel};
use crate::exactnum::Rational;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    pub label: String,
    pub v: [i64; 2],
}

/// Rays sorted counterclockwise starting from the positive x-axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rays: Vec<Ray>,
}

pub fn det2(u: [i64; 2], v: [i64; 2]) -> i64 {
    u[0] * v[1] - u[1] * v[0]
}

fn half(v: [i64; 2]) -> u8 {
    if v[1] > 0 || (v[1] == 0 && v[0] > 0) {
        0
    } else {
        1
    }
}

fn angle_cmp(u: [i64; 2], v: [i64; 2]) -> Ordering {
    half(u).cmp(&half(v)).then_with(|| 0.cmp(&det2(u, v)))
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

impl Fan {
    /// Rays must be primitive, pairwise distinct, and positively span the plane
    /// with consecutive rays strictly less than a half-turn apart.
    pub fn new(rays: Vec<(String, [i64; 2])>) -> Result<Self, SurfaceError> {
        let mut rays: Vec<Ray> = rays
            .into_iter()
            .map(|(label, v)| Ray { label, v })
            .collect();
        for r in &rays {
            if r.v[0].gcd(&r.v[1]) != 1 {
                return Err(SurfaceError::InvalidWeights(format!(
                    "ray {} = ({}, {}) is not primitive",
                    r.label, r.v[0], r.v[1]
                )));
            }
        }
        rays.sort_by(|a, b| angle_cmp(a.v, b.v));
        let n = rays.len();
        if n < 3 {
            return Err(SurfaceError::Invalid(
                "a complete fan needs three rays".into(),
            ));
        }
        for i in 0..n {
            let (u, v) = (rays[i].v, rays[(i + 1) % n].v);
            if det2(u, v) <= 0 {
                return Err(SurfaceError::Invalid(format!(
                    "rays {} and {} do not bound a strictly convex cone",
                    rays[i].label,
                    rays[(i + 1) % n].label
                )));
            }
        }
        Ok(Self { rays })
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.rays.iter().position(|r| r.label == label)
    }

    pub fn ray_at(&self, v: [i64; 2]) -> Option<usize> {
        self.rays.iter().position(|r| r.v == v)
    }

    pub fn label(&self, i: usize) -> &str {
        &self.rays[i].label
    }

    /// The fan subdivided by one more primitive ray.
    pub fn insert(&self, label: impl Into<String>, v: [i64; 2]) -> Result<Self, SurfaceError> {
        let label = label.into();
        if self.ray_at(v).is_some() {
            return Err(SurfaceError::InvalidWeights(format!(
                "({}, {}) is already a ray of the fan",
                v[0], v[1]
            )));
        }
        let mut rays: Vec<(String, [i64; 2])> =
            self.rays.iter().map(|r| (r.label.clone(), r.v)).collect();
        rays.push((label, v));
        Self::new(rays)
    }

    /// The cone containing `w`: indices `(i, i+1)` and coefficients with
    /// `w = a v_i + b v_{i+1}`, `a, b >= 0`.
    pub fn cone_containing(&self, w: [i64; 2]) -> (usize, usize, Rational, Rational) {
        let n = self.rays.len();
        for i in 0..n {
            let j = (i + 1) % n;
            let (u, v) = (self.rays[i].v, self.rays[j].v);
            let d = rat(det2(u, v));
            let a = rat(det2(w, v)) / &d;
            let b = rat(det2(u, w)) / &d;
            if !a.is_negative() && !b.is_negative() {
                return (i, j, a, b);
            }
        }
        unreachable!("a complete fan covers the plane")
    }

    /// Values at `w` of the piecewise-linear functions dual to the rays; the
    /// order of vanishing of each invariant divisor along the valuation `w`.
    pub fn pl_coords(&self, w: [i64; 2]) -> Vec<Rational> {
        let (i, j, a, b) = self.cone_containing(w);
        let mut out = vec![Rational::zero(); self.rays.len()];
        out[i] = a;
        out[j] = b;
        out
    }

    /// Full intersection matrix of the invariant curves, in ray order.
    pub fn gram(&self) -> Mat {
        let n = self.rays.len();
        let mut g = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            let prev = self.rays[(i + n - 1) % n].v;
            let cur = self.rays[i].v;
            let next = self.rays[(i + 1) % n].v;
            let d_next = det2(cur, next);
            g[i][(i + 1) % n] = Rational::new(1.into(), d_next.into());
            g[(i + 1) % n][i] = Rational::new(1.into(), d_next.into());
            g[i][i] = Rational::new(
                (-det2(prev, next)).into(),
                (det2(prev, cur) * d_next).into(),
            );
        }
        g
    }

    /// Lattice model over Pic ⊗ Q with the invariant curves as Mori-cone
    /// generators. `basis` lists preferred basis curves; if they are degenerate
    /// the first nondegenerate subset of rays is used. `anticanonical` gives a
    /// coefficient per ray.
    pub fn model(
        &self,
        name: &str,
        basis: &[&str],
        anticanonical: &[Rational],
    ) -> Result<SurfaceModel, SurfaceError> {
        let n = self.rays.len();
        let rank = n - 2;
        let g = self.gram();
        let mut idx: Vec<usize> = basis.iter().filter_map(|b| self.index_of(b)).collect();
        if idx.len() != rank || linalg::det(&linalg::submatrix(&g, &idx)).is_zero() {
            idx = combinations(n, rank)
                .into_iter()
                .find(|c| !linalg::det(&linalg::submatrix(&g, c)).is_zero())
                .ok_or_else(|| SurfaceError::Invalid("degenerate intersection form".into()))?;
        }
        let gb = linalg::submatrix(&g, &idx);
        let classes: Vec<DivisorClass> = (0..n)
            .map(|i| {
                let rhs: Vec<Rational> = idx.iter().map(|&j| g[i][j].clone()).collect();
                DivisorClass(linalg::solve(&gb, &rhs).expect("basis is nondegenerate"))
            })
            .collect();
        let mut k = DivisorClass::zero(rank);
        for (c, d) in anticanonical.iter().zip(&classes) {
            k = k.add_scaled(c, d);
        }
        let curves = self
            .rays
            .iter()
            .zip(classes)
            .map(|(r, c)| (r.label.clone(), c))
            .collect();
        let labels = idx.iter().map(|&i| self.rays[i].label.clone()).collect();
        SurfaceModel::new(name, labels, gb, curves, k)
    }
}
