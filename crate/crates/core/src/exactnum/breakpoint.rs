use super::{ExactError, Rational, SurdSum};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// A real breakpoint: either rational or a root of the monic quadratic
/// `t^2 + p t + q`, the larger root when `sign = 1` and the smaller when `sign = -1`.
#[derive(Clone, Debug)]
pub enum Breakpoint {
    Rational(Rational),
    QuadraticRoot { p: Rational, q: Rational, sign: i8 },
}

impl Breakpoint {
    pub fn zero() -> Self {
        Breakpoint::Rational(Rational::zero())
    }

    /// Root of `t^2 + p t + q`. Collapses to the rational variant when the
    /// discriminant is a perfect square.
    pub fn quadratic_root(p: Rational, q: Rational, sign: i8) -> Result<Self, ExactError> {
        let disc = &p * &p - Rational::from_integer(4.into()) * &q;
        if disc.is_negative() {
            return Err(ExactError::Domain(format!(
                "t^2 + ({p})t + ({q}) has no real roots"
            )));
        }
        let root = SurdSum::sqrt_rational(&disc)?;
        if let Some(r) = root.as_rational() {
            let s = if sign >= 0 { r } else { -r };
            return Ok(Breakpoint::Rational(
                (s - p) / Rational::from_integer(2.into()),
            ));
        }
        Ok(Breakpoint::QuadraticRoot {
            p,
            q,
            sign: if sign >= 0 { 1 } else { -1 },
        })
    }

    /// Real roots of `c2 t^2 + c1 t + c0` in ascending order (empty if the
    /// polynomial is constant).
    pub fn roots_of(c2: &Rational, c1: &Rational, c0: &Rational) -> Vec<Breakpoint> {
        if c2.is_zero() {
            if c1.is_zero() {
                return Vec::new();
            }
            return vec![Breakpoint::Rational(-c0 / c1)];
        }
        let p = c1 / c2;
        let q = c0 / c2;
        let disc = &p * &p - Rational::from_integer(4.into()) * &q;
        if disc.is_negative() {
            return Vec::new();
        }
        let lo = Breakpoint::quadratic_root(p.clone(), q.clone(), -1).expect("real");
        if disc.is_zero() {
            return vec![lo];
        }
        let hi = Breakpoint::quadratic_root(p, q, 1).expect("real");
        vec![lo, hi]
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Breakpoint::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Exact value as a surd sum `(-p +- sqrt(p^2 - 4q)) / 2`.
    pub fn to_surd(&self) -> SurdSum {
        match self {
            Breakpoint::Rational(r) => SurdSum::from_rational(r.clone()),
            Breakpoint::QuadraticRoot { p, q, sign } => {
                let disc = p * p - Rational::from_integer(4.into()) * q;
                let root = SurdSum::sqrt_rational(&disc).expect("validated on construction");
                let half = Rational::new(One::one(), 2.into());
                let root = root.scale(&(half.clone() * Rational::from_integer((*sign).into())));
                root + SurdSum::from_rational(-p * half)
            }
        }
    }

    /// A rational strictly between `lower` and this value; requires `lower < self`.
    pub fn rational_below(&self, lower: &Rational) -> Rational {
        match self {
            Breakpoint::Rational(r) => (lower + r) / Rational::from_integer(2.into()),
            _ => {
                let v = self.to_surd();
                let mut bits = 32;
                loop {
                    let (lo, _) = v.interval(bits);
                    if &lo > lower {
                        return (lower + lo) / Rational::from_integer(2.into());
                    }
                    bits *= 2;
                }
            }
        }
    }

    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        match self {
            Breakpoint::Rational(x) => x.cmp(r),
            _ => self.to_surd().cmp(&SurdSum::from_rational(r.clone())),
        }
    }
}

impl From<Rational> for Breakpoint {
    fn from(r: Rational) -> Self {
        Breakpoint::Rational(r)
    }
}

impl PartialEq for Breakpoint {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Breakpoint {}

impl Ord for Breakpoint {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Breakpoint::Rational(a), Breakpoint::Rational(b)) => a.cmp(b),
            _ => self.to_surd().cmp(&other.to_surd()),
        }
    }
}

impl PartialOrd for Breakpoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Breakpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_surd())
    }
}
