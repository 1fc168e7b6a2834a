use super::{Breakpoint, Rational, SurdSum};
use num_traits::Zero;
use std::fmt;

/// `c2 t^2 + c1 t + c0` over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticPoly {
    pub c2: Rational,
    pub c1: Rational,
    pub c0: Rational,
}

impl QuadraticPoly {
    pub fn new(c2: Rational, c1: Rational, c0: Rational) -> Self {
        Self { c2, c1, c0 }
    }

    /// Product of the two linear factors `(a1 t + b1)(a2 t + b2)`.
    pub fn from_linear_product(a1: Rational, b1: Rational, a2: Rational, b2: Rational) -> Self {
        Self::new(&a1 * &a2, &a1 * &b2 + &b1 * &a2, b1 * b2)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        (&self.c2 * t + &self.c1) * t + &self.c0
    }

    pub fn eval_surd(&self, t: &SurdSum) -> SurdSum {
        let inner = t.scale(&self.c2) + SurdSum::from_rational(self.c1.clone());
        inner * t + SurdSum::from_rational(self.c0.clone())
    }

    pub fn eval_at(&self, t: &Breakpoint) -> SurdSum {
        match t {
            Breakpoint::Rational(r) => SurdSum::from_rational(self.eval(r)),
            _ => self.eval_surd(&t.to_surd()),
        }
    }

    /// Antiderivative `c2 t^3/3 + c1 t^2/2 + c0 t` evaluated at `t`.
    pub fn antiderivative_at(&self, t: &SurdSum) -> SurdSum {
        let third = &self.c2 / Rational::from_integer(3.into());
        let half = &self.c1 / Rational::from_integer(2.into());
        let inner = t.scale(&third) + SurdSum::from_rational(half);
        (inner * t + SurdSum::from_rational(self.c0.clone())) * t
    }

    /// Exact definite integral over `[from, to]`.
    pub fn integrate(&self, from: &Breakpoint, to: &Breakpoint) -> SurdSum {
        self.antiderivative_at(&to.to_surd()) - self.antiderivative_at(&from.to_surd())
    }

    pub fn roots(&self) -> Vec<Breakpoint> {
        Breakpoint::roots_of(&self.c2, &self.c1, &self.c0)
    }

    pub fn derivative_at(&self, t: &Rational) -> Rational {
        Rational::from_integer(2.into()) * &self.c2 * t + &self.c1
    }

    pub fn is_zero(&self) -> bool {
        self.c2.is_zero() && self.c1.is_zero() && self.c0.is_zero()
    }

    /// Coefficients as canonical strings `[c2, c1, c0]`.
    pub fn coefficient_strings(&self) -> [String; 3] {
        [
            self.c2.to_string(),
            self.c1.to_string(),
            self.c0.to_string(),
        ]
    }
}

impl fmt::Display for QuadraticPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (c, m) in [(&self.c2, "*t^2"), (&self.c1, "*t"), (&self.c0, "")] {
            if !c.is_zero() {
                parts.push(format!("{c}{m}"));
            }
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            if p.starts_with('-') {
                out.push_str(p);
            } else {
                out.push('+');
                out.push_str(p);
            }
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, q};

    #[test]
    fn reference_integrals() {
        // (4 + t)(2 - t) on [0, 2]
        let p = QuadraticPoly::from_linear_product(int(1), int(4), int(-1), int(2));
        assert_eq!(p.to_string(), "-1*t^2-2*t+8");
        let v = p.integrate(&Breakpoint::zero(), &Breakpoint::Rational(int(2)));
        assert_eq!(v, SurdSum::from_rational(q(28, 3)));

        // 8 - 4t^2 on [0, sqrt 2]
        let p = QuadraticPoly::new(int(-4), int(0), int(8));
        let r2 = Breakpoint::quadratic_root(int(0), int(-2), 1).unwrap();
        assert_eq!(
            p.integrate(&Breakpoint::zero(), &r2),
            SurdSum::term(q(16, 3), 2)
        );
        assert!(p.eval_at(&r2).is_zero());

        // 8 - 9/2 t^2 on [0, 4/3]
        let p = QuadraticPoly::new(q(-9, 2), int(0), int(8));
        let v = p.integrate(&Breakpoint::zero(), &Breakpoint::Rational(q(4, 3)));
        assert_eq!(v, SurdSum::from_rational(q(64, 9)));
    }
}
