use super::{Breakpoint, ExactError, QuadraticPoly, SurdSum};
use std::cmp::{max, min};
use std::fmt;

/// A continuous function on `[0, tau]` that is quadratic between consecutive
/// breakpoints and vanishes at `tau`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseQuadratic {
    breakpoints: Vec<Breakpoint>,
    segments: Vec<QuadraticPoly>,
}

impl PiecewiseQuadratic {
    /// `breakpoints` runs from 0 to tau inclusive; `segments[i]` lives on
    /// `[breakpoints[i], breakpoints[i+1]]`.
    pub fn new(
        breakpoints: Vec<Breakpoint>,
        segments: Vec<QuadraticPoly>,
    ) -> Result<Self, ExactError> {
        if segments.is_empty() || breakpoints.len() != segments.len() + 1 {
            return Err(ExactError::Domain(
                "need one segment per interval and at least one interval".into(),
            ));
        }
        if breakpoints[0] != Breakpoint::zero() {
            return Err(ExactError::Domain("first breakpoint must be 0".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ExactError::Domain(
                "breakpoints must increase strictly".into(),
            ));
        }
        for i in 1..segments.len() {
            let at = &breakpoints[i];
            if segments[i - 1].eval_at(at) != segments[i].eval_at(at) {
                return Err(ExactError::Domain(format!("discontinuity at t = {at}")));
            }
        }
        let tau = breakpoints.last().expect("nonempty");
        let end = segments.last().expect("nonempty").eval_at(tau);
        if !end.is_zero() {
            return Err(ExactError::Domain(format!(
                "value {end} at tau = {tau} is not 0"
            )));
        }
        Ok(Self {
            breakpoints,
            segments,
        })
    }

    pub fn breakpoints(&self) -> &[Breakpoint] {
        &self.breakpoints
    }

    pub fn segments(&self) -> &[QuadraticPoly] {
        &self.segments
    }

    pub fn tau(&self) -> &Breakpoint {
        self.breakpoints.last().expect("nonempty")
    }

    pub fn start_value(&self) -> SurdSum {
        self.segments[0].eval_at(&Breakpoint::zero())
    }

    fn check_domain(&self, t: &Breakpoint) -> Result<(), ExactError> {
        if *t < Breakpoint::zero() || t > self.tau() {
            return Err(ExactError::Domain(format!(
                "{t} outside [0, {}]",
                self.tau()
            )));
        }
        Ok(())
    }

    pub fn value_at(&self, t: &Breakpoint) -> Result<SurdSum, ExactError> {
        self.check_domain(t)?;
        let i = self.breakpoints[1..]
            .iter()
            .position(|b| t <= b)
            .unwrap_or(self.segments.len() - 1);
        Ok(self.segments[i].eval_at(t))
    }

    /// Exact integral over `[from, to]`, summed segment by segment.
    pub fn integrate(&self, from: &Breakpoint, to: &Breakpoint) -> Result<SurdSum, ExactError> {
        self.check_domain(from)?;
        self.check_domain(to)?;
        if from > to {
            return Err(ExactError::Domain(format!("reversed bounds {from} > {to}")));
        }
        let mut total = SurdSum::zero();
        for (i, seg) in self.segments.iter().enumerate() {
            let lo = max(from, &self.breakpoints[i]);
            let hi = min(to, &self.breakpoints[i + 1]);
            if lo < hi {
                total = total + seg.integrate(lo, hi);
            }
        }
        Ok(total)
    }

    /// Integral over the whole domain `[0, tau]`.
    pub fn integral(&self) -> SurdSum {
        self.integrate(&Breakpoint::zero(), self.tau())
            .expect("full domain is valid")
    }
}

impl fmt::Display for PiecewiseQuadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.segments.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(
                f,
                "[{}, {}]: {}",
                self.breakpoints[i],
                self.breakpoints[i + 1],
                s
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, q};

    #[test]
    fn two_piece_profile() {
        // 8 - 4t^2 on [0, 1/2], then -3t^2 - t + 33/4 on [1/2, 3/2]
        let f = PiecewiseQuadratic::new(
            vec![Breakpoint::zero(), q(1, 2).into(), q(3, 2).into()],
            vec![
                QuadraticPoly::new(int(-4), int(0), int(8)),
                QuadraticPoly::new(int(-3), int(-1), q(33, 4)),
            ],
        )
        .unwrap();
        assert_eq!(f.integral(), SurdSum::from_rational(q(47, 6)));
        assert_eq!(f.start_value(), SurdSum::from_rational(int(8)));
        assert!(f.integrate(&Breakpoint::zero(), &int(2).into()).is_err());
        assert!(f.integrate(&int(1).into(), &q(1, 2).into()).is_err());
    }

    #[test]
    fn rejects_discontinuity() {
        let r = PiecewiseQuadratic::new(
            vec![Breakpoint::zero(), int(1).into(), int(2).into()],
            vec![
                QuadraticPoly::new(int(0), int(0), int(1)),
                QuadraticPoly::new(int(0), int(-1), int(2)),
            ],
        );
        assert!(r.is_ok());
        let r = PiecewiseQuadratic::new(
            vec![Breakpoint::zero(), int(1).into(), int(2).into()],
            vec![
                QuadraticPoly::new(int(0), int(0), int(3)),
                QuadraticPoly::new(int(0), int(-1), int(2)),
            ],
        );
        assert!(r.is_err());
    }
}
