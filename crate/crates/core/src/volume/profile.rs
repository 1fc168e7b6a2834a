use super::VolumeError;
use crate::exactnum::{Breakpoint, PiecewiseQuadratic, QuadraticPoly, Rational, SurdSum};
use crate::surface::{zariski_decompose, DivisorClass, SurfaceModel};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// The radial volume profile `t -> vol(L0 - tF)` with its integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SProfile {
    pub profile: PiecewiseQuadratic,
    pub raw_integral: SurdSum,
    /// `L0^2`, the normalizing volume.
    pub degree: Rational,
}

impl SProfile {
    pub fn tau(&self) -> &Breakpoint {
        self.profile.tau()
    }

    /// `S = (1 - 2c) / L0^2 * integral`.
    pub fn s_at(&self, c: &Rational) -> SurdSum {
        let f = (Rational::one() - Rational::from_integer(2.into()) * c) / &self.degree;
        self.raw_integral.scale(&f)
    }

    pub fn report(&self, c: &Rational) -> ProfileReport {
        let bps = self.profile.breakpoints();
        ProfileReport {
            segments: self
                .profile
                .segments()
                .iter()
                .enumerate()
                .map(|(i, p)| SegmentReport {
                    from: bps[i].to_string(),
                    to: bps[i + 1].to_string(),
                    poly: p.coefficient_strings(),
                })
                .collect(),
            tau: self.tau().to_string(),
            raw_integral: self.raw_integral.to_string(),
            s_at_c: self.s_at(c).to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SegmentReport {
    pub from: String,
    pub to: String,
    pub poly: [String; 3],
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ProfileReport {
    pub segments: Vec<SegmentReport>,
    pub tau: String,
    pub raw_integral: String,
    pub s_at_c: String,
}

/// Largest `t` with `L0 - tF` pseudo-effective, by duality with the nef cone.
fn pseff_threshold(model: &SurfaceModel, l0: &DivisorClass, f: &DivisorClass) -> Option<Rational> {
    model
        .nef_rays()
        .iter()
        .filter_map(|n| {
            let fn_ = model.dot(f, n);
            fn_.is_positive().then(|| model.dot(l0, n) / fn_)
        })
        .min()
}

/// Parametric positive part `P(t) = p0 - t p1` with negative coefficients
/// `x(t) = x0 - t x1` for a fixed support.
struct Chamber {
    p0: DivisorClass,
    p1: DivisorClass,
    x0: Vec<Rational>,
    x1: Vec<Rational>,
}

fn chamber(
    model: &SurfaceModel,
    l0: &DivisorClass,
    f: &DivisorClass,
    support: &[usize],
) -> Result<Chamber, VolumeError> {
    let bad = || VolumeError::Internal("support with singular intersection matrix".into());
    let (p0, x0) = crate::surface::project_onto_complement(model, l0, support).ok_or_else(bad)?;
    let (p1, x1) = crate::surface::project_onto_complement(model, f, support).ok_or_else(bad)?;
    Ok(Chamber { p0, p1, x0, x1 })
}

/// Exact piecewise-quadratic profile of `vol(L0 - tF)` on `[0, tau]`.
///
/// Each segment is a fixed Zariski chamber: the positive part is affine in `t`
/// there. Breakpoints are where a new curve becomes negative against the
/// positive part, where a support coefficient would vanish, or where the
/// volume or pseudo-effectivity ends. Every segment is rechecked at an
/// interior rational point.
pub fn volume_profile(
    model: &SurfaceModel,
    l0: &DivisorClass,
    f: &DivisorClass,
) -> Result<SProfile, VolumeError> {
    if l0.dim() != model.rank() || f.dim() != model.rank() {
        return Err(VolumeError::Surface(
            crate::surface::SurfaceError::DimensionMismatch(
                "class dimension differs from the model rank".into(),
            ),
        ));
    }
    let degree = model.dot(l0, l0);
    if !degree.is_positive() || !model.is_pseudoeffective(l0) {
        return Err(VolumeError::NotBig(l0.to_string()));
    }
    if f.is_zero() || !model.is_pseudoeffective(f) {
        return Err(VolumeError::NotEffective(f.to_string()));
    }
    let tau_pseff =
        pseff_threshold(model, l0, f).ok_or_else(|| VolumeError::NotEffective(f.to_string()))?;
    let gens = &model.cone_generators;

    let mut start = Rational::zero();
    let mut bps = vec![Breakpoint::zero()];
    let mut segs = Vec::new();
    loop {
        let at = l0.add_scaled(&-start.clone(), f);
        let mut support = zariski_decompose(model, &at)?.support();
        // curves that are orthogonal at `start` but turn negative right after it
        let ch = loop {
            let ch = chamber(model, l0, f, &support)?;
            let p_start = ch.p0.add_scaled(&-start.clone(), &ch.p1);
            let entering: Vec<usize> = (0..gens.len())
                .filter(|i| {
                    !support.contains(i)
                        && model.dot(&p_start, &gens[*i]).is_zero()
                        && model.dot(&ch.p1, &gens[*i]).is_positive()
                })
                .collect();
            if entering.is_empty() {
                break ch;
            }
            support.extend(entering);
        };

        let mut cands: Vec<Breakpoint> = vec![tau_pseff.clone().into()];
        for (i, g) in gens.iter().enumerate() {
            if support.contains(&i) {
                continue;
            }
            let slope = model.dot(&ch.p1, g);
            if slope.is_positive() {
                let r = model.dot(&ch.p0, g) / slope;
                if r > start {
                    cands.push(r.into());
                }
            }
        }
        for (x0, x1) in ch.x0.iter().zip(&ch.x1) {
            if x1.is_negative() {
                let r = x0 / x1;
                if r > start {
                    cands.push(r.into());
                }
            }
        }
        let poly = QuadraticPoly::new(
            model.dot(&ch.p1, &ch.p1),
            -Rational::from_integer(2.into()) * model.dot(&ch.p0, &ch.p1),
            model.dot(&ch.p0, &ch.p0),
        );
        for r in poly.roots() {
            if r.cmp_rational(&start).is_gt() {
                cands.push(r);
            }
        }
        let next = cands.into_iter().min().expect("tau is a candidate");

        let mid = next.rational_below(&start);
        let check = l0.add_scaled(&-mid.clone(), f);
        let vol = zariski_decompose(model, &check)?.volume(model);
        if vol != poly.eval(&mid) {
            return Err(VolumeError::Internal(format!(
                "segment check failed at t = {mid}: Zariski volume {vol}, segment {poly}"
            )));
        }
        let end_value = poly.eval_at(&next);
        segs.push(poly);
        bps.push(next.clone());
        if end_value.is_zero() {
            break;
        }
        start = match next {
            Breakpoint::Rational(r) if r < tau_pseff => r,
            other => {
                return Err(VolumeError::Internal(format!(
                    "volume {end_value} is nonzero at the end of the cone t = {other}"
                )))
            }
        };
    }
    let profile = PiecewiseQuadratic::new(bps, segs)?;
    let raw_integral = profile.integral();
    Ok(SProfile {
        profile,
        raw_integral,
        degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, q};
    use crate::surface::{f1, index3m, quotient_resolution};

    #[test]
    fn f1_exceptional_curve() {
        let m = f1();
        let e = m.class_of("E").unwrap().clone();
        let p = volume_profile(&m, &m.anticanonical, &e).unwrap();
        assert_eq!(p.profile.segments().len(), 1);
        assert_eq!(
            p.profile.segments()[0],
            QuadraticPoly::from_linear_product(int(1), int(4), int(-1), int(2))
        );
        assert_eq!(p.raw_integral, SurdSum::from_rational(q(28, 3)));
        assert_eq!(p.s_at(&int(0)), SurdSum::from_rational(q(7, 6)));
        assert!(p.s_at(&q(1, 2)).is_zero());
    }

    #[test]
    fn index3_profile() {
        let m = index3m();
        let f = DivisorClass(vec![int(1), q(1, 2), int(0), int(0)]);
        let p = volume_profile(&m, &m.anticanonical, &f).unwrap();
        assert_eq!(
            p.profile.segments(),
            &[QuadraticPoly::new(q(-9, 2), int(0), int(8))]
        );
        assert_eq!(p.tau(), &Breakpoint::Rational(q(4, 3)));
        assert_eq!(p.s_at(&int(0)), SurdSum::from_rational(q(8, 9)));
    }

    #[test]
    fn quotient_curve_has_two_chambers() {
        let m = quotient_resolution();
        let f = m.class_of("F").unwrap().clone();
        let p = volume_profile(&m, &m.anticanonical, &f).unwrap();
        assert_eq!(
            p.profile.breakpoints(),
            &[Breakpoint::zero(), q(1, 2).into(), q(3, 2).into()]
        );
        assert_eq!(
            p.profile.segments()[0],
            QuadraticPoly::new(int(-4), int(0), int(8))
        );
        assert_eq!(p.raw_integral, SurdSum::from_rational(q(47, 6)));
    }

    #[test]
    fn rejects_bad_input() {
        let m = f1();
        let e = m.class_of("E").unwrap().clone();
        assert!(matches!(
            volume_profile(&m, &e, &e),
            Err(VolumeError::NotBig(_))
        ));
        let neg = e.scale(&int(-1));
        assert!(matches!(
            volume_profile(&m, &m.anticanonical, &neg),
            Err(VolumeError::NotEffective(_))
        ));
    }
}
