use super::linalg::{self, Mat};
use super::{DivisorClass, SurfaceError, SurfaceModel};
use crate::exactnum::Rational;
use num_traits::{Signed, Zero};

/// `D = P + sum coeff_i C_i`, with `C_i` indexed into the model's cone generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZariskiDecomposition {
    pub positive: DivisorClass,
    pub negative_support: Vec<(usize, Rational)>,
}

impl ZariskiDecomposition {
    pub fn volume(&self, model: &SurfaceModel) -> Rational {
        model.dot(&self.positive, &self.positive)
    }

    pub fn support(&self) -> Vec<usize> {
        self.negative_support.iter().map(|(i, _)| *i).collect()
    }
}

/// Projects `d` off the span of `support`: returns the coefficients `x` with
/// `(d - sum x_i C_i) . C_j = 0` for all `j` in the support.
pub fn project_onto_complement(
    model: &SurfaceModel,
    d: &DivisorClass,
    support: &[usize],
) -> Option<(DivisorClass, Vec<Rational>)> {
    let gens = &model.cone_generators;
    let g: Mat = support
        .iter()
        .map(|&i| {
            support
                .iter()
                .map(|&j| model.dot(&gens[i], &gens[j]))
                .collect()
        })
        .collect();
    let rhs: Vec<Rational> = support.iter().map(|&i| model.dot(d, &gens[i])).collect();
    let x = if support.is_empty() {
        Vec::new()
    } else {
        linalg::solve(&g, &rhs)?
    };
    let mut p = d.clone();
    for (c, &i) in x.iter().zip(support) {
        p = p.sub(&gens[i].scale(c));
    }
    Some((p, x))
}

fn check_pseff(model: &SurfaceModel, d: &DivisorClass) -> Result<(), SurfaceError> {
    if d.dim() != model.rank() {
        return Err(SurfaceError::DimensionMismatch(format!(
            "class has {} coordinates, model rank is {}",
            d.dim(),
            model.rank()
        )));
    }
    if !model.is_pseudoeffective(d) {
        let nef = model
            .separating_nef_class(d)
            .map(|n| n.to_string())
            .unwrap_or_else(|| "(none found)".into());
        return Err(SurfaceError::NotPseudoEffective {
            class: d.to_string(),
            nef,
        });
    }
    Ok(())
}

/// Zariski decomposition by growing the negative support: every generator
/// meeting the current positive part negatively joins the support, the
/// coefficients are re-solved, and the loop stops at a nef remainder.
pub fn zariski_decompose(
    model: &SurfaceModel,
    d: &DivisorClass,
) -> Result<ZariskiDecomposition, SurfaceError> {
    let order: Vec<usize> = (0..model.cone_generators.len()).collect();
    grow(model, d, &order, false)
}

/// Same decomposition, but adds only the first offending generator in the
/// given order at each step. Uniqueness makes the result order independent.
pub fn zariski_decompose_ordered(
    model: &SurfaceModel,
    d: &DivisorClass,
    order: &[usize],
) -> Result<ZariskiDecomposition, SurfaceError> {
    grow(model, d, order, true)
}

fn grow(
    model: &SurfaceModel,
    d: &DivisorClass,
    order: &[usize],
    one_at_a_time: bool,
) -> Result<ZariskiDecomposition, SurfaceError> {
    check_pseff(model, d)?;
    let gens = &model.cone_generators;
    let mut support: Vec<usize> = Vec::new();
    loop {
        let (p, x) = project_onto_complement(model, d, &support).ok_or_else(|| {
            SurfaceError::Invalid("negative support has a singular intersection matrix".into())
        })?;
        let offending: Vec<usize> = order
            .iter()
            .copied()
            .filter(|i| !support.contains(i) && model.dot(&p, &gens[*i]).is_negative())
            .collect();
        if offending.is_empty() {
            let mut neg: Vec<(usize, Rational)> = support
                .iter()
                .copied()
                .zip(x)
                .filter(|(_, c)| !c.is_zero())
                .collect();
            neg.sort_by_key(|(i, _)| *i);
            return Ok(ZariskiDecomposition {
                positive: p,
                negative_support: neg,
            });
        }
        if one_at_a_time {
            support.push(offending[0]);
        } else {
            support.extend(offending);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, q};
    use crate::surface::{blp114, f1};

    #[test]
    fn nef_input_is_its_own_positive_part() {
        let m = f1();
        let d = m.combination(&[("H_z", int(3)), ("E", int(1))]).unwrap();
        let z = zariski_decompose(&m, &d).unwrap();
        assert_eq!(z.positive, d);
        assert!(z.negative_support.is_empty());
    }

    #[test]
    fn f1_exceptional_part() {
        let m = f1();
        let d = m.combination(&[("H_z", int(1)), ("E", int(2))]).unwrap();
        let z = zariski_decompose(&m, &d).unwrap();
        assert_eq!(
            z.positive,
            m.combination(&[("H_z", int(1)), ("E", int(1))]).unwrap()
        );
        let e = m.generator_index(m.class_of("E").unwrap()).unwrap();
        assert_eq!(z.negative_support, vec![(e, int(1))]);
    }

    #[test]
    fn blp114_at_t3() {
        let m = blp114();
        let d = m.combination(&[("H_y", int(6)), ("E", int(2))]).unwrap();
        let z = zariski_decompose(&m, &d).unwrap();
        let expect = m.combination(&[("H_y", q(8, 3)), ("E", int(2))]).unwrap();
        assert_eq!(z.positive, expect);
        assert_eq!(z.volume(&m), q(4, 3));
    }

    #[test]
    fn not_pseudoeffective() {
        let m = f1();
        let d = m.combination(&[("H_z", int(-1))]).unwrap();
        let err = zariski_decompose(&m, &d).unwrap_err();
        match err {
            SurfaceError::NotPseudoEffective { nef, .. } => {
                let n = DivisorClass(
                    nef.trim_matches(|c| c == '(' || c == ')')
                        .split(", ")
                        .map(|s| crate::exactnum::parse_rational(s).unwrap())
                        .collect(),
                );
                assert!(m.is_nef(&n));
                assert!(m.dot(&n, &d) < int(0));
            }
            e => panic!("unexpected {e}"),
        }
    }
}
