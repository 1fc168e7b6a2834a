// Zariski decomposition against a brute-force oracle: among all subsets of
// negative curves, the one whose projection leaves a nef class with positive
// coefficients and a negative-definite Gram block.

use kwall_core::exactnum::{q, Rational};
use kwall_core::surface::{
    builtin_surface, zariski_decompose, zariski_decompose_ordered, DivisorClass, SurfaceModel,
};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

/// Gaussian elimination; `None` when singular.
#[allow(clippy::needless_range_loop)]
fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for k in col..n {
                    let v = &f * &a[col][k];
                    a[r][k] -= v;
                }
                let v = &f * &b[col];
                b[r] -= v;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Sylvester: `-G` positive definite.
fn negative_definite(g: &[Vec<Rational>]) -> bool {
    (1..=g.len()).all(|k| {
        let m: Vec<Vec<Rational>> = (0..k)
            .map(|i| (0..k).map(|j| -&g[i][j]).collect())
            .collect();
        det(m).is_positive()
    })
}

#[allow(clippy::needless_range_loop)]
fn det(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut d = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            a.swap(col, piv);
            d = -d;
        }
        d *= &a[col][col];
        for r in col + 1..n {
            let f = &a[r][col] / &a[col][col];
            for k in col..n {
                let v = &f * &a[col][k];
                a[r][k] -= v;
            }
        }
    }
    d
}

fn negative_curves(m: &SurfaceModel) -> Vec<usize> {
    (0..m.cone_generators.len())
        .filter(|&i| {
            m.dot(&m.cone_generators[i], &m.cone_generators[i])
                .is_negative()
        })
        .collect()
}

/// Positive part by exhaustive search over supports.
fn oracle(m: &SurfaceModel, d: &DivisorClass) -> DivisorClass {
    let neg = negative_curves(m);
    let gens = &m.cone_generators;
    for mask in 0u32..(1 << neg.len()) {
        let s: Vec<usize> = neg
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &i)| i)
            .collect();
        let gram: Vec<Vec<Rational>> = s
            .iter()
            .map(|&i| s.iter().map(|&j| m.dot(&gens[i], &gens[j])).collect())
            .collect();
        if !negative_definite(&gram) {
            continue;
        }
        let rhs: Vec<Rational> = s.iter().map(|&i| m.dot(d, &gens[i])).collect();
        let Some(x) = solve(gram, rhs) else { continue };
        if x.iter().any(|v| !v.is_positive()) {
            continue;
        }
        let mut p = d.clone();
        for (v, &i) in x.iter().zip(&s) {
            p = p.add_scaled(&-v.clone(), &gens[i]);
        }
        if m.is_nef(&p) {
            return p;
        }
    }
    panic!("no support works for {d} on {}", m.name);
}

fn class(m: &SurfaceModel) -> impl Strategy<Value = DivisorClass> {
    let g = m.cone_generators.clone();
    let n = m.rank();
    prop::collection::vec((0i64..=6, 1i64..=4), g.len()).prop_map(move |cs| {
        let mut d = DivisorClass::zero(n);
        for ((num, den), gi) in cs.iter().zip(&g) {
            // about half of the coefficients vanish
            let r = q((num - 3).max(0), *den);
            d = d.add_scaled(&r, gi);
        }
        d
    })
}

/// Runs the Zariski property checks on `cases` random pseudo-effective classes.
pub fn check_model(id: &str, cases: u32) -> Result<(), String> {
    let m = builtin_surface(id).map_err(|e| e.to_string())?;
    let mut runner = TestRunner::new(Config {
        failure_persistence: None,
        ..Config::with_cases(cases)
    });
    runner
        .run(&class(&m), |d| {
            let z = zariski_decompose(&m, &d).unwrap();
            let gens = &m.cone_generators;
            let p = &z.positive;
            prop_assert!(m.is_nef(p));
            for (i, c) in &z.negative_support {
                prop_assert!(c.is_positive());
                prop_assert!(m.dot(p, &gens[*i]).is_zero());
            }
            let s = z.support();
            let gram: Vec<Vec<Rational>> = s
                .iter()
                .map(|&i| s.iter().map(|&j| m.dot(&gens[i], &gens[j])).collect())
                .collect();
            prop_assert!(negative_definite(&gram));
            let mut sum = p.clone();
            for (i, c) in &z.negative_support {
                sum = sum.add_scaled(c, &gens[*i]);
            }
            prop_assert_eq!(&sum, &d);
            let rev: Vec<usize> = (0..gens.len()).rev().collect();
            prop_assert_eq!(
                &zariski_decompose_ordered(&m, &d, &rev).unwrap().positive,
                p
            );
            prop_assert_eq!(&oracle(&m, &d), p);
            let k = q(5, 2);
            let zk = zariski_decompose(&m, &d.scale(&k)).unwrap();
            prop_assert_eq!(zk.volume(&m), z.volume(&m) * &k * &k);
            Ok(())
        })
        .map_err(|e| format!("{id}: {e}"))
}
