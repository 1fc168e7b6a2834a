// Property checks of the arithmetic kernel, shared by the property tests and
// the acceptance report.

use kwall_core::exactnum::{q, Breakpoint, QuadraticPoly, Rational, SurdSum};
use num_traits::Signed;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

const RADICANDS: [u64; 7] = [1, 2, 3, 5, 6, 7, 10];

pub fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| q(n, d))
}

pub fn surd() -> impl Strategy<Value = SurdSum> {
    prop::collection::vec(
        (rational(), prop::sample::select(RADICANDS.to_vec())),
        0..=3,
    )
    .prop_map(SurdSum::from_terms)
}

/// A breakpoint in `[0, 10]`: rational, or a root of `t^2 + p t + q` with an
/// irrational discriminant.
pub fn breakpoint() -> impl Strategy<Value = Breakpoint> {
    prop_oneof![
        (0i64..=40, 1i64..=4).prop_map(|(n, d)| Breakpoint::Rational(q(n, d))),
        (1i64..=8, prop::sample::select(vec![2i64, 3, 5, 7])).prop_map(|(c, d)| {
            // larger root of (t - c)^2 = d/4
            let p = q(-2 * c, 1);
            let qq = q(c * c, 1) - q(d, 4);
            Breakpoint::quadratic_root(p, qq, 1).unwrap()
        }),
    ]
}

fn run<S: Strategy>(
    cases: u32,
    s: S,
    f: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    TestRunner::new(Config {
        failure_persistence: None,
        ..Config::with_cases(cases)
    })
    .run(&s, f)
    .map_err(|e| e.to_string())
}

pub fn ring_laws(cases: u32) -> Result<(), String> {
    run(cases, (surd(), surd(), surd()), |(a, b, c)| {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a + &(-a.clone())).is_zero());
        prop_assert_eq!(&a + &SurdSum::zero(), a.clone());
        prop_assert_eq!(&a * &SurdSum::one(), a.clone());
        prop_assert_eq!(-(-a.clone()), a);
        Ok(())
    })
}

/// The exact sign of `a - b` never contradicts a rational enclosure.
pub fn sign_vs_interval(cases: u32) -> Result<(), String> {
    run(cases, (surd(), surd()), |(a, b)| {
        let d = &a - &b;
        let (lo, hi) = d.interval(48);
        prop_assert!(lo <= hi);
        let sign = d.signum();
        if lo.is_positive() {
            prop_assert_eq!(sign, 1);
        }
        if hi.is_negative() {
            prop_assert_eq!(sign, -1);
        }
        prop_assert!(!(sign == 1 && hi.is_negative()) && !(sign == -1 && lo.is_positive()));
        prop_assert_eq!(sign == 0, d.is_zero());
        prop_assert_eq!(a.cmp(&b) as i32, sign);
        Ok(())
    })
}

pub fn additivity(cases: u32) -> Result<(), String> {
    let s = (
        rational(),
        rational(),
        rational(),
        prop::collection::vec(breakpoint(), 3),
    );
    run(cases, s, |(c2, c1, c0, mut pts)| {
        pts.sort();
        let f = QuadraticPoly::new(c2, c1, c0);
        let (x, y, z) = (&pts[0], &pts[1], &pts[2]);
        prop_assert_eq!(&f.integrate(x, y) + &f.integrate(y, z), f.integrate(x, z));
        prop_assert!(f.integrate(x, x).is_zero());
        Ok(())
    })
}
