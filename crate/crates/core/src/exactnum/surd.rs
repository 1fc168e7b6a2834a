use super::{ExactError, Rational};
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// Writes `n = k^2 * s` with `s` squarefree and returns `(k, s)`.
///
/// Trial division is enough here: radicands are products of small chart
/// weights, far below the range where it would be slow.
pub fn squarefree_split(n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 1);
    }
    let (mut k, mut s, mut m) = (1u64, 1u64, n);
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        k *= p.pow(e / 2);
        if e % 2 == 1 {
            s *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (k, s * m)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A finite sum `sum q_i * sqrt(d_i)` with rational `q_i` and distinct
/// squarefree `d_i`; the `d = 1` term is the rational part.
///
/// The representation is canonical, so structural equality is value equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SurdSum {
    terms: BTreeMap<u64, Rational>,
}

impl SurdSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::term(r, 1)
    }

    /// `coeff * sqrt(radicand)` for any natural radicand (square factors are pulled out).
    pub fn term(coeff: Rational, radicand: u64) -> Self {
        let mut s = Self::zero();
        s.push(coeff, radicand);
        s
    }

    /// Normalising constructor from raw `(coefficient, radicand)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (Rational, u64)>>(it: I) -> Self {
        let mut s = Self::zero();
        for (c, d) in it {
            s.push(c, d);
        }
        s
    }

    fn push(&mut self, coeff: Rational, radicand: u64) {
        if coeff.is_zero() || radicand == 0 {
            return;
        }
        let (k, d) = squarefree_split(radicand);
        let c = coeff * Rational::from_integer(BigInt::from(k));
        let e = self.terms.entry(d).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&d);
        }
    }

    /// `sqrt(n)` for a natural number.
    pub fn sqrt_int(n: u64) -> Self {
        Self::term(Rational::one(), n)
    }

    /// `sqrt(r)` for a nonnegative rational, as `sqrt(num*den)/den`.
    pub fn sqrt_rational(r: &Rational) -> Result<Self, ExactError> {
        if r.is_negative() {
            return Err(ExactError::Domain(format!("square root of negative {r}")));
        }
        let prod = r.numer() * r.denom();
        let n = prod
            .to_u64()
            .ok_or_else(|| ExactError::Domain(format!("radicand {prod} exceeds 64 bits")))?;
        Ok(Self::term(
            Rational::new(BigInt::one(), r.denom().clone()),
            n,
        ))
    }

    /// Canonical form. Values are kept canonical at all times, so this is a clone;
    /// it exists so idempotence can be stated and tested.
    pub fn normalize(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(d, c)| (c.clone(), *d)))
    }

    /// `(radicand, coefficient)` pairs in ascending radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|d| *d == 1)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.rational_part())
        } else {
            None
        }
    }

    pub fn to_rational(&self) -> Result<Rational, ExactError> {
        self.as_rational()
            .ok_or_else(|| ExactError::NotRational(self.to_string()))
    }

    pub fn rational_part(&self) -> Rational {
        self.terms.get(&1).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(d, c)| (*d, c * r)).collect(),
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Exact sign: -1, 0 or 1.
    ///
    /// Splits off the largest prime `p` occurring in a radicand, writing
    /// `x = A + B*sqrt(p)` with `A`, `B` free of `p`; when the signs of `A` and
    /// `B` differ the answer is the sign of `A^2 - p*B^2` in the direction of
    /// whichever part dominates. Recursion is on the number of primes.
    pub fn signum(&self) -> i32 {
        let p = self.terms.keys().flat_map(|d| prime_factors(*d)).max();
        let Some(p) = p else {
            return match self.rational_part().numer().sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            };
        };
        let mut a = Self::zero();
        let mut b = Self::zero();
        for (d, c) in &self.terms {
            if d % p == 0 {
                b.terms.insert(d / p, c.clone());
            } else {
                a.terms.insert(*d, c.clone());
            }
        }
        let (sa, sb) = (a.signum(), b.signum());
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let p_r = Rational::from_integer(BigInt::from(p));
        match (a.square() - b.square().scale(&p_r)).signum() {
            1 => sa,
            -1 => sb,
            _ => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    /// Rational enclosure `[lo, hi]` of the value, each square root bracketed
    /// to `bits` binary digits after the point.
    pub fn interval(&self, bits: u32) -> (Rational, Rational) {
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        let scale = BigInt::one() << (2 * bits as usize);
        let den = BigInt::one() << bits as usize;
        for (d, c) in &self.terms {
            if *d == 1 {
                lo += c;
                hi += c;
                continue;
            }
            let s = (BigInt::from(*d) * &scale).sqrt();
            let r_lo = Rational::new(s.clone(), den.clone());
            let r_hi = Rational::new(s + 1, den.clone());
            if c.is_positive() {
                lo += c * &r_lo;
                hi += c * &r_hi;
            } else {
                lo += c * &r_hi;
                hi += c * &r_lo;
            }
        }
        (lo, hi)
    }

    /// Decimal rendering rounded to `digits` places, obtained by refining the
    /// rational enclosure until both ends round to the same decimal.
    pub fn approx(&self, digits: usize) -> String {
        let ten = BigInt::from(10).pow(digits as u32);
        let round = |r: &Rational| -> BigInt {
            let x = r * Rational::from_integer(ten.clone())
                + Rational::new(BigInt::one(), BigInt::from(2));
            x.floor().to_integer()
        };
        let n = if let Some(r) = self.as_rational() {
            round(&r)
        } else {
            let mut bits = 64u32;
            loop {
                let (lo, hi) = self.interval(bits);
                let (a, b) = (round(&lo), round(&hi));
                if a == b {
                    break a;
                }
                bits *= 2;
            }
        };
        let neg = n.is_negative();
        let mut s = n.abs().to_string();
        if digits > 0 {
            if s.len() <= digits {
                s = "0".repeat(digits + 1 - s.len()) + &s;
            }
            s.insert(s.len() - digits, '.');
        }
        if neg {
            s.insert(0, '-');
        }
        s
    }
}

/// Exact total order on surd sums.
pub fn surd_compare(x: &SurdSum, y: &SurdSum) -> Ordering {
    (x - y).signum().cmp(&0)
}

impl Ord for SurdSum {
    fn cmp(&self, other: &Self) -> Ordering {
        surd_compare(self, other)
    }
}

impl PartialOrd for SurdSum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Rational> for SurdSum {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<&Rational> for SurdSum {
    fn from(r: &Rational) -> Self {
        Self::from_rational(r.clone())
    }
}

impl<'a> Add<&'a SurdSum> for &SurdSum {
    type Output = SurdSum;
    fn add(self, rhs: &'a SurdSum) -> SurdSum {
        let mut s = self.clone();
        for (d, c) in &rhs.terms {
            s.push(c.clone(), *d);
        }
        s
    }
}

impl<'a> Sub<&'a SurdSum> for &SurdSum {
    type Output = SurdSum;
    fn sub(self, rhs: &'a SurdSum) -> SurdSum {
        let mut s = self.clone();
        for (d, c) in &rhs.terms {
            s.push(-c.clone(), *d);
        }
        s
    }
}

impl<'a> Mul<&'a SurdSum> for &SurdSum {
    type Output = SurdSum;
    fn mul(self, rhs: &'a SurdSum) -> SurdSum {
        let mut s = SurdSum::zero();
        for (d1, c1) in &self.terms {
            for (d2, c2) in &rhs.terms {
                let g = d1.gcd(d2);
                let d = (d1 / g)
                    .checked_mul(d2 / g)
                    .expect("radicand overflow in surd product");
                s.push(c1 * c2 * Rational::from_integer(BigInt::from(g)), d);
            }
        }
        s
    }
}

impl Neg for &SurdSum {
    type Output = SurdSum;
    fn neg(self) -> SurdSum {
        SurdSum {
            terms: self.terms.iter().map(|(d, c)| (*d, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<SurdSum> for SurdSum {
            type Output = SurdSum;
            fn $m(self, rhs: SurdSum) -> SurdSum {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a SurdSum> for SurdSum {
            type Output = SurdSum;
            fn $m(self, rhs: &'a SurdSum) -> SurdSum {
                (&self).$m(rhs)
            }
        }
        impl $tr<SurdSum> for &SurdSum {
            type Output = SurdSum;
            fn $m(self, rhs: SurdSum) -> SurdSum {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for SurdSum {
    type Output = SurdSum;
    fn neg(self) -> SurdSum {
        -&self
    }
}

fn render_term(d: u64, c: &Rational) -> String {
    if d == 1 {
        c.to_string()
    } else if c.is_one() {
        format!("sqrt({d})")
    } else if *c == -Rational::one() {
        format!("-sqrt({d})")
    } else {
        format!("{c}*sqrt({d})")
    }
}

impl fmt::Display for SurdSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (d, c)) in self.terms.iter().enumerate() {
            let t = render_term(*d, c);
            if k > 0 && !t.starts_with('-') {
                write!(f, "+")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for SurdSum {
    type Err = ExactError;

    /// Accepts the canonical rendering, e.g. `1/2-3/4*sqrt(2)+sqrt(5)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(ExactError::Parse("empty surd".into()));
        }
        let mut pieces = Vec::new();
        let mut cur = String::new();
        for (i, ch) in src.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 {
                pieces.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        pieces.push(cur);
        let mut out = SurdSum::zero();
        for p in pieces {
            let (sign, body) = match p.strip_prefix('-') {
                Some(b) => (-1, b),
                None => (1, p.strip_prefix('+').unwrap_or(&p)),
            };
            let (coeff, rad) = if let Some(idx) = body.find("sqrt(") {
                let inner = body[idx + 5..]
                    .strip_suffix(')')
                    .ok_or_else(|| ExactError::Parse(format!("bad term {p:?}")))?;
                let d: u64 = inner
                    .parse()
                    .map_err(|_| ExactError::Parse(format!("bad radicand in {p:?}")))?;
                let c = match &body[..idx] {
                    "" => Rational::one(),
                    pre => super::parse_rational(
                        pre.strip_suffix('*')
                            .ok_or_else(|| ExactError::Parse(format!("bad term {p:?}")))?,
                    )?,
                };
                (c, d)
            } else {
                (super::parse_rational(body)?, 1)
            };
            out.push(coeff * Rational::from_integer(BigInt::from(sign)), rad);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, q};

    fn s(x: &str) -> SurdSum {
        x.parse().unwrap()
    }

    #[test]
    fn squarefree() {
        assert_eq!(squarefree_split(12), (2, 3));
        assert_eq!(squarefree_split(72), (6, 2));
        assert_eq!(squarefree_split(1), (1, 1));
        assert_eq!(squarefree_split(97), (1, 97));
    }

    #[test]
    fn spec_comparisons() {
        let two_root2_over3 = SurdSum::term(q(2, 3), 2);
        assert_eq!(
            surd_compare(&two_root2_over3, &SurdSum::from_rational(q(1, 2))),
            Ordering::Greater
        );
        let a = SurdSum::sqrt_int(2) + SurdSum::sqrt_int(3);
        assert_eq!(surd_compare(&a, &a.clone()), Ordering::Equal);
        assert_eq!(surd_compare(&a, &SurdSum::sqrt_int(10)), Ordering::Less);
    }

    #[test]
    fn products_merge_radicands() {
        let r6 = SurdSum::sqrt_int(2) * SurdSum::sqrt_int(3);
        assert_eq!(r6, SurdSum::sqrt_int(6));
        assert_eq!(
            SurdSum::sqrt_int(2).square(),
            SurdSum::from_rational(int(2))
        );
        assert_eq!(SurdSum::sqrt_int(8), SurdSum::term(int(2), 2));
        assert_eq!(
            SurdSum::sqrt_rational(&q(8, 9)).unwrap(),
            SurdSum::term(q(2, 3), 2)
        );
    }

    #[test]
    fn three_radicand_sign() {
        // sqrt2 + sqrt3 + sqrt5 - sqrt30 ~ -0.0949
        let x = s("sqrt(2)+sqrt(3)+sqrt(5)-sqrt(30)");
        assert_eq!(x.signum(), -1);
        assert_eq!((-x).signum(), 1);
        // 5 - sqrt2 - sqrt3 - sqrt5 ~ -0.3823 < 0
        assert_eq!(s("5-sqrt(2)-sqrt(3)-sqrt(5)").signum(), -1);
    }

    #[test]
    fn rendering_round_trip() {
        for t in [
            "0",
            "1/2",
            "-3*sqrt(2)",
            "1/2-3/4*sqrt(2)+sqrt(5)",
            "-sqrt(7)",
        ] {
            assert_eq!(s(t).to_string(), t);
        }
        assert_eq!(SurdSum::term(q(16, 3), 2).to_string(), "16/3*sqrt(2)");
    }

    #[test]
    fn approx_digits() {
        assert_eq!(SurdSum::sqrt_int(2).approx(5), "1.41421");
        assert_eq!(SurdSum::term(q(-2, 3), 2).approx(4), "-0.9428");
        assert_eq!(SurdSum::from_rational(q(1, 8)).approx(2), "0.13");
        assert_eq!(SurdSum::from_rational(q(41, 12)).approx(0), "3");
    }
}
