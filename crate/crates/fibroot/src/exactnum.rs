//! Unbounded natural-number and exact-rational arithmetic, decimal
//! decomposition, and the brute-force square-root oracle that anchors all
//! testing in this crate.
//!
//! Everything here is exact: naturals are [`num::BigUint`], signed values are
//! [`num::BigInt`], and fractions are [`Rational`], a canonical-form wrapper
//! around `Ratio<BigInt>`. All operations are pure functions over immutable
//! values and are safe to call concurrently.

use num::bigint::{BigInt, BigUint};
use num::rational::Ratio;
use num::{Integer, One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use thiserror::Error;

/// Errors for the fallible operations of this module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ExactnumError {
    /// Division by zero, including construction of a rational with a zero
    /// denominator.
    #[error("division by zero")]
    DivisionByZero,
}

/// Base-10 digits of a natural number, least-significant first.
///
/// The most-significant digit is nonzero unless the represented number is 0,
/// in which case the digit list is exactly `[0]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digits {
    values: Vec<u8>,
}

impl Digits {
    /// The digits, least-significant first. Every element is in `0..=9`.
    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// Number of digits; at least 1.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false: even 0 has one digit.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Digit at position `idx` (0 = ones), or 0 past the most-significant end.
    pub fn digit(&self, idx: usize) -> u8 {
        self.values.get(idx).copied().unwrap_or(0)
    }

    /// Positional reconstruction of the represented number.
    pub fn value(&self) -> BigUint {
        let mut acc = BigUint::zero();
        for &d in self.values.iter().rev() {
            acc = acc * 10u32 + d;
        }
        acc
    }
}

/// Decimal decomposition of `n`, least-significant digit first.
pub fn digits_of(n: &BigUint) -> Digits {
    if n.is_zero() {
        return Digits { values: vec![0] };
    }
    let mut values = Vec::new();
    let ten = BigUint::from(10u32);
    let mut rest = n.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(&ten);
        values.push(r.to_u8().expect("remainder mod 10 fits in u8"));
        rest = q;
    }
    Digits { values }
}

/// A radicand split as `head * 100 + tens * 10 + ones`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    /// The radicand with its last two digits removed.
    pub head: BigUint,
    /// The tens digit.
    pub tens: u8,
    /// The ones digit.
    pub ones: u8,
}

/// Splits `n` into the head above the last digit pair and the pair itself.
///
/// Reconstructing `head * 100 + tens * 10 + ones` yields `n` again; `head` is
/// 0 for `n < 100`.
pub fn partition(n: &BigUint) -> Partition {
    let (head, pair) = n.div_rem(&BigUint::from(100u32));
    let pair = pair.to_u8().expect("value mod 100 fits in u8");
    Partition {
        head,
        tens: pair / 10,
        ones: pair % 10,
    }
}

/// An integer square root together with the value it was taken of.
///
/// Invariants, checked at construction: `root^2 <= radicand < (root+1)^2`,
/// `remainder = radicand - root^2`, and therefore `remainder <= 2 * root`.
/// The boundary `remainder = 2 * root` is legal (the root of 960 is 30 with
/// remainder 60).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootResult {
    /// The number the root was taken of.
    pub radicand: BigUint,
    /// The integer part of the square root.
    pub root: BigUint,
    /// `radicand - root^2`.
    pub remainder: BigUint,
}

impl RootResult {
    /// Builds a result from a radicand and its floor square root.
    ///
    /// # Panics
    ///
    /// Panics if `root` is not the floor square root of `radicand`.
    pub fn new(radicand: BigUint, root: BigUint) -> Self {
        let square = &root * &root;
        assert!(square <= radicand, "root too large for radicand");
        let remainder = &radicand - square;
        assert!(
            remainder <= (&root << 1),
            "root too small for radicand (remainder exceeds twice the root)"
        );
        RootResult {
            radicand,
            root,
            remainder,
        }
    }
}

impl fmt::Display for RootResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root {} remainder {}", self.root, self.remainder)
    }
}

/// Floor square root by binary search.
///
/// This is the definitional oracle used to test the digit-by-digit method; it
/// deliberately shares no code with it.
pub fn isqrt_oracle(n: &BigUint) -> RootResult {
    // hi = 2^ceil(bits/2) guarantees hi^2 >= 2^bits > n, so lo^2 <= n < hi^2
    // holds on entry and is maintained below.
    let mut lo = BigUint::zero();
    let mut hi = BigUint::one() << n.bits().div_ceil(2);
    while &hi - &lo > BigUint::one() {
        let mid = (&lo + &hi) >> 1;
        if &mid * &mid <= *n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    RootResult::new(n.clone(), lo)
}

/// An exact fraction in canonical form: the denominator is positive, the
/// numerator carries the sign, and gcd(|numerator|, denominator) = 1. Every
/// operation preserves canonical form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(Ratio<BigInt>);

impl Rational {
    /// Builds `numer / denom` in canonical form.
    ///
    /// A zero denominator is reported as [`ExactnumError::DivisionByZero`].
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, ExactnumError> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(ExactnumError::DivisionByZero);
        }
        Ok(Rational(Ratio::new(numer.into(), denom)))
    }

    /// The integer `n` as a rational.
    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(Ratio::from_integer(n.into()))
    }

    /// The natural number `n` as a rational.
    pub fn from_natural(n: &BigUint) -> Self {
        Rational(Ratio::from_integer(BigInt::from(n.clone())))
    }

    /// Zero.
    pub fn zero() -> Self {
        Rational(Ratio::zero())
    }

    /// One.
    pub fn one() -> Self {
        Rational(Ratio::one())
    }

    /// The canonical numerator (carries the sign).
    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// The canonical denominator (always positive).
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.numer().is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.numer().is_positive()
    }

    /// True when the denominator is 1.
    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Absolute value.
    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// `self * self`.
    pub fn square(&self) -> Self {
        Rational(&self.0 * &self.0)
    }

    /// Mixed-number rendering: "27 7/27" in modern order, or "7/27 27" with
    /// `fraction_first` set, following the manuscript convention of writing
    /// the fractional part before the whole part. Pure integers render with
    /// no fractional part, pure fractions with no whole part.
    pub fn mixed(&self, fraction_first: bool) -> String {
        if self.is_negative() {
            return format!("-{}", self.abs().mixed(fraction_first));
        }
        let whole = self.0.trunc();
        let frac = &self.0 - &whole;
        if frac.is_zero() {
            return whole.numer().to_string();
        }
        let frac_str = format!("{}/{}", frac.numer(), frac.denom());
        if whole.is_zero() {
            return frac_str;
        }
        if fraction_first {
            format!("{} {}", frac_str, whole.numer())
        } else {
            format!("{} {}", whole.numer(), frac_str)
        }
    }
}

impl fmt::Display for Rational {
    /// Canonical fraction rendering: "n/d", or just "n" for integers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl Sub for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational(&self.0 - &rhs.0)
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

impl Div for &Rational {
    type Output = Rational;

    /// # Panics
    ///
    /// Panics when `rhs` is zero; use [`rational_arith`] for the checked form.
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// The four exact arithmetic operations on rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact rational arithmetic in canonical form. Division by zero is reported
/// as an error value rather than a panic.
pub fn rational_arith(
    lhs: &Rational,
    rhs: &Rational,
    kind: ArithKind,
) -> Result<Rational, ExactnumError> {
    match kind {
        ArithKind::Add => Ok(lhs + rhs),
        ArithKind::Sub => Ok(lhs - rhs),
        ArithKind::Mul => Ok(lhs * rhs),
        ArithKind::Div => {
            if rhs.is_zero() {
                Err(ExactnumError::DivisionByZero)
            } else {
                Ok(lhs / rhs)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn digits_examples() {
        assert_eq!(digits_of(&big(864)).values(), &[4, 6, 8]);
        assert_eq!(digits_of(&big(0)).values(), &[0]);
        assert_eq!(digits_of(&big(9876543)).values(), &[3, 4, 5, 6, 7, 8, 9]);
    }

    #[test]
    fn digits_round_trip() {
        for n in (0u64..2000).chain([99999, 1002003004005006007]) {
            let n = big(n);
            assert_eq!(digits_of(&n).value(), n);
        }
    }

    #[test]
    fn partition_examples() {
        let p = partition(&big(12345));
        assert_eq!((p.head, p.tens, p.ones), (big(123), 4, 5));
        let p = partition(&big(7));
        assert_eq!((p.head, p.tens, p.ones), (big(0), 0, 7));
        let p = partition(&big(743));
        assert_eq!((p.head, p.tens, p.ones), (big(7), 4, 3));
    }

    #[test]
    fn partition_identity() {
        for n in 0u64..5000 {
            let n = big(n);
            let p = partition(&n);
            assert_eq!(p.head * 100u32 + (p.tens as u32) * 10 + (p.ones as u32), n);
        }
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(isqrt_oracle(&big(25)), RootResult::new(big(25), big(5)));
        assert_eq!(isqrt_oracle(&big(864)), RootResult::new(big(864), big(29)));
        assert_eq!(
            isqrt_oracle(&big(927435)),
            RootResult::new(big(927435), big(963))
        );
    }

    #[test]
    fn oracle_soundness_small_range() {
        for n in 0u64..20000 {
            let res = isqrt_oracle(&big(n));
            let a = res.root.to_u64().unwrap();
            assert!(a * a <= n && n < (a + 1) * (a + 1), "n = {n}");
            assert_eq!(res.remainder, big(n - a * a));
        }
    }

    #[test]
    fn oracle_matches_independent_newton_sqrt() {
        use num::integer::Roots;
        for n in [0u64, 1, 2, 3, 99, 100, 12345, 999999937, u64::MAX] {
            assert_eq!(isqrt_oracle(&big(n)).root, big(n.sqrt()));
        }
    }

    #[test]
    fn rational_examples() {
        // 3 + 1/6 - 1/228 = 721/228
        let a = rat(19, 6);
        let b = rat(1, 228);
        assert_eq!(
            rational_arith(&a, &b, ArithKind::Sub).unwrap(),
            rat(721, 228)
        );
        assert_eq!(
            rational_arith(&rat(1, 2), &rat(1, 2), ArithKind::Add).unwrap(),
            rat(1, 1)
        );
        let c = rat(11, 321);
        assert_eq!(
            rational_arith(&c, &c, ArithKind::Mul).unwrap(),
            rat(121, 103041)
        );
    }

    #[test]
    fn rational_division_by_zero_is_an_error() {
        assert_eq!(
            rational_arith(&rat(1, 2), &Rational::zero(), ArithKind::Div),
            Err(ExactnumError::DivisionByZero)
        );
        assert_eq!(Rational::new(1, 0), Err(ExactnumError::DivisionByZero));
    }

    #[test]
    fn rational_canonical_form() {
        let r = rat(4, -8);
        assert_eq!(r.numer(), &BigInt::from(-1));
        assert_eq!(r.denom(), &BigInt::from(2));
        let r = rat(-6, -4);
        assert_eq!(r, rat(3, 2));
    }

    #[test]
    fn mixed_rendering() {
        assert_eq!(rat(736, 27).mixed(false), "27 7/27");
        assert_eq!(rat(736, 27).mixed(true), "7/27 27");
        assert_eq!(rat(5, 1).mixed(false), "5");
        assert_eq!(rat(1, 6).mixed(false), "1/6");
        assert_eq!(rat(-19, 6).mixed(false), "-3 1/6");
        assert_eq!(rat(19, 6).to_string(), "19/6");
        assert_eq!(rat(10, 2).to_string(), "5");
    }
}
