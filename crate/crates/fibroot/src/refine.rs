//! Exact rational refinement of an integer square root.
//!
//! Starting from an integer approximation `a` of `sqrt(n)`, one refinement
//! step adds the correction `(n - a^2) / (2a)`, giving
//! `a1 = (a^2 + n) / (2a)`. By the arithmetic-geometric mean inequality `a1`
//! is at least `sqrt(n)` whatever positive `a` was used, so from the second
//! step on the correction is never positive. All arithmetic is exact: each
//! step records its correction and the signed residual `n - approx^2`, which
//! is always the negated square of the correction.
//!
//! The same update is Heron's rule `(x + n/x) / 2` and Newton's iteration on
//! `x^2 - n`; [`heron_step`] and [`newton_step`] compute those forms
//! independently so the equivalence can be observed rather than assumed.
//!
//! [`round_unit_fraction`] is the companion rounding device: a remainder
//! ratio `r/d` is replaced by the largest unit fraction not exceeding it,
//! `1/ceil(d/r)`.

use crate::exactnum::{isqrt_oracle, Rational};
use num::bigint::{BigInt, BigUint};
use num::{Integer, One, Zero};
use std::fmt;

/// Which integer approximation a refinement sequence starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StartChoice {
    /// Start from `floor(sqrt(n))`.
    Floor,
    /// Start from `ceil(sqrt(n))`.
    Ceiling,
}

impl StartChoice {
    /// Stable lowercase name, used by the CLI.
    pub fn name(self) -> &'static str {
        match self {
            StartChoice::Floor => "floor",
            StartChoice::Ceiling => "ceiling",
        }
    }

    /// Inverse of [`StartChoice::name`].
    pub fn from_name(name: &str) -> Option<StartChoice> {
        match name {
            "floor" => Some(StartChoice::Floor),
            "ceiling" => Some(StartChoice::Ceiling),
            _ => None,
        }
    }
}

impl fmt::Display for StartChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One refinement step: the new approximation, the signed correction that
/// produced it from the previous approximation, and the signed residual
/// `n - approx^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementStep {
    pub approx: Rational,
    pub correction: Rational,
    pub residual: Rational,
}

/// First refinement from the floor root: given `a = floor(sqrt(n))` and
/// `r = n - a^2`, adds `r / (2a)`.
///
/// The residual of the result is exactly `-(r/(2a))^2`.
///
/// # Panics
///
/// Panics if `a` is zero, if `a^2 + r != n`, or if `r > 2a` (that is, if `a`
/// is not the floor root of `n`).
pub fn refine_once(a: &BigUint, r: &BigUint, n: &BigUint) -> RefinementStep {
    assert!(!a.is_zero(), "refinement requires a positive approximation");
    assert_eq!(a * a + r, *n, "residual does not match the approximation");
    assert!(*r <= (a << 1), "approximation is not the floor root");
    let correction =
        Rational::new(BigInt::from(r.clone()), BigInt::from(a << 1)).expect("2a is nonzero");
    let approx = &Rational::from_natural(a) + &correction;
    let residual = -&correction.square();
    debug_assert_eq!(&Rational::from_natural(n) - &approx.square(), residual);
    RefinementStep {
        approx,
        correction,
        residual,
    }
}

/// Refinement from an approximation already at or above the true root: adds
/// the nonpositive correction `(n - approx^2) / (2 * approx)`.
///
/// Every output of [`refine_once`] or of this function satisfies the
/// precondition, so steps can be chained indefinitely.
///
/// # Panics
///
/// Panics if `approx` is not positive or if `approx^2 < n`.
pub fn refine_second(approx: &Rational, n: &BigUint) -> RefinementStep {
    assert!(
        approx.is_positive(),
        "refinement requires a positive approximation"
    );
    let n_rat = Rational::from_natural(n);
    let square = approx.square();
    assert!(square >= n_rat, "approximation is below the true root");
    let correction = &(&n_rat - &square) / &(approx + approx);
    let next = approx + &correction;
    let residual = -&correction.square();
    debug_assert_eq!(&n_rat - &next.square(), residual);
    RefinementStep {
        approx: next,
        correction,
        residual,
    }
}

/// Heron's update `(x + n/x) / 2`, computed in that shape.
///
/// # Panics
///
/// Panics if `x` is not positive.
pub fn heron_step(x: &Rational, n: &BigUint) -> Rational {
    assert!(x.is_positive(), "Heron's rule requires a positive iterate");
    let two = Rational::from_integer(2);
    &(x + &(&Rational::from_natural(n) / x)) / &two
}

/// Newton's update `x - (x^2 - n) / (2x)` on `x^2 - n`, computed in that
/// shape.
///
/// # Panics
///
/// Panics if `x` is not positive.
pub fn newton_step(x: &Rational, n: &BigUint) -> Rational {
    assert!(
        x.is_positive(),
        "Newton's iteration requires a positive iterate"
    );
    x - &(&(&x.square() - &Rational::from_natural(n)) / &(x + x))
}

/// Largest unit fraction not exceeding `r / d`: zero when `r` is zero,
/// otherwise `1 / ceil(d / r)`.
///
/// # Panics
///
/// Panics if `r > d` (the ratio must not exceed one) or if both are zero.
pub fn round_unit_fraction(r: &BigUint, d: &BigUint) -> Rational {
    if r.is_zero() {
        assert!(!d.is_zero(), "0/0 has no unit-fraction rounding");
        return Rational::zero();
    }
    assert!(r <= d, "ratio exceeds one");
    let k = d.div_ceil(r);
    Rational::new(BigInt::one(), BigInt::from(k)).expect("ceiling of d/r is positive")
}

/// Chain of refinement steps for `sqrt(n)` from the chosen integer start.
///
/// The first step refines the floor or ceiling root; later steps refine the
/// previous approximation. The sequence is cut short once a residual of zero
/// is reached (the root is exact), so the result may hold fewer than `steps`
/// entries.
///
/// # Panics
///
/// Panics if `n` is zero.
pub fn refine_sequence(n: &BigUint, start: StartChoice, steps: u32) -> Vec<RefinementStep> {
    assert!(!n.is_zero(), "refinement requires a positive radicand");
    let mut out = Vec::with_capacity(steps as usize);
    if steps == 0 {
        return out;
    }
    let floor = isqrt_oracle(n);
    let first = match start {
        StartChoice::Floor => refine_once(&floor.root, &floor.remainder, n),
        StartChoice::Ceiling => {
            let a0 = if floor.remainder.is_zero() {
                floor.root
            } else {
                floor.root + 1u32
            };
            refine_second(&Rational::from_natural(&a0), n)
        }
    };
    out.push(first);
    for _ in 1..steps {
        let (approx, done) = {
            let last = out.last().expect("sequence is nonempty");
            (last.approx.clone(), last.residual.is_zero())
        };
        if done {
            break;
        }
        out.push(refine_second(&approx, n));
    }
    out
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
    fn refine_once_for_ten() {
        let step = refine_once(&big(3), &big(1), &big(10));
        assert_eq!(step.correction, rat(1, 6));
        assert_eq!(step.approx, rat(19, 6));
        assert_eq!(step.residual, rat(-1, 36));
    }

    #[test]
    fn refine_once_for_large_radicand() {
        let step = refine_once(&big(963), &big(66), &big(927435));
        assert_eq!(step.correction, rat(11, 321));
        assert_eq!(step.approx, rat(309134, 321));
        assert_eq!(step.residual, rat(-121, 103041));
    }

    #[test]
    #[should_panic(expected = "floor root")]
    fn refine_once_rejects_undershoot() {
        // 3 with residual 7 describes 16, whose floor root is 4.
        refine_once(&big(3), &big(7), &big(16));
    }

    #[test]
    fn refine_second_continues_the_chain() {
        let step = refine_second(&rat(19, 6), &big(10));
        assert_eq!(step.correction, rat(-1, 228));
        assert_eq!(step.approx, rat(721, 228));
        assert_eq!(step.residual, rat(-1, 51984));
    }

    #[test]
    fn second_step_correction_for_large_radicand() {
        let first = refine_once(&big(963), &big(66), &big(927435));
        let second = refine_second(&first.approx, &big(927435));
        assert_eq!(second.correction, rat(-121, 198464028));
    }

    #[test]
    fn residual_is_negated_square_of_correction() {
        for n in 2u64..400 {
            let floor = isqrt_oracle(&big(n));
            let step = refine_once(&floor.root, &floor.remainder, &big(n));
            assert_eq!(step.residual, -&step.correction.square());
            let next = refine_second(&step.approx, &big(n));
            assert_eq!(next.residual, -&next.correction.square());
        }
    }

    #[test]
    fn heron_and_newton_match_the_chain() {
        for n in [2u64, 10, 17, 99, 927435] {
            for start in [StartChoice::Floor, StartChoice::Ceiling] {
                let steps = refine_sequence(&big(n), start, 4);
                let floor = isqrt_oracle(&big(n));
                let a0 = match start {
                    StartChoice::Floor => floor.root,
                    StartChoice::Ceiling => {
                        if floor.remainder.is_zero() {
                            floor.root
                        } else {
                            floor.root + 1u32
                        }
                    }
                };
                let mut heron = Rational::from_natural(&a0);
                let mut newton = heron.clone();
                for step in &steps {
                    heron = heron_step(&heron, &big(n));
                    newton = newton_step(&newton, &big(n));
                    assert_eq!(heron, step.approx, "Heron diverges at {n} from {start}");
                    assert_eq!(newton, step.approx, "Newton diverges at {n} from {start}");
                }
            }
        }
    }

    #[test]
    fn sequence_for_ten_from_floor() {
        let steps = refine_sequence(&big(10), StartChoice::Floor, 2);
        assert_eq!(steps.len(), 2);
        assert_eq!(steps[0].approx, rat(19, 6));
        assert_eq!(steps[1].approx, rat(721, 228));
    }

    #[test]
    fn sequence_for_ten_from_ceiling() {
        let steps = refine_sequence(&big(10), StartChoice::Ceiling, 1);
        assert_eq!(steps[0].correction, rat(-3, 4));
        assert_eq!(steps[0].approx, rat(13, 4));
        assert_eq!(steps[0].residual, rat(-9, 16));
    }

    #[test]
    fn sequence_stops_at_exact_roots() {
        for start in [StartChoice::Floor, StartChoice::Ceiling] {
            let steps = refine_sequence(&big(25), start, 3);
            assert_eq!(steps.len(), 1, "from {start}");
            assert_eq!(steps[0].approx, rat(5, 1));
            assert!(steps[0].residual.is_zero());
            assert!(steps[0].correction.is_zero());
        }
    }

    #[test]
    fn sequence_with_zero_steps_is_empty() {
        assert!(refine_sequence(&big(10), StartChoice::Floor, 0).is_empty());
    }

    #[test]
    #[should_panic(expected = "positive radicand")]
    fn sequence_rejects_zero() {
        refine_sequence(&big(0), StartChoice::Floor, 1);
    }

    #[test]
    fn first_step_lands_at_or_above_the_root() {
        for n in 2u64..200 {
            for start in [StartChoice::Floor, StartChoice::Ceiling] {
                let steps = refine_sequence(&big(n), start, 1);
                assert!(
                    steps[0].approx.square() >= Rational::from_natural(&big(n)),
                    "first approximation below the root for {n} from {start}"
                );
            }
        }
    }

    #[test]
    fn unit_fraction_examples() {
        assert_eq!(round_unit_fraction(&big(4975), &big(17010)), rat(1, 4));
        assert_eq!(round_unit_fraction(&big(11), &big(642)), rat(1, 59));
        assert_eq!(round_unit_fraction(&big(1), &big(6)), rat(1, 6));
        assert_eq!(round_unit_fraction(&big(5), &big(10)), rat(1, 2));
        assert_eq!(round_unit_fraction(&big(7), &big(7)), rat(1, 1));
        assert!(round_unit_fraction(&big(0), &big(9)).is_zero());
    }

    #[test]
    fn unit_fraction_never_exceeds_the_ratio() {
        for d in 1u64..60 {
            for r in 0..=d {
                let rounded = round_unit_fraction(&big(r), &big(d));
                let ratio = Rational::new(r as i64, d as i64).unwrap();
                assert!(rounded <= ratio, "rounding overshoots {r}/{d}");
                if r > 0 {
                    // The next larger unit fraction overshoots.
                    let denom = rounded.denom().clone();
                    if denom > BigInt::one() {
                        let larger = Rational::new(BigInt::one(), denom - 1).unwrap();
                        assert!(larger > ratio, "rounding is not the largest for {r}/{d}");
                    }
                }
            }
        }
    }
}
