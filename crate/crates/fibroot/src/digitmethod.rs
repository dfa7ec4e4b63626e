//! Fibonacci's recursive digit-by-digit integer square root.
//!
//! The method consumes the radicand two digits at a time, most significant
//! pair first. Given the root `a` and residual `r = n - a^2` of the consumed
//! prefix `n`, appending the next digit pair `b1 b0` asks for a single digit
//! `d` such that the new residual
//!
//! ```text
//! r*100 + b1*10 + b0 - 20*a*d - d^2
//! ```
//!
//! is nonnegative (so `d` is not too large) and at most `2*(10*a + d)` (so
//! `d` is not too small). The two conditions single out the same digit; the
//! selection rules in [`DigitRule`] differ only in how they search for it.
//!
//! Besides the root itself, every run produces a [`Trace`] that replays the
//! medieval board writing sequence: radicand placement, root digits, residual
//! insertions, doubled-root digits, and the final remainder. The tableau
//! module turns traces into renderable boards.

use crate::exactnum::{digits_of, Rational, RootResult};
use crate::refine::round_unit_fraction;
use crate::tableau::{Band, CellFlag};
use num::bigint::{BigInt, BigUint};
use num::{Signed, ToPrimitive, Zero};
use std::fmt;
use thiserror::Error;

/// Strategies for picking the next root digit.
///
/// The two exact rules scan for the digit directly; the quotient rules first
/// estimate it by a truncated division and then let [`last_digit`] correct
/// the estimate against the exact conditions. All rules select the same
/// digit; only the search path and the recorded audit differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DigitRule {
    /// Largest digit keeping the new residual nonnegative.
    ExactLargest,
    /// Smallest digit keeping the new residual at most twice the new root.
    ExactSmallest,
    /// Estimate by `(r*100 + b1*10 + b0) / (20*a)`.
    QuotientFull,
    /// Estimate by `(r*10 + b1) / (2*a)`, dropping the ones digit.
    QuotientTens,
    /// Estimate by `r / (2*a div 10)`, dropping another digit from each side.
    QuotientCoarse,
    /// Estimate by `(r div 10) / (2*a div 100)`, coarser still.
    QuotientCoarsest,
}

impl DigitRule {
    /// Every rule, in a fixed order convenient for exhaustive testing.
    pub const ALL: [DigitRule; 6] = [
        DigitRule::ExactLargest,
        DigitRule::ExactSmallest,
        DigitRule::QuotientFull,
        DigitRule::QuotientTens,
        DigitRule::QuotientCoarse,
        DigitRule::QuotientCoarsest,
    ];

    /// True for the four estimate-then-correct rules.
    pub fn is_quotient(self) -> bool {
        !matches!(self, DigitRule::ExactLargest | DigitRule::ExactSmallest)
    }

    /// Stable kebab-case name, used by the CLI and the trace export.
    pub fn name(self) -> &'static str {
        match self {
            DigitRule::ExactLargest => "exact-largest",
            DigitRule::ExactSmallest => "exact-smallest",
            DigitRule::QuotientFull => "q-full",
            DigitRule::QuotientTens => "q-tens",
            DigitRule::QuotientCoarse => "q-coarse",
            DigitRule::QuotientCoarsest => "q-coarsest",
        }
    }

    /// Inverse of [`DigitRule::name`].
    pub fn from_name(name: &str) -> Option<DigitRule> {
        DigitRule::ALL.into_iter().find(|r| r.name() == name)
    }
}

impl fmt::Display for DigitRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// State of the recursion after consuming some prefix of the radicand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialRoot {
    /// Floor square root of the consumed prefix.
    pub root_so_far: BigUint,
    /// Prefix minus the square of `root_so_far`; never exceeds twice the root.
    pub residual: BigUint,
    /// Number of digit groups consumed (the leading group counts as one).
    pub depth: usize,
}

/// How a digit was found: the raw estimate (for quotient rules), the signed
/// number of correction steps, and the exact condition values at the chosen
/// digit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitAudit {
    /// Raw quotient before clamping to 9; `None` for the exact rules and when
    /// the rule fell back.
    pub estimate: Option<BigUint>,
    /// Correction steps applied after clamping: negative when walking down,
    /// positive when walking up, zero when the start stood.
    pub adjustments: i32,
    /// The digit finally selected.
    pub chosen: u8,
    /// New residual at the chosen digit; nonnegative by construction.
    pub bound1_value: BigInt,
    /// Margin `2*(10*a + chosen) - bound1_value`; nonnegative by construction.
    pub bound2_slack: BigInt,
    /// True when a coarse rule's denominator truncated to zero and the
    /// selection silently fell back to the smallest-digit scan.
    pub fallback: bool,
}

/// Signalled by [`quotient_estimate`] when the rule's denominator truncates
/// to zero; callers fall back to the exact smallest-digit scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("quotient rule denominator truncates to zero for this partial root")]
pub struct Fallback;

/// Largest digit whose square does not exceed the leading group.
///
/// # Panics
///
/// Panics unless `leading` is in `1..=99`; a most-significant group is never
/// zero for a nonzero radicand.
pub fn first_digit(leading: u8) -> u8 {
    assert!(
        (1..=99).contains(&leading),
        "leading digit group must be in 1..=99, got {leading}"
    );
    let mut d = 9u8;
    while d * d > leading {
        d -= 1;
    }
    d
}

/// Exact signed value of the would-be residual when appending digit `alpha0`:
/// `r*100 + beta1*10 + beta0 - 20*a*alpha0 - alpha0^2`.
///
/// The chosen digit must keep this nonnegative; the largest such digit is the
/// correct one.
pub fn bound1_value(a: &BigUint, r: &BigUint, beta1: u8, beta0: u8, alpha0: u8) -> BigInt {
    debug_assert!(*r <= (a << 1u32), "residual exceeds twice the partial root");
    let t = BigInt::from(r.clone()) * 100 + (beta1 as i32) * 10 + (beta0 as i32);
    t - BigInt::from(a.clone()) * 20 * (alpha0 as i32) - (alpha0 as i32).pow(2)
}

/// True when the would-be residual for digit `alpha0` is at most twice the
/// new root `10*a + alpha0`. The smallest digit passing this test is the
/// correct one.
pub fn bound2_holds(a: &BigUint, r: &BigUint, beta1: u8, beta0: u8, alpha0: u8) -> bool {
    let lhs = bound1_value(a, r, beta1, beta0, alpha0);
    let rhs = (BigInt::from(a.clone()) * 10 + (alpha0 as i32)) * 2;
    lhs <= rhs
}

/// Raw digit estimate for a quotient rule, before clamping and correction.
///
/// Returns [`Fallback`] when the rule's denominator truncates to zero, which
/// happens for [`DigitRule::QuotientCoarse`] when `a <= 4` and for
/// [`DigitRule::QuotientCoarsest`] when `a <= 49`.
///
/// # Panics
///
/// Panics if `rule` is not a quotient rule or `a` is zero.
pub fn quotient_estimate(
    a: &BigUint,
    r: &BigUint,
    beta1: u8,
    beta0: u8,
    rule: DigitRule,
) -> Result<BigUint, Fallback> {
    assert!(rule.is_quotient(), "estimate requested for an exact rule");
    assert!(!a.is_zero(), "estimate requires a nonzero partial root");
    match rule {
        DigitRule::QuotientFull => {
            let t = r * 100u32 + (beta1 as u32) * 10 + (beta0 as u32);
            Ok(t / (a * 20u32))
        }
        DigitRule::QuotientTens => Ok((r * 10u32 + (beta1 as u32)) / (a * 2u32)),
        DigitRule::QuotientCoarse => {
            let den = (a << 1u32) / 10u32;
            if den.is_zero() {
                Err(Fallback)
            } else {
                Ok(r / den)
            }
        }
        DigitRule::QuotientCoarsest => {
            let den = (a << 1u32) / 100u32;
            if den.is_zero() {
                Err(Fallback)
            } else {
                Ok((r / 10u32) / den)
            }
        }
        DigitRule::ExactLargest | DigitRule::ExactSmallest => unreachable!(),
    }
}

/// Selects the next root digit under `rule` and reports how it was found.
///
/// The result never depends on the rule: quotient estimates are clamped to 9
/// and then corrected downward while the residual would go negative, or
/// upward while it would exceed twice the new root. Both scans terminate
/// within nine steps (digit 0 always passes the first condition, digit 9 the
/// second), and the digit they land on satisfies both conditions.
///
/// # Panics
///
/// Panics if `a` is zero; the leading digit group is handled by
/// [`first_digit`] instead.
pub fn last_digit(
    a: &BigUint,
    r: &BigUint,
    beta1: u8,
    beta0: u8,
    rule: DigitRule,
) -> (u8, DigitAudit) {
    assert!(
        !a.is_zero(),
        "digit selection requires a nonzero partial root"
    );
    let (estimate, start, fallback) = match rule {
        DigitRule::ExactLargest => (None, 9u8, false),
        DigitRule::ExactSmallest => (None, 0u8, false),
        _ => match quotient_estimate(a, r, beta1, beta0, rule) {
            Ok(q) => {
                let start = q.to_u8().map_or(9, |v| v.min(9));
                (Some(q), start, false)
            }
            Err(Fallback) => (None, 0u8, true),
        },
    };
    let mut alpha = start;
    let mut adjustments: i32 = 0;
    while bound1_value(a, r, beta1, beta0, alpha).is_negative() {
        alpha -= 1;
        adjustments -= 1;
    }
    if adjustments == 0 {
        while !bound2_holds(a, r, beta1, beta0, alpha) {
            alpha += 1;
            adjustments += 1;
        }
    }
    let value = bound1_value(a, r, beta1, beta0, alpha);
    let slack = (BigInt::from(a.clone()) * 10i32 + BigInt::from(alpha)) * 2i32 - &value;
    debug_assert!(!value.is_negative() && !slack.is_negative());
    let audit = DigitAudit {
        estimate,
        adjustments,
        chosen: alpha,
        bound1_value: value,
        bound2_slack: slack,
        fallback,
    };
    (alpha, audit)
}

/// One cell written by a trace event: grid column (power-of-ten exponent),
/// band, digit, and flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceCell {
    pub column: u32,
    pub band: Band,
    pub digit: u8,
    pub flag: CellFlag,
}

/// One annotated step of the board-writing sequence. Steps are the subscript
/// ordinals of the board annotation scheme; step 0 places the radicand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEvent {
    pub step: u32,
    /// Line tag, "L:0", "L:1", ...
    pub label: String,
    /// Cells written at this step; empty for the remainder annotation.
    pub cells: Vec<TraceCell>,
    /// Short operation description.
    pub note: String,
}

/// The leading digit group and its root digit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BaseRecord {
    /// Value of the leading group, 0..=99 (0 only for radicand 0).
    pub leading: u8,
    /// Its floor root digit.
    pub digit: u8,
    /// Column of that root digit.
    pub pair_col: u32,
}

/// One recursion stage: the digit pair consumed, the partial root and
/// residual before the stage, and the digit selected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct StageRecord {
    /// Column of the root digit this stage produces.
    pub pair_col: u32,
    /// Partial root before the stage.
    pub a: BigUint,
    /// Residual before the stage.
    pub r: BigUint,
    pub beta1: u8,
    pub beta0: u8,
    /// The digit selected.
    pub digit: u8,
    pub audit: DigitAudit,
}

/// Board presentation a trace realizes to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TracePlan {
    /// One digit group: root digit placed directly.
    Base(BaseRecord),
    /// The presentation of the worked examples: the prefix root is written
    /// down as given and only the final digit is derived on the board.
    FinalStage { stage: StageRecord },
    /// The evolved-board presentation of the scaling procedure: every stage
    /// is worked on one board, with a maintained doubled-root row.
    Unrolled {
        base: BaseRecord,
        stages: Vec<StageRecord>,
    },
}

/// Ordered record of every digit placed during a root extraction.
///
/// A trace stores the arithmetic facts of the run; the board events for a
/// concrete manuscript style are produced by [`Trace::events`], and a full
/// board by [`crate::tableau::build_tableau`].
#[derive(Debug, Clone)]
pub struct Trace {
    pub(crate) radicand: BigUint,
    pub(crate) rule: DigitRule,
    pub(crate) root: BigUint,
    pub(crate) remainder: BigUint,
    pub(crate) plan: TracePlan,
}

impl Trace {
    pub fn radicand(&self) -> &BigUint {
        &self.radicand
    }

    pub fn rule(&self) -> DigitRule {
        self.rule
    }

    pub fn root(&self) -> &BigUint {
        &self.root
    }

    pub fn remainder(&self) -> &BigUint {
        &self.remainder
    }
}

/// One digit-selection situation encountered during a run, for auditing the
/// selection conditions independently of any rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionInstance {
    pub a: BigUint,
    pub r: BigUint,
    pub beta1: u8,
    pub beta0: u8,
    pub chosen: u8,
}

/// Shared engine: consumes digit groups most-significant first and records
/// every stage.
fn run_method(n: &BigUint, rule: DigitRule) -> (BaseRecord, Vec<StageRecord>, PartialRoot) {
    let digits = digits_of(n);
    let len = digits.len();
    let stage_count = (len - 1) / 2;
    let top_col = stage_count as u32;
    let leading = if len.is_multiple_of(2) {
        digits.digit(len - 1) * 10 + digits.digit(len - 2)
    } else {
        digits.digit(len - 1)
    };
    let digit = if leading == 0 {
        0
    } else {
        first_digit(leading)
    };
    let base = BaseRecord {
        leading,
        digit,
        pair_col: top_col,
    };
    let mut a = BigUint::from(digit);
    let mut r = BigUint::from(leading - digit * digit);
    let mut stages = Vec::with_capacity(stage_count);
    for k in 0..stage_count {
        let col = top_col - 1 - k as u32;
        let beta1 = digits.digit(2 * col as usize + 1);
        let beta0 = digits.digit(2 * col as usize);
        let (alpha, audit) = last_digit(&a, &r, beta1, beta0, rule);
        stages.push(StageRecord {
            pair_col: col,
            a: a.clone(),
            r: r.clone(),
            beta1,
            beta0,
            digit: alpha,
            audit,
        });
        // New residual: the selection guarantees this never underflows.
        let t = &r * 100u32 + (beta1 as u32) * 10 + (beta0 as u32);
        r = t - &a * (20 * alpha as u32) - BigUint::from((alpha as u32).pow(2));
        a = a * 10u32 + (alpha as u32);
    }
    let depth = stage_count + 1;
    (
        base,
        stages,
        PartialRoot {
            root_so_far: a,
            residual: r,
            depth,
        },
    )
}

/// Digit-by-digit floor square root under the given selection rule.
///
/// The result equals [`crate::exactnum::isqrt_oracle`] for every rule; the
/// trace realizes to the worked-example board (prefix root written down,
/// final digit derived on the board).
pub fn isqrt_fibonacci(n: &BigUint, rule: DigitRule) -> (RootResult, Trace) {
    let (base, stages, partial) = run_method(n, rule);
    let result = RootResult::new(n.clone(), partial.root_so_far);
    debug_assert_eq!(result.remainder, partial.residual);
    let plan = match stages.last() {
        None => TracePlan::Base(base),
        Some(stage) => TracePlan::FinalStage {
            stage: stage.clone(),
        },
    };
    let trace = Trace {
        radicand: n.clone(),
        rule,
        root: result.root.clone(),
        remainder: result.remainder.clone(),
        plan,
    };
    (result, trace)
}

/// Result of the radicand-scaling procedure.
#[derive(Debug, Clone)]
pub struct ScaleOutcome {
    /// Integer root of the scaled radicand `n * 10^(2*pairs)`.
    pub result: RootResult,
    /// `(root + rounded correction) / 10^pairs`, the fractional approximation
    /// of the root of the original `n`.
    pub descaled: Rational,
    /// Number of zero pairs appended.
    pub pairs: u32,
    /// Evolved-board trace of the scaled computation.
    pub trace: Trace,
}

impl ScaleOutcome {
    /// The descaled value as display components, in the order whole part,
    /// fractional part of `root / 10^pairs`, rounded correction. Either
    /// fraction is `None` when it vanishes. The components sum to
    /// [`ScaleOutcome::descaled`], but the split itself (for example
    /// `85 + 1/20 + 1/400` rather than `85 + 21/400`) is not recoverable from
    /// the canonical sum, which is why it is exposed here.
    pub fn components(&self) -> (BigUint, Option<Rational>, Option<Rational>) {
        let root = &self.result.root;
        let rem = &self.result.remainder;
        if root.is_zero() {
            return (BigUint::zero(), None, None);
        }
        let two_root = root << 1;
        if self.pairs == 0 {
            let corr = (!rem.is_zero())
                .then(|| Rational::new(BigInt::from(rem.clone()), BigInt::from(two_root)).unwrap());
            return (root.clone(), None, corr);
        }
        let scale = BigUint::from(10u32).pow(self.pairs);
        let whole = root / &scale;
        let root_rem = root % &scale;
        let scale_rat = Rational::from_natural(&scale);
        let root_frac =
            (!root_rem.is_zero()).then(|| &Rational::from_natural(&root_rem) / &scale_rat);
        let corr = (!rem.is_zero()).then(|| &round_unit_fraction(rem, &two_root) / &scale_rat);
        (whole, root_frac, corr)
    }
}

/// Scales `n` by `10^(2*pairs)`, extracts the integer root digit by digit,
/// and descales: the approximation to the root of `n` is
/// `(root + round_unit_fraction(remainder, 2*root)) / 10^pairs`, or the exact
/// correction `remainder / (2*root)` when `pairs` is 0.
///
/// The trace uses the evolved-board presentation: one board, one digit per
/// stage, with the doubled-root row maintained between stages.
pub fn scale_and_root(n: &BigUint, pairs: u32) -> ScaleOutcome {
    let scaled = n * BigUint::from(10u32).pow(2 * pairs);
    let (base, stages, partial) = run_method(&scaled, DigitRule::ExactLargest);
    let result = RootResult::new(scaled, partial.root_so_far);
    let descaled = if result.root.is_zero() {
        Rational::zero()
    } else {
        let two_root = &result.root << 1;
        let corr = if pairs == 0 {
            Rational::new(
                BigInt::from(result.remainder.clone()),
                BigInt::from(two_root),
            )
            .unwrap()
        } else {
            round_unit_fraction(&result.remainder, &two_root)
        };
        let scale = Rational::from_natural(&BigUint::from(10u32).pow(pairs));
        &(&Rational::from_natural(&result.root) + &corr) / &scale
    };
    let plan = if stages.is_empty() {
        TracePlan::Base(base)
    } else {
        TracePlan::Unrolled { base, stages }
    };
    let trace = Trace {
        radicand: result.radicand.clone(),
        rule: DigitRule::ExactLargest,
        root: result.root.clone(),
        remainder: result.remainder.clone(),
        plan,
    };
    ScaleOutcome {
        result,
        descaled,
        pairs,
        trace,
    }
}

/// Every digit-selection situation met while rooting `n`, in order. The
/// situations depend only on `n`, never on the rule, because all rules select
/// the same digits.
pub fn selection_instances(n: &BigUint) -> Vec<SelectionInstance> {
    let (_, stages, _) = run_method(n, DigitRule::ExactLargest);
    stages
        .into_iter()
        .map(|s| SelectionInstance {
            a: s.a,
            r: s.r,
            beta1: s.beta1,
            beta0: s.beta0,
            chosen: s.digit,
        })
        .collect()
}
