//! Exact integer square roots the way Fibonacci extracted them.
//!
//! Liber Abaci and De Practica Geometrie work the square root of a number
//! digit by digit: split the radicand into two-digit groups, take the root
//! of the leading group, then repeatedly append the digit whose square,
//! together with twice the partial root, fits under the next two digits of
//! the radicand. This crate implements that procedure in exact arithmetic,
//! together with the bound tests and quotient shortcuts Fibonacci used to
//! pick each digit, his unit-fraction refinement of the remainder, and the
//! positional boards on which the worked examples were laid out.
//!
//! The crate is organised in four modules:
//!
//! * [`exactnum`] holds the digit, partition, and rational scaffolding,
//!   plus a brute-force root used as an independent check.
//! * [`digitmethod`] selects root digits by the explicit bound tests or by
//!   one of four quotient estimates, and runs the full extraction, keeping
//!   a trace of every stage.
//! * [`refine`] sharpens `root + remainder / (2 root)` approximations and
//!   relates them to the Heron and Newton iterations they coincide with.
//! * [`tableau`] lays a trace out as a positional board in one of three
//!   notational styles, renders it as text, parses such text back, and
//!   compares boards cell by cell.
//!
//! ```
//! use fibroot::{isqrt_fibonacci, DigitRule};
//! use num::bigint::BigUint;
//!
//! let (result, _trace) = isqrt_fibonacci(&BigUint::from(743u32), DigitRule::ExactLargest);
//! assert_eq!(result.root, BigUint::from(27u32));
//! assert_eq!(result.remainder, BigUint::from(14u32));
//! ```

pub mod digitmethod;
pub mod exactnum;
pub mod refine;
pub mod tableau;

pub use digitmethod::{
    isqrt_fibonacci, scale_and_root, selection_instances, DigitAudit, DigitRule, Fallback,
    PartialRoot, ScaleOutcome, SelectionInstance, Trace, TraceCell, TraceEvent,
};
pub use exactnum::{
    digits_of, isqrt_oracle, partition, rational_arith, ArithKind, Digits, ExactnumError,
    Partition, Rational, RootResult,
};
pub use refine::{
    heron_step, newton_step, refine_once, refine_second, refine_sequence, round_unit_fraction,
    RefinementStep, StartChoice,
};
pub use tableau::{
    build_tableau, diff_tableau, parse_rendered, render_text, snapshots, Band, Cell, CellFlag,
    Discrepancy, RenderedBoard, Tableau, TableauError, TableauStyle,
};
