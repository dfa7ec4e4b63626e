//! Calculation boards: realizing traces as annotated cell grids.
//!
//! A [`Tableau`] is the abstract state of a medieval calculation board. Cells
//! live on a column grid shared with the radicand (column = power of ten) and
//! are sorted into horizontal bands: working figures above the radicand, the
//! radicand itself, and the root and doubled-root rows below it. Every cell
//! carries the step at which it was written, so a board can be replayed one
//! writing act at a time ([`snapshots`]) or shown in its final state
//! ([`build_tableau`]).
//!
//! Boards render to plain text ([`render_text`]), rendered text parses back
//! ([`parse_rendered`]), and two boards can be compared cell by cell
//! ([`diff_tableau`]), which is how transcriptions of the manuscript figures
//! are checked against freshly computed runs.

mod diff;
mod parse;
mod realize;
mod render;

pub use diff::{diff_tableau, Discrepancy};
pub use parse::parse_rendered;
pub use render::{render_text, RenderedBoard};

pub(crate) use realize::realize;

use crate::digitmethod::Trace;
use num::bigint::BigUint;
use std::fmt;
use thiserror::Error;

/// Board presentation conventions of the three source figure families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableauStyle {
    /// Liber Abaci, 1228 autograph tradition: the root digits double as the
    /// divisor row, and working figures are place-aligned.
    La1228,
    /// Liber Abaci, 1202 tradition: as [`TableauStyle::La1228`], but a
    /// multi-digit working figure is stacked in its insertion column rather
    /// than spread across columns.
    La1202,
    /// De Practica Geometrie: a separate doubled-root row and a full cascade
    /// of working figures, one per subtraction.
    Pg,
}

impl TableauStyle {
    /// Every style, in a fixed order convenient for exhaustive testing.
    pub const ALL: [TableauStyle; 3] =
        [TableauStyle::La1228, TableauStyle::La1202, TableauStyle::Pg];

    /// Stable lowercase name, used by the CLI and the trace export.
    pub fn name(self) -> &'static str {
        match self {
            TableauStyle::La1228 => "la1228",
            TableauStyle::La1202 => "la1202",
            TableauStyle::Pg => "pg",
        }
    }

    /// Inverse of [`TableauStyle::name`].
    pub fn from_name(name: &str) -> Option<TableauStyle> {
        TableauStyle::ALL.into_iter().find(|s| s.name() == name)
    }

    pub(crate) fn is_la(self) -> bool {
        matches!(self, TableauStyle::La1228 | TableauStyle::La1202)
    }
}

impl fmt::Display for TableauStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Horizontal band a cell belongs to, from the top of the board down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Band {
    /// Working figures above the radicand: residuals and cascade insertions.
    Residual,
    /// The radicand digits.
    Radicand,
    /// The root digits.
    Root,
    /// The doubled-root (divisor) digits.
    DoubledRoot,
    /// The final remainder, kept as a bracketed margin annotation.
    Remainder,
}

impl Band {
    /// Stable kebab-case name, used by the trace export.
    pub fn name(self) -> &'static str {
        match self {
            Band::Residual => "residual",
            Band::Radicand => "radicand",
            Band::Root => "root",
            Band::DoubledRoot => "doubled-root",
            Band::Remainder => "remainder",
        }
    }

    /// Inverse of [`Band::name`].
    pub fn from_name(name: &str) -> Option<Band> {
        [
            Band::Residual,
            Band::Radicand,
            Band::Root,
            Band::DoubledRoot,
            Band::Remainder,
        ]
        .into_iter()
        .find(|b| b.name() == name)
    }
}

impl fmt::Display for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Life cycle of a cell on the board.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellFlag {
    /// An ordinary written digit.
    Normal,
    /// A digit judged to be a later insertion in the source figure; produced
    /// only when tagging transcriptions, never by computed runs.
    Inserted,
    /// A digit replaced by a rewrite at the given step. Hidden by the
    /// renderer; snapshots taken before `at` show it as normal.
    Overwritten { at: u32 },
}

/// One digit on the board.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    /// Power-of-ten column, shared with the radicand (0 = ones).
    pub column: u32,
    pub band: Band,
    /// Digit value, 0..=9.
    pub digit: u8,
    /// Step at which the digit was written; 0 places the radicand.
    pub step: u32,
    pub flag: CellFlag,
}

/// Abstract board state: a radicand and every cell written so far, in
/// writing order. Cells in one column and band stack in writing order; the
/// renderer grows the stack away from the radicand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    pub style: TableauStyle,
    pub radicand: BigUint,
    pub cells: Vec<Cell>,
}

/// Parsing and comparison failures for rendered boards.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("rendered board has no radicand row")]
    MissingRadicand,
    #[error("rendered board has more than one radicand row")]
    AmbiguousRadicand,
    #[error("line {line}: token {token:?} does not start at any radicand column")]
    Misaligned { line: usize, token: String },
    #[error("line {line}: token {token:?} is not a board cell")]
    BadToken { line: usize, token: String },
    #[error("rendered board has more than two rows below the radicand")]
    ExtraRows,
    #[error("the boards describe different radicands")]
    RadicandMismatch,
}

/// Board state after the last step of the trace, realized for `style`.
pub fn build_tableau(trace: &Trace, style: TableauStyle) -> Tableau {
    let realization = realize(trace, style);
    let last = realization.events.last().map_or(0, |e| e.step);
    board_at(trace, style, &realization, last)
}

/// One board per step: element `i` is the board state once every writing act
/// up to and including step `i` has happened. The first element shows only
/// the radicand, the last equals [`build_tableau`].
pub fn snapshots(trace: &Trace, style: TableauStyle) -> Vec<Tableau> {
    let realization = realize(trace, style);
    let last = realization.events.last().map_or(0, |e| e.step);
    (0..=last)
        .map(|upto| board_at(trace, style, &realization, upto))
        .collect()
}

fn board_at(
    trace: &Trace,
    style: TableauStyle,
    realization: &realize::Realization,
    upto: u32,
) -> Tableau {
    let mut cells = Vec::new();
    for event in &realization.events {
        if event.step > upto {
            break;
        }
        for cell in &event.cells {
            // A rewrite later than this snapshot has not happened yet.
            let flag = match cell.flag {
                CellFlag::Overwritten { at } if at > upto => CellFlag::Normal,
                other => other,
            };
            cells.push(Cell {
                column: cell.column,
                band: cell.band,
                digit: cell.digit,
                step: event.step,
                flag,
            });
        }
    }
    if let Some(step) = realization.remainder_step {
        if step <= upto {
            for (i, &digit) in crate::exactnum::digits_of(trace.remainder())
                .values()
                .iter()
                .enumerate()
            {
                cells.push(Cell {
                    column: i as u32,
                    band: Band::Remainder,
                    digit,
                    step,
                    flag: CellFlag::Normal,
                });
            }
        }
    }
    Tableau {
        style,
        radicand: trace.radicand().clone(),
        cells,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digitmethod::{isqrt_fibonacci, DigitRule};

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn board(n: u64, style: TableauStyle) -> Tableau {
        let (_, trace) = isqrt_fibonacci(&big(n), DigitRule::ExactLargest);
        build_tableau(&trace, style)
    }

    fn digits_at(t: &Tableau, band: Band, column: u32) -> Vec<u8> {
        t.cells
            .iter()
            .filter(|c| c.band == band && c.column == column && c.flag != CellFlag::Inserted)
            .map(|c| c.digit)
            .collect()
    }

    #[test]
    fn style_and_band_names_round_trip() {
        for style in TableauStyle::ALL {
            assert_eq!(TableauStyle::from_name(style.name()), Some(style));
        }
        for band in [
            Band::Residual,
            Band::Radicand,
            Band::Root,
            Band::DoubledRoot,
            Band::Remainder,
        ] {
            assert_eq!(Band::from_name(band.name()), Some(band));
        }
        assert_eq!(TableauStyle::from_name("gothic"), None);
        assert_eq!(Band::from_name("margin"), None);
    }

    #[test]
    fn the_864_board_has_the_expected_cells() {
        let t = board(864, TableauStyle::Pg);
        // Radicand 8 6 4 across columns 2..0.
        assert_eq!(digits_at(&t, Band::Radicand, 2), vec![8]);
        assert_eq!(digits_at(&t, Band::Radicand, 1), vec![6]);
        assert_eq!(digits_at(&t, Band::Radicand, 0), vec![4]);
        // Residual 4 from the prefix, then the cascade figure 10 stacked
        // above it: 1 on top of the 4, 0 in the next column.
        assert_eq!(digits_at(&t, Band::Residual, 2), vec![4, 1]);
        assert_eq!(digits_at(&t, Band::Residual, 1), vec![0]);
        // Root 2 9, doubled row 4.
        assert_eq!(digits_at(&t, Band::Root, 1), vec![2]);
        assert_eq!(digits_at(&t, Band::Root, 0), vec![9]);
        assert_eq!(digits_at(&t, Band::DoubledRoot, 1), vec![4]);
        assert!(digits_at(&t, Band::DoubledRoot, 0).is_empty());
        // Remainder 23 in the margin.
        assert_eq!(digits_at(&t, Band::Remainder, 1), vec![2]);
        assert_eq!(digits_at(&t, Band::Remainder, 0), vec![3]);
        // Steps: radicand at 0, remainder written last at 6.
        let max_step = t.cells.iter().map(|c| c.step).max().unwrap();
        assert_eq!(max_step, 6);
        assert!(t
            .cells
            .iter()
            .filter(|c| c.band == Band::Radicand)
            .all(|c| c.step == 0));
    }

    #[test]
    fn snapshot_count_matches_the_step_count() {
        let (_, trace) = isqrt_fibonacci(&big(864), DigitRule::ExactLargest);
        let boards = snapshots(&trace, TableauStyle::Pg);
        assert_eq!(boards.len(), 7);
        assert_eq!(boards.last().unwrap(), &board(864, TableauStyle::Pg));
        // The first snapshot holds the radicand alone.
        assert!(boards[0].cells.iter().all(|c| c.band == Band::Radicand));
        assert_eq!(boards[0].cells.len(), 3);

        let (_, trace) = isqrt_fibonacci(&big(4), DigitRule::ExactLargest);
        assert_eq!(snapshots(&trace, TableauStyle::La1228).len(), 2);
    }

    #[test]
    fn snapshots_grow_monotonically() {
        let (_, trace) = isqrt_fibonacci(&big(98765), DigitRule::ExactLargest);
        for style in TableauStyle::ALL {
            let boards = snapshots(&trace, style);
            for pair in boards.windows(2) {
                assert!(pair[0].cells.len() < pair[1].cells.len());
                // Every earlier cell position survives into the next board.
                for (i, cell) in pair[0].cells.iter().enumerate() {
                    let next = &pair[1].cells[i];
                    assert_eq!(
                        (cell.column, cell.band, cell.digit, cell.step),
                        (next.column, next.band, next.digit, next.step)
                    );
                }
            }
        }
    }

    #[test]
    fn zero_board_is_a_lone_radicand_digit() {
        let t = board(0, TableauStyle::La1228);
        assert_eq!(t.cells.len(), 1);
        assert_eq!(t.cells[0].band, Band::Radicand);
        assert_eq!(t.cells[0].digit, 0);
    }

    #[test]
    fn la_boards_mirror_root_digits_into_the_divisor_row() {
        let t = board(743, TableauStyle::La1228);
        assert_eq!(digits_at(&t, Band::Root, 1), vec![2]);
        assert_eq!(digits_at(&t, Band::Root, 0), vec![7]);
        assert_eq!(digits_at(&t, Band::DoubledRoot, 1), vec![2]);
        assert_eq!(digits_at(&t, Band::DoubledRoot, 0), vec![7]);
        // Residual 3 above the hundreds, insertion 6 above the tens.
        assert_eq!(digits_at(&t, Band::Residual, 2), vec![3]);
        assert_eq!(digits_at(&t, Band::Residual, 1), vec![6]);
        assert_eq!(digits_at(&t, Band::Remainder, 1), vec![1]);
        assert_eq!(digits_at(&t, Band::Remainder, 0), vec![4]);
    }

    #[test]
    fn la1202_stacks_wide_insertions_in_one_column() {
        // 8754: the insertion figure is 11. The 1228 layout spreads it over
        // columns 2 and 1; the 1202 layout stacks both digits in column 1.
        let spread = board(8754, TableauStyle::La1228);
        assert_eq!(digits_at(&spread, Band::Residual, 2), vec![6, 1]);
        assert_eq!(digits_at(&spread, Band::Residual, 1), vec![1]);
        let stacked = board(8754, TableauStyle::La1202);
        assert_eq!(digits_at(&stacked, Band::Residual, 2), vec![6]);
        assert_eq!(digits_at(&stacked, Band::Residual, 1), vec![1, 1]);
    }

    #[test]
    fn overwritten_cells_resolve_by_snapshot_time() {
        use crate::digitmethod::scale_and_root;
        let out = scale_and_root(&big(7234), 2);
        let boards = snapshots(&out.trace, TableauStyle::La1228);
        assert_eq!(boards.len(), 17);
        // The first doubled row (16, written at step 3) is rewritten at step
        // 8: visible and normal before, flagged from step 8 on.
        let live_at = |i: usize, col: u32| -> Vec<(u8, CellFlag)> {
            boards[i]
                .cells
                .iter()
                .filter(|c| c.band == Band::DoubledRoot && c.column == col)
                .map(|c| (c.digit, c.flag))
                .collect()
        };
        assert_eq!(live_at(7, 3), vec![(6, CellFlag::Normal)]);
        assert_eq!(
            live_at(8, 3),
            vec![(6, CellFlag::Overwritten { at: 8 }), (7, CellFlag::Normal)]
        );
        // The final board keeps every archived layer plus the closing row.
        assert_eq!(
            live_at(16, 3),
            vec![
                (6, CellFlag::Overwritten { at: 8 }),
                (7, CellFlag::Overwritten { at: 15 }),
                (7, CellFlag::Normal)
            ]
        );
    }
}
