//! Cell-level comparison of two boards.
//!
//! Comparison works band by band on the live digit stacks of each column,
//! ignoring steps and overwritten layers: two boards agree when a reader
//! would copy the same digits off both. A systematic misplacement (every
//! occupied column of a band moved by the same offset with the same
//! content) is reported as a single column shift rather than a shower of
//! per-cell mismatches, since that is the characteristic copying slip in
//! the source figures.

use crate::tableau::{Band, CellFlag, Tableau, TableauError};
use std::collections::{BTreeMap, BTreeSet};

/// One disagreement between an expected and a found board.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Discrepancy {
    /// Both boards write this stack position, with different digits.
    DigitMismatch {
        band: Band,
        column: u32,
        expected: u8,
        found: u8,
    },
    /// The expected board writes this digit, the found board does not.
    MissingCell { band: Band, column: u32, digit: u8 },
    /// The found board writes this digit, the expected board does not.
    ExtraCell { band: Band, column: u32, digit: u8 },
    /// The band's whole content sits `delta` columns away from where it is
    /// expected; positive means shifted toward more significant columns.
    ColumnShift { band: Band, delta: i32 },
}

/// Compares two boards cell by cell, reporting the found board's deviations
/// from the expected one. An empty result means the boards agree.
///
/// # Errors
///
/// Returns [`TableauError::RadicandMismatch`] when the boards are not about
/// the same radicand; other discrepancies would be meaningless then.
pub fn diff_tableau(expected: &Tableau, found: &Tableau) -> Result<Vec<Discrepancy>, TableauError> {
    if expected.radicand != found.radicand {
        return Err(TableauError::RadicandMismatch);
    }
    let mut out = Vec::new();
    for band in [
        Band::Residual,
        Band::Radicand,
        Band::Root,
        Band::DoubledRoot,
        Band::Remainder,
    ] {
        let a = live_stacks(expected, band);
        let b = live_stacks(found, band);
        if a == b {
            continue;
        }
        if !a.is_empty() && a.len() == b.len() {
            let a_cols: Vec<u32> = a.keys().copied().collect();
            let b_cols: Vec<u32> = b.keys().copied().collect();
            let delta = b_cols[0] as i64 - a_cols[0] as i64;
            let shifted = delta != 0
                && a_cols
                    .iter()
                    .zip(&b_cols)
                    .all(|(&x, &y)| y as i64 - x as i64 == delta)
                && a_cols.iter().zip(&b_cols).all(|(&x, &y)| a[&x] == b[&y]);
            if shifted {
                out.push(Discrepancy::ColumnShift {
                    band,
                    delta: delta as i32,
                });
                continue;
            }
        }
        let columns: BTreeSet<u32> = a.keys().chain(b.keys()).copied().collect();
        let empty = Vec::new();
        for column in columns {
            let sa = a.get(&column).unwrap_or(&empty);
            let sb = b.get(&column).unwrap_or(&empty);
            for i in 0..sa.len().max(sb.len()) {
                match (sa.get(i), sb.get(i)) {
                    (Some(&x), Some(&y)) if x == y => {}
                    (Some(&x), Some(&y)) => out.push(Discrepancy::DigitMismatch {
                        band,
                        column,
                        expected: x,
                        found: y,
                    }),
                    (Some(&x), None) => out.push(Discrepancy::MissingCell {
                        band,
                        column,
                        digit: x,
                    }),
                    (None, Some(&y)) => out.push(Discrepancy::ExtraCell {
                        band,
                        column,
                        digit: y,
                    }),
                    (None, None) => unreachable!("index bounded by the longer stack"),
                }
            }
        }
    }
    Ok(out)
}

/// Digit stacks by column, in writing order, skipping overwritten layers.
fn live_stacks(tableau: &Tableau, band: Band) -> BTreeMap<u32, Vec<u8>> {
    let mut map: BTreeMap<u32, Vec<u8>> = BTreeMap::new();
    for cell in &tableau.cells {
        if cell.band == band && !matches!(cell.flag, CellFlag::Overwritten { .. }) {
            map.entry(cell.column).or_default().push(cell.digit);
        }
    }
    map
}
