//! Parsing rendered boards back into tableaux.
//!
//! The radicand row, recognized by its `*d*` tokens, fixes the column grid:
//! each radicand token's start offset is the anchor of one column. Every
//! other token is assigned to the column whose anchor it starts at. Rows
//! above the radicand are working-figure rows, nearest first; the margin
//! annotation `(R` or `(R_s` may sit anywhere; the first row below the
//! radicand is the root, the second the doubled root. Transcriptions of
//! manuscript figures are written in this format and checked by parsing
//! them and diffing against computed boards.

use crate::tableau::{Band, Cell, CellFlag, Tableau, TableauError, TableauStyle};
use num::bigint::BigUint;
use std::collections::HashMap;

/// Parses the text format produced by [`crate::tableau::render_text`].
///
/// Steps are taken from `_s` suffixes when present and default to 0; every
/// parsed cell is flagged normal (a rendered board never shows overwritten
/// digits). The parsed board carries no style marker, so the default
/// [`TableauStyle::La1228`] is recorded.
pub fn parse_rendered(text: &str) -> Result<Tableau, TableauError> {
    let rows: Vec<Vec<(usize, &str)>> = text.lines().map(tokens_of).collect();

    let radicand_rows: Vec<usize> = rows
        .iter()
        .enumerate()
        .filter(|(_, tokens)| tokens.iter().any(|&(_, t)| starred_digit(t).is_some()))
        .map(|(i, _)| i)
        .collect();
    let radicand_row = match radicand_rows.as_slice() {
        [] => return Err(TableauError::MissingRadicand),
        [row] => *row,
        _ => return Err(TableauError::AmbiguousRadicand),
    };

    let anchors = &rows[radicand_row];
    let count = anchors.len();
    let mut column_at: HashMap<usize, u32> = HashMap::new();
    let mut radicand = BigUint::from(0u32);
    let mut cells = Vec::new();
    for (i, &(offset, token)) in anchors.iter().enumerate() {
        let digit = starred_digit(token).ok_or_else(|| TableauError::BadToken {
            line: radicand_row + 1,
            token: token.to_string(),
        })?;
        let column = (count - 1 - i) as u32;
        column_at.insert(offset, column);
        radicand = radicand * 10u32 + digit;
        cells.push(Cell {
            column,
            band: Band::Radicand,
            digit,
            step: 0,
            flag: CellFlag::Normal,
        });
    }

    let mut annotation: Option<(BigUint, u32)> = None;
    let parse_row = |line: usize,
                     band: Band,
                     annotation: &mut Option<(BigUint, u32)>,
                     cells: &mut Vec<Cell>|
     -> Result<bool, TableauError> {
        let mut wrote = false;
        for &(offset, token) in &rows[line] {
            if let Some(rest) = token.strip_prefix('(') {
                if annotation.is_some() {
                    return Err(TableauError::BadToken {
                        line: line + 1,
                        token: token.to_string(),
                    });
                }
                *annotation =
                    Some(
                        parse_annotation(rest).ok_or_else(|| TableauError::BadToken {
                            line: line + 1,
                            token: token.to_string(),
                        })?,
                    );
                continue;
            }
            let (digit, step) = cell_token(token).ok_or_else(|| TableauError::BadToken {
                line: line + 1,
                token: token.to_string(),
            })?;
            let column = *column_at
                .get(&offset)
                .ok_or_else(|| TableauError::Misaligned {
                    line: line + 1,
                    token: token.to_string(),
                })?;
            cells.push(Cell {
                column,
                band,
                digit,
                step,
                flag: CellFlag::Normal,
            });
            wrote = true;
        }
        Ok(wrote)
    };

    // Working-figure rows, nearest to the radicand first, so that stacked
    // digits end up in bottom-to-top writing order.
    for line in (0..radicand_row).rev() {
        parse_row(line, Band::Residual, &mut annotation, &mut cells)?;
    }
    let below = [Band::Root, Band::DoubledRoot];
    let mut used = 0;
    for (line, row) in rows.iter().enumerate().skip(radicand_row + 1) {
        if row.is_empty() {
            continue;
        }
        let band = below.get(used).copied().unwrap_or(Band::Root);
        let wrote = parse_row(line, band, &mut annotation, &mut cells)?;
        if wrote {
            used += 1;
            if used > below.len() {
                return Err(TableauError::ExtraRows);
            }
        }
    }

    if let Some((value, step)) = annotation {
        for (i, &digit) in crate::exactnum::digits_of(&value)
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

    Ok(Tableau {
        style: TableauStyle::La1228,
        radicand,
        cells,
    })
}

/// Tokens of a line with their byte offsets. Tokens never contain spaces and
/// the renderer emits only ASCII, so byte offsets align with columns.
fn tokens_of(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch == ' ' {
            if let Some(s) = start.take() {
                out.push((s, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out
}

fn starred_digit(token: &str) -> Option<u8> {
    let inner = token.strip_prefix('*')?.strip_suffix('*')?;
    single_digit(inner)
}

fn single_digit(s: &str) -> Option<u8> {
    let mut chars = s.chars();
    let ch = chars.next()?;
    if chars.next().is_some() {
        return None;
    }
    ch.to_digit(10).map(|d| d as u8)
}

fn cell_token(token: &str) -> Option<(u8, u32)> {
    match token.split_once('_') {
        None => single_digit(token).map(|d| (d, 0)),
        Some((digit, step)) => {
            let digit = single_digit(digit)?;
            if step.is_empty() || !step.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            Some((digit, step.parse().ok()?))
        }
    }
}

fn parse_annotation(rest: &str) -> Option<(BigUint, u32)> {
    let (value, step) = match rest.split_once('_') {
        None => (rest, 0),
        Some((value, step)) => {
            if step.is_empty() || !step.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            (value, step.parse().ok()?)
        }
    };
    if value.is_empty() || !value.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Some((value.parse().ok()?, step))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digitmethod::{isqrt_fibonacci, scale_and_root, DigitRule};
    use crate::tableau::{build_tableau, diff_tableau, render_text};

    fn board(n: u64, style: TableauStyle) -> Tableau {
        let (_, trace) = isqrt_fibonacci(&BigUint::from(n), DigitRule::ExactLargest);
        build_tableau(&trace, style)
    }

    fn sorted_facts(t: &Tableau) -> Vec<(Band, u32, u8, u32)> {
        let mut facts: Vec<_> = t
            .cells
            .iter()
            .filter(|c| !matches!(c.flag, CellFlag::Overwritten { .. }))
            .map(|c| (c.band, c.column, c.digit, c.step))
            .collect();
        facts.sort();
        facts
    }

    #[test]
    fn parses_its_own_rendering_exactly() {
        for n in [
            0u64, 4, 5, 743, 864, 8172, 8754, 12345, 98765, 927435, 9876543,
        ] {
            for style in TableauStyle::ALL {
                let built = board(n, style);
                let text = render_text(&built, true).text();
                let parsed = parse_rendered(&text).expect("rendering parses");
                assert_eq!(parsed.radicand, built.radicand, "radicand of {n}");
                assert_eq!(
                    sorted_facts(&parsed),
                    sorted_facts(&built),
                    "cells of {n} in {style}"
                );
                assert!(parsed.cells.iter().all(|c| c.flag == CellFlag::Normal));
            }
        }
    }

    #[test]
    fn parses_renderings_that_hide_overwritten_rows() {
        let out = scale_and_root(&BigUint::from(7234u32), 2);
        let built = build_tableau(&out.trace, TableauStyle::La1228);
        let parsed = parse_rendered(&render_text(&built, true).text()).unwrap();
        // Archived doubled-root layers disappear; everything else survives.
        assert_eq!(sorted_facts(&parsed), sorted_facts(&built));
        assert_eq!(diff_tableau(&built, &parsed).unwrap(), vec![]);
    }

    #[test]
    fn parses_stepless_renderings_with_zero_steps() {
        let built = board(743, TableauStyle::La1228);
        let parsed = parse_rendered(&render_text(&built, false).text()).unwrap();
        assert!(parsed.cells.iter().all(|c| c.step == 0));
        assert_eq!(diff_tableau(&built, &parsed).unwrap(), vec![]);
    }

    #[test]
    fn rejects_text_without_a_radicand() {
        assert_eq!(
            parse_rendered("1_2 3_4\n5_6\n"),
            Err(TableauError::MissingRadicand)
        );
        assert_eq!(
            parse_rendered("*1* *2*\n\n*3*\n"),
            Err(TableauError::AmbiguousRadicand)
        );
    }

    #[test]
    fn rejects_misaligned_and_malformed_tokens() {
        // The 9 starts between the two radicand columns.
        let text = "  9\n*1* *6*\n";
        assert_eq!(
            parse_rendered(text),
            Err(TableauError::Misaligned {
                line: 1,
                token: "9".into()
            })
        );
        let text = "*1* *6*\n4x\n";
        assert_eq!(
            parse_rendered(text),
            Err(TableauError::BadToken {
                line: 2,
                token: "4x".into()
            })
        );
        let text = "*1* *6*\n12\n";
        assert_eq!(
            parse_rendered(text),
            Err(TableauError::BadToken {
                line: 2,
                token: "12".into()
            })
        );
    }

    #[test]
    fn rejects_too_many_rows_below_the_radicand() {
        let text = "*4* *1*\n6\n1\n3\n";
        assert_eq!(parse_rendered(text), Err(TableauError::ExtraRows));
    }

    #[test]
    fn rejects_duplicate_annotations() {
        let text = "(3 (4\n*1* *3*\n3\n";
        assert!(matches!(
            parse_rendered(text),
            Err(TableauError::BadToken { line: 1, .. })
        ));
    }

    #[test]
    fn reads_annotations_into_the_remainder_band() {
        let text = "        (23_6\n*8* *6* *4*\n    2_1 9_4\n";
        let parsed = parse_rendered(text).unwrap();
        let remainder: Vec<_> = parsed
            .cells
            .iter()
            .filter(|c| c.band == Band::Remainder)
            .map(|c| (c.column, c.digit, c.step))
            .collect();
        assert_eq!(remainder, vec![(0, 3, 6), (1, 2, 6)]);
    }
}
