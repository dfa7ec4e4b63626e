//! Plain-text rendering of boards.
//!
//! The grid prints one column per power of ten, widest first, with the
//! radicand digits marked `*d*`. Working figures stack upward above the
//! radicand, the root and doubled-root rows sit below it, and the remainder
//! annotation `(R` hangs in a trailing margin column on the first line.
//! With `show_steps`, every written digit carries its step as `d_s` and the
//! annotation as `(R_s`, matching the subscript annotations used when
//! discussing the source figures.

use crate::tableau::{Band, CellFlag, Tableau};
use num::bigint::BigUint;
use std::collections::BTreeMap;
use std::fmt;

/// A rendered board: lines without trailing whitespace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderedBoard {
    lines: Vec<String>,
}

impl RenderedBoard {
    pub fn lines(&self) -> &[String] {
        &self.lines
    }

    /// The full text, newline-terminated (empty for an empty board).
    pub fn text(&self) -> String {
        if self.lines.is_empty() {
            String::new()
        } else {
            let mut text = self.lines.join("\n");
            text.push('\n');
            text
        }
    }
}

impl fmt::Display for RenderedBoard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

type Stacks = BTreeMap<u32, Vec<(u8, u32)>>;

/// Renders the board as text. Overwritten cells are never shown: they stand
/// for erased or superseded digits. Without steps, a digit rewritten
/// identically on top of itself collapses into one (adjacent equal digits in
/// a working-figure stack are indistinguishable without subscripts).
pub fn render_text(tableau: &Tableau, show_steps: bool) -> RenderedBoard {
    let visible: Vec<_> = tableau
        .cells
        .iter()
        .filter(|c| !matches!(c.flag, CellFlag::Overwritten { .. }))
        .collect();
    if visible.is_empty() {
        return RenderedBoard { lines: Vec::new() };
    }
    let c_max = visible.iter().map(|c| c.column).max().expect("nonempty");
    let width = (c_max + 1) as usize;
    let stacks = |band: Band| -> Stacks {
        let mut map: Stacks = BTreeMap::new();
        for cell in visible.iter().filter(|c| c.band == band) {
            map.entry(cell.column)
                .or_default()
                .push((cell.digit, cell.step));
        }
        map
    };

    let mut residual = stacks(Band::Residual);
    if !show_steps {
        for stack in residual.values_mut() {
            stack.dedup_by(|next, prev| next.0 == prev.0);
        }
    }
    let radicand = stacks(Band::Radicand);
    let root = stacks(Band::Root);
    let doubled = stacks(Band::DoubledRoot);
    let remainder = stacks(Band::Remainder);

    let annotation = remainder_annotation(&remainder, show_steps);
    let cell_token = |digit: u8, step: u32| {
        if show_steps {
            format!("{digit}_{step}")
        } else {
            digit.to_string()
        }
    };

    // Rows of column tokens, index 0 = most significant column.
    let mut rows: Vec<Vec<String>> = Vec::new();
    let slot = |col: u32| (c_max - col) as usize;

    let depth = residual.values().map(Vec::len).max().unwrap_or(0);
    for level in (0..depth).rev() {
        let mut row = vec![String::new(); width];
        for (&col, stack) in &residual {
            if let Some(&(digit, step)) = stack.get(level) {
                row[slot(col)] = cell_token(digit, step);
            }
        }
        rows.push(row);
    }
    if annotation.is_some() && rows.is_empty() {
        // The margin annotation still goes above the radicand.
        rows.push(vec![String::new(); width]);
    }

    let mut radicand_row = vec![String::new(); width];
    for (&col, stack) in &radicand {
        radicand_row[slot(col)] = format!("*{}*", stack[0].0);
    }
    rows.push(radicand_row);

    for band_stacks in [&root, &doubled] {
        let depth = band_stacks.values().map(Vec::len).max().unwrap_or(0);
        for level in 0..depth {
            let mut row = vec![String::new(); width];
            for (&col, stack) in band_stacks.iter() {
                if let Some(&(digit, step)) = stack.get(level) {
                    row[slot(col)] = cell_token(digit, step);
                }
            }
            rows.push(row);
        }
    }

    let mut col_width = vec![0usize; width];
    for row in &rows {
        for (i, token) in row.iter().enumerate() {
            col_width[i] = col_width[i].max(token.len());
        }
    }

    let lines = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut line = String::new();
            for (slot, token) in row.iter().enumerate() {
                if slot > 0 {
                    line.push(' ');
                }
                line.push_str(token);
                line.extend(std::iter::repeat_n(' ', col_width[slot] - token.len()));
            }
            if i == 0 {
                if let Some(note) = &annotation {
                    line.push(' ');
                    line.push_str(note);
                }
            }
            line.trim_end().to_string()
        })
        .collect();
    RenderedBoard { lines }
}

fn remainder_annotation(remainder: &Stacks, show_steps: bool) -> Option<String> {
    if remainder.is_empty() {
        return None;
    }
    let top = *remainder.keys().max().expect("nonempty");
    let mut value = BigUint::from(0u32);
    for col in (0..=top).rev() {
        let digit = remainder.get(&col).map_or(0, |stack| stack[0].0);
        value = value * 10u32 + digit;
    }
    let step = remainder
        .values()
        .flat_map(|stack| stack.iter().map(|&(_, step)| step))
        .max()
        .expect("nonempty");
    Some(if show_steps {
        format!("({value}_{step}")
    } else {
        format!("({value}")
    })
}
