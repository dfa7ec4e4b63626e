//! Realization of traces as board-writing event sequences.
//!
//! A trace records the arithmetic of a run; realization turns it into the
//! ordered writing acts a person at the board would perform under a given
//! presentation style. Event steps are consecutive from 0 (placing the
//! radicand) and become the subscript annotations of the rendered board.

use crate::digitmethod::{BaseRecord, StageRecord, Trace, TraceCell, TraceEvent, TracePlan};
use crate::exactnum::digits_of;
use crate::tableau::{Band, CellFlag, TableauStyle};
use num::bigint::BigUint;
use num::Zero;

/// Events plus the step of the remainder announcement, if one happened.
pub(crate) struct Realization {
    pub events: Vec<TraceEvent>,
    pub remainder_step: Option<u32>,
}

impl Trace {
    /// The board-writing events of this run, realized for `style`.
    ///
    /// Steps are consecutive from 0, which places the radicand. When the
    /// extraction leaves a remainder to announce, the final event carries it
    /// in its note and writes no cells: the remainder lives in the board
    /// margin, not on the digit grid.
    pub fn events(&self, style: TableauStyle) -> Vec<TraceEvent> {
        realize(self, style).events
    }
}

pub(crate) fn realize(trace: &Trace, style: TableauStyle) -> Realization {
    let mut realizer = Realizer {
        style,
        events: Vec::new(),
        doubled_live: Vec::new(),
    };
    let remainder_step = match &trace.plan {
        TracePlan::Base(base) => realizer.base_events(trace, base),
        TracePlan::FinalStage { stage } => realizer.final_stage_events(trace, stage),
        TracePlan::Unrolled { base, stages } => realizer.unrolled_events(trace, base, stages),
    };
    Realization {
        events: realizer.events,
        remainder_step,
    }
}

fn digit_cell(column: u32, digit: u8, band: Band) -> TraceCell {
    TraceCell {
        column,
        band,
        digit,
        flag: CellFlag::Normal,
    }
}

/// Cells for every digit of `value`, least significant first, starting at
/// `lsd_col` and walking left.
fn value_cells(value: &BigUint, lsd_col: u32, band: Band) -> Vec<TraceCell> {
    digits_of(value)
        .values()
        .iter()
        .enumerate()
        .map(|(i, &digit)| digit_cell(lsd_col + i as u32, digit, band))
        .collect()
}

struct Realizer {
    style: TableauStyle,
    events: Vec<TraceEvent>,
    /// Live doubled-root digits: (column, digit, event index, cell index),
    /// kept so a rewrite can flag them in the events that wrote them.
    doubled_live: Vec<(u32, u8, usize, usize)>,
}

impl Realizer {
    fn emit(&mut self, cells: Vec<TraceCell>, note: String) -> u32 {
        let step = self.events.len() as u32;
        self.events.push(TraceEvent {
            step,
            label: format!("L:{step}"),
            cells,
            note,
        });
        step
    }

    fn place(&mut self, n: &BigUint) {
        let cells = value_cells(n, 0, Band::Radicand);
        self.emit(cells, format!("place {n}"));
    }

    fn remainder_event(&mut self, value: &BigUint) -> u32 {
        self.emit(Vec::new(), format!("remainder {value}"))
    }

    /// A root digit, mirrored into the divisor row in the Liber Abaci
    /// presentations where the written root itself serves as the divisor.
    fn root_digit(&mut self, column: u32, digit: u8, mirror: bool) {
        let mut cells = vec![digit_cell(column, digit, Band::Root)];
        if mirror {
            cells.push(digit_cell(column, digit, Band::DoubledRoot));
        }
        self.emit(cells, format!("root digit {digit}"));
    }

    /// Writes the doubled root with its ones digit at `lsd_col`, reusing
    /// digits already on the board. If any overlapping digit differs, the
    /// whole previous row is archived and the new row written in full;
    /// otherwise only the newly uncovered columns are written.
    fn doubled_update(&mut self, d: &BigUint, lsd_col: u32) {
        let new: Vec<(u32, u8)> = digits_of(d)
            .values()
            .iter()
            .enumerate()
            .map(|(i, &digit)| (lsd_col + i as u32, digit))
            .collect();
        let step = self.events.len() as u32;
        let changed = self.doubled_live.iter().any(|&(col, digit, _, _)| {
            new.iter()
                .find(|&&(c, _)| c == col)
                .is_none_or(|&(_, nd)| nd != digit)
        });
        let mut cells = Vec::new();
        if changed {
            for &(_, _, event, cell) in &self.doubled_live {
                self.events[event].cells[cell].flag = CellFlag::Overwritten { at: step };
            }
            self.doubled_live.clear();
            for &(col, digit) in &new {
                cells.push(digit_cell(col, digit, Band::DoubledRoot));
            }
        } else {
            for &(col, digit) in &new {
                if !self.doubled_live.iter().any(|&(c, _, _, _)| c == col) {
                    cells.push(digit_cell(col, digit, Band::DoubledRoot));
                }
            }
        }
        debug_assert!(!cells.is_empty(), "a doubled-root update always writes");
        let event = self.events.len();
        for (cell, c) in cells.iter().enumerate() {
            self.doubled_live.push((c.column, c.digit, event, cell));
        }
        self.emit(cells, format!("doubled root {d}"));
    }

    /// Digit-at-a-time subtraction of `20*a*digit + digit^2` from the stage
    /// figure, emitting each intermediate value above the board. Returns the
    /// final value, the residual the stage leaves behind.
    ///
    /// Writing `D = 2a` with digits `d(m-1)..d(0)`, the subtraction peels one
    /// digit product per sub-step: the running value starts at the head of
    /// the stage figure `T` above its last `m` digits, and each sub-step
    /// shifts in the next digit of `T` and subtracts `digit * d(i)`, moving
    /// one column right. Sub-steps that subtract nothing or leave zero write
    /// nothing. The last sub-step subtracts `digit^2` and is not written
    /// here: it lands either as the stage residual or as the remainder.
    fn cascade(&mut self, stage: &StageRecord) -> BigUint {
        let alpha = stage.digit as u32;
        let d_digits = digits_of(&(&stage.a << 1u32));
        let m = d_digits.len();
        let t = &stage.r * 100u32 + (stage.beta1 as u32) * 10 + (stage.beta0 as u32);
        let t_digits = digits_of(&t);
        let mut value = &t / BigUint::from(10u32).pow(m as u32);
        for sub in 0..m {
            if sub > 0 {
                value = value * 10u32 + (t_digits.digit(m - sub) as u32);
            }
            let product = alpha * d_digits.digit(m - 1 - sub) as u32;
            value -= product;
            if product > 0 && !value.is_zero() {
                let column = 2 * stage.pair_col + (m - sub) as u32;
                let cells = value_cells(&value, column, Band::Residual);
                self.emit(cells, format!("insert {value}"));
            }
        }
        value * 10u32 + (t_digits.digit(0) as u32) - alpha * alpha
    }

    fn base_events(&mut self, trace: &Trace, base: &BaseRecord) -> Option<u32> {
        self.place(trace.radicand());
        if trace.radicand().is_zero() {
            return None;
        }
        self.root_digit(base.pair_col, base.digit, self.style.is_la());
        if trace.remainder().is_zero() {
            None
        } else {
            Some(self.remainder_event(trace.remainder()))
        }
    }

    fn final_stage_events(&mut self, trace: &Trace, stage: &StageRecord) -> Option<u32> {
        debug_assert_eq!(stage.pair_col, 0, "the final stage consumes the last pair");
        self.place(trace.radicand());
        let mirror = self.style.is_la();
        // The prefix root arrives written down, not derived on this board.
        let mut cells = value_cells(&stage.a, 1, Band::Root);
        if mirror {
            cells.extend(value_cells(&stage.a, 1, Band::DoubledRoot));
        }
        self.emit(cells, format!("prefix root {}", stage.a));
        if !stage.r.is_zero() {
            let cells = value_cells(&stage.r, 2, Band::Residual);
            self.emit(cells, format!("residual {}", stage.r));
        }
        if self.style == TableauStyle::Pg {
            self.doubled_update(&(&stage.a << 1u32), 1);
        }
        self.root_digit(0, stage.digit, mirror);
        if self.style == TableauStyle::Pg {
            let remainder = self.cascade(stage);
            debug_assert_eq!(&remainder, trace.remainder());
        } else if stage.digit > 0 {
            // One combined insertion at the tens: the head of the stage
            // figure less the whole doubled-root product.
            let alpha = stage.digit as u32;
            let value = (&stage.r * 10u32 + stage.beta1 as u32) - (&stage.a << 1u32) * alpha;
            if !value.is_zero() {
                let cells = if self.style == TableauStyle::La1202 {
                    digits_of(&value)
                        .values()
                        .iter()
                        .map(|&digit| digit_cell(1, digit, Band::Residual))
                        .collect()
                } else {
                    value_cells(&value, 1, Band::Residual)
                };
                self.emit(cells, format!("insert {value}"));
            }
        }
        Some(self.remainder_event(trace.remainder()))
    }

    fn unrolled_events(
        &mut self,
        trace: &Trace,
        base: &BaseRecord,
        stages: &[StageRecord],
    ) -> Option<u32> {
        self.place(trace.radicand());
        self.root_digit(base.pair_col, base.digit, false);
        let base_residual = base.leading - base.digit * base.digit;
        if base_residual > 0 {
            let cells = value_cells(
                &BigUint::from(base_residual),
                2 * base.pair_col,
                Band::Residual,
            );
            self.emit(cells, format!("residual {base_residual}"));
        }
        for stage in stages {
            self.doubled_update(&(&stage.a << 1u32), stage.pair_col + 1);
            self.root_digit(stage.pair_col, stage.digit, false);
            let residual = self.cascade(stage);
            if stage.digit > 0 && !residual.is_zero() {
                let cells = value_cells(&residual, 2 * stage.pair_col, Band::Residual);
                self.emit(cells, format!("residual {residual}"));
            }
        }
        self.doubled_update(&(trace.root() << 1u32), 0);
        Some(self.remainder_event(trace.remainder()))
    }
}
