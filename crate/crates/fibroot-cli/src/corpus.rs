//! The worked square-root examples from Liber Abaci and De Practica
//! Geometrie, with their published results and, where a figure was printed,
//! frozen renderings of the reconstructed boards.
//!
//! Every entry records what the source states: the radicand, the integer
//! root, the remainder, and for the Liber Abaci examples the refined
//! fractional value. The `run` check recomputes all of it with every digit
//! rule; `diff` re-renders the stored boards and compares them cell by cell.

use fibroot::{
    build_tableau, diff_tableau, isqrt_fibonacci, parse_rendered, refine_once, refine_second,
    refine_sequence, render_text, round_unit_fraction, scale_and_root, snapshots, DigitRule,
    Rational, StartChoice, TableauStyle, Trace,
};
use num::bigint::BigUint;

/// Which treatise an example comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    LiberAbaci,
    DePracticaGeometrie,
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::LiberAbaci => "LA",
            Source::DePracticaGeometrie => "DPG",
        }
    }
}

/// A frozen rendering of a reconstructed board, or of one of its snapshots.
#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub name: &'static str,
    pub style: TableauStyle,
    /// Render the snapshot up to this step; `None` renders the full board.
    pub snapshot_step: Option<u32>,
    pub text: &'static str,
}

/// One worked example and everything the source claims about it.
#[derive(Debug, Clone, Copy)]
pub struct CorpusEntry {
    pub id: &'static str,
    pub source: Source,
    pub radicand: u64,
    pub expected_root: u64,
    pub expected_remainder: u64,
    /// The refined value `root + remainder / (2 root)` where the source
    /// gives one; for scaled runs, the descaled result instead.
    pub expected_fraction: Option<(u64, u64)>,
    pub figure_ref: &'static str,
    pub fixtures: &'static [Fixture],
    /// For roots worked on a scaled radicand: the original value and the
    /// number of appended digit pairs.
    pub scale_origin: Option<(u64, u32)>,
    /// A digit of the printed figure judged to be a later insertion.
    pub known_inserted: Option<&'static str>,
}

const LA_REF: &str = "Liber Abaci, ch. 14";
const DPG_REF: &str = "De Practica Geometrie, ch. 2";

const LA_743_FIXTURES: [Fixture; 2] = [
    Fixture {
        name: "la-743-final",
        style: TableauStyle::La1228,
        snapshot_step: None,
        text: include_str!("corpus/fixtures/la-743-final.txt"),
    },
    Fixture {
        name: "la-743-stage2",
        style: TableauStyle::La1228,
        snapshot_step: Some(2),
        text: include_str!("corpus/fixtures/la-743-stage2.txt"),
    },
];

const LA_8754_FIXTURES: [Fixture; 1] = [Fixture {
    name: "la-8754-final",
    style: TableauStyle::La1228,
    snapshot_step: None,
    text: include_str!("corpus/fixtures/la-8754-final.txt"),
}];

const LA_12345_FIXTURES: [Fixture; 1] = [Fixture {
    name: "la-12345-final",
    style: TableauStyle::La1228,
    snapshot_step: None,
    text: include_str!("corpus/fixtures/la-12345-final.txt"),
}];

const LA_927435_FIXTURES: [Fixture; 1] = [Fixture {
    name: "la-927435-final",
    style: TableauStyle::La1228,
    snapshot_step: None,
    text: include_str!("corpus/fixtures/la-927435-final.txt"),
}];

const LA_72340000_FIXTURES: [Fixture; 3] = [
    Fixture {
        name: "la-72340000-stage1",
        style: TableauStyle::La1228,
        snapshot_step: Some(7),
        text: include_str!("corpus/fixtures/la-72340000-stage1.txt"),
    },
    Fixture {
        name: "la-72340000-stage2",
        style: TableauStyle::La1228,
        snapshot_step: Some(13),
        text: include_str!("corpus/fixtures/la-72340000-stage2.txt"),
    },
    Fixture {
        name: "la-72340000-stage3",
        style: TableauStyle::La1228,
        snapshot_step: Some(15),
        text: include_str!("corpus/fixtures/la-72340000-stage3.txt"),
    },
];

const DPG_864_FIXTURES: [Fixture; 1] = [Fixture {
    name: "dpg-864-final",
    style: TableauStyle::Pg,
    snapshot_step: None,
    text: include_str!("corpus/fixtures/dpg-864-final.txt"),
}];

/// All sixteen worked examples.
pub const ENTRIES: [CorpusEntry; 16] = [
    CorpusEntry {
        id: "la-743",
        source: Source::LiberAbaci,
        radicand: 743,
        expected_root: 27,
        expected_remainder: 14,
        expected_fraction: Some((736, 27)),
        figure_ref: LA_REF,
        fixtures: &LA_743_FIXTURES,
        scale_origin: None,
        known_inserted: None,
    },
    CorpusEntry {
        id: "la-8754",
        source: Source::LiberAbaci,
        radicand: 8754,
        expected_root: 93,
        expected_remainder: 105,
        expected_fraction: Some((5801, 62)),
        figure_ref: LA_REF,
        fixtures: &LA_8754_FIXTURES,
        scale_origin: None,
        known_inserted: None,
    },
    CorpusEntry {
        id: "la-12345",
        source: Source::LiberAbaci,
        radicand: 12345,
        expected_root: 111,
        expected_remainder: 24,
        expected_fraction: Some((4111, 37)),
        figure_ref: LA_REF,
        fixtures: &LA_12345_FIXTURES,
        scale_origin: None,
        known_inserted: None,
    },
    CorpusEntry {
        id: "la-927435",
        source: Source::LiberAbaci,
        radicand: 927435,
        expected_root: 963,
        expected_remainder: 66,
        expected_fraction: Some((309134, 321)),
        figure_ref: LA_REF,
        fixtures: &LA_927435_FIXTURES,
        scale_origin: None,
        known_inserted: None,
    },
    CorpusEntry {
        id: "la-72340000",
        source: Source::LiberAbaci,
        radicand: 72_340_000,
        expected_root: 8505,
        expected_remainder: 4975,
        expected_fraction: Some((34021, 400)),
        figure_ref: LA_REF,
        fixtures: &LA_72340000_FIXTURES,
        scale_origin: Some((7234, 2)),
        known_inserted: Some(
            "the working digit 3 in column 5 (step 6) is a later insertion in the printed figure",
        ),
    },
    CorpusEntry {
        id: "dpg-153",
        source: Source::DePracticaGeometrie,
        radicand: 153,
        expected_root: 12,
        expected_remainder: 9,
        expected_fraction: None,
        figure_ref: DPG_REF,
        fixtures: &[],
        scale_origin: None,
        known_inserted: None,
    },
    CorpusEntry {
        id: "dpg-864",
        source: Source::DePracticaGeometrie,
        radicand: 864,
        expected_root: 29,
        expected_remainder: 23,
        expected_fraction: None,
        figure_ref: DPG_REF,
        fixtures: &DPG_864_FIXTURES,
        scale_origin: None,
        known_inserted: None,
    },
    CorpusEntry {
        id: "dpg-960",
        source: Source::DePracticaGeometrie,
        radicand: 960,
        expected_root: 30,
        expected_remainder: 60,
        expected_fraction: None,
        figure_ref: DPG_REF,
        fixtures: &[],
        scale_origin: None,
        known_inserted: None,
    },
    CorpusEntry {
        id: "dpg-1234",
        source: Source::DePracticaGeometrie,
        radicand: 1234,
        expected_root: 35,
        expected_remainder: 9,
        expected_fraction: None,
        figure_ref: DPG_REF,
        fixtures: &[],
        scale_origin: None,
        known_inserted: None,
    },
    CorpusEntry {
        id: "dpg-6142",
        source: Source::DePracticaGeometrie,
        radicand: 6142,
        expected_root: 78,
        expected_remainder: 58,
        expected_fraction: None,
        figure_ref: DPG_REF,
        fixtures: &[],
        scale_origin: None,
        known_inserted: None,
    },
    CorpusEntry {
        id: "dpg-8172",
        source: Source::DePracticaGeometrie,
        radicand: 8172,
        expected_root: 90,
        expected_remainder: 72,
        expected_fraction: None,
        figure_ref: DPG_REF,
        fixtures: &[],
        scale_origin: None,
        known_inserted: None,
    },
    CorpusEntry {
        id: "dpg-12345",
        source: Source::DePracticaGeometrie,
        radicand: 12345,
        expected_root: 111,
        expected_remainder: 24,
        expected_fraction: None,
        figure_ref: DPG_REF,
        fixtures: &[],
        scale_origin: None,
        known_inserted: None,
    },
    CorpusEntry {
        id: "dpg-98765",
        source: Source::DePracticaGeometrie,
        radicand: 98765,
        expected_root: 314,
        expected_remainder: 169,
        expected_fraction: None,
        figure_ref: DPG_REF,
        fixtures: &[],
        scale_origin: None,
        known_inserted: None,
    },
    CorpusEntry {
        id: "dpg-123456",
        source: Source::DePracticaGeometrie,
        radicand: 123456,
        expected_root: 351,
        expected_remainder: 255,
        expected_fraction: None,
        figure_ref: DPG_REF,
        fixtures: &[],
        scale_origin: None,
        known_inserted: None,
    },
    CorpusEntry {
        id: "dpg-987654",
        source: Source::DePracticaGeometrie,
        radicand: 987654,
        expected_root: 993,
        expected_remainder: 1605,
        expected_fraction: None,
        figure_ref: DPG_REF,
        fixtures: &[],
        scale_origin: None,
        known_inserted: None,
    },
    CorpusEntry {
        id: "dpg-9876543",
        source: Source::DePracticaGeometrie,
        radicand: 9_876_543,
        expected_root: 3142,
        expected_remainder: 4379,
        expected_fraction: None,
        figure_ref: DPG_REF,
        fixtures: &[],
        scale_origin: None,
        known_inserted: None,
    },
];

fn rational(numer: u64, denom: u64) -> Rational {
    Rational::new(numer as i64, denom as i64).expect("corpus fractions have nonzero denominators")
}

/// The trace a corpus entry's boards are built from: the scaled run where
/// the source worked on a scaled radicand, the plain run otherwise.
fn entry_trace(entry: &CorpusEntry) -> Trace {
    match entry.scale_origin {
        Some((origin, pairs)) => scale_and_root(&BigUint::from(origin), pairs).trace,
        None => isqrt_fibonacci(&BigUint::from(entry.radicand), DigitRule::ExactLargest).1,
    }
}

/// Verifies every entry under every digit rule, then the recorded fractional
/// refinements. Returns the report lines and whether everything passed; one
/// line per entry, one per refinement, and a closing summary that never
/// starts with "FAIL".
///
/// `corrupt` raises the expected root of the named entry by one, to
/// demonstrate that the verification actually bites.
pub fn run(corrupt: Option<&str>) -> (Vec<String>, bool) {
    let mut lines = Vec::new();
    let mut passed = 0usize;
    let mut total = 0usize;
    for entry in &ENTRIES {
        let expected_root = if corrupt == Some(entry.id) {
            entry.expected_root + 1
        } else {
            entry.expected_root
        };
        let expected = (
            BigUint::from(expected_root),
            BigUint::from(entry.expected_remainder),
        );
        total += 1;
        let mut bad = None;
        for rule in DigitRule::ALL {
            let (result, _) = isqrt_fibonacci(&BigUint::from(entry.radicand), rule);
            if (result.root.clone(), result.remainder.clone()) != expected {
                bad = Some((rule, result));
                break;
            }
        }
        match bad {
            None => {
                passed += 1;
                lines.push(format!(
                    "ok {}: root {} remainder {} under all {} rules",
                    entry.id,
                    expected.0,
                    expected.1,
                    DigitRule::ALL.len()
                ));
            }
            Some((rule, result)) => lines.push(format!(
                "FAIL {}: expected root {} remainder {}, rule {} computed root {} remainder {}",
                entry.id, expected.0, expected.1, rule, result.root, result.remainder
            )),
        }
    }
    for (ok, line) in fraction_checks() {
        total += 1;
        if ok {
            passed += 1;
        }
        lines.push(line);
    }
    lines.push(format!("corpus: {passed}/{total} checks passed"));
    (lines, passed == total)
}

/// The six fractional refinement checks; each yields (passed, report line).
pub fn fraction_checks() -> Vec<(bool, String)> {
    let mut out = Vec::new();
    for entry in &ENTRIES {
        let Some((numer, denom)) = entry.expected_fraction else {
            continue;
        };
        let expected = rational(numer, denom);
        match entry.scale_origin {
            Some((origin, pairs)) => {
                let outcome = scale_and_root(&BigUint::from(origin), pairs);
                let double = &outcome.result.root * 2u32;
                let quarter = round_unit_fraction(&outcome.result.remainder, &double).to_string();
                if outcome.descaled == expected && quarter == "1/4" {
                    out.push((
                        true,
                        format!(
                            "ok fraction {}: descaled {} via unit fraction 1/4",
                            entry.id, outcome.descaled
                        ),
                    ));
                } else {
                    out.push((
                        false,
                        format!(
                            "FAIL fraction {}: expected {} via 1/4, computed {} via {}",
                            entry.id, expected, outcome.descaled, quarter
                        ),
                    ));
                }
            }
            None => {
                let n = BigUint::from(entry.radicand);
                let step = refine_once(
                    &BigUint::from(entry.expected_root),
                    &BigUint::from(entry.expected_remainder),
                    &n,
                );
                let mut ok = step.approx == expected;
                let mut extra = String::new();
                if entry.id == "la-927435" {
                    let second = refine_second(&step.approx, &n);
                    let expected_corr = Rational::new(-121i64, 198_464_028i64).unwrap();
                    ok = ok && second.correction == expected_corr;
                    extra = format!(", second correction {}", second.correction);
                }
                if ok {
                    out.push((
                        true,
                        format!(
                            "ok fraction {}: {} ({}){}",
                            entry.id,
                            step.approx,
                            step.approx.mixed(false),
                            extra
                        ),
                    ));
                } else {
                    out.push((
                        false,
                        format!(
                            "FAIL fraction {}: expected {}, computed {}{}",
                            entry.id, expected, step.approx, extra
                        ),
                    ));
                }
            }
        }
    }
    // The refinement chain for an unscaled non-square, as the source carries
    // it to a second step.
    let steps = refine_sequence(&BigUint::from(10u32), StartChoice::Floor, 2);
    let want = [rational(19, 6), rational(721, 228)];
    if steps.len() == 2 && steps[0].approx == want[0] && steps[1].approx == want[1] {
        out.push((
            true,
            format!(
                "ok fraction sqrt 10: {} then {}",
                steps[0].approx, steps[1].approx
            ),
        ));
    } else {
        out.push((
            false,
            "FAIL fraction sqrt 10: expected 19/6 then 721/228".to_string(),
        ));
    }
    out
}

/// One line per entry, straight from the table.
pub fn list() -> Vec<String> {
    ENTRIES
        .iter()
        .map(|entry| {
            format!(
                "{}: sqrt {} = {} remainder {} ({})",
                entry.id,
                entry.radicand,
                entry.expected_root,
                entry.expected_remainder,
                entry.figure_ref
            )
        })
        .collect()
}

/// Re-renders every frozen board and compares it, both byte for byte and
/// cell by cell through the parser, against the stored fixture.
pub fn diff() -> (Vec<String>, bool) {
    let mut lines = Vec::new();
    let mut ok = true;
    for entry in &ENTRIES {
        if entry.fixtures.is_empty() {
            continue;
        }
        let trace = entry_trace(entry);
        for fixture in entry.fixtures {
            let board = match fixture.snapshot_step {
                Some(step) => snapshots(&trace, fixture.style)[step as usize].clone(),
                None => build_tableau(&trace, fixture.style),
            };
            let rendered = render_text(&board, true).text();
            if rendered != fixture.text {
                ok = false;
                lines.push(format!(
                    "FAIL {}: rendering drifted from fixture",
                    fixture.name
                ));
                continue;
            }
            match parse_rendered(fixture.text) {
                Ok(parsed) => match diff_tableau(&board, &parsed) {
                    Ok(report) if report.is_empty() => {
                        lines.push(format!(
                            "ok {}: rendering matches, 0 discrepancies",
                            fixture.name
                        ));
                    }
                    Ok(report) => {
                        ok = false;
                        lines.push(format!(
                            "FAIL {}: {} cell discrepancies against the parsed fixture",
                            fixture.name,
                            report.len()
                        ));
                    }
                    Err(err) => {
                        ok = false;
                        lines.push(format!("FAIL {}: {}", fixture.name, err));
                    }
                },
                Err(err) => {
                    ok = false;
                    lines.push(format!(
                        "FAIL {}: fixture does not parse: {}",
                        fixture.name, err
                    ));
                }
            }
        }
        if let Some(note) = entry.known_inserted {
            lines.push(format!("note {}: {}", entry.id, note));
        }
    }
    (lines, ok)
}

/// Machine-readable dump: one `|`-separated line per entry.
pub fn export() -> Vec<String> {
    ENTRIES
        .iter()
        .map(|entry| {
            let fraction = entry
                .expected_fraction
                .map(|(n, d)| format!("{n}/{d}"))
                .unwrap_or_default();
            format!(
                "{}|{}|{}|{}|{}|{}|{}",
                entry.id,
                entry.source.name(),
                entry.radicand,
                entry.expected_root,
                entry.expected_remainder,
                fraction,
                entry.figure_ref
            )
        })
        .collect()
}
