//! JSON form of a traced run.
//!
//! The export is a flat, self-describing document: big numbers are decimal
//! strings, enums are their kebab-case names. The field layout is part of the
//! output contract, so the structs here are ordered exactly as the JSON
//! should read.

use fibroot::{CellFlag, RootResult, TableauStyle, Trace};
use serde::{Deserialize, Serialize};

/// A traced run: the request, every board event, and the result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceExport {
    pub radicand: String,
    pub rule: String,
    pub style: String,
    pub events: Vec<EventExport>,
    pub result: ResultExport,
}

/// One annotated writing step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventExport {
    pub step: u32,
    pub label: String,
    pub cells: Vec<CellExport>,
    pub note: String,
}

/// One digit placement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellExport {
    pub column: u32,
    pub band: String,
    pub digit: u8,
    pub flag: String,
}

/// Root and remainder of the run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultExport {
    pub root: String,
    pub remainder: String,
}

fn flag_name(flag: &CellFlag) -> &'static str {
    match flag {
        CellFlag::Normal => "normal",
        CellFlag::Inserted => "inserted",
        CellFlag::Overwritten { .. } => "overwritten",
    }
}

/// Assembles the export document for a finished run laid out in `style`.
pub fn trace_export(result: &RootResult, trace: &Trace, style: TableauStyle) -> TraceExport {
    let events = trace
        .events(style)
        .into_iter()
        .map(|event| EventExport {
            step: event.step,
            label: event.label,
            cells: event
                .cells
                .iter()
                .map(|cell| CellExport {
                    column: cell.column,
                    band: cell.band.name().to_string(),
                    digit: cell.digit,
                    flag: flag_name(&cell.flag).to_string(),
                })
                .collect(),
            note: event.note,
        })
        .collect();
    TraceExport {
        radicand: result.radicand.to_string(),
        rule: trace.rule().name().to_string(),
        style: style.name().to_string(),
        events,
        result: ResultExport {
            root: result.root.to_string(),
            remainder: result.remainder.to_string(),
        },
    }
}

/// Pretty-prints an export; the document ends with a newline.
pub fn to_json(export: &TraceExport) -> String {
    let mut out = serde_json::to_string_pretty(export).expect("export serializes");
    out.push('\n');
    out
}

/// Reads an export back; the inverse of [`to_json`].
///
/// # Errors
///
/// Returns the underlying decoding error for malformed documents.
pub fn from_json(text: &str) -> Result<TraceExport, serde_json::Error> {
    serde_json::from_str(text)
}
