//! Command-line front end for the digit-by-digit square root method.
//!
//! Exit codes: 0 on success, 1 when a verification fails (a corpus check or
//! a method comparison), 2 for usage and domain errors.

use clap::{Parser, Subcommand};
use fibroot::{
    build_tableau, isqrt_fibonacci, refine_sequence, render_text, scale_and_root, DigitRule,
    StartChoice, TableauStyle,
};
use fibroot_cli::{corpus, export};
use num::bigint::BigUint;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "fibroot",
    version,
    about = "Integer square roots by Fibonacci's digit-by-digit method"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact integer square root with remainder.
    Isqrt {
        /// The radicand, a nonnegative integer of any size.
        radicand: String,
        /// Digit selection rule: exact-largest, exact-smallest, q-full,
        /// q-tens, q-coarse, or q-coarsest.
        #[arg(long, default_value = "exact-largest")]
        rule: String,
        /// Also print the worked board.
        #[arg(long)]
        trace: bool,
        /// Board layout: la1228, la1202, or pg.
        #[arg(long, default_value = "la1228")]
        style: String,
        /// Print the full trace as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Refine the root by unit fractions, as the sources do.
    Refine {
        /// The radicand, a positive integer.
        radicand: String,
        /// Number of refinement steps.
        #[arg(long, default_value_t = 3)]
        steps: u32,
        /// Integer start: floor or ceiling.
        #[arg(long, default_value = "floor")]
        start: String,
    },
    /// Run the refinement, Heron's rule, and Newton's iteration side by side.
    Compare {
        /// The radicand, an integer of at least 2.
        radicand: String,
        /// Number of steps to compare.
        #[arg(long, default_value_t = 3)]
        steps: u32,
    },
    /// Root of the radicand scaled by digit pairs, descaled to a fraction.
    Scale {
        /// The original radicand.
        radicand: String,
        /// Number of two-digit groups to append before extracting.
        pairs: u32,
        /// Print the descaled parts fraction first, as Fibonacci wrote them.
        #[arg(long)]
        fibonacci_order: bool,
    },
    /// Work with the corpus of examples from the sources.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Recompute every example under every rule and check the results.
    Run {
        /// Raise the expected root of this entry by one, to see a failure.
        #[arg(long)]
        corrupt: Option<String>,
    },
    /// List the examples.
    List,
    /// Re-render the frozen boards and compare them cell by cell.
    Diff,
    /// Dump the examples as pipe-separated lines.
    Export,
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn parse_radicand(text: &str) -> Result<BigUint, ExitCode> {
    BigUint::from_str(text)
        .map_err(|_| usage_error(&format!("\"{text}\" is not a nonnegative integer")))
}

/// Writes to stdout, shrugging off a closed pipe (`fibroot ... | head`).
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit_lines(lines: &[String]) {
    let mut text = lines.join("\n");
    text.push('\n');
    emit(&text);
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Isqrt {
            radicand,
            rule,
            trace,
            style,
            json,
        } => {
            let n = match parse_radicand(&radicand) {
                Ok(n) => n,
                Err(code) => return code,
            };
            let Some(rule) = DigitRule::from_name(&rule) else {
                return usage_error(&format!("unknown rule \"{rule}\""));
            };
            let Some(style) = TableauStyle::from_name(&style) else {
                return usage_error(&format!("unknown style \"{style}\""));
            };
            let (result, run_trace) = isqrt_fibonacci(&n, rule);
            if json {
                emit(&export::to_json(&export::trace_export(
                    &result, &run_trace, style,
                )));
                return ExitCode::SUCCESS;
            }
            emit(&format!("{result}\n"));
            if trace {
                let board = build_tableau(&run_trace, style);
                emit(&render_text(&board, true).text());
            }
            ExitCode::SUCCESS
        }
        Command::Refine {
            radicand,
            steps,
            start,
        } => {
            let n = match parse_radicand(&radicand) {
                Ok(n) => n,
                Err(code) => return code,
            };
            if n == BigUint::from(0u32) {
                return usage_error("refinement requires a positive radicand");
            }
            let Some(start) = StartChoice::from_name(&start) else {
                return usage_error(&format!("unknown start \"{start}\""));
            };
            let chain = refine_sequence(&n, start, steps);
            let mut lines = Vec::new();
            for (i, step) in chain.iter().enumerate() {
                if step.residual.is_zero() {
                    lines.push(format!("step {}: {} (exact)", i + 1, step.approx));
                    continue;
                }
                let lead = if i == 0 {
                    step.approx.mixed(false)
                } else {
                    format!(
                        "{} - {}",
                        chain[i - 1].approx.mixed(false),
                        step.correction.abs()
                    )
                };
                lines.push(format!(
                    "step {}: {} = {}, residual {}",
                    i + 1,
                    lead,
                    step.approx,
                    step.residual
                ));
            }
            emit_lines(&lines);
            ExitCode::SUCCESS
        }
        Command::Compare { radicand, steps } => {
            let n = match parse_radicand(&radicand) {
                Ok(n) => n,
                Err(code) => return code,
            };
            if n < BigUint::from(2u32) {
                return usage_error("comparison requires a radicand of at least 2");
            }
            let chain = refine_sequence(&n, StartChoice::Floor, steps);
            let start = fibroot::Rational::from_natural(&fibroot::isqrt_oracle(&n).root);
            let mut heron = start.clone();
            let mut newton = start;
            let mut equal = true;
            let mut lines = Vec::new();
            for (i, step) in chain.iter().enumerate() {
                heron = fibroot::heron_step(&heron, &n);
                newton = fibroot::newton_step(&newton, &n);
                lines.push(format!(
                    "step {}: fibonacci {}, heron {}, newton {}",
                    i + 1,
                    step.approx,
                    heron,
                    newton
                ));
                equal = equal && heron == step.approx && newton == step.approx;
            }
            if equal {
                lines.push(format!("EQUAL: all three agree for {} steps", chain.len()));
                emit_lines(&lines);
                ExitCode::SUCCESS
            } else {
                lines.push("MISMATCH: the iterations disagree".to_string());
                emit_lines(&lines);
                ExitCode::from(1)
            }
        }
        Command::Scale {
            radicand,
            pairs,
            fibonacci_order,
        } => {
            let n = match parse_radicand(&radicand) {
                Ok(n) => n,
                Err(code) => return code,
            };
            let outcome = scale_and_root(&n, pairs);
            let (whole, frac, corr) = outcome.components();
            let mut parts = vec![whole.to_string()];
            parts.extend(frac.map(|f| f.to_string()));
            parts.extend(corr.map(|c| c.to_string()));
            if fibonacci_order {
                parts.reverse();
            }
            emit_lines(&[
                outcome.result.to_string(),
                format!("descaled {}", parts.join(" ")),
            ]);
            ExitCode::SUCCESS
        }
        Command::Corpus { action } => match action {
            CorpusAction::Run { corrupt } => {
                if let Some(id) = &corrupt {
                    if !corpus::ENTRIES.iter().any(|e| e.id == id) {
                        return usage_error(&format!("unknown corpus id \"{id}\""));
                    }
                }
                let (lines, ok) = corpus::run(corrupt.as_deref());
                emit_lines(&lines);
                if ok {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            CorpusAction::List => {
                emit_lines(&corpus::list());
                ExitCode::SUCCESS
            }
            CorpusAction::Diff => {
                let (lines, ok) = corpus::diff();
                emit_lines(&lines);
                if ok {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            CorpusAction::Export => {
                emit_lines(&corpus::export());
                ExitCode::SUCCESS
            }
        },
    }
}
