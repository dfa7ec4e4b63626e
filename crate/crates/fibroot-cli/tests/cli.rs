//! End-to-end checks of the `fibroot` binary: output formats and exit codes.

use std::process::{Command, Output};

fn fibroot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fibroot"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = fibroot(args);
    assert!(out.status.success(), "{args:?} failed: {out:?}");
    String::from_utf8(out.stdout).expect("output is UTF-8")
}

fn exit_code(args: &[&str]) -> i32 {
    fibroot(args).status.code().expect("no signal")
}

#[test]
fn isqrt_prints_root_and_remainder() {
    assert_eq!(stdout_of(&["isqrt", "743"]), "root 27 remainder 14\n");
    assert_eq!(stdout_of(&["isqrt", "0"]), "root 0 remainder 0\n");
    assert_eq!(
        stdout_of(&["isqrt", "98765432109876543210"]),
        "root 9938079900 remainder 11092533210\n"
    );
}

#[test]
fn isqrt_accepts_every_rule() {
    for rule in [
        "exact-largest",
        "exact-smallest",
        "q-full",
        "q-tens",
        "q-coarse",
        "q-coarsest",
    ] {
        assert_eq!(
            stdout_of(&["isqrt", "927435", "--rule", rule]),
            "root 963 remainder 66\n",
            "under rule {rule}"
        );
    }
}

#[test]
fn isqrt_trace_appends_the_board() {
    let text = stdout_of(&["isqrt", "743", "--trace"]);
    assert_eq!(
        text,
        "root 27 remainder 14\n\
         3_2 6_4     (14_5\n\
         *7* *4* *3*\n\
         \u{20}   2_1 7_3\n\
         \u{20}   2_1 7_3\n"
    );
}

#[test]
fn isqrt_trace_respects_the_style() {
    let pg = stdout_of(&["isqrt", "864", "--trace", "--style", "pg"]);
    assert!(pg.contains("4_3"), "doubled row missing: {pg}");
    let la = stdout_of(&["isqrt", "864", "--trace", "--style", "la1228"]);
    assert_ne!(pg, la);
}

#[test]
fn isqrt_json_is_the_whole_output() {
    let text = stdout_of(&["isqrt", "743", "--json"]);
    assert!(text.starts_with('{') && text.ends_with("}\n"));
    let doc: serde_json::Value = serde_json::from_str(&text).expect("valid JSON");
    assert_eq!(doc["radicand"], "743");
    assert_eq!(doc["rule"], "exact-largest");
    assert_eq!(doc["style"], "la1228");
    assert_eq!(doc["result"]["root"], "27");
    assert_eq!(doc["result"]["remainder"], "14");
    assert_eq!(doc["events"].as_array().unwrap().len(), 6);
}

#[test]
fn refine_walks_the_unit_fraction_chain() {
    assert_eq!(
        stdout_of(&["refine", "10", "--steps", "2"]),
        "step 1: 3 1/6 = 19/6, residual -1/36\n\
         step 2: 3 1/6 - 1/228 = 721/228, residual -1/51984\n"
    );
    assert_eq!(stdout_of(&["refine", "25"]), "step 1: 5 (exact)\n");
    assert_eq!(
        stdout_of(&["refine", "10", "--steps", "1", "--start", "ceiling"]),
        "step 1: 3 1/4 = 13/4, residual -9/16\n"
    );
}

#[test]
fn compare_reports_agreement() {
    let text = stdout_of(&["compare", "10", "--steps", "2"]);
    assert_eq!(
        text,
        "step 1: fibonacci 19/6, heron 19/6, newton 19/6\n\
         step 2: fibonacci 721/228, heron 721/228, newton 721/228\n\
         EQUAL: all three agree for 2 steps\n"
    );
}

#[test]
fn scale_descals_into_components() {
    assert_eq!(
        stdout_of(&["scale", "7234", "2"]),
        "root 8505 remainder 4975\ndescaled 85 1/20 1/400\n"
    );
    assert_eq!(
        stdout_of(&["scale", "7234", "2", "--fibonacci-order"]),
        "root 8505 remainder 4975\ndescaled 1/400 1/20 85\n"
    );
    assert_eq!(
        stdout_of(&["scale", "10", "0"]),
        "root 3 remainder 1\ndescaled 3 1/6\n"
    );
}

#[test]
fn corpus_list_names_all_sixteen() {
    let text = stdout_of(&["corpus", "list"]);
    assert_eq!(text.lines().count(), 16);
    assert!(text.contains("la-72340000: sqrt 72340000 = 8505 remainder 4975"));
}

#[test]
fn corpus_run_passes_clean() {
    let text = stdout_of(&["corpus", "run"]);
    assert!(text.lines().all(|l| !l.starts_with("FAIL")));
    assert!(text.trim_end().ends_with("corpus: 22/22 checks passed"));
}

#[test]
fn corpus_run_detects_corruption() {
    let out = fibroot(&["corpus", "run", "--corrupt", "la-743"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    let fails: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(fails.len(), 1);
    assert!(fails[0].contains("la-743"));
}

#[test]
fn corpus_diff_checks_the_fixtures() {
    let text = stdout_of(&["corpus", "diff"]);
    assert_eq!(
        text.lines().filter(|l| l.starts_with("ok ")).count(),
        9,
        "not all fixtures verified: {text}"
    );
}

#[test]
fn corpus_export_is_pipe_separated() {
    let text = stdout_of(&["corpus", "export"]);
    assert_eq!(text.lines().count(), 16);
    assert!(text
        .lines()
        .all(|l| l.matches('|').count() == 6 && !l.contains('\r')));
}

#[test]
fn domain_errors_exit_with_two() {
    assert_eq!(exit_code(&["refine", "0"]), 2);
    assert_eq!(exit_code(&["compare", "1"]), 2);
    assert_eq!(exit_code(&["isqrt", "-4"]), 2);
    assert_eq!(exit_code(&["isqrt", "ten"]), 2);
    assert_eq!(exit_code(&["isqrt", "10", "--rule", "bogus"]), 2);
    assert_eq!(exit_code(&["isqrt", "10", "--style", "bogus"]), 2);
    assert_eq!(exit_code(&["refine", "10", "--start", "sideways"]), 2);
    assert_eq!(exit_code(&["corpus", "run", "--corrupt", "nonsense"]), 2);
}
