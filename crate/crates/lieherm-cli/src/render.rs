//! Text and JSON renderings of a [`RunReport`]; both carry the same verdicts.

use std::fmt::Write;

use crate::run::RunReport;

pub fn json(report: &RunReport) -> String {
    serde_json::to_string_pretty(report).expect("reports serialize")
}

pub fn text(report: &RunReport) -> String {
    let mut out = String::new();
    for e in &report.entries {
        let mark = if e.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{mark} {} [{}] {}", e.name, e.kind, e.description);
        let flags: Vec<String> = e.flags.iter().map(|(k, v)| format!("{k}={v}")).collect();
        if !flags.is_empty() {
            let _ = writeln!(out, "     flags: {}", flags.join(" "));
        }
        for m in &e.mismatches {
            let _ = writeln!(out, "     mismatch: {m}");
        }
        for w in &e.warnings {
            let _ = writeln!(out, "     warning: {w}");
        }
    }
    let failed = report.entries.iter().filter(|e| !e.passed).count();
    let _ = writeln!(
        out,
        "{}: {} passed, {failed} failed ({})",
        if report.passed { "OK" } else { "FAILED" },
        report.entries.len() - failed,
        report.command
    );
    out
}

/// `(name, passed)` pairs recovered from the text rendering.
pub fn parse_text_verdicts(text: &str) -> Vec<(String, bool)> {
    text.lines()
        .filter_map(|l| {
            let (passed, rest) = match l.split_once(' ')? {
                ("PASS", r) => (true, r),
                ("FAIL", r) => (false, r),
                _ => return None,
            };
            Some((rest.split(" [").next()?.to_string(), passed))
        })
        .collect()
}
