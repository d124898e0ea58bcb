//! Verification report rendering: structured, versioned, diffable text.

use isowill_core::golden::CheckLine;
use std::fmt::Write as _;

pub const REPORT_SCHEMA: &str = "report/1";

pub struct CaseReport {
    pub case: String,
    pub checks: Vec<CheckLine>,
}

impl CaseReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass()).count()
    }
}

pub fn render(reports: &[CaseReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# isowill verification report");
    let _ = writeln!(out, "schema = {REPORT_SCHEMA}");
    for report in reports {
        let _ = writeln!(out, "case {}", report.case);
        for c in &report.checks {
            let _ = writeln!(
                out,
                "check suite={} label=\"{}\" value={:.6e} tol={:.1e} status={}",
                c.suite,
                c.label,
                c.value,
                c.tolerance,
                if c.pass() { "PASS" } else { "FAIL" }
            );
        }
        let _ = writeln!(
            out,
            "summary case={} checks={} failures={}",
            report.case,
            report.checks.len(),
            report.failures()
        );
    }
    out
}
