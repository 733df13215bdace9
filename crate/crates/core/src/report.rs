//! Structured pass/fail reports for sampled validation runs.

use crate::numfmt::fmt_g17;

/// Outcome of one named check: sample counts and the first counterexample.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub samples: usize,
    pub violations: usize,
    pub first_witness: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// A named collection of check results; renders to a deterministic text
/// report with 17-digit numbers.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub title: String,
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn new(title: impl Into<String>) -> Self {
        ValidationReport { title: title.into(), checks: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    /// Records the outcome of a sampled check.
    pub fn push(
        &mut self,
        name: impl Into<String>,
        samples: usize,
        violations: usize,
        first_witness: Option<String>,
    ) {
        self.checks.push(CheckResult { name: name.into(), samples, violations, first_witness });
    }

    /// Appends every check of `other`, prefixing names with its title.
    pub fn absorb(&mut self, other: ValidationReport) {
        for mut check in other.checks {
            check.name = format!("{}: {}", other.title, check.name);
            self.checks.push(check);
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("== {} ==\n", self.title));
        out.push_str(&format!(
            "status: {}\n",
            if self.passed() { "PASS" } else { "FAIL" }
        ));
        for check in &self.checks {
            out.push_str(&format!(
                "{}: {} (samples={}, violations={})\n",
                check.name,
                if check.passed() { "PASS" } else { "FAIL" },
                check.samples,
                check.violations
            ));
            if let Some(w) = &check.first_witness {
                out.push_str(&format!("  first witness: {w}\n"));
            }
        }
        out
    }
}

/// Tracks violations for one check while sampling, keeping only the first
/// witness string.
#[derive(Debug, Default)]
pub struct CheckAccumulator {
    samples: usize,
    violations: usize,
    first_witness: Option<String>,
}

impl CheckAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records one sample; `witness` is invoked only for the first failure.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.samples += 1;
        if !ok {
            self.violations += 1;
            if self.first_witness.is_none() {
                self.first_witness = Some(witness());
            }
        }
    }

    pub fn violations(&self) -> usize {
        self.violations
    }

    pub fn finish(self, report: &mut ValidationReport, name: impl Into<String>) {
        report.push(name, self.samples, self.violations, self.first_witness);
    }
}

/// Witness fragment `label=value` with the shared float format.
pub fn witness_value(label: &str, value: f64) -> String {
    format!("{label}={}", fmt_g17(value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_renders_pass_and_fail() {
        let mut rep = ValidationReport::new("axioms");
        rep.push("first", 10, 0, None);
        assert!(rep.passed());
        rep.push("second", 10, 2, Some("x=1".into()));
        assert!(!rep.passed());
        let text = rep.render();
        assert!(text.contains("== axioms =="));
        assert!(text.contains("status: FAIL"));
        assert!(text.contains("first: PASS (samples=10, violations=0)"));
        assert!(text.contains("second: FAIL (samples=10, violations=2)"));
        assert!(text.contains("first witness: x=1"));
    }

    #[test]
    fn accumulator_keeps_first_witness_only() {
        let mut acc = CheckAccumulator::new();
        acc.record(true, || unreachable!());
        acc.record(false, || "w1".into());
        acc.record(false, || "w2".into());
        let mut rep = ValidationReport::new("t");
        acc.finish(&mut rep, "check");
        assert_eq!(rep.checks[0].violations, 2);
        assert_eq!(rep.checks[0].samples, 3);
        assert_eq!(rep.checks[0].first_witness.as_deref(), Some("w1"));
    }
}
