//! Structured check results with text and JSON renderings.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

/// Maximum number of witnesses kept per check. The total violation count is
/// always exact.
pub const MAX_WITNESSES: usize = 16;

/// One named assignment that makes a check fail, e.g. `x=0 y=e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub fields: Vec<(String, String)>,
}

impl Witness {
    pub fn new() -> Self {
        Self { fields: Vec::new() }
    }

    pub fn with(mut self, name: &str, value: impl ToString) -> Self {
        self.fields.push((name.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v.as_str())
    }
}

impl Default for Witness {
    fn default() -> Self {
        Self::new()
    }
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, (k, v)) in self.fields.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// Builds a [`Witness`] from `name = value` pairs.
#[macro_export]
macro_rules! witness {
    ($($name:ident = $value:expr),* $(,)?) => {
        $crate::report::Witness::new()$(.with(stringify!($name), $value))*
    };
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub violations: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl Check {
    pub fn pass(id: impl Into<String>) -> Self {
        CheckBuilder::new(id).finish()
    }

    pub fn fail(id: impl Into<String>, witness: Witness) -> Self {
        let mut b = CheckBuilder::new(id);
        b.violation(witness);
        b.finish()
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Accumulates violations for a single check.
#[derive(Debug)]
pub struct CheckBuilder {
    id: String,
    violations: usize,
    witnesses: Vec<Witness>,
}

impl CheckBuilder {
    pub fn new(id: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            violations: 0,
            witnesses: Vec::new(),
        }
    }

    pub fn violation(&mut self, witness: Witness) {
        self.violations += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness);
        }
    }

    /// Records a violation unless `ok` holds; the witness is built lazily.
    pub fn expect(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        if !ok {
            self.violation(witness());
        }
    }

    pub fn violations(&self) -> usize {
        self.violations
    }

    pub fn finish(self) -> Check {
        Check {
            id: self.id,
            passed: self.violations == 0,
            violations: self.violations,
            witnesses: self.witnesses,
            note: None,
            elapsed_ms: None,
        }
    }
}

/// Runs `f` and, if `timed`, stamps the wall-clock duration on the check.
pub fn timed(timed: bool, f: impl FnOnce() -> Check) -> Check {
    let start = Instant::now();
    let mut check = f();
    if timed {
        check.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    check
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub info: Vec<(String, String)>,
    pub checks: Vec<Check>,
    pub verdict: String,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            info: Vec::new(),
            checks: Vec::new(),
            verdict: String::new(),
        }
    }

    pub fn info(&mut self, key: impl Into<String>, value: impl ToString) {
        self.info.push((key.into(), value.to_string()));
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Sets the verdict to PASS/FAIL from the checks, unless one was already set.
    pub fn finalize(mut self) -> Self {
        if self.verdict.is_empty() {
            self.verdict = if self.passed() { "PASS" } else { "FAIL" }.to_string();
        }
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== {} ==", self.title);
        for (k, v) in &self.info {
            let _ = writeln!(out, "  {k}: {v}");
        }
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let _ = write!(out, "[{status}] {}", c.id);
            if !c.passed {
                let _ = write!(out, " ({} violations)", c.violations);
            }
            if let Some(ms) = c.elapsed_ms {
                let _ = write!(out, " [{ms:.2} ms]");
            }
            if let Some(note) = &c.note {
                let _ = write!(out, " -- {note}");
            }
            out.push('\n');
            for w in &c.witnesses {
                let _ = writeln!(out, "    witness: {w}");
            }
        }
        let _ = writeln!(out, "verdict: {}", self.verdict);
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_caps_witnesses_but_counts_all() {
        let mut b = CheckBuilder::new("c");
        for i in 0..40 {
            b.violation(witness!(i = i));
        }
        let c = b.finish();
        assert!(!c.passed);
        assert_eq!(c.violations, 40);
        assert_eq!(c.witnesses.len(), MAX_WITNESSES);
    }

    #[test]
    fn report_verdict_and_rendering() {
        let mut r = Report::new("t");
        r.push(Check::pass("a"));
        r.push(Check::fail("b", witness!(x = 1, y = "e")));
        let r = r.finalize();
        assert_eq!(r.verdict, "FAIL");
        let text = r.to_text();
        assert!(text.contains("[FAIL] b (1 violations)"));
        assert!(text.contains("witness: x=1 y=e"));
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }
}
