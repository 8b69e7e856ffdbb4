//! Pass/fail records with numeric margins.

use std::fmt;

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    /// Signed slack of the check: positive means the claim holds with room
    /// to spare. Its meaning is check-specific (a distance, a count gap, ...).
    pub margin: f64,
    /// Index pairs that caused a failure (1-based component indices).
    pub offending: Vec<(usize, usize)>,
    pub detail: String,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, passed: bool, margin: f64) -> Self {
        Self {
            name: name.into(),
            passed,
            margin,
            offending: Vec::new(),
            detail: String::new(),
        }
    }

    pub fn with_offending(mut self, offending: Vec<(usize, usize)>) -> Self {
        self.offending = offending;
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

/// Ordered list of check records; overall pass is the conjunction.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerificationReport {
    pub records: Vec<CheckRecord>,
}

/// Margin of a counting check: zero when nothing failed, minus the number of
/// failures otherwise.
pub fn count_margin(failures: usize) -> f64 {
    if failures == 0 {
        0.0
    } else {
        -(failures as f64)
    }
}

const MAX_LISTED_OFFENDERS: usize = 20;

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.records.push(record);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.records.extend(other.records);
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.passed)
    }

    /// Deterministic text serialization.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "genus2-report v1")?;
        for r in &self.records {
            write!(
                f,
                "check {} {} margin {:.12e}",
                r.name,
                if r.passed { "PASS" } else { "FAIL" },
                r.margin
            )?;
            if !r.offending.is_empty() {
                let listed: Vec<String> = r
                    .offending
                    .iter()
                    .take(MAX_LISTED_OFFENDERS)
                    .map(|(i, j)| format!("{i}-{j}"))
                    .collect();
                write!(f, " offending {}", listed.join(","))?;
                if r.offending.len() > MAX_LISTED_OFFENDERS {
                    write!(f, ",...({} total)", r.offending.len())?;
                }
            }
            if !r.detail.is_empty() {
                write!(f, " # {}", r.detail)?;
            }
            writeln!(f)?;
        }
        writeln!(f, "overall {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}
