use serde::Serialize;

/// Outcome of a verification suite: how many cells were checked and a
/// witness for every failing one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport { name: name.into(), checked: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn tick(&mut self) {
        self.checked += 1;
    }

    pub fn fail(&mut self, witness: impl Into<String>) {
        self.failures.push(witness.into());
    }

    /// Record one check; `witness` is only built on failure.
    pub fn check<F: FnOnce() -> String>(&mut self, ok: bool, witness: F) {
        self.checked += 1;
        if !ok {
            self.failures.push(witness());
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        write!(f, "{}: {} ({} checked", self.name, verdict, self.checked)?;
        if !self.failures.is_empty() {
            write!(f, ", {} failed", self.failures.len())?;
        }
        f.write_str(")")?;
        for w in self.failures.iter().take(5) {
            write!(f, "\n  {w}")?;
        }
        Ok(())
    }
}
