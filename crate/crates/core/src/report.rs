//! Itemized check reports shared by every checker and by the CLI.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Recorded outcome that does not gate the verdict.
    Info,
    /// Not evaluated because a prerequisite failed.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    pub stats: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), ..Default::default() }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    fn push(&mut self, name: impl Into<String>, status: Status, witness: Option<String>) {
        self.checks.push(Check { name: name.into(), status, witness });
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.push(name, Status::Pass, None);
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.push(name, Status::Fail, Some(witness.into()));
    }

    pub fn info(&mut self, name: impl Into<String>, note: impl Into<String>) {
        self.push(name, Status::Info, Some(note.into()));
    }

    pub fn skip(&mut self, name: impl Into<String>, reason: impl Into<String>) {
        self.push(name, Status::Skipped, Some(reason.into()));
    }

    /// Records `Ok` as a pass and `Err(witness)` as a failure; returns whether it passed.
    pub fn check(&mut self, name: impl Into<String>, outcome: Result<(), String>) -> bool {
        match outcome {
            Ok(()) => {
                self.pass(name);
                true
            }
            Err(w) => {
                self.fail(name, w);
                false
            }
        }
    }

    pub fn stat(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.stats.insert(key.into(), value.into());
    }

    /// Appends the checks of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for c in other.checks {
            let name = if prefix.is_empty() { c.name } else { format!("{prefix}.{}", c.name) };
            self.checks.push(Check { name, ..c });
        }
        for (k, v) in other.stats {
            let key = if prefix.is_empty() { k } else { format!("{prefix}.{k}") };
            self.stats.insert(key, v);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !matches!(c.status, Status::Fail | Status::Skipped))
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| matches!(c.status, Status::Fail | Status::Skipped))
    }

    pub fn status_of(&self, name: &str) -> Option<Status> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.status)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        if let Some(s) = self.seed {
            writeln!(f, "seed: {s}")?;
        }
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "INFO",
                Status::Skipped => "SKIP",
            };
            match &c.witness {
                Some(w) => writeln!(f, "  [{tag}] {}: {w}", c.name)?,
                None => writeln!(f, "  [{tag}] {}", c.name)?,
            }
        }
        for (k, v) in &self.stats {
            writeln!(f, "  {k} = {v}")?;
        }
        Ok(())
    }
}

/// Joins at most `limit` witnesses and notes how many were left out.
pub fn summarize<T: fmt::Display>(items: &[T], limit: usize) -> String {
    let mut s: Vec<String> = items.iter().take(limit).map(|x| x.to_string()).collect();
    if items.len() > limit {
        s.push(format!("... ({} more)", items.len() - limit));
    }
    s.join("; ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts() {
        let mut r = Report::new("t");
        r.pass("a");
        r.info("b", "note");
        assert!(r.passed());
        r.fail("c", "at (0,1)");
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
        assert_eq!(r.status_of("b"), Some(Status::Info));
        assert!(r.to_json().contains("\"fail\""));
    }
}
