//! Structured pass/fail results of identity checks.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

/// Field order is alphabetical so the JSON keys come out sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub checked: usize,
    pub counterexamples: Vec<Counterexample>,
    pub notes: Vec<String>,
    pub passed: bool,
    pub schema: u32,
    pub suite: String,
}

const KEEP: usize = 3;

impl CheckReport {
    pub fn new(suite: &str) -> CheckReport {
        CheckReport { checked: 0, counterexamples: vec![], notes: vec![], passed: true, schema: 1, suite: suite.to_string() }
    }

    /// Records one comparison; keeps the first few failures as witnesses.
    pub fn expect(&mut self, ok: bool, inputs: impl FnOnce() -> Vec<String>, lhs: impl FnOnce() -> String, rhs: impl FnOnce() -> String) -> bool {
        self.checked += 1;
        if !ok {
            self.passed = false;
            if self.counterexamples.len() < KEEP {
                self.counterexamples.push(Counterexample { inputs: inputs(), lhs: lhs(), rhs: rhs() });
            }
        }
        ok
    }

    pub fn expect_eq<T: PartialEq + fmt::Display>(&mut self, inputs: impl FnOnce() -> Vec<String>, lhs: &T, rhs: &T) -> bool {
        self.expect(lhs == rhs, inputs, || lhs.to_string(), || rhs.to_string())
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Folds sub-reports into one, prefixing witnesses with the sub-suite name.
    pub fn merge(suite: &str, parts: Vec<CheckReport>) -> CheckReport {
        let mut r = CheckReport::new(suite);
        for p in parts {
            r.checked += p.checked;
            r.passed &= p.passed;
            for mut c in p.counterexamples {
                if r.counterexamples.len() < KEEP * 4 {
                    c.inputs.insert(0, p.suite.clone());
                    r.counterexamples.push(c);
                }
            }
            r.notes.extend(p.notes.into_iter().map(|n| format!("{}: {}", p.suite, n)));
            r.notes.push(format!("{}: {} ({} checks)", p.suite, if p.passed { "pass" } else { "FAIL" }, p.checked));
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {} ({} checks)", self.suite, if self.passed { "pass" } else { "FAIL" }, self.checked)?;
        for n in &self.notes {
            writeln!(f, "  {n}")?;
        }
        for c in &self.counterexamples {
            writeln!(f, "  counterexample at {}", c.inputs.join(", "))?;
            writeln!(f, "    lhs = {}", c.lhs)?;
            writeln!(f, "    rhs = {}", c.rhs)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keys_sorted_and_stable() {
        let mut r = CheckReport::new("demo");
        r.expect(false, || vec!["x".into()], || "1".into(), || "2".into());
        let j = r.to_json();
        let keys: Vec<usize> = ["checked", "counterexamples", "notes", "passed", "schema", "suite"]
            .iter()
            .map(|k| j.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(j, r.clone().to_json());
        assert!(!r.passed);
    }
}
