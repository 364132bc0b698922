//! Ordered `key=value` reports.

use std::fmt;

use qhopf_core::AxiomReport;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    entries: Vec<(String, String)>,
}

pub fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

pub fn list<T: fmt::Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.entries.push((key.into(), value.to_string()));
    }

    pub fn flag(&mut self, key: impl Into<String>, ok: bool) {
        self.push(key, verdict(ok));
    }

    /// One line per check under `prefix`, with the residual of failures.
    pub fn checks(&mut self, prefix: &str, report: &AxiomReport) {
        for c in &report.checks {
            let key = format!("{prefix}.{}", c.name);
            self.flag(key.clone(), c.passed);
            if let (false, Some(r)) = (c.passed, &c.residual) {
                self.push(format!("{key}.residual"), r);
            }
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}
