//! Pass/fail reports for axiom checks.

use crate::tensor::TensorElement;

/// One named identity, with the difference of its two sides when it fails.
#[derive(Clone, Debug)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    pub residual: Option<TensorElement>,
}

#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records the comparison `lhs == rhs`.
    pub fn compare(&mut self, name: &str, lhs: &TensorElement, rhs: &TensorElement) {
        let residual = lhs.sub(rhs).ok().filter(|r| !r.is_zero());
        self.checks.push(AxiomCheck {
            name: name.to_string(),
            passed: lhs == rhs,
            residual,
        });
    }

    pub fn record(&mut self, name: &str, passed: bool, residual: Option<TensorElement>) {
        self.checks.push(AxiomCheck {
            name: name.to_string(),
            passed,
            residual,
        });
    }

    /// Keeps the first failure under `name`, or records a pass.
    pub fn compare_all<I>(&mut self, name: &str, pairs: I)
    where
        I: IntoIterator<Item = (TensorElement, TensorElement)>,
    {
        for (lhs, rhs) in pairs {
            if lhs != rhs {
                self.compare(name, &lhs, &rhs);
                return;
            }
        }
        self.record(name, true, None);
    }

    pub fn extend(&mut self, other: AxiomReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> Option<bool> {
        self.get(name).map(|c| c.passed)
    }
}
