use serde::Serialize;

/// Pass/fail counts for one identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub checked: usize,
    pub failed: usize,
}

impl IdentityCheck {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<IdentityCheck>,
}

impl VerificationReport {
    pub fn record(&mut self, name: &str, checked: usize, failed: usize) {
        self.checks.push(IdentityCheck { name: name.to_string(), checked, failed });
    }

    /// Records a sweep of boolean outcomes.
    pub fn record_all(&mut self, name: &str, outcomes: &[bool]) {
        let failed = outcomes.iter().filter(|ok| !**ok).count();
        self.record(name, outcomes.len(), failed);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn ok(&self) -> bool {
        self.checks.iter().all(IdentityCheck::ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.ok())
    }

    pub fn get(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}
