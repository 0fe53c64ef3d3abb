//! Pass/fail records shared by the CLI, the self-test runner and the acceptance suite.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    /// The identity being checked, stated in words.
    pub anchor: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Check {
    pub fn pass(name: impl Into<String>, anchor: impl Into<String>) -> Check {
        Check { name: name.into(), anchor: anchor.into(), status: Status::Pass, residual: None }
    }

    /// A check that passes iff `residual` is None; a failure always carries its witness.
    pub fn from_residual(name: impl Into<String>, anchor: impl Into<String>, residual: Option<String>) -> Check {
        let status = if residual.is_some() { Status::Fail } else { Status::Pass };
        Check { name: name.into(), anchor: anchor.into(), status, residual }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed())
}
