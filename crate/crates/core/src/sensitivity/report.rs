use std::fmt;

use serde::{Deserialize, Serialize};

use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Verified,
    BoundedEvidence,
    PreconditionUnmet,
    Refuted,
}

impl Verdict {
    pub fn symbol(self) -> &'static str {
        match self {
            Verdict::Verified => "✓",
            Verdict::Refuted => "✗",
            Verdict::BoundedEvidence | Verdict::PreconditionUnmet => "~",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "verified",
            Verdict::Refuted => "refuted",
            Verdict::BoundedEvidence => "bounded-evidence",
            Verdict::PreconditionUnmet => "precondition-unmet",
        })
    }
}

/// One checked statement and the parameters it was checked under.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim: String,
    pub verdict: Verdict,
    pub epsilon: Rational,
    pub strict: bool,
    pub horizon: u64,
    pub k_max: Option<u64>,
    pub witnesses: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SensitivityReport {
    pub system: String,
    pub claims: Vec<ClaimReport>,
}

impl SensitivityReport {
    pub fn claim(&self, id: &str) -> Option<&ClaimReport> {
        self.claims.iter().find(|c| c.claim == id)
    }

    /// Least favourable verdict across all claims.
    pub fn worst(&self) -> Verdict {
        self.claims.iter().map(|c| c.verdict).max().unwrap_or(Verdict::Verified)
    }

    /// Verdicts only, for comparing runs that differ in non-verdict data.
    pub fn verdicts(&self) -> Vec<(String, Verdict)> {
        self.claims.iter().map(|c| (c.claim.clone(), c.verdict)).collect()
    }
}
