//! Serializable verdict records shared by the analyzers.

use serde::Serialize;

use crate::oracle::adjunction::{FamilyVerdict, SplittingWitness};

/// Whether a verdict is exact or only holds on a finite test family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    Exact,
    Family,
}

/// One evaluated condition with the criterion that decided it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub criterion: String,
    pub scope: Scope,
    pub verdict: bool,
    pub detail: String,
}

impl Condition {
    pub fn exact(criterion: &str, verdict: bool, detail: impl Into<String>) -> Self {
        Self { criterion: criterion.into(), scope: Scope::Exact, verdict, detail: detail.into() }
    }

    pub fn family(criterion: &str, verdict: bool, detail: impl Into<String>) -> Self {
        Self { criterion: criterion.into(), scope: Scope::Family, verdict, detail: detail.into() }
    }
}

/// Summary of a splitting re-checked on a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingSummary {
    pub origin: String,
    pub objects: Vec<String>,
    pub spanning_checks: usize,
    pub naturality_checks: usize,
}

impl From<&SplittingWitness> for SplittingSummary {
    fn from(w: &SplittingWitness) -> Self {
        Self {
            origin: w.origin.clone(),
            objects: w.components.iter().map(|(l, _)| l.clone()).collect(),
            spanning_checks: w.spanning_checks,
            naturality_checks: w.naturality_checks,
        }
    }
}

/// Result of the family-level checks for one functor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyEvidence {
    /// Per-object splitting of the relevant unit or counit component.
    pub per_object: Vec<(String, bool)>,
    /// Present when the criterion produced a witness.
    pub splitting: Option<SplittingSummary>,
    /// Present when the criterion failed: whether the family refutes too.
    pub family_system: Option<FamilyVerdict>,
}

impl FamilyEvidence {
    pub fn full_on_family(&self) -> bool {
        self.per_object.iter().all(|(_, ok)| *ok)
    }
}

/// Options shared by all analyzers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    /// Sampled naturality squares per witness.
    pub naturality_samples: usize,
    /// Run the family-level oracle checks.
    pub family_checks: bool,
}

impl Default for Options {
    fn default() -> Self {
        Self { seed: 0, naturality_samples: 8, family_checks: true }
    }
}
