use std::fmt;

use serde::{Deserialize, Serialize};

/// One failed structural law, located at the basis elements that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub law: String,
    pub location: String,
}

impl Violation {
    pub fn new(law: impl Into<String>, location: impl Into<String>) -> Self {
        Self { law: law.into(), location: location.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {}", self.law, self.location)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("modulus {0} is not a prime in 2..=97")]
    InvalidModulus(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("validation failed: {}", join(.0))]
    Validation(Vec<Violation>),
    #[error("linear system has no solution: {0}")]
    Inconsistent(String),
    #[error("module is not finitely generated projective: {0}")]
    NotProjective(String),
    #[error("object does not lie in the required invariant subspace: {0}")]
    NotInvariant(String),
    #[error("criterion not met: {0}")]
    CriterionNotMet(String),
    #[error("cotensor product does not preserve the defining equalizer: {0}")]
    EqualizerNotPreserved(String),
    #[error("search space too large: {0}")]
    SearchSpaceTooLarge(String),
    #[error("criteria disagree: {0}")]
    InconsistentCriteria(String),
    #[error("witness failed re-verification: {0}")]
    WitnessViolation(String),
    #[error("unknown identifier: {0}")]
    UnknownId(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;

/// Turns a violation list into `Ok(())` or a validation error.
pub fn check(violations: Vec<Violation>) -> Result<()> {
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::Validation(violations))
    }
}
