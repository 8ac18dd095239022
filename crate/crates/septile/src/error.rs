use thiserror::Error;

use crate::ground::Subset;

/// A single structural defect found by a validator.
///
/// Validators collect every violation they can find instead of bailing on
/// the first, so a report is a list of these.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub what: String,
}

impl Violation {
    pub fn new(what: impl Into<String>) -> Self {
        Violation { what: what.into() }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.what)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("ground size {0} out of range (need 1..=64)")]
    GroundOutOfRange(usize),

    #[error("subset {subset} does not fit ground [{n}]")]
    SubsetOutOfGround { subset: Subset, n: u8 },

    #[error("ground mismatch: [{0}] vs [{1}]")]
    GroundMismatch(u8, u8),

    #[error("collection is not {kind}-separated: {a} vs {b}")]
    NotSeparated { kind: &'static str, a: Subset, b: Subset },

    #[error("collection is not a maximal {kind}-separated collection of full size (got {got}, need {need})")]
    NotMaximal { kind: &'static str, got: usize, need: usize },

    #[error("{0} is not in the spectrum")]
    NotInSpectrum(Subset),

    #[error("flip not applicable: {0}")]
    NotFlippable(String),

    #[error("cube set is not an order ideal")]
    NotIdeal,

    #[error("not a membrane: {0}")]
    NotMembrane(String),

    #[error("validation failed: {}", summarize(.0))]
    Invalid(Vec<Violation>),

    #[error("exhaustive mode supports n <= {limit}, got {n}")]
    ExhaustiveOutOfRange { n: u8, limit: u8 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn summarize(violations: &[Violation]) -> String {
    let mut s = format!("{} violation(s)", violations.len());
    for v in violations.iter().take(4) {
        s.push_str("; ");
        s.push_str(&v.what);
    }
    if violations.len() > 4 {
        s.push_str("; ...");
    }
    s
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
