use std::collections::BTreeSet;

use thiserror::Error;

use crate::problem::Label;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    /// A rule was asked to allocate a problem outside the domain it is
    /// defined on.
    #[error(
        "rule `{rule}` is only defined on the reduced domain, but holder(s) {holders:?} visited no museum"
    )]
    Domain { rule: String, holders: BTreeSet<Label> },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("unknown holder label {0}")]
    UnknownHolder(Label),

    #[error("unknown museum label {0}")]
    UnknownMuseum(Label),

    #[error("cannot stack problems: {0}")]
    Stack(String),

    #[error("frames do not match: {0}")]
    FrameMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("enumeration needs {needed} instances, over the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("unsupported axiom set: {0}")]
    UnsupportedAxioms(String),

    #[error("table is not shaped by equal treatment at pattern {0:?}")]
    NotEteShaped(BTreeSet<Label>),

    #[error("pattern {pattern:?} gives {unvisited} to unvisited museums while visited ones get 0")]
    OpdViolation {
        pattern: BTreeSet<Label>,
        unvisited: String,
    },

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
