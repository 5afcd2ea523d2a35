//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while ingesting data, fitting operators, or
/// rendering reports.
#[derive(Debug, Error)]
pub enum Error {
    /// Bad parameters or settings (invalid dictionary degree, negative
    /// lambda, malformed threshold rule, ...).
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("duplicate variable id {0:?}")]
    DuplicateVariable(String),

    /// Structural problems in an expression table or sample metadata.
    #[error("malformed table: {0}")]
    Table(String),

    /// A sample column in the table has no manifest entry.
    #[error("unmapped sample {0:?}: not present in the condition manifest")]
    UnmappedSample(String),

    /// A manifest entry names a sample the table does not contain.
    #[error("manifest sample {0:?} is missing from the table")]
    MissingSample(String),

    #[error("non-numeric value {value:?} for variable {variable:?} in sample {sample:?}")]
    NonNumericCell {
        variable: String,
        sample: String,
        value: String,
    },

    #[error("non-finite value for variable {variable:?} in sample {sample:?}")]
    NonFiniteValue { variable: String, sample: String },

    /// A replicate present at one timepoint of a condition is absent at
    /// another; pairing requires complete replicate series.
    #[error(
        "condition {condition:?}: incomplete replicate series \
         (replicate {replicate} is missing timepoint {timepoint})"
    )]
    IncompleteReplicates {
        condition: String,
        replicate: u32,
        timepoint: i64,
    },

    #[error("{}", fmt_unknown_variable(.id, .suggestion))]
    UnknownVariable {
        id: String,
        suggestion: Option<String>,
    },

    #[error("unknown condition {0:?}")]
    UnknownCondition(String),

    #[error("condition {0:?} has a single timepoint; at least two are required to form pairs")]
    SingleTimepoint(String),

    #[error("{context}: expected {expected}, got {got}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        got: usize,
    },

    #[error("{0} must not be empty")]
    Empty(&'static str),

    #[error("non-finite entries in {0}")]
    NonFiniteMatrix(String),

    /// Numerical routine failed to converge (Schur iteration and friends).
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("stage {stage:?} references {reference}, which is not an earlier completed stage")]
    UnresolvedStage { stage: String, reference: String },

    #[error("cycle detected in stage hierarchy: {0}")]
    CyclicHierarchy(String),

    #[error("stage {stage:?}: group {group:?} not found in {place}")]
    MissingGroup {
        stage: String,
        group: String,
        place: String,
    },

    #[error("future snapshot matrix has zero norm")]
    ZeroNormFuture,

    #[error("unknown block {requested:?}; available blocks: {}", available.join(", "))]
    UnknownBlock {
        requested: String,
        available: Vec<String>,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

fn fmt_unknown_variable(id: &str, suggestion: &Option<String>) -> String {
    match suggestion {
        Some(s) => format!("unknown variable {id:?} (did you mean {s:?}?)"),
        None => format!("unknown variable {id:?}"),
    }
}
