use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("occupation {occupation} in slot {slot} exceeds cutoff {cutoff}")]
    CutoffOverflow { slot: usize, occupation: u32, cutoff: u32 },
    #[error("slot signature mismatch at position {position}: operator expects {expected}, space has {found}")]
    SignatureMismatch { position: usize, expected: String, found: String },
    #[error("parameter constraint {relation} violated")]
    Constraint { relation: String },
    #[error("block {key:?}: no solution (inconsistent system)")]
    Inconsistent { key: (u32, u32) },
    #[error("block {key:?}: solution space has dimension {dimension}")]
    NotUnique { key: (u32, u32), dimension: usize },
    #[error("coefficient not defined at the evaluation point: {0}")]
    EvaluationPole(String),
    #[error("gate {gate} failed: {detail}")]
    Gate { gate: String, detail: String },
    #[error("degree {degree} exceeds the rewriting bound {bound}")]
    DegreeBound { degree: usize, bound: usize },
    #[error("malformed dump: {0}")]
    Dump(String),
}
