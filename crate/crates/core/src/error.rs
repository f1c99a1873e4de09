use alloc::string::String;

use crate::hierarchy::ValidationReport;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown factor `{0}`")]
    UnknownFactor(String),
    #[error("unknown dimension `{0}`")]
    UnknownDimension(String),
    #[error("value `{value}` is not in dimension `{dimension}`")]
    ValueNotInDimension { dimension: String, value: String },
    #[error("value `{0}` is not in the value set")]
    UnknownValue(String),
    #[error("case `{case}` is not complete: missing {missing}")]
    IncompleteCase { case: String, missing: String },
    #[error("fact situation is not complete: missing {0}")]
    IncompleteSituation(String),
    #[error("fact situation has {found} entries but the universe has {expected}")]
    SituationShape { expected: usize, found: usize },
    #[error("invalid hierarchy: {0}")]
    InvalidHierarchy(ValidationReport),
    #[error("outcome dimension `{0}` must have exactly the values 0 and 1 with 0 below 1")]
    NonBinaryOutcome(String),
    #[error("factor `{0}` reaches the outcome with both polarities")]
    AmbiguousPolarity(String),
    #[error("unknown case `{0}`")]
    UnknownCase(String),
    #[error("duplicate case name `{0}`")]
    DuplicateCase(String),
    #[error(
        "enumeration needs {basic} basic factors ({situations} situations) but the cap is {cap}"
    )]
    EnumerationCap {
        basic: usize,
        situations: u128,
        cap: usize,
    },
}
