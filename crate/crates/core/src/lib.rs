//! Precedential constraint over case bases.
//!
//! Four result models decide whether a case base of precedents forces the
//! outcome of a new fact situation:
//!
//! - the flat factor-based model ([`rm_forces`]),
//! - the hierarchical factor-based model ([`hrm_forces`]),
//! - the flat dimension-based model ([`drm_forces`]),
//! - the hierarchical dimension-based model with lower and upper bounds
//!   ([`dhrm_bound`], [`dhrm_forces_outcome`]).
//!
//! Every evaluator returns a [`DerivationTrace`] that records which precedent
//! instantiated each recursive step and which condition blocked it. The
//! [`oracle`] module carries unmemoized reference evaluators, exhaustive
//! enumeration and consistency checking used to cross-check the main
//! evaluators.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod dimension_models;
mod error;
pub mod factor_models;
pub mod hierarchy;
pub mod oracle;
pub mod trace;

pub use dimension_models::{
    dhrm_bound, dhrm_forces_outcome, dhrm_outcome_verdict, dhrm_verdict, drm_forces, drm_verdict,
    BoundClaim, DimCase, DimCaseBase, DimSituation, Direction, FlatDimCase, FlatDimCaseBase,
};
pub use error::{Error, Result};
pub use factor_models::{
    hrm_forces, hrm_verdict, rm_forces, rm_verdict, satisfies, FactSituation, FactorCase,
    FactorCaseBase, FlatFactorCase, FlatFactorCaseBase, Side,
};
pub use hierarchy::{
    DimensionEdge, DimensionHierarchy, DimensionId, FactorEdge, FactorHierarchy, FactorId, Literal,
    OrderKind, Polarity, ValidationReport, Value, ValueOrder, Violation,
};
pub use trace::{
    Attempt, Blocker, Condition, DerivationTrace, DirectCheck, FailureWitness, Goal, Rule, Status,
};
