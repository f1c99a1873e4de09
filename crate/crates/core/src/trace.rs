//! Derivation traces: the unfolding of a forcing query.
//!
//! A trace node records the goal, whether the fact situation settles it
//! directly, and each precedent the evaluator tried. A precedent attempt
//! lists one [`Condition`] per subordinate condition of the instantiated
//! clause; hierarchical conditions carry the sub-trace of their subgoal.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::dimension_models::BoundClaim;
use crate::factor_models::Side;
use crate::hierarchy::{DimensionId, FactorId, Literal, Polarity, Value};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Goal {
    Side(Side),
    Literal(Literal),
    Bound(BoundClaim),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Forced,
    NotForced,
}

impl Status {
    pub fn from_bool(forced: bool) -> Self {
        if forced {
            Status::Forced
        } else {
            Status::NotForced
        }
    }

    pub fn is_forced(self) -> bool {
        self == Status::Forced
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// The fact situation itself settles the goal.
    Direct,
    /// The named precedent instantiates the recursive clause.
    Precedent { case: String },
}

/// Outcome of the direct clause.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DirectCheck {
    Holds,
    Fails,
    /// The situation has no value for the goal's factor or dimension.
    Undefined,
    /// Flat models have no direct clause.
    NotApplicable,
}

/// One condition of an instantiated clause.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Condition {
    /// A subordinate supporting the goal: if the precedent has it, the
    /// situation must be forced for it. `subgoal` is absent when vacuous.
    Pro {
        factor: FactorId,
        in_precedent: bool,
        holds: bool,
        subgoal: Option<Box<DerivationTrace>>,
    },
    /// A subordinate opposing the goal: if the situation is forced for it,
    /// the precedent must have it as well.
    Con {
        factor: FactorId,
        in_precedent: bool,
        holds: bool,
        subgoal: Box<DerivationTrace>,
    },
    /// Flat factor comparison. `role` is relative to the side being forced.
    Factor {
        factor: FactorId,
        role: Polarity,
        in_precedent: bool,
        in_situation: bool,
        holds: bool,
    },
    /// Hierarchical dimension subgoal: the precedent's value on a
    /// subordinate dimension bounds the situation's value.
    Bound {
        dimension: DimensionId,
        holds: bool,
        subgoal: Box<DerivationTrace>,
    },
    /// Flat dimension comparison.
    Compare {
        dimension: DimensionId,
        precedent: Value,
        situation: Value,
        holds: bool,
    },
}

impl Condition {
    pub fn holds(&self) -> bool {
        match self {
            Condition::Pro { holds, .. }
            | Condition::Con { holds, .. }
            | Condition::Factor { holds, .. }
            | Condition::Bound { holds, .. }
            | Condition::Compare { holds, .. } => *holds,
        }
    }

    /// Name of the factor or dimension the condition is about.
    pub fn subject(&self) -> &str {
        match self {
            Condition::Pro { factor, .. }
            | Condition::Con { factor, .. }
            | Condition::Factor { factor, .. } => factor.as_str(),
            Condition::Bound { dimension, .. } | Condition::Compare { dimension, .. } => {
                dimension.as_str()
            }
        }
    }

    pub fn subgoal(&self) -> Option<&DerivationTrace> {
        match self {
            Condition::Pro { subgoal, .. } => subgoal.as_deref(),
            Condition::Con { subgoal, .. } | Condition::Bound { subgoal, .. } => Some(subgoal),
            Condition::Factor { .. } | Condition::Compare { .. } => None,
        }
    }
}

/// A precedent considered for the recursive clause.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attempt {
    pub case: String,
    pub holds: bool,
    pub conditions: Vec<Condition>,
}

impl Attempt {
    pub fn first_failure(&self) -> Option<&Condition> {
        self.conditions.iter().find(|c| !c.holds())
    }
}

/// The first failing condition of a blocked precedent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Blocker {
    pub case: String,
    pub subject: String,
}

/// Why a goal is not forced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FailureWitness {
    /// Base-level goal the situation does not satisfy; there is no recursive clause.
    BaseLevel,
    /// No precedent qualifies for the recursive clause.
    NoPrecedent,
    /// Every qualifying precedent is blocked.
    Blocked { blockers: Vec<Blocker> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationTrace {
    pub goal: Goal,
    pub status: Status,
    pub rule: Option<Rule>,
    pub direct: DirectCheck,
    /// Precedents tried, in case-base order. When forced by a precedent the
    /// last attempt is the witness.
    pub attempts: Vec<Attempt>,
    pub failure_witness: Option<FailureWitness>,
}

impl DerivationTrace {
    pub fn is_forced(&self) -> bool {
        self.status.is_forced()
    }

    /// Number of nested goal levels, counting this one.
    pub fn depth(&self) -> usize {
        1 + self
            .attempts
            .iter()
            .flat_map(|a| a.conditions.iter())
            .filter_map(Condition::subgoal)
            .map(DerivationTrace::depth)
            .max()
            .unwrap_or(0)
    }

    /// The attempt that witnesses forcing, if forced by precedent.
    pub fn witness(&self) -> Option<&Attempt> {
        match &self.rule {
            Some(Rule::Precedent { case }) => {
                self.attempts.last().filter(|a| &a.case == case && a.holds)
            }
            _ => None,
        }
    }

    /// Follows first blockers down from a not-forced goal: each step is the
    /// first failing condition of the first blocked attempt. The chain ends
    /// at a goal that fails directly or at a failing condition without a
    /// failing subgoal.
    pub fn blocking_chain(&self) -> Vec<(&DerivationTrace, Option<&Condition>)> {
        let mut chain = Vec::new();
        let mut node = self;
        loop {
            if node.is_forced() {
                break;
            }
            let failure = node.attempts.iter().find_map(Attempt::first_failure);
            chain.push((node, failure));
            match failure.and_then(Condition::subgoal) {
                Some(sub) if !sub.is_forced() => node = sub,
                _ => break,
            }
        }
        chain
    }

    /// Structural self-consistency: status agrees with the rule, attempts
    /// agree with their conditions, conditions agree with their subgoals.
    pub fn is_well_formed(&self) -> bool {
        let status_ok = match (&self.status, &self.rule) {
            (Status::Forced, Some(Rule::Direct)) => self.direct == DirectCheck::Holds,
            (Status::Forced, Some(Rule::Precedent { .. })) => {
                self.direct != DirectCheck::Holds && self.witness().is_some()
            }
            (Status::NotForced, None) => {
                self.direct != DirectCheck::Holds
                    && self.attempts.iter().all(|a| !a.holds)
                    && self.failure_witness.is_some()
            }
            _ => false,
        };
        status_ok
            && self.attempts.iter().all(|a| {
                a.holds == a.conditions.iter().all(Condition::holds)
                    && a.conditions.iter().all(condition_well_formed)
            })
    }
}

fn condition_well_formed(c: &Condition) -> bool {
    match c {
        Condition::Pro {
            in_precedent,
            holds,
            subgoal,
            ..
        } => match subgoal {
            None => !in_precedent && *holds,
            Some(sub) => *in_precedent && *holds == sub.is_forced() && sub.is_well_formed(),
        },
        Condition::Con {
            in_precedent,
            holds,
            subgoal,
            ..
        } => *holds == (!subgoal.is_forced() || *in_precedent) && subgoal.is_well_formed(),
        Condition::Bound { holds, subgoal, .. } => {
            *holds == subgoal.is_forced() && subgoal.is_well_formed()
        }
        Condition::Factor {
            role,
            in_precedent,
            in_situation,
            holds,
            ..
        } => {
            *holds
                == match role {
                    Polarity::Pro => !in_precedent || *in_situation,
                    Polarity::Con => !in_situation || *in_precedent,
                }
        }
        Condition::Compare { .. } => true,
    }
}
