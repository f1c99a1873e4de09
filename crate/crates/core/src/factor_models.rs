//! Factor-based forcing: the flat result model over a global pro/con
//! partition and the hierarchical result model over a factor hierarchy.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hierarchy::{FactorHierarchy, FactorId, Literal, Polarity, ValidationReport, Violation};
use crate::trace::{
    Attempt, Blocker, Condition, DerivationTrace, DirectCheck, FailureWitness, Goal, Rule, Status,
};

/// The two possible outcomes: for the plaintiff (`Pi`) or the defendant (`Delta`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Pi,
    Delta,
}

impl Side {
    pub fn opposite(self) -> Self {
        match self {
            Side::Pi => Side::Delta,
            Side::Delta => Side::Pi,
        }
    }

    pub fn from_outcome(value: bool) -> Self {
        if value {
            Side::Pi
        } else {
            Side::Delta
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Pi => "pi",
            Side::Delta => "delta",
        })
    }
}

/// A partial truth assignment, indexed like the factor list it was built
/// against (a hierarchy or a flat case base).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactSituation {
    values: Vec<Option<bool>>,
}

impl FactSituation {
    pub fn from_values(values: Vec<Option<bool>>) -> Self {
        Self { values }
    }

    pub fn undefined(len: usize) -> Self {
        Self {
            values: vec![None; len],
        }
    }

    /// Builds a situation over the hierarchy's factors from named assignments.
    pub fn from_named<'a>(
        hierarchy: &FactorHierarchy,
        assignments: impl IntoIterator<Item = (&'a str, bool)>,
    ) -> Result<Self> {
        let mut values = vec![None; hierarchy.len()];
        for (name, value) in assignments {
            values[hierarchy.require(name)?] = Some(value);
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[Option<bool>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<bool> {
        self.values[index]
    }

    pub fn set(&mut self, index: usize, value: Option<bool>) {
        self.values[index] = value;
    }

    #[must_use]
    pub fn with(mut self, index: usize, value: Option<bool>) -> Self {
        self.values[index] = value;
        self
    }

    pub fn is_complete(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    pub fn undefined_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_none())
            .map(|(i, _)| i)
    }

    pub(crate) fn check_len(&self, expected: usize) -> Result<()> {
        if self.values.len() == expected {
            Ok(())
        } else {
            Err(Error::SituationShape {
                expected,
                found: self.values.len(),
            })
        }
    }
}

/// A precedent: a named, complete fact situation. Its outcome is its value
/// on the hierarchy's outcome factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorCase {
    pub name: String,
    pub facts: FactSituation,
}

impl FactorCase {
    pub fn new(name: impl Into<String>, facts: FactSituation) -> Self {
        Self {
            name: name.into(),
            facts,
        }
    }
}

fn missing_names<'a>(facts: &FactSituation, name_of: impl Fn(usize) -> &'a str) -> String {
    let names: Vec<&str> = facts.undefined_indices().map(name_of).collect();
    names.join(", ")
}

/// A set of complete precedents over a validated factor hierarchy.
#[derive(Debug, Clone)]
pub struct FactorCaseBase<'h> {
    hierarchy: &'h FactorHierarchy,
    cases: Vec<FactorCase>,
}

impl<'h> FactorCaseBase<'h> {
    pub fn new(hierarchy: &'h FactorHierarchy, cases: Vec<FactorCase>) -> Result<Self> {
        hierarchy.ensure_valid()?;
        let mut names = BTreeSet::new();
        for case in &cases {
            case.facts.check_len(hierarchy.len())?;
            if !case.facts.is_complete() {
                return Err(Error::IncompleteCase {
                    case: case.name.clone(),
                    missing: missing_names(&case.facts, |i| hierarchy.id(i).as_str()),
                });
            }
            if !names.insert(case.name.as_str()) {
                return Err(Error::DuplicateCase(case.name.clone()));
            }
        }
        Ok(Self { hierarchy, cases })
    }

    pub fn hierarchy(&self) -> &'h FactorHierarchy {
        self.hierarchy
    }

    pub fn cases(&self) -> &[FactorCase] {
        &self.cases
    }

    pub fn len(&self) -> usize {
        self.cases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cases.is_empty()
    }

    /// The named cases, kept in case-base order.
    pub fn subset(&self, names: &[&str]) -> Result<Self> {
        for name in names {
            if !self.cases.iter().any(|c| c.name == *name) {
                return Err(Error::UnknownCase((*name).into()));
            }
        }
        Ok(Self {
            hierarchy: self.hierarchy,
            cases: self
                .cases
                .iter()
                .filter(|c| names.contains(&c.name.as_str()))
                .cloned()
                .collect(),
        })
    }
}

/// `F ⊨ ℓ`: the situation assigns the literal's factor the matching truth value.
pub fn satisfies(
    hierarchy: &FactorHierarchy,
    situation: &FactSituation,
    literal: &Literal,
) -> Result<bool> {
    situation.check_len(hierarchy.len())?;
    let index = hierarchy.require(literal.factor.as_str())?;
    Ok(situation.get(index) == Some(!literal.negated))
}

/// Whether the case base forces `literal` in the hierarchical result model,
/// with the derivation.
pub fn hrm_forces(
    cb: &FactorCaseBase<'_>,
    situation: &FactSituation,
    literal: &Literal,
) -> Result<(bool, DerivationTrace)> {
    let (factor, mut engine) = Hrm::prepare(cb, situation, literal, true)?;
    let (forced, trace) = engine.eval(factor, literal.negated);
    Ok((forced, trace.expect("recording engine yields a trace")))
}

/// [`hrm_forces`] without building the derivation.
pub fn hrm_verdict(
    cb: &FactorCaseBase<'_>,
    situation: &FactSituation,
    literal: &Literal,
) -> Result<bool> {
    let (factor, mut engine) = Hrm::prepare(cb, situation, literal, false)?;
    Ok(engine.eval(factor, literal.negated).0)
}

struct Hrm<'a, 'h> {
    cb: &'a FactorCaseBase<'h>,
    situation: &'a FactSituation,
    record: bool,
    verdicts: Vec<[Option<bool>; 2]>,
    traces: Vec<[Option<DerivationTrace>; 2]>,
}

impl<'a, 'h> Hrm<'a, 'h> {
    fn prepare(
        cb: &'a FactorCaseBase<'h>,
        situation: &'a FactSituation,
        literal: &Literal,
        record: bool,
    ) -> Result<(usize, Self)> {
        let h = cb.hierarchy;
        situation.check_len(h.len())?;
        let factor = h.require(literal.factor.as_str())?;
        let engine = Self {
            cb,
            situation,
            record,
            verdicts: vec![[None; 2]; h.len()],
            traces: if record {
                vec![[None, None]; h.len()]
            } else {
                Vec::new()
            },
        };
        Ok((factor, engine))
    }

    fn eval(&mut self, factor: usize, negated: bool) -> (bool, Option<DerivationTrace>) {
        let slot = usize::from(negated);
        if self.record {
            if let Some(trace) = &self.traces[factor][slot] {
                return (trace.is_forced(), Some(trace.clone()));
            }
        } else if let Some(forced) = self.verdicts[factor][slot] {
            return (forced, None);
        }
        let (forced, trace) = self.compute(factor, negated);
        self.verdicts[factor][slot] = Some(forced);
        if let Some(trace) = &trace {
            self.traces[factor][slot] = Some(trace.clone());
        }
        (forced, trace)
    }

    fn compute(&mut self, factor: usize, negated: bool) -> (bool, Option<DerivationTrace>) {
        let cb = self.cb;
        let h = cb.hierarchy;
        let record = self.record;
        let goal = || {
            Goal::Literal(Literal {
                factor: h.id(factor).clone(),
                negated,
            })
        };
        let direct = match self.situation.get(factor) {
            Some(v) if v != negated => DirectCheck::Holds,
            Some(_) => DirectCheck::Fails,
            None => DirectCheck::Undefined,
        };
        if direct == DirectCheck::Holds {
            return (
                true,
                record.then(|| leaf(goal(), Status::Forced, Some(Rule::Direct), direct, None)),
            );
        }
        if h.is_basic(factor) {
            return (
                false,
                record.then(|| {
                    leaf(
                        goal(),
                        Status::NotForced,
                        None,
                        direct,
                        Some(FailureWitness::BaseLevel),
                    )
                }),
            );
        }

        // Pro(¬p) = Con(p) and Con(¬p) = Pro(p).
        let subordinates: Vec<(usize, Polarity)> = h
            .direct_subordinates(factor)
            .map(|(child, p)| (child, if negated { p.flip() } else { p }))
            .collect();

        let mut attempts = Vec::new();
        for case in &cb.cases {
            if case.facts.get(factor) != Some(!negated) {
                continue;
            }
            let mut conditions = Vec::new();
            let mut all_hold = true;
            for &(sub, role) in &subordinates {
                let in_precedent = case.facts.get(sub) == Some(true);
                let (holds, condition) = match role {
                    Polarity::Pro if in_precedent => {
                        let (forced, trace) = self.eval(sub, false);
                        let condition = trace.map(|t| Condition::Pro {
                            factor: h.id(sub).clone(),
                            in_precedent,
                            holds: forced,
                            subgoal: Some(Box::new(t)),
                        });
                        (forced, condition)
                    }
                    Polarity::Pro => (
                        true,
                        record.then(|| Condition::Pro {
                            factor: h.id(sub).clone(),
                            in_precedent,
                            holds: true,
                            subgoal: None,
                        }),
                    ),
                    Polarity::Con => {
                        let (forced, trace) = self.eval(sub, false);
                        let holds = !forced || in_precedent;
                        let condition = trace.map(|t| Condition::Con {
                            factor: h.id(sub).clone(),
                            in_precedent,
                            holds,
                            subgoal: Box::new(t),
                        });
                        (holds, condition)
                    }
                };
                conditions.extend(condition);
                if !holds {
                    all_hold = false;
                    if !record {
                        break;
                    }
                }
            }
            if record {
                attempts.push(Attempt {
                    case: case.name.clone(),
                    holds: all_hold,
                    conditions,
                });
            }
            if all_hold {
                let trace = record.then(|| DerivationTrace {
                    goal: goal(),
                    status: Status::Forced,
                    rule: Some(Rule::Precedent {
                        case: case.name.clone(),
                    }),
                    direct,
                    attempts,
                    failure_witness: None,
                });
                return (true, trace);
            }
        }
        let trace = record.then(|| {
            let witness = blocked_or_none(&attempts);
            DerivationTrace {
                goal: goal(),
                status: Status::NotForced,
                rule: None,
                direct,
                attempts,
                failure_witness: Some(witness),
            }
        });
        (false, trace)
    }
}

pub(crate) fn leaf(
    goal: Goal,
    status: Status,
    rule: Option<Rule>,
    direct: DirectCheck,
    failure_witness: Option<FailureWitness>,
) -> DerivationTrace {
    DerivationTrace {
        goal,
        status,
        rule,
        direct,
        attempts: Vec::new(),
        failure_witness,
    }
}

pub(crate) fn blocked_or_none(attempts: &[Attempt]) -> FailureWitness {
    if attempts.is_empty() {
        return FailureWitness::NoPrecedent;
    }
    FailureWitness::Blocked {
        blockers: attempts
            .iter()
            .filter_map(|a| {
                a.first_failure().map(|c| Blocker {
                    case: a.case.clone(),
                    subject: c.subject().into(),
                })
            })
            .collect(),
    }
}

/// A decided precedent in the flat setting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatFactorCase {
    pub name: String,
    pub facts: FactSituation,
    pub outcome: Side,
}

/// Flat case base: a factor list with a global pro/con partition (pro means
/// supporting `Pi`) and decided precedents complete over those factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatFactorCaseBase {
    factors: Vec<(FactorId, Polarity)>,
    index: BTreeMap<String, usize>,
    cases: Vec<FlatFactorCase>,
}

impl FlatFactorCaseBase {
    pub fn new(factors: Vec<(FactorId, Polarity)>, cases: Vec<FlatFactorCase>) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, (id, _)) in factors.iter().enumerate() {
            if index.insert(String::from(id.as_str()), i).is_some() {
                let mut report = ValidationReport::new();
                report.push(Violation::DuplicateNode {
                    name: id.as_str().into(),
                });
                return Err(Error::InvalidHierarchy(report));
            }
        }
        let mut names = BTreeSet::new();
        for case in &cases {
            case.facts.check_len(factors.len())?;
            if !case.facts.is_complete() {
                return Err(Error::IncompleteCase {
                    case: case.name.clone(),
                    missing: missing_names(&case.facts, |i| factors[i].0.as_str()),
                });
            }
            if !names.insert(case.name.clone()) {
                return Err(Error::DuplicateCase(case.name.clone()));
            }
        }
        Ok(Self {
            factors,
            index,
            cases,
        })
    }

    /// Flat view of a hierarchical case base: the basic factors, each with
    /// its composed polarity toward the outcome, and each case decided by
    /// its value on the outcome factor.
    pub fn from_hierarchical(cb: &FactorCaseBase<'_>) -> Result<Self> {
        let h = cb.hierarchy();
        let partition = h
            .polarity_toward_outcome()?
            .into_iter()
            .map(|(i, p)| (h.id(i).clone(), p))
            .collect();
        Self::with_partition(cb, partition)
    }

    /// Flat view of a hierarchical case base with an explicit partition of
    /// (a subset of) its factors.
    pub fn with_partition(
        cb: &FactorCaseBase<'_>,
        partition: Vec<(FactorId, Polarity)>,
    ) -> Result<Self> {
        let h = cb.hierarchy();
        let outcome = h.outcome().expect("validated hierarchy has an outcome");
        let positions = partition
            .iter()
            .map(|(id, _)| h.require(id.as_str()))
            .collect::<Result<Vec<_>>>()?;
        let cases = cb
            .cases()
            .iter()
            .map(|c| FlatFactorCase {
                name: c.name.clone(),
                facts: FactSituation::from_values(
                    positions.iter().map(|&p| c.facts.get(p)).collect(),
                ),
                outcome: Side::from_outcome(c.facts.get(outcome) == Some(true)),
            })
            .collect();
        Self::new(partition, cases)
    }

    pub fn factors(&self) -> &[(FactorId, Polarity)] {
        &self.factors
    }

    pub fn cases(&self) -> &[FlatFactorCase] {
        &self.cases
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn situation<'a>(
        &self,
        assignments: impl IntoIterator<Item = (&'a str, bool)>,
    ) -> Result<FactSituation> {
        let mut values = vec![None; self.factors.len()];
        for (name, value) in assignments {
            let i = self
                .index_of(name)
                .ok_or_else(|| Error::UnknownFactor(name.into()))?;
            values[i] = Some(value);
        }
        Ok(FactSituation::from_values(values))
    }

    /// Restricts a situation over `hierarchy` to this case base's factors.
    pub fn project(
        &self,
        hierarchy: &FactorHierarchy,
        situation: &FactSituation,
    ) -> Result<FactSituation> {
        situation.check_len(hierarchy.len())?;
        let values = self
            .factors
            .iter()
            .map(|(id, _)| hierarchy.require(id.as_str()).map(|i| situation.get(i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(FactSituation::from_values(values))
    }

    pub fn subset(&self, names: &[&str]) -> Result<Self> {
        for name in names {
            if !self.cases.iter().any(|c| c.name == *name) {
                return Err(Error::UnknownCase((*name).into()));
            }
        }
        Ok(Self {
            factors: self.factors.clone(),
            index: self.index.clone(),
            cases: self
                .cases
                .iter()
                .filter(|c| names.contains(&c.name.as_str()))
                .cloned()
                .collect(),
        })
    }
}

/// Whether the flat case base forces `side` for the situation, with the derivation.
pub fn rm_forces(
    cb: &FlatFactorCaseBase,
    situation: &FactSituation,
    side: Side,
) -> Result<(bool, DerivationTrace)> {
    situation.check_len(cb.factors.len())?;
    let mut attempts = Vec::new();
    for case in cb.cases.iter().filter(|c| c.outcome == side) {
        let conditions: Vec<Condition> = cb
            .factors
            .iter()
            .enumerate()
            .map(|(i, (id, polarity))| {
                let role = relative_role(*polarity, side);
                let in_precedent = case.facts.get(i) == Some(true);
                let in_situation = situation.get(i) == Some(true);
                Condition::Factor {
                    factor: id.clone(),
                    role,
                    in_precedent,
                    in_situation,
                    holds: flat_condition(role, in_precedent, in_situation),
                }
            })
            .collect();
        let holds = conditions.iter().all(Condition::holds);
        attempts.push(Attempt {
            case: case.name.clone(),
            holds,
            conditions,
        });
        if holds {
            let trace = DerivationTrace {
                goal: Goal::Side(side),
                status: Status::Forced,
                rule: Some(Rule::Precedent {
                    case: case.name.clone(),
                }),
                direct: DirectCheck::NotApplicable,
                attempts,
                failure_witness: None,
            };
            return Ok((true, trace));
        }
    }
    let witness = blocked_or_none(&attempts);
    Ok((
        false,
        DerivationTrace {
            goal: Goal::Side(side),
            status: Status::NotForced,
            rule: None,
            direct: DirectCheck::NotApplicable,
            attempts,
            failure_witness: Some(witness),
        },
    ))
}

/// [`rm_forces`] without building the derivation.
pub fn rm_verdict(cb: &FlatFactorCaseBase, situation: &FactSituation, side: Side) -> Result<bool> {
    situation.check_len(cb.factors.len())?;
    Ok(cb.cases.iter().filter(|c| c.outcome == side).any(|case| {
        cb.factors.iter().enumerate().all(|(i, (_, polarity))| {
            flat_condition(
                relative_role(*polarity, side),
                case.facts.get(i) == Some(true),
                situation.get(i) == Some(true),
            )
        })
    }))
}

fn relative_role(polarity: Polarity, side: Side) -> Polarity {
    match side {
        Side::Pi => polarity,
        Side::Delta => polarity.flip(),
    }
}

fn flat_condition(role: Polarity, in_precedent: bool, in_situation: bool) -> bool {
    match role {
        Polarity::Pro => !in_precedent || in_situation,
        Polarity::Con => !in_situation || in_precedent,
    }
}
