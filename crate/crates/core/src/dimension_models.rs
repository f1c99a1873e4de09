//! Dimension-based forcing: the flat model compares precedents pointwise on
//! every dimension; the hierarchical model derives lower and upper bounds on
//! a dimension's value from precedents, recursing into subordinates.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor_models::{blocked_or_none, leaf, Side};
use crate::hierarchy::{DimensionHierarchy, DimensionId, Value, ValueOrder};
use crate::trace::{
    Attempt, Condition, DerivationTrace, DirectCheck, FailureWitness, Goal, Rule, Status,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `v ⪯ X(d)`
    Lower,
    /// `X(d) ⪯ v`
    Upper,
}

/// A claim that the case base bounds a situation's value on `dimension`
/// from below or above by `value`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BoundClaim {
    pub dimension: DimensionId,
    pub value: Value,
    pub direction: Direction,
}

impl BoundClaim {
    pub fn lower(value: impl Into<Value>, dimension: impl Into<DimensionId>) -> Self {
        Self {
            dimension: dimension.into(),
            value: value.into(),
            direction: Direction::Lower,
        }
    }

    pub fn upper(dimension: impl Into<DimensionId>, value: impl Into<Value>) -> Self {
        Self {
            dimension: dimension.into(),
            value: value.into(),
            direction: Direction::Upper,
        }
    }
}

impl fmt::Display for BoundClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.direction {
            Direction::Lower => write!(f, "{} ⪯ X({})", self.value, self.dimension),
            Direction::Upper => write!(f, "X({}) ⪯ {}", self.dimension, self.value),
        }
    }
}

/// A partial choice function: for each dimension, optionally the index of
/// its value in that dimension's value order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DimSituation {
    values: Vec<Option<usize>>,
}

impl DimSituation {
    pub fn from_indices(values: Vec<Option<usize>>) -> Self {
        Self { values }
    }

    pub fn undefined(len: usize) -> Self {
        Self {
            values: vec![None; len],
        }
    }

    /// Builds a situation over the hierarchy's dimensions from named values.
    pub fn from_named<'a>(
        hierarchy: &DimensionHierarchy,
        assignments: impl IntoIterator<Item = (&'a str, Value)>,
    ) -> Result<Self> {
        Self::over(hierarchy.dimensions(), assignments)
    }

    fn over<'a>(
        dimensions: &[(DimensionId, ValueOrder)],
        assignments: impl IntoIterator<Item = (&'a str, Value)>,
    ) -> Result<Self> {
        let mut values = vec![None; dimensions.len()];
        for (name, value) in assignments {
            let d = dimensions
                .iter()
                .position(|(id, _)| id.as_str() == name)
                .ok_or_else(|| Error::UnknownDimension(name.into()))?;
            let v = dimensions[d]
                .1
                .index_of(&value)
                .ok_or_else(|| Error::ValueNotInDimension {
                    dimension: name.into(),
                    value: value.to_string(),
                })?;
            values[d] = Some(v);
        }
        Ok(Self { values })
    }

    pub fn indices(&self) -> &[Option<usize>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, dimension: usize) -> Option<usize> {
        self.values[dimension]
    }

    pub fn set(&mut self, dimension: usize, value: Option<usize>) {
        self.values[dimension] = value;
    }

    pub fn is_complete(&self) -> bool {
        self.values.iter().all(Option::is_some)
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

    fn missing(&self, dimensions: &[(DimensionId, ValueOrder)]) -> String {
        let names: Vec<&str> = self
            .values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_none())
            .map(|(i, _)| dimensions[i].0.as_str())
            .collect();
        names.join(", ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimCase {
    pub name: String,
    pub facts: DimSituation,
}

impl DimCase {
    pub fn new(name: impl Into<String>, facts: DimSituation) -> Self {
        Self {
            name: name.into(),
            facts,
        }
    }
}

fn check_cases<'a>(
    dimensions: &[(DimensionId, ValueOrder)],
    cases: impl Iterator<Item = (&'a str, &'a DimSituation)>,
) -> Result<()> {
    let mut names = BTreeSet::new();
    for (name, facts) in cases {
        facts.check_len(dimensions.len())?;
        for (d, v) in facts.values.iter().enumerate() {
            if let Some(v) = v {
                if *v >= dimensions[d].1.len() {
                    return Err(Error::ValueNotInDimension {
                        dimension: dimensions[d].0.as_str().into(),
                        value: v.to_string(),
                    });
                }
            }
        }
        if !facts.is_complete() {
            return Err(Error::IncompleteCase {
                case: name.into(),
                missing: facts.missing(dimensions),
            });
        }
        if !names.insert(name) {
            return Err(Error::DuplicateCase(name.into()));
        }
    }
    Ok(())
}

/// Complete precedents over a validated dimension hierarchy.
#[derive(Debug, Clone)]
pub struct DimCaseBase<'h> {
    hierarchy: &'h DimensionHierarchy,
    cases: Vec<DimCase>,
}

impl<'h> DimCaseBase<'h> {
    pub fn new(hierarchy: &'h DimensionHierarchy, cases: Vec<DimCase>) -> Result<Self> {
        hierarchy.ensure_valid()?;
        check_cases(
            hierarchy.dimensions(),
            cases.iter().map(|c| (c.name.as_str(), &c.facts)),
        )?;
        Ok(Self { hierarchy, cases })
    }

    pub fn hierarchy(&self) -> &'h DimensionHierarchy {
        self.hierarchy
    }

    pub fn cases(&self) -> &[DimCase] {
        &self.cases
    }

    pub fn len(&self) -> usize {
        self.cases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cases.is_empty()
    }

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

/// Whether the case base bounds the situation as claimed, with the derivation.
pub fn dhrm_bound(
    cb: &DimCaseBase<'_>,
    situation: &DimSituation,
    claim: &BoundClaim,
) -> Result<(bool, DerivationTrace)> {
    let (d, v, mut engine) = Dhrm::prepare(cb, situation, claim, true)?;
    let (forced, trace) = engine.eval(d, v, claim.direction);
    Ok((forced, trace.expect("recording engine yields a trace")))
}

/// [`dhrm_bound`] without building the derivation.
pub fn dhrm_verdict(
    cb: &DimCaseBase<'_>,
    situation: &DimSituation,
    claim: &BoundClaim,
) -> Result<bool> {
    let (d, v, mut engine) = Dhrm::prepare(cb, situation, claim, false)?;
    Ok(engine.eval(d, v, claim.direction).0)
}

/// The bound claim that decides `side` on the outcome dimension: at least 1
/// for `Pi`, at most 0 for `Delta`. The outcome dimension must be binary
/// with `0 ⪯ 1`.
pub fn outcome_claim(hierarchy: &DimensionHierarchy, side: Side) -> Result<BoundClaim> {
    let outcome = hierarchy
        .outcome()
        .ok_or_else(|| Error::InvalidHierarchy(hierarchy.validate()))?;
    let id = hierarchy.id(outcome);
    if !is_binary(hierarchy.order(outcome)) {
        return Err(Error::NonBinaryOutcome(id.as_str().into()));
    }
    Ok(match side {
        Side::Pi => BoundClaim::lower(1, id.clone()),
        Side::Delta => BoundClaim::upper(id.clone(), 0),
    })
}

pub(crate) fn is_binary(order: &ValueOrder) -> bool {
    let (Some(zero), Some(one)) = (
        order.index_of(&Value::Int(0)),
        order.index_of(&Value::Int(1)),
    ) else {
        return false;
    };
    order.len() == 2 && order.leq_index(zero, one) && !order.leq_index(one, zero)
}

/// Whether the case base forces `side` for the situation.
pub fn dhrm_forces_outcome(
    cb: &DimCaseBase<'_>,
    situation: &DimSituation,
    side: Side,
) -> Result<(bool, DerivationTrace)> {
    let claim = outcome_claim(cb.hierarchy, side)?;
    dhrm_bound(cb, situation, &claim)
}

/// [`dhrm_forces_outcome`] without building the derivation.
pub fn dhrm_outcome_verdict(
    cb: &DimCaseBase<'_>,
    situation: &DimSituation,
    side: Side,
) -> Result<bool> {
    let claim = outcome_claim(cb.hierarchy, side)?;
    dhrm_verdict(cb, situation, &claim)
}

type MemoKey = (usize, usize, Direction);

struct Dhrm<'a, 'h> {
    cb: &'a DimCaseBase<'h>,
    situation: &'a DimSituation,
    record: bool,
    verdicts: BTreeMap<MemoKey, bool>,
    traces: BTreeMap<MemoKey, DerivationTrace>,
}

impl<'a, 'h> Dhrm<'a, 'h> {
    fn prepare(
        cb: &'a DimCaseBase<'h>,
        situation: &'a DimSituation,
        claim: &BoundClaim,
        record: bool,
    ) -> Result<(usize, usize, Self)> {
        let h = cb.hierarchy;
        situation.check_len(h.len())?;
        let d = h.require(claim.dimension.as_str())?;
        let v = h
            .order(d)
            .index_of(&claim.value)
            .ok_or_else(|| Error::ValueNotInDimension {
                dimension: claim.dimension.as_str().into(),
                value: claim.value.to_string(),
            })?;
        let engine = Self {
            cb,
            situation,
            record,
            verdicts: BTreeMap::new(),
            traces: BTreeMap::new(),
        };
        Ok((d, v, engine))
    }

    fn eval(&mut self, d: usize, v: usize, dir: Direction) -> (bool, Option<DerivationTrace>) {
        let key = (d, v, dir);
        if self.record {
            if let Some(trace) = self.traces.get(&key) {
                return (trace.is_forced(), Some(trace.clone()));
            }
        } else if let Some(&forced) = self.verdicts.get(&key) {
            return (forced, None);
        }
        let (forced, trace) = self.compute(d, v, dir);
        self.verdicts.insert(key, forced);
        if let Some(trace) = &trace {
            self.traces.insert(key, trace.clone());
        }
        (forced, trace)
    }

    fn compute(&mut self, d: usize, v: usize, dir: Direction) -> (bool, Option<DerivationTrace>) {
        let cb = self.cb;
        let h = cb.hierarchy;
        let order = h.order(d);
        let record = self.record;
        // `bounded(x)`: v ⪯ x for lower bounds, x ⪯ v for upper bounds.
        let bounded = |x: usize| match dir {
            Direction::Lower => order.leq_index(v, x),
            Direction::Upper => order.leq_index(x, v),
        };
        let goal = || {
            Goal::Bound(BoundClaim {
                dimension: h.id(d).clone(),
                value: order.values()[v].clone(),
                direction: dir,
            })
        };
        let direct = match self.situation.get(d) {
            Some(x) if bounded(x) => DirectCheck::Holds,
            Some(_) => DirectCheck::Fails,
            None => DirectCheck::Undefined,
        };
        if direct == DirectCheck::Holds {
            return (
                true,
                record.then(|| leaf(goal(), Status::Forced, Some(Rule::Direct), direct, None)),
            );
        }
        if h.is_basic(d) {
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

        let subordinates: Vec<usize> = h.direct_subordinates(d).collect();
        let mut attempts = Vec::new();
        for case in &cb.cases {
            let y = case.facts.get(d).expect("cases are complete");
            if !bounded(y) {
                continue;
            }
            let mut conditions = Vec::new();
            let mut all_hold = true;
            for &e in &subordinates {
                let ye = case.facts.get(e).expect("cases are complete");
                let (forced, trace) = self.eval(e, ye, dir);
                conditions.extend(trace.map(|t| Condition::Bound {
                    dimension: h.id(e).clone(),
                    holds: forced,
                    subgoal: Box::new(t),
                }));
                if !forced {
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

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatDimCase {
    pub name: String,
    pub facts: DimSituation,
    pub outcome: Side,
}

/// Flat dimension case base: ordered dimensions and decided precedents
/// complete over them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatDimCaseBase {
    dimensions: Vec<(DimensionId, ValueOrder)>,
    cases: Vec<FlatDimCase>,
}

impl FlatDimCaseBase {
    pub fn new(
        dimensions: Vec<(DimensionId, ValueOrder)>,
        cases: Vec<FlatDimCase>,
    ) -> Result<Self> {
        let mut report = crate::hierarchy::ValidationReport::new();
        let mut seen = BTreeSet::new();
        for (id, order) in &dimensions {
            if !seen.insert(id.as_str()) {
                report.push(crate::hierarchy::Violation::DuplicateNode {
                    name: id.as_str().into(),
                });
            }
            report.extend(order.validate(id.as_str()));
        }
        if !report.is_valid() {
            return Err(Error::InvalidHierarchy(report));
        }
        check_cases(
            &dimensions,
            cases.iter().map(|c| (c.name.as_str(), &c.facts)),
        )?;
        Ok(Self { dimensions, cases })
    }

    /// Flat view of a hierarchical case base: the base-level dimensions, with
    /// each case decided by its value on the binary outcome dimension.
    pub fn from_hierarchical(cb: &DimCaseBase<'_>) -> Result<Self> {
        let h = cb.hierarchy();
        let outcome_claim = outcome_claim(h, Side::Pi)?;
        let outcome = h.require(outcome_claim.dimension.as_str())?;
        let one = h.order(outcome).index_of(&Value::Int(1));
        let basics: Vec<usize> = h.basic_dimensions().collect();
        let dimensions = basics
            .iter()
            .map(|&b| (h.id(b).clone(), h.order(b).clone()))
            .collect();
        let cases = cb
            .cases()
            .iter()
            .map(|c| FlatDimCase {
                name: c.name.clone(),
                facts: DimSituation::from_indices(basics.iter().map(|&b| c.facts.get(b)).collect()),
                outcome: Side::from_outcome(c.facts.get(outcome) == one),
            })
            .collect();
        Self::new(dimensions, cases)
    }

    pub fn dimensions(&self) -> &[(DimensionId, ValueOrder)] {
        &self.dimensions
    }

    pub fn cases(&self) -> &[FlatDimCase] {
        &self.cases
    }

    pub fn situation<'a>(
        &self,
        assignments: impl IntoIterator<Item = (&'a str, Value)>,
    ) -> Result<DimSituation> {
        DimSituation::over(&self.dimensions, assignments)
    }

    /// Restricts a situation over `hierarchy` to this case base's dimensions.
    pub fn project(
        &self,
        hierarchy: &DimensionHierarchy,
        situation: &DimSituation,
    ) -> Result<DimSituation> {
        situation.check_len(hierarchy.len())?;
        let values = self
            .dimensions
            .iter()
            .map(|(id, _)| hierarchy.require(id.as_str()).map(|i| situation.get(i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(DimSituation::from_indices(values))
    }

    pub fn subset(&self, names: &[&str]) -> Result<Self> {
        for name in names {
            if !self.cases.iter().any(|c| c.name == *name) {
                return Err(Error::UnknownCase((*name).into()));
            }
        }
        Ok(Self {
            dimensions: self.dimensions.clone(),
            cases: self
                .cases
                .iter()
                .filter(|c| names.contains(&c.name.as_str()))
                .cloned()
                .collect(),
        })
    }

    fn check_query(&self, situation: &DimSituation) -> Result<()> {
        situation.check_len(self.dimensions.len())?;
        if situation.is_complete() {
            Ok(())
        } else {
            Err(Error::IncompleteSituation(
                situation.missing(&self.dimensions),
            ))
        }
    }
}

fn flat_holds(order: &ValueOrder, precedent: usize, situation: usize, side: Side) -> bool {
    match side {
        Side::Pi => order.leq_index(precedent, situation),
        Side::Delta => order.leq_index(situation, precedent),
    }
}

/// Whether the flat case base forces `side` for a complete situation, with
/// the derivation.
pub fn drm_forces(
    cb: &FlatDimCaseBase,
    situation: &DimSituation,
    side: Side,
) -> Result<(bool, DerivationTrace)> {
    cb.check_query(situation)?;
    let mut attempts = Vec::new();
    for case in cb.cases.iter().filter(|c| c.outcome == side) {
        let conditions: Vec<Condition> = cb
            .dimensions
            .iter()
            .enumerate()
            .map(|(d, (id, order))| {
                let y = case.facts.get(d).expect("cases are complete");
                let x = situation.get(d).expect("situation is complete");
                Condition::Compare {
                    dimension: id.clone(),
                    precedent: order.values()[y].clone(),
                    situation: order.values()[x].clone(),
                    holds: flat_holds(order, y, x, side),
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
            return Ok((
                true,
                DerivationTrace {
                    goal: Goal::Side(side),
                    status: Status::Forced,
                    rule: Some(Rule::Precedent {
                        case: case.name.clone(),
                    }),
                    direct: DirectCheck::NotApplicable,
                    attempts,
                    failure_witness: None,
                },
            ));
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

/// [`drm_forces`] without building the derivation.
pub fn drm_verdict(cb: &FlatDimCaseBase, situation: &DimSituation, side: Side) -> Result<bool> {
    cb.check_query(situation)?;
    Ok(cb.cases.iter().filter(|c| c.outcome == side).any(|case| {
        cb.dimensions.iter().enumerate().all(|(d, (_, order))| {
            flat_holds(
                order,
                case.facts.get(d).expect("cases are complete"),
                situation.get(d).expect("situation is complete"),
                side,
            )
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hierarchy::DimensionEdge;

    // pi <- a (ascending 0..=2), b (descending 0..=1)
    fn small() -> DimensionHierarchy {
        DimensionHierarchy::new(
            vec![
                ("pi".into(), ValueOrder::ascending([0, 1])),
                ("a".into(), ValueOrder::ascending(0..=2)),
                ("b".into(), ValueOrder::descending([0, 1])),
            ],
            vec![DimensionEdge::new("a", "pi"), DimensionEdge::new("b", "pi")],
        )
    }

    fn sit(h: &DimensionHierarchy, pairs: &[(&str, i64)]) -> DimSituation {
        DimSituation::from_named(h, pairs.iter().map(|&(n, v)| (n, Value::Int(v)))).unwrap()
    }

    #[test]
    fn precedent_forces_itself_in_flat_model() {
        let h = small();
        let y = sit(&h, &[("pi", 1), ("a", 1), ("b", 1)]);
        let cb = DimCaseBase::new(&h, vec![DimCase::new("Y", y.clone())]).unwrap();
        let flat = FlatDimCaseBase::from_hierarchical(&cb).unwrap();
        let x = flat.project(&h, &y).unwrap();
        assert!(drm_forces(&flat, &x, Side::Pi).unwrap().0);
        assert!(!drm_forces(&flat, &x, Side::Delta).unwrap().0);
    }

    #[test]
    fn empty_flat_case_base_forces_nothing() {
        let h = small();
        let cb = DimCaseBase::new(&h, vec![]).unwrap();
        let flat = FlatDimCaseBase::from_hierarchical(&cb).unwrap();
        let x = flat
            .situation([("a", Value::Int(0)), ("b", Value::Int(0))])
            .unwrap();
        for side in [Side::Pi, Side::Delta] {
            let (forced, trace) = drm_forces(&flat, &x, side).unwrap();
            assert!(!forced);
            assert_eq!(trace.failure_witness, Some(FailureWitness::NoPrecedent));
        }
    }

    #[test]
    fn flat_model_needs_complete_query() {
        let h = small();
        let cb = DimCaseBase::new(&h, vec![]).unwrap();
        let flat = FlatDimCaseBase::from_hierarchical(&cb).unwrap();
        let x = flat.situation([("a", Value::Int(0))]).unwrap();
        assert_eq!(
            drm_forces(&flat, &x, Side::Pi).unwrap_err(),
            Error::IncompleteSituation("b".into())
        );
    }

    #[test]
    fn upper_bound_mirrors_lower_bound() {
        let h = small();
        let y = sit(&h, &[("pi", 0), ("a", 1), ("b", 1)]);
        let cb = DimCaseBase::new(&h, vec![DimCase::new("Y", y)]).unwrap();
        // Weaker for pi on both dimensions: at most Y's outcome.
        let x = sit(&h, &[("a", 0), ("b", 1)]);
        let (forced, trace) = dhrm_forces_outcome(&cb, &x, Side::Delta).unwrap();
        assert!(forced);
        assert!(trace.is_well_formed());
        assert!(!dhrm_forces_outcome(&cb, &x, Side::Pi).unwrap().0);
        // Stronger on `a`: no longer bounded above.
        let x = sit(&h, &[("a", 2), ("b", 1)]);
        assert!(!dhrm_forces_outcome(&cb, &x, Side::Delta).unwrap().0);
    }

    #[test]
    fn undefined_base_dimension_blocks_precedent() {
        let h = small();
        let y = sit(&h, &[("pi", 1), ("a", 0), ("b", 1)]);
        let cb = DimCaseBase::new(&h, vec![DimCase::new("Y", y)]).unwrap();
        let x = sit(&h, &[("a", 2)]);
        let (forced, trace) = dhrm_forces_outcome(&cb, &x, Side::Pi).unwrap();
        assert!(!forced);
        let blocked = &trace.attempts[0].conditions[1];
        assert_eq!(blocked.subject(), "b");
        assert_eq!(blocked.subgoal().unwrap().direct, DirectCheck::Undefined);
    }

    #[test]
    fn claim_value_outside_dimension_is_an_error() {
        let h = small();
        let cb = DimCaseBase::new(&h, vec![]).unwrap();
        let x = DimSituation::undefined(h.len());
        assert!(matches!(
            dhrm_bound(&cb, &x, &BoundClaim::lower(7, "a")),
            Err(Error::ValueNotInDimension { .. })
        ));
    }

    #[test]
    fn non_binary_outcome_is_an_error() {
        let h = DimensionHierarchy::new(
            vec![
                ("pi".into(), ValueOrder::ascending(0..=2)),
                ("a".into(), ValueOrder::ascending([0, 1])),
            ],
            vec![DimensionEdge::new("a", "pi")],
        );
        let cb = DimCaseBase::new(&h, vec![]).unwrap();
        let x = DimSituation::undefined(h.len());
        assert_eq!(
            dhrm_forces_outcome(&cb, &x, Side::Pi).unwrap_err(),
            Error::NonBinaryOutcome("pi".into())
        );
    }
}
