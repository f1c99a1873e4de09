//! Reference evaluators and brute-force tools for cross-checking the main
//! evaluators.
//!
//! The reference evaluators are literal transcriptions of the recursive
//! definitions: no memoization, subordinates found by scanning the raw edge
//! list, facts looked up by name.

use alloc::vec;
use alloc::vec::Vec;

use crate::dimension_models::{
    BoundClaim, DimCaseBase, DimSituation, Direction, FlatDimCase, FlatDimCaseBase,
};
use crate::error::{Error, Result};
use crate::factor_models::{hrm_verdict, FactSituation, FactorCaseBase, FlatFactorCaseBase};
use crate::hierarchy::{DimensionId, FactorHierarchy, Literal, Polarity, Value, ValueOrder};

/// Default limit on the number of basic factors [`enumerate_query_situations`] accepts.
pub const DEFAULT_ENUMERATION_CAP: usize = 16;

/// Unmemoized hierarchical factor forcing.
pub fn reference_hrm_forces(
    cb: &FactorCaseBase<'_>,
    situation: &FactSituation,
    literal: &Literal,
) -> Result<bool> {
    let h = cb.hierarchy();
    situation.check_len(h.len())?;
    h.require(literal.factor.as_str())?;
    Ok(reference_hrm(
        cb,
        situation,
        literal.factor.as_str(),
        literal.negated,
    ))
}

fn reference_hrm(
    cb: &FactorCaseBase<'_>,
    situation: &FactSituation,
    p: &str,
    negated: bool,
) -> bool {
    let h = cb.hierarchy();
    let models = |facts: &FactSituation, name: &str, negated: bool| {
        let i = h
            .index_of(name)
            .expect("edges of a valid hierarchy name declared factors");
        facts.get(i) == Some(!negated)
    };
    if models(situation, p, negated) {
        return true;
    }
    let below: Vec<_> = h
        .edges()
        .iter()
        .filter(|e| e.parent.as_str() == p)
        .collect();
    if below.is_empty() {
        return false;
    }
    cb.cases().iter().any(|g| {
        models(&g.facts, p, negated)
            && below.iter().all(|e| {
                let q = e.child.as_str();
                let supports = (e.polarity == Polarity::Pro) != negated;
                if supports {
                    !models(&g.facts, q, false) || reference_hrm(cb, situation, q, false)
                } else {
                    !reference_hrm(cb, situation, q, false) || models(&g.facts, q, false)
                }
            })
    })
}

/// Unmemoized hierarchical dimension bound, both directions.
pub fn reference_dhrm_bound(
    cb: &DimCaseBase<'_>,
    situation: &DimSituation,
    claim: &BoundClaim,
) -> Result<bool> {
    let h = cb.hierarchy();
    situation.check_len(h.len())?;
    let d = h.require(claim.dimension.as_str())?;
    if h.order(d).index_of(&claim.value).is_none() {
        return Err(Error::ValueNotInDimension {
            dimension: claim.dimension.as_str().into(),
            value: alloc::string::ToString::to_string(&claim.value),
        });
    }
    Ok(reference_dhrm(
        cb,
        situation,
        claim.dimension.as_str(),
        &claim.value,
        claim.direction,
    ))
}

fn reference_dhrm(
    cb: &DimCaseBase<'_>,
    situation: &DimSituation,
    d: &str,
    v: &Value,
    direction: Direction,
) -> bool {
    let h = cb.hierarchy();
    let value_of = |facts: &DimSituation, name: &str| -> Option<Value> {
        let i = h
            .index_of(name)
            .expect("edges of a valid hierarchy name declared dimensions");
        facts.get(i).map(|x| h.order(i).values()[x].clone())
    };
    let order = h.order(h.index_of(d).expect("declared dimension"));
    let bounded = |x: &Value| {
        let leq = |a: &Value, b: &Value| order.value_leq(a, b).expect("values of the dimension");
        match direction {
            Direction::Lower => leq(v, x),
            Direction::Upper => leq(x, v),
        }
    };
    if value_of(situation, d).is_some_and(|x| bounded(&x)) {
        return true;
    }
    let below: Vec<&str> = h
        .edges()
        .iter()
        .filter(|e| e.parent.as_str() == d)
        .map(|e| e.child.as_str())
        .collect();
    if below.is_empty() {
        return false;
    }
    cb.cases().iter().any(|y| {
        bounded(&value_of(&y.facts, d).expect("cases are complete"))
            && below.iter().all(|e| {
                let ye = value_of(&y.facts, e).expect("cases are complete");
                reference_dhrm(cb, situation, e, &ye, direction)
            })
    })
}

/// All situations total on the basic factors and undefined on every
/// abstract factor, in binary counting order over the basic factors.
#[derive(Debug, Clone)]
pub struct QuerySituations {
    basics: Vec<usize>,
    len: usize,
    next: u64,
    total: u64,
}

impl QuerySituations {
    pub fn total(&self) -> u64 {
        self.total
    }
}

impl Iterator for QuerySituations {
    type Item = FactSituation;

    fn next(&mut self) -> Option<FactSituation> {
        if self.next >= self.total {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        let mut values = vec![None; self.len];
        for (bit, &b) in self.basics.iter().enumerate() {
            values[b] = Some(mask >> bit & 1 == 1);
        }
        Some(FactSituation::from_values(values))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = usize::try_from(self.total - self.next).unwrap_or(usize::MAX);
        (left, Some(left))
    }
}

pub fn enumerate_query_situations(
    hierarchy: &FactorHierarchy,
    cap: usize,
) -> Result<QuerySituations> {
    let basics: Vec<usize> = hierarchy.basic_factors().collect();
    if basics.len() > cap || basics.len() >= 64 {
        return Err(Error::EnumerationCap {
            basic: basics.len(),
            situations: 1u128 << basics.len().min(127),
            cap,
        });
    }
    Ok(QuerySituations {
        total: 1u64 << basics.len(),
        len: hierarchy.len(),
        basics,
        next: 0,
    })
}

/// Result of checking that no query situation is forced both ways.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub consistent: bool,
    /// Number of situations checked.
    pub checked: u64,
    /// Number of situations forced for both outcomes.
    pub conflicts: u64,
    /// The first conflicting situations, at most the requested number.
    pub witnesses: Vec<FactSituation>,
}

/// Checks every enumerated query situation for being forced both for the
/// outcome factor and for its negation. `max_witnesses` is raised to 1 so
/// that an inconsistent report always carries a witness.
pub fn check_consistency(
    cb: &FactorCaseBase<'_>,
    cap: usize,
    max_witnesses: usize,
) -> Result<ConsistencyReport> {
    let h = cb.hierarchy();
    let outcome = h.outcome_id().expect("validated hierarchy has an outcome");
    let pi = Literal::positive(outcome.clone());
    let delta = pi.negate();
    let max_witnesses = max_witnesses.max(1);
    let mut report = ConsistencyReport {
        consistent: true,
        checked: 0,
        conflicts: 0,
        witnesses: Vec::new(),
    };
    for situation in enumerate_query_situations(h, cap)? {
        report.checked += 1;
        if hrm_verdict(cb, &situation, &pi)? && hrm_verdict(cb, &situation, &delta)? {
            report.conflicts += 1;
            report.consistent = false;
            if report.witnesses.len() < max_witnesses {
                report.witnesses.push(situation);
            }
        }
    }
    Ok(report)
}

/// Each factor becomes a two-valued dimension `{0, 1}`, ordered `0 ⪯ 1` for
/// pro factors and `1 ⪯ 0` for con factors; true maps to 1 and false to 0.
pub fn encode_factors_as_dimensions(cb: &FlatFactorCaseBase) -> FlatDimCaseBase {
    let dimensions = cb
        .factors()
        .iter()
        .map(|(id, polarity)| {
            let order = match polarity {
                Polarity::Pro => ValueOrder::ascending([0, 1]),
                Polarity::Con => ValueOrder::descending([0, 1]),
            };
            (DimensionId::new(id.as_str()), order)
        })
        .collect();
    let cases = cb
        .cases()
        .iter()
        .map(|c| FlatDimCase {
            name: c.name.clone(),
            facts: encode_situation(&c.facts),
            outcome: c.outcome,
        })
        .collect();
    FlatDimCaseBase::new(dimensions, cases).expect("encoding of a valid flat case base is valid")
}

/// Encodes a factor situation for [`encode_factors_as_dimensions`]. Value
/// index 0 holds 0 and index 1 holds 1 in both binary orders.
pub fn encode_situation(situation: &FactSituation) -> DimSituation {
    DimSituation::from_indices(
        situation
            .values()
            .iter()
            .map(|v| v.map(usize::from))
            .collect(),
    )
}

/// The outcome is the only abstract factor, so hierarchical forcing should
/// coincide with flat forcing.
pub fn is_flat_shaped(hierarchy: &FactorHierarchy) -> bool {
    hierarchy.is_valid() && hierarchy.abstract_factors().count() == 1
}
