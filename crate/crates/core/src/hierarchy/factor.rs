use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use super::{check_structure, FactorId, Graph, ValidationReport};
use crate::error::{Error, Result};

/// Which way a subordinate factor pushes its superior.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Pro,
    Con,
}

impl Polarity {
    pub fn flip(self) -> Self {
        match self {
            Polarity::Pro => Polarity::Con,
            Polarity::Con => Polarity::Pro,
        }
    }

    /// Polarity of a two-step path: `self` on the lower edge, `outer` above it.
    pub fn compose(self, outer: Polarity) -> Self {
        if outer == Polarity::Pro {
            self
        } else {
            self.flip()
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::Pro => "pro",
            Polarity::Con => "con",
        })
    }
}

/// A factor or its negation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Literal {
    pub factor: FactorId,
    pub negated: bool,
}

impl Literal {
    pub fn positive(factor: impl Into<FactorId>) -> Self {
        Self {
            factor: factor.into(),
            negated: false,
        }
    }

    pub fn negative(factor: impl Into<FactorId>) -> Self {
        Self {
            factor: factor.into(),
            negated: true,
        }
    }

    #[must_use]
    pub fn negate(&self) -> Self {
        Self {
            factor: self.factor.clone(),
            negated: !self.negated,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("¬")?;
        }
        write!(f, "{}", self.factor)
    }
}

/// `child` is a direct subordinate of `parent`, supporting it (`Pro`) or
/// opposing it (`Con`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEdge {
    pub child: FactorId,
    pub parent: FactorId,
    pub polarity: Polarity,
}

impl FactorEdge {
    pub fn new(
        child: impl Into<FactorId>,
        parent: impl Into<FactorId>,
        polarity: Polarity,
    ) -> Self {
        Self {
            child: child.into(),
            parent: parent.into(),
            polarity,
        }
    }
}

/// A finite set of factors with polarity-labelled subordinate edges that
/// should culminate in a single outcome factor.
///
/// Construction never fails; [`FactorHierarchy::validate`] reports every
/// structural problem. Evaluators only accept hierarchies that validate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorHierarchy {
    factors: Vec<FactorId>,
    edges: Vec<FactorEdge>,
    graph: Graph,
}

impl FactorHierarchy {
    pub fn new(factors: Vec<FactorId>, edges: Vec<FactorEdge>) -> Self {
        let graph = Graph::build(
            factors.iter().map(FactorId::as_str),
            edges.iter().map(|e| (e.child.as_str(), e.parent.as_str())),
        );
        Self {
            factors,
            edges,
            graph,
        }
    }

    pub fn factors(&self) -> &[FactorId] {
        &self.factors
    }

    pub fn edges(&self) -> &[FactorEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.graph.index.get(name).copied()
    }

    pub(crate) fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownFactor(name.into()))
    }

    pub fn id(&self, index: usize) -> &FactorId {
        &self.factors[index]
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let names: Vec<&str> = self.factors.iter().map(FactorId::as_str).collect();
        let edges: Vec<(&str, &str, Polarity)> = self
            .edges
            .iter()
            .map(|e| (e.child.as_str(), e.parent.as_str(), e.polarity))
            .collect();
        check_structure(&names, &edges, &self.graph, &mut report);
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidHierarchy(report))
        }
    }

    /// The outcome factor, when there is exactly one maximal element.
    pub fn outcome(&self) -> Option<usize> {
        match self.graph.maximal().as_slice() {
            [only] => Some(*only),
            _ => None,
        }
    }

    pub fn outcome_id(&self) -> Option<&FactorId> {
        self.outcome().map(|i| &self.factors[i])
    }

    /// A factor with no subordinates.
    pub fn is_basic(&self, index: usize) -> bool {
        self.graph.is_basic(index)
    }

    pub fn basic_factors(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.is_basic(i))
    }

    pub fn abstract_factors(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| !self.is_basic(i))
    }

    /// Direct subordinates of a positive factor with the polarity of their edge.
    pub fn direct_subordinates(
        &self,
        index: usize,
    ) -> impl Iterator<Item = (usize, Polarity)> + '_ {
        self.graph.subordinates[index]
            .iter()
            .map(|&(child, pos)| (child, self.edges[pos].polarity))
    }

    /// Longest chain of subordinate edges below the outcome factor.
    pub fn height(&self) -> usize {
        self.outcome()
            .map(|o| self.graph.height_below(o))
            .unwrap_or(0)
    }

    /// The `(pro, con)` subordinates of a literal. Negation swaps the two sets.
    pub fn subordinates(&self, literal: &Literal) -> Result<(Vec<Literal>, Vec<Literal>)> {
        let index = self.require(literal.factor.as_str())?;
        let mut pro = Vec::new();
        let mut con = Vec::new();
        for (child, polarity) in self.direct_subordinates(index) {
            let lit = Literal::positive(self.factors[child].clone());
            let relative = if literal.negated {
                polarity.flip()
            } else {
                polarity
            };
            match relative {
                Polarity::Pro => pro.push(lit),
                Polarity::Con => con.push(lit),
            }
        }
        Ok((pro, con))
    }

    /// Polarity of every basic factor with respect to the outcome, composing
    /// edge polarities along each path. Fails when two paths disagree.
    pub fn polarity_toward_outcome(&self) -> Result<Vec<(usize, Polarity)>> {
        self.ensure_valid()?;
        let outcome = self.outcome().expect("valid hierarchy has an outcome");
        let mut reach: Vec<Option<Polarity>> = alloc::vec![None; self.len()];
        let mut conflict: Option<usize> = None;
        // Superiors always precede subordinates in this walk because every
        // path is expanded from the outcome downwards.
        let mut stack: Vec<(usize, Polarity)> = alloc::vec![(outcome, Polarity::Pro)];
        while let Some((node, pol)) = stack.pop() {
            match reach[node] {
                Some(p) if p == pol => continue,
                Some(_) => {
                    conflict.get_or_insert(node);
                    continue;
                }
                None => reach[node] = Some(pol),
            }
            for (child, edge) in self.direct_subordinates(node) {
                stack.push((child, edge.compose(pol)));
            }
        }
        let basics: Vec<usize> = self.basic_factors().collect();
        if let Some(node) = conflict {
            // Report a basic factor beneath the conflict when there is one.
            let culprit = basics
                .iter()
                .copied()
                .find(|&b| self.below(b, node))
                .unwrap_or(node);
            return Err(Error::AmbiguousPolarity(String::from(
                self.factors[culprit].as_str(),
            )));
        }
        Ok(basics
            .into_iter()
            .map(|b| (b, reach[b].expect("every factor reaches the outcome")))
            .collect())
    }

    fn below(&self, low: usize, high: usize) -> bool {
        if low == high {
            return true;
        }
        self.graph.superiors[low]
            .iter()
            .any(|&s| self.below(s, high))
    }
}
