use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{check_structure, DimensionId, Graph, ValidationReport, ValueOrder};
use crate::error::{Error, Result};

/// `child` is a direct subordinate of `parent`. Dimension edges carry no
/// polarity; the value orders say which way each dimension points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionEdge {
    pub child: DimensionId,
    pub parent: DimensionId,
}

impl DimensionEdge {
    pub fn new(child: impl Into<DimensionId>, parent: impl Into<DimensionId>) -> Self {
        Self {
            child: child.into(),
            parent: parent.into(),
        }
    }
}

/// Dimensions, each with its own partially ordered value set, arranged in a
/// DAG with one maximal (outcome) dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionHierarchy {
    dimensions: Vec<(DimensionId, ValueOrder)>,
    edges: Vec<DimensionEdge>,
    graph: Graph,
}

impl DimensionHierarchy {
    pub fn new(dimensions: Vec<(DimensionId, ValueOrder)>, edges: Vec<DimensionEdge>) -> Self {
        let graph = Graph::build(
            dimensions.iter().map(|(d, _)| d.as_str()),
            edges.iter().map(|e| (e.child.as_str(), e.parent.as_str())),
        );
        Self {
            dimensions,
            edges,
            graph,
        }
    }

    pub fn dimensions(&self) -> &[(DimensionId, ValueOrder)] {
        &self.dimensions
    }

    pub fn edges(&self) -> &[DimensionEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.dimensions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dimensions.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.graph.index.get(name).copied()
    }

    pub(crate) fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownDimension(name.into()))
    }

    pub fn id(&self, index: usize) -> &DimensionId {
        &self.dimensions[index].0
    }

    pub fn order(&self, index: usize) -> &ValueOrder {
        &self.dimensions[index].1
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let names: Vec<&str> = self.dimensions.iter().map(|(d, _)| d.as_str()).collect();
        let edges: Vec<(&str, &str, ())> = self
            .edges
            .iter()
            .map(|e| (e.child.as_str(), e.parent.as_str(), ()))
            .collect();
        check_structure(&names, &edges, &self.graph, &mut report);
        for (id, order) in &self.dimensions {
            report.extend(order.validate(id.as_str()));
        }
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

    pub fn outcome(&self) -> Option<usize> {
        match self.graph.maximal().as_slice() {
            [only] => Some(*only),
            _ => None,
        }
    }

    pub fn is_basic(&self, index: usize) -> bool {
        self.graph.is_basic(index)
    }

    pub fn basic_dimensions(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.is_basic(i))
    }

    /// Direct subordinates, in edge order.
    pub fn direct_subordinates(&self, index: usize) -> impl Iterator<Item = usize> + '_ {
        self.graph.subordinates[index]
            .iter()
            .map(|&(child, _)| child)
    }

    pub fn height(&self) -> usize {
        self.outcome()
            .map(|o| self.graph.height_below(o))
            .unwrap_or(0)
    }
}
