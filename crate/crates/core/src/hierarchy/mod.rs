//! Factor and dimension hierarchies, value orders and their validation.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

mod dimension;
mod factor;
mod order;

pub use dimension::{DimensionEdge, DimensionHierarchy};
pub use factor::{FactorEdge, FactorHierarchy, Literal, Polarity};
pub use order::{OrderKind, Value, ValueOrder};

macro_rules! id_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(String);

        impl $name {
            pub fn new(name: impl Into<String>) -> Self {
                Self(name.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self(s.into())
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                Self(s)
            }
        }

        impl core::borrow::Borrow<str> for $name {
            fn borrow(&self) -> &str {
                &self.0
            }
        }
    };
}

id_type!(
    /// Name of a factor in a factor hierarchy.
    FactorId
);
id_type!(
    /// Name of a dimension in a dimension hierarchy.
    DimensionId
);

/// A single reason why a hierarchy, value order or case-base document is not
/// well formed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    EmptyName,
    DuplicateNode {
        name: String,
    },
    UnknownNode {
        name: String,
        context: String,
    },
    Cycle {
        path: Vec<String>,
    },
    NoMaximal,
    MultipleMaximal {
        names: Vec<String>,
    },
    DuplicateEdge {
        child: String,
        parent: String,
        conflicting: bool,
    },
    EmptyValueSet {
        dimension: String,
    },
    DuplicateValue {
        dimension: String,
        value: String,
    },
    NonNumericValue {
        dimension: String,
        value: String,
    },
    UnknownValue {
        dimension: String,
        value: String,
    },
    NotAntisymmetric {
        dimension: String,
        lower: String,
        upper: String,
    },
    IncompleteCase {
        case: String,
        missing: Vec<String>,
    },
    UnknownReference {
        owner: String,
        name: String,
    },
    ValueNotInDimension {
        owner: String,
        dimension: String,
        value: String,
    },
    DuplicateCaseName {
        name: String,
    },
    FlatPartition {
        factor: String,
        problem: String,
    },
    /// A declared dimension gives both or neither of a direction and explicit pairs.
    OrderDeclaration {
        dimension: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyName => f.write_str("empty node name"),
            Violation::DuplicateNode { name } => write!(f, "`{name}` is declared more than once"),
            Violation::UnknownNode { name, context } => {
                write!(f, "{context} refers to undeclared `{name}`")
            }
            Violation::Cycle { path } => {
                f.write_str("cycle: ")?;
                for (i, node) in path.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" -> ")?;
                    }
                    f.write_str(node)?;
                }
                Ok(())
            }
            Violation::NoMaximal => f.write_str("no maximal element"),
            Violation::MultipleMaximal { names } => {
                write!(f, "more than one maximal element: {}", names.join(", "))
            }
            Violation::DuplicateEdge {
                child,
                parent,
                conflicting,
            } => {
                if *conflicting {
                    write!(f, "edge {child} -> {parent} is declared both pro and con")
                } else {
                    write!(f, "edge {child} -> {parent} is declared more than once")
                }
            }
            Violation::EmptyValueSet { dimension } => {
                write!(f, "dimension `{dimension}` has no values")
            }
            Violation::DuplicateValue { dimension, value } => {
                write!(f, "dimension `{dimension}` lists value `{value}` more than once")
            }
            Violation::NonNumericValue { dimension, value } => write!(
                f,
                "dimension `{dimension}` has a numeric order but value `{value}` is not an integer"
            ),
            Violation::UnknownValue { dimension, value } => {
                write!(f, "order of `{dimension}` mentions unknown value `{value}`")
            }
            Violation::NotAntisymmetric {
                dimension,
                lower,
                upper,
            } => write!(
                f,
                "order of `{dimension}` is not antisymmetric: {lower} <= {upper} and {upper} <= {lower}"
            ),
            Violation::IncompleteCase { case, missing } => write!(
                f,
                "case not complete: `{case}` has no value for {}",
                missing.join(", ")
            ),
            Violation::UnknownReference { owner, name } => {
                write!(f, "`{owner}` refers to undeclared `{name}`")
            }
            Violation::ValueNotInDimension {
                owner,
                dimension,
                value,
            } => write!(
                f,
                "`{owner}` assigns `{value}` to `{dimension}`, which is not one of its values"
            ),
            Violation::DuplicateCaseName { name } => {
                write!(f, "case or query name `{name}` is used more than once")
            }
            Violation::FlatPartition { factor, problem } => {
                write!(f, "flat partition: `{factor}` {problem}")
            }
            Violation::OrderDeclaration { dimension } => write!(
                f,
                "dimension `{dimension}` needs exactly one of an order direction and explicit pairs"
            ),
        }
    }
}

/// Every violation found in one validation pass. Empty iff the input is valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, violation: Violation) {
        self.violations.push(violation);
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    pub fn iter(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("OK");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Index-based adjacency shared by both hierarchy kinds. Edges that name
/// undeclared nodes are left out; validation reports them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Graph {
    pub(crate) index: BTreeMap<String, usize>,
    /// Direct subordinates of each node, as (child, edge position), in edge order.
    pub(crate) subordinates: Vec<Vec<(usize, usize)>>,
    pub(crate) superiors: Vec<Vec<usize>>,
}

impl Graph {
    pub(crate) fn build<'a>(
        names: impl ExactSizeIterator<Item = &'a str>,
        edges: impl Iterator<Item = (&'a str, &'a str)>,
    ) -> Self {
        let n = names.len();
        let mut index = BTreeMap::new();
        for (i, name) in names.enumerate() {
            index.entry(String::from(name)).or_insert(i);
        }
        let mut subordinates = vec![Vec::new(); n];
        let mut superiors = vec![Vec::new(); n];
        for (pos, (child, parent)) in edges.enumerate() {
            if let (Some(&c), Some(&p)) = (index.get(child), index.get(parent)) {
                subordinates[p].push((c, pos));
                superiors[c].push(p);
            }
        }
        Self {
            index,
            subordinates,
            superiors,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.superiors.len()
    }

    pub(crate) fn is_basic(&self, node: usize) -> bool {
        self.subordinates[node].is_empty()
    }

    pub(crate) fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.superiors[i].is_empty())
            .collect()
    }

    /// Longest subordinate chain below `node`, counted in edges. Assumes acyclicity.
    pub(crate) fn height_below(&self, node: usize) -> usize {
        fn go(g: &Graph, node: usize, memo: &mut Vec<Option<usize>>) -> usize {
            if let Some(h) = memo[node] {
                return h;
            }
            let h = g.subordinates[node]
                .iter()
                .map(|&(c, _)| 1 + go(g, c, memo))
                .max()
                .unwrap_or(0);
            memo[node] = Some(h);
            h
        }
        let mut memo = vec![None; self.len()];
        go(self, node, &mut memo)
    }

    /// Elementary cycles reachable by depth-first search along child -> parent
    /// edges, one witness per back edge, each closed (first node repeated).
    pub(crate) fn cycles(&self) -> Vec<Vec<usize>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Open,
            Done,
        }
        fn visit(
            g: &Graph,
            node: usize,
            marks: &mut [Mark],
            stack: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            marks[node] = Mark::Open;
            stack.push(node);
            for &next in &g.superiors[node] {
                match marks[next] {
                    Mark::New => visit(g, next, marks, stack, out),
                    Mark::Open => {
                        let start = stack.iter().position(|&x| x == next).unwrap_or(0);
                        let mut path: Vec<usize> = stack[start..].to_vec();
                        path.push(next);
                        out.push(path);
                    }
                    Mark::Done => {}
                }
            }
            stack.pop();
            marks[node] = Mark::Done;
        }
        let mut marks = vec![Mark::New; self.len()];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for node in 0..self.len() {
            if marks[node] == Mark::New {
                visit(self, node, &mut marks, &mut stack, &mut out);
            }
        }
        out
    }
}

/// Structural checks common to factor and dimension hierarchies: names,
/// dangling and duplicate edges, cycles and the unique maximal element.
/// `tags` carries the edge polarity for factor hierarchies so that duplicate
/// edges with different polarity are flagged as conflicting.
pub(crate) fn check_structure<'a, T: PartialEq + 'a>(
    names: &[&'a str],
    edges: &[(&'a str, &'a str, T)],
    graph: &Graph,
    report: &mut ValidationReport,
) {
    let mut seen = BTreeSet::new();
    for name in names {
        if name.is_empty() {
            report.push(Violation::EmptyName);
        } else if !seen.insert(*name) {
            report.push(Violation::DuplicateNode {
                name: (*name).into(),
            });
        }
    }

    let mut first_tag: BTreeMap<(&str, &str), &T> = BTreeMap::new();
    let mut flagged = BTreeSet::new();
    for (child, parent, tag) in edges {
        for end in [child, parent] {
            if !graph.index.contains_key(*end) {
                report.push(Violation::UnknownNode {
                    name: (*end).into(),
                    context: alloc::format!("edge {child} -> {parent}"),
                });
            }
        }
        match first_tag.get(&(*child, *parent)) {
            None => {
                first_tag.insert((*child, *parent), tag);
            }
            Some(prev) => {
                if flagged.insert((*child, *parent)) {
                    report.push(Violation::DuplicateEdge {
                        child: (*child).into(),
                        parent: (*parent).into(),
                        conflicting: *prev != tag,
                    });
                }
            }
        }
    }

    let name_of = |i: usize| String::from(names[i]);
    for cycle in graph.cycles() {
        report.push(Violation::Cycle {
            path: cycle.into_iter().map(name_of).collect(),
        });
    }

    let maximal = graph.maximal();
    match maximal.len() {
        0 => report.push(Violation::NoMaximal),
        1 => {}
        _ => report.push(Violation::MultipleMaximal {
            names: maximal.into_iter().map(name_of).collect(),
        }),
    }
}
