//! Case-base documents.
//!
//! A document is a JSON object with a `model` discriminator (`"factor"` or
//! `"dimension"`), a hierarchy section, named cases and named queries. Facts
//! are objects from factor or dimension names to values; a missing key means
//! the situation is undefined there.
//!
//! ```json
//! {
//!   "model": "factor",
//!   "hierarchy": {
//!     "factors": ["pi", "a", "b"],
//!     "edges": [
//!       { "child": "a", "parent": "pi", "polarity": "pro" },
//!       { "child": "b", "parent": "pi", "polarity": "con" }
//!     ]
//!   },
//!   "cases": [{ "name": "G", "facts": { "pi": true, "a": true, "b": false } }],
//!   "queries": [{ "name": "F", "facts": { "a": true } }]
//! }
//! ```
//!
//! Parsing is strict (unknown keys and repeated fact keys are syntax errors
//! reported with line and column). Semantic checks run afterwards and
//! collect every violation into one [`ValidationReport`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::marker::PhantomData;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::{Deserialize, Serialize};

use precedent_core::{
    satisfies, DimCase, DimCaseBase, DimSituation, DimensionEdge, DimensionHierarchy,
    FactSituation, FactorCase, FactorCaseBase, FactorEdge, FactorHierarchy, FactorId,
    FlatFactorCaseBase, Literal, OrderKind, Polarity, ValidationReport, Value, ValueOrder,
    Violation,
};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Factor,
    Dimension,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Factor => "factor",
            Model::Dimension => "dimension",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Factor(FactorDocument),
    Dimension(DimensionDocument),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorDocument {
    pub model: Model,
    pub hierarchy: FactorSection,
    #[serde(default)]
    pub cases: Vec<Entry<bool>>,
    #[serde(default)]
    pub queries: Vec<Entry<bool>>,
    /// Global partition for the flat model. Without it the partition is
    /// derived from the hierarchy.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flat: Option<FlatSection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSection {
    pub factors: Vec<String>,
    #[serde(default)]
    pub edges: Vec<FactorEdgeEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorEdgeEntry {
    pub child: String,
    pub parent: String,
    pub polarity: Polarity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlatSection {
    #[serde(default)]
    pub pro: Vec<String>,
    #[serde(default)]
    pub con: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimensionDocument {
    pub model: Model,
    pub hierarchy: DimensionSection,
    #[serde(default)]
    pub cases: Vec<Entry<Value>>,
    #[serde(default)]
    pub queries: Vec<Entry<Value>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimensionSection {
    pub dimensions: Vec<DimensionEntry>,
    #[serde(default)]
    pub edges: Vec<DimensionEdgeEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Ascending,
    Descending,
}

/// A dimension with its value set. Exactly one of `order` (integer values
/// in numeric order or its reverse) and `leq` (generating pairs of an
/// arbitrary partial order; the closure is computed) must be given.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimensionEntry {
    pub name: String,
    pub values: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Direction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<(Value, Value)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimensionEdgeEntry {
    pub child: String,
    pub parent: String,
}

/// A named case or query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry<T> {
    pub name: String,
    #[serde(
        deserialize_with = "distinct_keys",
        bound(deserialize = "T: Deserialize<'de>")
    )]
    pub facts: BTreeMap<String, T>,
}

/// A fact situation is a function: a second assignment to the same key is
/// rejected instead of silently overriding the first.
fn distinct_keys<'de, D, T>(deserializer: D) -> std::result::Result<BTreeMap<String, T>, D::Error>
where
    D: Deserializer<'de>,
    T: Deserialize<'de>,
{
    struct Distinct<T>(PhantomData<T>);

    impl<'de, T: Deserialize<'de>> Visitor<'de> for Distinct<T> {
        type Value = BTreeMap<String, T>;

        fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            f.write_str("an object from names to values")
        }

        fn visit_map<A: MapAccess<'de>>(
            self,
            mut map: A,
        ) -> std::result::Result<Self::Value, A::Error> {
            let mut out = BTreeMap::new();
            while let Some(key) = map.next_key::<String>()? {
                if out.contains_key(&key) {
                    return Err(de::Error::custom(format_args!("`{key}` is assigned twice")));
                }
                let value = map.next_value()?;
                out.insert(key, value);
            }
            Ok(out)
        }
    }

    deserializer.deserialize_map(Distinct(PhantomData))
}

#[derive(Deserialize)]
struct Header {
    model: Model,
}

/// Parses a document without semantic checks. Syntax errors carry the
/// line and column of the offending token.
pub fn parse(text: &str) -> Result<Document> {
    let header: Header = serde_json::from_str(text).map_err(Error::Syntax)?;
    Ok(match header.model {
        Model::Factor => Document::Factor(serde_json::from_str(text).map_err(Error::Syntax)?),
        Model::Dimension => Document::Dimension(serde_json::from_str(text).map_err(Error::Syntax)?),
    })
}

/// Parses and validates; any semantic violation is an error.
pub fn load(text: &str) -> Result<Document> {
    let doc = parse(text)?;
    let report = doc.validate();
    if report.is_valid() {
        Ok(doc)
    } else {
        Err(Error::Invalid(report))
    }
}

/// Canonical text: keys sorted, two-space indentation, LF line endings and
/// a trailing newline. Declaration order of factors, dimensions, edges,
/// cases and queries is kept.
pub fn serialize(doc: &Document) -> String {
    let value = match doc {
        Document::Factor(d) => serde_json::to_value(d),
        Document::Dimension(d) => serde_json::to_value(d),
    }
    .expect("documents serialize to JSON");
    let mut text = serde_json::to_string_pretty(&value).expect("JSON values serialize");
    text.push('\n');
    text
}

impl Document {
    pub fn model(&self) -> Model {
        match self {
            Document::Factor(_) => Model::Factor,
            Document::Dimension(_) => Model::Dimension,
        }
    }

    /// Every semantic violation: hierarchy structure, value orders, unknown
    /// names, incomplete cases, values outside their dimension, repeated
    /// entry names and problems with the flat partition.
    pub fn validate(&self) -> ValidationReport {
        match self {
            Document::Factor(d) => d.validate(),
            Document::Dimension(d) => d.validate(),
        }
    }

    /// Abstract factors a case assigns although the case holds a subordinate
    /// against that value and none for it. These are reported for
    /// information and never make a document invalid. Dimension hierarchies
    /// carry no polarity, so they never get notes. The document must already
    /// be valid.
    pub fn coherence_notes(&self) -> Result<Vec<String>> {
        match self {
            Document::Factor(d) => d.coherence_notes(),
            Document::Dimension(_) => Ok(Vec::new()),
        }
    }

    pub fn case_names(&self) -> Vec<&str> {
        match self {
            Document::Factor(d) => d.cases.iter().map(|c| c.name.as_str()).collect(),
            Document::Dimension(d) => d.cases.iter().map(|c| c.name.as_str()).collect(),
        }
    }
}

fn check_names<'a, T: 'a>(
    entries: impl Iterator<Item = &'a Entry<T>>,
    report: &mut ValidationReport,
) {
    let mut seen = BTreeSet::new();
    for entry in entries {
        if !seen.insert(entry.name.as_str()) {
            report.push(Violation::DuplicateCaseName {
                name: entry.name.clone(),
            });
        }
    }
}

impl FactorDocument {
    pub fn hierarchy(&self) -> FactorHierarchy {
        FactorHierarchy::new(
            self.hierarchy
                .factors
                .iter()
                .map(|f| FactorId::from(f.as_str()))
                .collect(),
            self.hierarchy
                .edges
                .iter()
                .map(|e| FactorEdge::new(e.child.as_str(), e.parent.as_str(), e.polarity))
                .collect(),
        )
    }

    pub fn validate(&self) -> ValidationReport {
        let h = self.hierarchy();
        let mut report = h.validate();
        let declared: BTreeSet<&str> = self.hierarchy.factors.iter().map(String::as_str).collect();
        for entry in self.cases.iter().chain(&self.queries) {
            for name in entry.facts.keys() {
                if !declared.contains(name.as_str()) {
                    report.push(Violation::UnknownReference {
                        owner: entry.name.clone(),
                        name: name.clone(),
                    });
                }
            }
        }
        for case in &self.cases {
            let missing: Vec<String> = self
                .hierarchy
                .factors
                .iter()
                .filter(|f| !case.facts.contains_key(*f))
                .cloned()
                .collect();
            if !missing.is_empty() {
                report.push(Violation::IncompleteCase {
                    case: case.name.clone(),
                    missing,
                });
            }
        }
        check_names(self.cases.iter().chain(&self.queries), &mut report);
        if let Some(flat) = &self.flat {
            let mut listed = BTreeSet::new();
            for name in flat.pro.iter().chain(&flat.con) {
                let problem = match h.index_of(name) {
                    None => Some("not a declared factor"),
                    Some(i) if Some(i) == h.outcome() => Some("is the outcome factor"),
                    Some(_) if !listed.insert(name.as_str()) => Some("listed more than once"),
                    Some(_) => None,
                };
                if let Some(problem) = problem {
                    report.push(Violation::FlatPartition {
                        factor: name.clone(),
                        problem: problem.into(),
                    });
                }
            }
        }
        report
    }

    /// Situation of a case or query over the hierarchy's factors. Names the
    /// hierarchy does not declare are an error.
    pub fn situation(&self, h: &FactorHierarchy, entry: &Entry<bool>) -> Result<FactSituation> {
        Ok(FactSituation::from_named(
            h,
            entry.facts.iter().map(|(k, v)| (k.as_str(), *v)),
        )?)
    }

    /// The named cases, in document order; `None` selects all of them.
    pub fn case_base<'h>(
        &self,
        h: &'h FactorHierarchy,
        names: Option<&[String]>,
    ) -> Result<FactorCaseBase<'h>> {
        let cases = select(&self.cases, names)?
            .into_iter()
            .map(|c| Ok(FactorCase::new(c.name.clone(), self.situation(h, c)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(FactorCaseBase::new(h, cases)?)
    }

    /// A query by name; cases may be queried too.
    pub fn query(&self, name: &str) -> Result<&Entry<bool>> {
        find_entry(&self.queries, &self.cases, name)
    }

    fn coherence_notes(&self) -> Result<Vec<String>> {
        let h = self.hierarchy();
        let mut notes = Vec::new();
        for case in &self.cases {
            let facts = self.situation(&h, case)?;
            for a in h.abstract_factors() {
                let Some(value) = facts.get(a) else { continue };
                let id = h.id(a).clone();
                let literal = if value {
                    Literal::positive(id)
                } else {
                    Literal::negative(id)
                };
                let (pro, con) = h.subordinates(&literal)?;
                let holds = |l: &Literal| satisfies(&h, &facts, l).unwrap_or(false);
                if !pro.iter().any(holds) && con.iter().any(holds) {
                    notes.push(format!(
                        "case `{}` sets `{}` to {value} although only reasons against it hold",
                        case.name, literal.factor
                    ));
                }
            }
        }
        Ok(notes)
    }

    /// Flat view of a case base, using the document's partition if it has one.
    pub fn flat_case_base(&self, cb: &FactorCaseBase<'_>) -> Result<FlatFactorCaseBase> {
        Ok(match &self.flat {
            None => FlatFactorCaseBase::from_hierarchical(cb)?,
            Some(flat) => {
                let partition = flat
                    .pro
                    .iter()
                    .map(|f| (FactorId::from(f.as_str()), Polarity::Pro))
                    .chain(
                        flat.con
                            .iter()
                            .map(|f| (FactorId::from(f.as_str()), Polarity::Con)),
                    )
                    .collect();
                FlatFactorCaseBase::with_partition(cb, partition)?
            }
        })
    }
}

impl DimensionDocument {
    pub fn hierarchy(&self) -> DimensionHierarchy {
        DimensionHierarchy::new(
            self.hierarchy
                .dimensions
                .iter()
                .map(|d| (d.name.as_str().into(), d.order()))
                .collect(),
            self.hierarchy
                .edges
                .iter()
                .map(|e| DimensionEdge::new(e.child.as_str(), e.parent.as_str()))
                .collect(),
        )
    }

    pub fn validate(&self) -> ValidationReport {
        let h = self.hierarchy();
        let mut report = h.validate();
        for d in &self.hierarchy.dimensions {
            if d.order.is_some() == d.leq.is_some() {
                report.push(Violation::OrderDeclaration {
                    dimension: d.name.clone(),
                });
            }
        }
        let declared: BTreeMap<&str, &DimensionEntry> = self
            .hierarchy
            .dimensions
            .iter()
            .map(|d| (d.name.as_str(), d))
            .collect();
        for entry in self.cases.iter().chain(&self.queries) {
            for (name, value) in &entry.facts {
                match declared.get(name.as_str()) {
                    None => report.push(Violation::UnknownReference {
                        owner: entry.name.clone(),
                        name: name.clone(),
                    }),
                    Some(d) if !d.values.contains(value) => {
                        report.push(Violation::ValueNotInDimension {
                            owner: entry.name.clone(),
                            dimension: name.clone(),
                            value: value.to_string(),
                        })
                    }
                    Some(_) => {}
                }
            }
        }
        for case in &self.cases {
            let missing: Vec<String> = self
                .hierarchy
                .dimensions
                .iter()
                .filter(|d| !case.facts.contains_key(&d.name))
                .map(|d| d.name.clone())
                .collect();
            if !missing.is_empty() {
                report.push(Violation::IncompleteCase {
                    case: case.name.clone(),
                    missing,
                });
            }
        }
        check_names(self.cases.iter().chain(&self.queries), &mut report);
        report
    }

    pub fn situation(&self, h: &DimensionHierarchy, entry: &Entry<Value>) -> Result<DimSituation> {
        Ok(DimSituation::from_named(
            h,
            entry.facts.iter().map(|(k, v)| (k.as_str(), v.clone())),
        )?)
    }

    pub fn case_base<'h>(
        &self,
        h: &'h DimensionHierarchy,
        names: Option<&[String]>,
    ) -> Result<DimCaseBase<'h>> {
        let cases = select(&self.cases, names)?
            .into_iter()
            .map(|c| Ok(DimCase::new(c.name.clone(), self.situation(h, c)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(DimCaseBase::new(h, cases)?)
    }

    pub fn query(&self, name: &str) -> Result<&Entry<Value>> {
        find_entry(&self.queries, &self.cases, name)
    }
}

impl DimensionEntry {
    pub fn order(&self) -> ValueOrder {
        let kind = match (&self.order, &self.leq) {
            (Some(Direction::Ascending), _) => OrderKind::Ascending,
            (Some(Direction::Descending), _) => OrderKind::Descending,
            (None, Some(pairs)) => OrderKind::Explicit(pairs.clone()),
            (None, None) => OrderKind::Explicit(Vec::new()),
        };
        ValueOrder::new(self.values.clone(), kind)
    }
}

fn select<'a, T>(entries: &'a [Entry<T>], names: Option<&[String]>) -> Result<Vec<&'a Entry<T>>> {
    let Some(names) = names else {
        return Ok(entries.iter().collect());
    };
    for name in names {
        if !entries.iter().any(|e| &e.name == name) {
            return Err(Error::UnknownName {
                kind: "case",
                name: name.clone(),
            });
        }
    }
    Ok(entries.iter().filter(|e| names.contains(&e.name)).collect())
}

fn find_entry<'a, T>(
    queries: &'a [Entry<T>],
    cases: &'a [Entry<T>],
    name: &str,
) -> Result<&'a Entry<T>> {
    queries
        .iter()
        .chain(cases)
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownName {
            kind: "query",
            name: name.into(),
        })
}

/// Parses, validates and re-serializes in canonical form.
pub fn canonicalize(text: &str) -> Result<String> {
    Ok(serialize(&load(text)?))
}
