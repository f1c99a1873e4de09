use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use super::{ValidationReport, Violation};
use crate::error::{Error, Result};

/// A value token of a dimension: an integer or a symbol.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Sym(String),
}

impl Value {
    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Int(i) => Some(*i),
            Value::Sym(_) => None,
        }
    }

    /// Integers parse as [`Value::Int`], anything else is a symbol.
    pub fn parse(token: &str) -> Self {
        token
            .parse::<i64>()
            .map(Value::Int)
            .unwrap_or_else(|_| Value::Sym(token.into()))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Sym(s) => f.write_str(s),
        }
    }
}

impl From<i64> for Value {
    fn from(i: i64) -> Self {
        Value::Int(i)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Sym(s.into())
    }
}

/// How the values of a dimension are ordered. `v <= w` always reads "w is
/// at least as good for the outcome as v".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    /// Integer tokens, ordered as integers.
    Ascending,
    /// Integer tokens, ordered against the integers.
    Descending,
    /// Reflexive-transitive closure of the listed pairs.
    Explicit(Vec<(Value, Value)>),
}

/// A finite value set with a partial order, stored as its closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueOrder {
    values: Vec<Value>,
    kind: OrderKind,
    // Row-major closure: leq[i * n + j] iff values[i] <= values[j].
    leq: Vec<bool>,
}

impl ValueOrder {
    pub fn new(values: Vec<Value>, kind: OrderKind) -> Self {
        let n = values.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        match &kind {
            OrderKind::Ascending | OrderKind::Descending => {
                let desc = matches!(kind, OrderKind::Descending);
                for i in 0..n {
                    for j in 0..n {
                        if let (Some(a), Some(b)) = (values[i].as_int(), values[j].as_int()) {
                            leq[i * n + j] = if desc { a >= b } else { a <= b };
                        }
                    }
                }
            }
            OrderKind::Explicit(pairs) => {
                let pos = |v: &Value| values.iter().position(|x| x == v);
                for (a, b) in pairs {
                    if let (Some(i), Some(j)) = (pos(a), pos(b)) {
                        leq[i * n + j] = true;
                    }
                }
                for k in 0..n {
                    for i in 0..n {
                        if leq[i * n + k] {
                            for j in 0..n {
                                if leq[k * n + j] {
                                    leq[i * n + j] = true;
                                }
                            }
                        }
                    }
                }
            }
        }
        Self { values, kind, leq }
    }

    pub fn ascending(values: impl IntoIterator<Item = i64>) -> Self {
        Self::new(
            values.into_iter().map(Value::Int).collect(),
            OrderKind::Ascending,
        )
    }

    pub fn descending(values: impl IntoIterator<Item = i64>) -> Self {
        Self::new(
            values.into_iter().map(Value::Int).collect(),
            OrderKind::Descending,
        )
    }

    pub fn explicit(values: Vec<Value>, pairs: Vec<(Value, Value)>) -> Self {
        Self::new(values, OrderKind::Explicit(pairs))
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn index_of(&self, value: &Value) -> Option<usize> {
        self.values.iter().position(|v| v == value)
    }

    pub fn leq_index(&self, lower: usize, upper: usize) -> bool {
        self.leq[lower * self.values.len() + upper]
    }

    /// Whether `lower <= upper` in this order.
    pub fn value_leq(&self, lower: &Value, upper: &Value) -> Result<bool> {
        let missing = |v: &Value| Error::UnknownValue(v.to_string());
        let i = self.index_of(lower).ok_or_else(|| missing(lower))?;
        let j = self.index_of(upper).ok_or_else(|| missing(upper))?;
        Ok(self.leq_index(i, j))
    }

    /// Reports problems with the value set and antisymmetry of the closure.
    pub fn validate(&self, dimension: &str) -> ValidationReport {
        let mut report = ValidationReport::new();
        if self.values.is_empty() {
            report.push(Violation::EmptyValueSet {
                dimension: dimension.into(),
            });
        }
        let mut seen = BTreeSet::new();
        for v in &self.values {
            if !seen.insert(v) {
                report.push(Violation::DuplicateValue {
                    dimension: dimension.into(),
                    value: v.to_string(),
                });
            }
        }
        match &self.kind {
            OrderKind::Ascending | OrderKind::Descending => {
                for v in self.values.iter().filter(|v| v.as_int().is_none()) {
                    report.push(Violation::NonNumericValue {
                        dimension: dimension.into(),
                        value: v.to_string(),
                    });
                }
            }
            OrderKind::Explicit(pairs) => {
                let mut flagged = BTreeSet::new();
                for v in pairs.iter().flat_map(|(a, b)| [a, b]) {
                    if self.index_of(v).is_none() && flagged.insert(v) {
                        report.push(Violation::UnknownValue {
                            dimension: dimension.into(),
                            value: v.to_string(),
                        });
                    }
                }
            }
        }
        let n = self.values.len();
        for i in 0..n {
            for j in i + 1..n {
                if self.values[i] != self.values[j] && self.leq_index(i, j) && self.leq_index(j, i)
                {
                    report.push(Violation::NotAntisymmetric {
                        dimension: dimension.into(),
                        lower: self.values[i].to_string(),
                        upper: self.values[j].to_string(),
                    });
                }
            }
        }
        report
    }
}
