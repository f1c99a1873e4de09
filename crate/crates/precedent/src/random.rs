//! Seeded random hierarchies, cases and situations.
//!
//! Hierarchies are built top down: node 0 is the outcome, abstract
//! candidates pick one or two parents among earlier abstract nodes and the
//! remaining nodes pick parents among all abstract candidates. Every node
//! therefore reaches the outcome and the graph is acyclic. A candidate that
//! ends up with no children is simply basic.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use precedent_core::{
    DimSituation, DimensionEdge, DimensionHierarchy, FactSituation, FactorEdge, FactorHierarchy,
    Polarity, Value, ValueOrder,
};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Node names: the outcome is `pi`, the rest `f1`, `f2`, ...
pub fn node_name(i: usize) -> String {
    if i == 0 {
        "pi".into()
    } else {
        format!("f{i}")
    }
}

/// Parent edges `(child, parent, polarity)` for `candidates` abstract
/// candidates followed by `basic` leaves.
fn shape(rng: &mut impl Rng, candidates: usize, basic: usize) -> Vec<(usize, usize, Polarity)> {
    let n = candidates + basic;
    let mut edges = Vec::new();
    for node in 1..n {
        let bound = node.min(candidates);
        let first = rng.random_range(0..bound);
        edges.push((node, first, polarity(rng)));
        if rng.random_bool(0.3) {
            let second = rng.random_range(0..bound);
            if second != first {
                edges.push((node, second, polarity(rng)));
            }
        }
    }
    edges
}

fn polarity(rng: &mut impl Rng) -> Polarity {
    if rng.random() {
        Polarity::Pro
    } else {
        Polarity::Con
    }
}

pub fn factor_hierarchy(rng: &mut impl Rng, candidates: usize, basic: usize) -> FactorHierarchy {
    let n = candidates + basic;
    let edges = shape(rng, candidates, basic);
    FactorHierarchy::new(
        (0..n).map(|i| node_name(i).into()).collect(),
        edges
            .into_iter()
            .map(|(c, p, pol)| FactorEdge::new(node_name(c), node_name(p), pol))
            .collect(),
    )
}

/// A hierarchy whose only abstract factor is the outcome.
pub fn flat_hierarchy(rng: &mut impl Rng, basic: usize) -> FactorHierarchy {
    FactorHierarchy::new(
        (0..=basic).map(|i| node_name(i).into()).collect(),
        (1..=basic)
            .map(|i| FactorEdge::new(node_name(i), node_name(0), polarity(rng)))
            .collect(),
    )
}

pub fn complete_facts(rng: &mut impl Rng, len: usize) -> FactSituation {
    FactSituation::from_values((0..len).map(|_| Some(rng.random())).collect())
}

/// Each factor is defined with probability `defined`.
pub fn partial_facts(rng: &mut impl Rng, len: usize, defined: f64) -> FactSituation {
    FactSituation::from_values(
        (0..len)
            .map(|_| rng.random_bool(defined).then(|| rng.random()))
            .collect(),
    )
}

/// A query situation: random on the basic factors, undefined on the abstract ones.
pub fn query_facts(rng: &mut impl Rng, h: &FactorHierarchy) -> FactSituation {
    FactSituation::from_values(
        (0..h.len())
            .map(|i| h.is_basic(i).then(|| rng.random()))
            .collect(),
    )
}

/// Ascending, descending or a random explicit partial order over up to
/// `max_values` values.
pub fn value_order(rng: &mut impl Rng, max_values: usize) -> ValueOrder {
    let size = rng.random_range(1..=max_values);
    match rng.random_range(0..3) {
        0 => ValueOrder::ascending(0..size as i64),
        1 => ValueOrder::descending(0..size as i64),
        _ => {
            let values: Vec<Value> = (0..size).map(|i| Value::Sym(format!("v{i}"))).collect();
            let mut pairs = Vec::new();
            for i in 0..size {
                for j in i + 1..size {
                    if rng.random_bool(0.4) {
                        pairs.push((values[i].clone(), values[j].clone()));
                    }
                }
            }
            ValueOrder::explicit(values, pairs)
        }
    }
}

/// Random dimension hierarchy; with `binary_outcome` the outcome is `0 ⪯ 1`.
pub fn dimension_hierarchy(
    rng: &mut impl Rng,
    candidates: usize,
    basic: usize,
    binary_outcome: bool,
) -> DimensionHierarchy {
    let n = candidates + basic;
    let edges = shape(rng, candidates, basic);
    DimensionHierarchy::new(
        (0..n)
            .map(|i| {
                let order = if i == 0 && binary_outcome {
                    ValueOrder::ascending([0, 1])
                } else {
                    value_order(rng, 5)
                };
                (node_name(i).into(), order)
            })
            .collect(),
        edges
            .into_iter()
            .map(|(c, p, _)| DimensionEdge::new(node_name(c), node_name(p)))
            .collect(),
    )
}

pub fn complete_values(rng: &mut impl Rng, h: &DimensionHierarchy) -> DimSituation {
    DimSituation::from_indices(
        (0..h.len())
            .map(|d| Some(rng.random_range(0..h.order(d).len())))
            .collect(),
    )
}

pub fn partial_values(rng: &mut impl Rng, h: &DimensionHierarchy, defined: f64) -> DimSituation {
    DimSituation::from_indices(
        (0..h.len())
            .map(|d| {
                rng.random_bool(defined)
                    .then(|| rng.random_range(0..h.order(d).len()))
            })
            .collect(),
    )
}
