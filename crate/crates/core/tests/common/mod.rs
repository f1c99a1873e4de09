#![allow(dead_code)]

use precedent_core::{
    DimCase, DimSituation, DimensionEdge, DimensionHierarchy, FactSituation, FactorCase,
    FactorEdge, FactorHierarchy, Polarity, Value, ValueOrder,
};

pub const FAMILY_EDGES: [(&str, &str, Polarity); 9] = [
    ("Q", "pi", Polarity::Pro),
    ("R", "pi", Polarity::Pro),
    ("P", "Q", Polarity::Pro),
    ("F3", "Q", Polarity::Con),
    ("F1", "P", Polarity::Pro),
    ("F2", "P", Polarity::Pro),
    ("F4", "R", Polarity::Pro),
    ("F5", "R", Polarity::Con),
    ("F6", "R", Polarity::Con),
];

pub const FAMILY_FACTORS: [&str; 10] = ["pi", "Q", "R", "P", "F1", "F2", "F3", "F4", "F5", "F6"];

/// The family ice-cream hierarchy.
pub fn family_hierarchy() -> FactorHierarchy {
    FactorHierarchy::new(
        FAMILY_FACTORS.iter().map(|&f| f.into()).collect(),
        FAMILY_EDGES
            .iter()
            .map(|&(c, p, pol)| FactorEdge::new(c, p, pol))
            .collect(),
    )
}

/// Complete case: the listed factors apply, all others do not.
pub fn case(h: &FactorHierarchy, name: &str, present: &[&str]) -> FactorCase {
    let facts = FactSituation::from_named(
        h,
        h.factors()
            .iter()
            .map(|f| (f.as_str(), present.contains(&f.as_str()))),
    )
    .unwrap();
    FactorCase::new(name, facts)
}

/// Partial situation with the given present and absent factors.
pub fn situation(h: &FactorHierarchy, present: &[&str], absent: &[&str]) -> FactSituation {
    FactSituation::from_named(
        h,
        present
            .iter()
            .map(|&f| (f, true))
            .chain(absent.iter().map(|&f| (f, false))),
    )
    .unwrap()
}

pub fn max_monday(h: &FactorHierarchy) -> FactorCase {
    case(h, "M", &["F1", "F5", "P", "Q", "pi"])
}

pub fn max_monday_prime(h: &FactorHierarchy) -> FactorCase {
    case(h, "M'", &["F1", "F4", "F5", "P", "Q", "R", "pi"])
}

pub fn max_monday_double_prime(h: &FactorHierarchy) -> FactorCase {
    case(h, "M''", &["F1", "P", "Q", "pi"])
}

pub fn emma_monday(h: &FactorHierarchy) -> FactSituation {
    situation(h, &["F2", "F6"], &["F1", "F3", "F4", "F5"])
}

pub fn emma_monday_prime(h: &FactorHierarchy) -> FactSituation {
    situation(h, &["F2", "F4", "F6"], &["F1", "F3", "F5"])
}

pub fn emma_monday_double_prime(h: &FactorHierarchy) -> FactSituation {
    situation(h, &["F2"], &["F1", "F3", "F4", "F5", "F6"])
}

/// The family hierarchy as dimensions: binary base dimensions ordered by
/// their factor polarity, natural-valued intermediate dimensions.
pub fn family_dimensions() -> DimensionHierarchy {
    let order = |name: &str| match name {
        "pi" | "F1" | "F2" | "F4" => ValueOrder::ascending([0, 1]),
        "F3" | "F5" | "F6" => ValueOrder::descending([0, 1]),
        _ => ValueOrder::ascending(0..=5),
    };
    DimensionHierarchy::new(
        FAMILY_FACTORS
            .iter()
            .map(|&d| (d.into(), order(d)))
            .collect(),
        FAMILY_EDGES
            .iter()
            .map(|&(c, p, _)| DimensionEdge::new(c, p))
            .collect(),
    )
}

/// Every dimension is 0 except the listed ones; `undefined` are left out.
pub fn dim_situation(
    h: &DimensionHierarchy,
    values: &[(&str, i64)],
    undefined: &[&str],
) -> DimSituation {
    DimSituation::from_named(
        h,
        h.dimensions()
            .iter()
            .map(|(d, _)| d.as_str())
            .filter(|d| !undefined.contains(d))
            .map(|d| {
                let v = values.iter().find(|(n, _)| *n == d).map_or(0, |&(_, v)| v);
                (d, Value::Int(v))
            }),
    )
    .unwrap()
}

pub fn dim_max(h: &DimensionHierarchy) -> DimCase {
    DimCase::new(
        "M",
        dim_situation(
            h,
            &[
                ("F1", 1),
                ("F5", 1),
                ("P", 2),
                ("Q", 2),
                ("R", 3),
                ("pi", 1),
            ],
            &[],
        ),
    )
}

pub fn dim_emma(h: &DimensionHierarchy) -> DimSituation {
    dim_situation(h, &[("F2", 1), ("F6", 1), ("P", 3), ("Q", 3)], &["R", "pi"])
}

pub fn dim_emma_prime(h: &DimensionHierarchy) -> DimSituation {
    dim_situation(h, &[("F2", 1), ("F5", 1), ("P", 3), ("Q", 3)], &["R", "pi"])
}

pub mod strategies {
    use proptest::prelude::*;
    use proptest::sample::Index;

    use precedent_core::{
        DimCase, DimCaseBase, DimSituation, DimensionEdge, DimensionHierarchy, FactSituation,
        FactorCase, FactorCaseBase, FactorEdge, FactorHierarchy, Polarity, Value, ValueOrder,
    };

    type ParentSpec = (Index, Option<Index>, bool, bool);

    /// Node 0 is the outcome; nodes `1..n_abstract` pick parents among
    /// earlier abstract nodes, the rest among all abstract nodes. Every node
    /// reaches node 0, so the outcome is the unique maximal element.
    fn shape(n_abstract: usize, parents: &[ParentSpec]) -> Vec<(usize, usize, Polarity)> {
        let mut edges = Vec::new();
        for (k, (first, second, pol1, pol2)) in parents.iter().enumerate() {
            let node = k + 1;
            let bound = node.min(n_abstract);
            let pol = |b: bool| if b { Polarity::Pro } else { Polarity::Con };
            let p1 = first.index(bound);
            edges.push((node, p1, pol(*pol1)));
            if let Some(second) = second {
                let p2 = second.index(bound);
                if p2 != p1 {
                    edges.push((node, p2, pol(*pol2)));
                }
            }
        }
        edges
    }

    fn names(n: usize) -> Vec<String> {
        (0..n)
            .map(|i| {
                if i == 0 {
                    "pi".to_string()
                } else {
                    format!("f{i}")
                }
            })
            .collect()
    }

    fn shapes(
        abstract_range: std::ops::RangeInclusive<usize>,
        basic_range: std::ops::RangeInclusive<usize>,
    ) -> impl Strategy<Value = (usize, Vec<(usize, usize, Polarity)>)> {
        (abstract_range, basic_range).prop_flat_map(|(a, b)| {
            prop::collection::vec(
                (
                    any::<Index>(),
                    any::<Option<Index>>(),
                    any::<bool>(),
                    any::<bool>(),
                ),
                a + b - 1,
            )
            .prop_map(move |parents| (a + b, shape(a, &parents)))
        })
    }

    pub fn factor_hierarchy_from(n: usize, edges: &[(usize, usize, Polarity)]) -> FactorHierarchy {
        let names = names(n);
        FactorHierarchy::new(
            names.iter().map(|s| s.as_str().into()).collect(),
            edges
                .iter()
                .map(|&(c, p, pol)| FactorEdge::new(names[c].as_str(), names[p].as_str(), pol))
                .collect(),
        )
    }

    #[derive(Debug, Clone)]
    pub struct FactorInstance {
        pub hierarchy: FactorHierarchy,
        pub cases: Vec<Vec<bool>>,
        pub situation: Vec<Option<bool>>,
        pub goal: usize,
        pub negated: bool,
    }

    impl FactorInstance {
        pub fn case_base(&self) -> FactorCaseBase<'_> {
            self.case_base_prefix(self.cases.len())
        }

        pub fn case_base_prefix(&self, k: usize) -> FactorCaseBase<'_> {
            FactorCaseBase::new(
                &self.hierarchy,
                self.cases[..k]
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        FactorCase::new(
                            format!("c{i}"),
                            FactSituation::from_values(c.iter().map(|&b| Some(b)).collect()),
                        )
                    })
                    .collect(),
            )
            .unwrap()
        }

        pub fn facts(&self) -> FactSituation {
            FactSituation::from_values(self.situation.clone())
        }

        pub fn literal(&self) -> precedent_core::Literal {
            precedent_core::Literal {
                factor: self.hierarchy.id(self.goal).clone(),
                negated: self.negated,
            }
        }
    }

    fn factor_instances(
        abstract_range: std::ops::RangeInclusive<usize>,
        basic_range: std::ops::RangeInclusive<usize>,
        undefined_abstract: bool,
    ) -> impl Strategy<Value = FactorInstance> {
        shapes(abstract_range, basic_range).prop_flat_map(move |(n, edges)| {
            let h = factor_hierarchy_from(n, &edges);
            let basic: Vec<bool> = (0..n).map(|i| h.is_basic(i)).collect();
            (
                Just(h),
                prop::collection::vec(prop::collection::vec(any::<bool>(), n), 0..5),
                prop::collection::vec(prop::option::weighted(0.7, any::<bool>()), n),
                0..n,
                any::<bool>(),
            )
                .prop_map(move |(hierarchy, cases, mut situation, goal, negated)| {
                    if undefined_abstract {
                        for (i, b) in basic.iter().enumerate() {
                            if !b {
                                situation[i] = None;
                            }
                        }
                    }
                    FactorInstance {
                        hierarchy,
                        cases,
                        situation,
                        goal,
                        negated,
                    }
                })
        })
    }

    /// Random DAG-shaped hierarchies with arbitrary partial situations.
    pub fn factor_instance() -> impl Strategy<Value = FactorInstance> {
        factor_instances(1..=4, 1..=5, false)
    }

    /// The outcome is the only abstract factor; situations leave it undefined.
    pub fn flat_factor_instance() -> impl Strategy<Value = FactorInstance> {
        factor_instances(1..=1, 1..=7, true)
    }

    #[derive(Debug, Clone)]
    pub struct DimInstance {
        pub hierarchy: DimensionHierarchy,
        pub cases: Vec<Vec<usize>>,
        pub situation: Vec<Option<usize>>,
        pub goal: usize,
        pub value: usize,
        pub upper: bool,
    }

    impl DimInstance {
        pub fn case_base(&self) -> DimCaseBase<'_> {
            self.case_base_prefix(self.cases.len())
        }

        pub fn case_base_prefix(&self, k: usize) -> DimCaseBase<'_> {
            DimCaseBase::new(
                &self.hierarchy,
                self.cases[..k]
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        DimCase::new(
                            format!("c{i}"),
                            DimSituation::from_indices(c.iter().map(|&v| Some(v)).collect()),
                        )
                    })
                    .collect(),
            )
            .unwrap()
        }

        pub fn facts(&self) -> DimSituation {
            DimSituation::from_indices(self.situation.clone())
        }

        pub fn claim_at(&self, value: usize) -> precedent_core::BoundClaim {
            let d = self.goal;
            precedent_core::BoundClaim {
                dimension: self.hierarchy.id(d).clone(),
                value: self.hierarchy.order(d).values()[value].clone(),
                direction: if self.upper {
                    precedent_core::Direction::Upper
                } else {
                    precedent_core::Direction::Lower
                },
            }
        }

        pub fn claim(&self) -> precedent_core::BoundClaim {
            self.claim_at(self.value)
        }
    }

    type OrderSpec = (u8, usize, Vec<bool>);

    fn order_from(shape: &OrderSpec) -> ValueOrder {
        let (kind, size, bits) = shape;
        match kind % 3 {
            0 => ValueOrder::ascending(0..*size as i64),
            1 => ValueOrder::descending(0..*size as i64),
            _ => {
                let values: Vec<Value> = (0..*size).map(|i| Value::Sym(format!("v{i}"))).collect();
                let mut pairs = Vec::new();
                let mut bit = 0;
                for i in 0..*size {
                    for j in i + 1..*size {
                        if bits[bit % bits.len()] {
                            pairs.push((values[i].clone(), values[j].clone()));
                        }
                        bit += 1;
                    }
                }
                ValueOrder::explicit(values, pairs)
            }
        }
    }

    /// Random dimension hierarchies; the outcome is binary `0 ⪯ 1` when
    /// `binary_outcome`, other dimensions get ascending, descending or random
    /// explicit partial orders over up to five values.
    pub fn dim_instance_with(
        abstract_range: std::ops::RangeInclusive<usize>,
        basic_range: std::ops::RangeInclusive<usize>,
        binary_outcome: bool,
    ) -> impl Strategy<Value = DimInstance> {
        shapes(abstract_range, basic_range).prop_flat_map(move |(n, edges)| {
            prop::collection::vec(
                (
                    any::<u8>(),
                    1..=5usize,
                    prop::collection::vec(any::<bool>(), 10),
                ),
                n,
            )
            .prop_flat_map(move |mut orders| {
                if binary_outcome {
                    orders[0] = (0, 2, vec![true]);
                }
                let names = names(n);
                let h = DimensionHierarchy::new(
                    names
                        .iter()
                        .zip(&orders)
                        .map(|(name, shape)| (name.as_str().into(), order_from(shape)))
                        .collect(),
                    edges
                        .iter()
                        .map(|&(c, p, _)| DimensionEdge::new(names[c].as_str(), names[p].as_str()))
                        .collect(),
                );
                let sizes: Vec<usize> = orders.iter().map(|o| o.1).collect();
                (
                    Just(h),
                    prop::collection::vec(prop::collection::vec(any::<Index>(), n), 0..5),
                    prop::collection::vec(prop::option::weighted(0.6, any::<Index>()), n),
                    0..n,
                    any::<Index>(),
                    any::<bool>(),
                )
                    .prop_map(
                        move |(hierarchy, cases, situation, goal, value, upper)| {
                            let pick = |d: usize, i: &Index| i.index(sizes[d]);
                            DimInstance {
                                cases: cases
                                    .iter()
                                    .map(|c| {
                                        c.iter().enumerate().map(|(d, i)| pick(d, i)).collect()
                                    })
                                    .collect(),
                                situation: situation
                                    .iter()
                                    .enumerate()
                                    .map(|(d, i)| i.as_ref().map(|i| pick(d, i)))
                                    .collect(),
                                value: pick(goal, &value),
                                hierarchy,
                                goal,
                                upper,
                            }
                        },
                    )
            })
        })
    }

    pub fn dim_instance() -> impl Strategy<Value = DimInstance> {
        dim_instance_with(1..=4, 1..=5, false)
    }
}
