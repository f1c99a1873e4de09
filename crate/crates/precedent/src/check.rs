//! Cross-checks between evaluators.
//!
//! Three properties are checked: hierarchical forcing agrees with flat
//! forcing when the outcome is the only abstract node (`flat-reduction`),
//! the memoized evaluators agree with the unmemoized references (`oracle`),
//! and flat factor forcing agrees with flat dimension forcing after the
//! binary encoding (`encoding`). Each has an exhaustive form over small
//! shapes, a seeded random form, and a form driven by a document.

use std::fmt;
use std::str::FromStr;
use std::thread;

use rand::Rng;

use precedent_core::oracle::{
    encode_factors_as_dimensions, encode_situation, enumerate_query_situations, is_flat_shaped,
    reference_dhrm_bound, reference_hrm_forces,
};
use precedent_core::{
    dhrm_bound, dhrm_outcome_verdict, dhrm_verdict, drm_verdict, hrm_forces, hrm_verdict,
    rm_verdict, satisfies, BoundClaim, DimCase, DimCaseBase, DimSituation, DimensionHierarchy,
    Direction, FactSituation, FactorCase, FactorCaseBase, FactorEdge, FactorHierarchy, FactorId,
    FlatDimCaseBase, FlatFactorCase, FlatFactorCaseBase, Literal, Polarity, Side,
};

use crate::document::{DimensionDocument, Document, FactorDocument};
use crate::error::{Error, Result};
use crate::random::{self, node_name};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    FlatReduction,
    Oracle,
    Encoding,
}

impl Property {
    pub const ALL: [Property; 3] = [
        Property::FlatReduction,
        Property::Oracle,
        Property::Encoding,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::FlatReduction => "flat-reduction",
            Property::Oracle => "oracle",
            Property::Encoding => "encoding",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "property",
                name: s.into(),
            })
    }
}

/// Tally of a check: instances compared, disagreements, and a description
/// of the first disagreement.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub checked: u64,
    pub mismatches: u64,
    pub counterexample: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }

    pub fn record(&mut self, agrees: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !agrees {
            self.mismatches += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(describe());
            }
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.mismatches += other.mismatches;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} checked, {} mismatches",
            self.checked, self.mismatches
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, "; first counterexample: {c}")?;
        }
        Ok(())
    }
}

/// All index sets of size at most `k` drawn from `0..n`, in lexicographic order.
pub fn subsets_up_to(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn extend(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        if cur.len() == k {
            return;
        }
        for i in start..n {
            cur.push(i);
            extend(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    extend(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn bits(mask: usize, len: usize) -> Vec<bool> {
    (0..len).map(|i| mask >> i & 1 == 1).collect()
}

fn show_bits(values: &[Option<bool>]) -> String {
    values
        .iter()
        .map(|v| match v {
            Some(true) => '1',
            Some(false) => '0',
            None => '-',
        })
        .collect()
}

/// Runs `work` for every polarity mask over `factors` factors on scoped
/// threads and merges the reports.
fn over_masks(factors: usize, work: impl Fn(usize) -> CheckReport + Sync) -> CheckReport {
    let masks = 1usize << factors;
    let workers = thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(masks);
    let mut total = CheckReport::default();
    thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let work = &work;
                scope.spawn(move || {
                    let mut report = CheckReport::default();
                    for mask in (w..masks).step_by(workers) {
                        report.merge(work(mask));
                    }
                    report
                })
            })
            .collect();
        for handle in handles {
            total.merge(handle.join().expect("check worker panicked"));
        }
    });
    total
}

/// A hierarchy where every basic factor hangs directly under the outcome;
/// bit `i` of `pro_mask` makes factor `i + 1` pro.
pub fn flat_hierarchy(basic: usize, pro_mask: usize) -> FactorHierarchy {
    FactorHierarchy::new(
        (0..=basic).map(|i| node_name(i).into()).collect(),
        (1..=basic)
            .map(|i| {
                let polarity = if pro_mask >> (i - 1) & 1 == 1 {
                    Polarity::Pro
                } else {
                    Polarity::Con
                };
                FactorEdge::new(node_name(i), node_name(0), polarity)
            })
            .collect(),
    )
}

/// Compares hierarchical and flat forcing of both outcomes on every query
/// situation of the case base.
fn compare_flat_reduction(cb: &FactorCaseBase<'_>, report: &mut CheckReport) -> Result<()> {
    let h = cb.hierarchy();
    let flat = FlatFactorCaseBase::from_hierarchical(cb)?;
    let pi = Literal::positive(h.outcome_id().expect("valid hierarchy").clone());
    for f in enumerate_query_situations(h, 20)? {
        let g = flat.project(h, &f)?;
        for (lit, side) in [(pi.clone(), Side::Pi), (pi.negate(), Side::Delta)] {
            let hier = hrm_verdict(cb, &f, &lit)?;
            let flat_result = rm_verdict(&flat, &g, side)?;
            report.record(hier == flat_result, || {
                format!(
                    "{}: query {} forces {side}: hierarchical {hier}, flat {flat_result}",
                    describe_factor_cb(cb),
                    show_bits(f.values())
                )
            });
        }
    }
    Ok(())
}

fn describe_factor_cb(cb: &FactorCaseBase<'_>) -> String {
    let h = cb.hierarchy();
    let edges: Vec<String> = h
        .edges()
        .iter()
        .map(|e| format!("{}-{:?}->{}", e.child, e.polarity, e.parent))
        .collect();
    let cases: Vec<String> = cb
        .cases()
        .iter()
        .map(|c| show_bits(c.facts.values()))
        .collect();
    format!("edges [{}], cases [{}]", edges.join(" "), cases.join(" "))
}

/// Every flat hierarchy with `1..=max_basic` basic factors, every case base
/// of at most `max_cases` distinct complete cases, every query situation.
pub fn flat_reduction_exhaustive(max_basic: usize, max_cases: usize) -> CheckReport {
    let mut total = CheckReport::default();
    for basic in 1..=max_basic {
        let width = basic + 1;
        let case_bases = subsets_up_to(1 << width, max_cases);
        total.merge(over_masks(basic, |mask| {
            let h = flat_hierarchy(basic, mask);
            let mut report = CheckReport::default();
            for chosen in &case_bases {
                let cases = chosen
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| {
                        FactorCase::new(
                            format!("c{k}"),
                            FactSituation::from_values(
                                bits(c, width).into_iter().map(Some).collect(),
                            ),
                        )
                    })
                    .collect();
                let cb = FactorCaseBase::new(&h, cases).expect("generated cases are valid");
                compare_flat_reduction(&cb, &mut report).expect("flat shapes are well formed");
            }
            report
        }));
    }
    total
}

/// Random flat hierarchies with `1..=max_basic` basic factors and up to
/// five random cases, each compared on one random query situation.
pub fn flat_reduction_random(seed: u64, samples: u64, max_basic: usize) -> CheckReport {
    let mut rng = random::rng(seed);
    let mut report = CheckReport::default();
    for _ in 0..samples {
        let basic = rng.random_range(1..=max_basic);
        let h = random::flat_hierarchy(&mut rng, basic);
        let cb = random_factor_cb(&mut rng, &h, 5);
        let f = random::query_facts(&mut rng, &h);
        compare_flat_query(&cb, &f, &mut report).expect("generated instances are valid");
    }
    report
}

fn compare_flat_query(
    cb: &FactorCaseBase<'_>,
    f: &FactSituation,
    report: &mut CheckReport,
) -> Result<()> {
    let h = cb.hierarchy();
    let flat = FlatFactorCaseBase::from_hierarchical(cb)?;
    let g = flat.project(h, f)?;
    let pi = Literal::positive(h.outcome_id().expect("valid hierarchy").clone());
    for (lit, side) in [(pi.clone(), Side::Pi), (pi.negate(), Side::Delta)] {
        let hier = hrm_verdict(cb, f, &lit)?;
        let flat_result = rm_verdict(&flat, &g, side)?;
        report.record(hier == flat_result, || {
            format!(
                "{}: query {} forces {side}: hierarchical {hier}, flat {flat_result}",
                describe_factor_cb(cb),
                show_bits(f.values())
            )
        });
    }
    Ok(())
}

fn random_factor_cb<'h>(
    rng: &mut impl Rng,
    h: &'h FactorHierarchy,
    max_cases: usize,
) -> FactorCaseBase<'h> {
    let count = rng.random_range(0..=max_cases);
    let cases = (0..count)
        .map(|k| FactorCase::new(format!("c{k}"), random::complete_facts(rng, h.len())))
        .collect();
    FactorCaseBase::new(h, cases).expect("generated cases are valid")
}

fn random_dim_cb<'h>(
    rng: &mut impl Rng,
    h: &'h DimensionHierarchy,
    max_cases: usize,
) -> DimCaseBase<'h> {
    let count = rng.random_range(0..=max_cases);
    let cases = (0..count)
        .map(|k| DimCase::new(format!("c{k}"), random::complete_values(rng, h)))
        .collect();
    DimCaseBase::new(h, cases).expect("generated cases are valid")
}

fn any_factor_hierarchy(rng: &mut impl Rng) -> FactorHierarchy {
    let candidates = rng.random_range(1..=4);
    let basic = rng.random_range(1..=5);
    random::factor_hierarchy(rng, candidates, basic)
}

fn any_dimension_hierarchy(rng: &mut impl Rng) -> DimensionHierarchy {
    let candidates = rng.random_range(1..=4);
    let basic = rng.random_range(1..=5);
    random::dimension_hierarchy(rng, candidates, basic, false)
}

fn random_literal(rng: &mut impl Rng, h: &FactorHierarchy) -> Literal {
    Literal {
        factor: h.id(rng.random_range(0..h.len())).clone(),
        negated: rng.random(),
    }
}

fn random_claim(rng: &mut impl Rng, h: &DimensionHierarchy) -> BoundClaim {
    let d = rng.random_range(0..h.len());
    let order = h.order(d);
    BoundClaim {
        dimension: h.id(d).clone(),
        value: order.values()[rng.random_range(0..order.len())].clone(),
        direction: if rng.random() {
            Direction::Lower
        } else {
            Direction::Upper
        },
    }
}

fn compare_hrm(
    cb: &FactorCaseBase<'_>,
    f: &FactSituation,
    lit: &Literal,
    report: &mut CheckReport,
) -> Result<()> {
    let (traced, _) = hrm_forces(cb, f, lit)?;
    let fast = hrm_verdict(cb, f, lit)?;
    let reference = reference_hrm_forces(cb, f, lit)?;
    report.record(traced == reference && fast == reference, || {
        format!(
            "{}: query {} goal {lit}: traced {traced}, verdict {fast}, reference {reference}",
            describe_factor_cb(cb),
            show_bits(f.values())
        )
    });
    Ok(())
}

fn show_values(values: &[Option<usize>]) -> String {
    values
        .iter()
        .map(|v| v.map_or("-".to_string(), |i| i.to_string()))
        .collect::<Vec<_>>()
        .join(",")
}

fn compare_dhrm(
    cb: &DimCaseBase<'_>,
    x: &DimSituation,
    claim: &BoundClaim,
    report: &mut CheckReport,
) -> Result<()> {
    let (traced, _) = dhrm_bound(cb, x, claim)?;
    let fast = dhrm_verdict(cb, x, claim)?;
    let reference = reference_dhrm_bound(cb, x, claim)?;
    report.record(traced == reference && fast == reference, || {
        let cases: Vec<String> = cb.cases().iter().map(|c| show_values(c.facts.indices())).collect();
        format!(
            "cases [{}]: query [{}] claim {claim}: traced {traced}, verdict {fast}, reference {reference}",
            cases.join(" "),
            show_values(x.indices())
        )
    });
    Ok(())
}

/// Memoized factor forcing against the reference on random instances.
pub fn oracle_factor_random(seed: u64, samples: u64) -> CheckReport {
    let mut rng = random::rng(seed);
    let mut report = CheckReport::default();
    for _ in 0..samples {
        let candidates = rng.random_range(1..=4);
        let basic = rng.random_range(1..=6);
        let h = random::factor_hierarchy(&mut rng, candidates, basic);
        let cb = random_factor_cb(&mut rng, &h, 5);
        let f = random::partial_facts(&mut rng, h.len(), 0.7);
        let lit = random_literal(&mut rng, &h);
        compare_hrm(&cb, &f, &lit, &mut report).expect("generated instances are valid");
    }
    report
}

/// Memoized dimension bounds against the reference on random instances.
pub fn oracle_dimension_random(seed: u64, samples: u64) -> CheckReport {
    let mut rng = random::rng(seed);
    let mut report = CheckReport::default();
    for _ in 0..samples {
        let candidates = rng.random_range(1..=4);
        let basic = rng.random_range(1..=5);
        let h = random::dimension_hierarchy(&mut rng, candidates, basic, false);
        let cb = random_dim_cb(&mut rng, &h, 5);
        let x = random::partial_values(&mut rng, &h, 0.6);
        let claim = random_claim(&mut rng, &h);
        compare_dhrm(&cb, &x, &claim, &mut report).expect("generated instances are valid");
    }
    report
}

fn compare_encoding(
    flat: &FlatFactorCaseBase,
    g: &FactSituation,
    report: &mut CheckReport,
) -> Result<()> {
    let encoded = encode_factors_as_dimensions(flat);
    compare_encoded(flat, &encoded, g, report)
}

fn compare_encoded(
    flat: &FlatFactorCaseBase,
    encoded: &FlatDimCaseBase,
    g: &FactSituation,
    report: &mut CheckReport,
) -> Result<()> {
    let x = encode_situation(g);
    for side in [Side::Pi, Side::Delta] {
        let factor = rm_verdict(flat, g, side)?;
        let dimension = drm_verdict(encoded, &x, side)?;
        report.record(factor == dimension, || {
            let cases: Vec<String> = flat
                .cases()
                .iter()
                .map(|c| format!("{}:{}", show_bits(c.facts.values()), c.outcome))
                .collect();
            let polarities: Vec<String> = flat
                .factors()
                .iter()
                .map(|(id, p)| format!("{id}:{p:?}"))
                .collect();
            format!(
                "factors [{}], cases [{}]: query {} forces {side}: factors {factor}, dimensions {dimension}",
                polarities.join(" "),
                cases.join(" "),
                show_bits(g.values())
            )
        });
    }
    Ok(())
}

fn flat_factors(count: usize, pro_mask: usize) -> Vec<(FactorId, Polarity)> {
    (0..count)
        .map(|i| {
            let polarity = if pro_mask >> i & 1 == 1 {
                Polarity::Pro
            } else {
                Polarity::Con
            };
            (FactorId::new(node_name(i + 1)), polarity)
        })
        .collect()
}

/// Every flat case base over `0..=max_factors` factors (every partition,
/// every set of at most `max_cases` distinct decided cases), compared on
/// the full truth table of complete situations.
pub fn encoding_exhaustive(max_factors: usize, max_cases: usize) -> CheckReport {
    let mut total = CheckReport::default();
    for count in 0..=max_factors {
        // A case is its facts plus one outcome bit on top.
        let case_bases = subsets_up_to(1 << (count + 1), max_cases);
        let situations: Vec<FactSituation> = (0..1usize << count)
            .map(|m| FactSituation::from_values(bits(m, count).into_iter().map(Some).collect()))
            .collect();
        total.merge(over_masks(count, |mask| {
            let factors = flat_factors(count, mask);
            let mut report = CheckReport::default();
            for chosen in &case_bases {
                let cases = chosen
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| FlatFactorCase {
                        name: format!("c{k}"),
                        facts: FactSituation::from_values(
                            bits(c, count).into_iter().map(Some).collect(),
                        ),
                        outcome: Side::from_outcome(c >> count & 1 == 1),
                    })
                    .collect();
                let flat = FlatFactorCaseBase::new(factors.clone(), cases)
                    .expect("generated cases are valid");
                let encoded = encode_factors_as_dimensions(&flat);
                for g in &situations {
                    compare_encoded(&flat, &encoded, g, &mut report)
                        .expect("generated instances are valid");
                }
            }
            report
        }));
    }
    total
}

/// Invariants of the evaluators, each on its own stream of random instances.
pub fn invariants_random(seed: u64, samples: u64) -> Vec<(&'static str, CheckReport)> {
    vec![
        (
            "monotonicity in the case base",
            monotonicity_random(seed, samples),
        ),
        (
            "direct satisfaction implies forcing",
            direct_satisfaction_random(seed + 1, samples),
        ),
        (
            "bounds closed under weakening",
            downward_closure_random(seed + 2, samples),
        ),
        (
            "negation swaps subordinates",
            negation_swap_random(seed + 3, samples),
        ),
        (
            "recursion depth within hierarchy height",
            depth_bound_random(seed + 4, samples),
        ),
    ]
}

/// Con edges from abstract children are made pro, since forcing of an
/// abstract con subordinate can otherwise withdraw an existing witness.
fn without_abstract_con(h: &FactorHierarchy) -> FactorHierarchy {
    let edges = h
        .edges()
        .iter()
        .map(|e| {
            let mut e = e.clone();
            if !h.is_basic(h.index_of(e.child.as_str()).expect("declared")) {
                e.polarity = Polarity::Pro;
            }
            e
        })
        .collect();
    FactorHierarchy::new(h.factors().to_vec(), edges)
}

/// Forcing survives growing the case base: for positive goals in factor
/// hierarchies whose con subordinates are basic, for both flat outcomes,
/// and for dimension bounds.
pub fn monotonicity_random(seed: u64, samples: u64) -> CheckReport {
    let mut rng = random::rng(seed);
    let mut report = CheckReport::default();
    for _ in 0..samples {
        let candidates = rng.random_range(1..=4);
        let basic = rng.random_range(1..=5);
        let h = without_abstract_con(&random::factor_hierarchy(&mut rng, candidates, basic));
        let cb = random_factor_cb(&mut rng, &h, 5);
        let f = random::partial_facts(&mut rng, h.len(), 0.7);
        let lit = Literal::positive(h.id(rng.random_range(0..h.len())).clone());
        let full = hrm_verdict(&cb, &f, &lit).expect("valid");
        let flat = FlatFactorCaseBase::from_hierarchical(&cb).ok();
        let g = flat
            .as_ref()
            .map(|flat| flat.project(&h, &f).expect("valid"));
        let names: Vec<&str> = cb.cases().iter().map(|c| c.name.as_str()).collect();
        for k in 0..names.len() {
            let part = cb.subset(&names[..k]).expect("known names");
            let monotone = !hrm_verdict(&part, &f, &lit).expect("valid") || full;
            report.record(monotone, || {
                format!("{} prefix {k}: goal {lit} lost", describe_factor_cb(&cb))
            });
            if let (Some(flat), Some(g)) = (&flat, &g) {
                let flat_part = flat.subset(&names[..k]).expect("known names");
                for side in [Side::Pi, Side::Delta] {
                    let monotone = !rm_verdict(&flat_part, g, side).expect("valid")
                        || rm_verdict(flat, g, side).expect("valid");
                    report.record(monotone, || {
                        format!("{} prefix {k}: flat {side} lost", describe_factor_cb(&cb))
                    });
                }
            }
        }

        let dh = random::dimension_hierarchy(&mut rng, candidates, basic, false);
        let dcb = random_dim_cb(&mut rng, &dh, 5);
        let x = random::partial_values(&mut rng, &dh, 0.6);
        let claim = random_claim(&mut rng, &dh);
        let full = dhrm_verdict(&dcb, &x, &claim).expect("valid");
        let names: Vec<&str> = dcb.cases().iter().map(|c| c.name.as_str()).collect();
        for k in 0..names.len() {
            let part = dcb.subset(&names[..k]).expect("known names");
            let monotone = !dhrm_verdict(&part, &x, &claim).expect("valid") || full;
            report.record(monotone, || format!("bound {claim} lost at prefix {k}"));
        }
    }
    report
}

/// A situation that settles a goal itself forces it under any case base.
pub fn direct_satisfaction_random(seed: u64, samples: u64) -> CheckReport {
    let mut rng = random::rng(seed);
    let mut report = CheckReport::default();
    for _ in 0..samples {
        let h = any_factor_hierarchy(&mut rng);
        let cb = random_factor_cb(&mut rng, &h, 5);
        let f = random::partial_facts(&mut rng, h.len(), 0.8);
        let lit = random_literal(&mut rng, &h);
        let direct = satisfies(&h, &f, &lit).expect("valid");
        let forced = hrm_verdict(&cb, &f, &lit).expect("valid");
        report.record(!direct || forced, || {
            format!(
                "{}: {lit} satisfied by {} but not forced",
                describe_factor_cb(&cb),
                show_bits(f.values())
            )
        });

        let dh = any_dimension_hierarchy(&mut rng);
        let dcb = random_dim_cb(&mut rng, &dh, 5);
        let x = random::partial_values(&mut rng, &dh, 0.8);
        let claim = random_claim(&mut rng, &dh);
        let d = dh.index_of(claim.dimension.as_str()).expect("declared");
        let order = dh.order(d);
        let v = order.index_of(&claim.value).expect("declared");
        let direct = x.get(d).is_some_and(|w| match claim.direction {
            Direction::Lower => order.leq_index(v, w),
            Direction::Upper => order.leq_index(w, v),
        });
        let forced = dhrm_verdict(&dcb, &x, &claim).expect("valid");
        report.record(!direct || forced, || {
            format!("bound {claim} holds directly but is not forced")
        });
    }
    report
}

/// A forced lower bound stays forced at every smaller value, and a forced
/// upper bound at every larger value.
pub fn downward_closure_random(seed: u64, samples: u64) -> CheckReport {
    let mut rng = random::rng(seed);
    let mut report = CheckReport::default();
    for _ in 0..samples {
        let dh = any_dimension_hierarchy(&mut rng);
        let dcb = random_dim_cb(&mut rng, &dh, 5);
        let x = random::partial_values(&mut rng, &dh, 0.6);
        let claim = random_claim(&mut rng, &dh);
        if !dhrm_verdict(&dcb, &x, &claim).expect("valid") {
            report.record(true, String::new);
            continue;
        }
        let d = dh.index_of(claim.dimension.as_str()).expect("declared");
        let order = dh.order(d);
        let v = order.index_of(&claim.value).expect("declared");
        for w in 0..order.len() {
            let weaker = match claim.direction {
                Direction::Lower => order.leq_index(w, v),
                Direction::Upper => order.leq_index(v, w),
            };
            if weaker {
                let weak = BoundClaim {
                    value: order.values()[w].clone(),
                    ..claim.clone()
                };
                let forced = dhrm_verdict(&dcb, &x, &weak).expect("valid");
                report.record(forced, || {
                    format!("{claim} forced but weaker {weak} is not")
                });
            }
        }
    }
    report
}

/// Pro and con subordinates trade places under negation.
pub fn negation_swap_random(seed: u64, samples: u64) -> CheckReport {
    let mut rng = random::rng(seed);
    let mut report = CheckReport::default();
    for _ in 0..samples {
        let h = any_factor_hierarchy(&mut rng);
        let lit = random_literal(&mut rng, &h);
        let (pro, con) = h.subordinates(&lit).expect("declared");
        let (npro, ncon) = h.subordinates(&lit.negate()).expect("declared");
        report.record(pro == ncon && con == npro, || {
            format!("subordinates of {lit} do not swap")
        });
    }
    report
}

/// Every derivation nests at most one level per hierarchy level.
pub fn depth_bound_random(seed: u64, samples: u64) -> CheckReport {
    let mut rng = random::rng(seed);
    let mut report = CheckReport::default();
    for _ in 0..samples {
        let h = any_factor_hierarchy(&mut rng);
        let cb = random_factor_cb(&mut rng, &h, 5);
        let f = random::partial_facts(&mut rng, h.len(), 0.6);
        let lit = random_literal(&mut rng, &h);
        let (_, trace) = hrm_forces(&cb, &f, &lit).expect("valid");
        let limit = h.height() + 1;
        report.record(trace.depth() <= limit && trace.is_well_formed(), || {
            format!(
                "{}: {lit} trace depth {} exceeds {limit}",
                describe_factor_cb(&cb),
                trace.depth()
            )
        });

        let dh = any_dimension_hierarchy(&mut rng);
        let dcb = random_dim_cb(&mut rng, &dh, 5);
        let x = random::partial_values(&mut rng, &dh, 0.6);
        let claim = random_claim(&mut rng, &dh);
        let (_, trace) = dhrm_bound(&dcb, &x, &claim).expect("valid");
        let limit = dh.height() + 1;
        report.record(trace.depth() <= limit && trace.is_well_formed(), || {
            format!("{claim}: trace depth {} exceeds {limit}", trace.depth())
        });
    }
    report
}

/// Options for checks driven by a document.
#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    pub seed: u64,
    /// Random instances in the neighbourhood of the document.
    pub samples: u64,
    /// Most basic factors whose query situations are enumerated.
    pub cap: usize,
}

/// Runs `property` over the document itself and over random case bases and
/// situations on the document's hierarchy.
pub fn check_document(
    doc: &Document,
    property: Property,
    options: CheckOptions,
) -> Result<CheckReport> {
    match (doc, property) {
        (Document::Factor(d), Property::FlatReduction) => factor_flat_reduction(d, options),
        (Document::Factor(d), Property::Oracle) => factor_oracle(d, options),
        (Document::Factor(d), Property::Encoding) => factor_encoding(d, options),
        (Document::Dimension(d), Property::Oracle) => dimension_oracle(d, options),
        (Document::Dimension(d), Property::FlatReduction) => dimension_flat_reduction(d, options),
        (Document::Dimension(_), Property::Encoding) => Err(Error::Usage(
            "the encoding check takes a factor document".into(),
        )),
    }
}

fn factor_flat_reduction(doc: &FactorDocument, options: CheckOptions) -> Result<CheckReport> {
    let h = doc.hierarchy();
    if !is_flat_shaped(&h) {
        return Err(Error::Usage(
            "flat-reduction needs a hierarchy whose only abstract factor is the outcome".into(),
        ));
    }
    enumerate_query_situations(&h, options.cap)?;
    let mut report = CheckReport::default();
    let all = doc.case_base(&h, None)?;
    let names: Vec<String> = all.cases().iter().map(|c| c.name.clone()).collect();
    // Every sub-case-base of small documents, the whole one otherwise.
    let subsets = if names.len() <= 8 {
        subsets_up_to(names.len(), names.len())
    } else {
        vec![(0..names.len()).collect()]
    };
    for subset in subsets {
        let chosen: Vec<String> = subset.iter().map(|&i| names[i].clone()).collect();
        let cb = doc.case_base(&h, Some(&chosen))?;
        compare_flat_reduction(&cb, &mut report)?;
    }
    let mut rng = random::rng(options.seed);
    for _ in 0..options.samples {
        let cb = random_factor_cb(&mut rng, &h, 5);
        let f = random::query_facts(&mut rng, &h);
        compare_flat_query(&cb, &f, &mut report)?;
    }
    Ok(report)
}

fn factor_oracle(doc: &FactorDocument, options: CheckOptions) -> Result<CheckReport> {
    let h = doc.hierarchy();
    let cb = doc.case_base(&h, None)?;
    let mut report = CheckReport::default();
    let literals: Vec<Literal> = h
        .factors()
        .iter()
        .flat_map(|id| {
            let lit = Literal::positive(id.clone());
            [lit.negate(), lit]
        })
        .collect();
    let mut situations: Vec<FactSituation> = doc
        .queries
        .iter()
        .chain(&doc.cases)
        .map(|q| doc.situation(&h, q))
        .collect::<Result<_>>()?;
    situations.extend(enumerate_query_situations(&h, options.cap)?);
    for f in &situations {
        for lit in &literals {
            compare_hrm(&cb, f, lit, &mut report)?;
        }
    }
    let mut rng = random::rng(options.seed);
    for _ in 0..options.samples {
        let random_cb = random_factor_cb(&mut rng, &h, 5);
        let f = random::partial_facts(&mut rng, h.len(), 0.7);
        let lit = random_literal(&mut rng, &h);
        compare_hrm(&random_cb, &f, &lit, &mut report)?;
    }
    Ok(report)
}

fn factor_encoding(doc: &FactorDocument, options: CheckOptions) -> Result<CheckReport> {
    let h = doc.hierarchy();
    let cb = doc.case_base(&h, None)?;
    let flat = doc.flat_case_base(&cb)?;
    let count = flat.factors().len();
    if count > options.cap {
        return Err(precedent_core::Error::EnumerationCap {
            basic: count,
            situations: 1u128 << count.min(127),
            cap: options.cap,
        }
        .into());
    }
    let mut report = CheckReport::default();
    let encoded = encode_factors_as_dimensions(&flat);
    for mask in 0..1usize << count {
        let g = FactSituation::from_values(bits(mask, count).into_iter().map(Some).collect());
        compare_encoded(&flat, &encoded, &g, &mut report)?;
    }
    let mut rng = random::rng(options.seed);
    for _ in 0..options.samples {
        let cases = (0..rng.random_range(0..=5))
            .map(|k| FlatFactorCase {
                name: format!("c{k}"),
                facts: random::complete_facts(&mut rng, count),
                outcome: Side::from_outcome(rng.random()),
            })
            .collect();
        let random_flat = FlatFactorCaseBase::new(flat.factors().to_vec(), cases)?;
        let g = random::complete_facts(&mut rng, count);
        compare_encoding(&random_flat, &g, &mut report)?;
    }
    Ok(report)
}

fn dimension_oracle(doc: &DimensionDocument, options: CheckOptions) -> Result<CheckReport> {
    let h = doc.hierarchy();
    let cb = doc.case_base(&h, None)?;
    let mut report = CheckReport::default();
    let claims: Vec<BoundClaim> = (0..h.len())
        .flat_map(|d| {
            let id = h.id(d).clone();
            h.order(d).values().to_vec().into_iter().flat_map(move |v| {
                [
                    BoundClaim::lower(v.clone(), id.clone()),
                    BoundClaim::upper(id.clone(), v),
                ]
            })
        })
        .collect();
    for entry in doc.queries.iter().chain(&doc.cases) {
        let x = doc.situation(&h, entry)?;
        for claim in &claims {
            compare_dhrm(&cb, &x, claim, &mut report)?;
        }
    }
    let mut rng = random::rng(options.seed);
    for _ in 0..options.samples {
        let random_cb = random_dim_cb(&mut rng, &h, 5);
        let x = random::partial_values(&mut rng, &h, 0.6);
        let claim = random_claim(&mut rng, &h);
        compare_dhrm(&random_cb, &x, &claim, &mut report)?;
    }
    Ok(report)
}

/// Hierarchical outcome bounds against the flat dimension model, on every
/// case and query completed with the least value of each undefined base
/// dimension, and on random complete situations.
fn dimension_flat_reduction(doc: &DimensionDocument, options: CheckOptions) -> Result<CheckReport> {
    let h = doc.hierarchy();
    let outcome = h.outcome().expect("validated hierarchy has an outcome");
    if (0..h.len()).any(|d| d != outcome && !h.is_basic(d)) {
        return Err(Error::Usage(
            "flat-reduction needs a hierarchy whose only abstract dimension is the outcome".into(),
        ));
    }
    let cb = doc.case_base(&h, None)?;
    let mut report = CheckReport::default();
    let mut situations = Vec::new();
    for entry in doc.queries.iter().chain(&doc.cases) {
        let mut x = doc.situation(&h, entry)?;
        x.set(outcome, None);
        for d in 0..h.len() {
            if d != outcome && x.get(d).is_none() {
                x.set(d, Some(0));
            }
        }
        situations.push(x);
    }
    let mut rng = random::rng(options.seed);
    for _ in 0..options.samples {
        let mut x = random::complete_values(&mut rng, &h);
        x.set(outcome, None);
        situations.push(x);
    }
    let flat = FlatDimCaseBase::from_hierarchical(&cb)?;
    for x in &situations {
        let projected = flat.project(&h, x)?;
        for side in [Side::Pi, Side::Delta] {
            let hier = dhrm_outcome_verdict(&cb, x, side)?;
            let flat_result = drm_verdict(&flat, &projected, side)?;
            report.record(hier == flat_result, || {
                format!(
                    "query [{}] forces {side}: hierarchical {hier}, flat {flat_result}",
                    show_values(x.indices())
                )
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_are_counted_by_binomials() {
        assert_eq!(subsets_up_to(4, 2).len(), 1 + 4 + 6);
        assert_eq!(subsets_up_to(3, 3).len(), 8);
        assert_eq!(subsets_up_to(0, 3), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn small_exhaustive_checks_pass() {
        let report = flat_reduction_exhaustive(2, 2);
        assert!(report.passed(), "{report}");
        assert!(report.checked > 0);
        let report = encoding_exhaustive(2, 2);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn random_checks_are_reproducible() {
        assert_eq!(oracle_factor_random(3, 50), oracle_factor_random(3, 50));
        assert_eq!(oracle_factor_random(3, 50).checked, 50);
    }

    #[test]
    fn property_names_round_trip() {
        for p in Property::ALL {
            assert_eq!(p.name().parse::<Property>().unwrap(), p);
        }
        assert!("nope".parse::<Property>().is_err());
    }
}
