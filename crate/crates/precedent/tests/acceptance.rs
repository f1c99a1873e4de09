//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use precedent::check::{
    encoding_exhaustive, flat_reduction_exhaustive, flat_reduction_random, invariants_random,
    oracle_dimension_random, oracle_factor_random, CheckReport,
};
use precedent::document::{self, DimensionDocument, Document, FactorDocument};
use precedent::render::{render_trace, Labels, Style};
use precedent_core::{
    dhrm_bound, dhrm_forces_outcome, hrm_forces, rm_forces, BoundClaim, Condition, DerivationTrace,
    DirectCheck, Literal, Side,
};

const FAMILY_FCT: &str = include_str!("../fixtures/family.fct");
const FAMILY_DIM: &str = include_str!("../fixtures/family.dim");
const FLAT_FCT: &str = include_str!("../fixtures/flat.fct");
const DIAMOND_DIM: &str = include_str!("../fixtures/diamond.dim");

const SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn factor_doc() -> FactorDocument {
    match document::load(FAMILY_FCT).expect("family.fct loads") {
        Document::Factor(d) => d,
        Document::Dimension(_) => panic!("family.fct is a factor document"),
    }
}

fn dimension_doc() -> DimensionDocument {
    match document::load(FAMILY_DIM).expect("family.dim loads") {
        Document::Dimension(d) => d,
        Document::Factor(_) => panic!("family.dim is a dimension document"),
    }
}

/// HRM verdict and trace for `goal` with the named cases against a query.
fn hrm(
    doc: &FactorDocument,
    cases: &[&str],
    query: &str,
    goal: Literal,
) -> (bool, DerivationTrace) {
    let h = doc.hierarchy();
    let names: Vec<String> = cases.iter().map(|s| s.to_string()).collect();
    let cb = doc.case_base(&h, Some(&names)).unwrap();
    let f = doc.situation(&h, doc.query(query).unwrap()).unwrap();
    hrm_forces(&cb, &f, &goal).unwrap()
}

fn subjects(trace: &DerivationTrace) -> Vec<String> {
    trace
        .blocking_chain()
        .iter()
        .map(|(node, failure)| match failure {
            Some(c) => format!("{}@{}", goal_name(node), c.subject()),
            None => goal_name(node),
        })
        .collect()
}

fn goal_name(trace: &DerivationTrace) -> String {
    match &trace.goal {
        precedent_core::Goal::Literal(l) => l.to_string(),
        precedent_core::Goal::Side(s) => s.to_string(),
        precedent_core::Goal::Bound(b) => b.dimension.to_string(),
    }
}

fn criterion_1() -> Outcome {
    let doc = factor_doc();
    let (forced, trace) = hrm(&doc, &["M"], "E", Literal::positive("pi"));
    ensure(!forced, "M forces pi for E")?;
    let chain = subjects(&trace);
    ensure(
        chain == ["pi@Q", "Q@P", "P@F1", "F1"],
        format!("reduction chain {chain:?}"),
    )?;
    // At Q the con condition on F3 holds because M lacks F3 and E is not forced F3.
    let q = trace.attempts[0].conditions[0].subgoal().unwrap();
    let f3 = q.attempts[0]
        .conditions
        .iter()
        .find(|c| c.subject() == "F3")
        .ok_or("no F3 condition at Q")?;
    ensure(
        matches!(
            f3,
            Condition::Con {
                in_precedent: false,
                holds: true,
                ..
            }
        ),
        "F3 condition at Q",
    )?;
    let leaf = trace.blocking_chain().last().unwrap().0;
    ensure(
        leaf.direct == DirectCheck::Fails,
        "leaf F1 does not fail directly",
    )?;
    let text = render_trace(&trace, &Labels::new(&["M"], "E"), Style::PLAIN);
    let last = text.lines().last().unwrap_or_default().trim();
    ensure(last == "E ⊨ F1: fails", format!("trace ends with {last:?}"))?;
    Ok("pi → Q → (P, M ⊨ ¬F3) → F1; trace ends at \"E ⊨ F1: fails\"".into())
}

fn criterion_2() -> Outcome {
    let (forced, _) = hrm(&factor_doc(), &["M"], "EP", Literal::positive("pi"));
    ensure(forced, "M does not force pi for E with P")?;
    Ok("M, E+P ⊨ pi".into())
}

fn criterion_3() -> Outcome {
    let (forced, trace) = hrm(
        &factor_doc(),
        &["Mprime"],
        "Eprime",
        Literal::positive("pi"),
    );
    ensure(!forced, "M' forces pi for E'")?;
    let attempt = &trace.attempts[0];
    let r = attempt
        .conditions
        .iter()
        .find(|c| c.subject() == "R")
        .ok_or("no R condition")?;
    ensure(!r.holds(), "R condition holds")?;
    let sub = r.subgoal().ok_or("R condition has no subgoal")?;
    let blocker = sub.attempts[0]
        .first_failure()
        .ok_or("R subgoal not blocked")?;
    ensure(
        matches!(
            blocker,
            Condition::Con {
                in_precedent: false,
                ..
            }
        ) && blocker.subject() == "F6",
        format!("R blocked at {}", blocker.subject()),
    )?;
    Ok("M', E' ⊭ pi; R subgoal blocked because M' ⊭ F6".into())
}

fn criterion_4() -> Outcome {
    let doc = factor_doc();
    let h = doc.hierarchy();
    let cb = doc.case_base(&h, Some(&["Mdprime".to_string()])).unwrap();
    let flat = doc.flat_case_base(&cb).unwrap();
    let f = doc.situation(&h, doc.query("Edprime").unwrap()).unwrap();
    let (flat_forced, flat_trace) =
        rm_forces(&flat, &flat.project(&h, &f).unwrap(), Side::Pi).unwrap();
    ensure(!flat_forced, "flat model forces pi for E''")?;
    let blocker = flat_trace.attempts[0]
        .first_failure()
        .ok_or("no flat blocker")?;
    ensure(
        blocker.subject() == "F1",
        format!("flat blocker {}", blocker.subject()),
    )?;
    let (forced, _) = hrm(&doc, &["Mdprime"], "EdprimeP", Literal::positive("pi"));
    ensure(forced, "HRM does not force pi once P is added")?;
    Ok("RM distinguishes E'' on F1; with P added HRM forces pi".into())
}

fn criterion_5() -> Outcome {
    let doc = dimension_doc();
    let h = doc.hierarchy();
    let cb = doc.case_base(&h, None).unwrap();
    let e = doc.situation(&h, doc.query("E").unwrap()).unwrap();
    let e1 = doc.situation(&h, doc.query("Eprime").unwrap()).unwrap();
    let (q, _) = dhrm_bound(&cb, &e, &BoundClaim::lower(2, "Q")).unwrap();
    let (r, r_trace) = dhrm_bound(&cb, &e, &BoundClaim::lower(3, "R")).unwrap();
    let (pi, _) = dhrm_bound(&cb, &e, &BoundClaim::lower(1, "pi")).unwrap();
    let (pi1, _) = dhrm_bound(&cb, &e1, &BoundClaim::lower(1, "pi")).unwrap();
    let (outcome, _) = dhrm_forces_outcome(&cb, &e1, Side::Pi).unwrap();
    ensure(
        q && !r && !pi && pi1 && outcome,
        format!("verdicts {q} {r} {pi} {pi1} {outcome}"),
    )?;
    let blocker = r_trace.attempts[0].first_failure().ok_or("R not blocked")?;
    ensure(
        blocker.subject() == "F6",
        format!("R blocked at {}", blocker.subject()),
    )?;
    Ok("2⪯E(Q) forced; 3⪯E(R) not (F6); 1⪯E(pi) not; 1⪯E'(pi) forced".into())
}

fn tally(parts: &[(&str, &CheckReport)]) -> Outcome {
    for (name, report) in parts {
        ensure(report.passed(), format!("{name}: {report}"))?;
    }
    Ok(parts
        .iter()
        .map(|(name, r)| format!("{name} {} checked", r.checked))
        .collect::<Vec<_>>()
        .join(", ")
        + ", 0 mismatches")
}

fn criterion_6() -> Outcome {
    let exhaustive = flat_reduction_exhaustive(4, 3);
    let random = flat_reduction_random(SEED, 10_000, 8);
    ensure(random.checked >= 2 * 10_000, "too few random instances")?;
    tally(&[("exhaustive", &exhaustive), ("random", &random)])
}

fn criterion_7() -> Outcome {
    let factors = oracle_factor_random(SEED, 10_000);
    let dimensions = oracle_dimension_random(SEED, 10_000);
    ensure(
        factors.checked >= 10_000 && dimensions.checked >= 10_000,
        "too few instances",
    )?;
    tally(&[("hrm", &factors), ("dhrm", &dimensions)])
}

fn criterion_8() -> Outcome {
    let report = encoding_exhaustive(5, 3);
    tally(&[("truth tables", &report)])
}

fn criterion_9() -> Outcome {
    let reports = invariants_random(SEED, 1_000);
    for (name, report) in &reports {
        ensure(
            report.checked >= 1_000,
            format!("{name}: only {} cases", report.checked),
        )?;
    }
    let parts: Vec<(&str, &CheckReport)> = reports.iter().map(|(n, r)| (*n, r)).collect();
    tally(&parts)
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let fixtures = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let output = Command::new(env!("CARGO_BIN_EXE_precedent"))
        .args(args)
        .current_dir(fixtures)
        .env("PRECEDENT_COLOR", "0")
        .output()
        .map_err(|e| e.to_string())?;
    ensure(
        output.status.success(),
        format!("{args:?} exited with {}", output.status),
    )?;
    Ok(output.stdout)
}

fn criterion_10() -> Outcome {
    for (name, text) in [
        ("family.fct", FAMILY_FCT),
        ("family.dim", FAMILY_DIM),
        ("flat.fct", FLAT_FCT),
        ("diamond.dim", DIAMOND_DIM),
    ] {
        let doc = document::load(text).map_err(|e| format!("{name}: {e}"))?;
        let canonical = document::serialize(&doc);
        ensure(
            canonical == text,
            format!("{name} is not byte-identical after a round trip"),
        )?;
        ensure(
            document::parse(&canonical).unwrap() == doc,
            format!("{name} changes on re-parse"),
        )?;
    }
    let invocations: [&[&str]; 3] = [
        &[
            "check",
            "family.fct",
            "--property",
            "oracle",
            "--seed",
            "7",
            "--samples",
            "500",
        ],
        &[
            "check",
            "family.dim",
            "--property",
            "oracle",
            "--seed",
            "7",
            "--samples",
            "500",
        ],
        &[
            "force",
            "family.fct",
            "--case-base",
            "M",
            "--query",
            "E",
            "--goal",
            "pi",
            "--trace",
            "--json",
        ],
    ];
    for args in invocations {
        let first = run_cli(args)?;
        let second = run_cli(args)?;
        ensure(
            first == second,
            format!("{args:?} output differs between runs"),
        )?;
    }
    Ok("4 fixtures byte-exact; 3 CLI invocations byte-identical across runs".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1  factor HRM reduction chain for E", criterion_1),
        ("2  E with P is forced", criterion_2),
        ("3  primed cases blocked on F6 under R", criterion_3),
        ("4  double-primed flat vs hierarchical", criterion_4),
        ("5  dimension bounds for E and E'", criterion_5),
        ("6  flat reduction HRM = RM", criterion_6),
        ("7  oracle differential", criterion_7),
        ("8  encoding faithfulness", criterion_8),
        ("9  property suite", criterion_9),
        ("10 round trips and CLI determinism", criterion_10),
    ];
    let start = Instant::now();
    let mut failures = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name}  [{secs:.2}s]  {detail}"),
            Err(why) => {
                failures += 1;
                println!("FAIL  {name}  [{secs:.2}s]  {why}");
            }
        }
    }
    println!(
        "acceptance: {} of 10 criteria passed in {:.2}s",
        10 - failures,
        start.elapsed().as_secs_f64()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
