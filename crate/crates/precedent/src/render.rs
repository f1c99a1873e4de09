//! Text rendering of derivation traces.
//!
//! One line per step, indented by recursion level:
//!
//! ```text
//! M, E ⊭ pi: NOT FORCED
//!   E ⊨ pi: undefined
//!   precedent M: blocked
//!     pro Q: M ⊨ Q, requires M, E ⊨ Q: fails
//!       M, E ⊭ Q: NOT FORCED
//!       ...
//! blocking chain:
//!   M, E ⊭ pi: precedent M blocked at Q
//!   ...
//!   E ⊨ F1: fails
//! ```

use std::fmt::Write as _;
use std::io::IsTerminal;

use precedent_core::{
    Attempt, BoundClaim, Condition, DerivationTrace, DirectCheck, Direction, FailureWitness, Goal,
    Polarity,
};

/// Names used in rendered text: the case base (a singleton is shown by its
/// case's name) and the fact situation.
#[derive(Debug, Clone)]
pub struct Labels {
    pub case_base: String,
    pub situation: String,
}

impl Labels {
    pub fn new(case_names: &[&str], situation: impl Into<String>) -> Self {
        let case_base = match case_names {
            [single] => (*single).to_string(),
            _ => "CB".to_string(),
        };
        Self {
            case_base,
            situation: situation.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Style {
    pub color: bool,
}

impl Style {
    pub const PLAIN: Style = Style { color: false };

    /// Color only on a terminal, and never when `PRECEDENT_COLOR=0`.
    pub fn detect() -> Self {
        let disabled = std::env::var("PRECEDENT_COLOR").is_ok_and(|v| v == "0");
        Style {
            color: !disabled && std::io::stdout().is_terminal(),
        }
    }

    fn paint(self, text: &str, good: bool) -> String {
        if self.color {
            let code = if good { "32" } else { "31" };
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }

    fn status(self, forced: bool) -> String {
        self.paint(if forced { "FORCED" } else { "NOT FORCED" }, forced)
    }

    fn verdict(self, holds: bool) -> String {
        self.paint(if holds { "holds" } else { "fails" }, holds)
    }
}

/// Verdict word used by the command-line tool.
pub fn status_word(forced: bool) -> &'static str {
    if forced {
        "FORCED"
    } else {
        "NOT FORCED"
    }
}

struct Renderer<'a> {
    labels: &'a Labels,
    style: Style,
    out: String,
}

/// Renders the full derivation followed, for an unforced goal, by the chain
/// of first blockers down to the condition that ultimately fails.
pub fn render_trace(trace: &DerivationTrace, labels: &Labels, style: Style) -> String {
    let mut r = Renderer {
        labels,
        style,
        out: String::new(),
    };
    r.node(trace, 0);
    if !trace.is_forced() {
        r.chain(trace);
    }
    r.out
}

/// The goal as it appears after the turnstile.
fn goal_text(goal: &Goal, situation: &str) -> String {
    match goal {
        Goal::Side(side) => side.to_string(),
        Goal::Literal(lit) => lit.to_string(),
        Goal::Bound(claim) => bound_text(claim, situation),
    }
}

fn bound_text(claim: &BoundClaim, who: &str) -> String {
    match claim.direction {
        Direction::Lower => format!("{} ⪯ {who}({})", claim.value, claim.dimension),
        Direction::Upper => format!("{who}({}) ⪯ {}", claim.dimension, claim.value),
    }
}

fn turnstile(holds: bool) -> &'static str {
    if holds {
        "⊨"
    } else {
        "⊭"
    }
}

impl Renderer<'_> {
    fn line(&mut self, depth: usize, text: &str) {
        let _ = writeln!(self.out, "{:width$}{text}", "", width = depth * 2);
    }

    /// "M, E ⊨ pi" for literals and sides, "M ⊨ 2 ⪯ E(Q)" for bounds.
    fn judgement(&self, trace: &DerivationTrace) -> String {
        let Labels {
            case_base,
            situation,
        } = self.labels;
        let t = turnstile(trace.is_forced());
        match &trace.goal {
            Goal::Bound(claim) => format!("{case_base} {t} {}", bound_text(claim, situation)),
            goal => format!(
                "{case_base}, {situation} {t} {}",
                goal_text(goal, situation)
            ),
        }
    }

    fn direct_text(&self, trace: &DerivationTrace) -> Option<String> {
        let situation = &self.labels.situation;
        let word = match trace.direct {
            DirectCheck::NotApplicable => return None,
            DirectCheck::Holds => self.style.verdict(true),
            DirectCheck::Fails => self.style.verdict(false),
            DirectCheck::Undefined => "undefined".to_string(),
        };
        Some(match &trace.goal {
            Goal::Bound(claim) => format!("{} directly: {word}", bound_text(claim, situation)),
            goal => format!("{situation} ⊨ {}: {word}", goal_text(goal, situation)),
        })
    }

    fn node(&mut self, trace: &DerivationTrace, depth: usize) {
        let head = format!(
            "{}: {}",
            self.judgement(trace),
            self.style.status(trace.is_forced())
        );
        self.line(depth, &head);
        if let Some(direct) = self.direct_text(trace) {
            self.line(depth + 1, &direct);
        }
        for attempt in &trace.attempts {
            let word = if attempt.holds {
                self.style.paint("witnesses", true)
            } else {
                self.style.paint("blocked", false)
            };
            self.line(depth + 1, &format!("precedent {}: {word}", attempt.case));
            for condition in &attempt.conditions {
                self.condition(attempt, condition, depth + 2);
            }
        }
        if trace.attempts.is_empty() && !trace.is_forced() {
            if let Some(FailureWitness::NoPrecedent) = trace.failure_witness {
                self.line(depth + 1, "no precedent qualifies");
            }
        }
    }

    fn condition_text(&self, attempt: &Attempt, condition: &Condition) -> String {
        let case = &attempt.case;
        let Labels {
            case_base,
            situation,
        } = self.labels;
        let verdict = self.style.verdict(condition.holds());
        match condition {
            Condition::Pro {
                factor,
                in_precedent: false,
                ..
            } => format!("pro {factor}: {case} ⊭ {factor}, vacuous"),
            Condition::Pro { factor, .. } => {
                format!("pro {factor}: {case} ⊨ {factor}, requires {case_base}, {situation} ⊨ {factor}: {verdict}")
            }
            Condition::Con {
                factor,
                in_precedent,
                subgoal,
                ..
            } => format!(
                "con {factor}: {case_base}, {situation} {} {factor}, {case} {} {factor}: {verdict}",
                turnstile(subgoal.is_forced()),
                turnstile(*in_precedent),
            ),
            Condition::Factor {
                factor,
                role,
                in_precedent,
                in_situation,
                ..
            } => {
                let role = match role {
                    Polarity::Pro => "pro",
                    Polarity::Con => "con",
                };
                format!(
                    "{role} {factor}: {case} {} {factor}, {situation} {} {factor}: {verdict}",
                    turnstile(*in_precedent),
                    turnstile(*in_situation),
                )
            }
            Condition::Bound { dimension, .. } => {
                format!("{dimension}: {verdict}")
            }
            Condition::Compare {
                dimension,
                precedent,
                situation: value,
                ..
            } => format!(
                "{dimension}: {case}({dimension}) = {precedent}, {situation}({dimension}) = {value}: {verdict}"
            ),
        }
    }

    fn condition(&mut self, attempt: &Attempt, condition: &Condition, depth: usize) {
        let text = self.condition_text(attempt, condition);
        self.line(depth, &text);
        if let Some(sub) = condition.subgoal() {
            self.node(sub, depth + 1);
        }
    }

    fn chain(&mut self, trace: &DerivationTrace) {
        self.line(0, "blocking chain:");
        let chain = trace.blocking_chain();
        for (node, failure) in &chain {
            let judgement = self.judgement(node);
            match failure {
                Some(condition) => {
                    let attempt = node
                        .attempts
                        .iter()
                        .find(|a| a.first_failure().is_some())
                        .expect("a failing condition belongs to an attempt");
                    self.line(
                        1,
                        &format!(
                            "{judgement}: precedent {} blocked at {}",
                            attempt.case,
                            condition.subject()
                        ),
                    );
                }
                None => self.line(1, &judgement),
            }
        }
        // The step where the failure bottoms out.
        let Some((last, failure)) = chain.last() else {
            return;
        };
        match failure {
            Some(condition) if condition.subgoal().is_none_or(|s| s.is_forced()) => {
                let attempt = last
                    .attempts
                    .iter()
                    .find(|a| a.first_failure().is_some())
                    .expect("a failing condition belongs to an attempt");
                let text = self.condition_text(attempt, condition);
                self.line(1, &text);
            }
            _ => {
                if let Some(direct) = self.direct_text(last) {
                    self.line(1, &direct);
                }
                if let Some(FailureWitness::NoPrecedent) = last.failure_witness {
                    self.line(1, "no precedent qualifies");
                }
            }
        }
    }
}
