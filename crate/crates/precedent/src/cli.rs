//! The `precedent` command line.
//!
//! Exit status 0 means the command ran (a forcing verdict is reported in the
//! output, not the status), 1 means the document or a cross-check failed,
//! and 2 covers usage errors, unreadable files, unknown names, a model that
//! does not fit the document, and enumeration caps.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use precedent_core::oracle::{check_consistency, DEFAULT_ENUMERATION_CAP};
use precedent_core::{
    dhrm_bound, dhrm_forces_outcome, drm_forces, hrm_forces, rm_forces, BoundClaim,
    DerivationTrace, DimensionHierarchy, FactorHierarchy, FlatDimCaseBase, Literal, Side, Value,
};

use crate::check::{check_document, CheckOptions, Property};
use crate::document::{self, DimensionDocument, Document, FactorDocument};
use crate::error::{Error, Result};
use crate::render::{render_trace, status_word, Labels, Style};

#[derive(Debug, Parser)]
#[command(
    name = "precedent",
    version,
    about = "Precedential constraint over factor and dimension hierarchies"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a document and print every violation, or OK.
    Validate { file: PathBuf },
    /// Decide whether a case base forces a goal for a query.
    Force {
        file: PathBuf,
        /// Cases to use, comma separated (default: all).
        #[arg(long = "case-base", value_delimiter = ',')]
        case_base: Option<Vec<String>>,
        /// Query (or case) whose facts are the fact situation.
        #[arg(long)]
        query: String,
        /// `pi`, `delta`, a literal `Q` or `!Q`, or a bound `v<=d` / `d<=v`.
        #[arg(long)]
        goal: String,
        /// Evaluator (default: hrm for factor documents, dhrm for dimension documents).
        #[arg(long, value_enum)]
        model: Option<ModelArg>,
        /// Print the derivation.
        #[arg(long)]
        trace: bool,
        /// Print the result and derivation as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Check that no query situation is forced for both outcomes.
    Consistency {
        file: PathBuf,
        #[arg(long = "case-base", value_delimiter = ',')]
        case_base: Option<Vec<String>>,
        /// Most basic factors to enumerate over.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
        /// Most conflicting situations to list.
        #[arg(long, default_value_t = 1)]
        witnesses: usize,
    },
    /// Cross-check evaluators on the document and random variations of it.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        property: PropertyArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random instances on top of the document's own.
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelArg {
    Rm,
    Hrm,
    Drm,
    Dhrm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PropertyArg {
    FlatReduction,
    Oracle,
    Encoding,
}

impl From<PropertyArg> for Property {
    fn from(p: PropertyArg) -> Self {
        match p {
            PropertyArg::FlatReduction => Property::FlatReduction,
            PropertyArg::Oracle => Property::Oracle,
            PropertyArg::Encoding => Property::Encoding,
        }
    }
}

/// Structured output of `force --json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryResult {
    pub model: ModelArg,
    pub case_base: Vec<String>,
    pub query: String,
    pub goal: String,
    pub forced: bool,
    pub trace: DerivationTrace,
}

/// A parsed `--goal`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GoalArg {
    Side(Side),
    Literal { factor: String, negated: bool },
    Bound { lower: String, upper: String },
}

impl GoalArg {
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some((lower, upper)) = text.split_once("<=") {
            let (lower, upper) = (lower.trim(), upper.trim());
            if lower.is_empty() || upper.is_empty() {
                return Err(Error::Usage(format!("malformed bound `{text}`")));
            }
            return Ok(GoalArg::Bound {
                lower: lower.into(),
                upper: upper.into(),
            });
        }
        let (negated, name) = match text.strip_prefix('!').or_else(|| text.strip_prefix('¬')) {
            Some(rest) => (true, rest.trim()),
            None => (false, text),
        };
        if name.is_empty() {
            return Err(Error::Usage("empty goal".into()));
        }
        Ok(match (negated, name) {
            (false, "pi") => GoalArg::Side(Side::Pi),
            (false, "delta") => GoalArg::Side(Side::Delta),
            _ => GoalArg::Literal {
                factor: name.into(),
                negated,
            },
        })
    }

    fn side(&self) -> Option<Side> {
        match self {
            GoalArg::Side(side) => Some(*side),
            _ => None,
        }
    }

    /// `pi` and `delta` name the outcome factor and its negation.
    fn literal(&self, h: &FactorHierarchy) -> Result<Literal> {
        let outcome = h
            .outcome_id()
            .expect("validated hierarchy has an outcome")
            .clone();
        match self {
            GoalArg::Side(Side::Pi) => Ok(Literal::positive(outcome)),
            GoalArg::Side(Side::Delta) => Ok(Literal::negative(outcome)),
            GoalArg::Literal { factor, negated } => {
                if h.index_of(factor).is_none() {
                    return Err(Error::UnknownName {
                        kind: "factor",
                        name: factor.clone(),
                    });
                }
                let lit = Literal::positive(factor.as_str());
                Ok(if *negated { lit.negate() } else { lit })
            }
            GoalArg::Bound { .. } => {
                Err(Error::Usage("bound goals need a dimension document".into()))
            }
        }
    }

    /// `v<=d` is a lower bound when `d` is a dimension; otherwise `d<=v` is
    /// an upper bound.
    fn claim(&self, h: &DimensionHierarchy) -> Result<BoundClaim> {
        let GoalArg::Bound { lower, upper } = self else {
            return Err(Error::Usage("expected a bound `v<=d` or `d<=v`".into()));
        };
        let known = |name: &str, value: &str| {
            h.index_of(name)
                .is_some_and(|d| h.order(d).index_of(&Value::parse(value)).is_some())
        };
        let claim = if known(upper, lower) {
            BoundClaim::lower(Value::parse(lower), upper.as_str())
        } else if known(lower, upper) {
            BoundClaim::upper(lower.as_str(), Value::parse(upper))
        } else if h.index_of(upper).is_some() {
            return Err(Error::UnknownName {
                kind: "value",
                name: format!("{lower} (dimension {upper})"),
            });
        } else if h.index_of(lower).is_some() {
            return Err(Error::UnknownName {
                kind: "value",
                name: format!("{upper} (dimension {lower})"),
            });
        } else {
            return Err(Error::UnknownName {
                kind: "dimension",
                name: format!("{lower} or {upper}"),
            });
        };
        Ok(claim)
    }
}

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(&cli.command, &mut out, Style::detect()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn io(e: std::io::Error) -> Error {
    Error::Io {
        path: PathBuf::from("<stdout>"),
        source: e,
    }
}

/// Runs a command, writing its report to `out`. Returns the exit status.
pub fn run(command: &Command, out: &mut impl Write, style: Style) -> Result<u8> {
    match command {
        Command::Validate { file } => validate(file, out),
        Command::Force {
            file,
            case_base,
            query,
            goal,
            model,
            trace,
            json,
        } => {
            let doc = document::load(&read(file)?)?;
            let goal_arg = GoalArg::parse(goal)?;
            let model = model.unwrap_or(match doc {
                Document::Factor(_) => ModelArg::Hrm,
                Document::Dimension(_) => ModelArg::Dhrm,
            });
            let request = Request {
                case_base: case_base.as_deref(),
                query,
                goal,
                goal_arg: &goal_arg,
                model,
            };
            let result = match &doc {
                Document::Factor(d) => force_factor(d, &request)?,
                Document::Dimension(d) => force_dimension(d, &request)?,
            };
            if *json {
                let text = serde_json::to_string_pretty(&result).expect("results serialize");
                writeln!(out, "{text}").map_err(io)?;
            } else {
                let names: Vec<&str> = result.case_base.iter().map(String::as_str).collect();
                writeln!(
                    out,
                    "{} ({}; case base {}; query {}; goal {})",
                    status_word(result.forced),
                    model_name(model),
                    if names.is_empty() {
                        "empty".to_string()
                    } else {
                        names.join(",")
                    },
                    query,
                    goal
                )
                .map_err(io)?;
                if *trace {
                    let labels = Labels::new(&names, query.as_str());
                    write!(out, "{}", render_trace(&result.trace, &labels, style)).map_err(io)?;
                }
            }
            Ok(0)
        }
        Command::Consistency {
            file,
            case_base,
            cap,
            witnesses,
        } => {
            let doc = document::load(&read(file)?)?;
            let Document::Factor(d) = doc else {
                return Err(Error::Usage("consistency takes a factor document".into()));
            };
            let h = d.hierarchy();
            let cb = d.case_base(&h, case_base.as_deref())?;
            let report = check_consistency(&cb, *cap, *witnesses)?;
            if report.consistent {
                writeln!(
                    out,
                    "consistent ({} query situations checked)",
                    report.checked
                )
                .map_err(io)?;
            } else {
                writeln!(
                    out,
                    "inconsistent: {} of {} query situations are forced for both pi and delta",
                    report.conflicts, report.checked
                )
                .map_err(io)?;
                for w in &report.witnesses {
                    let facts: Vec<String> = h
                        .basic_factors()
                        .map(|i| {
                            format!(
                                "{}={}",
                                h.id(i),
                                w.get(i).expect("basic factors are defined")
                            )
                        })
                        .collect();
                    writeln!(out, "witness: {}", facts.join(" ")).map_err(io)?;
                }
            }
            Ok(0)
        }
        Command::Check {
            file,
            property,
            seed,
            samples,
            cap,
        } => {
            let doc = document::load(&read(file)?)?;
            let property = Property::from(*property);
            let options = CheckOptions {
                seed: *seed,
                samples: *samples,
                cap: *cap,
            };
            let report = check_document(&doc, property, options)?;
            let word = if report.passed() { "PASS" } else { "FAIL" };
            writeln!(out, "{property}: {word} ({report})").map_err(io)?;
            Ok(if report.passed() { 0 } else { 1 })
        }
    }
}

fn validate(file: &Path, out: &mut impl Write) -> Result<u8> {
    let doc = match document::parse(&read(file)?) {
        Ok(doc) => doc,
        Err(Error::Syntax(e)) => {
            writeln!(out, "syntax error: {e}").map_err(io)?;
            return Ok(1);
        }
        Err(e) => return Err(e),
    };
    let report = doc.validate();
    if report.is_valid() {
        writeln!(out, "OK").map_err(io)?;
        for note in doc.coherence_notes()? {
            writeln!(out, "note: {note}").map_err(io)?;
        }
        return Ok(0);
    }
    for violation in report.iter() {
        writeln!(out, "{violation}").map_err(io)?;
    }
    Ok(1)
}

struct Request<'a> {
    case_base: Option<&'a [String]>,
    query: &'a str,
    goal: &'a str,
    goal_arg: &'a GoalArg,
    model: ModelArg,
}

fn model_name(model: ModelArg) -> &'static str {
    match model {
        ModelArg::Rm => "rm",
        ModelArg::Hrm => "hrm",
        ModelArg::Drm => "drm",
        ModelArg::Dhrm => "dhrm",
    }
}

fn mismatch(model: ModelArg, doc: &str) -> Error {
    Error::Usage(format!(
        "model {} does not apply to a {doc} document",
        model_name(model)
    ))
}

fn need_side(goal: &GoalArg, model: ModelArg) -> Result<Side> {
    goal.side().ok_or_else(|| {
        Error::Usage(format!(
            "model {} decides only `pi` or `delta`",
            model_name(model)
        ))
    })
}

fn force_factor(doc: &FactorDocument, request: &Request<'_>) -> Result<QueryResult> {
    let h = doc.hierarchy();
    let cb = doc.case_base(&h, request.case_base)?;
    let f = doc.situation(&h, doc.query(request.query)?)?;
    let (forced, trace) = match request.model {
        ModelArg::Hrm => hrm_forces(&cb, &f, &request.goal_arg.literal(&h)?)?,
        ModelArg::Rm => {
            let side = need_side(request.goal_arg, request.model)?;
            let flat = doc.flat_case_base(&cb)?;
            rm_forces(&flat, &flat.project(&h, &f)?, side)?
        }
        model => return Err(mismatch(model, "factor")),
    };
    Ok(QueryResult {
        model: request.model,
        case_base: cb.cases().iter().map(|c| c.name.clone()).collect(),
        query: request.query.into(),
        goal: request.goal.into(),
        forced,
        trace,
    })
}

fn force_dimension(doc: &DimensionDocument, request: &Request<'_>) -> Result<QueryResult> {
    let h = doc.hierarchy();
    let cb = doc.case_base(&h, request.case_base)?;
    let x = doc.situation(&h, doc.query(request.query)?)?;
    let (forced, trace) = match request.model {
        ModelArg::Dhrm => match request.goal_arg {
            GoalArg::Side(side) => dhrm_forces_outcome(&cb, &x, *side)?,
            goal => dhrm_bound(&cb, &x, &goal.claim(&h)?)?,
        },
        ModelArg::Drm => {
            let side = need_side(request.goal_arg, request.model)?;
            let flat = FlatDimCaseBase::from_hierarchical(&cb)?;
            drm_forces(&flat, &flat.project(&h, &x)?, side)?
        }
        model => return Err(mismatch(model, "dimension")),
    };
    Ok(QueryResult {
        model: request.model,
        case_base: cb.cases().iter().map(|c| c.name.clone()).collect(),
        query: request.query.into(),
        goal: request.goal.into(),
        forced,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn goal_syntax() {
        assert_eq!(GoalArg::parse("pi").unwrap(), GoalArg::Side(Side::Pi));
        assert_eq!(GoalArg::parse("delta").unwrap(), GoalArg::Side(Side::Delta));
        assert_eq!(
            GoalArg::parse("!Q").unwrap(),
            GoalArg::Literal {
                factor: "Q".into(),
                negated: true
            }
        );
        assert_eq!(
            GoalArg::parse("3<=R").unwrap(),
            GoalArg::Bound {
                lower: "3".into(),
                upper: "R".into()
            }
        );
        assert!(GoalArg::parse("<=R").is_err());
        assert!(GoalArg::parse("!").is_err());
    }

    #[test]
    fn bound_direction_follows_the_dimension_side() {
        let h = DimensionHierarchy::new(
            vec![("pi".into(), precedent_core::ValueOrder::ascending([0, 1]))],
            vec![],
        );
        let lower = GoalArg::parse("1<=pi").unwrap().claim(&h).unwrap();
        assert_eq!(lower, BoundClaim::lower(1, "pi"));
        let upper = GoalArg::parse("pi<=0").unwrap().claim(&h).unwrap();
        assert_eq!(upper, BoundClaim::upper("pi", 0));
        assert!(GoalArg::parse("7<=pi").unwrap().claim(&h).is_err());
    }
}
