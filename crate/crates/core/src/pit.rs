//! Deterministic polynomial identity testing.
//!
//! A rational identity in a parameter `x` whose cleared form has degree at
//! most `D` in `x` holds identically once it holds at `D + 1` distinct
//! admissible points. Builders record their factor degrees in a
//! [`BoundLedger`]; [`generate_grid`] produces reproducible point sets and
//! [`verify_on_grid`] compares both sides canonically at every point.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::arith::{rat, rational_to_string, RationalFunc};
use crate::error::{Error, Result};
use crate::verdict::Verdict;

/// Per-variable degree contributions, keyed by a factor description.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BoundLedger {
    entries: BTreeMap<String, Vec<(String, u64)>>,
}

impl BoundLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, variable: &str, factor: impl Into<String>, degree: u64) {
        if degree > 0 {
            self.entries
                .entry(variable.to_string())
                .or_default()
                .push((factor.into(), degree));
        }
    }

    pub fn merge(&mut self, other: &BoundLedger) {
        for (v, list) in &other.entries {
            self.entries
                .entry(v.clone())
                .or_default()
                .extend(list.iter().cloned());
        }
    }

    pub fn contributions(&self, variable: &str) -> &[(String, u64)] {
        self.entries.get(variable).map_or(&[], |v| v.as_slice())
    }
}

/// Sum of the recorded contributions for `variable`.
pub fn degree_bound(ledger: &BoundLedger, variable: &str) -> u64 {
    ledger.contributions(variable).iter().map(|(_, d)| d).sum()
}

/// A named predicate removing candidate points (e.g. `ab = 1`).
#[derive(Clone)]
pub struct Condition {
    pub description: String,
    pub rejects: Arc<dyn Fn(&BigRational) -> bool + Send + Sync>,
}

impl Condition {
    pub fn new(
        description: impl Into<String>,
        rejects: impl Fn(&BigRational) -> bool + Send + Sync + 'static,
    ) -> Self {
        Condition {
            description: description.into(),
            rejects: Arc::new(rejects),
        }
    }
}

impl fmt::Debug for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Condition({})", self.description)
    }
}

#[derive(Debug, Clone)]
pub struct GridSpec {
    pub variable: String,
    pub required_points: usize,
    pub excluded_values: Vec<BigRational>,
    pub conditions: Vec<Condition>,
    pub start: BigRational,
    pub stride: BigRational,
}

impl GridSpec {
    /// Points 2, 3, 4, ... for `variable`.
    pub fn integers_from_two(variable: &str, required_points: usize) -> Self {
        GridSpec {
            variable: variable.to_string(),
            required_points,
            excluded_values: Vec::new(),
            conditions: Vec::new(),
            start: rat(2),
            stride: rat(1),
        }
    }

    pub fn exclude(mut self, value: BigRational) -> Self {
        self.excluded_values.push(value);
        self
    }

    pub fn exclude_if(mut self, condition: Condition) -> Self {
        self.conditions.push(condition);
        self
    }

    fn admits(&self, x: &BigRational) -> bool {
        !self.excluded_values.contains(x) && !self.conditions.iter().any(|c| (c.rejects)(x))
    }
}

/// Deterministic arithmetic progression with exclusions removed.
pub fn generate_grid(spec: &GridSpec) -> Result<Vec<BigRational>> {
    if spec.stride.is_zero() {
        return Err(Error::Config("grid stride must be nonzero".into()));
    }
    let budget = spec.required_points.saturating_mul(10);
    let mut out = Vec::with_capacity(spec.required_points);
    let mut x = spec.start.clone();
    let mut consumed = 0;
    while out.len() < spec.required_points {
        if consumed >= budget {
            return Err(Error::GridExhausted {
                consumed,
                filled: out.len(),
                required: spec.required_points,
            });
        }
        consumed += 1;
        if spec.admits(&x) {
            out.push(x.clone());
        }
        x += &spec.stride;
    }
    Ok(out)
}

/// Compares both sides at every grid point. The verdict is certified when
/// `bound` is given and the grid has more than `bound` points; the failure
/// witness is the earliest failing point in grid order.
pub fn verify_on_grid<P, F>(grid: &[P], bound: Option<u64>, builder: F) -> Result<Verdict>
where
    P: Serialize + Sync,
    F: Fn(&P) -> Result<(RationalFunc, RationalFunc)> + Sync + Send,
{
    let outcomes: Vec<Result<Option<RationalFunc>>> = grid
        .par_iter()
        .map(|pt| {
            let (lhs, rhs) = builder(pt)?;
            Ok(if lhs == rhs { None } else { Some(&lhs - &rhs) })
        })
        .collect();
    for (pt, outcome) in grid.iter().zip(outcomes) {
        if let Some(diff) = outcome? {
            return Ok(Verdict::fail(
                "sides differ at a grid point",
                json!({ "point": pt, "difference": diff }),
            ));
        }
    }
    let certified = bound.is_some_and(|b| grid.len() as u64 > b);
    Ok(Verdict::pass(
        format!(
            "{} points agree ({})",
            grid.len(),
            if certified { "certified" } else { "sampled" }
        ),
        Some(json!({ "points": grid.len(), "degree_bound": bound })),
        certified,
    ))
}

/// Result of one point evaluation in a nested grid.
#[derive(Debug, Clone)]
pub enum PointOutcome {
    Agree,
    Disagree(serde_json::Value),
    /// A displayed denominator vanishes at this point; it is skipped.
    Pole,
}

/// One level of a nested grid: candidates 2, 3, 4, … minus `excluded`.
#[derive(Debug, Clone)]
pub struct NestedVar {
    pub name: String,
    pub required: usize,
    pub degree_bound: u64,
    pub excluded: Vec<BigRational>,
}

impl NestedVar {
    /// A level sized one past `degree_bound` plus `margin`, optionally capped.
    pub fn sized(name: &str, degree_bound: u64, margin: usize, cap: Option<usize>) -> Self {
        let full = degree_bound as usize + 1 + margin;
        NestedVar {
            name: name.to_string(),
            required: cap.map_or(full, |c| c.min(full)),
            degree_bound,
            excluded: Vec::new(),
        }
    }

    fn certified(&self) -> bool {
        self.required as u64 > self.degree_bound
    }
}

/// Outcome of [`verify_nested`].
#[derive(Debug, Clone)]
pub struct NestedReport {
    pub failure: Option<(Vec<(String, BigRational)>, serde_json::Value)>,
    pub points: usize,
    pub skipped: usize,
    pub certified: bool,
}

impl NestedReport {
    pub fn into_verdict(self, what: &str, vars: &[NestedVar]) -> Verdict {
        if let Some((pt, diff)) = self.failure {
            let point: BTreeMap<String, String> =
                pt.into_iter().map(|(n, v)| (n, point_label(&v))).collect();
            return Verdict::fail(
                format!("{what}: sides differ"),
                json!({ "point": point, "difference": diff }),
            );
        }
        let sizes: BTreeMap<&str, (usize, u64)> = vars
            .iter()
            .map(|v| (v.name.as_str(), (v.required, v.degree_bound)))
            .collect();
        Verdict::pass(
            format!(
                "{what}: {} points agree ({})",
                self.points,
                if self.certified {
                    "certified"
                } else {
                    "sampled"
                }
            ),
            Some(json!({ "points": self.points, "skipped_poles": self.skipped, "grid": sizes })),
            self.certified,
        )
    }
}

fn is_pole(e: &Error) -> bool {
    matches!(
        e,
        Error::PoleAtPoint(_)
            | Error::DivisionByZeroPoly
            | Error::DivisionByZeroRF
            | Error::IdenticallyZeroDenominator(_)
    )
}

enum Level {
    Filled,
    Failed(Vec<(String, BigRational)>, serde_json::Value),
    Exhausted(String),
}

/// Nested-grid identity check. For each admissible value of the first
/// variable the remaining variables are checked recursively, so exclusions
/// at an inner level may depend on the outer values. A value whose inner
/// grid cannot be filled (every candidate is a pole) is itself skipped.
///
/// If every level has more points than its degree bound, a pass certifies
/// that the cleared identity vanishes identically.
pub fn verify_nested<F>(vars: &[NestedVar], check: F) -> Result<NestedReport>
where
    F: Fn(&[(String, BigRational)]) -> Result<PointOutcome> + Sync,
{
    let mut report = NestedReport {
        failure: None,
        points: 0,
        skipped: 0,
        certified: vars.iter().all(NestedVar::certified),
    };
    if vars.is_empty() {
        match check(&[])? {
            PointOutcome::Disagree(diff) => report.failure = Some((Vec::new(), diff)),
            PointOutcome::Pole => {
                return Err(Error::GridPole {
                    variable: String::new(),
                    reason: "the expression has a pole".into(),
                })
            }
            PointOutcome::Agree => report.points = 1,
        }
        return Ok(report);
    }
    let mut prefix = Vec::new();
    match nested_level(vars, &mut prefix, &check, &mut report)? {
        Level::Filled => Ok(report),
        Level::Failed(pt, diff) => {
            report.failure = Some((pt, diff));
            Ok(report)
        }
        Level::Exhausted(reason) => Err(Error::GridPole {
            variable: vars.first().map_or(String::new(), |v| v.name.clone()),
            reason,
        }),
    }
}

fn candidates(var: &NestedVar) -> impl Iterator<Item = BigRational> + '_ {
    (2..)
        .map(|i: i64| rat(i))
        .filter(move |x| !var.excluded.contains(x))
}

fn nested_level<F>(
    vars: &[NestedVar],
    prefix: &mut Vec<(String, BigRational)>,
    check: &F,
    report: &mut NestedReport,
) -> Result<Level>
where
    F: Fn(&[(String, BigRational)]) -> Result<PointOutcome> + Sync,
{
    let Some((var, rest)) = vars.split_first() else {
        return Ok(Level::Filled);
    };
    let budget = var.required.saturating_mul(10).max(10);
    let mut cands = candidates(var).take(budget);
    let mut filled = 0;
    if rest.is_empty() {
        // Innermost level: evaluate batches in parallel, scan in order.
        while filled < var.required {
            let batch: Vec<BigRational> = cands.by_ref().take(var.required - filled).collect();
            if batch.is_empty() {
                return Ok(Level::Exhausted(format!(
                    "{}: {filled} of {} points after {budget} candidates",
                    var.name, var.required
                )));
            }
            let outcomes: Vec<Result<PointOutcome>> = batch
                .par_iter()
                .map(|x| {
                    let mut pt = prefix.clone();
                    pt.push((var.name.clone(), x.clone()));
                    check(&pt)
                })
                .collect();
            for (x, o) in batch.into_iter().zip(outcomes) {
                match o {
                    Ok(PointOutcome::Agree) => {
                        filled += 1;
                        report.points += 1;
                    }
                    Ok(PointOutcome::Pole) => report.skipped += 1,
                    Err(e) if is_pole(&e) => report.skipped += 1,
                    Err(e) => return Err(e),
                    Ok(PointOutcome::Disagree(diff)) => {
                        let mut pt = prefix.clone();
                        pt.push((var.name.clone(), x));
                        return Ok(Level::Failed(pt, diff));
                    }
                }
            }
        }
        return Ok(Level::Filled);
    }
    for x in cands {
        if filled == var.required {
            break;
        }
        prefix.push((var.name.clone(), x));
        let inner = nested_level(rest, prefix, check, report)?;
        prefix.pop();
        match inner {
            Level::Filled => filled += 1,
            Level::Exhausted(_) => report.skipped += 1,
            failed @ Level::Failed(..) => return Ok(failed),
        }
    }
    if filled < var.required {
        return Ok(Level::Exhausted(format!(
            "{}: {filled} of {} points after {budget} candidates",
            var.name, var.required
        )));
    }
    Ok(Level::Filled)
}

/// Serializable form of a grid point.
pub fn point_label(x: &BigRational) -> String {
    rational_to_string(x)
}
