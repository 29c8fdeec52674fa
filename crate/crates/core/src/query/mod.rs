//! Models and entailment.
//!
//! A model is a trajectory of states over the horizon that starts in a
//! constraint-satisfying state, follows a legal transition at every step,
//! satisfies every observation, and satisfies the preconditions of every
//! occurring action at its time point.

mod initial;
mod search;
mod slice;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::ground::{GroundAtom, GroundTheory, Lit};
use crate::syntax::{FluentLiteral, TimePoint};
use crate::transition::{State, Transition};

pub use search::SearchCounters;
pub use slice::{components, relevance_slice, restrict, slice_fluents};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Credulous,
    Skeptical,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Credulous => "credulous",
            Mode::Skeptical => "skeptical",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub mode: Mode,
    pub goals: Vec<(FluentLiteral, TimePoint)>,
    pub horizon: Option<TimePoint>,
}

impl Query {
    pub fn new(mode: Mode, goals: Vec<(FluentLiteral, TimePoint)>) -> Self {
        Query { mode, goals, horizon: None }
    }

    pub fn credulous(goals: Vec<(FluentLiteral, TimePoint)>) -> Self {
        Query::new(Mode::Credulous, goals)
    }

    pub fn skeptical(goals: Vec<(FluentLiteral, TimePoint)>) -> Self {
        Query::new(Mode::Skeptical, goals)
    }

    pub fn with_horizon(mut self, h: u32) -> Self {
        self.horizon = Some(TimePoint(h));
        self
    }

    pub fn max_goal_time(&self) -> u32 {
        self.goals.iter().map(|(_, t)| t.0).max().unwrap_or(0)
    }

    pub fn goal_strings(&self) -> Vec<String> {
        self.goals.iter().map(|(l, t)| format!("{l} holds-at {t}")).collect()
    }
}

/// A model: `states[t]` for every time point, and `steps[t]` from `t` to `t + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    pub states: Vec<State>,
    pub steps: Vec<Transition>,
}

impl Trajectory {
    pub fn horizon(&self) -> u32 {
        self.states.len() as u32 - 1
    }

    pub fn holds(&self, lit: Lit, t: u32) -> bool {
        self.states[t as usize].holds(lit)
    }

    /// True fluents per time point.
    pub fn describe(&self, theory: &GroundTheory) -> Vec<Vec<String>> {
        self.states
            .iter()
            .map(|s| (0..s.len()).filter(|f| s.get(*f)).map(|f| theory.fluents[f].to_string()).collect())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Answer {
    True,
    False,
    DomainInconsistent,
}

impl std::fmt::Display for Answer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Answer::True => "true",
            Answer::False => "false",
            Answer::DomainInconsistent => "domain-inconsistent",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct QueryStats {
    #[serde(flatten)]
    pub search: SearchCounters,
    /// Searches started: one per goal for skeptical queries plus consistency checks.
    pub searches: u64,
    pub wall_ms: f64,
}

impl QueryStats {
    fn absorb(&mut self, c: SearchCounters) {
        self.searches += 1;
        self.search.initial_states += c.initial_states;
        self.search.nodes += c.nodes;
        self.search.models += c.models;
        self.search.pruned += c.pruned;
        self.search.dead_states += c.dead_states;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntailmentResult {
    pub answer: Answer,
    pub mode: Mode,
    pub goals: Vec<String>,
    pub witness: Option<Trajectory>,
    pub stats: QueryStats,
}

#[derive(Debug, Serialize)]
struct Record<'a> {
    answer: Answer,
    mode: Mode,
    goals: &'a [String],
    witness: Option<Vec<Vec<String>>>,
    stats: QueryStats,
}

impl EntailmentResult {
    /// One-line JSON record; field names are documented in `docs/formats.md`.
    pub fn to_record(&self, theory: &GroundTheory) -> String {
        let r = Record {
            answer: self.answer,
            mode: self.mode,
            goals: &self.goals,
            witness: self.witness.as_ref().map(|w| w.describe(theory)),
            stats: self.stats,
        };
        serde_json::to_string(&r).expect("records serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("search budget of {nodes} nodes exceeded")]
    BudgetExceeded { nodes: u64 },
    #[error("query horizon {horizon} is before goal time {goal}")]
    HorizonBeforeGoal { horizon: u32, goal: u32 },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueryOptions {
    /// Node budget per answer; `None` is unbounded.
    pub budget: Option<u64>,
    /// Answer on the relevance slice, checking the rest for consistency.
    pub slice: bool,
}

/// A goal resolved against a ground theory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Goal {
    Dynamic(Lit, u32),
    /// A constant fluent literal: its truth value.
    Fixed(bool),
    /// A fluent outside the theory: it has no laws, so it keeps one value
    /// throughout and each polarity is possible.
    Unknown(usize, bool),
}

pub(crate) fn resolve_goals(theory: &GroundTheory, goals: &[(FluentLiteral, TimePoint)]) -> Vec<Goal> {
    let mut unknown: BTreeMap<GroundAtom, usize> = BTreeMap::new();
    goals
        .iter()
        .map(|(l, t)| {
            let atom = GroundAtom::from_atom(&l.atom).expect("query goals are ground");
            if let Some(f) = theory.fluent_id(&atom) {
                Goal::Dynamic(Lit::new(f, l.positive), t.0)
            } else if let Some(v) = theory.constants.get(&atom) {
                Goal::Fixed(*v == l.positive)
            } else {
                let n = unknown.len();
                Goal::Unknown(*unknown.entry(atom).or_insert(n), l.positive)
            }
        })
        .collect()
}

pub fn effective_horizon(theory: &GroundTheory, q: &Query) -> u32 {
    theory.horizon.max(q.horizon.map(|h| h.0).unwrap_or(0)).max(q.max_goal_time())
}

/// Streams every model of the theory over its horizon, in enumeration
/// order: time-0 completions in declaration order with false first, then
/// successors in target order.
pub fn enumerate_models(theory: &GroundTheory) -> Models<'_> {
    Models { search: search::Search::new(theory, theory.horizon, &[], None) }
}

pub struct Models<'t> {
    search: search::Search<'t>,
}

impl Models<'_> {
    pub fn counters(&self) -> SearchCounters {
        self.search.counters
    }
}

impl Iterator for Models<'_> {
    type Item = Trajectory;

    fn next(&mut self) -> Option<Trajectory> {
        self.search.next_model().expect("unbudgeted search")
    }
}

fn find_model(
    theory: &GroundTheory,
    horizon: u32,
    extra: &[(Lit, u32)],
    opts: &QueryOptions,
    stats: &mut QueryStats,
) -> Result<Option<Trajectory>, QueryError> {
    let budget = opts.budget.map(|b| b.saturating_sub(stats.search.nodes));
    let mut s = search::Search::new(theory, horizon, extra, budget);
    let found = s.next_model();
    stats.absorb(s.counters);
    found
}

/// Credulous or skeptical entailment of `q` by `theory`.
pub fn answer(theory: &GroundTheory, q: &Query) -> Result<EntailmentResult, QueryError> {
    answer_with(theory, q, &QueryOptions::default())
}

pub fn answer_with(theory: &GroundTheory, q: &Query, opts: &QueryOptions) -> Result<EntailmentResult, QueryError> {
    if let Some(h) = q.horizon {
        if h.0 < q.max_goal_time() {
            return Err(QueryError::HorizonBeforeGoal { horizon: h.0, goal: q.max_goal_time() });
        }
    }
    let start = Instant::now();
    let mut stats = QueryStats::default();
    let mut result = if opts.slice {
        slice::answer_sliced(theory, q, opts, &mut stats)?
    } else {
        answer_direct(theory, q, opts, &mut stats)?
    };
    stats.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    result.stats = stats;
    Ok(result)
}

pub(crate) fn answer_direct(
    theory: &GroundTheory,
    q: &Query,
    opts: &QueryOptions,
    stats: &mut QueryStats,
) -> Result<EntailmentResult, QueryError> {
    let horizon = effective_horizon(theory, q);
    let goals = resolve_goals(theory, &q.goals);
    let done = |answer, witness| EntailmentResult {
        answer,
        mode: q.mode,
        goals: q.goal_strings(),
        witness,
        stats: QueryStats::default(),
    };
    let dynamic: Vec<(Lit, u32)> = goals
        .iter()
        .filter_map(|g| match g {
            Goal::Dynamic(l, t) => Some((*l, *t)),
            _ => None,
        })
        .collect();
    match q.mode {
        Mode::Credulous => {
            let fixed_ok = goals.iter().all(|g| !matches!(g, Goal::Fixed(false)));
            let unknown_ok = !goals.iter().any(|g| match g {
                Goal::Unknown(i, p) => goals.contains(&Goal::Unknown(*i, !p)),
                _ => false,
            });
            if fixed_ok && unknown_ok {
                if let Some(w) = find_model(theory, horizon, &dynamic, opts, stats)? {
                    return Ok(done(Answer::True, Some(w)));
                }
            }
            match find_model(theory, horizon, &[], opts, stats)? {
                None => Ok(done(Answer::DomainInconsistent, None)),
                Some(_) => Ok(done(Answer::False, None)),
            }
        }
        Mode::Skeptical => {
            let Some(any) = find_model(theory, horizon, &[], opts, stats)? else {
                return Ok(done(Answer::DomainInconsistent, None));
            };
            if goals.iter().any(|g| matches!(g, Goal::Fixed(false) | Goal::Unknown(..))) {
                return Ok(done(Answer::False, Some(any)));
            }
            for (l, t) in &dynamic {
                if let Some(w) = find_model(theory, horizon, &[(l.negate(), *t)], opts, stats)? {
                    return Ok(done(Answer::False, Some(w)));
                }
            }
            Ok(done(Answer::True, None))
        }
    }
}

/// `True` with a witness when the theory has a model, else `False`.
pub fn check_consistency(theory: &GroundTheory) -> Result<EntailmentResult, QueryError> {
    check_consistency_with(theory, &QueryOptions::default())
}

pub fn check_consistency_with(theory: &GroundTheory, opts: &QueryOptions) -> Result<EntailmentResult, QueryError> {
    let start = Instant::now();
    let mut stats = QueryStats::default();
    let w = find_model(theory, theory.horizon, &[], opts, &mut stats)?;
    stats.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(EntailmentResult {
        answer: if w.is_some() { Answer::True } else { Answer::False },
        mode: Mode::Credulous,
        goals: Vec::new(),
        witness: w,
        stats,
    })
}

#[cfg(test)]
mod tests;
