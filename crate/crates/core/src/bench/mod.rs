//! Experiment harness: timing runs over generated and mutated scenarios.
//!
//! Four families, each a loop over one knob:
//! - `completeness`: add skeptical conclusions as explicit observations;
//! - `irrelevance`: add occurrences of actions outside the query's slice;
//! - `representation`: the three Zoo variants on one scenario;
//! - `scaling`: Zoo domains over a range of position counts.
//!
//! Mutations must not change answers. Every row is compared against the
//! knob's base setting and flagged `answer-changed` when it differs.

pub mod cli;
mod spec;
mod table;

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use thiserror::Error;

use crate::corpus::{generate_spec, ground_default, ZooSpec};
use crate::ground::{GroundAtom, GroundError, GroundTheory, Lit};
use crate::parser::{parse_domain_sources, parse_query, ParseError};
use crate::query::{
    answer_with, check_consistency_with, components, enumerate_models, restrict, slice_fluents, Answer, Query, QueryError,
    QueryOptions,
};
use crate::sat::{answer_sat, SatError};
use crate::syntax::{DomainDescription, FluentLiteral, Proposition, TimePoint};

pub use spec::{Backend, ExperimentSpec, Family, Level};
pub use table::{Fingerprint, ResultTable, Row};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("{0}: {1}")]
    Io(String, String),
    #[error("experiment spec: {0}")]
    Spec(String),
    #[error("result table: {0}")]
    Table(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Ground(#[from] GroundError),
    #[error("no action outside the query's slice can occur consistently ({added} of {wanted} added)")]
    NoIrrelevantAction { added: usize, wanted: usize },
    #[error("the base theory has no model")]
    Inconsistent,
    #[error(transparent)]
    Query(#[from] QueryError),
}

fn opts(spec: &ExperimentSpec) -> QueryOptions {
    QueryOptions { budget: spec.budget, slice: spec.slice }
}

fn with_occurrence(d: &DomainDescription, action: &GroundAtom, t: u32) -> DomainDescription {
    let mut out = d.clone();
    out.propositions.push(Proposition::Happens { action: action.to_atom(), time: TimePoint(t) });
    out
}

/// Adds `k` occurrences of actions whose laws mention no fluent of the
/// query's slice. Each is kept only if the slice is unchanged and the
/// extended theory still has a model, so the answer to `q` is unchanged.
pub fn inject_irrelevant(d: &DomainDescription, q: &Query, k: usize) -> Result<DomainDescription, BenchError> {
    let mut out = d.clone();
    if k == 0 {
        return Ok(out);
    }
    let base = ground_default(d)?;
    let slice = slice_fluents(&base, q);
    let touches = |a: usize| {
        base.causal_laws
            .iter()
            .filter(|l| l.action == a)
            .any(|l| slice.contains(&l.effect.fluent()) || l.condition.iter().any(|c| slice.contains(&c.fluent())))
            || base
                .preconditions
                .iter()
                .filter(|p| p.action == a)
                .any(|p| !p.satisfiable || p.condition.iter().any(|c| slice.contains(&c.fluent())))
    };
    let mut added = 0;
    for t in 0..base.horizon {
        for (a, atom) in base.actions.iter().enumerate() {
            if touches(a) || base.occurrences.get(&t).is_some_and(|s| s.contains(&a)) {
                continue;
            }
            let candidate = with_occurrence(&out, atom, t);
            let Ok(theory) = ground_default(&candidate) else { continue };
            if theory.horizon != base.horizon || slice_fluents(&theory, q) != slice {
                continue;
            }
            let consistent = check_consistency_with(&theory, &QueryOptions { budget: None, slice: true })?;
            if consistent.answer != Answer::True {
                continue;
            }
            out = candidate;
            added += 1;
            if added == k {
                return Ok(out);
            }
        }
    }
    Err(BenchError::NoIrrelevantAction { added, wanted: k })
}

fn literal_of(theory: &GroundTheory, l: Lit) -> FluentLiteral {
    let atom = theory.fluents[l.fluent()].to_atom();
    if l.positive() {
        FluentLiteral::pos(atom)
    } else {
        FluentLiteral::neg(atom)
    }
}

/// Models enumerated per component before falling back to one search per
/// candidate literal.
const MODEL_CAP: usize = 4096;

/// Literals true in every model of `theory`, by time point, when it has at most
/// `MODEL_CAP` models.
fn backbone_by_enumeration(theory: &GroundTheory) -> Option<Vec<(Lit, u32)>> {
    let mut models = enumerate_models(theory);
    let first = models.next()?;
    let mut common: Vec<Vec<Option<bool>>> =
        first.states.iter().map(|s| (0..s.len()).map(|f| Some(s.get(f))).collect()).collect();
    for (i, m) in models.enumerate() {
        if i + 1 >= MODEL_CAP {
            return None;
        }
        for (t, s) in m.states.iter().enumerate() {
            for (f, v) in common[t].iter_mut().enumerate() {
                if *v != Some(s.get(f)) {
                    *v = None;
                }
            }
        }
    }
    let mut out = Vec::new();
    for (t, row) in common.iter().enumerate() {
        for (f, v) in row.iter().enumerate() {
            if let Some(v) = v {
                out.push((Lit::new(f, *v), t as u32));
            }
        }
    }
    Some(out)
}

/// Backbone by search: a witness for the negation of one candidate rules
/// out every candidate it falsifies.
fn backbone_by_search(theory: &GroundTheory) -> Result<Vec<(Lit, u32)>, BenchError> {
    let opts = QueryOptions { budget: None, slice: false };
    let Some(w) = check_consistency_with(theory, &opts)?.witness else { return Err(BenchError::Inconsistent) };
    let mut candidates: Vec<(Lit, u32)> = Vec::new();
    for t in 0..=theory.horizon {
        for f in 0..theory.fluents.len() {
            candidates.push((Lit::new(f, w.states[t as usize].get(f)), t));
        }
    }
    let mut alive = vec![true; candidates.len()];
    let mut found = Vec::new();
    for i in 0..candidates.len() {
        if !alive[i] {
            continue;
        }
        let (l, t) = candidates[i];
        let q = Query::credulous(vec![(literal_of(theory, l.negate()), TimePoint(t))]);
        let r = answer_with(theory, &q, &opts)?;
        match r.witness {
            Some(w2) if r.answer == Answer::True => {
                for (j, (l2, t2)) in candidates.iter().enumerate().skip(i) {
                    if !w2.holds(*l2, *t2) {
                        alive[j] = false;
                    }
                }
            }
            _ => found.push((l, t)),
        }
    }
    Ok(found)
}

/// Skeptical conclusions of `theory` not yet observed, latest time first,
/// computed one linked component at a time.
pub fn skeptical_conclusions(theory: &GroundTheory, limit: Option<usize>) -> Result<Vec<(Lit, u32)>, BenchError> {
    let all = QueryOptions { budget: None, slice: true };
    if check_consistency_with(theory, &all)?.answer != Answer::True {
        return Err(BenchError::Inconsistent);
    }
    let observed: BTreeSet<(Lit, u32)> = theory.observations.iter().map(|o| (o.literal, o.time)).collect();
    let mut found = Vec::new();
    for comp in components(theory) {
        let set: BTreeSet<usize> = comp.iter().copied().collect();
        let sub = restrict(theory, &set, false);
        let local = match backbone_by_enumeration(&sub) {
            Some(b) => b,
            None => backbone_by_search(&sub)?,
        };
        found.extend(local.into_iter().map(|(l, t)| (Lit::new(comp[l.fluent()], l.positive()), t)));
    }
    found.retain(|c| !observed.contains(c));
    found.sort_by_key(|(l, t)| (std::cmp::Reverse(*t), l.fluent()));
    if let Some(n) = limit {
        found.truncate(n);
    }
    Ok(found)
}

/// Adds up to `level` skeptical conclusions of `d` as observations.
pub fn enrich_scenario(d: &DomainDescription, level: Level) -> Result<DomainDescription, BenchError> {
    let limit = match level {
        Level::Count(0) => return Ok(d.clone()),
        Level::Count(n) => Some(n),
        Level::All => None,
    };
    let theory = ground_default(d)?;
    let mut out = d.clone();
    for (l, t) in skeptical_conclusions(&theory, limit)? {
        out.propositions.push(Proposition::Holds { literal: literal_of(&theory, l), time: TimePoint(t) });
    }
    Ok(out)
}

struct Measured {
    answer: Result<Answer, String>,
    times: Vec<f64>,
    nodes: u64,
    unstable: bool,
}

fn run_once(theory: &GroundTheory, q: &Query, spec: &ExperimentSpec) -> (Result<Answer, String>, u64, f64) {
    let start = Instant::now();
    let (answer, nodes) = match spec.backend {
        Backend::Engine => match answer_with(theory, q, &opts(spec)) {
            Ok(r) => (Ok(r.answer), r.stats.search.nodes),
            Err(QueryError::BudgetExceeded { .. }) => (Err("budget-exceeded".to_string()), 0),
            Err(e) => (Err(format!("error: {e}")), 0),
        },
        Backend::Sat => match answer_sat(theory, q, spec.budget) {
            Ok(r) => (Ok(r.answer), r.solver.decisions),
            Err(SatError::BudgetExceeded { .. }) => (Err("budget-exceeded".to_string()), 0),
            Err(SatError::Fragment(_)) => (Err("error: outside the sat fragment".to_string()), 0),
            Err(e) => (Err(format!("error: {e}")), 0),
        },
    };
    (answer, nodes, start.elapsed().as_secs_f64() * 1e3)
}

/// One warmup run, then `repetitions` timed runs.
fn measure(theory: &GroundTheory, q: &Query, spec: &ExperimentSpec) -> Measured {
    let (first, _, _) = run_once(theory, q, spec);
    let mut m = Measured { answer: first, times: Vec::new(), nodes: 0, unstable: false };
    for _ in 0..spec.repetitions {
        let (a, nodes, ms) = run_once(theory, q, spec);
        m.unstable |= a != m.answer;
        m.nodes = nodes;
        m.times.push(ms);
    }
    m
}

pub fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    match v.len() {
        0 => 0.0,
        n if n % 2 == 1 => v[n / 2],
        n => (v[n / 2 - 1] + v[n / 2]) / 2.0,
    }
}

/// A domain to measure under one knob setting.
struct Setting {
    knobs: String,
    /// Setting the other rows of the same query are compared against.
    baseline: bool,
    domain: Result<DomainDescription, String>,
}

fn error_row(spec: &ExperimentSpec, knobs: &str, query: &str, flag: String) -> Row {
    Row {
        experiment: spec.id.clone(),
        family: spec.family.to_string(),
        knobs: knobs.to_string(),
        query: query.to_string(),
        answer: "-".into(),
        median_ms: 0.0,
        min_ms: 0.0,
        max_ms: 0.0,
        ground_ms: 0.0,
        fluents: 0,
        clauses: 0,
        nodes: 0,
        flag,
    }
}

fn measure_row(spec: &ExperimentSpec, s: &Setting, query: &str) -> Row {
    let d = match &s.domain {
        Ok(d) => d,
        Err(e) => return error_row(spec, &s.knobs, query, format!("error: {e}")),
    };
    let q = match parse_query(query, &d.signature) {
        Ok(q) => q,
        Err(e) => return error_row(spec, &s.knobs, query, format!("error: {e}")),
    };
    let start = Instant::now();
    let theory = match ground_default(d) {
        Ok(t) => t,
        Err(e) => return error_row(spec, &s.knobs, query, format!("error: {e}")),
    };
    let ground_ms = start.elapsed().as_secs_f64() * 1e3;
    let m = measure(&theory, &q, spec);
    let stats = theory.stats();
    let (answer, mut flag) = match &m.answer {
        Ok(a) => (a.to_string(), String::new()),
        Err(e) => ("-".to_string(), e.clone()),
    };
    if m.unstable && flag.is_empty() {
        flag = "unstable".into();
    }
    Row {
        experiment: spec.id.clone(),
        family: spec.family.to_string(),
        knobs: s.knobs.clone(),
        query: query.to_string(),
        answer,
        median_ms: median(&m.times),
        min_ms: m.times.iter().copied().fold(f64::INFINITY, f64::min),
        max_ms: m.times.iter().copied().fold(0.0, f64::max),
        ground_ms,
        fluents: stats.fluents,
        clauses: stats.per_time_point,
        nodes: m.nodes,
        flag,
    }
}

fn parse_sources(texts: &[String]) -> Result<DomainDescription, String> {
    let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
    parse_domain_sources(&refs).map(|u| u.domain).map_err(|e| e.to_string())
}

fn base_domain(spec: &ExperimentSpec) -> Result<DomainDescription, BenchError> {
    let mut texts = Vec::new();
    if let Some(p) = &spec.domain {
        texts.push(spec.read(p)?);
    }
    if let Some(p) = &spec.scenario {
        texts.push(spec.read(p)?);
    }
    parse_sources(&texts).map_err(|e| BenchError::Spec(format!("{}: {e}", spec.id)))
}

fn zoo_domain(spec: &ExperimentSpec, zoo: &ZooSpec) -> Result<DomainDescription, String> {
    let mut texts = vec![generate_spec(zoo)];
    if let Some(p) = &spec.scenario {
        texts.push(spec.read(p).map_err(|e| e.to_string())?);
    }
    parse_sources(&texts)
}

/// Runs every knob setting against every query, in spec order.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ResultTable, BenchError> {
    spec.validate()?;
    let mut table = ResultTable::new();
    // Settings per query: irrelevant actions depend on the query's slice.
    let settings = |query: &str| -> Result<Vec<Setting>, BenchError> {
        Ok(match spec.family {
            Family::Irrelevance => {
                let d = base_domain(spec)?;
                let q = parse_query(query, &d.signature)?;
                spec.k
                    .iter()
                    .map(|k| Setting {
                        knobs: format!("k={k}"),
                        baseline: *k == spec.k[0],
                        domain: inject_irrelevant(&d, &q, *k).map_err(|e| e.to_string()),
                    })
                    .collect()
            }
            Family::Completeness => {
                let d = base_domain(spec)?;
                spec.levels
                    .iter()
                    .enumerate()
                    .map(|(i, l)| Setting {
                        knobs: format!("level={l}"),
                        baseline: i == 0,
                        domain: enrich_scenario(&d, *l).map_err(|e| e.to_string()),
                    })
                    .collect()
            }
            Family::Representation | Family::Scaling => {
                let mut out = Vec::new();
                for n in &spec.positions {
                    for v in &spec.variants {
                        out.push(Setting {
                            knobs: format!("variant={},positions={n}", v.name()),
                            baseline: false,
                            domain: zoo_domain(spec, &ZooSpec::new(*v, *n)),
                        });
                    }
                }
                out
            }
        })
    };
    for query in &spec.queries {
        let mut base: Option<String> = None;
        for s in settings(query)? {
            let mut row = measure_row(spec, &s, query);
            if s.baseline {
                base = Some(row.answer.clone());
            } else if let Some(b) = &base {
                if row.flag.is_empty() && *b != row.answer {
                    row.flag = "answer-changed".into();
                }
            }
            table.rows.push(row);
        }
    }
    Ok(table)
}

/// Answers per variant for each query, from a representation table.
pub fn answers_by_variant(table: &ResultTable) -> BTreeMap<String, BTreeMap<String, String>> {
    let mut out: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
    for r in &table.rows {
        out.entry(r.query.clone()).or_default().insert(r.knobs.clone(), r.answer.clone());
    }
    out
}

#[cfg(test)]
mod tests;
