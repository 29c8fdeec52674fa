//! Propositional backend: compile a ground theory over a bounded horizon
//! to CNF and decide queries with a small DPLL solver.
//!
//! Only theories that pass [`check_fragment`] are compiled. On that
//! fragment each step's effects are fixed by the state and actions, so the
//! encoding's models are exactly the trajectories.

mod dimacs;
mod encode;
mod fragment;
mod solver;

use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::ground::{GroundTheory, Lit};
use crate::query::{effective_horizon, resolve_goals, Answer, Goal, Mode, Query};
use crate::transition::State;

pub use dimacs::{parse_dimacs, to_dimacs};
pub use encode::{compile, compile_horizon, CnfInstance};
pub use fragment::{check_fragment, FragmentReport, Violation, ViolationKind};
pub use solver::{solve_clauses, SolveResult, SolverStats};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SatError {
    #[error("theory is outside the supported fragment:\n{0}")]
    Fragment(FragmentReport),
    #[error("solver budget of {steps} steps exceeded")]
    BudgetExceeded { steps: u64 },
    #[error("dimacs line {line}: {message}")]
    Dimacs { line: usize, message: String },
}

pub fn solve(cnf: &CnfInstance, assumptions: &[i32], budget: Option<u64>) -> Result<(SolveResult, SolverStats), SatError> {
    let mut stats = SolverStats::default();
    let r = solve_clauses(cnf.num_vars, &cnf.clauses, assumptions, budget, &mut stats)?;
    Ok((r, stats))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SatAnswer {
    pub answer: Answer,
    pub mode: Mode,
    /// Fluent states per time point of a satisfying assignment, when one was found.
    #[serde(skip)]
    pub witness: Option<Vec<State>>,
    pub vars: u32,
    pub clauses: usize,
    pub solver: SolverStats,
    pub solves: u32,
    pub wall_ms: f64,
}

fn states_of(cnf: &CnfInstance, model: &[bool]) -> Vec<State> {
    (0..=cnf.horizon)
        .map(|t| State::from_bools(&(0..cnf.fluents).map(|f| model[cnf.fluent_var(f, t) as usize - 1]).collect::<Vec<_>>()))
        .collect()
}

struct Run<'c> {
    cnf: &'c CnfInstance,
    budget: Option<u64>,
    stats: SolverStats,
    solves: u32,
}

impl Run<'_> {
    fn sat(&mut self, assumptions: &[i32]) -> Result<Option<Vec<State>>, SatError> {
        let left = self.budget.map(|b| b.saturating_sub(self.stats.decisions + self.stats.conflicts));
        self.solves += 1;
        match solve_clauses(self.cnf.num_vars, &self.cnf.clauses, assumptions, left, &mut self.stats)? {
            SolveResult::Sat(m) => Ok(Some(states_of(self.cnf, &m))),
            SolveResult::Unsat => Ok(None),
        }
    }
}

/// Answers `q` through the CNF encoding. Agrees with [`crate::query::answer`]
/// on every theory the fragment check accepts.
pub fn answer_sat(theory: &GroundTheory, q: &Query, budget: Option<u64>) -> Result<SatAnswer, SatError> {
    let start = Instant::now();
    let mut cnf = compile_horizon(theory, effective_horizon(theory, q))?;
    let goals = resolve_goals(theory, &q.goals);
    let dynamic: Vec<(Lit, u32)> = goals
        .iter()
        .filter_map(|g| match g {
            Goal::Dynamic(l, t) => Some((*l, *t)),
            _ => None,
        })
        .collect();
    // Skeptical: a selector guards the clause saying some goal fails.
    let selector = (q.mode == Mode::Skeptical && !dynamic.is_empty()).then(|| {
        let s = cnf.new_var("selector".to_string());
        let mut c: Vec<i32> = dynamic.iter().map(|(l, t)| -cnf.lit(*l, *t)).collect();
        c.push(-s);
        cnf.add(c, "negated goals");
        s
    });
    let mut run = Run { cnf: &cnf, budget, stats: SolverStats::default(), solves: 0 };
    let (answer, witness) = match q.mode {
        Mode::Credulous => {
            let fixed_ok = goals.iter().all(|g| !matches!(g, Goal::Fixed(false)));
            let unknown_ok = !goals.iter().any(|g| match g {
                Goal::Unknown(i, p) => goals.contains(&Goal::Unknown(*i, !p)),
                _ => false,
            });
            let assumptions: Vec<i32> = dynamic.iter().map(|(l, t)| cnf.lit(*l, *t)).collect();
            let hit = if fixed_ok && unknown_ok { run.sat(&assumptions)? } else { None };
            match hit {
                Some(w) => (Answer::True, Some(w)),
                None => match run.sat(&[])? {
                    None => (Answer::DomainInconsistent, None),
                    Some(_) => (Answer::False, None),
                },
            }
        }
        Mode::Skeptical => match run.sat(&[])? {
            None => (Answer::DomainInconsistent, None),
            Some(any) => {
                if goals.iter().any(|g| matches!(g, Goal::Fixed(false) | Goal::Unknown(..))) {
                    (Answer::False, Some(any))
                } else if let Some(s) = selector {
                    match run.sat(&[s])? {
                        Some(w) => (Answer::False, Some(w)),
                        None => (Answer::True, None),
                    }
                } else {
                    (Answer::True, None)
                }
            }
        },
    };
    Ok(SatAnswer {
        answer,
        mode: q.mode,
        witness,
        vars: cnf.num_vars,
        clauses: cnf.clauses.len(),
        solver: run.stats,
        solves: run.solves,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// `True` when the compiled theory is satisfiable, else `False`.
pub fn check_consistency_sat(theory: &GroundTheory, budget: Option<u64>) -> Result<SatAnswer, SatError> {
    let r = answer_sat(theory, &Query::credulous(Vec::new()), budget)?;
    Ok(SatAnswer { answer: if r.answer == Answer::True { Answer::True } else { Answer::False }, ..r })
}
