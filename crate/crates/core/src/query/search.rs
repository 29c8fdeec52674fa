//! Depth-first model search over (time, state) nodes.

use std::collections::{BTreeSet, HashSet};

use super::initial::InitialStates;
use super::{QueryError, Trajectory};
use crate::ground::{ActionId, GroundTheory, Lit};
use crate::transition::{Dynamics, EffectSet, State, Transition};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SearchCounters {
    pub initial_states: u64,
    pub nodes: u64,
    pub models: u64,
    pub pruned: u64,
    pub dead_states: u64,
}

struct Frame {
    t: u32,
    state: State,
    via: Option<Transition>,
    succ: Vec<Transition>,
    next: usize,
    found: bool,
}

pub(crate) struct Search<'t> {
    dyns: Dynamics<'t>,
    horizon: u32,
    /// Literals required at each time point 0..=horizon.
    req: Vec<Vec<Lit>>,
    occ: Vec<BTreeSet<ActionId>>,
    /// Times up to and including `first` share the time-0 state.
    first: u32,
    impossible: bool,
    budget: Option<u64>,
    dead: HashSet<(u32, State)>,
    init: InitialStates,
    stack: Vec<Frame>,
    pub counters: SearchCounters,
}

impl<'t> Search<'t> {
    /// `extra` holds additional literals a model must satisfy.
    pub fn new(theory: &'t GroundTheory, horizon: u32, extra: &[(Lit, u32)], budget: Option<u64>) -> Self {
        let h = horizon as usize;
        let mut req: Vec<Vec<Lit>> = vec![Vec::new(); h + 1];
        let mut impossible = false;
        for o in &theory.observations {
            if o.time <= horizon {
                req[o.time as usize].push(o.literal);
            }
        }
        for (l, t) in extra {
            if *t <= horizon {
                req[*t as usize].push(*l);
            }
        }
        let mut occ = vec![BTreeSet::new(); h + 1];
        for (t, acts) in &theory.occurrences {
            if *t > horizon {
                continue;
            }
            occ[*t as usize] = acts.clone();
            for p in theory.preconditions.iter().filter(|p| acts.contains(&p.action)) {
                if p.satisfiable {
                    req[*t as usize].extend(&p.condition);
                } else {
                    impossible = true;
                }
            }
        }
        let first = (0..horizon).find(|t| !occ[*t as usize].is_empty()).unwrap_or(horizon);
        let units: Vec<Lit> = req[..=first as usize].iter().flatten().copied().collect();
        for r in req.iter_mut() {
            r.sort();
            r.dedup();
            if r.windows(2).any(|w| w[0].fluent() == w[1].fluent()) {
                impossible = true;
            }
        }
        Search {
            dyns: Dynamics::new(theory),
            horizon,
            req,
            occ,
            first,
            impossible,
            budget,
            dead: HashSet::new(),
            init: InitialStates::new(theory, units),
            stack: Vec::new(),
            counters: SearchCounters::default(),
        }
    }

    fn tick(&mut self) -> Result<(), QueryError> {
        self.counters.nodes += 1;
        match self.budget {
            Some(b) if self.counters.nodes > b => Err(QueryError::BudgetExceeded { nodes: b }),
            _ => Ok(()),
        }
    }

    fn successors(&mut self, t: u32, s: &State) -> Vec<Transition> {
        let next = &self.req[t as usize + 1];
        let all = self.dyns.successors(s, &self.occ[t as usize]);
        let before = all.len();
        let kept: Vec<Transition> = all
            .into_iter()
            .filter(|tr| tr.target.holds_all(next) && !self.dead.contains(&(t + 1, tr.target.clone())))
            .collect();
        self.counters.pruned += (before - kept.len()) as u64;
        kept
    }

    fn trajectory(&self, last: Option<Transition>) -> Trajectory {
        let s0 = self.stack.first().map(|f| f.state.clone()).or_else(|| last.as_ref().map(|t| t.source.clone()));
        let s0 = s0.expect("a trajectory has a first state");
        let mut states = vec![s0.clone(); self.first as usize + 1];
        let mut steps: Vec<Transition> = (0..self.first)
            .map(|_| Transition {
                source: s0.clone(),
                actions: BTreeSet::new(),
                target: s0.clone(),
                effects: EffectSet::default(),
            })
            .collect();
        for tr in self.stack.iter().filter_map(|f| f.via.clone()).chain(last) {
            states.push(tr.target.clone());
            steps.push(tr);
        }
        Trajectory { states, steps }
    }

    fn initial_only(&self, s0: State) -> Trajectory {
        let mut steps = Vec::new();
        for _ in 0..self.horizon {
            steps.push(Transition {
                source: s0.clone(),
                actions: BTreeSet::new(),
                target: s0.clone(),
                effects: EffectSet::default(),
            });
        }
        Trajectory { states: vec![s0; self.horizon as usize + 1], steps }
    }

    /// The next model in enumeration order.
    pub fn next_model(&mut self) -> Result<Option<Trajectory>, QueryError> {
        if self.impossible {
            return Ok(None);
        }
        loop {
            if self.stack.is_empty() {
                let Some(s0) = self.init.next() else { return Ok(None) };
                self.counters.initial_states += 1;
                self.tick()?;
                if self.first == self.horizon {
                    self.counters.models += 1;
                    return Ok(Some(self.initial_only(s0)));
                }
                let succ = self.successors(self.first, &s0);
                self.stack.push(Frame { t: self.first, state: s0, via: None, succ, next: 0, found: false });
                continue;
            }
            let top = self.stack.last_mut().unwrap();
            if top.next < top.succ.len() {
                let tr = top.succ[top.next].clone();
                top.next += 1;
                let t1 = top.t + 1;
                if t1 == self.horizon {
                    for f in self.stack.iter_mut() {
                        f.found = true;
                    }
                    self.counters.models += 1;
                    return Ok(Some(self.trajectory(Some(tr))));
                }
                self.tick()?;
                let succ = self.successors(t1, &tr.target);
                self.stack.push(Frame { t: t1, state: tr.target.clone(), via: Some(tr), succ, next: 0, found: false });
            } else {
                let done = self.stack.pop().unwrap();
                if !done.found {
                    self.counters.dead_states += 1;
                    self.dead.insert((done.t, done.state));
                }
            }
        }
    }
}
