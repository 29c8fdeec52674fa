//! Successor states of a state under a set of concurrent action
//! occurrences.
//!
//! A transition from `s` to `s'` is licensed by a set `applied` of direct
//! effects when
//!
//! 1. the ramification closure of `applied`, evaluated in `s'`, is
//!    consistent and true in `s'`,
//! 2. every fluent outside the closure keeps its value from `s`,
//! 3. `s'` satisfies every ramification statement and denial classically,
//! 4. every direct candidate left out of `applied` has its complement in
//!    the closure.
//!
//! A ramification fires only when one of its body literals was brought
//! about, and never through its contrapositive.

mod oracle;
mod state;

use std::cell::Cell;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::ground::{ActionId, GroundTheory, Lit, Ramification};

pub use oracle::{brute_force_successors, is_valid_transition, OracleError, DEFAULT_ORACLE_BOUND};
pub use state::State;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EffectSet {
    pub applied: BTreeSet<Lit>,
    pub changed: BTreeSet<Lit>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub source: State,
    pub actions: BTreeSet<ActionId>,
    pub target: State,
    pub effects: EffectSet,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct SearchStats {
    pub calls: u64,
    /// Sets of applied direct effects that reached the closure search.
    pub applied_sets: u64,
    /// Ramification firing decisions that had to branch.
    pub branches: u64,
    pub leaves: u64,
    pub successors: u64,
}

/// True when `s` satisfies `r` read as a classical implication.
pub fn rule_holds(r: &Ramification, s: &State) -> bool {
    !s.holds_all(&r.body) || r.head.is_some_and(|h| s.holds(h))
}

pub fn satisfies_constraints(theory: &GroundTheory, s: &State) -> bool {
    theory.ramifications.iter().all(|r| rule_holds(r, s))
}

pub fn direct_candidates(theory: &GroundTheory, s: &State, actions: &BTreeSet<ActionId>) -> BTreeSet<Lit> {
    theory
        .causal_laws
        .iter()
        .filter(|l| actions.contains(&l.action) && s.holds_all(&l.condition))
        .map(|l| l.effect)
        .collect()
}

/// Least fixpoint of the triggered ramifications over `applied`, with
/// bodies evaluated in `target`. `None` if a complementary pair appears.
pub fn ramification_closure(theory: &GroundTheory, applied: &BTreeSet<Lit>, target: &State) -> Option<EffectSet> {
    let mut changed = applied.clone();
    loop {
        if changed.iter().any(|l| changed.contains(&l.negate())) {
            return None;
        }
        let mut grew = false;
        for r in &theory.ramifications {
            let Some(h) = r.head else { continue };
            if !changed.contains(&h)
                && target.holds_all(&r.body)
                && r.body.iter().any(|b| changed.contains(b))
            {
                changed.insert(h);
                grew = true;
            }
        }
        if !grew {
            return Some(EffectSet { applied: applied.clone(), changed });
        }
    }
}

/// All successors of `s` under `actions`, sorted by target state.
pub fn successor_states(theory: &GroundTheory, s: &State, actions: &BTreeSet<ActionId>) -> Vec<Transition> {
    Dynamics::new(theory).successors(s, actions)
}

const UNDECIDED: u8 = 0;
const FIRED: u8 = 1;
const BLOCKED: u8 = 2;

#[derive(Clone)]
struct Branch {
    /// Membership in the tentative closure, by literal code.
    inc: Vec<bool>,
    list: Vec<Lit>,
    decided: Vec<u8>,
    cursor: usize,
}

impl Branch {
    fn add(&mut self, l: Lit) -> bool {
        if self.inc[l.negate().code()] {
            return false;
        }
        if !self.inc[l.code()] {
            self.inc[l.code()] = true;
            self.list.push(l);
        }
        true
    }
}

/// Indexed view of a ground theory for repeated successor computations.
pub struct Dynamics<'a> {
    pub theory: &'a GroundTheory,
    /// Literal code to the effect-generating ramifications with that body literal.
    by_body: Vec<Vec<u32>>,
    /// Fluent to every ramification or denial mentioning it.
    touching: Vec<Vec<u32>>,
    laws_by_action: Vec<Vec<u32>>,
    stats: Cell<SearchStats>,
    trace: Option<std::cell::RefCell<String>>,
}

impl<'a> Dynamics<'a> {
    pub fn new(theory: &'a GroundTheory) -> Self {
        let n = theory.fluents.len();
        let mut by_body = vec![Vec::new(); 2 * n];
        let mut touching = vec![Vec::new(); n];
        for (i, r) in theory.ramifications.iter().enumerate() {
            for b in &r.body {
                if r.head.is_some() && !by_body[b.code()].contains(&(i as u32)) {
                    by_body[b.code()].push(i as u32);
                }
            }
            for l in r.body.iter().chain(r.head.iter()) {
                if !touching[l.fluent()].contains(&(i as u32)) {
                    touching[l.fluent()].push(i as u32);
                }
            }
        }
        let mut laws_by_action = vec![Vec::new(); theory.actions.len()];
        for (i, law) in theory.causal_laws.iter().enumerate() {
            laws_by_action[law.action].push(i as u32);
        }
        Dynamics { theory, by_body, touching, laws_by_action, stats: Cell::new(SearchStats::default()), trace: None }
    }

    /// Records one line per explored leaf; read it back with [`Dynamics::take_trace`].
    pub fn with_trace(mut self) -> Self {
        self.trace = Some(Default::default());
        self
    }

    pub fn take_trace(&self) -> String {
        self.trace.as_ref().map(|t| std::mem::take(&mut *t.borrow_mut())).unwrap_or_default()
    }

    pub fn stats(&self) -> SearchStats {
        self.stats.get()
    }

    fn bump(&self, f: impl FnOnce(&mut SearchStats)) {
        let mut s = self.stats.get();
        f(&mut s);
        self.stats.set(s);
    }

    pub fn direct_candidates(&self, s: &State, actions: &BTreeSet<ActionId>) -> Vec<Lit> {
        let mut out: Vec<Lit> = actions
            .iter()
            .flat_map(|a| self.laws_by_action[*a].iter())
            .map(|i| &self.theory.causal_laws[*i as usize])
            .filter(|l| s.holds_all(&l.condition))
            .map(|l| l.effect)
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Indexed version of [`ramification_closure`]; returns the closure as
    /// a list in derivation order.
    pub fn closure(&self, applied: &[Lit], target: &State) -> Option<Vec<Lit>> {
        let mut inc = vec![false; 2 * self.theory.fluents.len()];
        let mut list = Vec::new();
        for l in applied {
            if inc[l.negate().code()] {
                return None;
            }
            if !inc[l.code()] {
                inc[l.code()] = true;
                list.push(*l);
            }
        }
        let mut i = 0;
        while i < list.len() {
            let l = list[i];
            i += 1;
            for r in &self.by_body[l.code()] {
                let rule = &self.theory.ramifications[*r as usize];
                let h = rule.head.expect("indexed rules have heads");
                if inc[h.code()] || !target.holds_all(&rule.body) {
                    continue;
                }
                if inc[h.negate().code()] {
                    return None;
                }
                inc[h.code()] = true;
                list.push(h);
            }
        }
        Some(list)
    }

    /// Literals that must enter every closure of `applied`: rules whose
    /// whole body is already in it fire whatever the target is.
    fn forced(&self, applied: &[Lit]) -> Option<Vec<bool>> {
        let mut inc = vec![false; 2 * self.theory.fluents.len()];
        let mut list = Vec::new();
        for l in applied {
            if inc[l.negate().code()] {
                return None;
            }
            if !inc[l.code()] {
                inc[l.code()] = true;
                list.push(*l);
            }
        }
        let mut i = 0;
        while i < list.len() {
            let l = list[i];
            i += 1;
            for r in &self.by_body[l.code()] {
                let rule = &self.theory.ramifications[*r as usize];
                let h = rule.head.unwrap();
                if inc[h.code()] || !rule.body.iter().all(|b| inc[b.code()]) {
                    continue;
                }
                if inc[h.negate().code()] {
                    return None;
                }
                inc[h.code()] = true;
                list.push(h);
            }
        }
        Some(inc)
    }

    /// Over-approximation of the literals that can enter a closure of
    /// `applied` for any target reachable from `s`.
    fn possible(&self, applied: &[Lit], s: &State) -> Vec<bool> {
        let mut poss = vec![false; 2 * self.theory.fluents.len()];
        let mut list: Vec<Lit> = Vec::new();
        for l in applied {
            if !poss[l.code()] {
                poss[l.code()] = true;
                list.push(*l);
            }
        }
        let mut i = 0;
        while i < list.len() {
            let l = list[i];
            i += 1;
            for r in &self.by_body[l.code()] {
                let rule = &self.theory.ramifications[*r as usize];
                let h = rule.head.unwrap();
                if !poss[h.code()] && rule.body.iter().all(|b| poss[b.code()] || s.holds(*b)) {
                    poss[h.code()] = true;
                    list.push(h);
                }
            }
        }
        poss
    }

    pub fn successors(&self, s: &State, actions: &BTreeSet<ActionId>) -> Vec<Transition> {
        self.bump(|st| st.calls += 1);
        let d = self.direct_candidates(s, actions);
        let mut out = BTreeMap::new();
        let mut applied = Vec::new();
        self.choose(0, &d, &mut applied, s, actions, &mut out);
        self.bump(|st| st.successors += out.len() as u64);
        out.into_values().collect()
    }

    fn choose(
        &self,
        i: usize,
        d: &[Lit],
        applied: &mut Vec<Lit>,
        s: &State,
        actions: &BTreeSet<ActionId>,
        out: &mut BTreeMap<State, Transition>,
    ) {
        if i == d.len() {
            self.expand(d, applied, s, actions, out);
            return;
        }
        if !applied.contains(&d[i].negate()) {
            applied.push(d[i]);
            if self.forced(applied).is_some() {
                self.choose(i + 1, d, applied, s, actions, out);
            }
            applied.pop();
        }
        self.choose(i + 1, d, applied, s, actions, out);
    }

    fn expand(
        &self,
        d: &[Lit],
        applied: &[Lit],
        s: &State,
        actions: &BTreeSet<ActionId>,
        out: &mut BTreeMap<State, Transition>,
    ) {
        let Some(forced) = self.forced(applied) else { return };
        let poss = self.possible(applied, s);
        let dropped: Vec<Lit> = d.iter().filter(|l| !applied.contains(l)).copied().collect();
        if dropped.iter().any(|l| !poss[l.negate().code()]) {
            return;
        }
        self.bump(|st| st.applied_sets += 1);
        let n = self.theory.fluents.len();
        let mut br = Branch {
            inc: vec![false; 2 * n],
            list: Vec::new(),
            decided: vec![UNDECIDED; self.theory.ramifications.len()],
            cursor: 0,
        };
        for l in applied {
            br.add(*l);
        }
        for (code, _) in forced.iter().enumerate().take(2 * n).filter(|(_, f)| **f) {
            br.add(Lit::new(code / 2, code % 2 == 1));
        }
        self.explore(br, s, &poss, applied, &dropped, actions, out);
    }

    #[allow(clippy::too_many_arguments)]
    fn explore(
        &self,
        mut br: Branch,
        s: &State,
        poss: &[bool],
        applied: &[Lit],
        dropped: &[Lit],
        actions: &BTreeSet<ActionId>,
        out: &mut BTreeMap<State, Transition>,
    ) {
        let surely_false = |br: &Branch, b: &Lit| br.inc[b.negate().code()] || (!s.holds(*b) && !poss[b.code()]);
        let surely_true = |br: &Branch, b: &Lit| br.inc[b.code()] || (s.holds(*b) && !poss[b.negate().code()]);
        while br.cursor < br.list.len() {
            let l = br.list[br.cursor];
            let mut pick = None;
            for r in &self.by_body[l.code()] {
                let r = *r as usize;
                if br.decided[r] != UNDECIDED {
                    continue;
                }
                let rule = &self.theory.ramifications[r];
                let h = rule.head.unwrap();
                if br.inc[h.code()] {
                    br.decided[r] = FIRED;
                } else if br.inc[h.negate().code()] || rule.body.iter().any(|b| surely_false(&br, b)) {
                    br.decided[r] = BLOCKED;
                } else if rule.body.iter().all(|b| surely_true(&br, b)) {
                    br.decided[r] = FIRED;
                    br.add(h);
                } else {
                    pick = Some(r);
                    break;
                }
            }
            match pick {
                None => br.cursor += 1,
                Some(r) => {
                    self.bump(|st| st.branches += 1);
                    let h = self.theory.ramifications[r].head.unwrap();
                    let mut fire = br.clone();
                    fire.decided[r] = FIRED;
                    fire.add(h);
                    self.explore(fire, s, poss, applied, dropped, actions, out);
                    br.decided[r] = BLOCKED;
                }
            }
        }
        self.leaf(&br, s, applied, dropped, actions, out);
    }

    fn leaf(
        &self,
        br: &Branch,
        s: &State,
        applied: &[Lit],
        dropped: &[Lit],
        actions: &BTreeSet<ActionId>,
        out: &mut BTreeMap<State, Transition>,
    ) {
        self.bump(|st| st.leaves += 1);
        let target = s.apply(&br.list);
        let verdict = self.check_leaf(br, &target, applied, dropped);
        if let Some(trace) = &self.trace {
            let th = self.theory;
            let lits = |ls: &[Lit]| ls.iter().map(|l| th.lit_string(*l)).collect::<Vec<_>>().join(", ");
            let _ = writeln!(
                trace.borrow_mut(),
                "applied {{ {} }}\tchanged {{ {} }}\ttarget {}\t{}",
                lits(applied),
                lits(&br.list),
                target.describe_true(th),
                verdict.unwrap_or("accepted")
            );
        }
        if verdict.is_none() && !out.contains_key(&target) {
            let t = Transition {
                source: s.clone(),
                actions: actions.clone(),
                target: target.clone(),
                effects: EffectSet {
                    applied: applied.iter().copied().collect(),
                    changed: br.list.iter().copied().collect(),
                },
            };
            out.insert(target, t);
        }
    }

    /// `None` when the leaf is a legal successor, else the reason it is not.
    fn check_leaf(&self, br: &Branch, target: &State, applied: &[Lit], dropped: &[Lit]) -> Option<&'static str> {
        let Some(closure) = self.closure(applied, target) else { return Some("inconsistent closure") };
        if closure.len() != br.list.len() || closure.iter().any(|l| !br.inc[l.code()]) {
            return Some("not a fixpoint");
        }
        if dropped.iter().any(|l| !br.inc[l.negate().code()]) {
            return Some("undefeated direct effect");
        }
        let mut seen = BTreeSet::new();
        for l in &br.list {
            for r in &self.touching[l.fluent()] {
                if seen.insert(*r) && !rule_holds(&self.theory.ramifications[*r as usize], target) {
                    return Some("constraint violated");
                }
            }
        }
        None
    }
}
