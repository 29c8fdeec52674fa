//! Exhaustive successor computation straight from the definition. Exists
//! to cross-check the search in the parent module.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::{rule_holds, EffectSet, State, Transition};
use crate::ground::{ActionId, GroundTheory, Lit};

pub const DEFAULT_ORACLE_BOUND: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{fluents} fluents exceed the oracle bound of {bound}")]
    TooManyFluents { fluents: usize, bound: usize },
    #[error("{0} direct candidates exceed the oracle bound")]
    TooManyCandidates(usize),
}

fn candidates(theory: &GroundTheory, s: &State, actions: &BTreeSet<ActionId>) -> Vec<Lit> {
    let mut out = Vec::new();
    for law in &theory.causal_laws {
        if actions.contains(&law.action) && law.condition.iter().all(|c| s.holds(*c)) && !out.contains(&law.effect) {
            out.push(law.effect);
        }
    }
    out.sort();
    out
}

fn naive_closure(theory: &GroundTheory, applied: &BTreeSet<Lit>, target: &State) -> BTreeSet<Lit> {
    let mut changed = applied.clone();
    let mut grew = true;
    while grew {
        grew = false;
        for r in &theory.ramifications {
            if let Some(h) = r.head {
                let triggered = r.body.iter().any(|b| changed.contains(b));
                if triggered && r.body.iter().all(|b| target.holds(*b)) && changed.insert(h) {
                    grew = true;
                }
            }
        }
    }
    changed
}

/// Checks one transition against the definition, for the `applied` set
/// it records.
pub fn is_valid_transition(theory: &GroundTheory, t: &Transition) -> bool {
    let d = candidates(theory, &t.source, &t.actions);
    let applied = &t.effects.applied;
    if !applied.iter().all(|l| d.contains(l)) || applied.iter().any(|l| applied.contains(&l.negate())) {
        return false;
    }
    let changed = naive_closure(theory, applied, &t.target);
    if changed != t.effects.changed || changed.iter().any(|l| changed.contains(&l.negate())) {
        return false;
    }
    if !changed.iter().all(|l| t.target.holds(*l)) {
        return false;
    }
    for f in 0..t.source.len() {
        let mentioned = changed.contains(&Lit::new(f, true)) || changed.contains(&Lit::new(f, false));
        if !mentioned && t.source.get(f) != t.target.get(f) {
            return false;
        }
    }
    if !theory.ramifications.iter().all(|r| rule_holds(r, &t.target)) {
        return false;
    }
    d.iter().filter(|l| !applied.contains(l)).all(|l| changed.contains(&l.negate()))
}

/// Every legal successor, found by trying all targets against all subsets
/// of the direct candidates. Sorted and deduplicated by target.
pub fn brute_force_successors(
    theory: &GroundTheory,
    s: &State,
    actions: &BTreeSet<ActionId>,
    bound: usize,
) -> Result<Vec<Transition>, OracleError> {
    let n = theory.fluents.len();
    if n > bound {
        return Err(OracleError::TooManyFluents { fluents: n, bound });
    }
    let d = candidates(theory, s, actions);
    if d.len() > 16 {
        return Err(OracleError::TooManyCandidates(d.len()));
    }
    let mut out = BTreeMap::new();
    for mask in 0u32..(1 << d.len()) {
        let applied: BTreeSet<Lit> = d.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, l)| *l).collect();
        for bits in 0u64..(1 << n) {
            let target = State::from_bits(n, bits);
            let changed = naive_closure(theory, &applied, &target);
            let t = Transition {
                source: s.clone(),
                actions: actions.clone(),
                target: target.clone(),
                effects: EffectSet { applied: applied.clone(), changed },
            };
            if is_valid_transition(theory, &t) {
                out.entry(target).or_insert(t);
            }
        }
    }
    Ok(out.into_values().collect())
}
