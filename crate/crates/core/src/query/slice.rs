//! Relevance slicing.
//!
//! Fluents are linked when they occur together in a ramification or
//! denial, in a causal law of an occurring action, or in a precondition of
//! an occurring action. Linked components evolve independently, so the
//! models of a theory are the products of the models of its components.
//! An answer computed on the components holding the goal fluents is the
//! full answer once the remaining components are known to be consistent.

use std::collections::{BTreeMap, BTreeSet};

use super::{answer_direct, effective_horizon, find_model, Answer, EntailmentResult, Query, QueryError, QueryOptions, QueryStats, Trajectory};
use crate::ground::{ActionId, FluentId, GroundAtom, GroundTheory, Lit};
use crate::transition::{EffectSet, State, Transition};

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union_all(parent: &mut [usize], lits: impl IntoIterator<Item = Lit>) {
    let mut first: Option<usize> = None;
    for l in lits {
        let r = find(parent, l.fluent());
        match first {
            None => first = Some(r),
            Some(f) => {
                let f = find(parent, f);
                parent[r] = f;
            }
        }
    }
}

fn occurring(theory: &GroundTheory) -> BTreeSet<ActionId> {
    theory.occurrences.values().flatten().copied().collect()
}

/// Linked components of fluents, each sorted, in order of their smallest fluent.
pub fn components(theory: &GroundTheory) -> Vec<Vec<FluentId>> {
    let n = theory.fluents.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let occ = occurring(theory);
    for r in &theory.ramifications {
        union_all(&mut parent, r.body.iter().copied().chain(r.head));
    }
    for law in theory.causal_laws.iter().filter(|l| occ.contains(&l.action)) {
        union_all(&mut parent, law.condition.iter().copied().chain([law.effect]));
    }
    for p in theory.preconditions.iter().filter(|p| occ.contains(&p.action)) {
        union_all(&mut parent, p.condition.iter().copied());
    }
    let mut groups: BTreeMap<usize, Vec<FluentId>> = BTreeMap::new();
    for f in 0..n {
        let r = find(&mut parent, f);
        groups.entry(r).or_default().push(f);
    }
    let mut out: Vec<Vec<FluentId>> = groups.into_values().collect();
    out.sort();
    out
}

/// Fluents of the components that hold a goal fluent.
pub fn slice_fluents(theory: &GroundTheory, q: &Query) -> BTreeSet<FluentId> {
    let goal_fluents: BTreeSet<FluentId> = q
        .goals
        .iter()
        .filter_map(|(l, _)| GroundAtom::from_atom(&l.atom).and_then(|a| theory.fluent_id(&a)))
        .collect();
    components(theory).into_iter().filter(|c| c.iter().any(|f| goal_fluents.contains(f))).flatten().collect()
}

/// The sub-theory over `fluents`. With `keep_global`, statements that
/// mention no fluent but still rule out every model are kept too.
pub fn restrict(theory: &GroundTheory, fluents: &BTreeSet<FluentId>, keep_global: bool) -> GroundTheory {
    let map: BTreeMap<FluentId, usize> = fluents.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let tr = |l: &Lit| map.get(&l.fluent()).map(|f| Lit::new(*f, l.positive()));
    let all = |ls: &[Lit]| ls.iter().map(tr).collect::<Option<Vec<Lit>>>();
    let occ = occurring(theory);
    let mut out = GroundTheory {
        fluents: fluents.iter().map(|f| theory.fluents[*f].clone()).collect(),
        actions: theory.actions.clone(),
        constants: theory.constants.clone(),
        horizon: theory.horizon,
        open: fluents.iter().map(|f| theory.open[*f]).collect(),
        ..Default::default()
    };
    for law in theory.causal_laws.iter().filter(|l| occ.contains(&l.action)) {
        if let (Some(effect), Some(condition)) = (tr(&law.effect), all(&law.condition)) {
            out.causal_laws.push(crate::ground::CausalLaw { effect, condition, ..law.clone() });
        }
    }
    for r in &theory.ramifications {
        let global = r.head.is_none() && r.body.is_empty();
        if global && !keep_global {
            continue;
        }
        let head = match r.head {
            None => None,
            Some(h) => match tr(&h) {
                Some(h) => Some(h),
                None => continue,
            },
        };
        if let Some(body) = all(&r.body) {
            if global || head.is_some() || !body.is_empty() {
                out.ramifications.push(crate::ground::Ramification { head, body, source: r.source });
            }
        }
    }
    for p in theory.preconditions.iter().filter(|p| occ.contains(&p.action)) {
        if !p.satisfiable || p.condition.is_empty() {
            if keep_global && !p.satisfiable {
                out.preconditions.push(p.clone());
            }
            continue;
        }
        if let Some(condition) = all(&p.condition) {
            out.preconditions.push(crate::ground::Precondition { condition, ..p.clone() });
        }
    }
    let relevant: BTreeSet<ActionId> = out
        .causal_laws
        .iter()
        .map(|l| l.action)
        .chain(out.preconditions.iter().map(|p| p.action))
        .collect();
    for (t, acts) in &theory.occurrences {
        let kept: BTreeSet<ActionId> = acts.intersection(&relevant).copied().collect();
        if !kept.is_empty() {
            out.occurrences.insert(*t, kept);
        }
    }
    for o in &theory.observations {
        if let Some(literal) = tr(&o.literal) {
            out.observations.push(crate::ground::Observation { literal, time: o.time });
        }
    }
    out
}

/// The sub-theory relevant to the query's goals.
pub fn relevance_slice(theory: &GroundTheory, q: &Query) -> GroundTheory {
    restrict(theory, &slice_fluents(theory, q), true)
}

/// Reassembles a model of the full theory from models of disjoint parts.
fn merge(theory: &GroundTheory, parts: &[(Vec<FluentId>, Trajectory)], horizon: u32) -> Trajectory {
    let n = theory.fluents.len();
    let mut states = vec![State::new(n); horizon as usize + 1];
    let mut effects = vec![EffectSet::default(); horizon as usize];
    for (fluents, traj) in parts {
        let up = |l: &Lit| Lit::new(fluents[l.fluent()], l.positive());
        for (t, s) in traj.states.iter().enumerate() {
            for (i, f) in fluents.iter().enumerate() {
                states[t].set(*f, s.get(i));
            }
        }
        for (t, step) in traj.steps.iter().enumerate() {
            effects[t].applied.extend(step.effects.applied.iter().map(up));
            effects[t].changed.extend(step.effects.changed.iter().map(up));
        }
    }
    let steps = effects
        .into_iter()
        .enumerate()
        .map(|(t, e)| Transition {
            source: states[t].clone(),
            actions: theory.occurrences.get(&(t as u32)).cloned().unwrap_or_default(),
            target: states[t + 1].clone(),
            effects: e,
        })
        .collect();
    Trajectory { states, steps }
}

pub(super) fn answer_sliced(
    theory: &GroundTheory,
    q: &Query,
    opts: &QueryOptions,
    stats: &mut QueryStats,
) -> Result<EntailmentResult, QueryError> {
    let horizon = effective_horizon(theory, q);
    let inside = slice_fluents(theory, q);
    let sliced = restrict(theory, &inside, true);
    let mut result = answer_direct(&sliced, q, opts, stats)?;
    if result.answer == Answer::DomainInconsistent {
        return Ok(result);
    }
    let mut parts = Vec::new();
    for comp in components(theory).into_iter().filter(|c| !inside.contains(&c[0])) {
        let set: BTreeSet<FluentId> = comp.iter().copied().collect();
        let sub = restrict(theory, &set, false);
        match find_model(&sub, horizon, &[], opts, stats)? {
            None => {
                result.answer = Answer::DomainInconsistent;
                result.witness = None;
                return Ok(result);
            }
            Some(w) => parts.push((comp, w)),
        }
    }
    if let Some(w) = result.witness.take() {
        parts.push((inside.into_iter().collect(), w));
        result.witness = Some(merge(theory, &parts, horizon));
    }
    Ok(result)
}
