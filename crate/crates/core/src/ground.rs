//! Grounding: instantiate sorted statements over their sort extensions,
//! evaluate disequalities, and fold the constant (static) fluents out of
//! the theory under the closed-world assumption.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use indexmap::IndexSet;
use thiserror::Error;

use crate::syntax::{
    validate, Atom, Condition, Diagnostic, DomainDescription, EffectKind, FluentLiteral, Proposition, Signature, Term,
    TimePoint,
};

pub type FluentId = usize;
pub type ActionId = usize;

/// A ground dynamic fluent literal, indexed into [`GroundTheory::fluents`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit {
    fluent: u32,
    positive: bool,
}

impl Lit {
    pub fn new(fluent: FluentId, positive: bool) -> Self {
        Lit { fluent: fluent as u32, positive }
    }

    pub fn fluent(self) -> FluentId {
        self.fluent as usize
    }

    pub fn positive(self) -> bool {
        self.positive
    }

    pub fn negate(self) -> Lit {
        Lit { fluent: self.fluent, positive: !self.positive }
    }

    /// Dense index: `2 * fluent + polarity`.
    pub fn code(self) -> usize {
        self.fluent as usize * 2 + self.positive as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundAtom {
    pub name: String,
    pub args: Vec<String>,
}

impl GroundAtom {
    pub fn new(name: impl Into<String>, args: &[&str]) -> Self {
        GroundAtom { name: name.into(), args: args.iter().map(|s| s.to_string()).collect() }
    }

    /// `None` if the atom still contains variables.
    pub fn from_atom(atom: &Atom) -> Option<Self> {
        let args = atom
            .args
            .iter()
            .map(|t| match t {
                Term::Const(c) => Some(c.clone()),
                Term::Var(_) => None,
            })
            .collect::<Option<Vec<_>>>()?;
        Some(GroundAtom { name: atom.name.clone(), args })
    }

    pub fn to_atom(&self) -> Atom {
        Atom::new(self.name.clone(), self.args.iter().map(|a| Term::Const(a.clone())).collect())
    }
}

impl fmt::Display for GroundAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if !self.args.is_empty() {
            write!(f, "({})", self.args.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CausalLaw {
    pub action: ActionId,
    pub effect: Lit,
    pub condition: Vec<Lit>,
    /// Index of the statement this instance came from.
    pub source: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ramification {
    /// `None` for a denial.
    pub head: Option<Lit>,
    pub body: Vec<Lit>,
    pub source: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Precondition {
    pub action: ActionId,
    pub condition: Vec<Lit>,
    /// False when a constant literal of the condition is false, or the
    /// condition is contradictory: the action can then never occur.
    pub satisfiable: bool,
    pub source: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Observation {
    pub literal: Lit,
    pub time: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
pub struct GroundStats {
    pub fluents: usize,
    pub constant_atoms: usize,
    pub constant_true: usize,
    pub actions: usize,
    pub cprops: usize,
    pub rprops: usize,
    pub denials: usize,
    pub pprops: usize,
    pub occurrences: usize,
    pub observations: usize,
    /// Sum of condition and head literal occurrences over all laws.
    pub literal_occurrences: usize,
    /// Law instances plus one frame axiom per fluent: a per-time-point
    /// clause estimate.
    pub per_time_point: usize,
}

impl fmt::Display for GroundStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.rows() {
            writeln!(f, "{k}\t{v}")?;
        }
        Ok(())
    }
}

impl GroundStats {
    pub fn rows(&self) -> Vec<(&'static str, usize)> {
        vec![
            ("fluents", self.fluents),
            ("constant_atoms", self.constant_atoms),
            ("constant_true", self.constant_true),
            ("actions", self.actions),
            ("cprops", self.cprops),
            ("rprops", self.rprops),
            ("denials", self.denials),
            ("pprops", self.pprops),
            ("occurrences", self.occurrences),
            ("observations", self.observations),
            ("literal_occurrences", self.literal_occurrences),
            ("per_time_point", self.per_time_point),
        ]
    }
}

/// A fully instantiated propositional theory over a bounded horizon.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GroundTheory {
    /// Dynamic (non-constant) ground fluents in declaration order.
    pub fluents: IndexSet<GroundAtom>,
    pub actions: IndexSet<GroundAtom>,
    /// Every ground constant-fluent atom with its closed-world value.
    pub constants: BTreeMap<GroundAtom, bool>,
    pub causal_laws: Vec<CausalLaw>,
    pub ramifications: Vec<Ramification>,
    pub preconditions: Vec<Precondition>,
    pub occurrences: BTreeMap<u32, BTreeSet<ActionId>>,
    pub observations: Vec<Observation>,
    pub horizon: u32,
    /// Per fluent: true unless a time-0 observation fixes its value.
    pub open: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroundError {
    #[error("domain does not validate: {}", .0.iter().map(|d| d.message.as_str()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
    #[error("horizon {horizon} is before time point {needed} mentioned in the domain")]
    HorizonTooSmall { horizon: u32, needed: u32 },
    #[error("constant fluent {atom} observed {observed} at time {time}, but its closed-world value is {value}")]
    ConstantConflict { atom: String, time: u32, observed: bool, value: bool },
    #[error("constant fluents are contradictory: {0}")]
    ConstantContradiction(String),
}

impl GroundTheory {
    pub fn fluent_id(&self, atom: &GroundAtom) -> Option<FluentId> {
        self.fluents.get_index_of(atom)
    }

    pub fn action_id(&self, atom: &GroundAtom) -> Option<ActionId> {
        self.actions.get_index_of(atom)
    }

    pub fn lit_string(&self, lit: Lit) -> String {
        let a = &self.fluents[lit.fluent()];
        if lit.positive() {
            a.to_string()
        } else {
            format!("neg {a}")
        }
    }

    pub fn last_time(&self) -> u32 {
        let occ = self.occurrences.keys().next_back().copied().unwrap_or(0);
        let obs = self.observations.iter().map(|o| o.time).max().unwrap_or(0);
        occ.max(obs)
    }

    /// Returns a copy with a larger horizon. Ground content is unchanged.
    pub fn with_horizon(&self, horizon: u32) -> GroundTheory {
        GroundTheory { horizon: horizon.max(self.horizon), ..self.clone() }
    }

    pub fn stats(&self) -> GroundStats {
        report_stats(self)
    }
}

fn cond_string(theory: &GroundTheory, lits: &[Lit]) -> String {
    if lits.is_empty() {
        "{ }".into()
    } else {
        format!("{{ {} }}", lits.iter().map(|l| theory.lit_string(*l)).collect::<Vec<_>>().join(", "))
    }
}

/// Line-oriented dump of a ground theory in the surface syntax.
pub fn dump(theory: &GroundTheory) -> String {
    let mut out = String::new();
    for (atom, v) in &theory.constants {
        if *v {
            out.push_str(&format!("{atom} holds-at 0.\n"));
        }
    }
    for law in &theory.causal_laws {
        let kw = if law.effect.positive() { "initiates" } else { "terminates" };
        let f = &theory.fluents[law.effect.fluent()];
        if law.condition.is_empty() {
            out.push_str(&format!("{} {kw} {f}.\n", theory.actions[law.action]));
        } else {
            out.push_str(&format!(
                "{} {kw} {f} when {}.\n",
                theory.actions[law.action],
                cond_string(theory, &law.condition)
            ));
        }
    }
    for r in &theory.ramifications {
        let head = r.head.map(|h| theory.lit_string(h)).unwrap_or_else(|| "false".into());
        out.push_str(&format!("{head} whenever {}.\n", cond_string(theory, &r.body)));
    }
    for p in &theory.preconditions {
        if p.satisfiable {
            out.push_str(&format!("{} needs {}.\n", theory.actions[p.action], cond_string(theory, &p.condition)));
        } else {
            out.push_str(&format!("{} needs {{ false }}.\n", theory.actions[p.action]));
        }
    }
    for (t, acts) in &theory.occurrences {
        for a in acts {
            out.push_str(&format!("{} happens-at {t}.\n", theory.actions[*a]));
        }
    }
    for o in &theory.observations {
        out.push_str(&format!("{} holds-at {}.\n", theory.lit_string(o.literal), o.time));
    }
    out
}

pub fn report_stats(theory: &GroundTheory) -> GroundStats {
    let lits = theory.causal_laws.iter().map(|l| l.condition.len() + 1).sum::<usize>()
        + theory.ramifications.iter().map(|r| r.body.len() + r.head.is_some() as usize).sum::<usize>()
        + theory.preconditions.iter().map(|p| p.condition.len()).sum::<usize>();
    let cprops = theory.causal_laws.len();
    let rprops = theory.ramifications.len();
    let pprops = theory.preconditions.len();
    GroundStats {
        fluents: theory.fluents.len(),
        constant_atoms: theory.constants.len(),
        constant_true: theory.constants.values().filter(|v| **v).count(),
        actions: theory.actions.len(),
        cprops,
        rprops,
        denials: theory.ramifications.iter().filter(|r| r.head.is_none()).count(),
        pprops,
        occurrences: theory.occurrences.values().map(|s| s.len()).sum(),
        observations: theory.observations.len(),
        literal_occurrences: lits,
        per_time_point: cprops + rprops + pprops + theory.fluents.len(),
    }
}

type Subst = BTreeMap<String, String>;

fn instantiate(atom: &Atom, subst: &Subst) -> GroundAtom {
    GroundAtom {
        name: atom.name.clone(),
        args: atom
            .args
            .iter()
            .map(|t| match t {
                Term::Const(c) => c.clone(),
                Term::Var(v) => subst[v].clone(),
            })
            .collect(),
    }
}

fn term_value<'a>(t: &'a Term, subst: &'a Subst) -> Option<&'a str> {
    match t {
        Term::Const(c) => Some(c),
        Term::Var(v) => subst.get(v).map(|s| s.as_str()),
    }
}

/// Enumerates substitutions for the statement's variables, pruning on
/// disequalities as soon as both sides are bound.
fn substitutions(sig: &Signature, prop: &Proposition) -> Vec<Subst> {
    let vars = crate::syntax::variable_sorts(sig, prop);
    let diseqs: &[(Term, Term)] = prop.condition().map(|c| c.disequalities.as_slice()).unwrap_or(&[]);
    let mut out = Vec::new();
    let mut subst = Subst::new();
    fn rec(
        sig: &Signature,
        vars: &[(String, String)],
        diseqs: &[(Term, Term)],
        i: usize,
        subst: &mut Subst,
        out: &mut Vec<Subst>,
    ) {
        let violated = diseqs.iter().any(|(a, b)| match (term_value(a, subst), term_value(b, subst)) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        });
        if violated {
            return;
        }
        if i == vars.len() {
            out.push(subst.clone());
            return;
        }
        let (v, sort) = &vars[i];
        for c in sig.sort(sort).unwrap_or(&[]) {
            subst.insert(v.clone(), c.clone());
            rec(sig, vars, diseqs, i + 1, subst, out);
        }
        subst.remove(v);
    }
    rec(sig, &vars, diseqs, 0, &mut subst, &mut out);
    out
}

fn all_ground_atoms(sig: &Signature, name: &str, sorts: &[String]) -> Vec<GroundAtom> {
    let mut out = vec![Vec::new()];
    for s in sorts {
        let members = sig.sort(s).unwrap_or(&[]);
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<String>| {
                members.iter().map(move |m| {
                    let mut p = prefix.clone();
                    p.push(m.clone());
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(|args| GroundAtom { name: name.to_string(), args }).collect()
}

fn is_constant_only(sig: &Signature, head: &Option<FluentLiteral>, cond: &Condition) -> bool {
    head.iter().all(|h| sig.is_constant_fluent(&h.atom.name))
        && cond.literals.iter().all(|l| sig.is_constant_fluent(&l.atom.name))
}

type GroundLit = (GroundAtom, bool);

/// Closed-world closure of the constant fluents: time-0 facts plus the
/// least fixpoint of the constant-only ramifications.
fn close_constants(domain: &DomainDescription) -> Result<BTreeMap<GroundAtom, bool>, GroundError> {
    let sig = &domain.signature;
    let mut facts: BTreeSet<GroundAtom> = BTreeSet::new();
    let mut rules: Vec<(Option<GroundLit>, Vec<GroundLit>)> = Vec::new();
    for prop in &domain.propositions {
        match prop {
            Proposition::Holds { literal, time } if sig.is_constant_fluent(&literal.atom.name) => {
                if time.0 == 0 && literal.positive {
                    facts.insert(GroundAtom::from_atom(&literal.atom).expect("validated ground"));
                }
            }
            Proposition::Whenever { head, condition } if is_constant_only(sig, head, condition) => {
                for s in substitutions(sig, prop) {
                    let h = head.as_ref().map(|h| (instantiate(&h.atom, &s), h.positive));
                    let body = condition.literals.iter().map(|l| (instantiate(&l.atom, &s), l.positive)).collect();
                    rules.push((h, body));
                }
            }
            _ => {}
        }
    }
    let holds = |facts: &BTreeSet<GroundAtom>, body: &[(GroundAtom, bool)]| {
        body.iter().all(|(a, pos)| facts.contains(a) == *pos)
    };
    loop {
        let mut changed = false;
        for (head, body) in &rules {
            if let Some((h, true)) = head {
                if !facts.contains(h) && holds(&facts, body) {
                    facts.insert(h.clone());
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    for (head, body) in &rules {
        if !holds(&facts, body) {
            continue;
        }
        match head {
            None => {
                return Err(GroundError::ConstantContradiction(format!(
                    "denial over {} is violated",
                    body.iter().map(|(a, _)| a.to_string()).collect::<Vec<_>>().join(", ")
                )))
            }
            Some((h, false)) if facts.contains(h) => {
                return Err(GroundError::ConstantContradiction(format!("{h} is both derived and denied")))
            }
            _ => {}
        }
    }
    let mut constants = BTreeMap::new();
    for decl in sig.fluents.iter().filter(|f| f.constant) {
        for a in all_ground_atoms(sig, &decl.name, &decl.args) {
            let v = facts.contains(&a);
            constants.insert(a, v);
        }
    }
    for prop in &domain.propositions {
        if let Proposition::Holds { literal, time } = prop {
            if sig.is_constant_fluent(&literal.atom.name) {
                let a = GroundAtom::from_atom(&literal.atom).expect("validated ground");
                let v = constants[&a];
                if v != literal.positive {
                    return Err(GroundError::ConstantConflict {
                        atom: a.to_string(),
                        time: time.0,
                        observed: literal.positive,
                        value: v,
                    });
                }
            }
        }
    }
    Ok(constants)
}

enum CondValue {
    /// Some literal is false (or the condition is contradictory).
    False,
    /// Residual dynamic literals.
    Residue(Vec<Lit>),
}

struct Grounder<'a> {
    sig: &'a Signature,
    constants: BTreeMap<GroundAtom, bool>,
    fluents: IndexSet<GroundAtom>,
    actions: IndexSet<GroundAtom>,
}

impl Grounder<'_> {
    fn lit(&self, l: &FluentLiteral, s: &Subst) -> Result<Lit, bool> {
        let a = instantiate(&l.atom, s);
        if let Some(v) = self.constants.get(&a) {
            return Err(*v == l.positive);
        }
        let id = self.fluents.get_index_of(&a).expect("dynamic fluent registered");
        Ok(Lit::new(id, l.positive))
    }

    fn condition(&self, cond: &Condition, s: &Subst) -> CondValue {
        let mut out: Vec<Lit> = Vec::new();
        for l in &cond.literals {
            match self.lit(l, s) {
                Err(true) => {}
                Err(false) => return CondValue::False,
                Ok(lit) => {
                    if out.contains(&lit.negate()) {
                        return CondValue::False;
                    }
                    if !out.contains(&lit) {
                        out.push(lit);
                    }
                }
            }
        }
        CondValue::Residue(out)
    }

    fn action(&self, a: &Atom, s: &Subst) -> ActionId {
        self.actions.get_index_of(&instantiate(a, s)).expect("action registered")
    }
}

/// Grounds a validated domain over `horizon`.
pub fn ground(domain: &DomainDescription, horizon: TimePoint) -> Result<GroundTheory, GroundError> {
    let diags: Vec<Diagnostic> = validate(domain).into_iter().filter(|d| d.is_error()).collect();
    if !diags.is_empty() {
        return Err(GroundError::Invalid(diags));
    }
    let needed = domain.max_time();
    if horizon < needed {
        return Err(GroundError::HorizonTooSmall { horizon: horizon.0, needed: needed.0 });
    }
    let sig = &domain.signature;
    let constants = close_constants(domain)?;
    let mut fluents = IndexSet::new();
    for decl in sig.fluents.iter().filter(|f| !f.constant) {
        fluents.extend(all_ground_atoms(sig, &decl.name, &decl.args));
    }
    let mut actions = IndexSet::new();
    for decl in &sig.actions {
        actions.extend(all_ground_atoms(sig, &decl.name, &decl.args));
    }
    let g = Grounder { sig, constants, fluents, actions };

    let mut theory = GroundTheory { horizon: horizon.0, ..Default::default() };
    for (idx, prop) in domain.propositions.iter().enumerate() {
        match prop {
            Proposition::Holds { literal, time } => {
                if let Ok(l) = g.lit(literal, &Subst::new()) {
                    let o = Observation { literal: l, time: time.0 };
                    if !theory.observations.contains(&o) {
                        theory.observations.push(o);
                    }
                }
            }
            Proposition::Happens { action, time } => {
                let a = g.action(action, &Subst::new());
                theory.occurrences.entry(time.0).or_default().insert(a);
            }
            Proposition::Causes { action, kind, fluent, condition } => {
                for s in substitutions(g.sig, prop) {
                    let CondValue::Residue(cond) = g.condition(condition, &s) else { continue };
                    let positive = *kind == EffectKind::Initiates;
                    let effect = g.lit(&FluentLiteral { atom: fluent.clone(), positive }, &s).expect("dynamic effect");
                    theory.causal_laws.push(CausalLaw { action: g.action(action, &s), effect, condition: cond, source: idx });
                }
            }
            Proposition::Whenever { head, condition } => {
                if is_constant_only(g.sig, head, condition) {
                    continue;
                }
                for s in substitutions(g.sig, prop) {
                    let CondValue::Residue(body) = g.condition(condition, &s) else { continue };
                    let head = head.as_ref().map(|h| g.lit(h, &s).expect("dynamic head"));
                    if let Some(h) = head {
                        // Trivially satisfied instances.
                        if body.contains(&h) {
                            continue;
                        }
                    }
                    theory.ramifications.push(Ramification { head, body, source: idx });
                }
            }
            Proposition::Needs { action, condition } => {
                for s in substitutions(g.sig, prop) {
                    let action = g.action(action, &s);
                    let p = match g.condition(condition, &s) {
                        CondValue::False => {
                            Precondition { action, condition: Vec::new(), satisfiable: false, source: idx }
                        }
                        CondValue::Residue(c) => Precondition { action, condition: c, satisfiable: true, source: idx },
                    };
                    theory.preconditions.push(p);
                }
            }
        }
    }
    theory.open = (0..g.fluents.len())
        .map(|f| !theory.observations.iter().any(|o| o.time == 0 && o.literal.fluent() == f))
        .collect();
    theory.fluents = g.fluents;
    theory.actions = g.actions;
    theory.constants = g.constants;
    Ok(theory)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_domain;

    fn bulb() -> DomainDescription {
        parse_domain(include_str!("../corpus/bulb.e")).unwrap().domain
    }

    #[test]
    fn bulb_counts() {
        let t = ground(&bulb(), TimePoint(4)).unwrap();
        let s = report_stats(&t);
        assert_eq!((s.fluents, s.cprops, s.rprops, s.pprops), (2, 3, 1, 1));
        assert_eq!(s.occurrences, 1);
        assert_eq!(s.observations, 1);
        assert_eq!(t.open, vec![true, false]);
    }

    #[test]
    fn empty_theory_stats_are_zero() {
        let t = ground(&DomainDescription::default(), TimePoint(0)).unwrap();
        assert_eq!(report_stats(&t), GroundStats::default());
    }

    #[test]
    fn symmetry_closure() {
        let src = "sort position: p1, p2, p3.\nconstant fluent neighbor_pos(position, position).\n\
                   neighbor_pos(P1, P2) whenever { neighbor_pos(P2, P1) }.\n\
                   neighbor_pos(p1, p2) holds-at 0.";
        let t = ground(&parse_domain(src).unwrap().domain, TimePoint(0)).unwrap();
        assert!(t.constants[&GroundAtom::new("neighbor_pos", &["p2", "p1"])]);
        assert!(!t.constants[&GroundAtom::new("neighbor_pos", &["p1", "p3"])]);
        assert_eq!(t.constants.len(), 9);
        assert!(t.ramifications.is_empty());
    }

    #[test]
    fn unsatisfiable_disequality_yields_no_instances() {
        let src = "sort s: only.\nfluent f(s). fluent g(s).\nf(X) whenever { g(Y), X != Y }.";
        let t = ground(&parse_domain(src).unwrap().domain, TimePoint(0)).unwrap();
        assert!(t.ramifications.is_empty());
    }

    #[test]
    fn mixed_ramification_keeps_dynamic_residue() {
        let src = "sort animal: a, b.\nconstant fluent adult(animal).\nfluent large(animal). fluent fed(animal).\n\
                   large(A) whenever { adult(A), fed(A) }.\nadult(a) holds-at 0.";
        let t = ground(&parse_domain(src).unwrap().domain, TimePoint(0)).unwrap();
        assert_eq!(t.ramifications.len(), 1);
        let r = &t.ramifications[0];
        assert_eq!(t.lit_string(r.head.unwrap()), "large(a)");
        assert_eq!(r.body.iter().map(|l| t.lit_string(*l)).collect::<Vec<_>>(), vec!["fed(a)"]);
    }

    #[test]
    fn constant_conflicts_are_errors() {
        let src = "constant fluent c. fluent f.\nc holds-at 0.\nneg c holds-at 3.";
        let e = ground(&parse_domain(src).unwrap().domain, TimePoint(3)).unwrap_err();
        assert!(matches!(e, GroundError::ConstantConflict { time: 3, .. }));

        let src = "constant fluent c. constant fluent d.\nc holds-at 0.\nneg d whenever { c }.\nd whenever { c }.";
        let e = ground(&parse_domain(src).unwrap().domain, TimePoint(0)).unwrap_err();
        assert!(matches!(e, GroundError::ConstantContradiction(_)));

        let src = "constant fluent c.\nc holds-at 0.\nfalse whenever { c }.";
        assert!(ground(&parse_domain(src).unwrap().domain, TimePoint(0)).is_err());
    }

    #[test]
    fn horizon_must_cover_domain() {
        let e = ground(&bulb(), TimePoint(1)).unwrap_err();
        assert_eq!(e, GroundError::HorizonTooSmall { horizon: 1, needed: 2 });
    }

    #[test]
    fn impossible_precondition_is_kept() {
        let src = "constant fluent c. fluent f. action a.\na needs { c }.\na initiates f when { c }.";
        let t = ground(&parse_domain(src).unwrap().domain, TimePoint(0)).unwrap();
        assert_eq!(t.preconditions.len(), 1);
        assert!(!t.preconditions[0].satisfiable);
        assert!(t.causal_laws.is_empty());
    }

    #[test]
    fn extending_the_horizon_only_extends() {
        let d = bulb();
        let t4 = ground(&d, TimePoint(4)).unwrap();
        let t9 = ground(&d, TimePoint(9)).unwrap();
        assert_eq!(t9, t4.with_horizon(9));
        assert_eq!(dump(&t4), dump(&t9));
    }

    #[test]
    fn dump_lists_every_instance() {
        let t = ground(&bulb(), TimePoint(4)).unwrap();
        let text = dump(&t);
        assert!(text.contains("SwitchOn initiates Light when { Normal }."));
        assert!(text.contains("neg Light whenever { neg Normal }."));
        assert_eq!(text.lines().count(), 7);
    }
}
