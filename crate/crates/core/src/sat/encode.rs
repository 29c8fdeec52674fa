//! Bounded-horizon CNF encoding.
//!
//! Per step `t -> t+1`:
//! - `d` holds when a law of an occurring action has its condition true at `t`;
//! - `g` holds when a ramification body is true at `t+1` and one of its
//!   body literals is caused;
//! - `c(l)` is the disjunction of the `d` and `g` with effect `l`;
//! - a caused literal is true at `t+1`, and no literal is caused together
//!   with its complement;
//! - explanation closure: a fluent that changes value has a cause.
//!
//! Ramification statements and denials hold at every time point.

use std::collections::BTreeMap;

use super::fragment::check_fragment;
use super::SatError;
use crate::ground::{GroundTheory, Lit};

/// A CNF over integer literals: variable `v` is `v`, its negation `-v`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CnfInstance {
    pub num_vars: u32,
    pub clauses: Vec<Vec<i32>>,
    /// Per clause: the statement or axiom it encodes.
    pub provenance: Vec<String>,
    /// Per variable (index `v - 1`): a readable name.
    pub var_names: Vec<String>,
    pub horizon: u32,
    pub fluents: usize,
}

impl CnfInstance {
    /// Variable for fluent `f` at time `t`. Fluent variables come first.
    pub fn fluent_var(&self, f: usize, t: u32) -> i32 {
        (t as usize * self.fluents + f + 1) as i32
    }

    pub fn lit(&self, l: Lit, t: u32) -> i32 {
        let v = self.fluent_var(l.fluent(), t);
        if l.positive() {
            v
        } else {
            -v
        }
    }

    pub fn new_var(&mut self, name: String) -> i32 {
        self.num_vars += 1;
        self.var_names.push(name);
        self.num_vars as i32
    }

    pub fn add(&mut self, clause: Vec<i32>, why: impl Into<String>) {
        self.clauses.push(clause);
        self.provenance.push(why.into());
    }

    /// Provenance sidecar: one `clause-id<TAB>source` line per clause, ids from 1.
    pub fn provenance_map(&self) -> String {
        self.provenance.iter().enumerate().map(|(i, p)| format!("{}\t{p}\n", i + 1)).collect()
    }
}

pub fn compile(theory: &GroundTheory) -> Result<CnfInstance, SatError> {
    compile_horizon(theory, theory.horizon)
}

pub fn compile_horizon(theory: &GroundTheory, horizon: u32) -> Result<CnfInstance, SatError> {
    let report = check_fragment(theory);
    if !report.accepted() {
        return Err(SatError::Fragment(report));
    }
    let n = theory.fluents.len();
    let mut cnf = CnfInstance { horizon, fluents: n, ..Default::default() };
    for t in 0..=horizon {
        for f in &theory.fluents {
            cnf.new_var(format!("{f}@{t}"));
        }
    }
    let name = |l: Lit| theory.lit_string(l);

    for t in 0..=horizon {
        for r in &theory.ramifications {
            let mut c: Vec<i32> = r.body.iter().map(|b| -cnf.lit(*b, t)).collect();
            c.extend(r.head.map(|h| cnf.lit(h, t)));
            cnf.add(c, format!("statement {} at {t}", r.source));
        }
    }
    for o in theory.observations.iter().filter(|o| o.time <= horizon) {
        let l = cnf.lit(o.literal, o.time);
        cnf.add(vec![l], format!("observation {} at {}", name(o.literal), o.time));
    }
    for (t, acts) in theory.occurrences.range(..=horizon) {
        for p in theory.preconditions.iter().filter(|p| acts.contains(&p.action)) {
            if !p.satisfiable {
                cnf.add(vec![], format!("statement {} at {t}: impossible precondition", p.source));
                continue;
            }
            for c in &p.condition {
                let l = cnf.lit(*c, *t);
                cnf.add(vec![l], format!("statement {} at {t}", p.source));
            }
        }
    }

    for t in 0..horizon {
        let acts = theory.occurrences.get(&t);
        let mut causes: BTreeMap<Lit, Vec<i32>> = BTreeMap::new();
        for law in theory.causal_laws.iter().filter(|l| acts.is_some_and(|a| a.contains(&l.action))) {
            let d = cnf.new_var(format!("direct({}, {})@{t}", theory.actions[law.action], name(law.effect)));
            let why = format!("statement {} at {t}", law.source);
            for c in &law.condition {
                let l = cnf.lit(*c, t);
                cnf.add(vec![-d, l], why.clone());
            }
            let mut back: Vec<i32> = law.condition.iter().map(|c| -cnf.lit(*c, t)).collect();
            back.push(d);
            cnf.add(back, why);
            causes.entry(law.effect).or_default().push(d);
        }
        // Cause variables for every literal, defined after the rule gates that use them.
        let cause: Vec<i32> = (0..2 * n)
            .map(|code| cnf.new_var(format!("cause({})@{t}", name(Lit::new(code / 2, code % 2 == 1)))))
            .collect();
        for r in &theory.ramifications {
            let Some(h) = r.head else { continue };
            let g = cnf.new_var(format!("indirect(statement {}, {})@{t}", r.source, name(h)));
            let why = format!("statement {} from {t} to {}", r.source, t + 1);
            for b in &r.body {
                let l = cnf.lit(*b, t + 1);
                cnf.add(vec![-g, l], why.clone());
            }
            let mut any = vec![-g];
            any.extend(r.body.iter().map(|b| cause[b.code()]));
            cnf.add(any, why.clone());
            for b in &r.body {
                let mut c: Vec<i32> = r.body.iter().map(|x| -cnf.lit(*x, t + 1)).collect();
                c.push(-cause[b.code()]);
                c.push(g);
                cnf.add(c, why.clone());
            }
            causes.entry(h).or_default().push(g);
        }
        for code in 0..2 * n {
            let l = Lit::new(code / 2, code % 2 == 1);
            let c = cause[code];
            let list = causes.get(&l).cloned().unwrap_or_default();
            let mut def = vec![-c];
            def.extend(&list);
            cnf.add(def, format!("causes of {} at {t}", name(l)));
            for x in list {
                cnf.add(vec![-x, c], format!("causes of {} at {t}", name(l)));
            }
            let next = cnf.lit(l, t + 1);
            cnf.add(vec![-c, next], format!("effect {} at {}", name(l), t + 1));
            if l.positive() {
                cnf.add(vec![-c, -cause[l.negate().code()]], format!("consistent effects on {} at {t}", theory.fluents[l.fluent()]));
            }
            // Explanation closure: l false at t and true at t+1 needs a cause.
            let now = cnf.lit(l.negate(), t);
            cnf.add(vec![-now, -next, c], format!("frame axiom for {} at {t}", name(l)));
        }
    }
    Ok(cnf)
}
