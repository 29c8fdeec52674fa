//! Random domain descriptions as source text, for property tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use lang_e::ground::{ground, GroundTheory};
use lang_e::parser::parse_domain;
use lang_e::sat::check_fragment;
use lang_e::syntax::{DomainDescription, TimePoint};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub fluents: usize,
    pub actions: usize,
    pub cprops: usize,
    pub rprops: usize,
    pub denials: usize,
    pub pprops: usize,
    pub occurrences: usize,
    pub observations: usize,
    pub horizon: u32,
}

impl Shape {
    /// Domains for single transitions: no narrative.
    pub fn transitions() -> Self {
        Shape { fluents: 6, actions: 3, cprops: 4, rprops: 2, denials: 1, pprops: 0, occurrences: 0, observations: 0, horizon: 1 }
    }

    /// Domains with a narrative, small enough to enumerate.
    pub fn narratives() -> Self {
        Shape { fluents: 5, actions: 3, cprops: 4, rprops: 2, denials: 1, pprops: 1, occurrences: 3, observations: 2, horizon: 3 }
    }
}

#[derive(Debug, Clone)]
pub struct RandomDomain {
    pub text: String,
    pub fluents: Vec<String>,
    pub horizon: u32,
}

impl RandomDomain {
    pub fn description(&self) -> DomainDescription {
        parse_domain(&self.text).unwrap_or_else(|e| panic!("{e}\n{}", self.text)).domain
    }

    pub fn theory(&self) -> GroundTheory {
        ground(&self.description(), TimePoint(self.horizon)).unwrap_or_else(|e| panic!("{e}\n{}", self.text))
    }
}

fn literal(rng: &mut StdRng, f: &str) -> String {
    if rng.gen_bool(0.5) {
        f.to_string()
    } else {
        format!("neg {f}")
    }
}

/// Up to `n` literals over distinct fluents.
fn condition(rng: &mut StdRng, fluents: &[String], n: usize) -> Vec<String> {
    let mut fs: Vec<&String> = fluents.iter().collect();
    fs.shuffle(rng);
    let k = rng.gen_range(0..=n.min(fs.len()));
    fs[..k].iter().map(|f| literal(rng, f)).collect()
}

fn set(lits: &[String]) -> String {
    if lits.is_empty() {
        "{ }".into()
    } else {
        format!("{{ {} }}", lits.join(", "))
    }
}

/// Zero-arity fluents `f0..`, actions `a0..`; counts are upper bounds.
pub fn random_domain(rng: &mut StdRng, shape: &Shape) -> RandomDomain {
    let nf = rng.gen_range(1..=shape.fluents);
    let na = rng.gen_range(1..=shape.actions);
    let fluents: Vec<String> = (0..nf).map(|i| format!("f{i}")).collect();
    let actions: Vec<String> = (0..na).map(|i| format!("a{i}")).collect();
    let mut lines = Vec::new();
    for f in &fluents {
        lines.push(format!("fluent {f}."));
    }
    for a in &actions {
        lines.push(format!("action {a}."));
    }
    for _ in 0..rng.gen_range(0..=shape.cprops) {
        let a = actions.choose(rng).unwrap();
        let f = fluents.choose(rng).unwrap();
        let kind = if rng.gen_bool(0.5) { "initiates" } else { "terminates" };
        let cond = condition(rng, &fluents, 2);
        if cond.is_empty() {
            lines.push(format!("{a} {kind} {f}."));
        } else {
            lines.push(format!("{a} {kind} {f} when {}.", set(&cond)));
        }
    }
    for _ in 0..rng.gen_range(0..=shape.rprops) {
        let h = fluents.choose(rng).unwrap();
        let head = literal(rng, h);
        let mut body = condition(rng, &fluents, 2);
        if body.is_empty() {
            let b = fluents.choose(rng).unwrap();
            let l = literal(rng, b);
            body.push(l);
        }
        lines.push(format!("{head} whenever {}.", set(&body)));
    }
    for _ in 0..rng.gen_range(0..=shape.denials) {
        let body = condition(rng, &fluents, 3);
        if body.len() >= 2 {
            lines.push(format!("false whenever {}.", set(&body)));
        }
    }
    for _ in 0..rng.gen_range(0..=shape.pprops) {
        let a = actions.choose(rng).unwrap();
        let c = condition(rng, &fluents, 1);
        if !c.is_empty() {
            lines.push(format!("{a} needs {}.", set(&c)));
        }
    }
    let mut seen = BTreeSet::new();
    for _ in 0..rng.gen_range(0..=shape.occurrences) {
        let a = actions.choose(rng).unwrap();
        let t = rng.gen_range(0..shape.horizon.max(1));
        if seen.insert((a.clone(), t)) {
            lines.push(format!("{a} happens-at {t}."));
        }
    }
    for _ in 0..rng.gen_range(0..=shape.observations) {
        let f = fluents.choose(rng).unwrap();
        let l = literal(rng, f);
        let t = rng.gen_range(0..=shape.horizon);
        lines.push(format!("{l} holds-at {t}."));
    }
    RandomDomain { text: lines.join("\n") + "\n", fluents, horizon: shape.horizon }
}

/// A random domain the propositional backend accepts.
pub fn random_fragment_domain(rng: &mut StdRng, shape: &Shape) -> RandomDomain {
    loop {
        let d = random_domain(rng, shape);
        if check_fragment(&d.theory()).accepted() {
            return d;
        }
    }
}

/// `n` goals within the horizon, comma separated.
pub fn random_goals(rng: &mut StdRng, d: &RandomDomain, n: usize) -> String {
    let mut goals = Vec::new();
    for _ in 0..n {
        let f = d.fluents.choose(rng).unwrap();
        let l = literal(rng, f);
        goals.push(format!("{l} holds-at {}", rng.gen_range(0..=d.horizon)));
    }
    goals.join(", ")
}

pub fn random_query(rng: &mut StdRng, d: &RandomDomain) -> String {
    let mode = if rng.gen_bool(0.5) { "credulous" } else { "skeptical" };
    let n = rng.gen_range(0..=2);
    format!("{mode} {{ {} }}", random_goals(rng, d, n))
}

/// A sorted domain with variables and disequalities, for round trips.
pub fn random_sorted_domain(rng: &mut StdRng) -> String {
    let consts: Vec<String> = (0..rng.gen_range(1..=3)).map(|i| format!("c{i}")).collect();
    let mut out = format!("sort s: {}.\nfluent p(s).\nfluent q(s, s).\nconstant fluent k(s).\naction a(s).\naction b.\n", consts.join(", "));
    let vars = ["X", "Y"];
    let term = |rng: &mut StdRng| -> String {
        if rng.gen_bool(0.6) {
            vars.choose(rng).unwrap().to_string()
        } else {
            consts.choose(rng).unwrap().clone()
        }
    };
    for _ in 0..rng.gen_range(0..6) {
        let x = term(rng);
        let y = term(rng);
        let stmt = match rng.gen_range(0..6) {
            0 => format!("a({x}) initiates p({x}) when {{ q({x}, {y}) }}."),
            1 => format!("b terminates q({x}, {y})."),
            2 => format!("neg p({x}) whenever {{ q({x}, {y}), {x} != {y} }}."),
            3 => format!("false whenever {{ p({x}), neg k({x}) }}."),
            4 => format!("a({x}) needs {{ neg p({x}) }}."),
            _ => {
                let c = consts.choose(rng).unwrap();
                match rng.gen_range(0..3) {
                    0 => format!("a({c}) happens-at {}.", rng.gen_range(0..4)),
                    1 => format!("k({c}) holds-at 0."),
                    _ => format!("neg q({c}, {c}) holds-at {}.", rng.gen_range(0..4)),
                }
            }
        };
        out.push_str(&stmt);
        out.push('\n');
    }
    out
}

/// Checks one random transition domain against the brute-force oracle on a
/// few random states and action sets. Returns a description of the first
/// mismatch.
pub fn oracle_check(rng: &mut StdRng, shape: &Shape) -> Result<(), String> {
    use lang_e::transition::{brute_force_successors, is_valid_transition, satisfies_constraints, successor_states, State};
    let d = random_domain(rng, shape);
    let t = d.theory();
    let n = t.fluents.len();
    for _ in 0..4 {
        let Some(s) = (0..32).map(|_| State::from_bits(n, rng.gen_range(0..1u64 << n))).find(|s| satisfies_constraints(&t, s)) else {
            return Ok(());
        };
        let actions: BTreeSet<usize> = (0..t.actions.len()).filter(|_| rng.gen_bool(0.5)).collect();
        let fast = successor_states(&t, &s, &actions);
        let slow = brute_force_successors(&t, &s, &actions, 16).map_err(|e| e.to_string())?;
        let targets = |v: &[lang_e::transition::Transition]| v.iter().map(|x| x.target.clone()).collect::<Vec<_>>();
        if targets(&fast) != targets(&slow) {
            return Err(format!(
                "{}\nstate {} actions {actions:?}: engine {:?} oracle {:?}",
                d.text,
                s.describe(&t),
                fast.iter().map(|x| x.target.describe(&t)).collect::<Vec<_>>(),
                slow.iter().map(|x| x.target.describe(&t)).collect::<Vec<_>>()
            ));
        }
        if let Some(bad) = fast.iter().find(|x| !is_valid_transition(&t, x)) {
            return Err(format!("{}\ninvalid engine transition to {}", d.text, bad.target.describe(&t)));
        }
    }
    Ok(())
}

/// Engine and propositional answers on one random accepted domain.
pub fn backend_check(rng: &mut StdRng, shape: &Shape, queries: usize) -> Result<(), String> {
    use lang_e::parser::parse_query;
    use lang_e::query::answer;
    use lang_e::sat::answer_sat;
    let d = random_fragment_domain(rng, shape);
    let desc = d.description();
    let t = d.theory();
    for _ in 0..queries {
        let text = random_query(rng, &d);
        let q = parse_query(&text, &desc.signature).map_err(|e| e.to_string())?;
        let engine = answer(&t, &q).map_err(|e| e.to_string())?.answer;
        let sat = answer_sat(&t, &q, None).map_err(|e| e.to_string())?.answer;
        if engine != sat {
            return Err(format!("{}\n{text}: engine {engine}, sat {sat}", d.text));
        }
    }
    Ok(())
}

/// Sliced and unsliced answers on one random domain and query.
pub fn slicing_check(rng: &mut StdRng, shape: &Shape) -> Result<(), String> {
    use lang_e::parser::parse_query;
    use lang_e::query::{answer_with, QueryOptions};
    let d = random_domain(rng, shape);
    let desc = d.description();
    let t = d.theory();
    let text = random_query(rng, &d);
    let q = parse_query(&text, &desc.signature).map_err(|e| e.to_string())?;
    let plain = answer_with(&t, &q, &QueryOptions { budget: None, slice: false }).map_err(|e| e.to_string())?;
    let sliced = answer_with(&t, &q, &QueryOptions { budget: None, slice: true }).map_err(|e| e.to_string())?;
    if plain.answer != sliced.answer {
        return Err(format!("{}\n{text}: unsliced {}, sliced {}", d.text, plain.answer, sliced.answer));
    }
    Ok(())
}

/// A random CNF over at most `max_vars` variables.
pub fn random_cnf(rng: &mut StdRng, max_vars: u32) -> (u32, Vec<Vec<i32>>) {
    let n = rng.gen_range(1..=max_vars);
    let m = rng.gen_range(0..=(n as usize * 5));
    let clauses = (0..m)
        .map(|_| {
            let k = rng.gen_range(1..=3);
            (0..k)
                .map(|_| {
                    let v = rng.gen_range(1..=n) as i32;
                    if rng.gen_bool(0.5) {
                        v
                    } else {
                        -v
                    }
                })
                .collect()
        })
        .collect();
    (n, clauses)
}

/// Solver against truth-table enumeration on one random CNF.
pub fn solver_check(rng: &mut StdRng, max_vars: u32) -> Result<(), String> {
    use lang_e::sat::{solve_clauses, SolveResult, SolverStats};
    let (n, clauses) = random_cnf(rng, max_vars);
    let sat_by = |bits: u32| clauses.iter().all(|c| c.iter().any(|l| (bits >> (l.unsigned_abs() - 1) & 1 == 1) == (*l > 0)));
    let table = (0..1u32 << n).any(sat_by);
    match solve_clauses(n, &clauses, &[], None, &mut SolverStats::default()).map_err(|e| e.to_string())? {
        SolveResult::Sat(m) => {
            let bits = m.iter().enumerate().fold(0u32, |b, (i, v)| b | (*v as u32) << i);
            if !table || !sat_by(bits) {
                return Err(format!("{n} vars {clauses:?}: bad model {m:?}"));
            }
        }
        SolveResult::Unsat if table => return Err(format!("{n} vars {clauses:?}: reported unsat")),
        SolveResult::Unsat => {}
    }
    Ok(())
}

/// Runs `check` on `runs` seeds derived from `seed`; returns the failures.
pub fn count_failures(seed: u64, runs: usize, mut check: impl FnMut(&mut StdRng) -> Result<(), String>) -> Vec<String> {
    use rand::SeedableRng;
    (0..runs)
        .filter_map(|i| check(&mut StdRng::seed_from_u64(seed.wrapping_mul(1_000_003).wrapping_add(i as u64))).err())
        .collect()
}
