//! Syntactic test for the fragment the propositional encoding handles:
//! deterministic actions, no conflicting concurrent effects, and acyclic
//! ramifications.

use std::collections::BTreeSet;
use std::fmt;

use crate::ground::{CausalLaw, GroundTheory, Lit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    NondeterministicAction,
    ConflictingConcurrencyPossible,
    CyclicRamifications,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::NondeterministicAction => "nondeterministic-action",
            ViolationKind::ConflictingConcurrencyPossible => "conflicting-concurrency-possible",
            ViolationKind::CyclicRamifications => "cyclic-ramifications",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub location: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, serde::Serialize)]
pub struct FragmentReport {
    pub violations: Vec<Violation>,
}

impl FragmentReport {
    pub fn accepted(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

impl fmt::Display for FragmentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.accepted() {
            return writeln!(f, "accepted");
        }
        for v in &self.violations {
            writeln!(f, "{}: {}", v.kind, v.location)?;
        }
        Ok(())
    }
}

struct Reach {
    /// Literal code to the literals reachable through ramification heads.
    sets: Vec<BTreeSet<Lit>>,
}

impl Reach {
    fn new(theory: &GroundTheory) -> Self {
        let n2 = 2 * theory.fluents.len();
        let mut by_body: Vec<Vec<Lit>> = vec![Vec::new(); n2];
        for r in &theory.ramifications {
            if let Some(h) = r.head {
                for b in &r.body {
                    by_body[b.code()].push(h);
                }
            }
        }
        let sets = (0..n2)
            .map(|code| {
                let start = Lit::new(code / 2, code % 2 == 1);
                let mut seen = BTreeSet::from([start]);
                let mut stack = vec![start];
                while let Some(l) = stack.pop() {
                    for h in &by_body[l.code()] {
                        if seen.insert(*h) {
                            stack.push(*h);
                        }
                    }
                }
                seen
            })
            .collect();
        Reach { sets }
    }

    fn get(&self, l: Lit) -> &BTreeSet<Lit> {
        &self.sets[l.code()]
    }
}

fn jointly_satisfiable(a: &[Lit], b: &[Lit]) -> bool {
    !a.iter().any(|x| b.contains(&x.negate()))
}

fn conflict(theory: &GroundTheory, reach: &Reach, x: &CausalLaw, y: &CausalLaw) -> bool {
    let (d1, d2) = (x.effect, y.effect);
    if !jointly_satisfiable(&x.condition, &y.condition) || d1 == d2 {
        return false;
    }
    if d1 == d2.negate() || reach.get(d1).contains(&d2.negate()) || reach.get(d2).contains(&d1.negate()) {
        return true;
    }
    theory.ramifications.iter().any(|r| r.head.is_none() && r.body.contains(&d1) && r.body.contains(&d2))
}

fn cycle(theory: &GroundTheory) -> Option<Vec<usize>> {
    let n = theory.fluents.len();
    let mut edges: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for r in &theory.ramifications {
        if let Some(h) = r.head {
            for b in &r.body {
                edges[b.fluent()].insert(h.fluent());
            }
        }
    }
    // 0 unvisited, 1 on stack, 2 done
    let mut color = vec![0u8; n];
    let mut path = Vec::new();
    fn dfs(v: usize, edges: &[BTreeSet<usize>], color: &mut [u8], path: &mut Vec<usize>) -> Option<Vec<usize>> {
        color[v] = 1;
        path.push(v);
        for &w in &edges[v] {
            if color[w] == 1 {
                let at = path.iter().position(|p| *p == w).unwrap();
                return Some(path[at..].to_vec());
            }
            if color[w] == 0 {
                if let Some(c) = dfs(w, edges, color, path) {
                    return Some(c);
                }
            }
        }
        path.pop();
        color[v] = 2;
        None
    }
    (0..n).find_map(|v| if color[v] == 0 { dfs(v, &edges, &mut color, &mut path) } else { None })
}

pub fn check_fragment(theory: &GroundTheory) -> FragmentReport {
    let mut report = FragmentReport::default();
    let reach = Reach::new(theory);
    let laws = &theory.causal_laws;
    let describe = |l: &CausalLaw| format!("{} -> {}", theory.actions[l.action], theory.lit_string(l.effect));
    for (i, x) in laws.iter().enumerate() {
        for y in &laws[i + 1..] {
            if x.action == y.action && conflict(theory, &reach, x, y) {
                report.violations.push(Violation {
                    kind: ViolationKind::NondeterministicAction,
                    location: format!("{} and {}", describe(x), describe(y)),
                });
            }
        }
    }
    let mut seen = BTreeSet::new();
    for (t, acts) in &theory.occurrences {
        for x in laws.iter().filter(|l| acts.contains(&l.action)) {
            for y in laws.iter().filter(|l| acts.contains(&l.action) && l.action > x.action) {
                if conflict(theory, &reach, x, y) && seen.insert((x.action, y.action)) {
                    report.violations.push(Violation {
                        kind: ViolationKind::ConflictingConcurrencyPossible,
                        location: format!("at {t}: {} and {}", describe(x), describe(y)),
                    });
                }
            }
        }
    }
    if let Some(c) = cycle(theory) {
        let names: Vec<String> = c.iter().map(|f| theory.fluents[*f].to_string()).collect();
        report.violations.push(Violation { kind: ViolationKind::CyclicRamifications, location: names.join(" -> ") });
    }
    report
}
