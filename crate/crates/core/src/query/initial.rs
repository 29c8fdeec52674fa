//! Enumeration of time-0 states: fixed literals first, then the remaining
//! fluents in declaration order, false before true, with unit propagation
//! over the ramification statements read as clauses.

use crate::ground::{GroundTheory, Lit};
use crate::transition::State;

pub(crate) struct InitialStates {
    n: usize,
    clauses: Vec<Vec<Lit>>,
    /// Literal code to the clauses containing that literal.
    occ: Vec<Vec<u32>>,
    assign: Vec<Option<bool>>,
    /// (fluent, decision) in assignment order.
    trail: Vec<(usize, bool)>,
    units: Vec<Lit>,
    phase: Phase,
    pub decisions: u64,
}

#[derive(PartialEq, Eq)]
enum Phase {
    Start,
    Running,
    Done,
}

impl InitialStates {
    pub fn new(theory: &GroundTheory, units: Vec<Lit>) -> Self {
        let n = theory.fluents.len();
        let clauses: Vec<Vec<Lit>> = theory
            .ramifications
            .iter()
            .map(|r| r.body.iter().map(|b| b.negate()).chain(r.head).collect())
            .collect();
        let mut occ = vec![Vec::new(); 2 * n];
        for (i, c) in clauses.iter().enumerate() {
            for l in c {
                occ[l.code()].push(i as u32);
            }
        }
        InitialStates {
            n,
            clauses,
            occ,
            assign: vec![None; n],
            trail: Vec::new(),
            units,
            phase: Phase::Start,
            decisions: 0,
        }
    }

    fn value(&self, l: Lit) -> Option<bool> {
        self.assign[l.fluent()].map(|v| v == l.positive())
    }

    fn set(&mut self, l: Lit, decision: bool) {
        self.assign[l.fluent()] = Some(l.positive());
        self.trail.push((l.fluent(), decision));
    }

    /// Propagates everything on the trail from `from`. False on conflict.
    fn propagate(&mut self, mut from: usize) -> bool {
        while from < self.trail.len() {
            let (f, _) = self.trail[from];
            from += 1;
            let falsified = Lit::new(f, !self.assign[f].unwrap());
            for ci in 0..self.occ[falsified.code()].len() {
                let c = self.occ[falsified.code()][ci] as usize;
                let mut unassigned = None;
                let mut count = 0;
                let mut sat = false;
                for l in &self.clauses[c] {
                    match self.value(*l) {
                        Some(true) => {
                            sat = true;
                            break;
                        }
                        Some(false) => {}
                        None => {
                            count += 1;
                            unassigned = Some(*l);
                        }
                    }
                }
                if sat {
                    continue;
                }
                match count {
                    0 => return false,
                    1 => self.set(unassigned.unwrap(), false),
                    _ => {}
                }
            }
        }
        true
    }

    fn start(&mut self) -> bool {
        if self.clauses.iter().any(|c| c.is_empty()) {
            return false;
        }
        let units = std::mem::take(&mut self.units);
        for u in units {
            match self.value(u) {
                Some(true) => {}
                Some(false) => return false,
                None => self.set(u, false),
            }
        }
        // Unit clauses from facts such as `f whenever { }`.
        for c in 0..self.clauses.len() {
            if self.clauses[c].len() == 1 {
                let u = self.clauses[c][0];
                match self.value(u) {
                    Some(true) => {}
                    Some(false) => return false,
                    None => self.set(u, false),
                }
            }
        }
        self.propagate(0)
    }

    /// Undo to the most recent untried decision and flip it.
    fn backtrack(&mut self) -> bool {
        while let Some((f, decision)) = self.trail.pop() {
            self.assign[f] = None;
            if decision {
                let at = self.trail.len();
                self.set(Lit::new(f, true), false);
                if self.propagate(at) {
                    return true;
                }
            }
        }
        false
    }

    fn descend(&mut self) -> bool {
        loop {
            let Some(f) = (0..self.n).find(|f| self.assign[*f].is_none()) else { return true };
            self.decisions += 1;
            let at = self.trail.len();
            self.set(Lit::new(f, false), true);
            if !self.propagate(at) && !self.backtrack() {
                return false;
            }
        }
    }

    fn state(&self) -> State {
        State::from_bools(&self.assign.iter().map(|v| v.unwrap()).collect::<Vec<_>>())
    }
}

impl Iterator for InitialStates {
    type Item = State;

    fn next(&mut self) -> Option<State> {
        let ok = match self.phase {
            Phase::Done => return None,
            Phase::Start => {
                self.phase = Phase::Running;
                self.start()
            }
            Phase::Running => self.backtrack(),
        };
        if ok && self.descend() {
            Some(self.state())
        } else {
            self.phase = Phase::Done;
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::ground;
    use crate::parser::parse_domain;
    use crate::syntax::TimePoint;
    use crate::transition::satisfies_constraints;

    fn theory(src: &str) -> GroundTheory {
        ground(&parse_domain(src).unwrap().domain, TimePoint(0)).unwrap()
    }

    #[test]
    fn lexicographic_and_complete() {
        let t = theory("fluent a. fluent b. fluent c.\nc whenever { a }.\nfalse whenever { b, c }.");
        let got: Vec<Vec<bool>> = InitialStates::new(&t, vec![]).map(|s| s.to_bools()).collect();
        let mut want = Vec::new();
        for bits in 0..8u64 {
            let s = State::from_bools(&[bits & 4 != 0, bits & 2 != 0, bits & 1 != 0]);
            if satisfies_constraints(&t, &s) {
                want.push(s.to_bools());
            }
        }
        assert_eq!(got, want);
    }

    #[test]
    fn units_fix_values() {
        let t = theory("fluent a. fluent b.\nb whenever { a }.");
        let got: Vec<State> = InitialStates::new(&t, vec![Lit::new(0, true)]).collect();
        assert_eq!(got, vec![State::from_bools(&[true, true])]);
        let none: Vec<State> = InitialStates::new(&t, vec![Lit::new(0, true), Lit::new(1, false)]).collect();
        assert!(none.is_empty());
    }

    #[test]
    fn no_fluents_gives_one_empty_state() {
        let t = theory("");
        assert_eq!(InitialStates::new(&t, vec![]).count(), 1);
    }
}
