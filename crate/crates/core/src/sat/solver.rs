//! DPLL with two watched literals and chronological backtracking.

use super::SatError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    /// Value of variable `v` at index `v - 1`.
    Sat(Vec<bool>),
    Unsat,
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveResult::Sat(_))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct SolverStats {
    pub decisions: u64,
    pub conflicts: u64,
    pub propagations: u64,
}

fn code(l: i32) -> usize {
    (l.unsigned_abs() as usize) * 2 + (l > 0) as usize
}

struct Level {
    trail_start: usize,
    decision: i32,
    flipped: bool,
}

struct Solver<'a> {
    clauses: Vec<Vec<i32>>,
    watches: Vec<Vec<usize>>,
    /// 0 unassigned, 1 true, -1 false; by variable.
    value: Vec<i8>,
    trail: Vec<i32>,
    qhead: usize,
    levels: Vec<Level>,
    stats: &'a mut SolverStats,
    budget: Option<u64>,
}

impl Solver<'_> {
    fn lit_value(&self, l: i32) -> i8 {
        let v = self.value[l.unsigned_abs() as usize];
        if l > 0 {
            v
        } else {
            -v
        }
    }

    fn assign(&mut self, l: i32) {
        self.value[l.unsigned_abs() as usize] = if l > 0 { 1 } else { -1 };
        self.trail.push(l);
    }

    /// False on conflict.
    fn enqueue(&mut self, l: i32) -> bool {
        match self.lit_value(l) {
            1 => true,
            -1 => false,
            _ => {
                self.assign(l);
                true
            }
        }
    }

    fn propagate(&mut self) -> bool {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = -p;
            let mut ws = std::mem::take(&mut self.watches[code(false_lit)]);
            let mut i = 0;
            let mut ok = true;
            while i < ws.len() {
                let ci = ws[i];
                let c = &mut self.clauses[ci];
                if c[0] == false_lit {
                    c.swap(0, 1);
                }
                let first = c[0];
                if self.lit_value_raw(first) == 1 {
                    i += 1;
                    continue;
                }
                let c = &mut self.clauses[ci];
                let mut moved = false;
                for k in 2..c.len() {
                    let l = c[k];
                    let v = self.value[l.unsigned_abs() as usize];
                    let lv = if l > 0 { v } else { -v };
                    if lv != -1 {
                        c.swap(1, k);
                        self.watches[code(c[1])].push(ci);
                        ws.swap_remove(i);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                if !self.enqueue(first) {
                    ok = false;
                    break;
                }
                i += 1;
            }
            self.watches[code(false_lit)].extend(ws);
            if !ok {
                return false;
            }
        }
        true
    }

    fn lit_value_raw(&self, l: i32) -> i8 {
        self.lit_value(l)
    }

    fn undo_to(&mut self, start: usize) {
        while self.trail.len() > start {
            let l = self.trail.pop().unwrap();
            self.value[l.unsigned_abs() as usize] = 0;
        }
        self.qhead = start;
    }

    /// Flips the most recent unflipped decision. False when none is left.
    fn backtrack(&mut self) -> bool {
        while let Some(level) = self.levels.pop() {
            self.undo_to(level.trail_start);
            if !level.flipped {
                self.levels.push(Level { trail_start: level.trail_start, decision: -level.decision, flipped: true });
                self.assign(-level.decision);
                return true;
            }
        }
        false
    }

    fn run(&mut self, num_vars: usize) -> Result<SolveResult, SatError> {
        let mut next_var = 1;
        loop {
            if !self.propagate() {
                self.stats.conflicts += 1;
                if !self.backtrack() {
                    return Ok(SolveResult::Unsat);
                }
                next_var = 1;
                continue;
            }
            while next_var <= num_vars && self.value[next_var] != 0 {
                next_var += 1;
            }
            if next_var > num_vars {
                return Ok(SolveResult::Sat((1..=num_vars).map(|v| self.value[v] == 1).collect()));
            }
            self.stats.decisions += 1;
            if let Some(b) = self.budget {
                if self.stats.decisions + self.stats.conflicts > b {
                    return Err(SatError::BudgetExceeded { steps: b });
                }
            }
            let l = -(next_var as i32);
            self.levels.push(Level { trail_start: self.trail.len(), decision: l, flipped: false });
            self.assign(l);
        }
    }
}

/// Decides `clauses` under `assumptions`, trying false before true.
pub fn solve_clauses(
    num_vars: u32,
    clauses: &[Vec<i32>],
    assumptions: &[i32],
    budget: Option<u64>,
    stats: &mut SolverStats,
) -> Result<SolveResult, SatError> {
    let n = num_vars as usize;
    let mut s = Solver {
        clauses: Vec::new(),
        watches: vec![Vec::new(); 2 * n + 2],
        value: vec![0; n + 1],
        trail: Vec::new(),
        qhead: 0,
        levels: Vec::new(),
        stats,
        budget,
    };
    let mut units = Vec::new();
    for c in clauses {
        let mut c = c.clone();
        c.sort_unstable();
        c.dedup();
        if c.windows(2).any(|w| w[0] == -w[1]) || c.iter().any(|l| c.contains(&-l)) {
            continue;
        }
        match c.len() {
            0 => return Ok(SolveResult::Unsat),
            1 => units.push(c[0]),
            _ => {
                let ci = s.clauses.len();
                s.watches[code(c[0])].push(ci);
                s.watches[code(c[1])].push(ci);
                s.clauses.push(c);
            }
        }
    }
    for l in units.into_iter().chain(assumptions.iter().copied()) {
        assert!(l != 0 && l.unsigned_abs() <= num_vars, "literal {l} out of range");
        if !s.enqueue(l) {
            return Ok(SolveResult::Unsat);
        }
    }
    s.run(n)
}
