use std::cmp::Ordering;

use crate::ground::{FluentId, GroundTheory, Lit};

/// Total assignment over the dynamic fluents of a ground theory.
///
/// States order by fluent index: the first differing fluent decides, and
/// false sorts before true.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct State {
    words: Vec<u64>,
    len: usize,
}

impl State {
    pub fn new(len: usize) -> Self {
        State { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn from_bools(values: &[bool]) -> Self {
        let mut s = State::new(values.len());
        for (f, v) in values.iter().enumerate() {
            s.set(f, *v);
        }
        s
    }

    /// Fluent `f` is bit `f` of `bits`.
    pub fn from_bits(len: usize, bits: u64) -> Self {
        assert!(len <= 64);
        let mut s = State::new(len);
        if len > 0 {
            s.words[0] = if len == 64 { bits } else { bits & ((1u64 << len) - 1) };
        }
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, f: FluentId) -> bool {
        debug_assert!(f < self.len);
        self.words[f / 64] >> (f % 64) & 1 == 1
    }

    pub fn set(&mut self, f: FluentId, v: bool) {
        let bit = 1u64 << (f % 64);
        if v {
            self.words[f / 64] |= bit;
        } else {
            self.words[f / 64] &= !bit;
        }
    }

    pub fn holds(&self, lit: Lit) -> bool {
        self.get(lit.fluent()) == lit.positive()
    }

    pub fn holds_all(&self, lits: &[Lit]) -> bool {
        lits.iter().all(|l| self.holds(*l))
    }

    /// Copy of `self` with every literal in `lits` made true.
    pub fn apply<'a>(&self, lits: impl IntoIterator<Item = &'a Lit>) -> State {
        let mut s = self.clone();
        for l in lits {
            s.set(l.fluent(), l.positive());
        }
        s
    }

    pub fn differing(&self, other: &State) -> Vec<FluentId> {
        (0..self.len).filter(|f| self.get(*f) != other.get(*f)).collect()
    }

    pub fn literals(&self) -> impl Iterator<Item = Lit> + '_ {
        (0..self.len).map(|f| Lit::new(f, self.get(f)))
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|f| self.get(f)).collect()
    }

    /// `{ a, neg b, ... }` using the theory's fluent names.
    pub fn describe(&self, theory: &GroundTheory) -> String {
        let items: Vec<String> = self.literals().map(|l| theory.lit_string(l)).collect();
        format!("{{ {} }}", items.join(", "))
    }

    /// Only the fluents that are true.
    pub fn describe_true(&self, theory: &GroundTheory) -> String {
        let items: Vec<String> =
            (0..self.len).filter(|f| self.get(*f)).map(|f| theory.fluents[f].to_string()).collect();
        format!("{{ {} }}", items.join(", "))
    }
}

impl Ord for State {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for (a, b) in self.words.iter().zip(&other.words) {
                if a != b {
                    return a.reverse_bits().cmp(&b.reverse_bits());
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
