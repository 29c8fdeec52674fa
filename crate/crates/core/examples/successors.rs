//! Successor states of one bulb state, with the search trace.
use std::collections::BTreeSet;

use lang_e::corpus::file;
use lang_e::ground::{ground, GroundAtom};
use lang_e::parser::parse_domain;
use lang_e::syntax::TimePoint;
use lang_e::transition::{brute_force_successors, Dynamics, State, DEFAULT_ORACLE_BOUND};

fn main() {
    let d = parse_domain(file("bulb_noinit.e").unwrap()).unwrap().domain;
    let t = ground(&d, TimePoint(3)).unwrap();
    let normal = t.fluent_id(&GroundAtom::new("Normal", &[])).unwrap();
    let mut s = State::new(t.fluents.len());
    s.set(normal, true);
    let both: BTreeSet<usize> = ["SwitchOn", "Break"].iter().map(|a| t.actions.get_index_of(&GroundAtom::new(*a, &[])).unwrap()).collect();

    let dynamics = Dynamics::new(&t).with_trace();
    println!("from {} under SwitchOn and Break:", s.describe(&t));
    for tr in dynamics.successors(&s, &both) {
        let changed: Vec<String> = tr.effects.changed.iter().map(|l| t.lit_string(*l)).collect();
        println!("  -> {}   changed {{{}}}", tr.target.describe(&t), changed.join(", "));
    }
    println!("{:?}", dynamics.stats());
    print!("{}", dynamics.take_trace());
    let oracle = brute_force_successors(&t, &s, &both, DEFAULT_ORACLE_BOUND).unwrap();
    println!("oracle agrees on {} successors", oracle.len());
}
