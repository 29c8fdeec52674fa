use super::*;
use crate::ground::ground;
use crate::parser::{parse_domain, parse_query};
use crate::syntax::DomainDescription;

const BULB: &str = include_str!("../../corpus/bulb.e");
const BULB_NOINIT: &str = include_str!("../../corpus/bulb_noinit.e");

fn domain(src: &str) -> DomainDescription {
    parse_domain(src).unwrap().domain
}

fn theory(src: &str, h: u32) -> GroundTheory {
    ground(&domain(src), TimePoint(h)).unwrap()
}

fn ask(src: &str, h: u32, q: &str) -> Answer {
    let d = domain(src);
    let t = ground(&d, TimePoint(h)).unwrap();
    answer(&t, &parse_query(q, &d.signature).unwrap()).unwrap().answer
}

#[test]
fn bulb_has_a_single_model() {
    let t = theory(BULB, 4);
    let models: Vec<Trajectory> = enumerate_models(&t).collect();
    assert_eq!(models.len(), 1);
    let light = t.fluent_id(&GroundAtom::new("Light", &[])).unwrap();
    let m = &models[0];
    let lit: Vec<bool> = (0..=4).map(|i| m.holds(Lit::new(light, true), i)).collect();
    assert_eq!(lit, vec![false, false, false, true, true]);
    assert_eq!(m.steps.len(), 4);
}

#[test]
fn bulb_skeptical_light() {
    assert_eq!(ask(BULB, 4, "skeptical { Light holds-at 4 }"), Answer::True);
    assert_eq!(ask(BULB, 4, "credulous { Light holds-at 4 }"), Answer::True);
    assert_eq!(ask(BULB, 4, "credulous { neg Light holds-at 4 }"), Answer::False);
}

#[test]
fn removing_the_observation_weakens_the_conclusion() {
    assert_eq!(ask(BULB_NOINIT, 4, "skeptical { Light holds-at 4 }"), Answer::False);
    assert_eq!(ask(BULB_NOINIT, 4, "credulous { Light holds-at 4 }"), Answer::True);
    let t = theory(BULB_NOINIT, 4);
    let normal = t.fluent_id(&GroundAtom::new("Normal", &[])).unwrap();
    assert!(enumerate_models(&t).any(|m| !m.holds(Lit::new(normal, true), 0)));
}

#[test]
fn no_open_fluents_no_occurrences() {
    let t = theory("fluent f. fluent g.\nf holds-at 0.\nneg g holds-at 0.", 3);
    let models: Vec<Trajectory> = enumerate_models(&t).collect();
    assert_eq!(models.len(), 1);
    assert!(models[0].states.iter().all(|s| s == &models[0].states[0]));
}

#[test]
fn contradictory_observations() {
    let src = format!("{BULB}\nLight holds-at 3.\nneg Light holds-at 3.");
    let t = theory(&src, 4);
    assert_eq!(check_consistency(&t).unwrap().answer, Answer::False);
    assert_eq!(ask(&src, 4, "skeptical { Light holds-at 4 }"), Answer::DomainInconsistent);
    assert_eq!(ask(&src, 4, "credulous { Light holds-at 4 }"), Answer::DomainInconsistent);
    assert!(check_consistency(&theory(BULB, 4)).unwrap().witness.is_some());
}

#[test]
fn skeptical_implies_credulous_and_witnesses() {
    let d = domain(BULB_NOINIT);
    let t = ground(&d, TimePoint(4)).unwrap();
    let sk = answer(&t, &parse_query("skeptical { Light holds-at 4 }", &d.signature).unwrap()).unwrap();
    let w = sk.witness.expect("counter-model");
    let light = t.fluent_id(&GroundAtom::new("Light", &[])).unwrap();
    assert!(!w.holds(Lit::new(light, true), 4));
    let cr = answer(&t, &parse_query("credulous { Light holds-at 4 }", &d.signature).unwrap()).unwrap();
    assert!(cr.witness.unwrap().holds(Lit::new(light, true), 4));
}

#[test]
fn budget_is_reported_and_deterministic() {
    let d = domain(BULB_NOINIT);
    let t = ground(&d, TimePoint(4)).unwrap();
    let q = parse_query("skeptical { Light holds-at 4 }", &d.signature).unwrap();
    let opts = QueryOptions { budget: Some(1), slice: false };
    assert_eq!(answer_with(&t, &q, &opts).unwrap_err(), QueryError::BudgetExceeded { nodes: 1 });
    let big = QueryOptions { budget: Some(1000), slice: false };
    let a = answer_with(&t, &q, &big).unwrap();
    let b = answer_with(&t, &q, &big).unwrap();
    assert_eq!((a.answer, a.stats.search, a.witness), (b.answer, b.stats.search, b.witness));
}

#[test]
fn precondition_violation_kills_the_branch() {
    let src = "fluent f. action a.\na needs { f }.\na happens-at 1.\nneg f holds-at 0.";
    assert_eq!(check_consistency(&theory(src, 2)).unwrap().answer, Answer::False);
}

#[test]
fn horizon_extends_to_goals() {
    assert_eq!(ask(BULB, 4, "skeptical { Light holds-at 9 }"), Answer::True);
    assert_eq!(ask(BULB, 4, "skeptical { Light holds-at 2 } horizon 7"), Answer::False);
}

#[test]
fn constant_and_empty_goals() {
    let src = "constant fluent c. fluent f.\nc holds-at 0.";
    assert_eq!(ask(src, 1, "skeptical { c holds-at 1 }"), Answer::True);
    assert_eq!(ask(src, 1, "credulous { neg c holds-at 1 }"), Answer::False);
    assert_eq!(ask(src, 1, "skeptical { }"), Answer::True);
    assert_eq!(ask(src, 1, "credulous { }"), Answer::True);
}

#[test]
fn slicing_drops_disjoint_fluents() {
    let src = format!("{BULB}\nfluent Hungry. action Feed.\nFeed terminates Hungry.\nFeed happens-at 1.");
    let d = domain(&src);
    let t = ground(&d, TimePoint(4)).unwrap();
    let q = parse_query("skeptical { Light holds-at 4 }", &d.signature).unwrap();
    let s = relevance_slice(&t, &q);
    assert_eq!(s.fluents.len(), 2);
    assert_eq!(s.occurrences.values().map(|a| a.len()).sum::<usize>(), 1);
    let sliced = answer_with(&t, &q, &QueryOptions { budget: None, slice: true }).unwrap();
    assert_eq!(sliced.answer, answer(&t, &q).unwrap().answer);

    let cq = parse_query("credulous { Light holds-at 4, neg Hungry holds-at 2 }", &d.signature).unwrap();
    let full = answer(&t, &cq).unwrap();
    let sl = answer_with(&t, &cq, &QueryOptions { budget: None, slice: true }).unwrap();
    assert_eq!(full.answer, sl.answer);
    assert_eq!(full.witness.unwrap().states, sl.witness.unwrap().states);
}

#[test]
fn record_is_json() {
    let d = domain(BULB);
    let t = ground(&d, TimePoint(4)).unwrap();
    let r = answer(&t, &parse_query("credulous { Light holds-at 4 }", &d.signature).unwrap()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.to_record(&t)).unwrap();
    assert_eq!(v["answer"], "true");
    assert_eq!(v["mode"], "credulous");
    assert_eq!(v["witness"][4][0], "Light");
    assert!(v["stats"]["nodes"].as_u64().unwrap() > 0);
}
