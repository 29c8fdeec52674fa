use super::*;
use crate::corpus::{file, golden_cases};
use crate::parser::parse_domain;

fn bulb() -> DomainDescription {
    parse_domain(file("bulb.e").unwrap()).unwrap().domain
}

fn zoo() -> DomainDescription {
    parse_domain_sources(&[file("zoo_dual.e").unwrap(), file("scenario_2_5.e").unwrap()]).unwrap().domain
}

fn ask(d: &DomainDescription, q: &str) -> Answer {
    let q = parse_query(q, &d.signature).unwrap();
    answer_with(&ground_default(d).unwrap(), &q, &QueryOptions { budget: None, slice: true }).unwrap().answer
}

#[test]
fn inject_zero_is_identity() {
    let d = zoo();
    let q = parse_query("skeptical { animal_pos(john, p1) holds-at 3 }", &d.signature).unwrap();
    assert_eq!(inject_irrelevant(&d, &q, 0).unwrap(), d);
}

#[test]
fn inject_three_keeps_the_answer() {
    let d = zoo();
    let text = "skeptical { rides(john, dumpo) holds-at 4 }";
    let q = parse_query(text, &d.signature).unwrap();
    let more = inject_irrelevant(&d, &q, 3).unwrap();
    assert_eq!(more.propositions.len(), d.propositions.len() + 3);
    assert_eq!(ask(&more, text), ask(&d, text));
    let slice = slice_fluents(&ground_default(&d).unwrap(), &q);
    assert_eq!(slice_fluents(&ground_default(&more).unwrap(), &q), slice);
}

#[test]
fn inject_fails_when_everything_is_relevant() {
    let d = bulb();
    let q = parse_query("skeptical { Light holds-at 4 }", &d.signature).unwrap();
    assert!(matches!(inject_irrelevant(&d, &q, 1), Err(BenchError::NoIrrelevantAction { .. })));
}

#[test]
fn enrich_bulb() {
    let d = bulb();
    assert_eq!(enrich_scenario(&d, Level::Count(0)).unwrap(), d);
    let rich = enrich_scenario(&d, Level::All).unwrap();
    let normal2 = Proposition::Holds { literal: FluentLiteral::pos(crate::syntax::Atom::constant("Normal")), time: TimePoint(2) };
    assert!(rich.propositions.contains(&normal2));
    assert_eq!(ask(&rich, "skeptical { Light holds-at 4 }"), Answer::True);
    let one = enrich_scenario(&d, Level::Count(1)).unwrap();
    assert_eq!(one.propositions.len(), d.propositions.len() + 1);
}

#[test]
fn enrich_rejects_inconsistent() {
    let d = parse_domain("fluent f.\nf holds-at 0.\nneg f holds-at 1.").unwrap().domain;
    assert!(matches!(enrich_scenario(&d, Level::All), Err(BenchError::Inconsistent)));
}

#[test]
fn full_zoo_enrichment_keeps_golden_answers() {
    let d = zoo();
    let rich = enrich_scenario(&d, Level::All).unwrap();
    assert!(rich.propositions.len() > d.propositions.len());
    for c in golden_cases().iter().filter(|c| c.scenario.is_some() && c.extra.is_empty() && c.domain == "zoo_dual.e") {
        assert_eq!(ask(&rich, &c.query), c.expect, "{}", c.name);
    }
}

#[test]
fn median_of_odd_and_even() {
    assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
    assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
}

#[test]
fn completeness_run_on_bulb() {
    let mut spec = ExperimentSpec::new("bulb", Family::Completeness);
    spec.domain = Some("bulb.e".into());
    spec.queries = vec!["skeptical { Light holds-at 4 }".into()];
    spec.levels = vec![Level::Count(0), Level::All];
    spec.repetitions = 3;
    let t = run_experiment(&spec).unwrap();
    assert_eq!(t.rows.len(), 2);
    assert!(t.rows.iter().all(|r| r.answer == "true" && r.flag.is_empty()), "{}", t.to_tsv());
}

#[test]
fn backbone_methods_agree() {
    for src in [file("bulb.e").unwrap(), file("bulb_noinit.e").unwrap()] {
        let t = ground_default(&parse_domain(src).unwrap().domain).unwrap();
        let mut a = backbone_by_enumeration(&t).unwrap();
        let mut b = backbone_by_search(&t).unwrap();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
}
