use super::*;
use crate::syntax::{negate, Severity};

const BULB: &str = include_str!("../../corpus/bulb.e");

fn decls() -> &'static str {
    "fluent Light. fluent Normal. action SwitchOn.\n"
}

#[test]
fn causal_law_with_condition() {
    let unit = parse_domain(&format!("{}SwitchOn initiates Light when {{ Normal }}.", decls())).unwrap();
    assert_eq!(
        unit.domain.propositions,
        vec![Proposition::Causes {
            action: Atom::constant("SwitchOn"),
            kind: EffectKind::Initiates,
            fluent: Atom::constant("Light"),
            condition: Condition::of(vec![FluentLiteral::pos(Atom::constant("Normal"))]),
        }]
    );
}

#[test]
fn negated_ramification() {
    let unit = parse_domain(&format!("{}neg Light whenever {{ neg Normal }}.", decls())).unwrap();
    assert_eq!(
        unit.domain.propositions,
        vec![Proposition::Whenever {
            head: Some(FluentLiteral::neg(Atom::constant("Light"))),
            condition: Condition::of(vec![FluentLiteral::neg(Atom::constant("Normal"))]),
        }]
    );
}

#[test]
fn empty_file() {
    let unit = parse_domain("").unwrap();
    assert_eq!(unit.domain, DomainDescription::default());
    assert!(unit.spans.is_empty());
    assert_eq!(pretty_print(&unit.domain), "");
}

#[test]
fn bulb_prints_statement_for_statement() {
    let unit = parse_domain(BULB).unwrap();
    assert_eq!(unit.domain.propositions.len(), 7);
    assert!(unit.warnings.is_empty());
    let text = pretty_print(&unit.domain);
    let body: Vec<&str> = text.lines().skip_while(|l| !l.is_empty()).skip(1).collect();
    assert_eq!(
        body,
        vec![
            "SwitchOn initiates Light when { Normal }.",
            "SwitchOff terminates Light.",
            "Break terminates Normal.",
            "neg Light whenever { neg Normal }.",
            "SwitchOn needs { neg Light }.",
            "SwitchOn happens-at 2.",
            "Normal holds-at 0.",
        ]
    );
    assert_eq!(parse_domain(&text).unwrap().domain, unit.domain);
}

#[test]
fn every_proposition_has_a_span() {
    let unit = parse_domain(BULB).unwrap();
    assert_eq!(unit.spans.len(), unit.domain.propositions.len());
    let first = unit.spans[0];
    assert_eq!(&BULB[first.start..first.end], "SwitchOn initiates Light when { Normal }.");
    assert_eq!(first.line, 8);
}

#[test]
fn declarations_may_follow_use() {
    let unit = parse_domain("a initiates f.\nfluent f.\naction a.").unwrap();
    assert_eq!(unit.domain.propositions.len(), 1);
}

#[test]
fn sorted_statements_and_disequalities() {
    let src = "sort animal: john, elly.\nsort position: p1, p2.\n\
               fluent animal_pos(animal, position).\n\
               neg animal_pos(A, P1) whenever { animal_pos(A, P), P1 != P }.";
    let unit = parse_domain(src).unwrap();
    let Proposition::Whenever { head, condition } = &unit.domain.propositions[0] else { panic!() };
    assert_eq!(head.as_ref().unwrap().atom.args, vec![Term::Var("A".into()), Term::Var("P1".into())]);
    assert_eq!(condition.disequalities, vec![(Term::Var("P1".into()), Term::Var("P".into()))]);
}

#[test]
fn typing_atoms_are_accepted_and_dropped() {
    let src = "sort animal: john.\nsort position: p1.\n\
               fluent animal_pos(animal, position). fluent reachable(animal, position).\n\
               action move_to_position(animal, position).\n\
               move_to_position(A, P) initiates animal_pos(A, P) when { animal(A), position(P), reachable(A, P) }.";
    let unit = parse_domain(src).unwrap();
    let Proposition::Causes { condition, .. } = &unit.domain.propositions[0] else { panic!() };
    assert_eq!(condition.literals.len(), 1);

    let bad = src.replace("animal(A), position(P)", "position(A)");
    assert_eq!(parse_domain(&bad).unwrap_err().kind, ParseErrorKind::Invalid);
}

#[test]
fn error_kinds_and_spans() {
    let cases = [
        ("fluent f. f holds-at 1 2.", ParseErrorKind::Syntax),
        ("fluent f. f holds-at #.", ParseErrorKind::Lexical),
        ("fluent f. g holds-at 1.", ParseErrorKind::UnknownIdentifier),
        ("fluent f. f(x) holds-at 1.", ParseErrorKind::Arity),
        ("sort s: a. fluent f(s). f(b) holds-at 1.", ParseErrorKind::UnknownIdentifier),
        ("sort s: a. fluent f(s). f(X) holds-at 1.", ParseErrorKind::Invalid),
        ("fluent f. action a. neg a initiates f.", ParseErrorKind::Syntax),
        ("fluent f. f holds-at 1", ParseErrorKind::Syntax),
    ];
    for (src, kind) in cases {
        let err = parse_domain(src).unwrap_err();
        assert_eq!(err.kind, kind, "{src}: {err}");
        assert!(err.span.start <= err.span.end && err.span.end <= src.len(), "{src}");
    }
}

#[test]
fn unknown_identifier_points_at_name() {
    let src = "fluent f.\nzzz holds-at 1.";
    let err = parse_domain(src).unwrap_err();
    assert_eq!(&src[err.span.start..err.span.end], "zzz");
    assert_eq!((err.span.line, err.span.column), (2, 1));
}

#[test]
fn duplicate_statement_is_a_warning() {
    let unit = parse_domain("fluent f. f holds-at 0. f holds-at 0.").unwrap();
    assert_eq!(unit.domain.propositions.len(), 2);
    assert_eq!(unit.warnings.len(), 1);
    assert_eq!(unit.warnings[0].diagnostic.severity, Severity::Warning);
    assert_eq!(unit.warnings[0].span, unit.spans[1]);
}

#[test]
fn denial_and_unicode_operators() {
    let unit = parse_domain("sort s: a, b. fluent f(s). false whenever { f(X), ¬f(Y), X ≠ Y }.").unwrap();
    let Proposition::Whenever { head: None, condition } = &unit.domain.propositions[0] else { panic!() };
    assert_eq!(condition.literals.len(), 2);
    assert_eq!(condition.disequalities.len(), 1);
}

#[test]
fn queries() {
    let sig = parse_domain(BULB).unwrap().domain.signature;
    let q = parse_query("skeptical { Light holds-at 4 }", &sig).unwrap();
    assert_eq!(q.mode, Mode::Skeptical);
    assert_eq!(q.goals, vec![(FluentLiteral::pos(Atom::constant("Light")), TimePoint(4))]);
    assert_eq!(q.horizon, None);

    let q = parse_query("credulous { }", &sig).unwrap();
    assert_eq!(q.mode, Mode::Credulous);
    assert!(q.goals.is_empty());

    let q = parse_query("credulous { neg Light holds-at 1, Normal holds-at 2 } horizon 6.", &sig).unwrap();
    assert_eq!(q.goals.len(), 2);
    assert_eq!(q.goals[0].0, negate(&FluentLiteral::pos(Atom::constant("Light"))));
    assert_eq!(q.horizon, Some(TimePoint(6)));

    assert!(parse_query("maybe { }", &sig).is_err());
    assert!(parse_query("credulous { Light holds-at 9 } horizon 3", &sig).is_err());
}

#[test]
fn query_rejects_variables() {
    let sig = parse_domain("sort animal: john, dumpo. fluent rides(animal, animal).").unwrap().domain.signature;
    let q = parse_query("skeptical { rides(john, dumpo) holds-at 4 }", &sig).unwrap();
    assert_eq!(q.goals[0].1, TimePoint(4));
    let err = parse_query("skeptical { rides(X, dumpo) holds-at 4 }", &sig).unwrap_err();
    assert_eq!(err.kind, ParseErrorKind::Invalid);
}

#[test]
fn goal_lists() {
    let sig = parse_domain(BULB).unwrap().domain.signature;
    let goals = parse_goals("Light holds-at 4", &sig).unwrap();
    assert_eq!(goals.len(), 1);
    assert!(parse_goals("", &sig).unwrap().is_empty());
}

#[test]
fn multiple_sources_tag_files() {
    let unit = parse_domain_sources(&[decls(), "SwitchOn happens-at 1."]).unwrap();
    assert_eq!(unit.spans[0].file, 1);
}
