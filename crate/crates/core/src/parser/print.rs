use std::fmt::Write;

use crate::syntax::{Condition, DomainDescription, Proposition};

pub fn print_condition(cond: &Condition) -> String {
    let mut items: Vec<String> = cond.literals.iter().map(|l| l.to_string()).collect();
    items.extend(cond.disequalities.iter().map(|(a, b)| format!("{a} != {b}")));
    if items.is_empty() {
        "{ }".to_string()
    } else {
        format!("{{ {} }}", items.join(", "))
    }
}

/// One statement in canonical surface syntax, including the final `.`.
pub fn print_proposition(p: &Proposition) -> String {
    match p {
        Proposition::Holds { literal, time } => format!("{literal} holds-at {time}."),
        Proposition::Happens { action, time } => format!("{action} happens-at {time}."),
        Proposition::Causes { action, kind, fluent, condition } => {
            if condition.is_empty() {
                format!("{action} {} {fluent}.", kind.keyword())
            } else {
                format!("{action} {} {fluent} when {}.", kind.keyword(), print_condition(condition))
            }
        }
        Proposition::Whenever { head, condition } => match head {
            Some(h) => format!("{h} whenever {}.", print_condition(condition)),
            None => format!("false whenever {}.", print_condition(condition)),
        },
        Proposition::Needs { action, condition } => format!("{action} needs {}.", print_condition(condition)),
    }
}

fn sort_list(args: &[String]) -> String {
    if args.is_empty() {
        String::new()
    } else {
        format!("({})", args.join(", "))
    }
}

/// Canonical text form: declarations first, then statements in order.
pub fn pretty_print(domain: &DomainDescription) -> String {
    let sig = &domain.signature;
    let mut out = String::new();
    for (name, members) in &sig.sorts {
        let _ = writeln!(out, "sort {name}: {}.", members.join(", "));
    }
    for f in &sig.fluents {
        let prefix = if f.constant { "constant fluent" } else { "fluent" };
        let _ = writeln!(out, "{prefix} {}{}.", f.name, sort_list(&f.args));
    }
    for a in &sig.actions {
        let _ = writeln!(out, "action {}{}.", a.name, sort_list(&a.args));
    }
    if !out.is_empty() && !domain.propositions.is_empty() {
        out.push('\n');
    }
    for p in &domain.propositions {
        out.push_str(&print_proposition(p));
        out.push('\n');
    }
    out
}
