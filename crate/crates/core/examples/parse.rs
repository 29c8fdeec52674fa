//! Parse a domain, print it back, and show a located error.
use lang_e::corpus::file;
use lang_e::parser::{parse_domain, parse_query, pretty_print};

fn main() {
    let unit = parse_domain(file("bulb.e").unwrap()).expect("bulb parses");
    for (p, span) in unit.domain.propositions.iter().zip(&unit.spans) {
        println!("{:>3}:{:<3} {}", span.line, span.column, lang_e::parser::print_proposition(p));
    }
    println!("\ncanonical form:\n{}", pretty_print(&unit.domain));

    let q = parse_query("skeptical { Light holds-at 4 }", &unit.domain.signature).unwrap();
    println!("query: {} {:?}", q.mode, q.goal_strings());

    let bad = "fluent Light.\nSwitchOn initiates Light.";
    match parse_domain(bad) {
        Ok(_) => unreachable!(),
        Err(e) => println!("error at {}: {:?}: {}", e.span, e.kind, e.message),
    }
}
