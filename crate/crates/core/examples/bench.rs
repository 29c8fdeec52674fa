//! A small irrelevance experiment, printed as TSV.
use lang_e::bench::{inject_irrelevant, run_experiment, ExperimentSpec, Family};
use lang_e::corpus::file;
use lang_e::parser::{parse_domain_sources, parse_query, print_proposition};

fn main() {
    let d = parse_domain_sources(&[file("zoo_dual.e").unwrap(), file("scenario_2_5.e").unwrap()]).unwrap().domain;
    let q = parse_query("skeptical { rides(john, dumpo) holds-at 4 }", &d.signature).unwrap();
    let more = inject_irrelevant(&d, &q, 3).unwrap();
    for p in &more.propositions[d.propositions.len()..] {
        println!("injected: {}", print_proposition(p));
    }

    let mut spec = ExperimentSpec::new("example", Family::Irrelevance);
    spec.domain = Some("zoo_dual.e".into());
    spec.scenario = Some("scenario_2_5.e".into());
    spec.queries = vec!["skeptical { rides(john, dumpo) holds-at 4 }".into()];
    spec.k = vec![0, 3];
    spec.repetitions = 3;
    print!("{}", run_experiment(&spec).unwrap().to_tsv());
}
