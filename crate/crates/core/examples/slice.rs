//! Relevance slicing on the Zoo scenario.
use lang_e::corpus::{file, ground_default};
use lang_e::parser::{parse_domain_sources, parse_query};
use lang_e::query::{answer_with, components, relevance_slice, QueryOptions};

fn main() {
    let d = parse_domain_sources(&[file("zoo_dual.e").unwrap(), file("scenario_2_5.e").unwrap()]).unwrap().domain;
    let t = ground_default(&d).unwrap();
    let q = parse_query("skeptical { rides(john, dumpo) holds-at 4 }", &d.signature).unwrap();
    let sizes: Vec<usize> = components(&t).iter().map(Vec::len).collect();
    println!("{} fluents in components of sizes {sizes:?}", t.fluents.len());
    println!("slice keeps {} fluents", relevance_slice(&t, &q).fluents.len());
    for slice in [false, true] {
        let r = answer_with(&t, &q, &QueryOptions { budget: None, slice }).unwrap();
        println!("slice {slice}: {} in {:.1} ms, {} nodes", r.answer, r.stats.wall_ms, r.stats.search.nodes);
    }
}
