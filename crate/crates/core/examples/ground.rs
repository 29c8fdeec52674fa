//! Ground the shipped Zoo domain and print its size statistics.
use lang_e::corpus::{file, ground_default};
use lang_e::ground::dump;
use lang_e::parser::parse_domain_sources;

fn main() {
    let d = parse_domain_sources(&[file("zoo_dual.e").unwrap(), file("scenario_2_5.e").unwrap()]).unwrap().domain;
    let t = ground_default(&d).unwrap();
    println!("horizon {}", t.horizon);
    print!("{}", t.stats());
    let true_constants = t.constants.iter().filter(|(_, v)| **v).count();
    println!("true constant atoms after closure: {true_constants}");
    println!("\nfirst ground statements:");
    for line in dump(&t).lines().filter(|l| l.contains("initiates")).take(5) {
        println!("  {line}");
    }
}
