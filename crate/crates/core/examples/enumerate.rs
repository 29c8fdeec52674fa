//! Every model of the bulb domain without its initial observation.
use lang_e::corpus::file;
use lang_e::ground::ground;
use lang_e::parser::parse_domain;
use lang_e::query::enumerate_models;
use lang_e::syntax::TimePoint;

fn main() {
    let d = parse_domain(file("bulb_noinit.e").unwrap()).unwrap().domain;
    let t = ground(&d, TimePoint(4)).unwrap();
    let mut models = enumerate_models(&t);
    for (i, m) in models.by_ref().enumerate() {
        let rows: Vec<String> = m.describe(&t).iter().map(|s| format!("{{{}}}", s.join(","))).collect();
        println!("model {i}: {}", rows.join(" "));
    }
    println!("{:?}", models.counters());
}
