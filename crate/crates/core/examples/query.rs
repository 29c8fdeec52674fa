//! Credulous and skeptical queries, with witnesses.
use lang_e::corpus::{file, ground_default};
use lang_e::parser::{parse_domain, parse_query};
use lang_e::query::answer;

fn main() {
    for name in ["bulb.e", "bulb_noinit.e"] {
        let d = parse_domain(file(name).unwrap()).unwrap().domain;
        let t = ground_default(&d).unwrap();
        for text in ["skeptical { Light holds-at 4 }", "credulous { Light holds-at 4 }"] {
            let r = answer(&t, &parse_query(text, &d.signature).unwrap()).unwrap();
            println!("{name}: {text} => {}", r.answer);
            if let Some(w) = &r.witness {
                for (i, s) in w.describe(&t).iter().enumerate() {
                    println!("    {i}: {}", s.join(", "));
                }
            }
            println!("    {}", r.to_record(&t));
        }
    }
}
