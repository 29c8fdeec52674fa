//! The propositional backend: fragment check, CNF, solving, DIMACS.
use lang_e::corpus::file;
use lang_e::ground::{ground, GroundAtom};
use lang_e::parser::{parse_domain, parse_domain_sources, parse_query};
use lang_e::sat::{answer_sat, check_fragment, compile, solve, to_dimacs};
use lang_e::syntax::TimePoint;

fn main() {
    let d = parse_domain(file("bulb.e").unwrap()).unwrap().domain;
    let t = ground(&d, TimePoint(4)).unwrap();
    print!("bulb: {}", check_fragment(&t));
    let cnf = compile(&t).unwrap();
    println!("{} variables, {} clauses", cnf.num_vars, cnf.clauses.len());
    let light = t.fluent_id(&GroundAtom::new("Light", &[])).unwrap();
    let (r, stats) = solve(&cnf, &[-cnf.fluent_var(light, 4)], None).unwrap();
    println!("with neg Light at 4: sat = {}, {stats:?}", r.is_sat());
    let q = parse_query("skeptical { Light holds-at 4 }", &d.signature).unwrap();
    println!("skeptical Light at 4: {}", answer_sat(&t, &q, None).unwrap().answer);
    println!("\n{}", to_dimacs(&cnf).lines().filter(|l| !l.starts_with('c')).take(6).collect::<Vec<_>>().join("\n"));

    let zoo = parse_domain_sources(&[file("zoo_dual.e").unwrap(), file("scenario_2_5.e").unwrap()]).unwrap().domain;
    let zt = ground(&zoo, TimePoint(4)).unwrap();
    print!("\nzoo scenario:\n{}", check_fragment(&zt));
}
