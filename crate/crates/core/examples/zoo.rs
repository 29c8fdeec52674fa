//! Generate Zoo domains: `cargo run --example zoo -- indirect 8`.
use lang_e::corpus::{generate, terrain, ZooVariant};

fn main() {
    let mut args = std::env::args().skip(1);
    let variant = args.next().and_then(|v| ZooVariant::parse(&v)).unwrap_or(ZooVariant::Dual);
    let n: usize = args.next().and_then(|v| v.parse().ok()).unwrap_or(6);
    let t = terrain(n, true);
    eprintln!("neighbors {:?}, gates {:?}", t.neighbors, t.gates);
    print!("{}", generate(variant, n));
}
