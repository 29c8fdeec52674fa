//! Run the golden-conclusion suite.
use lang_e::corpus::run_golden;
use lang_e::query::QueryOptions;

fn main() {
    let report = run_golden(&QueryOptions { budget: None, slice: true });
    print!("{report}");
    println!("{} of {} passed", report.outcomes.iter().filter(|o| o.passed()).count(), report.outcomes.len());
}
