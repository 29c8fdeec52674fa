use lang_e::corpus::{load_corpus, run_golden};
use lang_e::query::QueryOptions;

#[test]
fn corpus_loads() {
    let corpus = load_corpus().unwrap();
    assert_eq!(corpus.len(), 6);
}

#[test]
fn golden_suite_passes() {
    let report = run_golden(&QueryOptions { budget: None, slice: true });
    println!("{report}");
    assert!(report.all_passed(), "{report}");
}
