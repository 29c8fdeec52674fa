//! Shipped domains and the golden-conclusion suite.
//!
//! Files are embedded at build time. `golden.txt` holds one case per
//! blank-line-separated block of `key: value` lines:
//!
//! ```text
//! case: bulb-skeptical
//! domain: bulb.e
//! scenario: scenario.e        % optional
//! extra: a happens-at 3.      % optional, repeatable
//! query: skeptical { Light holds-at 4 }
//! expect: true
//! provenance: stated
//! ```

pub mod zoo;

use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::ground::{ground, GroundError, GroundTheory};
use crate::parser::{parse_domain_sources, parse_query, ParseError};
use crate::query::{answer_with, Answer, QueryOptions};
use crate::syntax::{DomainDescription, TimePoint};

pub use zoo::{generate, generate_spec, terrain, ZooSpec, ZooVariant};

pub const FILES: &[(&str, &str)] = &[
    ("bulb.e", include_str!("../../corpus/bulb.e")),
    ("bulb_noinit.e", include_str!("../../corpus/bulb_noinit.e")),
    ("zoo_direct.e", include_str!("../../corpus/zoo_direct.e")),
    ("zoo_indirect.e", include_str!("../../corpus/zoo_indirect.e")),
    ("zoo_dual.e", include_str!("../../corpus/zoo_dual.e")),
    ("scenario_2_5.e", include_str!("../../corpus/scenario_2_5.e")),
];

pub const GOLDEN: &str = include_str!("../../corpus/golden.txt");

/// Positions in the shipped Zoo files.
pub const ZOO_POSITIONS: usize = 6;

pub fn file(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("unknown corpus file `{0}`")]
    MissingFile(String),
    #[error("{file}: {source}")]
    Parse { file: String, source: ParseError },
    #[error("{file}: {source}")]
    Ground { file: String, source: GroundError },
    #[error("golden file, case {case}: {message}")]
    Golden { case: String, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Stated in the source text of the domain.
    Stated,
    /// Established by the exhaustive engine on this corpus.
    Derived,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenCase {
    pub name: String,
    pub domain: String,
    pub scenario: Option<String>,
    pub extra: Vec<String>,
    pub query: String,
    pub expect: Answer,
    pub provenance: Provenance,
    pub note: Option<String>,
}

impl GoldenCase {
    /// Domain, scenario, and extra statements as one description.
    pub fn description(&self) -> Result<DomainDescription, CorpusError> {
        let mut texts = vec![file(&self.domain).ok_or_else(|| CorpusError::MissingFile(self.domain.clone()))?.to_string()];
        if let Some(s) = &self.scenario {
            texts.push(file(s).ok_or_else(|| CorpusError::MissingFile(s.clone()))?.to_string());
        }
        if !self.extra.is_empty() {
            texts.push(self.extra.join("\n"));
        }
        let refs: Vec<&str> = texts.iter().map(|s| s.as_str()).collect();
        parse_domain_sources(&refs)
            .map(|u| u.domain)
            .map_err(|source| CorpusError::Parse { file: self.name.clone(), source })
    }
}

fn parse_answer(s: &str) -> Option<Answer> {
    match s {
        "true" => Some(Answer::True),
        "false" => Some(Answer::False),
        "domain-inconsistent" => Some(Answer::DomainInconsistent),
        _ => None,
    }
}

pub fn parse_golden(text: &str) -> Result<Vec<GoldenCase>, CorpusError> {
    let mut cases = Vec::new();
    let mut block: Vec<(String, String)> = Vec::new();
    let lines = text.lines().map(|l| l.split('%').next().unwrap_or("").trim());
    for line in lines.chain(std::iter::once("")) {
        if line.is_empty() {
            if !block.is_empty() {
                cases.push(golden_case(std::mem::take(&mut block))?);
            }
            continue;
        }
        let (k, v) = line.split_once(':').ok_or_else(|| CorpusError::Golden {
            case: block.first().map(|b| b.1.clone()).unwrap_or_default(),
            message: format!("expected `key: value`, got `{line}`"),
        })?;
        block.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(cases)
}

fn golden_case(block: Vec<(String, String)>) -> Result<GoldenCase, CorpusError> {
    let get = |k: &str| block.iter().find(|(key, _)| key == k).map(|(_, v)| v.clone());
    let name = get("case").unwrap_or_default();
    let err = |message: String| CorpusError::Golden { case: name.clone(), message };
    let need = |k: &str| get(k).ok_or_else(|| err(format!("missing `{k}`")));
    for (k, _) in &block {
        if !["case", "domain", "scenario", "extra", "query", "expect", "provenance", "note"].contains(&k.as_str()) {
            return Err(err(format!("unknown key `{k}`")));
        }
    }
    let expect = need("expect")?;
    let provenance = match need("provenance")?.as_str() {
        "stated" => Provenance::Stated,
        "derived" => Provenance::Derived,
        other => return Err(err(format!("provenance must be stated or derived, got `{other}`"))),
    };
    Ok(GoldenCase {
        name: need("case")?,
        domain: need("domain")?,
        scenario: get("scenario"),
        extra: block.iter().filter(|(k, _)| k == "extra").map(|(_, v)| v.clone()).collect(),
        query: need("query")?,
        expect: parse_answer(&expect).ok_or_else(|| err(format!("bad expected answer `{expect}`")))?,
        provenance,
        note: get("note"),
    })
}

pub fn golden_cases() -> Vec<GoldenCase> {
    parse_golden(GOLDEN).expect("shipped golden file parses")
}

/// Grounds a description at its default horizon: one past its last time point.
pub fn ground_default(d: &DomainDescription) -> Result<GroundTheory, GroundError> {
    ground(d, TimePoint(d.max_time().0 + 1))
}

/// Every shipped domain file with the golden cases that use it. Fails on
/// the first file that does not parse or ground.
pub fn load_corpus() -> Result<Vec<(String, DomainDescription, Vec<GoldenCase>)>, CorpusError> {
    let cases = parse_golden(GOLDEN)?;
    let mut out = Vec::new();
    for (name, text) in FILES {
        let parse_err = |source| CorpusError::Parse { file: name.to_string(), source };
        // A scenario only makes sense on top of a Zoo domain.
        let d = if name.starts_with("scenario") {
            parse_domain_sources(&[file("zoo_dual.e").unwrap(), text]).map_err(parse_err)?.domain
        } else {
            crate::parser::parse_domain(text).map_err(parse_err)?.domain
        };
        ground_default(&d).map_err(|source| CorpusError::Ground { file: name.to_string(), source })?;
        let mine = cases.iter().filter(|c| c.domain == *name).cloned().collect();
        out.push((name.to_string(), d, mine));
    }
    for c in &cases {
        c.description()?;
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct GoldenOutcome {
    pub case: GoldenCase,
    pub got: Result<Answer, String>,
    /// True fluents per time point of the witness, if any.
    pub witness: Option<Vec<Vec<String>>>,
    pub elapsed: Duration,
}

impl GoldenOutcome {
    pub fn passed(&self) -> bool {
        self.got.as_ref().is_ok_and(|a| *a == self.case.expect)
    }
}

#[derive(Debug, Clone, Default)]
pub struct GoldenReport {
    pub outcomes: Vec<GoldenOutcome>,
}

impl GoldenReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed())
    }

    pub fn failures(&self) -> impl Iterator<Item = &GoldenOutcome> {
        self.outcomes.iter().filter(|o| !o.passed())
    }

    pub fn total_time(&self) -> Duration {
        self.outcomes.iter().map(|o| o.elapsed).sum()
    }
}

impl fmt::Display for GoldenReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            let got = match &o.got {
                Ok(a) => a.to_string(),
                Err(e) => format!("error: {e}"),
            };
            let mark = if o.passed() { "ok  " } else { "FAIL" };
            writeln!(f, "{mark} {:<36} expected {:<8} got {:<8} {:>9.1} ms", o.case.name, o.case.expect.to_string(), got, o.elapsed.as_secs_f64() * 1e3)?;
            if !o.passed() {
                if let Some(w) = &o.witness {
                    for (t, s) in w.iter().enumerate() {
                        writeln!(f, "       t={t}: {}", s.join(", "))?;
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn run_case(case: &GoldenCase, opts: &QueryOptions) -> GoldenOutcome {
    let start = Instant::now();
    let mut witness = None;
    let got = (|| {
        let d = case.description().map_err(|e| e.to_string())?;
        let q = parse_query(&case.query, &d.signature).map_err(|e| e.to_string())?;
        let t = ground_default(&d).map_err(|e| e.to_string())?;
        let r = answer_with(&t, &q, opts).map_err(|e| e.to_string())?;
        witness = r.witness.as_ref().map(|w| w.describe(&t));
        Ok(r.answer)
    })();
    GoldenOutcome { case: case.clone(), got, witness, elapsed: start.elapsed() }
}

/// Runs every golden case on the engine backend.
pub fn run_golden(opts: &QueryOptions) -> GoldenReport {
    GoldenReport { outcomes: golden_cases().iter().map(|c| run_case(c, opts)).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_zoo_files_are_generated() {
        let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
        if std::env::var_os("LANG_E_WRITE_CORPUS").is_some() {
            for v in ZooVariant::ALL {
                std::fs::write(dir.join(v.file_name()), generate(v, ZOO_POSITIONS)).unwrap();
            }
        }
        for v in ZooVariant::ALL {
            let text = generate(v, ZOO_POSITIONS);
            assert_eq!(file(&v.file_name()).unwrap(), text, "{} differs from the generator", v.file_name());
        }
    }

    #[test]
    fn golden_parses() {
        let cases = golden_cases();
        assert!(cases.len() >= 7);
        assert!(cases.iter().all(|c| file(&c.domain).is_some()));
    }

    #[test]
    fn golden_rejects_bad_blocks() {
        assert!(parse_golden("case: x\ndomain: bulb.e\nquery: credulous { }\nexpect: maybe\nprovenance: stated").is_err());
        assert!(parse_golden("case: x\ndomain: bulb.e\nquery: credulous { }\nexpect: true").is_err());
        assert!(parse_golden("case: x\nwhat: y").is_err());
        assert!(parse_golden("").unwrap().is_empty());
    }

    #[test]
    fn variants_share_a_signature() {
        let sigs: Vec<_> = ZooVariant::ALL
            .iter()
            .map(|v| crate::parser::parse_domain(&generate(*v, ZOO_POSITIONS)).unwrap().domain.signature)
            .collect();
        assert_eq!(sigs[0], sigs[1]);
        assert_eq!(sigs[1], sigs[2]);
    }
}
