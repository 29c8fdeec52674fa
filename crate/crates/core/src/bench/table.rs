//! Result tables: TSV with `#` header lines, and JSON lines.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::BenchError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub version: String,
    pub machine: String,
}

impl Fingerprint {
    pub fn current() -> Self {
        let threads = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
        let cpu = std::fs::read_to_string("/proc/cpuinfo")
            .ok()
            .and_then(|s| s.lines().find(|l| l.starts_with("model name")).and_then(|l| l.split_once(':')).map(|(_, v)| v.trim().to_string()))
            .unwrap_or_else(|| "unknown cpu".to_string());
        let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
        Fingerprint {
            version: format!("lang-e {}", env!("CARGO_PKG_VERSION")),
            machine: format!("{} {}, {threads} threads, {cpu}, {profile} build", std::env::consts::OS, std::env::consts::ARCH),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub experiment: String,
    pub family: String,
    /// Knob settings, e.g. `k=2` or `variant=dual,positions=6`.
    pub knobs: String,
    pub query: String,
    /// `true`, `false`, `domain-inconsistent`, or `-` when no answer was computed.
    pub answer: String,
    pub median_ms: f64,
    pub min_ms: f64,
    pub max_ms: f64,
    pub ground_ms: f64,
    pub fluents: usize,
    /// Ground law instances per time point (see `GroundStats::per_time_point`).
    pub clauses: usize,
    /// Search nodes (engine) or decisions (sat) of the last repetition.
    pub nodes: u64,
    /// Empty, or what went wrong: `budget-exceeded`, `answer-changed`, `unstable`, `error: ...`.
    pub flag: String,
}

const COLUMNS: [&str; 13] = [
    "experiment", "family", "knobs", "query", "answer", "median_ms", "min_ms", "max_ms", "ground_ms", "fluents", "clauses", "nodes", "flag",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultTable {
    pub fingerprint: Fingerprint,
    pub rows: Vec<Row>,
}

fn clean(s: &str) -> String {
    s.replace(['\t', '\n'], " ")
}

impl ResultTable {
    pub fn new() -> Self {
        ResultTable { fingerprint: Fingerprint::current(), rows: Vec::new() }
    }

    pub fn flagged(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| !r.flag.is_empty())
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# version: {}", self.fingerprint.version);
        let _ = writeln!(out, "# machine: {}", self.fingerprint.machine);
        let _ = writeln!(out, "{}", COLUMNS.join("\t"));
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{:.3}\t{:.3}\t{:.3}\t{:.3}\t{}\t{}\t{}\t{}",
                clean(&r.experiment),
                clean(&r.family),
                clean(&r.knobs),
                clean(&r.query),
                clean(&r.answer),
                r.median_ms,
                r.min_ms,
                r.max_ms,
                r.ground_ms,
                r.fluents,
                r.clauses,
                r.nodes,
                clean(&r.flag)
            );
        }
        out
    }

    pub fn parse_tsv(text: &str) -> Result<Self, BenchError> {
        let mut version = None;
        let mut machine = None;
        let mut rows = Vec::new();
        let mut header_seen = false;
        for (i, line) in text.lines().enumerate() {
            let err = |m: &str| BenchError::Table(format!("line {}: {m}", i + 1));
            if let Some(h) = line.strip_prefix("# ") {
                if let Some(v) = h.strip_prefix("version: ") {
                    version = Some(v.to_string());
                } else if let Some(m) = h.strip_prefix("machine: ") {
                    machine = Some(m.to_string());
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            if !header_seen {
                if !line.starts_with("experiment\t") {
                    return Err(err("missing column header"));
                }
                header_seen = true;
                continue;
            }
            let f: Vec<&str> = line.split('\t').collect();
            if f.len() != COLUMNS.len() {
                return Err(err("wrong column count"));
            }
            let num = |s: &str| s.parse::<f64>().map_err(|_| err("bad number"));
            let int = |s: &str| s.parse::<u64>().map_err(|_| err("bad count"));
            rows.push(Row {
                experiment: f[0].into(),
                family: f[1].into(),
                knobs: f[2].into(),
                query: f[3].into(),
                answer: f[4].into(),
                median_ms: num(f[5])?,
                min_ms: num(f[6])?,
                max_ms: num(f[7])?,
                ground_ms: num(f[8])?,
                fluents: int(f[9])? as usize,
                clauses: int(f[10])? as usize,
                nodes: int(f[11])?,
                flag: f[12].into(),
            });
        }
        let missing = |what: &str| BenchError::Table(format!("missing {what} line"));
        Ok(ResultTable {
            fingerprint: Fingerprint { version: version.ok_or_else(|| missing("version"))?, machine: machine.ok_or_else(|| missing("machine"))? },
            rows,
        })
    }

    /// First line: the fingerprint; then one object per row.
    pub fn to_json_lines(&self) -> String {
        let mut out = serde_json::to_string(&self.fingerprint).expect("serializes");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&serde_json::to_string(r).expect("serializes"));
            out.push('\n');
        }
        out
    }
}

impl Default for ResultTable {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tsv_round_trip() {
        let mut t = ResultTable::new();
        t.rows.push(Row {
            experiment: "e".into(),
            family: "irrelevance".into(),
            knobs: "k=1".into(),
            query: "skeptical { Light holds-at 4 }".into(),
            answer: "true".into(),
            median_ms: 1.5,
            min_ms: 1.25,
            max_ms: 2.0,
            ground_ms: 0.125,
            fluents: 2,
            clauses: 7,
            nodes: 12,
            flag: String::new(),
        });
        assert_eq!(ResultTable::parse_tsv(&t.to_tsv()).unwrap(), t);
        assert_eq!(t.to_json_lines().lines().count(), 2);
        assert!(ResultTable::parse_tsv("experiment\tx\n").is_err());
    }
}
