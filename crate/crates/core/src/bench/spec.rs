//! Experiment specification files: `key: value` lines, `%` comments.
//!
//! ```text
//! id: irrelevance-zoo
//! family: irrelevance
//! domain: ../zoo_dual.e
//! scenario: ../scenario_2_5.e
//! query: skeptical { rides(john, dumpo) holds-at 4 }
//! k: 0, 1, 2, 3
//! repetitions: 5
//! ```

use std::fmt;
use std::path::{Path, PathBuf};

use super::BenchError;
use crate::corpus::ZooVariant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Completeness,
    Irrelevance,
    Representation,
    Scaling,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "completeness" => Some(Family::Completeness),
            "irrelevance" => Some(Family::Irrelevance),
            "representation" => Some(Family::Representation),
            "scaling" => Some(Family::Scaling),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Completeness => "completeness",
            Family::Irrelevance => "irrelevance",
            Family::Representation => "representation",
            Family::Scaling => "scaling",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    #[default]
    Engine,
    Sat,
}

impl Backend {
    pub fn parse(s: &str) -> Option<Backend> {
        match s {
            "engine" => Some(Backend::Engine),
            "sat" => Some(Backend::Sat),
            _ => None,
        }
    }
}

/// Enrichment level: a number of added observations, or every conclusion found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Count(usize),
    All,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Count(n) => write!(f, "{n}"),
            Level::All => f.write_str("all"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub id: String,
    pub family: Family,
    /// Domain file. Representation and scaling runs generate Zoo domains instead.
    pub domain: Option<PathBuf>,
    pub scenario: Option<PathBuf>,
    pub queries: Vec<String>,
    pub k: Vec<usize>,
    pub levels: Vec<Level>,
    pub variants: Vec<ZooVariant>,
    pub positions: Vec<usize>,
    pub repetitions: usize,
    pub backend: Backend,
    pub budget: Option<u64>,
    pub slice: bool,
    /// Relative paths are resolved against this directory.
    pub base: PathBuf,
}

impl ExperimentSpec {
    pub fn new(id: &str, family: Family) -> Self {
        ExperimentSpec {
            id: id.to_string(),
            family,
            domain: None,
            scenario: None,
            queries: Vec::new(),
            k: vec![0],
            levels: vec![Level::Count(0)],
            variants: vec![ZooVariant::Dual],
            positions: vec![crate::corpus::ZOO_POSITIONS],
            repetitions: 5,
            backend: Backend::Engine,
            budget: None,
            slice: true,
            base: PathBuf::from("."),
        }
    }

    pub fn from_file(path: &Path) -> Result<Self, BenchError> {
        let text = std::fs::read_to_string(path).map_err(|e| BenchError::Io(path.display().to_string(), e.to_string()))?;
        let mut spec = Self::parse(&text)?;
        spec.base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(spec)
    }

    pub fn parse(text: &str) -> Result<Self, BenchError> {
        let mut fields: Vec<(usize, String, String)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('%').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once(':')
                .ok_or_else(|| BenchError::Spec(format!("line {}: expected `key: value`", i + 1)))?;
            fields.push((i + 1, k.trim().to_string(), v.trim().to_string()));
        }
        let family = fields
            .iter()
            .find(|f| f.1 == "family")
            .ok_or_else(|| BenchError::Spec("missing `family`".into()))?;
        let family = Family::parse(&family.2).ok_or_else(|| BenchError::Spec(format!("line {}: unknown family `{}`", family.0, family.2)))?;
        let mut spec = ExperimentSpec::new("experiment", family);
        for (line, key, value) in fields {
            let bad = |what: &str| BenchError::Spec(format!("line {line}: bad {what} `{value}`"));
            let list = || value.split(',').map(str::trim).filter(|s| !s.is_empty());
            match key.as_str() {
                "family" => {}
                "id" => spec.id = value.clone(),
                "domain" => spec.domain = Some(PathBuf::from(&value)),
                "scenario" => spec.scenario = Some(PathBuf::from(&value)),
                "query" => spec.queries.push(value.clone()),
                "k" => spec.k = list().map(|s| s.parse().map_err(|_| bad("k"))).collect::<Result<_, _>>()?,
                "level" => {
                    spec.levels = list()
                        .map(|s| if s == "all" { Ok(Level::All) } else { s.parse().map(Level::Count).map_err(|_| bad("level")) })
                        .collect::<Result<_, _>>()?
                }
                "variants" => spec.variants = list().map(|s| ZooVariant::parse(s).ok_or_else(|| bad("variant"))).collect::<Result<_, _>>()?,
                "positions" => spec.positions = list().map(|s| s.parse().map_err(|_| bad("position count"))).collect::<Result<_, _>>()?,
                "repetitions" => spec.repetitions = value.parse().map_err(|_| bad("repetition count"))?,
                "backend" => spec.backend = Backend::parse(&value).ok_or_else(|| bad("backend"))?,
                "budget" => spec.budget = Some(value.parse().map_err(|_| bad("budget"))?),
                "slice" => {
                    spec.slice = match value.as_str() {
                        "on" => true,
                        "off" => false,
                        _ => return Err(bad("slice setting")),
                    }
                }
                _ => return Err(BenchError::Spec(format!("line {line}: unknown key `{key}`"))),
            }
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        let err = |m: &str| Err(BenchError::Spec(format!("{}: {m}", self.id)));
        if self.repetitions < 3 {
            return err("repetitions must be at least 3");
        }
        if self.queries.is_empty() {
            return err("no query");
        }
        match self.family {
            Family::Completeness | Family::Irrelevance if self.domain.is_none() => err("needs a domain"),
            Family::Scaling if self.positions.iter().any(|p| !(3..=15).contains(p)) => err("positions must lie in 3..=15"),
            Family::Representation | Family::Scaling if self.variants.is_empty() || self.positions.is_empty() => {
                err("needs variants and positions")
            }
            Family::Irrelevance if self.k.is_empty() => err("needs k values"),
            Family::Completeness if self.levels.is_empty() => err("needs levels"),
            _ => Ok(()),
        }
    }

    /// Reads a referenced file. Names not found on disk fall back to the
    /// embedded corpus by file name.
    pub fn read(&self, path: &Path) -> Result<String, BenchError> {
        let full = self.base.join(path);
        match std::fs::read_to_string(&full) {
            Ok(t) => Ok(t),
            Err(e) => path
                .file_name()
                .and_then(|n| crate::corpus::file(&n.to_string_lossy()))
                .map(str::to_string)
                .ok_or_else(|| BenchError::Io(full.display().to_string(), e.to_string())),
        }
    }
}
