//! Loaders for the three user inputs: the requirements file, the antonym
//! dictionary and the run configuration.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CorpusError {
    #[error("duplicate requirement id {id} on line {line}")]
    DuplicateId { id: String, line: usize },
    #[error("malformed line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("the requirements file contains no requirements")]
    EmptyCorpus,
    #[error("'{0}' is listed as its own antonym")]
    SelfAntonym(String),
    #[error("invalid value for '{key}': {reason}")]
    InvalidValue { key: String, reason: String },
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
}

pub(crate) fn read_file(path: &Path) -> Result<String, CorpusError> {
    std::fs::read_to_string(path).map_err(|e| CorpusError::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })
}

/// One identified structured-English sentence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Requirement {
    pub id: String,
    pub text: String,
    /// 1-based source line.
    pub line: usize,
}

/// Parses `ID: sentence.` lines; blank lines and `#` comments are skipped.
pub fn parse_requirements(text: &str) -> Result<Vec<Requirement>, CorpusError> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (id, sentence) = trimmed.split_once(':').ok_or(CorpusError::MalformedLine {
            line,
            reason: "expected 'ID: sentence'".into(),
        })?;
        let id = id.trim();
        let sentence = sentence.trim();
        if id.is_empty() || id.contains(char::is_whitespace) {
            return Err(CorpusError::MalformedLine {
                line,
                reason: format!("bad requirement id '{id}'"),
            });
        }
        if sentence.is_empty() || !sentence.ends_with('.') {
            return Err(CorpusError::MalformedLine {
                line,
                reason: "sentence must be non-empty and end with a period".into(),
            });
        }
        if !seen.insert(id.to_string()) {
            return Err(CorpusError::DuplicateId {
                id: id.to_string(),
                line,
            });
        }
        out.push(Requirement {
            id: id.to_string(),
            text: sentence.to_string(),
            line,
        });
    }
    if out.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    Ok(out)
}

pub fn load_requirements(path: &Path) -> Result<Vec<Requirement>, CorpusError> {
    parse_requirements(&read_file(path)?)
}

/// Serializes requirements in the file format. Line numbers are not kept.
pub fn write_requirements(reqs: &[Requirement]) -> String {
    let mut s = String::new();
    for r in reqs {
        let _ = writeln!(s, "{}: {}", r.id, r.text);
    }
    s
}

pub const DEFAULT_PREFIXES: [&str; 4] = ["un", "in", "dis", "non"];

/// Symmetric antonym relation over lowercase words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AntonymDictionary {
    pub entries: BTreeMap<String, BTreeSet<String>>,
    /// Negative prefixes, tried in order.
    pub prefix_rules: Vec<String>,
}

impl Default for AntonymDictionary {
    fn default() -> Self {
        AntonymDictionary {
            entries: BTreeMap::new(),
            prefix_rules: DEFAULT_PREFIXES.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl AntonymDictionary {
    pub fn antonyms(&self, word: &str) -> BTreeSet<String> {
        self.entries.get(word).cloned().unwrap_or_default()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains_key(word)
    }

    pub fn are_antonyms(&self, a: &str, b: &str) -> bool {
        self.entries.get(a).is_some_and(|s| s.contains(b))
    }

    /// Adds `b` to `a`'s antonyms and vice versa.
    pub fn insert_pair(&mut self, a: &str, b: &str) -> Result<(), CorpusError> {
        let (a, b) = (a.to_lowercase(), b.to_lowercase());
        if a == b {
            return Err(CorpusError::SelfAntonym(a));
        }
        self.entries.entry(a.clone()).or_default().insert(b.clone());
        self.entries.entry(b).or_default().insert(a);
        Ok(())
    }

    /// Makes the relation symmetric. Idempotent.
    pub fn close(&mut self) {
        let pairs: Vec<(String, String)> = self
            .entries
            .iter()
            .flat_map(|(a, bs)| bs.iter().map(move |b| (a.clone(), b.clone())))
            .collect();
        for (a, b) in pairs {
            self.entries.entry(b).or_default().insert(a);
        }
    }
}

/// Parses `word : antonym1, antonym2` lines. An optional
/// `@prefixes: un, in, dis, non` line replaces the negative prefix list.
pub fn parse_dictionary(text: &str) -> Result<AntonymDictionary, CorpusError> {
    let mut dict = AntonymDictionary::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (lhs, rhs) = trimmed.split_once(':').ok_or(CorpusError::MalformedLine {
            line,
            reason: "expected 'word : antonym, ...'".into(),
        })?;
        let lhs = lhs.trim().to_lowercase();
        let words: Vec<String> = rhs
            .split(',')
            .map(|w| w.trim().to_lowercase())
            .filter(|w| !w.is_empty())
            .collect();
        if lhs == "@prefixes" {
            dict.prefix_rules = words;
            continue;
        }
        if lhs.is_empty() || lhs.contains(char::is_whitespace) {
            return Err(CorpusError::MalformedLine {
                line,
                reason: format!("bad dictionary word '{lhs}'"),
            });
        }
        dict.entries.entry(lhs.clone()).or_default();
        for w in words {
            if w.contains(char::is_whitespace) {
                return Err(CorpusError::MalformedLine {
                    line,
                    reason: format!("bad antonym '{w}'"),
                });
            }
            dict.insert_pair(&lhs, &w)?;
        }
    }
    dict.close();
    Ok(dict)
}

pub fn load_antonym_dictionary(path: &Path) -> Result<AntonymDictionary, CorpusError> {
    parse_dictionary(&read_file(path)?)
}

/// Allowed sign of the arrival error for a chain length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    /// `0 <= Δ < d`: the abstract event may arrive early.
    Nonneg,
    /// `-d < Δ <= 0`: the abstract event may arrive late.
    Nonpos,
}

impl std::str::FromStr for Sign {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "nonneg" => Ok(Sign::Nonneg),
            "nonpos" => Ok(Sign::Nonpos),
            other => Err(format!("expected nonneg or nonpos, got '{other}'")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignPolicy {
    pub default: Sign,
    /// Per-requirement overrides, keyed by requirement id.
    pub per_requirement: BTreeMap<String, Sign>,
}

impl SignPolicy {
    pub fn global(sign: Sign) -> Self {
        SignPolicy {
            default: sign,
            per_requirement: BTreeMap::new(),
        }
    }

    pub fn sign_for(&self, id: &str) -> Sign {
        self.per_requirement.get(id).copied().unwrap_or(self.default)
    }
}

/// Parses a sign map: `ID : nonneg|nonpos` lines, `default : ...` optional.
pub fn parse_sign_policy(text: &str) -> Result<SignPolicy, CorpusError> {
    let mut policy = SignPolicy::global(Sign::Nonneg);
    for (idx, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (k, v) = trimmed.split_once(':').ok_or(CorpusError::MalformedLine {
            line: idx + 1,
            reason: "expected 'ID : nonneg|nonpos'".into(),
        })?;
        let sign: Sign = v.parse().map_err(|reason| CorpusError::InvalidValue {
            key: k.trim().to_string(),
            reason,
        })?;
        if k.trim() == "default" {
            policy.default = sign;
        } else {
            policy.per_requirement.insert(k.trim().to_string(), sign);
        }
    }
    Ok(policy)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    /// Seconds represented by one next step before abstraction.
    pub unit_time: u32,
    /// Upper bound `B` on the summed absolute arrival error.
    pub delta_bound: u32,
    pub sign_policy: SignPolicy,
    pub k_max: u32,
    pub gcd_only: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            unit_time: 1,
            delta_bound: 0,
            sign_policy: SignPolicy::global(Sign::Nonneg),
            k_max: 6,
            gcd_only: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CorpusError> {
        if self.unit_time == 0 {
            return Err(CorpusError::InvalidValue {
                key: "unit_time".into(),
                reason: "must be at least 1".into(),
            });
        }
        if self.k_max == 0 {
            return Err(CorpusError::InvalidValue {
                key: "k_max".into(),
                reason: "must be at least 1".into(),
            });
        }
        Ok(())
    }
}

fn parse_num(key: &str, v: &str) -> Result<u32, CorpusError> {
    v.trim().parse().map_err(|e: std::num::ParseIntError| CorpusError::InvalidValue {
        key: key.to_string(),
        reason: e.to_string(),
    })
}

/// Parses a `key = value` config file. Keys: `unit_time`, `B`
/// (or `delta_bound`), `sign_policy`, `k_max`, `gcd_only`, and
/// `sign.<ID>` for per-requirement signs.
pub fn parse_config(text: &str) -> Result<RunConfig, CorpusError> {
    let mut cfg = RunConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (k, v) = trimmed.split_once('=').ok_or(CorpusError::MalformedLine {
            line: idx + 1,
            reason: "expected 'key = value'".into(),
        })?;
        let (k, v) = (k.trim(), v.trim());
        let invalid = |reason: String| CorpusError::InvalidValue {
            key: k.to_string(),
            reason,
        };
        match k {
            "unit_time" => cfg.unit_time = parse_num(k, v)?,
            "B" | "delta_bound" => cfg.delta_bound = parse_num(k, v)?,
            "k_max" => cfg.k_max = parse_num(k, v)?,
            "gcd_only" => {
                cfg.gcd_only = v
                    .parse()
                    .map_err(|e: std::str::ParseBoolError| invalid(e.to_string()))?
            }
            "sign_policy" => cfg.sign_policy.default = v.parse().map_err(invalid)?,
            _ => {
                if let Some(id) = k.strip_prefix("sign.") {
                    let sign = v.parse().map_err(invalid)?;
                    cfg.sign_policy.per_requirement.insert(id.to_string(), sign);
                } else {
                    return Err(invalid("unknown key".into()));
                }
            }
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn load_config(path: Option<&Path>) -> Result<RunConfig, CorpusError> {
    match path {
        None => Ok(RunConfig::default()),
        Some(p) => parse_config(&read_file(p)?),
    }
}
