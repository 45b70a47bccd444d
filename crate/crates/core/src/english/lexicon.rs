use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::Serialize;

use crate::corpus::{read_file, CorpusError};

/// Closed word classes of the structured-English grammar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WordClass {
    Modal,
    Subordinator,
    /// Clause-initial `next` / `then`.
    Marker,
    Modifier,
    Conjunction,
    Be,
    /// Linking verbs that behave like a be-form (`remains low`).
    Copula,
    Filter,
    Negator,
    Particle,
    Pronoun,
    /// Subordinators outside the supported grammar; parsing them fails.
    Unsupported,
}

impl WordClass {
    fn from_name(s: &str) -> Option<Self> {
        use WordClass::*;
        Some(match s {
            "modal" => Modal,
            "subordinator" => Subordinator,
            "marker" => Marker,
            "modifier" => Modifier,
            "conjunction" => Conjunction,
            "be" => Be,
            "copula" => Copula,
            "filter" => Filter,
            "negator" => Negator,
            "particle" => Particle,
            "pronoun" => Pronoun,
            "unsupported" => Unsupported,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lexicon {
    classes: BTreeMap<String, WordClass>,
    /// Time unit word to seconds.
    pub time_units: BTreeMap<String, u32>,
    /// Irregular verb forms to lemma (`lost` to `lose`).
    pub verb_exceptions: BTreeMap<String, String>,
}

const DEFAULT_CLASSES: &[(WordClass, &[&str])] = &[
    (
        WordClass::Modal,
        &["shall", "should", "will", "would", "can", "could", "must", "may", "might"],
    ),
    (
        WordClass::Subordinator,
        &["if", "after", "once", "when", "whenever", "while", "before", "until"],
    ),
    (WordClass::Marker, &["next", "then"]),
    (
        WordClass::Modifier,
        &["globally", "always", "sometimes", "eventually"],
    ),
    (WordClass::Conjunction, &["and", "or"]),
    (
        WordClass::Be,
        &["is", "are", "be", "been", "being", "was", "were"],
    ),
    (
        WordClass::Copula,
        &["remain", "remains", "stay", "stays", "become", "becomes"],
    ),
    (WordClass::Filter, &["the", "a", "an"]),
    (WordClass::Negator, &["not", "no"]),
    (WordClass::Particle, &["on", "off", "up", "out", "down", "in"]),
    (WordClass::Pronoun, &["it"]),
    (
        WordClass::Unsupported,
        &["unless", "since", "because", "although", "though", "whereas", "as"],
    ),
];

const DEFAULT_EXCEPTIONS: &[(&str, &str)] = &[
    ("lost", "lose"),
    ("ran", "run"),
    ("done", "do"),
    ("did", "do"),
    ("sent", "send"),
    ("held", "hold"),
    ("made", "make"),
    ("taken", "take"),
    ("took", "take"),
    ("given", "give"),
    ("gave", "give"),
    ("built", "build"),
    ("left", "leave"),
    ("begun", "begin"),
    ("began", "begin"),
    ("gone", "go"),
    ("went", "go"),
    ("kept", "keep"),
    ("found", "find"),
    ("brought", "bring"),
    ("bought", "buy"),
    ("told", "tell"),
    ("sold", "sell"),
    ("shown", "show"),
    ("seen", "see"),
    ("written", "write"),
    ("chosen", "choose"),
    ("frozen", "freeze"),
    ("has", "have"),
    ("does", "do"),
    ("goes", "go"),
];

impl Default for Lexicon {
    fn default() -> Self {
        let mut classes = BTreeMap::new();
        for (class, words) in DEFAULT_CLASSES {
            for w in *words {
                classes.insert(w.to_string(), *class);
            }
        }
        Lexicon {
            classes,
            time_units: [("second", 1), ("seconds", 1), ("minute", 60), ("minutes", 60)]
                .iter()
                .map(|(w, f)| (w.to_string(), *f))
                .collect(),
            verb_exceptions: DEFAULT_EXCEPTIONS
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        }
    }
}

impl Lexicon {
    /// Class of a word, case-insensitively.
    pub fn class(&self, word: &str) -> Option<WordClass> {
        self.classes.get(&word.to_lowercase()).copied()
    }

    pub fn is(&self, word: &str, class: WordClass) -> bool {
        self.class(word) == Some(class)
    }

    pub fn words_of(&self, class: WordClass) -> BTreeSet<&str> {
        self.classes
            .iter()
            .filter(|(_, c)| **c == class)
            .map(|(w, _)| w.as_str())
            .collect()
    }

    pub fn time_unit_seconds(&self, word: &str) -> Option<u32> {
        self.time_units.get(&word.to_lowercase()).copied()
    }

    /// Moves `word` into `class`, keeping the classes disjoint.
    pub fn set_class(&mut self, word: &str, class: WordClass) {
        self.classes.insert(word.to_lowercase(), class);
    }

    /// Applies a lexicon extension file with `word : class` lines. Besides
    /// the class names, `lemma=BASE` adds an irregular form and
    /// `time_unit=SECONDS` declares a time unit.
    pub fn extend_from_str(&mut self, text: &str) -> Result<(), CorpusError> {
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let malformed = |reason: String| CorpusError::MalformedLine { line, reason };
            let (word, spec) = trimmed
                .split_once(':')
                .ok_or_else(|| malformed("expected 'word : class'".into()))?;
            let word = word.trim().to_lowercase();
            let spec = spec.trim();
            if word.is_empty() || word.contains(char::is_whitespace) {
                return Err(malformed(format!("bad word '{word}'")));
            }
            if let Some(base) = spec.strip_prefix("lemma=") {
                self.verb_exceptions
                    .insert(word, base.trim().to_lowercase());
            } else if let Some(secs) = spec.strip_prefix("time_unit=") {
                let secs: u32 = secs
                    .trim()
                    .parse()
                    .map_err(|_| malformed(format!("bad seconds '{secs}'")))?;
                if secs == 0 {
                    return Err(malformed("time unit must be positive".into()));
                }
                self.classes.remove(&word);
                self.time_units.insert(word, secs);
            } else if spec == "time_unit" {
                self.classes.remove(&word);
                self.time_units.insert(word, 1);
            } else {
                let class = WordClass::from_name(spec)
                    .ok_or_else(|| malformed(format!("unknown word class '{spec}'")))?;
                self.time_units.remove(&word);
                self.set_class(&word, class);
            }
        }
        Ok(())
    }

    pub fn load(path: Option<&Path>) -> Result<Self, CorpusError> {
        let mut lex = Lexicon::default();
        if let Some(p) = path {
            lex.extend_from_str(&read_file(p)?)?;
        }
        Ok(lex)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_classes_are_disjoint() {
        let lex = Lexicon::default();
        let mut seen = BTreeSet::new();
        for (_, words) in DEFAULT_CLASSES {
            for w in *words {
                assert!(seen.insert(*w), "{w} listed twice");
            }
        }
        assert!(lex.is("Will", WordClass::Modal));
        assert_eq!(lex.time_unit_seconds("Seconds"), Some(1));
    }

    #[test]
    fn extension_file() {
        let mut lex = Lexicon::default();
        lex.extend_from_str("minutes : time_unit=60\nwent : lemma=go\nunless : subordinator\n")
            .unwrap();
        assert_eq!(lex.time_unit_seconds("minutes"), Some(60));
        assert!(lex.is("unless", WordClass::Subordinator));
        assert!(lex.extend_from_str("foo : adjective").is_err());
    }
}
