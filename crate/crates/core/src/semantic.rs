//! Antonym reasoning over the predicate complements of each subject.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::corpus::AntonymDictionary;
use crate::english::{Clause, PredicateForm, SyntaxTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    /// No antonym found yet.
    Green,
    /// Part of at least one reported pair.
    Blue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordEntry {
    pub word: String,
    pub antonyms: BTreeSet<String>,
    pub color: Color,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubjectGroup {
    pub subject: String,
    pub dep: BTreeSet<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Candidates {
    /// One group per distinct subject, sorted by subject.
    pub groups: Vec<SubjectGroup>,
    pub words: BTreeMap<String, WordEntry>,
}

impl Candidates {
    pub fn group(&self, subject: &str) -> Option<&SubjectGroup> {
        self.groups.iter().find(|g| g.subject == subject)
    }
}

/// Unordered word pair stored with the smaller word first.
pub type Pair = (String, String);

pub fn pair(a: &str, b: &str) -> Pair {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AntonymTable {
    pub pairs: BTreeSet<Pair>,
    #[serde(serialize_with = "ser_pair_map")]
    pub positive_of: BTreeMap<Pair, String>,
    /// Pairs found in each subject's group.
    pub by_subject: BTreeMap<String, BTreeSet<Pair>>,
    /// Final colors of the candidate words.
    pub words: BTreeMap<String, WordEntry>,
}

fn ser_pair_map<S: serde::Serializer>(
    map: &BTreeMap<Pair, String>,
    s: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut m = s.serialize_map(Some(map.len()))?;
    for ((a, b), v) in map {
        m.serialize_entry(&format!("{a}/{b}"), v)?;
    }
    m.end()
}

impl AntonymTable {
    pub fn color(&self, word: &str) -> Color {
        self.words.get(word).map_or(Color::Green, |e| e.color)
    }

    /// Positive word replacing `word` for `subject`, when `word` is the
    /// negative side of a pair in that subject's group. The first such pair
    /// in sorted order decides.
    pub fn negative_rewrite(&self, subject: &str, word: &str) -> Option<&str> {
        let pairs = self.by_subject.get(subject)?;
        pairs
            .iter()
            .filter(|(a, b)| a == word || b == word)
            .find_map(|p| {
                let pos = &self.positive_of[p];
                (pos != word).then_some(pos.as_str())
            })
    }
}

/// Antonym candidate of a clause: a be-complement, or a participle the
/// dictionary knows.
pub fn candidate_word(clause: &Clause, dictionary: &AntonymDictionary) -> Option<String> {
    let head = clause.predicate.head.to_lowercase();
    match clause.predicate.form {
        PredicateForm::BeComplement => Some(head),
        PredicateForm::BeParticiple if dictionary.contains(&head) => Some(head),
        _ => None,
    }
}

/// Groups antonym candidates by subject. Every subject of the corpus gets a
/// group, possibly with an empty dependent set.
pub fn extract_candidates(trees: &[SyntaxTree], dictionary: &AntonymDictionary) -> Candidates {
    let mut groups: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut words = BTreeMap::new();
    for tree in trees {
        for clause in tree.clauses() {
            let cand = candidate_word(clause, dictionary);
            for s in &clause.subjects {
                let dep = groups.entry(s.name.clone()).or_default();
                if let Some(w) = &cand {
                    dep.insert(w.clone());
                    words.entry(w.clone()).or_insert_with(|| WordEntry {
                        word: w.clone(),
                        antonyms: BTreeSet::new(),
                        color: Color::Green,
                    });
                }
            }
        }
    }
    Candidates {
        groups: groups
            .into_iter()
            .map(|(subject, dep)| SubjectGroup { subject, dep })
            .collect(),
        words,
    }
}

/// Pairs dictionary-linked candidates that share a subject.
///
/// The antonym set of a word is filled from the dictionary the first time
/// the word is seen green; the intersection with the group is taken for
/// every word, so a word already blue from another group still pairs here.
pub fn reason_antonyms(candidates: &Candidates, dictionary: &AntonymDictionary) -> AntonymTable {
    let mut words = candidates.words.clone();
    let mut table = AntonymTable::default();
    for group in &candidates.groups {
        if group.dep.len() <= 1 {
            continue;
        }
        for w in &group.dep {
            let entry = words.get_mut(w).expect("candidate word registered");
            if entry.color == Color::Green && entry.antonyms.is_empty() {
                entry.antonyms = dictionary.antonyms(w);
            }
            let hits: Vec<String> = entry.antonyms.intersection(&group.dep).cloned().collect();
            if hits.is_empty() {
                continue;
            }
            entry.color = Color::Blue;
            for h in hits {
                let e = words.get_mut(&h).unwrap();
                if e.antonyms.is_empty() {
                    e.antonyms = dictionary.antonyms(&h);
                }
                e.color = Color::Blue;
                let p = pair(w, &h);
                table
                    .positive_of
                    .entry(p.clone())
                    .or_insert_with(|| choose_positive(&p.0, &p.1, dictionary));
                table
                    .by_subject
                    .entry(group.subject.clone())
                    .or_default()
                    .insert(p.clone());
                table.pairs.insert(p);
            }
        }
    }
    table.words = words;
    table
}

fn negative_prefix<'a>(word: &str, dictionary: &'a AntonymDictionary) -> Option<&'a str> {
    dictionary
        .prefix_rules
        .iter()
        .find(|p| word.len() > p.len() && word.starts_with(p.as_str()))
        .map(|p| p.as_str())
}

/// Positive member of an antonym pair. A word that is another word plus a
/// negative prefix is negative; failing that, a pair with exactly one
/// prefixed word makes the other positive; otherwise the smaller word wins.
pub fn choose_positive(a: &str, b: &str, dictionary: &AntonymDictionary) -> String {
    for p in &dictionary.prefix_rules {
        if a.strip_prefix(p.as_str()) == Some(b) {
            return b.to_string();
        }
        if b.strip_prefix(p.as_str()) == Some(a) {
            return a.to_string();
        }
    }
    match (
        negative_prefix(a, dictionary).is_some(),
        negative_prefix(b, dictionary).is_some(),
    ) {
        (true, false) => b.to_string(),
        (false, true) => a.to_string(),
        _ => a.min(b).to_string(),
    }
}

/// Polarity of a word measured against all its dictionary antonyms:
/// `Some(true)` when it beats each of them, `Some(false)` when each beats
/// it, `None` when mixed or when it has no antonyms.
pub fn lone_polarity(word: &str, dictionary: &AntonymDictionary) -> Option<bool> {
    let ants = dictionary.antonyms(word);
    if ants.is_empty() {
        return None;
    }
    let wins = ants
        .iter()
        .filter(|a| choose_positive(word, a, dictionary) == word)
        .count();
    if wins == ants.len() {
        Some(true)
    } else if wins == 0 {
        Some(false)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::parse_dictionary;
    use crate::english::{parse_text, Lexicon};
    use proptest::prelude::*;

    fn dict(s: &str) -> AntonymDictionary {
        parse_dictionary(s).unwrap()
    }

    fn groups(items: &[(&str, &[&str])]) -> Candidates {
        let mut words = BTreeMap::new();
        let groups = items
            .iter()
            .map(|(s, dep)| {
                for w in *dep {
                    words.insert(
                        w.to_string(),
                        WordEntry {
                            word: w.to_string(),
                            antonyms: BTreeSet::new(),
                            color: Color::Green,
                        },
                    );
                }
                SubjectGroup {
                    subject: s.to_string(),
                    dep: dep.iter().map(|w| w.to_string()).collect(),
                }
            })
            .collect();
        Candidates { groups, words }
    }

    #[test]
    fn pulse_wave_group() {
        let lex = Lexicon::default();
        let d = dict("available : unavailable, lost\n");
        let trees: Vec<_> = [
            "If pulse_wave or arterial_line is available, and cuff is selected, corroboration is triggered.",
            "If pulse_wave and arterial_line are unavailable, and cuff is selected, and blood_pressure is not valid, next manual_mode is started.",
        ]
        .iter()
        .map(|s| parse_text(s, &lex).unwrap())
        .collect();
        let c = extract_candidates(&trees, &d);
        let pw = c.group("pulse_wave").unwrap();
        assert_eq!(
            pw.dep,
            ["available", "unavailable"].map(String::from).into()
        );
        // verb-only subjects still get a group
        assert!(c.group("corroboration").unwrap().dep.is_empty());
        assert!(c.group("cuff").unwrap().dep.is_empty());
    }

    #[test]
    fn available_pair() {
        let d = dict("available : unavailable\n");
        let t = reason_antonyms(&groups(&[("pulse_wave", &["available", "unavailable"])]), &d);
        let p = pair("available", "unavailable");
        assert!(t.pairs.contains(&p));
        assert_eq!(t.positive_of[&p], "available");
        assert_eq!(t.color("available"), Color::Blue);
        assert_eq!(t.color("unavailable"), Color::Blue);
        assert_eq!(t.negative_rewrite("pulse_wave", "unavailable"), Some("available"));
        assert_eq!(t.negative_rewrite("pulse_wave", "available"), None);
    }

    #[test]
    fn unlinked_and_singleton_groups() {
        let d = dict("available : unavailable\n");
        let t = reason_antonyms(&groups(&[("bp", &["valid", "available"])]), &d);
        assert!(t.pairs.is_empty());
        assert_eq!(t.color("valid"), Color::Green);
        // |dep| = 1 is skipped even with a dictionary entry
        let t = reason_antonyms(&groups(&[("cuff", &["available"])]), &d);
        assert!(t.pairs.is_empty());
    }

    #[test]
    fn three_word_group() {
        let d = dict("on : off\n");
        let t = reason_antonyms(&groups(&[("pump", &["on", "off", "broken"])]), &d);
        assert_eq!(t.pairs, [pair("on", "off")].into());
        assert_eq!(t.color("broken"), Color::Green);
        assert_eq!(t.color("on"), Color::Blue);
    }

    #[test]
    fn positive_choice() {
        let d = dict("available : unavailable, lost\nhigh : low\nenabled : disabled\nvalid : unavailable\n");
        assert_eq!(choose_positive("available", "unavailable", &d), "available");
        assert_eq!(choose_positive("unavailable", "available", &d), "available");
        assert_eq!(choose_positive("high", "low", &d), "high");
        assert_eq!(choose_positive("disabled", "enabled", &d), "enabled");
        assert_eq!(choose_positive("unavailable", "valid", &d), "valid");
        assert_eq!(choose_positive("available", "lost", &d), "available");
        assert_eq!(lone_polarity("low", &d), Some(false));
        assert_eq!(lone_polarity("unavailable", &d), Some(false));
        assert_eq!(lone_polarity("available", &d), Some(true));
        assert_eq!(lone_polarity("ready", &d), None);
    }

    type Case = (Vec<(String, Vec<String>)>, Vec<(String, String)>);

    fn arb_case() -> impl Strategy<Value = Case> {
        let word = prop::sample::select(vec!["a", "b", "c", "d", "ua", "e"]);
        let groups = prop::collection::vec(
            (
                prop::sample::select(vec!["s", "t", "u"]),
                prop::collection::vec(word.clone(), 0..4),
            ),
            0..4,
        );
        let links = prop::collection::vec((word.clone(), word), 0..5);
        (groups, links).prop_map(|(g, l)| {
            (
                g.into_iter()
                    .map(|(s, ws)| (s.to_string(), ws.into_iter().map(String::from).collect()))
                    .collect(),
                l.into_iter()
                    .filter(|(a, b)| a != b)
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn sound_complete_colored((gs, links) in arb_case()) {
            let mut d = AntonymDictionary::default();
            for (a, b) in &links {
                d.insert_pair(a, b).unwrap();
            }
            let mut merged: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
            for (s, ws) in &gs {
                merged.entry(s.clone()).or_default().extend(ws.iter().cloned());
            }
            let items: Vec<(String, Vec<String>)> = merged
                .iter()
                .map(|(s, ws)| (s.clone(), ws.iter().cloned().collect()))
                .collect();
            let refs: Vec<(&str, Vec<&str>)> = items
                .iter()
                .map(|(s, ws)| (s.as_str(), ws.iter().map(|w| w.as_str()).collect()))
                .collect();
            let cands = groups(
                &refs.iter().map(|(s, ws)| (*s, ws.as_slice())).collect::<Vec<_>>(),
            );
            let t = reason_antonyms(&cands, &d);
            let t2 = reason_antonyms(&cands, &d);
            prop_assert_eq!(&t, &t2);
            for g in &cands.groups {
                for a in &g.dep {
                    for b in &g.dep {
                        let linked = d.are_antonyms(a, b);
                        let found = t.by_subject.get(&g.subject).is_some_and(|ps| ps.contains(&pair(a, b)));
                        if g.dep.len() > 1 {
                            prop_assert_eq!(linked, found);
                        } else {
                            prop_assert!(!found);
                        }
                    }
                }
            }
            for (a, b) in &t.pairs {
                prop_assert!(d.are_antonyms(a, b));
                prop_assert!(t.positive_of.contains_key(&(a.clone(), b.clone())));
            }
            for w in cands.words.keys() {
                let in_pair = t.pairs.iter().any(|(a, b)| a == w || b == w);
                prop_assert_eq!(t.color(w) == Color::Blue, in_pair);
            }
        }
    }
}
