//! Syntax trees to LTL: propositions, scope templates, abbreviation.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::corpus::{AntonymDictionary, Requirement};
use crate::english::{
    effective_conjunctions, parse_text, Clause, ClauseGroup, Conjunction, EnglishError, Join,
    Lexicon, PredicateForm, SyntaxTree,
};
use crate::ltl::Formula;
use crate::semantic::{
    candidate_word, extract_candidates, lone_polarity, reason_antonyms, AntonymTable, Candidates,
    Color,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("{id} (line {line}): {source}")]
    Sentence {
        id: String,
        line: usize,
        #[source]
        source: EnglishError,
    },
    #[error("{id}: unsupported construct: {description}")]
    UnsupportedConstruct { id: String, description: String },
    #[error("{id}: {amount} {unit} is not a multiple of the unit time {unit_time} s")]
    UnevenDuration {
        id: String,
        amount: u32,
        unit: String,
        unit_time: u32,
    },
    #[error("proposition name '{name}' used for both {first} and {second}")]
    NameCollision {
        name: String,
        first: String,
        second: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslateOptions {
    /// Seconds per Next step.
    pub unit_time: u32,
    /// Rename propositions to their bare subject where allowed.
    pub abbreviate: bool,
}

impl Default for TranslateOptions {
    fn default() -> Self {
        TranslateOptions {
            unit_time: 1,
            abbreviate: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranslationUnit {
    pub id: String,
    pub formula: Formula,
    pub propositions: BTreeSet<String>,
}

impl TranslationUnit {
    pub fn new(id: impl Into<String>, formula: Formula) -> Self {
        let propositions = formula.atoms();
        TranslationUnit {
            id: id.into(),
            formula,
            propositions,
        }
    }
}

/// Renaming applied by abbreviation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Abbreviation {
    pub to: String,
    pub negate: bool,
}

/// Central registry of proposition names, keyed by (predicate word, subject).
#[derive(Clone, Debug, Default, Serialize)]
pub struct PropositionFactory {
    table: BTreeMap<(String, String), String>,
    owners: BTreeMap<String, (String, String)>,
    pub abbreviations: BTreeMap<String, Abbreviation>,
}

impl PropositionFactory {
    pub fn name(&mut self, predicate: &str, subject: &str) -> Result<String, TranslateError> {
        let key = (predicate.to_string(), subject.to_string());
        if let Some(n) = self.table.get(&key) {
            return Ok(n.clone());
        }
        let name = format!("{predicate}_{subject}");
        if let Some(prev) = self.owners.get(&name) {
            return Err(TranslateError::NameCollision {
                name,
                first: format!("{} of {}", prev.0, prev.1),
                second: format!("{predicate} of {subject}"),
            });
        }
        self.owners.insert(name.clone(), key.clone());
        self.table.insert(key, name.clone());
        Ok(name)
    }

    pub fn lookup(&self, predicate: &str, subject: &str) -> Option<&str> {
        self.table
            .get(&(predicate.to_string(), subject.to_string()))
            .map(|s| s.as_str())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.owners.keys().map(|s| s.as_str())
    }
}

fn negate(f: Formula) -> Formula {
    match f {
        Formula::Not(inner) => *inner,
        other => Formula::not(other),
    }
}

fn combine(items: Vec<Formula>, joins: &[Join]) -> Formula {
    let conj = effective_conjunctions(joins);
    let mut it = items.into_iter();
    let mut acc = it.next().expect("non-empty list");
    for (f, c) in it.zip(conj) {
        acc = match c {
            Conjunction::And => Formula::and(acc, f),
            Conjunction::Or => Formula::or(acc, f),
        };
    }
    acc
}

/// Atomic literal for one subject of a clause, before the clause negation.
fn subject_literal(
    clause: &Clause,
    subject: &str,
    factory: &mut PropositionFactory,
    table: &AntonymTable,
    dictionary: &AntonymDictionary,
) -> Result<Formula, TranslateError> {
    match candidate_word(clause, dictionary) {
        Some(word) => {
            if table.color(&word) == Color::Blue {
                if let Some(pos) = table.negative_rewrite(subject, &word) {
                    return Ok(Formula::not(Formula::atom(factory.name(pos, subject)?)));
                }
            }
            Ok(Formula::atom(factory.name(&word, subject)?))
        }
        None => {
            debug_assert!(clause.predicate.form != PredicateForm::BeComplement);
            Ok(Formula::atom(factory.name(&clause.predicate.lemma, subject)?))
        }
    }
}

struct Ctx<'a> {
    id: &'a str,
    lexicon: &'a Lexicon,
    dictionary: &'a AntonymDictionary,
    table: &'a AntonymTable,
    options: &'a TranslateOptions,
}

impl Ctx<'_> {
    fn clause(&self, c: &Clause, factory: &mut PropositionFactory) -> Result<Formula, TranslateError> {
        let mut lits = Vec::with_capacity(c.subjects.len());
        for s in &c.subjects {
            let lit = subject_literal(c, &s.name, factory, self.table, self.dictionary)?;
            lits.push(if c.negated { negate(lit) } else { lit });
        }
        let mut f = combine(lits, &c.subject_joins);
        let eventual = matches!(c.modifier.as_deref(), Some("eventually" | "sometimes"))
            || c.predicate.modality.as_deref() == Some("will");
        if eventual {
            f = Formula::eventually(f);
        }
        if let Some(t) = &c.constraint {
            let secs = self.lexicon.time_unit_seconds(&t.unit).unwrap_or(1) as u64 * t.amount as u64;
            let unit = self.options.unit_time as u64;
            if !secs.is_multiple_of(unit) || secs / unit > u32::MAX as u64 {
                return Err(TranslateError::UnevenDuration {
                    id: self.id.to_string(),
                    amount: t.amount,
                    unit: t.unit.clone(),
                    unit_time: self.options.unit_time,
                });
            }
            f = Formula::timed_next((secs / unit) as u32, f);
        }
        if c.marker.as_deref() == Some("next") {
            f = match f {
                Formula::TimedNext(n, inner) => Formula::TimedNext(n + 1, inner),
                other => Formula::timed_next(1, other),
            };
        }
        Ok(f)
    }

    fn group(
        &self,
        g: &ClauseGroup,
        factory: &mut PropositionFactory,
    ) -> Result<Formula, TranslateError> {
        let items = g
            .clauses
            .iter()
            .map(|c| self.clause(c, factory))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(combine(items, &g.joins))
    }

    fn tree(&self, t: &SyntaxTree, factory: &mut PropositionFactory) -> Result<Formula, TranslateError> {
        let unsupported = |d: &str| TranslateError::UnsupportedConstruct {
            id: self.id.to_string(),
            description: d.to_string(),
        };
        let mut conditions = Vec::new();
        let mut release = None;
        for sub in t.pre_subclauses.iter().chain(&t.post_subclauses) {
            match sub.subordinator.as_str() {
                "if" | "when" | "whenever" | "once" | "after" | "while" => {
                    conditions.push(self.group(&sub.group, factory)?)
                }
                "until" => {
                    if release.is_some() {
                        return Err(unsupported("more than one 'until' subclause"));
                    }
                    release = Some(self.group(&sub.group, factory)?);
                }
                other => return Err(unsupported(&format!("'{other}' subclause"))),
            }
        }
        let mut body = self.group(&t.main, factory)?;
        if let Some(q) = release {
            conditions.push(negate(q.clone()));
            body = Formula::weak_until(body, q);
        }
        let mut it = conditions.into_iter().rev();
        let Some(last) = it.next() else {
            return Ok(Formula::always(body));
        };
        let mut f = Formula::implies(last, body);
        for a in it {
            f = Formula::implies(a, Formula::always(f));
        }
        Ok(Formula::always(f))
    }
}

/// Everything produced by translating a corpus.
#[derive(Clone, Debug, Serialize)]
pub struct CorpusTranslation {
    pub trees: Vec<(String, SyntaxTree)>,
    pub candidates: Candidates,
    pub antonyms: AntonymTable,
    pub factory: PropositionFactory,
    /// Formulas after abbreviation, with symbolic timed nexts.
    pub units: Vec<TranslationUnit>,
}

/// Parses every requirement.
pub fn parse_corpus(
    reqs: &[Requirement],
    lexicon: &Lexicon,
) -> Result<Vec<(String, SyntaxTree)>, TranslateError> {
    reqs.iter()
        .map(|r| {
            parse_text(&r.text, lexicon)
                .map(|t| (r.id.clone(), t))
                .map_err(|source| TranslateError::Sentence {
                    id: r.id.clone(),
                    line: r.line,
                    source,
                })
        })
        .collect()
}

/// Translates one tree against a shared factory.
pub fn tree_to_formula(
    id: &str,
    tree: &SyntaxTree,
    factory: &mut PropositionFactory,
    table: &AntonymTable,
    lexicon: &Lexicon,
    dictionary: &AntonymDictionary,
    options: &TranslateOptions,
) -> Result<TranslationUnit, TranslateError> {
    let ctx = Ctx {
        id,
        lexicon,
        dictionary,
        table,
        options,
    };
    Ok(TranslationUnit::new(id, ctx.tree(tree, factory)?))
}

/// Subject-only renaming. A subject qualifies when its candidates form a
/// single positive family (one positive word plus negatives rewritten to
/// it), or when it has one unpaired candidate whose polarity the
/// dictionary settles. A name already taken by another proposition blocks
/// the renaming.
pub fn abbreviate(
    candidates: &Candidates,
    table: &AntonymTable,
    factory: &PropositionFactory,
    dictionary: &AntonymDictionary,
) -> BTreeMap<String, Abbreviation> {
    let used: BTreeSet<&str> = factory.names().collect();
    let mut out = BTreeMap::new();
    for g in &candidates.groups {
        if g.dep.is_empty() || used.contains(g.subject.as_str()) {
            continue;
        }
        let pairs = table.by_subject.get(&g.subject);
        let chosen = match pairs {
            Some(ps) if !ps.is_empty() => {
                let positives: BTreeSet<&str> =
                    ps.iter().map(|p| table.positive_of[p].as_str()).collect();
                let family = positives.iter().next().copied().filter(|_| positives.len() == 1);
                family
                    .filter(|pos| {
                        g.dep.iter().all(|w| {
                            w == pos || table.negative_rewrite(&g.subject, w) == Some(*pos)
                        })
                    })
                    .map(|pos| (pos.to_string(), false))
            }
            _ if g.dep.len() == 1 => {
                let w = g.dep.iter().next().unwrap();
                lone_polarity(w, dictionary).map(|positive| (w.clone(), !positive))
            }
            _ => None,
        };
        if let Some((word, negate)) = chosen {
            if let Some(name) = factory.lookup(&word, &g.subject) {
                out.insert(
                    name.to_string(),
                    Abbreviation {
                        to: g.subject.clone(),
                        negate,
                    },
                );
            }
        }
    }
    out
}

/// Applies a renaming map, folding the double negations it may create.
pub fn apply_abbreviations(f: &Formula, map: &BTreeMap<String, Abbreviation>) -> Formula {
    f.rename_atoms(&|name| {
        map.get(name).map(|a| {
            let atom = Formula::atom(a.to.clone());
            if a.negate {
                Formula::not(atom)
            } else {
                atom
            }
        })
    })
    .map_bottom_up(&mut |node| match node {
        Formula::Not(inner) => match *inner {
            Formula::Not(x) => *x,
            other => Formula::not(other),
        },
        other => other,
    })
}

/// Parses, reasons and translates a whole corpus.
pub fn translate_corpus(
    reqs: &[Requirement],
    lexicon: &Lexicon,
    dictionary: &AntonymDictionary,
    options: &TranslateOptions,
) -> Result<CorpusTranslation, TranslateError> {
    let trees = parse_corpus(reqs, lexicon)?;
    let tree_list: Vec<SyntaxTree> = trees.iter().map(|(_, t)| t.clone()).collect();
    let candidates = extract_candidates(&tree_list, dictionary);
    let antonyms = reason_antonyms(&candidates, dictionary);
    let mut factory = PropositionFactory::default();
    let mut units = Vec::with_capacity(trees.len());
    for (id, tree) in &trees {
        units.push(tree_to_formula(
            id,
            tree,
            &mut factory,
            &antonyms,
            lexicon,
            dictionary,
            options,
        )?);
    }
    if options.abbreviate {
        factory.abbreviations = abbreviate(&candidates, &antonyms, &factory, dictionary);
        for u in &mut units {
            *u = TranslationUnit::new(
                u.id.clone(),
                apply_abbreviations(&u.formula, &factory.abbreviations),
            );
        }
    }
    Ok(CorpusTranslation {
        trees,
        candidates,
        antonyms,
        factory,
        units,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{parse_dictionary, parse_requirements};
    use crate::ltl::parse_formula;

    fn run(reqs: &str, dict: &str, abbreviate: bool) -> Result<CorpusTranslation, TranslateError> {
        translate_corpus(
            &parse_requirements(reqs).unwrap(),
            &Lexicon::default(),
            &parse_dictionary(dict).unwrap(),
            &TranslateOptions {
                unit_time: 1,
                abbreviate,
            },
        )
    }

    fn formula(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn req17_template() {
        let t = run(
            "R: When auto-control mode is entered, eventually the cuff will be inflated.\n",
            "",
            true,
        )
        .unwrap();
        assert_eq!(
            t.units[0].formula,
            formula("G (enter_auto-control_mode -> F inflate_cuff)")
        );
    }

    #[test]
    fn req08_timed() {
        let t = run(
            "R: If Air_Ok_signal remains low, auto_control_mode is terminated in 3 seconds.\n",
            "high : low\n",
            true,
        )
        .unwrap();
        assert_eq!(
            t.units[0].formula,
            formula("G (!air_ok_signal -> X[3] terminate_auto_control_mode)")
        );
    }

    #[test]
    fn antonym_literals_without_abbreviation() {
        let t = run(
            "A: If pulse_wave and arterial_line are unavailable, manual_mode is started.\n\
             B: If pulse_wave is available, and arterial_line is available, corroboration is triggered.\n",
            "available : unavailable\n",
            false,
        )
        .unwrap();
        assert_eq!(
            t.units[0].formula,
            formula("G (!available_pulse_wave && !available_arterial_line -> start_manual_mode)")
        );
        let with = run(
            "A: If pulse_wave and arterial_line are unavailable, manual_mode is started.\n\
             B: If pulse_wave is available, and arterial_line is available, corroboration is triggered.\n",
            "available : unavailable\n",
            true,
        )
        .unwrap();
        assert_eq!(
            with.units[1].formula,
            formula("G (pulse_wave && arterial_line -> trigger_corroboration)")
        );
    }

    #[test]
    fn nested_if_and_until() {
        let t = run(
            "A: If p_x is provided, if q_y is pressed, next r_z is selected.\n\
             B: When a b_b is enabled, the b_b is enabled until it is pressed.\n",
            "",
            false,
        )
        .unwrap();
        assert_eq!(
            t.units[0].formula,
            formula("G (provide_p_x -> G (press_q_y -> X[1] select_r_z))")
        );
        assert_eq!(
            t.units[1].formula,
            formula("G (enable_b_b -> G (!press_b_b -> enable_b_b W press_b_b))")
        );
    }

    #[test]
    fn before_is_unsupported() {
        let e = run("A: The door is closed before the pump is started.\n", "", true).unwrap_err();
        assert!(matches!(e, TranslateError::UnsupportedConstruct { .. }));
    }

    #[test]
    fn uneven_duration() {
        let reqs = parse_requirements("A: If p_q is low, r_s is started in 5 seconds.\n").unwrap();
        let e = translate_corpus(
            &reqs,
            &Lexicon::default(),
            &AntonymDictionary::default(),
            &TranslateOptions {
                unit_time: 2,
                abbreviate: true,
            },
        )
        .unwrap_err();
        assert!(matches!(e, TranslateError::UnevenDuration { .. }));
    }

    #[test]
    fn factory_detects_collisions() {
        let mut f = PropositionFactory::default();
        assert_eq!(f.name("a_b", "c").unwrap(), "a_b_c");
        assert_eq!(f.name("a_b", "c").unwrap(), "a_b_c");
        assert!(matches!(
            f.name("a", "b_c"),
            Err(TranslateError::NameCollision { .. })
        ));
    }

    #[test]
    fn two_pairs_block_abbreviation() {
        let t = run(
            "A: If the valve is locked, the valve is high.\n\
             B: If the valve is unlocked, the valve is low.\n",
            "locked : unlocked\nhigh : low\n",
            true,
        )
        .unwrap();
        assert!(t.factory.abbreviations.is_empty());
        assert_eq!(t.units[1].formula, formula("G (!locked_valve -> !high_valve)"));
    }
}
