//! Locating a small unrealizable subset of requirements and proposing
//! partition changes.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::ltl::Formula;
use crate::partition::{Partition, Provenance, Role};
use crate::synthesis::{check_realizability, Signature, SynthesisError, SynthesisOptions, Verdict};
use crate::translate::TranslationUnit;

#[derive(Debug, Error)]
pub enum LocalizeError {
    #[error("no unrealizable subset found: every prefix of the corpus is realizable or undecided")]
    NoCoreFound,
    #[error(transparent)]
    Synthesis(#[from] SynthesisError),
}

/// Order in which requirements are added while growing.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GrowthOrder {
    #[default]
    Corpus,
    /// Smallest formulas first; ties keep corpus order.
    SizeAscending,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Core {
    /// Requirement whose addition made the growing set unrealizable.
    pub culprit: String,
    /// Unrealizable, and no single member can be dropped.
    pub conflict_set: Vec<String>,
    /// Dropped without testing: no proposition in common with the culprit.
    pub relevance_filtered: Vec<String>,
    /// Bound at which the conflict set was refuted.
    pub k: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SuggestionKind {
    FlipToInput,
    FlipToOutput,
    EditRequirement,
}

impl fmt::Display for SuggestionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SuggestionKind::FlipToInput => "flip_to_input",
            SuggestionKind::FlipToOutput => "flip_to_output",
            SuggestionKind::EditRequirement => "edit_requirement",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Suggestion {
    pub kind: SuggestionKind,
    /// Variable for flips, requirement id for edits.
    pub target: String,
    pub rationale: String,
}

/// The specification formed by `units` under `assumptions`: the plain
/// conjunction, or one implication when assumptions exist.
pub fn assemble_spec(units: &[Formula], assumptions: &[Formula]) -> Vec<Formula> {
    if assumptions.is_empty() {
        units.to_vec()
    } else {
        vec![Formula::implies(
            Formula::conj(assumptions.iter().cloned()),
            Formula::conj(units.iter().cloned()),
        )]
    }
}

fn check(
    units: &[&TranslationUnit],
    assumptions: &[Formula],
    sig: &Signature,
    opts: &SynthesisOptions,
) -> Result<Verdict, SynthesisError> {
    let spec: Vec<Formula> = units.iter().map(|u| u.formula.clone()).collect();
    check_realizability(&assemble_spec(&spec, assumptions), sig, opts)
}

/// Grows the requirement set until it becomes unrealizable, then shrinks it
/// by single deletions. Undecided checks keep the member.
pub fn locate_core(
    units: &[TranslationUnit],
    sig: &Signature,
    opts: &SynthesisOptions,
    order: GrowthOrder,
) -> Result<Core, LocalizeError> {
    locate_core_assuming(units, &[], sig, opts, order)
}

/// As [`locate_core`], with environment assumptions kept in every check.
pub fn locate_core_assuming(
    units: &[TranslationUnit],
    assumptions: &[Formula],
    sig: &Signature,
    opts: &SynthesisOptions,
    order: GrowthOrder,
) -> Result<Core, LocalizeError> {
    let mut ordered: Vec<&TranslationUnit> = units.iter().collect();
    if order == GrowthOrder::SizeAscending {
        ordered.sort_by_key(|u| u.formula.size());
    }

    let mut grown: Vec<&TranslationUnit> = Vec::new();
    let mut refuted_at = None;
    for u in ordered {
        grown.push(u);
        if let Verdict::Unrealizable { k, .. } = check(&grown, assumptions, sig, opts)? {
            refuted_at = Some(k);
            break;
        }
    }
    let mut k = refuted_at.ok_or(LocalizeError::NoCoreFound)?;
    let culprit = *grown.last().unwrap();

    // Members sharing nothing with the culprit are dropped up front, unless
    // the rest is then no longer refuted.
    let (mut set, filtered): (Vec<&TranslationUnit>, Vec<&TranslationUnit>) = grown
        .iter()
        .partition(|u| u.id == culprit.id || !u.propositions.is_disjoint(&culprit.propositions));
    let mut relevance_filtered: Vec<String> = filtered.iter().map(|u| u.id.clone()).collect();
    if !relevance_filtered.is_empty() {
        match check(&set, assumptions, sig, opts)? {
            Verdict::Unrealizable { k: k2, .. } => k = k2,
            _ => {
                set = grown.clone();
                relevance_filtered.clear();
            }
        }
    }

    let mut i = 0;
    while i < set.len() {
        if set[i].id == culprit.id {
            i += 1;
            continue;
        }
        let mut trial = set.clone();
        trial.remove(i);
        match check(&trial, assumptions, sig, opts)? {
            Verdict::Unrealizable { k: k2, .. } => {
                set = trial;
                k = k2;
            }
            _ => i += 1,
        }
    }

    Ok(Core {
        culprit: culprit.id.clone(),
        conflict_set: set.iter().map(|u| u.id.clone()).collect(),
        relevance_filtered,
        k,
    })
}

/// Flip suggestions for variables of the core classified by the conflict
/// or promotion rule; otherwise a request to edit the culprit.
pub fn suggest_fixes(core: &Core, units: &[TranslationUnit], partition: &Partition) -> Vec<Suggestion> {
    let vars: BTreeSet<&String> = units
        .iter()
        .filter(|u| core.conflict_set.contains(&u.id))
        .flat_map(|u| u.propositions.iter())
        .collect();
    let mut out = Vec::new();
    for v in vars {
        let rationale = match partition.provenance.get(v) {
            Some(Provenance::Conflict) => {
                let c = partition.conflicts.iter().find(|c| &c.variable == v);
                match c {
                    Some(c) => format!(
                        "classified output by the conflict rule; input in {}",
                        c.input_ids.join(", ")
                    ),
                    None => "classified by the conflict rule".to_string(),
                }
            }
            Some(Provenance::Promoted) => {
                "promoted to input because no input was found".to_string()
            }
            _ => continue,
        };
        let kind = match partition.role(v) {
            Some(Role::Input) => SuggestionKind::FlipToOutput,
            _ => SuggestionKind::FlipToInput,
        };
        out.push(Suggestion {
            kind,
            target: v.clone(),
            rationale,
        });
    }
    if out.is_empty() {
        out.push(Suggestion {
            kind: SuggestionKind::EditRequirement,
            target: core.culprit.clone(),
            rationale: format!(
                "no heuristically classified variable in the core; modify {} or the requirements it conflicts with",
                core.culprit
            ),
        });
    }
    out
}

/// Partition with a flip suggestion applied. Edits return `None`.
pub fn apply_suggestion(partition: &Partition, s: &Suggestion) -> Option<Partition> {
    let role = match s.kind {
        SuggestionKind::FlipToInput => Role::Input,
        SuggestionKind::FlipToOutput => Role::Output,
        SuggestionKind::EditRequirement => return None,
    };
    let mut p = partition.clone();
    p.set_role(&s.target, role).ok()?;
    Some(p)
}

pub fn render_core(core: &Core, units: &[TranslationUnit], sources: &[(String, String)], suggestions: &[Suggestion]) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    let _ = writeln!(s, "culprit: {}", core.culprit);
    let _ = writeln!(s, "conflict set (refuted at k={}):", core.k);
    for id in &core.conflict_set {
        let _ = writeln!(s, "  {id}");
        if let Some((_, text)) = sources.iter().find(|(i, _)| i == id) {
            let _ = writeln!(s, "    english: {text}");
        }
        if let Some(u) = units.iter().find(|u| &u.id == id) {
            let _ = writeln!(s, "    ltl:     {}", u.formula);
        }
    }
    if !core.relevance_filtered.is_empty() {
        let _ = writeln!(s, "filtered (no shared proposition): {}", core.relevance_filtered.join(", "));
    }
    let _ = writeln!(s, "suggestions:");
    for g in suggestions {
        let _ = writeln!(s, "  {} {}: {}", g.kind, g.target, g.rationale);
    }
    s
}
