//! Input/output classification of propositions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::ltl::Formula;
use crate::translate::TranslationUnit;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("variable '{0}' listed as both input and output")]
    Overlap(String),
    #[error("variable '{0}' is not classified")]
    Unclassified(String),
    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Input,
    Output,
}

/// Rule that classified a variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Left of an implication.
    Antecedent,
    /// Release condition of U or W.
    UntilRelease,
    /// Right of an implication or left of U/W.
    Consequent,
    /// Positive on both sides of one operator.
    BothSides,
    /// Outside every classifying operator.
    DefaultOutput,
    /// Input in one requirement and output in another.
    Conflict,
    /// Made an input because no input was left.
    Promoted,
    Override,
    /// Read from a partition file.
    File,
}

impl Provenance {
    pub fn is_heuristic_choice(self) -> bool {
        matches!(self, Provenance::Conflict | Provenance::Promoted)
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Provenance::Antecedent => "antecedent",
            Provenance::UntilRelease => "until-release",
            Provenance::Consequent => "consequent",
            Provenance::BothSides => "both-sides",
            Provenance::DefaultOutput => "default-output",
            Provenance::Conflict => "conflict",
            Provenance::Promoted => "promoted",
            Provenance::Override => "override",
            Provenance::File => "file",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RequirementPartition {
    pub id: String,
    pub inputs: BTreeSet<String>,
    pub outputs: BTreeSet<String>,
    pub provenance: BTreeMap<String, Provenance>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conflict {
    pub variable: String,
    pub input_ids: Vec<String>,
    pub output_ids: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub per_requirement: Vec<RequirementPartition>,
    pub inputs: BTreeSet<String>,
    pub outputs: BTreeSet<String>,
    pub conflicts: Vec<Conflict>,
    pub provenance: BTreeMap<String, Provenance>,
}

impl Partition {
    pub fn role(&self, var: &str) -> Option<Role> {
        if self.inputs.contains(var) {
            Some(Role::Input)
        } else if self.outputs.contains(var) {
            Some(Role::Output)
        } else {
            None
        }
    }

    pub fn promoted(&self) -> Option<&str> {
        self.provenance
            .iter()
            .find(|(_, p)| **p == Provenance::Promoted)
            .map(|(v, _)| v.as_str())
    }

    /// Disjointness and agreement of the provenance map with the sets.
    pub fn validate(&self) -> Result<(), PartitionError> {
        if let Some(v) = self.inputs.intersection(&self.outputs).next() {
            return Err(PartitionError::Overlap(v.clone()));
        }
        for v in self.inputs.iter().chain(&self.outputs) {
            if !self.provenance.contains_key(v) {
                return Err(PartitionError::Unclassified(v.clone()));
            }
        }
        Ok(())
    }

    /// Moves `var` to `role`, recording an override.
    pub fn set_role(&mut self, var: &str, role: Role) -> Result<(), PartitionError> {
        if self.role(var).is_none() {
            return Err(PartitionError::UnknownVariable(var.to_string()));
        }
        self.inputs.remove(var);
        self.outputs.remove(var);
        match role {
            Role::Input => self.inputs.insert(var.to_string()),
            Role::Output => self.outputs.insert(var.to_string()),
        };
        self.provenance.insert(var.to_string(), Provenance::Override);
        Ok(())
    }

    /// Partition taken verbatim from a file, over the given atoms.
    pub fn from_file(part: &PartFile, atoms: &BTreeSet<String>) -> Result<Self, PartitionError> {
        for v in part.inputs.iter().chain(&part.outputs) {
            if !atoms.contains(v) {
                return Err(PartitionError::UnknownVariable(v.clone()));
            }
        }
        if let Some(v) = atoms
            .iter()
            .find(|a| !part.inputs.contains(*a) && !part.outputs.contains(*a))
        {
            return Err(PartitionError::Unclassified(v.clone()));
        }
        let provenance = atoms
            .iter()
            .map(|a| (a.clone(), Provenance::File))
            .collect();
        let p = Partition {
            per_requirement: vec![],
            inputs: part.inputs.clone(),
            outputs: part.outputs.clone(),
            conflicts: vec![],
            provenance,
        };
        p.validate()?;
        Ok(p)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Ctx {
    None,
    In(Provenance),
    Out,
}

#[derive(Default)]
struct Occurrences {
    input: BTreeMap<String, Provenance>,
    output: BTreeSet<String>,
    forced: BTreeSet<String>,
    all: BTreeSet<String>,
}

fn positive_atoms(f: &Formula, negated: bool, out: &mut BTreeSet<String>) {
    match f {
        Formula::Atom(a) if !negated => {
            out.insert(a.clone());
        }
        Formula::Not(x) => positive_atoms(x, !negated, out),
        _ => {
            for c in f.children() {
                positive_atoms(c, negated, out);
            }
        }
    }
}

fn walk(f: &Formula, ctx: Ctx, occ: &mut Occurrences) {
    let classify = |a: &Formula, b: &Formula, left: Ctx, right: Ctx, occ: &mut Occurrences| {
        let (mut pa, mut pb) = (BTreeSet::new(), BTreeSet::new());
        positive_atoms(a, false, &mut pa);
        positive_atoms(b, false, &mut pb);
        occ.forced.extend(pa.intersection(&pb).cloned());
        walk(a, left, occ);
        walk(b, right, occ);
    };
    match f {
        Formula::Atom(a) => {
            occ.all.insert(a.clone());
            match ctx {
                Ctx::In(p) => {
                    occ.input.entry(a.clone()).or_insert(p);
                }
                Ctx::Out => {
                    occ.output.insert(a.clone());
                }
                Ctx::None => {}
            }
        }
        Formula::Implies(a, b) => {
            classify(a, b, Ctx::In(Provenance::Antecedent), Ctx::Out, occ)
        }
        Formula::Until(a, b) | Formula::WeakUntil(a, b) => {
            classify(a, b, Ctx::Out, Ctx::In(Provenance::UntilRelease), occ)
        }
        _ => {
            for c in f.children() {
                walk(c, ctx, occ);
            }
        }
    }
}

/// Classifies the atoms of one formula. An occurrence takes the role of
/// its innermost implication or until; an atom with any input occurrence
/// is an input unless it occurs un-negated on both sides of one operator.
pub fn partition_requirement(id: &str, formula: &Formula) -> RequirementPartition {
    let mut occ = Occurrences::default();
    walk(formula, Ctx::None, &mut occ);
    let mut rp = RequirementPartition {
        id: id.to_string(),
        inputs: BTreeSet::new(),
        outputs: BTreeSet::new(),
        provenance: BTreeMap::new(),
    };
    for a in &occ.all {
        let (role, prov) = if occ.forced.contains(a) {
            (Role::Output, Provenance::BothSides)
        } else if let Some(p) = occ.input.get(a) {
            (Role::Input, *p)
        } else if occ.output.contains(a) {
            (Role::Output, Provenance::Consequent)
        } else {
            (Role::Output, Provenance::DefaultOutput)
        };
        match role {
            Role::Input => rp.inputs.insert(a.clone()),
            Role::Output => rp.outputs.insert(a.clone()),
        };
        rp.provenance.insert(a.clone(), prov);
    }
    rp
}

/// Merges per-requirement results. A variable claimed by both sides
/// becomes an output; if no input remains the smallest output is promoted.
pub fn unify(parts: Vec<RequirementPartition>) -> Partition {
    #[derive(Default)]
    struct Claims {
        ins: Vec<String>,
        outs: Vec<String>,
        in_prov: Option<Provenance>,
        out_prov: Option<Provenance>,
    }
    let mut claims: BTreeMap<String, Claims> = BTreeMap::new();
    for rp in &parts {
        for (v, prov) in &rp.provenance {
            let c = claims.entry(v.clone()).or_default();
            if rp.inputs.contains(v) {
                c.ins.push(rp.id.clone());
                c.in_prov.get_or_insert(*prov);
            } else {
                c.outs.push(rp.id.clone());
                c.out_prov.get_or_insert(*prov);
            }
        }
    }
    let mut p = Partition {
        per_requirement: parts,
        inputs: BTreeSet::new(),
        outputs: BTreeSet::new(),
        conflicts: vec![],
        provenance: BTreeMap::new(),
    };
    for (v, c) in claims {
        if !c.ins.is_empty() && !c.outs.is_empty() {
            p.conflicts.push(Conflict {
                variable: v.clone(),
                input_ids: c.ins,
                output_ids: c.outs,
            });
            p.outputs.insert(v.clone());
            p.provenance.insert(v, Provenance::Conflict);
        } else if let Some(prov) = c.in_prov {
            p.inputs.insert(v.clone());
            p.provenance.insert(v, prov);
        } else {
            p.outputs.insert(v.clone());
            p.provenance.insert(v, c.out_prov.unwrap());
        }
    }
    if p.inputs.is_empty() {
        if let Some(v) = p.outputs.iter().next().cloned() {
            p.outputs.remove(&v);
            p.inputs.insert(v.clone());
            p.provenance.insert(v, Provenance::Promoted);
        }
    }
    p
}

pub fn partition_units(units: &[TranslationUnit]) -> Partition {
    unify(
        units
            .iter()
            .map(|u| partition_requirement(&u.id, &u.formula))
            .collect(),
    )
}

/// Contents of a `.part` file.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PartFile {
    pub inputs: BTreeSet<String>,
    pub outputs: BTreeSet<String>,
}

/// Reads `inputs: a b c` and `outputs: x y` lines; both may repeat.
pub fn parse_part_file(text: &str) -> Result<PartFile, PartitionError> {
    let mut pf = PartFile::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line.split_once(':').ok_or(PartitionError::MalformedLine {
            line: idx + 1,
            reason: "expected 'inputs:' or 'outputs:'".into(),
        })?;
        let target = match key.trim() {
            "inputs" => &mut pf.inputs,
            "outputs" => &mut pf.outputs,
            other => {
                return Err(PartitionError::MalformedLine {
                    line: idx + 1,
                    reason: format!("unknown key '{other}'"),
                })
            }
        };
        target.extend(
            rest.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(String::from),
        );
    }
    if let Some(v) = pf.inputs.intersection(&pf.outputs).next() {
        return Err(PartitionError::Overlap(v.clone()));
    }
    Ok(pf)
}

pub fn write_part_file(inputs: &BTreeSet<String>, outputs: &BTreeSet<String>) -> String {
    let join = |s: &BTreeSet<String>| s.iter().cloned().collect::<Vec<_>>().join(" ");
    format!("inputs: {}\noutputs: {}\n", join(inputs), join(outputs))
}

/// Applies user overrides; every named variable must exist.
pub fn apply_overrides(partition: &Partition, overrides: &PartFile) -> Result<Partition, PartitionError> {
    let mut p = partition.clone();
    for v in &overrides.inputs {
        p.set_role(v, Role::Input)?;
    }
    for v in &overrides.outputs {
        p.set_role(v, Role::Output)?;
    }
    p.validate()?;
    Ok(p)
}

pub fn render_partition(p: &Partition) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    for (title, set) in [("inputs", &p.inputs), ("outputs", &p.outputs)] {
        let _ = writeln!(s, "{title}:");
        for v in set {
            let _ = writeln!(s, "  {v} ({})", p.provenance[v]);
        }
    }
    for c in &p.conflicts {
        let _ = writeln!(
            s,
            "conflict: {} input in [{}], output in [{}]",
            c.variable,
            c.input_ids.join(", "),
            c.output_ids.join(", ")
        );
    }
    if let Some(v) = p.promoted() {
        let _ = writeln!(s, "warning: no input variable found, promoted {v} to input");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::parse_formula;
    use proptest::prelude::*;

    fn set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    fn req(s: &str) -> RequirementPartition {
        partition_requirement("R", &parse_formula(s).unwrap())
    }

    #[test]
    fn implication_rule() {
        let rp = req("G ((available_pulse_wave || available_arterial_line) && select_cuff -> trigger_corroboration)");
        assert_eq!(
            rp.inputs,
            set(&["available_arterial_line", "available_pulse_wave", "select_cuff"])
        );
        assert_eq!(rp.outputs, set(&["trigger_corroboration"]));
        assert_eq!(req("G p").outputs, set(&["p"]));
        let rp = req("G (p -> p)");
        assert_eq!(rp.outputs, set(&["p"]));
        assert_eq!(rp.provenance["p"], Provenance::BothSides);
    }

    #[test]
    fn until_release_is_input() {
        let rp = req("G (b -> G (!p -> b W p))");
        assert_eq!(rp.inputs, set(&["p"]));
        assert_eq!(rp.outputs, set(&["b"]));
        // innermost operator decides
        let rp = req("G (a -> G (b -> c))");
        assert_eq!(rp.inputs, set(&["a", "b"]));
    }

    #[test]
    fn conflicts_and_promotion() {
        let p = partition_units(&[
            TranslationUnit::new("32.1", parse_formula("G (select_cuff -> trigger)").unwrap()),
            TranslationUnit::new("13.3", parse_formula("G (x -> select_cuff)").unwrap()),
        ]);
        assert!(p.outputs.contains("select_cuff"));
        assert_eq!(p.provenance["select_cuff"], Provenance::Conflict);
        assert_eq!(p.conflicts[0].input_ids, vec!["32.1"]);
        p.validate().unwrap();

        let p = partition_units(&[
            TranslationUnit::new("A", parse_formula("G p").unwrap()),
            TranslationUnit::new("B", parse_formula("G q").unwrap()),
        ]);
        assert_eq!(p.inputs, set(&["p"]));
        assert_eq!(p.promoted(), Some("p"));
        assert!(p.conflicts.is_empty());
    }

    #[test]
    fn overrides_and_files() {
        let p = partition_units(&[TranslationUnit::new(
            "A",
            parse_formula("G (a -> t)").unwrap(),
        )]);
        let o = parse_part_file("inputs: t\n").unwrap();
        let q = apply_overrides(&p, &o).unwrap();
        assert_eq!(q.inputs, set(&["a", "t"]));
        assert_eq!(q.provenance["t"], Provenance::Override);
        let bad = parse_part_file("outputs: nope\n").unwrap();
        assert_eq!(
            apply_overrides(&p, &bad),
            Err(PartitionError::UnknownVariable("nope".into()))
        );
        let text = write_part_file(&q.inputs, &q.outputs);
        assert_eq!(parse_part_file(&text).unwrap().inputs, q.inputs);
        assert!(parse_part_file("inputs: a\noutputs: a\n").is_err());
        assert!(parse_part_file("maybe: a\n").is_err());
    }

    fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = prop::sample::select(vec!["a", "b", "c", "d"]).prop_map(Formula::atom);
        leaf.prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                inner.clone().prop_map(Formula::always),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::weak_until(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn unified_is_total_and_disjoint(fs in prop::collection::vec(arb_formula(), 1..5)) {
            let units: Vec<_> = fs
                .iter()
                .enumerate()
                .map(|(i, f)| TranslationUnit::new(format!("R{i}"), f.clone()))
                .collect();
            let p = partition_units(&units);
            prop_assert!(p.validate().is_ok());
            let atoms: BTreeSet<String> = fs.iter().flat_map(|f| f.atoms()).collect();
            let all: BTreeSet<String> = p.inputs.union(&p.outputs).cloned().collect();
            prop_assert_eq!(all, atoms);
        }

        #[test]
        fn adding_never_turns_output_into_input(
            fs in prop::collection::vec(arb_formula(), 1..4),
            extra in arb_formula(),
        ) {
            let units: Vec<_> = fs
                .iter()
                .enumerate()
                .map(|(i, f)| TranslationUnit::new(format!("R{i}"), f.clone()))
                .collect();
            let small = partition_units(&units);
            let mut more = units.clone();
            more.push(TranslationUnit::new("X", extra));
            let big = partition_units(&more);
            for v in &small.outputs {
                if big.promoted() != Some(v.as_str()) {
                    prop_assert!(big.outputs.contains(v), "{} moved", v);
                }
            }
        }
    }
}
