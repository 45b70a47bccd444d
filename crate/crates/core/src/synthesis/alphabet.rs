use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use biodivine_lib_bdd::{Bdd, BddValuation, BddVariable, BddVariableSet};

use super::SynthesisError;
use crate::ltl::Formula;
use crate::partition::{Partition, Role};

/// Input/output signature of a specification.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub inputs: BTreeSet<String>,
    pub outputs: BTreeSet<String>,
}

impl Signature {
    pub fn new<S: AsRef<str>>(inputs: &[S], outputs: &[S]) -> Self {
        Signature {
            inputs: inputs.iter().map(|s| s.as_ref().to_string()).collect(),
            outputs: outputs.iter().map(|s| s.as_ref().to_string()).collect(),
        }
    }
}

impl From<&Partition> for Signature {
    fn from(p: &Partition) -> Self {
        Signature {
            inputs: p.inputs.clone(),
            outputs: p.outputs.clone(),
        }
    }
}

/// Propositions as BDD variables, each tagged input or output.
#[derive(Clone)]
pub struct Alphabet {
    vars: Arc<BddVariableSet>,
    names: Vec<String>,
    roles: Vec<Role>,
    index: BTreeMap<String, BddVariable>,
    inputs: Vec<BddVariable>,
    outputs: Vec<BddVariable>,
}

impl std::fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Alphabet")
            .field("names", &self.names)
            .field("roles", &self.roles)
            .finish()
    }
}

fn first_appearance(f: &Formula, seen: &mut Vec<String>) {
    if let Formula::Atom(a) = f {
        if !seen.contains(a) {
            seen.push(a.clone());
        }
    }
    for c in f.children() {
        first_appearance(c, seen);
    }
}

impl Alphabet {
    /// Variables in the given order; names found in `inputs` are inputs.
    pub fn new(order: &[String], inputs: &BTreeSet<String>) -> Self {
        let vars = BddVariableSet::new_anonymous(order.len() as u16);
        let all = vars.variables();
        let mut a = Alphabet {
            vars: Arc::new(vars),
            names: order.to_vec(),
            roles: vec![],
            index: BTreeMap::new(),
            inputs: vec![],
            outputs: vec![],
        };
        for (name, v) in order.iter().zip(all) {
            a.index.insert(name.clone(), v);
            if inputs.contains(name) {
                a.roles.push(Role::Input);
                a.inputs.push(v);
            } else {
                a.roles.push(Role::Output);
                a.outputs.push(v);
            }
        }
        a
    }

    /// Alphabet of a specification. Variables are ordered by first
    /// appearance in the formulas, so related propositions stay close in
    /// the BDD order; unused signature variables come last.
    pub fn for_spec(spec: &[Formula], sig: &Signature) -> Result<Self, SynthesisError> {
        if let Some(v) = sig.inputs.intersection(&sig.outputs).next() {
            return Err(SynthesisError::BadSignature(format!(
                "'{v}' is both input and output"
            )));
        }
        let mut order = Vec::new();
        for f in spec {
            first_appearance(f, &mut order);
        }
        for a in &order {
            if !sig.inputs.contains(a) && !sig.outputs.contains(a) {
                return Err(SynthesisError::BadSignature(format!(
                    "'{a}' is neither input nor output"
                )));
            }
        }
        for v in sig.inputs.iter().chain(&sig.outputs) {
            if !order.contains(v) {
                order.push(v.clone());
            }
        }
        Ok(Alphabet::new(&order, &sig.inputs))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var(&self, name: &str) -> Option<BddVariable> {
        self.index.get(name).copied()
    }

    pub fn name(&self, v: BddVariable) -> &str {
        &self.names[v.to_index()]
    }

    pub fn role(&self, v: BddVariable) -> Role {
        self.roles[v.to_index()]
    }

    pub fn inputs(&self) -> &[BddVariable] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[BddVariable] {
        &self.outputs
    }

    pub fn input_names(&self) -> Vec<&str> {
        self.inputs.iter().map(|v| self.name(*v)).collect()
    }

    pub fn output_names(&self) -> Vec<&str> {
        self.outputs.iter().map(|v| self.name(*v)).collect()
    }

    pub fn mk_true(&self) -> Bdd {
        self.vars.mk_true()
    }

    pub fn mk_false(&self) -> Bdd {
        self.vars.mk_false()
    }

    pub fn literal(&self, v: BddVariable, positive: bool) -> Bdd {
        self.vars.mk_literal(v, positive)
    }

    /// Conjunction fixing `vars` to `values`.
    pub fn cube(&self, vars: &[BddVariable], values: &[bool]) -> Bdd {
        let fixed: Vec<(BddVariable, bool)> =
            vars.iter().copied().zip(values.iter().copied()).collect();
        self.mk_true().select(&fixed)
    }

    /// Values of `vars` in a full valuation.
    pub fn project(&self, val: &BddValuation, vars: &[BddVariable]) -> Vec<bool> {
        vars.iter().map(|v| val.value(*v)).collect()
    }

    /// Full valuation from separate input and output values.
    pub fn valuation(&self, inputs: &[bool], outputs: &[bool]) -> BddValuation {
        let mut val = BddValuation::all_false(self.len() as u16);
        for (v, b) in self.inputs.iter().zip(inputs) {
            val.set_value(*v, *b);
        }
        for (v, b) in self.outputs.iter().zip(outputs) {
            val.set_value(*v, *b);
        }
        val
    }

    /// Lexicographically smallest assignment of `vars` (false before true)
    /// that can be extended to a member of `set`.
    pub fn smallest(&self, set: &Bdd, vars: &[BddVariable]) -> Option<Vec<bool>> {
        if set.is_false() {
            return None;
        }
        let mut cur = set.clone();
        let mut out = Vec::with_capacity(vars.len());
        for v in vars {
            let low = cur.var_select(*v, false);
            if low.is_false() {
                cur = cur.var_select(*v, true);
                out.push(true);
            } else {
                cur = low;
                out.push(false);
            }
        }
        Some(out)
    }

    /// Prints a set of letters as a disjunction of cubes.
    pub fn render(&self, set: &Bdd) -> String {
        if set.is_true() {
            return "true".into();
        }
        if set.is_false() {
            return "false".into();
        }
        let mut cubes = Vec::new();
        for clause in set.sat_clauses() {
            let lits: Vec<String> = clause
                .to_values()
                .into_iter()
                .map(|(v, b)| {
                    if b {
                        self.name(v).to_string()
                    } else {
                        format!("!{}", self.name(v))
                    }
                })
                .collect();
            cubes.push(lits.join(" && "));
        }
        if cubes.len() == 1 {
            cubes.pop().unwrap()
        } else {
            cubes
                .into_iter()
                .map(|c| format!("({c})"))
                .collect::<Vec<_>>()
                .join(" || ")
        }
    }

    /// Input pattern of a cube over `vars`: `1`, `0` or `-` per variable.
    pub fn patterns(&self, set: &Bdd, vars: &[BddVariable]) -> Vec<String> {
        let projected = set.exists(
            &self
                .vars
                .variables()
                .into_iter()
                .filter(|v| !vars.contains(v))
                .collect::<Vec<_>>(),
        );
        if projected.is_false() {
            return vec![];
        }
        projected
            .sat_clauses()
            .map(|c| {
                vars.iter()
                    .map(|v| match c.get_value(*v) {
                        Some(true) => '1',
                        Some(false) => '0',
                        None => '-',
                    })
                    .collect()
            })
            .collect()
    }
}
