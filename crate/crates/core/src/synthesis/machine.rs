//! Finite-state strategies and their verification against a formula.

use std::fmt::Write as _;

use biodivine_lib_bdd::Bdd;

use super::alphabet::Alphabet;
use super::graph::accepting_lasso;
use super::nba::{ltl_to_nba, Nba};
use super::SynthesisError;
use crate::ltl::{to_nnf, Formula};

#[derive(Clone, Debug)]
pub struct MealyEdge {
    /// Inputs taking this edge (a set over input variables only).
    pub inputs: Bdd,
    /// One value per output variable, in alphabet order.
    pub outputs: Vec<bool>,
    pub target: usize,
}

/// System strategy: outputs react to the current inputs.
#[derive(Clone, Debug)]
pub struct MealyMachine {
    pub alphabet: Alphabet,
    pub initial: usize,
    pub states: Vec<Vec<MealyEdge>>,
}

#[derive(Clone, Debug)]
pub struct MooreState {
    /// Input values emitted in this state.
    pub inputs: Vec<bool>,
    /// Output sets (over output variables only) and successor states.
    pub edges: Vec<(Bdd, usize)>,
}

/// Environment strategy: inputs depend only on the past.
#[derive(Clone, Debug)]
pub struct MooreMachine {
    pub alphabet: Alphabet,
    pub initial: usize,
    pub states: Vec<MooreState>,
}

fn bits(v: &[bool]) -> String {
    v.iter().map(|b| if *b { '1' } else { '0' }).collect()
}

fn header(out: &mut String, a: &Alphabet) {
    let _ = writeln!(out, "# inputs: {}", a.input_names().join(" "));
    let _ = writeln!(out, "# outputs: {}", a.output_names().join(" "));
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Product of letter sets with a Büchi automaton: `(state, letters, target)`
/// per machine transition. Non-empty iff some generated word is accepted.
fn product_nonempty(nba: &Nba, initial: usize, trans: &[Vec<(Bdd, usize)>]) -> bool {
    let nq = nba.len();
    accepting_lasso(
        initial * nq + nba.initial,
        |node| {
            let (m, q) = (node / nq, node % nq);
            let mut out = Vec::new();
            for (letters, m2) in &trans[m] {
                for (g, q2) in &nba.states[q].edges {
                    if !letters.and(g).is_false() {
                        out.push(m2 * nq + q2);
                    }
                }
            }
            out
        },
        |node| nba.states[node % nq].accepting,
    )
}

impl MealyMachine {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Outputs and successor for the given input values.
    pub fn step(&self, state: usize, inputs: &[bool]) -> Option<(&[bool], usize)> {
        let zeros = vec![false; self.alphabet.outputs().len()];
        let val = self.alphabet.valuation(inputs, &zeros);
        self.states[state]
            .iter()
            .find(|e| e.inputs.eval_in(&val))
            .map(|e| (e.outputs.as_slice(), e.target))
    }

    fn letter_sets(&self) -> Vec<Vec<(Bdd, usize)>> {
        self.states
            .iter()
            .map(|es| {
                es.iter()
                    .map(|e| {
                        let o = self.alphabet.cube(self.alphabet.outputs(), &e.outputs);
                        (e.inputs.and(&o), e.target)
                    })
                    .collect()
            })
            .collect()
    }

    /// Whether every behaviour of the machine satisfies `spec`.
    pub fn satisfies(&self, spec: &Formula, budget: usize) -> Result<bool, SynthesisError> {
        let nba = ltl_to_nba(&to_nnf(spec, true), &self.alphabet, budget)?;
        Ok(!product_nonempty(&nba, self.initial, &self.letter_sets()))
    }

    /// One line per transition: `state inputs -> target / outputs`, where
    /// inputs is a pattern of `0`, `1` and `-` (don't care).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# mealy machine: {} states, initial {}",
            self.len(),
            self.initial
        );
        header(&mut out, &self.alphabet);
        for (s, es) in self.states.iter().enumerate() {
            for e in es {
                for p in self.alphabet.patterns(&e.inputs, self.alphabet.inputs()) {
                    let _ = writeln!(out, "{s} {p} -> {} / {}", e.target, bits(&e.outputs));
                }
            }
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph mealy {\n  rankdir=LR;\n");
        let _ = writeln!(out, "  init [shape=point];\n  init -> s{};", self.initial);
        let onames = self.alphabet.output_names();
        for (s, es) in self.states.iter().enumerate() {
            let _ = writeln!(out, "  s{s} [label=\"{s}\"];");
            for e in es {
                let outs: Vec<String> = onames
                    .iter()
                    .zip(&e.outputs)
                    .map(|(n, b)| if *b { n.to_string() } else { format!("!{n}") })
                    .collect();
                let label = format!("{} / {}", self.alphabet.render(&e.inputs), outs.join(" "));
                let _ = writeln!(out, "  s{s} -> s{} [label=\"{}\"];", e.target, dot_escape(&label));
            }
        }
        out.push_str("}\n");
        out
    }
}

impl MooreMachine {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Successor after the system answered with `outputs`.
    pub fn step(&self, state: usize, outputs: &[bool]) -> Option<usize> {
        let zeros = vec![false; self.alphabet.inputs().len()];
        let val = self.alphabet.valuation(&zeros, outputs);
        self.states[state]
            .edges
            .iter()
            .find(|(o, _)| o.eval_in(&val))
            .map(|(_, t)| *t)
    }

    /// Whether every behaviour of the machine violates `spec`, whatever
    /// the system answers.
    pub fn refutes(&self, spec: &Formula, budget: usize) -> Result<bool, SynthesisError> {
        let nba = ltl_to_nba(&to_nnf(spec, false), &self.alphabet, budget)?;
        let trans: Vec<Vec<(Bdd, usize)>> = self
            .states
            .iter()
            .map(|st| {
                let i = self.alphabet.cube(self.alphabet.inputs(), &st.inputs);
                st.edges.iter().map(|(o, t)| (o.and(&i), *t)).collect()
            })
            .collect();
        Ok(!product_nonempty(&nba, self.initial, &trans))
    }

    /// `state inputs` lines followed by `state outputs -> target` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# moore machine (environment): {} states, initial {}",
            self.len(),
            self.initial
        );
        header(&mut out, &self.alphabet);
        for (s, st) in self.states.iter().enumerate() {
            let _ = writeln!(out, "{s} emit {}", bits(&st.inputs));
            for (o, t) in &st.edges {
                for p in self.alphabet.patterns(o, self.alphabet.outputs()) {
                    let _ = writeln!(out, "{s} {p} -> {t}");
                }
            }
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph moore {\n  rankdir=LR;\n");
        let _ = writeln!(out, "  init [shape=point];\n  init -> s{};", self.initial);
        let inames = self.alphabet.input_names();
        for (s, st) in self.states.iter().enumerate() {
            let ins: Vec<String> = inames
                .iter()
                .zip(&st.inputs)
                .map(|(n, b)| if *b { n.to_string() } else { format!("!{n}") })
                .collect();
            let _ = writeln!(out, "  s{s} [label=\"{s}: {}\"];", dot_escape(&ins.join(" ")));
            for (o, t) in &st.edges {
                let label = dot_escape(&self.alphabet.render(o));
                let _ = writeln!(out, "  s{s} -> s{t} [label=\"{label}\"];");
            }
        }
        out.push_str("}\n");
        out
    }
}
