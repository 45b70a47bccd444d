//! Realizability by exhaustive enumeration of small strategies.
//!
//! Letters are explicit bit masks over the alphabet; every candidate
//! machine is checked by a plain product search against a Büchi automaton.

use std::collections::HashSet;

use crate::ltl::{to_nnf, Formula};
use crate::synthesis::{ltl_to_nba, Alphabet, Nba, Signature};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BruteVerdict {
    /// A system Mealy machine with this many states works.
    Realizable(usize),
    /// An environment Moore strategy with this many states works.
    Unrealizable(usize),
    Inconclusive,
}

#[derive(Clone, Copy, Debug)]
pub struct BruteOptions {
    pub max_states: usize,
    /// Machine sizes whose candidate count exceeds this are skipped.
    pub max_candidates: u64,
}

impl Default for BruteOptions {
    fn default() -> Self {
        BruteOptions {
            max_states: 3,
            max_candidates: 200_000,
        }
    }
}

/// Automaton with guards expanded to letter tables.
struct Explicit {
    initial: usize,
    accepting: Vec<bool>,
    /// edges[q] = (letter table, target)
    edges: Vec<Vec<(Vec<bool>, usize)>>,
}

impl Explicit {
    fn new(nba: &Nba, alphabet: &Alphabet) -> Self {
        let n = alphabet.len();
        let letters: Vec<_> = (0..1usize << n)
            .map(|m| {
                let ins: Vec<bool> = (0..alphabet.inputs().len())
                    .map(|i| m >> i & 1 == 1)
                    .collect();
                let outs: Vec<bool> = (0..alphabet.outputs().len())
                    .map(|j| m >> (alphabet.inputs().len() + j) & 1 == 1)
                    .collect();
                alphabet.valuation(&ins, &outs)
            })
            .collect();
        Explicit {
            initial: nba.initial,
            accepting: nba.states.iter().map(|s| s.accepting).collect(),
            edges: nba
                .states
                .iter()
                .map(|s| {
                    s.edges
                        .iter()
                        .map(|(g, t)| (letters.iter().map(|v| g.eval_in(v)).collect(), *t))
                        .collect()
                })
                .collect(),
        }
    }
}

/// Letter index of an (input mask, output mask) pair.
fn letter(ni: usize, i: usize, o: usize) -> usize {
    i | (o << ni)
}

/// Some accepting product node is reachable and lies on a cycle.
fn has_accepting_cycle(
    start: (usize, usize),
    succ: &dyn Fn((usize, usize)) -> Vec<(usize, usize)>,
    accepting: &dyn Fn((usize, usize)) -> bool,
) -> bool {
    let reach = |from: (usize, usize)| {
        let mut seen = HashSet::new();
        let mut stack = succ(from);
        while let Some(x) = stack.pop() {
            if seen.insert(x) {
                stack.extend(succ(x));
            }
        }
        seen
    };
    let mut all = reach(start);
    all.insert(start);
    all.into_iter()
        .filter(|x| accepting(*x))
        .any(|x| reach(x).contains(&x))
}

fn count(base: u64, digits: usize) -> Option<u64> {
    let mut c: u64 = 1;
    for _ in 0..digits {
        c = c.checked_mul(base)?;
    }
    Some(c)
}

/// Counts through all digit vectors of the given length and base.
fn odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn mealy_exists(aut: &Explicit, ni: usize, no: usize, n: usize, cap: u64) -> Option<bool> {
    let (ci, co) = (1usize << ni, 1usize << no);
    let slots = n * ci;
    let base = n * co;
    if count(base as u64, slots)? > cap {
        return None;
    }
    // choice[s * ci + i] = next * co + o
    let mut choice = vec![0usize; slots];
    loop {
        let succ = |(s, q): (usize, usize)| {
            let mut out = Vec::new();
            for i in 0..ci {
                let c = choice[s * ci + i];
                let (next, o) = (c / co, c % co);
                let l = letter(ni, i, o);
                for (tab, t) in &aut.edges[q] {
                    if tab[l] {
                        out.push((next, *t));
                    }
                }
            }
            out
        };
        if !has_accepting_cycle((0, aut.initial), &succ, &|(_, q)| aut.accepting[q]) {
            return Some(true);
        }
        if !odometer(&mut choice, base) {
            return Some(false);
        }
    }
}

fn moore_exists(aut: &Explicit, ni: usize, no: usize, n: usize, cap: u64) -> Option<bool> {
    let (ci, co) = (1usize << ni, 1usize << no);
    let total = count(ci as u64, n)?.checked_mul(count(n as u64, n * co)?)?;
    if total > cap {
        return None;
    }
    let mut emit = vec![0usize; n];
    loop {
        let mut next = vec![0usize; n * co];
        loop {
            let succ = |(s, q): (usize, usize)| {
                let mut out = Vec::new();
                for o in 0..co {
                    let l = letter(ni, emit[s], o);
                    for (tab, t) in &aut.edges[q] {
                        if tab[l] {
                            out.push((next[s * co + o], *t));
                        }
                    }
                }
                out
            };
            if !has_accepting_cycle((0, aut.initial), &succ, &|(_, q)| aut.accepting[q]) {
                return Some(true);
            }
            if !odometer(&mut next, n) {
                break;
            }
        }
        if !odometer(&mut emit, ci) {
            return Some(false);
        }
    }
}

/// Searches system strategies and environment counter-strategies of
/// growing size. Either kind of witness settles the question.
pub fn brute_force_realizability(spec: &[Formula], sig: &Signature, opts: &BruteOptions) -> BruteVerdict {
    let Ok(alphabet) = Alphabet::for_spec(spec, sig) else {
        return BruteVerdict::Inconclusive;
    };
    let phi = Formula::conj(spec.iter().cloned());
    let (Ok(neg), Ok(pos)) = (
        ltl_to_nba(&to_nnf(&phi, true), &alphabet, 10_000),
        ltl_to_nba(&to_nnf(&phi, false), &alphabet, 10_000),
    ) else {
        return BruteVerdict::Inconclusive;
    };
    let (neg, pos) = (Explicit::new(&neg, &alphabet), Explicit::new(&pos, &alphabet));
    let (ni, no) = (alphabet.inputs().len(), alphabet.outputs().len());
    for n in 1..=opts.max_states {
        if mealy_exists(&neg, ni, no, n, opts.max_candidates) == Some(true) {
            return BruteVerdict::Realizable(n);
        }
        if moore_exists(&pos, ni, no, n, opts.max_candidates) == Some(true) {
            return BruteVerdict::Unrealizable(n);
        }
    }
    BruteVerdict::Inconclusive
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::parse_formula;

    fn brute(src: &str, ins: &[&str], outs: &[&str]) -> BruteVerdict {
        brute_force_realizability(
            &[parse_formula(src).unwrap()],
            &Signature::new(ins, outs),
            &BruteOptions::default(),
        )
    }

    #[test]
    fn copy_machine() {
        assert_eq!(brute("G (out <-> in)", &["in"], &["out"]), BruteVerdict::Realizable(1));
    }

    #[test]
    fn one_step_clairvoyance() {
        assert_eq!(brute("G (out <-> X in)", &["in"], &["out"]), BruteVerdict::Unrealizable(2));
    }

    #[test]
    fn contradiction() {
        assert_eq!(brute("F (out && !out)", &["in"], &["out"]), BruteVerdict::Unrealizable(1));
    }

    #[test]
    fn response_in_one_state() {
        assert_eq!(brute("G (r -> F g)", &["r"], &["g"]), BruteVerdict::Realizable(1));
    }
}
