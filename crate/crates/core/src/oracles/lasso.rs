//! Direct LTL semantics on ultimately periodic words.

use std::collections::BTreeSet;

use crate::ltl::{expand_timed_next, Formula};

/// The word `prefix · loop^ω`; each letter is its set of true atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lasso {
    pub prefix: Vec<BTreeSet<String>>,
    pub cycle: Vec<BTreeSet<String>>,
}

impl Lasso {
    pub fn new(prefix: Vec<BTreeSet<String>>, cycle: Vec<BTreeSet<String>>) -> Self {
        assert!(!cycle.is_empty(), "lasso loop must be non-empty");
        Lasso { prefix, cycle }
    }

    /// Builds letters from lists of true atoms.
    pub fn from_lists(prefix: &[&[&str]], cycle: &[&[&str]]) -> Self {
        let conv = |xs: &[&[&str]]| {
            xs.iter()
                .map(|l| l.iter().map(|s| s.to_string()).collect())
                .collect()
        };
        Lasso::new(conv(prefix), conv(cycle))
    }

    pub fn len(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letter(&self, pos: usize) -> &BTreeSet<String> {
        if pos < self.prefix.len() {
            &self.prefix[pos]
        } else {
            &self.cycle[pos - self.prefix.len()]
        }
    }

    fn succ(&self, pos: usize) -> usize {
        if pos + 1 == self.len() {
            self.prefix.len()
        } else {
            pos + 1
        }
    }
}

/// Truth of `f` at position 0 of the lasso.
///
/// Every subformula gets one truth value per lasso position. Untils are
/// least fixpoints and releases greatest fixpoints of their one-step
/// unfolding; iterating the unfolding `len` times reaches the fixpoint.
pub fn eval_ltl_on_lasso(f: &Formula, lasso: &Lasso) -> bool {
    eval(&expand_timed_next(f), lasso)[0]
}

fn fix(lasso: &Lasso, start: bool, step: impl Fn(usize, &[bool]) -> bool) -> Vec<bool> {
    let n = lasso.len();
    let mut v = vec![start; n];
    for _ in 0..=n {
        let next: Vec<bool> = (0..n).map(|i| step(i, &v)).collect();
        if next == v {
            break;
        }
        v = next;
    }
    v
}

fn eval(f: &Formula, l: &Lasso) -> Vec<bool> {
    let n = l.len();
    match f {
        Formula::True => vec![true; n],
        Formula::False => vec![false; n],
        Formula::Atom(a) => (0..n).map(|i| l.letter(i).contains(a)).collect(),
        Formula::Not(a) => eval(a, l).into_iter().map(|x| !x).collect(),
        Formula::And(a, b) => zip(eval(a, l), eval(b, l), |x, y| x && y),
        Formula::Or(a, b) => zip(eval(a, l), eval(b, l), |x, y| x || y),
        Formula::Implies(a, b) => zip(eval(a, l), eval(b, l), |x, y| !x || y),
        Formula::Iff(a, b) => zip(eval(a, l), eval(b, l), |x, y| x == y),
        Formula::Next(a) => {
            let v = eval(a, l);
            (0..n).map(|i| v[l.succ(i)]).collect()
        }
        Formula::TimedNext(k, a) => {
            let v = eval(a, l);
            (0..n)
                .map(|i| {
                    let mut p = i;
                    for _ in 0..*k {
                        p = l.succ(p);
                    }
                    v[p]
                })
                .collect()
        }
        Formula::Eventually(a) => {
            let v = eval(a, l);
            fix(l, false, |i, cur| v[i] || cur[l.succ(i)])
        }
        Formula::Always(a) => {
            let v = eval(a, l);
            fix(l, true, |i, cur| v[i] && cur[l.succ(i)])
        }
        Formula::Until(a, b) => {
            let (x, y) = (eval(a, l), eval(b, l));
            fix(l, false, |i, cur| y[i] || (x[i] && cur[l.succ(i)]))
        }
        Formula::WeakUntil(a, b) => {
            let (x, y) = (eval(a, l), eval(b, l));
            fix(l, true, |i, cur| y[i] || (x[i] && cur[l.succ(i)]))
        }
    }
}

fn zip(a: Vec<bool>, b: Vec<bool>, op: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.into_iter().zip(b).map(|(x, y)| op(x, y)).collect()
}

/// All lassos over `atoms` with total length in `1..=max_len`.
pub fn enumerate_lassos(atoms: &[String], max_len: usize) -> Vec<Lasso> {
    let letters: Vec<BTreeSet<String>> = (0..1usize << atoms.len())
        .map(|m| {
            atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, a)| a.clone())
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for len in 1..=max_len {
        let mut idx = vec![0usize; len];
        loop {
            let word: Vec<BTreeSet<String>> = idx.iter().map(|i| letters[*i].clone()).collect();
            for split in 0..len {
                out.push(Lasso::new(word[..split].to_vec(), word[split..].to_vec()));
            }
            // Odometer increment.
            let mut j = 0;
            while j < len {
                idx[j] += 1;
                if idx[j] < letters.len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
            if j == len {
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::parse_formula;

    fn ev(src: &str, l: &Lasso) -> bool {
        eval_ltl_on_lasso(&parse_formula(src).unwrap(), l)
    }

    #[test]
    fn basic_cases() {
        assert!(ev("G p", &Lasso::from_lists(&[], &[&["p"]])));
        assert!(!ev("F p", &Lasso::from_lists(&[&[]], &[&[]])));
        assert!(ev("p U q", &Lasso::from_lists(&[&["p"], &["q"]], &[&["q"]])));
        assert!(!ev("p U q", &Lasso::from_lists(&[], &[&["p"]])));
        assert!(ev("p W q", &Lasso::from_lists(&[], &[&["p"]])));
    }

    #[test]
    fn next_wraps_into_loop() {
        let l = Lasso::from_lists(&[&[]], &[&["p"], &[]]);
        assert!(ev("X p", &l));
        assert!(ev("X X X p", &l));
        assert!(!ev("X X p", &l));
        assert!(ev("X[3] p", &l));
        assert!(ev("G F p && G F !p", &l));
        assert!(!ev("F G p", &l));
    }

    #[test]
    fn enumeration_counts() {
        let atoms = vec!["p".to_string()];
        // len 1: 2 words × 1 split; len 2: 4 words × 2 splits.
        assert_eq!(enumerate_lassos(&atoms, 2).len(), 2 + 8);
    }
}
