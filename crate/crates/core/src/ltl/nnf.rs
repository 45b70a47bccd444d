//! Negation normal form over `U`, `R` and `X`.
//!
//! Negations sit only on atoms. `F`, `G` and `W` are rewritten through
//! until/release, and timed next is unrolled.

use std::collections::BTreeSet;
use std::fmt;

use super::Formula;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Nnf {
    True,
    False,
    /// Atom with polarity (`true` = positive).
    Lit(String, bool),
    And(Box<Nnf>, Box<Nnf>),
    Or(Box<Nnf>, Box<Nnf>),
    Next(Box<Nnf>),
    Until(Box<Nnf>, Box<Nnf>),
    Release(Box<Nnf>, Box<Nnf>),
}

impl Nnf {
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut BTreeSet<String>) {
        match self {
            Nnf::True | Nnf::False => {}
            Nnf::Lit(a, _) => {
                out.insert(a.clone());
            }
            Nnf::Next(a) => a.collect(out),
            Nnf::And(a, b) | Nnf::Or(a, b) | Nnf::Until(a, b) | Nnf::Release(a, b) => {
                a.collect(out);
                b.collect(out);
            }
        }
    }

    fn and(a: Nnf, b: Nnf) -> Nnf {
        match (a, b) {
            (Nnf::False, _) | (_, Nnf::False) => Nnf::False,
            (Nnf::True, x) | (x, Nnf::True) => x,
            (a, b) => Nnf::And(Box::new(a), Box::new(b)),
        }
    }

    fn or(a: Nnf, b: Nnf) -> Nnf {
        match (a, b) {
            (Nnf::True, _) | (_, Nnf::True) => Nnf::True,
            (Nnf::False, x) | (x, Nnf::False) => x,
            (a, b) => Nnf::Or(Box::new(a), Box::new(b)),
        }
    }

    fn until(a: Nnf, b: Nnf) -> Nnf {
        match b {
            Nnf::True => Nnf::True,
            Nnf::False => Nnf::False,
            b => Nnf::Until(Box::new(a), Box::new(b)),
        }
    }

    fn release(a: Nnf, b: Nnf) -> Nnf {
        match b {
            Nnf::True => Nnf::True,
            Nnf::False => Nnf::False,
            b => Nnf::Release(Box::new(a), Box::new(b)),
        }
    }

    fn next(a: Nnf) -> Nnf {
        match a {
            Nnf::True => Nnf::True,
            Nnf::False => Nnf::False,
            a => Nnf::Next(Box::new(a)),
        }
    }
}

/// Converts `formula` (or its negation when `negate` is set) to NNF.
pub fn to_nnf(formula: &Formula, negate: bool) -> Nnf {
    use Formula as F;
    match (formula, negate) {
        (F::True, false) | (F::False, true) => Nnf::True,
        (F::True, true) | (F::False, false) => Nnf::False,
        (F::Atom(a), n) => Nnf::Lit(a.clone(), !n),
        (F::Not(a), n) => to_nnf(a, !n),
        (F::And(a, b), false) | (F::Or(a, b), true) => {
            Nnf::and(to_nnf(a, negate), to_nnf(b, negate))
        }
        (F::Or(a, b), false) | (F::And(a, b), true) => {
            Nnf::or(to_nnf(a, negate), to_nnf(b, negate))
        }
        (F::Implies(a, b), false) => Nnf::or(to_nnf(a, true), to_nnf(b, false)),
        (F::Implies(a, b), true) => Nnf::and(to_nnf(a, false), to_nnf(b, true)),
        (F::Iff(a, b), n) => {
            // a <-> b  ==  (a && b) || (!a && !b)
            // !(a <-> b) == (a && !b) || (!a && b)
            let pos = Nnf::and(to_nnf(a, false), to_nnf(b, n));
            let neg = Nnf::and(to_nnf(a, true), to_nnf(b, !n));
            Nnf::or(pos, neg)
        }
        (F::Next(a), n) => Nnf::next(to_nnf(a, n)),
        (F::TimedNext(k, a), n) => {
            let mut out = to_nnf(a, n);
            for _ in 0..*k {
                out = Nnf::next(out);
            }
            out
        }
        (F::Eventually(a), false) => Nnf::until(Nnf::True, to_nnf(a, false)),
        (F::Eventually(a), true) => Nnf::release(Nnf::False, to_nnf(a, true)),
        (F::Always(a), false) => Nnf::release(Nnf::False, to_nnf(a, false)),
        (F::Always(a), true) => Nnf::until(Nnf::True, to_nnf(a, true)),
        (F::Until(a, b), false) => Nnf::until(to_nnf(a, false), to_nnf(b, false)),
        (F::Until(a, b), true) => Nnf::release(to_nnf(a, true), to_nnf(b, true)),
        // a W b == b R (a || b)
        (F::WeakUntil(a, b), false) => Nnf::release(
            to_nnf(b, false),
            Nnf::or(to_nnf(a, false), to_nnf(b, false)),
        ),
        // !(a W b) == (!b) U (!a && !b)
        (F::WeakUntil(a, b), true) => {
            Nnf::until(to_nnf(b, true), Nnf::and(to_nnf(a, true), to_nnf(b, true)))
        }
    }
}

impl fmt::Display for Nnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nnf::True => write!(f, "true"),
            Nnf::False => write!(f, "false"),
            Nnf::Lit(a, true) => write!(f, "{a}"),
            Nnf::Lit(a, false) => write!(f, "!{a}"),
            Nnf::And(a, b) => write!(f, "({a} && {b})"),
            Nnf::Or(a, b) => write!(f, "({a} || {b})"),
            Nnf::Next(a) => write!(f, "X {a}"),
            Nnf::Until(a, b) => write!(f, "({a} U {b})"),
            Nnf::Release(a, b) => write!(f, "({a} R {b})"),
        }
    }
}
