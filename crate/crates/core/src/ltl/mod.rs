//! Linear temporal logic: the formula type shared by every stage of the
//! pipeline, plus negation normal form, a printer/parser pair for the
//! on-disk surface syntax, and structural normalization for comparisons.
//!
//! Surface syntax (highest binding first):
//!
//! ```text
//! !φ  X φ  X[n] φ  F φ  G φ      unary
//! φ U ψ   φ W ψ                  right associative
//! φ && ψ                         left associative
//! φ || ψ                         left associative
//! φ -> ψ                         right associative
//! φ <-> ψ                        non associative
//! ```
//!
//! `X[n] φ` is the symbolic timed next: `n` nested `X` operators that are
//! kept folded so time abstraction can rescale them.

mod file;
mod nnf;
mod normalize;
mod parse;
mod print;

use std::collections::BTreeSet;

pub use file::{parse_ltl_file, write_ltl_file, LtlEntry, LtlFileError, LtlRole};
pub use nnf::{to_nnf, Nnf};
pub use normalize::{equivalent_modulo_normalization, normalize};
pub use parse::{parse_formula, ParseError};

/// An LTL formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    /// `n` consecutive next operators, `n >= 1`.
    TimedNext(u32, Box<Formula>),
    Eventually(Box<Formula>),
    Always(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    WeakUntil(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn next(f: Formula) -> Self {
        Formula::Next(Box::new(f))
    }

    /// Timed next with `n` steps. `n == 0` yields the operand itself.
    pub fn timed_next(n: u32, f: Formula) -> Self {
        if n == 0 {
            f
        } else {
            Formula::TimedNext(n, Box::new(f))
        }
    }

    pub fn eventually(f: Formula) -> Self {
        Formula::Eventually(Box::new(f))
    }

    pub fn always(f: Formula) -> Self {
        Formula::Always(Box::new(f))
    }

    pub fn until(a: Formula, b: Formula) -> Self {
        Formula::Until(Box::new(a), Box::new(b))
    }

    pub fn weak_until(a: Formula, b: Formula) -> Self {
        Formula::WeakUntil(Box::new(a), Box::new(b))
    }

    /// Left-folded conjunction; `True` when empty.
    pub fn conj(items: impl IntoIterator<Item = Formula>) -> Self {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::True)
    }

    /// Left-folded disjunction; `False` when empty.
    pub fn disj(items: impl IntoIterator<Item = Formula>) -> Self {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::False)
    }

    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            True | False | Atom(_) => vec![],
            Not(a) | Next(a) | TimedNext(_, a) | Eventually(a) | Always(a) => vec![a],
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) | Until(a, b) | WeakUntil(a, b) => {
                vec![a, b]
            }
        }
    }

    /// All atom names occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        if let Formula::Atom(name) = self {
            out.insert(name.clone());
        }
        for c in self.children() {
            c.collect_atoms(out);
        }
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Formula::size).sum::<usize>()
    }

    /// Nesting depth of temporal and boolean operators.
    pub fn depth(&self) -> usize {
        1 + self
            .children()
            .into_iter()
            .map(Formula::depth)
            .max()
            .unwrap_or(0)
    }

    /// Count of temporal operator nodes (`X`, `X[n]`, `F`, `G`, `U`, `W`).
    pub fn temporal_count(&self) -> usize {
        use Formula::*;
        let own = matches!(
            self,
            Next(_) | TimedNext(..) | Eventually(_) | Always(_) | Until(..) | WeakUntil(..)
        ) as usize;
        own + self
            .children()
            .into_iter()
            .map(Formula::temporal_count)
            .sum::<usize>()
    }

    /// Lengths of all timed-next chains in the formula.
    pub fn timed_next_lengths(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::TimedNext(n, _) = f {
                out.insert(*n);
            }
        });
        out
    }

    pub fn has_timed_next(&self) -> bool {
        !self.timed_next_lengths().is_empty()
    }

    /// Pre-order traversal.
    pub fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }

    /// Rebuilds the formula bottom-up, applying `f` to every rebuilt node.
    pub fn map_bottom_up(&self, f: &mut impl FnMut(Formula) -> Formula) -> Formula {
        use Formula::*;
        let rebuilt = match self {
            True | False | Atom(_) => self.clone(),
            Not(a) => Not(Box::new(a.map_bottom_up(f))),
            Next(a) => Next(Box::new(a.map_bottom_up(f))),
            TimedNext(n, a) => TimedNext(*n, Box::new(a.map_bottom_up(f))),
            Eventually(a) => Eventually(Box::new(a.map_bottom_up(f))),
            Always(a) => Always(Box::new(a.map_bottom_up(f))),
            And(a, b) => And(Box::new(a.map_bottom_up(f)), Box::new(b.map_bottom_up(f))),
            Or(a, b) => Or(Box::new(a.map_bottom_up(f)), Box::new(b.map_bottom_up(f))),
            Implies(a, b) => Implies(Box::new(a.map_bottom_up(f)), Box::new(b.map_bottom_up(f))),
            Iff(a, b) => Iff(Box::new(a.map_bottom_up(f)), Box::new(b.map_bottom_up(f))),
            Until(a, b) => Until(Box::new(a.map_bottom_up(f)), Box::new(b.map_bottom_up(f))),
            WeakUntil(a, b) => {
                WeakUntil(Box::new(a.map_bottom_up(f)), Box::new(b.map_bottom_up(f)))
            }
        };
        f(rebuilt)
    }

    /// Replaces atoms through `rename`; returning `None` keeps the atom.
    pub fn rename_atoms(&self, rename: &impl Fn(&str) -> Option<Formula>) -> Formula {
        self.map_bottom_up(&mut |node| match &node {
            Formula::Atom(name) => rename(name).unwrap_or(node),
            _ => node,
        })
    }
}

/// Serialized as its surface syntax.
impl serde::Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Replaces every `X[n] φ` by `n` nested `X` operators.
pub fn expand_timed_next(formula: &Formula) -> Formula {
    formula.map_bottom_up(&mut |node| match node {
        Formula::TimedNext(n, inner) => {
            let mut out = *inner;
            for _ in 0..n {
                out = Formula::next(out);
            }
            out
        }
        other => other,
    })
}

/// Folds chains of two or more plain `X` into `X[n]`. A lone `X` stays as
/// is, so this inverts [`expand_timed_next`] only when every timed next has
/// length at least two.
pub fn fold_next_chains(formula: &Formula) -> Formula {
    formula.map_bottom_up(&mut |node| match node {
        Formula::Next(inner) => match *inner {
            Formula::Next(x) => Formula::TimedNext(2, x),
            Formula::TimedNext(n, x) => Formula::TimedNext(n + 1, x),
            other => Formula::Next(Box::new(other)),
        },
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }

    fn q() -> Formula {
        Formula::atom("q")
    }

    #[test]
    fn expand_three_steps() {
        let f = Formula::timed_next(3, p());
        assert_eq!(
            expand_timed_next(&f),
            Formula::next(Formula::next(Formula::next(p())))
        );
    }

    #[test]
    fn expand_single_step() {
        assert_eq!(
            expand_timed_next(&Formula::timed_next(1, p())),
            Formula::next(p())
        );
    }

    // Independent recursive reference expander used as the oracle.
    fn reference_expand(f: &Formula) -> Formula {
        use Formula::*;
        match f {
            TimedNext(n, a) => {
                let inner = reference_expand(a);
                (0..*n).fold(inner, |acc, _| Next(Box::new(acc)))
            }
            True | False | Atom(_) => f.clone(),
            Not(a) => Not(Box::new(reference_expand(a))),
            Next(a) => Next(Box::new(reference_expand(a))),
            Eventually(a) => Eventually(Box::new(reference_expand(a))),
            Always(a) => Always(Box::new(reference_expand(a))),
            And(a, b) => And(Box::new(reference_expand(a)), Box::new(reference_expand(b))),
            Or(a, b) => Or(Box::new(reference_expand(a)), Box::new(reference_expand(b))),
            Implies(a, b) => Implies(Box::new(reference_expand(a)), Box::new(reference_expand(b))),
            Iff(a, b) => Iff(Box::new(reference_expand(a)), Box::new(reference_expand(b))),
            Until(a, b) => Until(Box::new(reference_expand(a)), Box::new(reference_expand(b))),
            WeakUntil(a, b) => {
                WeakUntil(Box::new(reference_expand(a)), Box::new(reference_expand(b)))
            }
        }
    }

    #[test]
    fn expand_under_always() {
        let f = Formula::always(Formula::timed_next(2, Formula::and(p(), q())));
        let expected = Formula::always(Formula::next(Formula::next(Formula::and(p(), q()))));
        assert_eq!(expand_timed_next(&f), expected);
        assert_eq!(reference_expand(&f), expected);
    }

    #[test]
    fn fold_is_inverse_of_expand() {
        let f = Formula::implies(
            Formula::timed_next(3, Formula::not(p())),
            Formula::timed_next(2, q()),
        );
        assert_eq!(fold_next_chains(&expand_timed_next(&f)), f);
        // single steps come back as plain next
        let g = Formula::timed_next(1, q());
        assert_eq!(fold_next_chains(&expand_timed_next(&g)), Formula::next(q()));
    }

    #[test]
    fn timed_next_zero_is_identity() {
        assert_eq!(Formula::timed_next(0, p()), p());
    }

    #[test]
    fn collects_atoms_and_lengths() {
        let f = Formula::always(Formula::implies(
            Formula::timed_next(180, p()),
            Formula::timed_next(3, q()),
        ));
        assert_eq!(f.atoms().into_iter().collect::<Vec<_>>(), vec!["p", "q"]);
        assert_eq!(
            f.timed_next_lengths().into_iter().collect::<Vec<_>>(),
            vec![3, 180]
        );
    }
}
