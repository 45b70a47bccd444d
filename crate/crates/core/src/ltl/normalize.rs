//! Structural normalization used to compare translated formulas against
//! reference formulas that differ only cosmetically.
//!
//! Implications become disjunctions, timed next is unrolled, double
//! negation is removed and `&&`/`||` chains are flattened, sorted by their
//! printed form and deduplicated. `<->` operands are sorted too.

use super::{expand_timed_next, Formula};

pub fn normalize(formula: &Formula) -> Formula {
    let expanded = expand_timed_next(formula);
    norm(&expanded)
}

/// True when both formulas normalize to the same tree.
pub fn equivalent_modulo_normalization(a: &Formula, b: &Formula) -> bool {
    normalize(a) == normalize(b)
}

fn norm(f: &Formula) -> Formula {
    use Formula::*;
    match f {
        True | False | Atom(_) => f.clone(),
        Not(a) => negate(norm(a)),
        Implies(a, b) => rebuild_flat(false, vec![negate(norm(a)), norm(b)]),
        And(..) => {
            let mut items = Vec::new();
            flatten(f, true, &mut items);
            rebuild_flat(true, items.into_iter().map(norm).collect())
        }
        Or(..) => {
            let mut items = Vec::new();
            flatten(f, false, &mut items);
            rebuild_flat(false, items.into_iter().map(norm).collect())
        }
        Iff(a, b) => {
            let (x, y) = (norm(a), norm(b));
            if x.to_string() <= y.to_string() {
                Formula::iff(x, y)
            } else {
                Formula::iff(y, x)
            }
        }
        Next(a) => Formula::next(norm(a)),
        TimedNext(n, a) => Formula::timed_next(*n, norm(a)),
        Eventually(a) => Formula::eventually(norm(a)),
        Always(a) => Formula::always(norm(a)),
        Until(a, b) => Formula::until(norm(a), norm(b)),
        WeakUntil(a, b) => Formula::weak_until(norm(a), norm(b)),
    }
}

fn negate(f: Formula) -> Formula {
    match f {
        Formula::Not(inner) => *inner,
        other => Formula::not(other),
    }
}

fn flatten<'a>(f: &'a Formula, conj: bool, out: &mut Vec<&'a Formula>) {
    match (f, conj) {
        (Formula::And(a, b), true) | (Formula::Or(a, b), false) => {
            flatten(a, conj, out);
            flatten(b, conj, out);
        }
        _ => out.push(f),
    }
}

// Items are already normalized; nested chains of the same kind are spliced.
fn rebuild_flat(conj: bool, items: Vec<Formula>) -> Formula {
    let mut flat = Vec::new();
    for item in items {
        let mut parts = Vec::new();
        flatten(&item, conj, &mut parts);
        flat.extend(parts.into_iter().cloned());
    }
    let mut keyed: Vec<(String, Formula)> = flat.into_iter().map(|f| (f.to_string(), f)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    let items = keyed.into_iter().map(|(_, f)| f);
    if conj {
        Formula::conj(items)
    } else {
        Formula::disj(items)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::parse_formula;

    fn n(s: &str) -> String {
        normalize(&parse_formula(s).unwrap()).to_string()
    }

    #[test]
    fn implication_becomes_disjunction() {
        assert_eq!(n("p -> q"), "!p || q");
        assert_eq!(n("!p -> q"), "p || q");
    }

    #[test]
    fn sorts_and_dedupes() {
        assert_eq!(n("r && (q && p) && q"), "p && q && r");
        assert_eq!(n("(b || a) || (a -> c)"), "!a || a || b || c");
    }

    #[test]
    fn unrolls_timed_next() {
        assert_eq!(n("X[2] p"), "X X p");
    }

    #[test]
    fn equivalent_spellings_agree() {
        let a = parse_formula("G (mode && (x || y) -> F alarm)").unwrap();
        let b = parse_formula("G (!(mode && (y || x)) || F alarm)").unwrap();
        assert!(equivalent_modulo_normalization(&a, &b));
        // negations are not pushed inward
        let d = parse_formula("G (!mode || !(x || y) || F alarm)").unwrap();
        assert!(!equivalent_modulo_normalization(&a, &d));
        let c = parse_formula("G ((y || x) && mode -> F alarm)").unwrap();
        assert!(equivalent_modulo_normalization(&a, &c));
    }

    #[test]
    fn idempotent() {
        let f = parse_formula("G (a -> (b -> X[3] !!c)) && (d <-> !e)").unwrap();
        let once = normalize(&f);
        assert_eq!(normalize(&once), once);
    }
}
