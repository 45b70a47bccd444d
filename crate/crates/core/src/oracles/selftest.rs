//! Agreement checks between production code and the oracles.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::brute::{brute_force_realizability, BruteOptions, BruteVerdict};
use super::lasso::{enumerate_lassos, eval_ltl_on_lasso};
use super::random::{atom_names, random_formula, random_signature, random_timed_spec};
use super::timegrid::brute_force_time;
use crate::corpus::Sign;
use crate::ltl::{to_nnf, Formula};
use crate::synthesis::{
    check_realizability, ltl_to_nba, Alphabet, Signature, SynthesisOptions, Verdict,
};
use crate::time::{apply_to_formula, optimize};

/// Outcome of one agreement check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    /// Cases compared (conclusive ones, where that applies).
    pub compared: usize,
    /// Cases skipped because an oracle or the engine was inconclusive.
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl CheckOutcome {
    fn new(name: &str) -> Self {
        CheckOutcome {
            name: name.to_string(),
            compared: 0,
            skipped: 0,
            failures: vec![],
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} compared, {} skipped",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.compared,
            self.skipped
        )?;
        for x in self.failures.iter().take(5) {
            write!(f, "\n    {x}")?;
        }
        Ok(())
    }
}

/// Automaton membership against direct semantics, over every lasso of
/// length up to `max_len` on the formula's atoms.
pub fn lasso_agreement(formulas: &[Formula], max_len: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("automaton vs lasso semantics");
    for f in formulas {
        let atoms: Vec<String> = f.atoms().into_iter().collect();
        let sig = Signature {
            inputs: atoms.iter().cloned().collect(),
            outputs: BTreeSet::new(),
        };
        let Ok(alphabet) = Alphabet::for_spec(std::slice::from_ref(f), &sig) else {
            out.skipped += 1;
            continue;
        };
        let Ok(nba) = ltl_to_nba(&to_nnf(f, false), &alphabet, 10_000) else {
            out.skipped += 1;
            continue;
        };
        let val = |letter: &BTreeSet<String>| {
            let ins: Vec<bool> = alphabet
                .input_names()
                .iter()
                .map(|n| letter.contains(*n))
                .collect();
            alphabet.valuation(&ins, &[])
        };
        for l in enumerate_lassos(&atoms, max_len) {
            out.compared += 1;
            let prefix: Vec<_> = l.prefix.iter().map(val).collect();
            let cycle: Vec<_> = l.cycle.iter().map(val).collect();
            let a = nba.accepts(&prefix, &cycle);
            let e = eval_ltl_on_lasso(f, &l);
            if a != e {
                out.failures
                    .push(format!("{f} on {:?}·({:?})^ω: automaton {a}, semantics {e}", l.prefix, l.cycle));
            }
        }
    }
    out
}

/// Optimizer objective against the grid optimum.
pub fn optimizer_agreement(cases: &[(Vec<u32>, u32, Sign)]) -> CheckOutcome {
    let mut out = CheckOutcome::new("time optimizer vs grid");
    for (thetas, bound, sign) in cases {
        let signs = vec![*sign; thetas.len()];
        let p = optimize(thetas, *bound, &signs);
        let Some(g) = brute_force_time(thetas, *bound, &signs) else {
            out.skipped += 1;
            continue;
        };
        out.compared += 1;
        let got = (p.reduced_sum(), p.error_sum(), p.divisor);
        let want = (g.reduced_sum, g.error_sum, g.divisor);
        if got != want || p.validate().is_err() {
            out.failures.push(format!(
                "Θ={thetas:?} B={bound} {sign:?}: optimizer {got:?}, grid {want:?}"
            ));
        }
    }
    out
}

/// Every Θ with `|Θ| <= 3`, distinct values in `1..=max_theta`, every
/// bound up to `max_bound`, both sign policies.
pub fn all_time_cases(max_theta: u32, max_bound: u32) -> Vec<(Vec<u32>, u32, Sign)> {
    let mut sets: Vec<Vec<u32>> = Vec::new();
    for a in 1..=max_theta {
        sets.push(vec![a]);
        for b in a + 1..=max_theta {
            sets.push(vec![a, b]);
            for c in b + 1..=max_theta {
                sets.push(vec![a, b, c]);
            }
        }
    }
    let mut out = Vec::new();
    for s in sets {
        for bound in 0..=max_bound {
            for sign in [Sign::Nonneg, Sign::Nonpos] {
                out.push((s.clone(), bound, sign));
            }
        }
    }
    out
}

fn verdict_class(v: &Verdict) -> Option<bool> {
    match v {
        Verdict::Realizable { .. } => Some(true),
        Verdict::Unrealizable { .. } => Some(false),
        Verdict::Unknown { .. } => None,
    }
}

/// Engine verdicts against strategy enumeration on random specs.
pub fn synthesis_agreement(seed: u64, cases: usize, opts: &SynthesisOptions) -> CheckOutcome {
    let mut out = CheckOutcome::new("synthesis vs strategy enumeration");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let atoms = atom_names(rng.gen_range(1..=3));
        let f = random_formula(&mut rng, &atoms, 2, 3);
        let used: Vec<String> = f.atoms().into_iter().collect();
        let sig = random_signature(&mut rng, &used);
        let spec = vec![f];
        let brute = brute_force_realizability(&spec, &sig, &BruteOptions::default());
        let engine = match check_realizability(&spec, &sig, opts) {
            Ok(v) => verdict_class(&v),
            Err(e) => {
                out.failures.push(format!("{}: engine error {e}", spec[0]));
                continue;
            }
        };
        let expected = match brute {
            BruteVerdict::Realizable(_) => Some(true),
            BruteVerdict::Unrealizable(_) => Some(false),
            BruteVerdict::Inconclusive => None,
        };
        match (engine, expected) {
            (Some(a), Some(b)) => {
                out.compared += 1;
                if a != b {
                    out.failures.push(format!(
                        "{} with inputs {:?}: engine {a}, enumeration {b}",
                        spec[0], sig.inputs
                    ));
                }
            }
            _ => out.skipped += 1,
        }
    }
    out
}

/// Verdicts before and after exact (zero-error) time abstraction.
pub fn gcd_agreement(seed: u64, cases: usize, opts: &SynthesisOptions) -> CheckOutcome {
    let mut out = CheckOutcome::new("verdict before vs after zero-error abstraction");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let atoms = atom_names(rng.gen_range(2..=3));
        let spec = random_timed_spec(&mut rng, &atoms, 6);
        let used: Vec<String> = spec
            .iter()
            .flat_map(|f| f.atoms())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let sig = random_signature(&mut rng, &used);
        let thetas: Vec<u32> = spec
            .iter()
            .flat_map(|f| f.timed_next_lengths())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let profile = optimize(&thetas, 0, &vec![Sign::Nonneg; thetas.len()]);
        let abstracted: Vec<Formula> = spec
            .iter()
            .map(|f| apply_to_formula(f, &profile).expect("profile covers all durations"))
            .collect();
        let before = check_realizability(&spec, &sig, opts).ok();
        let after = check_realizability(&abstracted, &sig, opts).ok();
        match (before.as_ref().and_then(verdict_class), after.as_ref().and_then(verdict_class)) {
            (Some(a), Some(b)) => {
                out.compared += 1;
                if a != b {
                    let show: Vec<String> = spec.iter().map(|f| f.to_string()).collect();
                    out.failures.push(format!(
                        "{} (d={}): before {a}, after {b}",
                        show.join(" && "),
                        profile.divisor
                    ));
                }
            }
            _ => out.skipped += 1,
        }
    }
    out
}

#[derive(Clone, Copy, Debug)]
pub struct SelftestOptions {
    pub seed: u64,
    /// Random cases per randomized check.
    pub cases: usize,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions { seed: 2024, cases: 60 }
    }
}

/// All agreement checks at the given size.
pub fn run_selftest(opts: &SelftestOptions) -> Vec<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let atoms = atom_names(2);
    let formulas: Vec<Formula> = (0..opts.cases)
        .map(|_| random_formula(&mut rng, &atoms, 2, 3))
        .collect();
    let synth = SynthesisOptions::default();
    vec![
        lasso_agreement(&formulas, 3),
        optimizer_agreement(&all_time_cases(20, 6)),
        synthesis_agreement(opts.seed, opts.cases, &synth),
        gcd_agreement(opts.seed, opts.cases / 2, &synth),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::parse_formula;

    #[test]
    fn handpicked_lasso_agreement() {
        let fs: Vec<Formula> = ["F p", "p U q", "G F p", "p W q", "X (p && X !q)", "F G !p"]
            .iter()
            .map(|s| parse_formula(s).unwrap())
            .collect();
        let r = lasso_agreement(&fs, 4);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn small_selftest_passes() {
        let r = run_selftest(&SelftestOptions { seed: 5, cases: 12 });
        for c in &r {
            assert!(c.passed(), "{c}");
        }
    }
}
