//! Seeded random specifications for oracle comparisons.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::ltl::Formula;
use crate::synthesis::Signature;

/// Random formula over `atoms` with at most `temporal` temporal operators.
pub fn random_formula<R: Rng>(rng: &mut R, atoms: &[String], temporal: usize, depth: usize) -> Formula {
    gen(rng, atoms, &mut { temporal }, depth)
}

fn gen<R: Rng>(rng: &mut R, atoms: &[String], budget: &mut usize, depth: usize) -> Formula {
    let atom = |rng: &mut R| Formula::atom(atoms.choose(rng).unwrap().clone());
    if depth == 0 {
        return if rng.gen_bool(0.25) {
            Formula::not(atom(rng))
        } else {
            atom(rng)
        };
    }
    let temporal = *budget > 0 && rng.gen_bool(0.6);
    if temporal {
        *budget -= 1;
        match rng.gen_range(0..5) {
            0 => Formula::next(gen(rng, atoms, budget, depth - 1)),
            1 => Formula::eventually(gen(rng, atoms, budget, depth - 1)),
            2 => Formula::always(gen(rng, atoms, budget, depth - 1)),
            3 => {
                let a = gen(rng, atoms, budget, depth - 1);
                Formula::until(a, gen(rng, atoms, budget, depth - 1))
            }
            _ => {
                let a = gen(rng, atoms, budget, depth - 1);
                Formula::weak_until(a, gen(rng, atoms, budget, depth - 1))
            }
        }
    } else {
        match rng.gen_range(0..5) {
            0 => Formula::not(gen(rng, atoms, budget, depth - 1)),
            1 => {
                let a = gen(rng, atoms, budget, depth - 1);
                Formula::and(a, gen(rng, atoms, budget, depth - 1))
            }
            2 => {
                let a = gen(rng, atoms, budget, depth - 1);
                Formula::or(a, gen(rng, atoms, budget, depth - 1))
            }
            3 => {
                let a = gen(rng, atoms, budget, depth - 1);
                Formula::implies(a, gen(rng, atoms, budget, depth - 1))
            }
            _ => atom(rng),
        }
    }
}

/// Random split of `atoms` into inputs and outputs.
pub fn random_signature<R: Rng>(rng: &mut R, atoms: &[String]) -> Signature {
    let mut sig = Signature::default();
    for a in atoms {
        if rng.gen_bool(0.5) {
            sig.inputs.insert(a.clone());
        } else {
            sig.outputs.insert(a.clone());
        }
    }
    sig
}

/// Invariant-style timed spec `G(a -> X[θ] b)` pieces, with durations
/// drawn from `1..=max_theta`.
pub fn random_timed_spec<R: Rng>(rng: &mut R, atoms: &[String], max_theta: u32) -> Vec<Formula> {
    let n = rng.gen_range(1..=2);
    (0..n)
        .map(|_| {
            let theta = rng.gen_range(1..=max_theta);
            let a = atoms.choose(rng).unwrap().clone();
            let b = atoms.choose(rng).unwrap().clone();
            let lhs = if rng.gen_bool(0.5) {
                Formula::atom(a)
            } else {
                Formula::not(Formula::atom(a))
            };
            let body = Formula::timed_next(theta, Formula::atom(b));
            if rng.gen_bool(0.5) {
                Formula::always(Formula::implies(lhs, body))
            } else {
                Formula::always(Formula::implies(body, lhs))
            }
        })
        .collect()
}

pub fn atom_names(n: usize) -> Vec<String> {
    ["p", "q", "r", "s"].iter().take(n).map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn respects_temporal_budget() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let atoms = atom_names(3);
        for _ in 0..200 {
            let f = random_formula(&mut rng, &atoms, 2, 4);
            assert!(f.temporal_count() <= 2, "{f}");
            assert!(f.atoms().len() <= 3);
        }
    }

    #[test]
    fn seeded_is_deterministic() {
        let atoms = atom_names(2);
        let a = random_formula(&mut ChaCha8Rng::seed_from_u64(1), &atoms, 2, 3);
        let b = random_formula(&mut ChaCha8Rng::seed_from_u64(1), &atoms, 2, 3);
        assert_eq!(a, b);
    }
}
