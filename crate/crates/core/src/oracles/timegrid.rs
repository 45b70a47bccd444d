//! Time-abstraction optimum by enumerating the whole (d, θ', Δ) grid.

use crate::corpus::Sign;

/// Optimal choice found on the grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridOptimum {
    pub divisor: u32,
    pub reduced: Vec<u32>,
    pub errors: Vec<i64>,
    pub reduced_sum: u64,
    pub error_sum: u64,
}

fn admissible(delta: i64, d: u32, sign: Sign) -> bool {
    let d = d as i64;
    -d < delta
        && delta < d
        && match sign {
            Sign::Nonneg => delta >= 0,
            Sign::Nonpos => delta <= 0,
        }
}

type Best = Option<((u64, u64, u32), GridOptimum)>;

fn consider(best: &mut Best, thetas: &[u32], reduced: &[u32], d: u32, bound: u32, signs: &[Sign]) {
    let errors: Vec<i64> = thetas
        .iter()
        .zip(reduced)
        .map(|(&t, &r)| t as i64 - r as i64 * d as i64)
        .collect();
    let ok = errors.iter().zip(signs).all(|(&e, &s)| admissible(e, d, s));
    let err: u64 = errors.iter().map(|e| e.unsigned_abs()).sum();
    if ok && err <= bound as u64 {
        let sum: u64 = reduced.iter().map(|&r| r as u64).sum();
        let key = (sum, err, d);
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            *best = Some((
                key,
                GridOptimum {
                    divisor: d,
                    reduced: reduced.to_vec(),
                    errors,
                    reduced_sum: sum,
                    error_sum: err,
                },
            ));
        }
    }
}

/// Calls `f` on every vector with `v[i]` drawn from `choices[i]`.
fn each_vector(choices: &[Vec<u32>], f: &mut impl FnMut(&[u32])) {
    let mut idx = vec![0usize; choices.len()];
    let mut v: Vec<u32> = choices.iter().map(|c| c[0]).collect();
    loop {
        f(&v);
        let mut i = 0;
        while i < idx.len() {
            idx[i] += 1;
            if idx[i] < choices[i].len() {
                v[i] = choices[i][idx[i]];
                break;
            }
            idx[i] = 0;
            v[i] = choices[i][0];
            i += 1;
        }
        if i == idx.len() {
            return;
        }
    }
}

/// Minimizes (Σθ', Σ|Δ|, d) over every d in `1..=max+bound` and every
/// vector θ' with `0 <= θ'_i <= θ_i`, keeping points where each
/// Δ_i = θ_i - θ'_i·d is admissible and Σ|Δ| <= bound.
///
/// Only θ'_i within one tick of θ_i/d can satisfy |Δ_i| < d, so the grid
/// is walked along those values; sign admissibility is checked per point.
pub fn brute_force_time(thetas: &[u32], bound: u32, signs: &[Sign]) -> Option<GridOptimum> {
    assert_eq!(thetas.len(), signs.len());
    let max = thetas.iter().copied().max()?;
    let mut best: Best = None;
    for d in 1..=max + bound {
        let choices: Vec<Vec<u32>> = thetas
            .iter()
            .map(|&t| {
                let mut c = vec![t / d, t.div_ceil(d).min(t)];
                c.dedup();
                c
            })
            .collect();
        each_vector(&choices, &mut |r| consider(&mut best, thetas, r, d, bound, signs));
    }
    best.map(|(_, g)| g)
}

/// The same optimum over the unrestricted grid. Cubic in max(Θ); for
/// checking [`brute_force_time`] on small inputs.
pub fn brute_force_time_full(thetas: &[u32], bound: u32, signs: &[Sign]) -> Option<GridOptimum> {
    assert_eq!(thetas.len(), signs.len());
    let max = thetas.iter().copied().max()?;
    let mut best: Best = None;
    let choices: Vec<Vec<u32>> = thetas.iter().map(|&t| (0..=t).collect()).collect();
    for d in 1..=max + bound {
        each_vector(&choices, &mut |r| consider(&mut best, thetas, r, d, bound, signs));
    }
    best.map(|(_, g)| g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example() {
        let g = brute_force_time(&[3, 180, 60], 5, &[Sign::Nonneg; 3]).unwrap();
        assert_eq!(g.divisor, 60);
        assert_eq!(g.reduced, vec![0, 3, 1]);
        assert_eq!(g.errors, vec![3, 0, 0]);
    }

    #[test]
    fn window_matches_full_grid() {
        for a in 1..=9 {
            for b in a..=9 {
                for bound in 0..=4 {
                    for sign in [Sign::Nonneg, Sign::Nonpos] {
                        let t = [a, b];
                        let s = [sign; 2];
                        assert_eq!(
                            brute_force_time(&t, bound, &s),
                            brute_force_time_full(&t, bound, &s),
                            "{t:?} B={bound} {sign:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn singleton_tie_break() {
        let g = brute_force_time(&[5], 5, &[Sign::Nonneg]).unwrap();
        assert_eq!((g.divisor, g.reduced_sum, g.error_sum), (6, 0, 5));
        let g = brute_force_time(&[5], 0, &[Sign::Nonpos]).unwrap();
        assert_eq!((g.divisor, g.reduced_sum), (5, 1));
    }
}
