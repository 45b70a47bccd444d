//! Coarsening of timed Next chains: GCD reduction and bounded-error
//! optimization of the tick length.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::corpus::{Sign, SignPolicy};
use crate::ltl::Formula;
use crate::translate::TranslationUnit;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TimeError {
    #[error("duration {0} is not covered by the time profile")]
    UncoveredDuration(u32),
    #[error("duration {theta} gets sign {first:?} from {first_id} and {second:?} from {second_id}")]
    SignConflict {
        theta: u32,
        first: Sign,
        first_id: String,
        second: Sign,
        second_id: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TimeProfile {
    pub thetas: Vec<u32>,
    pub divisor: u32,
    pub reduced: Vec<u32>,
    pub errors: Vec<i64>,
    pub bound: u32,
    pub signs: Vec<Sign>,
}

impl TimeProfile {
    pub fn identity() -> Self {
        TimeProfile {
            thetas: vec![],
            divisor: 1,
            reduced: vec![],
            errors: vec![],
            bound: 0,
            signs: vec![],
        }
    }

    pub fn reduced_sum(&self) -> u64 {
        self.reduced.iter().map(|&x| x as u64).sum()
    }

    pub fn error_sum(&self) -> u64 {
        self.errors.iter().map(|e| e.unsigned_abs()).sum()
    }

    pub fn reduced_for(&self, theta: u32) -> Option<u32> {
        self.thetas
            .iter()
            .position(|&t| t == theta)
            .map(|i| self.reduced[i])
    }

    /// Checks every profile invariant, naming the first one broken.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.thetas.len();
        if self.reduced.len() != n || self.errors.len() != n || self.signs.len() != n {
            return Err("length mismatch".into());
        }
        if self.divisor == 0 {
            return Err("divisor is zero".into());
        }
        if self.thetas.iter().collect::<BTreeSet<_>>().len() != n {
            return Err("durations not distinct".into());
        }
        let d = self.divisor as i64;
        for i in 0..n {
            let (t, r, e) = (self.thetas[i] as i64, self.reduced[i] as i64, self.errors[i]);
            if t != r * d + e {
                return Err(format!("{t} != {r}*{d} + {e}"));
            }
            if e <= -d || e >= d {
                return Err(format!("error {e} outside (-{d}, {d})"));
            }
            let ok = match self.signs[i] {
                Sign::Nonneg => e >= 0,
                Sign::Nonpos => e <= 0,
            };
            if !ok {
                return Err(format!("error {e} violates sign {:?}", self.signs[i]));
            }
        }
        if self.error_sum() > self.bound as u64 {
            return Err(format!("total error {} exceeds {}", self.error_sum(), self.bound));
        }
        Ok(())
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Distinct timed-next lengths across all units, ascending.
pub fn collect_durations(units: &[TranslationUnit]) -> Vec<u32> {
    units
        .iter()
        .flat_map(|u| u.formula.timed_next_lengths())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Sign of each duration under a per-requirement policy.
pub fn duration_signs(
    units: &[TranslationUnit],
    policy: &SignPolicy,
) -> Result<BTreeMap<u32, Sign>, TimeError> {
    let mut out: BTreeMap<u32, (Sign, String)> = BTreeMap::new();
    for u in units {
        let sign = policy.sign_for(&u.id);
        for theta in u.formula.timed_next_lengths() {
            match out.get(&theta) {
                Some((s, id)) if *s != sign => {
                    return Err(TimeError::SignConflict {
                        theta,
                        first: *s,
                        first_id: id.clone(),
                        second: sign,
                        second_id: u.id.clone(),
                    })
                }
                Some(_) => {}
                None => {
                    out.insert(theta, (sign, u.id.clone()));
                }
            }
        }
    }
    Ok(out.into_iter().map(|(t, (s, _))| (t, s)).collect())
}

/// Divides all durations by their GCD, with zero error.
pub fn gcd_reduce(thetas: &[u32]) -> TimeProfile {
    let d = thetas.iter().copied().fold(0, gcd).max(1);
    TimeProfile {
        thetas: thetas.to_vec(),
        divisor: d,
        reduced: thetas.iter().map(|t| t / d).collect(),
        errors: vec![0; thetas.len()],
        bound: 0,
        signs: vec![Sign::Nonneg; thetas.len()],
    }
}

/// The only admissible (θ', Δ) for `theta` under tick `d` and `sign`.
fn split(theta: u32, d: u32, sign: Sign) -> (u32, i64) {
    match sign {
        Sign::Nonneg => (theta / d, (theta % d) as i64),
        Sign::Nonpos => {
            let r = theta.div_ceil(d);
            (r, theta as i64 - r as i64 * d as i64)
        }
    }
}

/// Exact lexicographic optimum (Σθ', Σ|Δ|, d) over d in 1..=max(Θ)+B.
///
/// Given d and a sign, each θ has exactly one admissible split, so the
/// search is linear in the range of d.
pub fn optimize(thetas: &[u32], bound: u32, signs: &[Sign]) -> TimeProfile {
    assert_eq!(thetas.len(), signs.len());
    if thetas.is_empty() {
        return TimeProfile {
            bound,
            ..TimeProfile::identity()
        };
    }
    let max = *thetas.iter().max().unwrap();
    // (objective key, reduced lengths, errors)
    type Candidate = ((u64, u64, u32), Vec<u32>, Vec<i64>);
    let mut best: Option<Candidate> = None;
    for d in 1..=max + bound {
        let (reduced, errors): (Vec<u32>, Vec<i64>) = thetas
            .iter()
            .zip(signs)
            .map(|(&t, &s)| split(t, d, s))
            .unzip();
        let err: u64 = errors.iter().map(|e| e.unsigned_abs()).sum();
        if err > bound as u64 {
            continue;
        }
        let key = (reduced.iter().map(|&r| r as u64).sum(), err, d);
        if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
            best = Some((key, reduced, errors));
        }
    }
    let ((_, _, d), reduced, errors) = best.expect("d = 1 is always feasible");
    TimeProfile {
        thetas: thetas.to_vec(),
        divisor: d,
        reduced,
        errors,
        bound,
        signs: signs.to_vec(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AbstractionResult {
    pub profile: TimeProfile,
    /// Seconds per Next step before abstraction.
    pub unit_time: u32,
    pub units: Vec<TranslationUnit>,
}

impl AbstractionResult {
    /// Seconds represented by one abstract tick.
    pub fn tick_seconds(&self) -> u64 {
        self.profile.divisor as u64 * self.unit_time as u64
    }
}

pub fn apply_to_formula(f: &Formula, profile: &TimeProfile) -> Result<Formula, TimeError> {
    for n in f.timed_next_lengths() {
        if profile.reduced_for(n).is_none() {
            return Err(TimeError::UncoveredDuration(n));
        }
    }
    Ok(f.map_bottom_up(&mut |node| match node {
        Formula::TimedNext(n, inner) => Formula::timed_next(profile.reduced_for(n).unwrap(), *inner),
        other => other,
    }))
}

/// Rewrites every timed next with the profile's reduced length.
pub fn apply_profile(
    units: &[TranslationUnit],
    profile: &TimeProfile,
    unit_time: u32,
) -> Result<AbstractionResult, TimeError> {
    let units = units
        .iter()
        .map(|u| Ok(TranslationUnit::new(u.id.clone(), apply_to_formula(&u.formula, profile)?)))
        .collect::<Result<Vec<_>, TimeError>>()?;
    Ok(AbstractionResult {
        profile: profile.clone(),
        unit_time,
        units,
    })
}

/// Collects durations, chooses a profile and applies it.
pub fn abstract_units(
    units: &[TranslationUnit],
    bound: u32,
    policy: &SignPolicy,
    gcd_only: bool,
    unit_time: u32,
) -> Result<AbstractionResult, TimeError> {
    let thetas = collect_durations(units);
    let profile = if gcd_only {
        gcd_reduce(&thetas)
    } else {
        let signs = duration_signs(units, policy)?;
        let signs: Vec<Sign> = thetas.iter().map(|t| signs[t]).collect();
        optimize(&thetas, bound, &signs)
    };
    apply_profile(units, &profile, unit_time)
}

pub fn render_profile(result: &AbstractionResult) -> String {
    let p = &result.profile;
    let mut s = String::new();
    let _ = writeln!(s, "divisor d = {}", p.divisor);
    let _ = writeln!(s, "theta -> theta' (error)");
    for i in 0..p.thetas.len() {
        let _ = writeln!(s, "  {} -> {} ({:+})", p.thetas[i], p.reduced[i], p.errors[i]);
    }
    let _ = writeln!(s, "total error {} (bound {})", p.error_sum(), p.bound);
    let _ = writeln!(s, "1 abstract tick = {} seconds", result.tick_seconds());
    s
}
