//! Realizability by bounded synthesis.
//!
//! The specification's negation is turned into a Büchi automaton, read as a
//! universal co-Büchi automaton for the specification, and the bounded
//! counting game is solved for k = 0, 1, ... For each k where the system
//! loses, the dual game (environment against the negated specification,
//! inputs chosen first without seeing outputs) is tried as well.

mod alphabet;
mod game;
mod graph;
mod machine;
mod nba;

use thiserror::Error;

use crate::ltl::{to_nnf, Formula};

pub use alphabet::{Alphabet, Signature};
pub use game::{build_game, Counters, Game, Player};
pub use graph::accepting_lasso;
pub use machine::{MealyEdge, MealyMachine, MooreMachine, MooreState};
pub use nba::{ltl_to_nba, Nba, NbaState};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SynthesisError {
    #[error("state budget exceeded while building the {what} (limit {limit})")]
    StateBudgetExceeded { what: &'static str, limit: usize },
    #[error("invalid signature: {0}")]
    BadSignature(String),
    #[error("invalid option: {0}")]
    InvalidOption(String),
    #[error("internal error: extracted {0} failed verification")]
    CertificationFailed(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthesisOptions {
    pub k_max: u32,
    /// Cap on automaton states.
    pub automaton_budget: usize,
    /// Cap on game positions.
    pub game_budget: usize,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        SynthesisOptions {
            k_max: 6,
            automaton_budget: 50_000,
            game_budget: 200_000,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Realizable { machine: MealyMachine, k: u32 },
    Unrealizable { counter: MooreMachine, k: u32 },
    Unknown { k_max: u32 },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Realizable { .. } => "realizable",
            Verdict::Unrealizable { .. } => "unrealizable",
            Verdict::Unknown { .. } => "unknown",
        }
    }

    pub fn is_realizable(&self) -> bool {
        matches!(self, Verdict::Realizable { .. })
    }

    pub fn is_unrealizable(&self) -> bool {
        matches!(self, Verdict::Unrealizable { .. })
    }

    /// Bound at which the verdict was reached (`k_max` for unknown).
    pub fn k(&self) -> u32 {
        match self {
            Verdict::Realizable { k, .. } | Verdict::Unrealizable { k, .. } => *k,
            Verdict::Unknown { k_max } => *k_max,
        }
    }

    /// CLI exit code.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Realizable { .. } => 0,
            Verdict::Unrealizable { .. } => 1,
            Verdict::Unknown { .. } => 2,
        }
    }
}

/// Decides realizability of the conjunction of `spec` under `sig`.
/// Every verdict with a strategy is checked against the specification
/// before it is returned.
pub fn check_realizability(
    spec: &[Formula],
    sig: &Signature,
    opts: &SynthesisOptions,
) -> Result<Verdict, SynthesisError> {
    if opts.k_max == 0 {
        return Err(SynthesisError::InvalidOption("k_max must be positive".into()));
    }
    if opts.k_max > 100 {
        return Err(SynthesisError::InvalidOption("k_max must be at most 100".into()));
    }
    let alphabet = Alphabet::for_spec(spec, sig)?;
    let phi = Formula::conj(spec.iter().cloned());
    let negated = ltl_to_nba(&to_nnf(&phi, true), &alphabet, opts.automaton_budget)?;
    // The dual automaton is only needed once the system loses; when it
    // is too large the dual check is skipped.
    let mut positive: Option<Option<Nba>> = None;

    for k in 0..=opts.k_max {
        let game = build_game(&negated, k as u8, &alphabet, opts.game_budget)?;
        let win = game.solve(&alphabet, Player::System);
        if let Some(machine) = game.mealy(&win, &alphabet) {
            if !machine.satisfies(&phi, opts.automaton_budget)? {
                return Err(SynthesisError::CertificationFailed("strategy"));
            }
            return Ok(Verdict::Realizable { machine, k });
        }
        let dual = positive.get_or_insert_with(|| {
            ltl_to_nba(&to_nnf(&phi, false), &alphabet, opts.automaton_budget).ok()
        });
        let Some(dual) = dual.as_ref() else { continue };
        let Ok(game) = build_game(dual, k as u8, &alphabet, opts.game_budget) else {
            continue;
        };
        let win = game.solve(&alphabet, Player::Environment);
        if let Some(counter) = game.moore(&win, &alphabet) {
            if !counter.refutes(&phi, opts.automaton_budget)? {
                return Err(SynthesisError::CertificationFailed("counter-strategy"));
            }
            return Ok(Verdict::Unrealizable { counter, k });
        }
    }
    Ok(Verdict::Unknown { k_max: opts.k_max })
}
