//! Bounded counting game over a universal co-Büchi automaton.
//!
//! The automaton is given as a Büchi automaton for the complement
//! language: a run is bad once it visits accepting states more than `k`
//! times. Positions map each active state to the most visits seen on any
//! run reaching it; exceeding `k` loses for the controller.

use std::collections::{BTreeMap, HashMap, VecDeque};

use biodivine_lib_bdd::Bdd;

use super::alphabet::Alphabet;
use super::machine::{MealyEdge, MealyMachine, MooreMachine, MooreState};
use super::nba::Nba;
use super::SynthesisError;

/// Sparse counting function: (automaton state, visits), sorted by state.
pub type Counters = Vec<(u32, u8)>;

/// Who moves first in each round and who controls the winning condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Player {
    /// Controls the outputs after seeing the inputs (Mealy).
    System,
    /// Controls the inputs without seeing the outputs (Moore).
    Environment,
}

pub struct Game {
    pub positions: Vec<Counters>,
    /// Successors: letter set (over all variables) and target position.
    /// Letters that are missing overflow the bound.
    pub edges: Vec<Vec<(Bdd, usize)>>,
    /// `None` when the initial state alone already exceeds the bound.
    pub initial: Option<usize>,
}

fn successors(nba: &Nba, f: &Counters, k: u8, alphabet: &Alphabet) -> Vec<(Bdd, Counters)> {
    let mut contrib: BTreeMap<usize, Vec<(u8, &Bdd)>> = BTreeMap::new();
    for &(q, c) in f {
        for (g, t) in &nba.states[q as usize].edges {
            let v = c + nba.states[*t].accepting as u8;
            contrib.entry(*t).or_default().push((v, g));
        }
    }
    // At least `v` visits at target `t`.
    let ge = |items: &[(u8, &Bdd)], v: u8| {
        items
            .iter()
            .filter(|(x, _)| *x >= v)
            .fold(alphabet.mk_false(), |acc, (_, g)| acc.or(g))
    };
    let mut overflow = alphabet.mk_false();
    for items in contrib.values() {
        overflow = overflow.or(&ge(items, k + 1));
    }
    let mut regions: Vec<(Bdd, Counters)> = vec![(overflow.not(), Vec::new())];
    for (t, items) in &contrib {
        let mut values: Vec<u8> = items.iter().map(|x| x.0).filter(|v| *v <= k).collect();
        values.sort_unstable_by(|a, b| b.cmp(a));
        values.dedup();
        let levels: Vec<(u8, Bdd)> = values.iter().map(|v| (*v, ge(items, *v))).collect();
        let mut next = Vec::new();
        for (r, c) in regions {
            let mut rest = r;
            for (v, g) in &levels {
                let part = rest.and(g);
                if !part.is_false() {
                    let mut c2 = c.clone();
                    c2.push((*t as u32, *v));
                    next.push((part, c2));
                    rest = rest.and_not(g);
                }
            }
            if !rest.is_false() {
                next.push((rest, c));
            }
        }
        regions = next;
    }
    regions
}

/// Explores all positions reachable from the initial counting function.
pub fn build_game(
    nba: &Nba,
    k: u8,
    alphabet: &Alphabet,
    budget: usize,
) -> Result<Game, SynthesisError> {
    let init_visits = nba.states[nba.initial].accepting as u8;
    if init_visits > k {
        return Ok(Game {
            positions: vec![],
            edges: vec![],
            initial: None,
        });
    }
    let mut positions: Vec<Counters> = vec![vec![(nba.initial as u32, init_visits)]];
    let mut index: HashMap<Counters, usize> = HashMap::new();
    index.insert(positions[0].clone(), 0);
    let mut edges: Vec<Vec<(Bdd, usize)>> = vec![Vec::new()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(p) = queue.pop_front() {
        let succ = successors(nba, &positions[p], k, alphabet);
        let mut out = Vec::with_capacity(succ.len());
        for (region, c) in succ {
            let target = match index.get(&c) {
                Some(i) => *i,
                None => {
                    if positions.len() >= budget {
                        return Err(SynthesisError::StateBudgetExceeded {
                            what: "game",
                            limit: budget,
                        });
                    }
                    let i = positions.len();
                    index.insert(c.clone(), i);
                    positions.push(c);
                    edges.push(Vec::new());
                    queue.push_back(i);
                    i
                }
            };
            out.push((region, target));
        }
        edges[p] = out;
    }
    Ok(Game {
        positions,
        edges,
        initial: Some(0),
    })
}

/// Splits a relation between inputs and outputs into (input set, output
/// values) pairs. Each round fixes output variables one by one, keeping
/// the value allowed for more inputs (false on ties), so that a few
/// valuations cover large input sets.
fn choose_outputs(mut piece: Bdd, alphabet: &Alphabet) -> Vec<(Bdd, Vec<bool>)> {
    let outs = alphabet.outputs();
    let mut result = Vec::new();
    while !piece.is_false() {
        let mut cur = piece.clone();
        let mut values = Vec::with_capacity(outs.len());
        for o in outs {
            let low = cur.and(&alphabet.literal(*o, false));
            let high = cur.and(&alphabet.literal(*o, true));
            let nl = low.exists(outs).cardinality();
            let nh = high.exists(outs).cardinality();
            if nl >= nh {
                cur = low;
                values.push(false);
            } else {
                cur = high;
                values.push(true);
            }
        }
        let cube = alphabet.cube(outs, &values);
        let inputs = piece.and(&cube).exists(outs);
        piece = piece.and_not(&inputs);
        result.push((inputs, values));
    }
    result
}

impl Game {
    fn good(&self, p: usize, win: &[bool], alphabet: &Alphabet) -> Bdd {
        self.edges[p]
            .iter()
            .filter(|(_, t)| win[*t])
            .fold(alphabet.mk_false(), |acc, (r, _)| acc.or(r))
    }

    fn holds(&self, p: usize, win: &[bool], alphabet: &Alphabet, player: Player) -> bool {
        let good = self.good(p, win, alphabet);
        match player {
            Player::System => good.exists(alphabet.outputs()).is_true(),
            Player::Environment => !good.for_all(alphabet.outputs()).is_false(),
        }
    }

    /// Greatest fixpoint of the controller's winning positions.
    pub fn solve(&self, alphabet: &Alphabet, player: Player) -> Vec<bool> {
        let n = self.positions.len();
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (p, es) in self.edges.iter().enumerate() {
            for (_, t) in es {
                preds[*t].push(p);
            }
        }
        let mut win = vec![true; n];
        let mut queued = vec![true; n];
        let mut queue: VecDeque<usize> = (0..n).collect();
        while let Some(p) = queue.pop_front() {
            queued[p] = false;
            if !win[p] || self.holds(p, &win, alphabet, player) {
                continue;
            }
            win[p] = false;
            for &q in &preds[p] {
                if win[q] && !queued[q] {
                    queued[q] = true;
                    queue.push_back(q);
                }
            }
        }
        win
    }

    pub fn initial_wins(&self, win: &[bool]) -> bool {
        self.initial.is_some_and(|i| win[i])
    }

    /// Winning successors, safest first: lowest maximal counter, then
    /// lowest counter sum, then discovery order.
    fn ranked(&self, p: usize, win: &[bool]) -> Vec<(Bdd, usize)> {
        let key = |t: usize| {
            let c = &self.positions[t];
            let max = c.iter().map(|x| x.1).max().unwrap_or(0);
            let sum: u32 = c.iter().map(|x| x.1 as u32).sum();
            (max, sum, t)
        };
        let mut v: Vec<(Bdd, usize)> = self.edges[p]
            .iter()
            .filter(|(_, t)| win[*t])
            .cloned()
            .collect();
        v.sort_by_key(|(_, t)| key(*t));
        v
    }

    /// Mealy machine for the system, if it wins from the initial position.
    pub fn mealy(&self, win: &[bool], alphabet: &Alphabet) -> Option<MealyMachine> {
        let init = self.initial.filter(|i| win[*i])?;
        let mut ids: HashMap<usize, usize> = HashMap::from([(init, 0)]);
        let mut order = vec![init];
        let mut states: Vec<Vec<MealyEdge>> = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let p = order[i];
            i += 1;
            let mut covered = alphabet.mk_false();
            let mut out = Vec::new();
            for (region, t) in self.ranked(p, win) {
                let piece = region.and_not(&covered);
                if piece.is_false() {
                    continue;
                }
                covered = covered.or(&piece.exists(alphabet.outputs()));
                let next = *ids.entry(t).or_insert_with(|| {
                    order.push(t);
                    order.len() - 1
                });
                for (inputs, outputs) in choose_outputs(piece, alphabet) {
                    out.push(MealyEdge {
                        inputs,
                        outputs,
                        target: next,
                    });
                }
            }
            debug_assert!(covered.is_true());
            states.push(out);
        }
        Some(MealyMachine {
            alphabet: alphabet.clone(),
            initial: 0,
            states,
        })
    }

    /// Moore machine for the environment, if it wins from the initial
    /// position. Each state fixes the lexicographically smallest winning
    /// input.
    pub fn moore(&self, win: &[bool], alphabet: &Alphabet) -> Option<MooreMachine> {
        let init = self.initial.filter(|i| win[*i])?;
        let mut ids: HashMap<usize, usize> = HashMap::from([(init, 0)]);
        let mut order = vec![init];
        let mut states = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let p = order[i];
            i += 1;
            let good = self.good(p, win, alphabet);
            let choice = good.for_all(alphabet.outputs());
            let inputs = alphabet
                .smallest(&choice, alphabet.inputs())
                .expect("winning position has a winning input");
            let icube = alphabet.cube(alphabet.inputs(), &inputs);
            let mut covered = alphabet.mk_false();
            let mut edges = Vec::new();
            for (region, t) in self.ranked(p, win) {
                let part = region.and(&icube).exists(alphabet.inputs()).and_not(&covered);
                if part.is_false() {
                    continue;
                }
                covered = covered.or(&part);
                let next = *ids.entry(t).or_insert_with(|| {
                    order.push(t);
                    order.len() - 1
                });
                edges.push((part, next));
            }
            debug_assert!(covered.is_true());
            states.push(MooreState { inputs, edges });
        }
        Some(MooreMachine {
            alphabet: alphabet.clone(),
            initial: 0,
            states,
        })
    }
}
