//! Properties of the realizability engine checked by simulation against
//! small hand-enumerated opponents.

use std::collections::{BTreeSet, HashMap};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use speccc::ltl::{to_nnf, Formula};
use speccc::oracles::random::{atom_names, random_formula, random_signature};
use speccc::oracles::{eval_ltl_on_lasso, Lasso};
use speccc::synthesis::{
    build_game, check_realizability, ltl_to_nba, Alphabet, MealyMachine, MooreMachine, Player,
    Signature, SynthesisOptions, Verdict,
};

fn random_case(seed: u64) -> (Formula, Signature) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let atoms = atom_names(2);
    let f = random_formula(&mut rng, &atoms, 2, 3);
    let used: Vec<String> = f.atoms().into_iter().collect();
    let sig = random_signature(&mut rng, &used);
    (f, sig)
}

fn bits(n: usize, code: usize) -> Vec<bool> {
    (0..n).map(|i| code >> i & 1 == 1).collect()
}

fn letter(names: &[&str], values: &[bool], out: &mut BTreeSet<String>) {
    for (n, v) in names.iter().zip(values) {
        if *v {
            out.insert(n.to_string());
        }
    }
}

/// Runs a deterministic closed loop until a joint state repeats.
fn close_loop<S: Copy + Eq + std::hash::Hash>(
    start: S,
    mut step: impl FnMut(S) -> (BTreeSet<String>, S),
) -> Lasso {
    let mut seen: HashMap<S, usize> = HashMap::new();
    let mut word = Vec::new();
    let mut s = start;
    loop {
        if let Some(&i) = seen.get(&s) {
            let cycle = word.split_off(i);
            return Lasso::new(word, cycle);
        }
        seen.insert(s, word.len());
        let (l, next) = step(s);
        word.push(l);
        s = next;
    }
}

/// A plain table machine: `table[state][input code] = (outputs, target)`.
type Table = Vec<Vec<(Vec<bool>, usize)>>;

/// Every deterministic Mealy table with up to `max_states` states.
fn all_mealy_tables(ni: usize, no: usize, max_states: usize) -> Vec<Table> {
    let mut out = Vec::new();
    for n in 1..=max_states {
        let cells = n << ni;
        let choices = n << no;
        let total = choices.pow(cells as u32);
        for code in 0..total {
            let mut c = code;
            let mut table: Table = vec![Vec::new(); n];
            for cell in 0..cells {
                let pick = c % choices;
                c /= choices;
                table[cell >> ni].push((bits(no, pick / n), pick % n));
            }
            out.push(table);
        }
    }
    out
}

/// Every Moore table with up to `max_states` states:
/// `(emitted inputs, target per output code)` per state.
fn all_moore_tables(ni: usize, no: usize, max_states: usize) -> Vec<Vec<(Vec<bool>, Vec<usize>)>> {
    let mut out = Vec::new();
    for n in 1..=max_states {
        let per_state = (1usize << ni) * n.pow(1 << no);
        let total = per_state.pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let mut m = Vec::new();
            for _ in 0..n {
                let mut pick = c % per_state;
                c /= per_state;
                let emit = bits(ni, pick % (1 << ni));
                pick >>= ni;
                let targets: Vec<usize> = (0..1usize << no)
                    .map(|_| {
                        let t = pick % n;
                        pick /= n;
                        t
                    })
                    .collect();
                m.push((emit, targets));
            }
            out.push(m);
        }
    }
    out
}

fn code(v: &[bool]) -> usize {
    v.iter().enumerate().map(|(i, b)| (*b as usize) << i).sum()
}

/// The counter-strategy beats every small system strategy.
fn counter_beats_small_systems(f: &Formula, counter: &MooreMachine) -> Result<(), String> {
    let a = &counter.alphabet;
    let (inames, onames) = (a.input_names(), a.output_names());
    for table in all_mealy_tables(inames.len(), onames.len(), 2) {
        let lasso = close_loop((counter.initial, 0usize), |(m, s)| {
            let ins = &counter.states[m].inputs;
            let (outs, s2) = &table[s][code(ins)];
            let m2 = counter.step(m, outs).expect("counter-strategy is complete");
            let mut l = BTreeSet::new();
            letter(&inames, ins, &mut l);
            letter(&onames, outs, &mut l);
            (l, (m2, *s2))
        });
        if eval_ltl_on_lasso(f, &lasso) {
            return Err(format!("{f} holds on {lasso:?} against {table:?}"));
        }
    }
    Ok(())
}

/// The strategy wins against every small environment.
fn strategy_beats_small_environments(f: &Formula, machine: &MealyMachine) -> Result<(), String> {
    let a = &machine.alphabet;
    let (inames, onames) = (a.input_names(), a.output_names());
    for env in all_moore_tables(inames.len(), onames.len(), 2) {
        let lasso = close_loop((0usize, machine.initial), |(e, s)| {
            let ins = &env[e].0;
            let (outs, s2) = machine.step(s, ins).expect("strategy is complete");
            let e2 = env[e].1[code(outs)];
            let mut l = BTreeSet::new();
            letter(&inames, ins, &mut l);
            letter(&onames, outs, &mut l);
            (l, (e2, s2))
        });
        if !eval_ltl_on_lasso(f, &lasso) {
            return Err(format!("{f} fails on {lasso:?} against {env:?}"));
        }
    }
    Ok(())
}

#[test]
fn table_enumeration_sizes() {
    // One input, one output: 2^2 one-state and 4^4 two-state machines.
    assert_eq!(all_mealy_tables(1, 1, 2).len(), 4 + 256);
    // One state: 2 emissions x 1; two states: (2 * 2^2)^2.
    assert_eq!(all_moore_tables(1, 1, 2).len(), 2 + 64);
}

#[test]
fn clairvoyance_counter_beats_small_systems() {
    let f = speccc::ltl::parse_formula("G (o <-> X i)").unwrap();
    let v = check_realizability(
        std::slice::from_ref(&f),
        &Signature::new(&["i"], &["o"]),
        &SynthesisOptions::default(),
    )
    .unwrap();
    let Verdict::Unrealizable { counter, .. } = v else {
        panic!("{v:?}")
    };
    counter_beats_small_systems(&f, &counter).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]

    #[test]
    fn verdicts_survive_independent_simulation(seed in any::<u64>()) {
        let (f, sig) = random_case(seed);
        let opts = SynthesisOptions::default();
        match check_realizability(std::slice::from_ref(&f), &sig, &opts).unwrap() {
            Verdict::Realizable { machine, .. } => {
                prop_assert!(machine.satisfies(&f, opts.automaton_budget).unwrap());
                strategy_beats_small_environments(&f, &machine).map_err(TestCaseError::fail)?;
            }
            Verdict::Unrealizable { counter, .. } => {
                prop_assert!(counter.refutes(&f, opts.automaton_budget).unwrap());
                counter_beats_small_systems(&f, &counter).map_err(TestCaseError::fail)?;
            }
            Verdict::Unknown { .. } => {}
        }
    }

    #[test]
    fn system_wins_are_monotone_in_k(seed in any::<u64>()) {
        let (f, sig) = random_case(seed);
        let alphabet = Alphabet::for_spec(std::slice::from_ref(&f), &sig).unwrap();
        let nba = ltl_to_nba(&to_nnf(&f, true), &alphabet, 50_000).unwrap();
        let mut won = false;
        for k in 0..=4u8 {
            let game = build_game(&nba, k, &alphabet, 200_000).unwrap();
            let wins = game.initial_wins(&game.solve(&alphabet, Player::System));
            prop_assert!(wins || !won, "{} won at k={} but lost at k={}", f, k - 1, k);
            won = wins;
        }
    }
}
