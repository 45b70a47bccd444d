//! Tableau translation of LTL to Büchi automata.
//!
//! States are sets of pending obligations. Each obligation is expanded into
//! terms (letter set, next obligations, postponed untils); a state's
//! transitions are the product of its obligations' terms. Acceptance is
//! generalized on transitions (one set per until, "not postponed") and then
//! degeneralized into accepting states with a level counter.

use std::collections::{HashMap, VecDeque};
use std::rc::Rc;

use biodivine_lib_bdd::{Bdd, BddValuation};

use super::alphabet::Alphabet;
use super::graph::{accepting_lasso, live_states, on_cycle};
use super::SynthesisError;
use crate::ltl::Nnf;

type Id = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Node {
    True,
    False,
    Lit(String, bool),
    And(Id, Id),
    Or(Id, Id),
    Next(Id),
    Until(Id, Id),
    Release(Id, Id),
}

#[derive(Default)]
struct Arena {
    nodes: Vec<Node>,
    ids: HashMap<Node, Id>,
}

impl Arena {
    fn intern(&mut self, n: Node) -> Id {
        if let Some(id) = self.ids.get(&n) {
            return *id;
        }
        let id = self.nodes.len() as Id;
        self.nodes.push(n.clone());
        self.ids.insert(n, id);
        id
    }

    fn build(&mut self, f: &Nnf) -> Id {
        let n = match f {
            Nnf::True => Node::True,
            Nnf::False => Node::False,
            Nnf::Lit(a, b) => Node::Lit(a.clone(), *b),
            Nnf::And(a, b) => Node::And(self.build(a), self.build(b)),
            Nnf::Or(a, b) => Node::Or(self.build(a), self.build(b)),
            Nnf::Next(a) => Node::Next(self.build(a)),
            Nnf::Until(a, b) => Node::Until(self.build(a), self.build(b)),
            Nnf::Release(a, b) => Node::Release(self.build(a), self.build(b)),
        };
        self.intern(n)
    }

    /// Top-level conjuncts of `id`, without `true`.
    fn conjuncts(&self, id: Id, out: &mut Vec<Id>) {
        match &self.nodes[id as usize] {
            Node::True => {}
            Node::And(a, b) => {
                self.conjuncts(*a, out);
                self.conjuncts(*b, out);
            }
            _ => out.push(id),
        }
    }

    fn render(&self, id: Id) -> String {
        match &self.nodes[id as usize] {
            Node::True => "true".into(),
            Node::False => "false".into(),
            Node::Lit(a, true) => a.clone(),
            Node::Lit(a, false) => format!("!{a}"),
            Node::And(a, b) => format!("({} && {})", self.render(*a), self.render(*b)),
            Node::Or(a, b) => format!("({} || {})", self.render(*a), self.render(*b)),
            Node::Next(a) => format!("X {}", self.render(*a)),
            Node::Until(a, b) => format!("({} U {})", self.render(*a), self.render(*b)),
            Node::Release(a, b) => format!("({} R {})", self.render(*a), self.render(*b)),
        }
    }
}

#[derive(Clone)]
struct Term {
    guard: Bdd,
    next: Vec<Id>,
    postponed: Vec<Id>,
}

fn union(a: &[Id], b: &[Id]) -> Vec<Id> {
    let mut v: Vec<Id> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn merge(terms: Vec<Term>) -> Vec<Term> {
    let mut by_key: HashMap<(Vec<Id>, Vec<Id>), Bdd> = HashMap::new();
    for t in terms {
        if t.guard.is_false() {
            continue;
        }
        by_key
            .entry((t.next, t.postponed))
            .and_modify(|g| *g = g.or(&t.guard))
            .or_insert(t.guard);
    }
    let mut out: Vec<Term> = by_key
        .into_iter()
        .map(|((next, postponed), guard)| Term {
            guard,
            next,
            postponed,
        })
        .collect();
    out.sort_by(|a, b| (&a.next, &a.postponed).cmp(&(&b.next, &b.postponed)));
    out
}

fn product(a: &[Term], b: &[Term]) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            let guard = x.guard.and(&y.guard);
            if guard.is_false() {
                continue;
            }
            out.push(Term {
                guard,
                next: union(&x.next, &y.next),
                postponed: union(&x.postponed, &y.postponed),
            });
        }
    }
    merge(out)
}

struct Expander<'a> {
    arena: Arena,
    alphabet: &'a Alphabet,
    memo: HashMap<Id, Rc<Vec<Term>>>,
}

impl Expander<'_> {
    fn unit(&self, next: Vec<Id>, postponed: Vec<Id>) -> Term {
        Term {
            guard: self.alphabet.mk_true(),
            next,
            postponed,
        }
    }

    fn expand(&mut self, id: Id) -> Rc<Vec<Term>> {
        if let Some(t) = self.memo.get(&id) {
            return t.clone();
        }
        let node = self.arena.nodes[id as usize].clone();
        let terms = match node {
            Node::True => vec![self.unit(vec![], vec![])],
            Node::False => vec![],
            Node::Lit(a, b) => {
                // The alphabet is built from the formula's atoms.
                let v = self.alphabet.var(&a).expect("atom missing from alphabet");
                vec![Term {
                    guard: self.alphabet.literal(v, b),
                    next: vec![],
                    postponed: vec![],
                }]
            }
            Node::And(a, b) => {
                let (x, y) = (self.expand(a), self.expand(b));
                product(&x, &y)
            }
            Node::Or(a, b) => {
                let mut v: Vec<Term> = self.expand(a).as_ref().clone();
                v.extend(self.expand(b).iter().cloned());
                merge(v)
            }
            Node::Next(a) => {
                let mut next = Vec::new();
                self.arena.conjuncts(a, &mut next);
                if next.iter().any(|c| self.arena.nodes[*c as usize] == Node::False) {
                    vec![]
                } else {
                    next.sort_unstable();
                    next.dedup();
                    vec![self.unit(next, vec![])]
                }
            }
            Node::Until(a, b) => {
                let mut v: Vec<Term> = self.expand(b).as_ref().clone();
                let keep = [self.unit(vec![id], vec![id])];
                v.extend(product(&self.expand(a), &keep));
                merge(v)
            }
            Node::Release(a, b) => {
                let (x, y) = (self.expand(a), self.expand(b));
                let mut v = product(&x, &y);
                let keep = [self.unit(vec![id], vec![])];
                v.extend(product(&y, &keep));
                merge(v)
            }
        };
        let rc = Rc::new(terms);
        self.memo.insert(id, rc.clone());
        rc
    }
}

/// State of a Büchi automaton.
#[derive(Clone, Debug)]
pub struct NbaState {
    /// Pending obligations and acceptance level, for display.
    pub label: String,
    pub accepting: bool,
    /// Outgoing transitions: letter set and target. Targets are distinct.
    pub edges: Vec<(Bdd, usize)>,
}

/// Nondeterministic Büchi automaton over the letters of an alphabet.
#[derive(Clone, Debug)]
pub struct Nba {
    pub alphabet: Alphabet,
    pub initial: usize,
    pub states: Vec<NbaState>,
}

impl Nba {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// True when the automaton accepts no word.
    pub fn is_language_empty(&self) -> bool {
        !accepting_lasso(
            self.initial,
            |q| self.states[q].edges.iter().map(|e| e.1).collect(),
            |q| self.states[q].accepting,
        )
    }

    /// Membership of the word `prefix · loop^ω`.
    pub fn accepts(&self, prefix: &[BddValuation], cycle: &[BddValuation]) -> bool {
        assert!(!cycle.is_empty(), "lasso loop must be non-empty");
        let len = prefix.len() + cycle.len();
        let letter = |pos: usize| {
            if pos < prefix.len() {
                &prefix[pos]
            } else {
                &cycle[pos - prefix.len()]
            }
        };
        let next_pos = |pos: usize| if pos + 1 == len { prefix.len() } else { pos + 1 };
        // Node encodes (state, position).
        let start = self.initial * len;
        accepting_lasso(
            start,
            |node| {
                let (q, pos) = (node / len, node % len);
                let l = letter(pos);
                self.states[q]
                    .edges
                    .iter()
                    .filter(|(g, _)| g.eval_in(l))
                    .map(|(_, t)| t * len + next_pos(pos))
                    .collect()
            },
            |node| self.states[node / len].accepting,
        )
    }
}

/// Builds a Büchi automaton for `formula`. Atoms must belong to `alphabet`.
pub fn ltl_to_nba(formula: &Nnf, alphabet: &Alphabet, budget: usize) -> Result<Nba, SynthesisError> {
    for a in formula.atoms() {
        if alphabet.var(&a).is_none() {
            return Err(SynthesisError::BadSignature(format!(
                "'{a}' is neither input nor output"
            )));
        }
    }
    let mut ex = Expander {
        arena: Arena::default(),
        alphabet,
        memo: HashMap::new(),
    };
    let root = ex.arena.build(formula);
    let untils: Vec<Id> = (0..ex.arena.nodes.len() as Id)
        .filter(|i| matches!(ex.arena.nodes[*i as usize], Node::Until(..)))
        .collect();
    let n = untils.len();

    let mut init = Vec::new();
    ex.arena.conjuncts(root, &mut init);
    init.sort_unstable();
    init.dedup();

    let mut index: HashMap<(Vec<Id>, usize), usize> = HashMap::new();
    let mut keys: Vec<(Vec<Id>, usize)> = Vec::new();
    let mut edges: Vec<Vec<(Bdd, usize)>> = Vec::new();
    let mut term_cache: HashMap<Vec<Id>, Rc<Vec<Term>>> = HashMap::new();
    let mut queue = VecDeque::new();

    let mut add = |key: (Vec<Id>, usize),
                   keys: &mut Vec<(Vec<Id>, usize)>,
                   edges: &mut Vec<Vec<(Bdd, usize)>>,
                   queue: &mut VecDeque<usize>|
     -> Result<usize, SynthesisError> {
        if let Some(i) = index.get(&key) {
            return Ok(*i);
        }
        if keys.len() >= budget {
            return Err(SynthesisError::StateBudgetExceeded {
                what: "automaton",
                limit: budget,
            });
        }
        let i = keys.len();
        index.insert(key.clone(), i);
        keys.push(key);
        edges.push(Vec::new());
        queue.push_back(i);
        Ok(i)
    };
    add((init, 0), &mut keys, &mut edges, &mut queue)?;

    while let Some(s) = queue.pop_front() {
        let (set, level) = keys[s].clone();
        let terms = match term_cache.get(&set) {
            Some(t) => t.clone(),
            None => {
                let mut acc = vec![ex.unit(vec![], vec![])];
                for id in &set {
                    let t = ex.expand(*id);
                    acc = product(&acc, &t);
                    if acc.is_empty() {
                        break;
                    }
                }
                let rc = Rc::new(acc);
                term_cache.insert(set.clone(), rc.clone());
                rc
            }
        };
        let mut out: Vec<(Bdd, usize)> = Vec::new();
        for t in terms.iter() {
            let mut j = if level == n { 0 } else { level };
            while j < n && t.postponed.binary_search(&untils[j]).is_err() {
                j += 1;
            }
            let target = add((t.next.clone(), j), &mut keys, &mut edges, &mut queue)?;
            match out.iter_mut().find(|e| e.1 == target) {
                Some(e) => e.0 = e.0.or(&t.guard),
                None => out.push((t.guard.clone(), target)),
            }
        }
        edges[s] = out;
    }

    // Visits outside cycles cannot recur; dropping their acceptance keeps
    // the language and keeps the counting bound small.
    let cyclic = on_cycle(edges.len(), |q| edges[q].iter().map(|e| e.1).collect());
    let accepting: Vec<bool> = keys
        .iter()
        .zip(&cyclic)
        .map(|((_, l), c)| *l == n && *c)
        .collect();
    let live = live_states(edges.len(), |q| edges[q].iter().map(|e| e.1).collect(), |q| {
        accepting[q]
    });
    let mut remap = vec![usize::MAX; keys.len()];
    let mut states = Vec::new();
    for q in 0..keys.len() {
        if live[q] {
            remap[q] = states.len();
            states.push(q);
        }
    }
    if !live[0] {
        return Ok(Nba {
            alphabet: alphabet.clone(),
            initial: 0,
            states: vec![NbaState {
                label: "false".into(),
                accepting: false,
                edges: vec![],
            }],
        });
    }
    let states = states
        .into_iter()
        .map(|q| {
            let (set, level) = &keys[q];
            let obligations: Vec<String> = set.iter().map(|i| ex.arena.render(*i)).collect();
            let label = if obligations.is_empty() {
                format!("{{}} #{level}")
            } else {
                format!("{{{}}} #{level}", obligations.join(", "))
            };
            NbaState {
                label,
                accepting: accepting[q],
                edges: edges[q]
                    .iter()
                    .filter(|e| live[e.1])
                    .map(|(g, t)| (g.clone(), remap[*t]))
                    .collect(),
            }
        })
        .collect();
    Ok(Nba {
        alphabet: alphabet.clone(),
        initial: 0,
        states,
    })
}
