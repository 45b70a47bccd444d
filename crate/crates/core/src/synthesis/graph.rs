//! Explicit-graph helpers: reachable accepting cycles and live states.

use std::collections::{HashMap, VecDeque};

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

fn nontrivial(g: &DiGraph<usize, ()>, scc: &[NodeIndex]) -> bool {
    scc.len() > 1 || g.contains_edge(scc[0], scc[0])
}

/// Whether some accepting node reachable from `start` lies on a cycle.
pub fn accepting_lasso(
    start: usize,
    succ: impl Fn(usize) -> Vec<usize>,
    accepting: impl Fn(usize) -> bool,
) -> bool {
    let mut g: DiGraph<usize, ()> = DiGraph::new();
    let mut idx: HashMap<usize, NodeIndex> = HashMap::new();
    let mut queue = VecDeque::new();
    idx.insert(start, g.add_node(start));
    queue.push_back(start);
    while let Some(n) = queue.pop_front() {
        let from = idx[&n];
        for m in succ(n) {
            let to = *idx.entry(m).or_insert_with(|| {
                queue.push_back(m);
                g.add_node(m)
            });
            g.update_edge(from, to, ());
        }
    }
    tarjan_scc(&g)
        .iter()
        .any(|scc| nontrivial(&g, scc) && scc.iter().any(|n| accepting(g[*n])))
}

/// Nodes `0..n` lying on some cycle.
pub fn on_cycle(n: usize, succ: impl Fn(usize) -> Vec<usize>) -> Vec<bool> {
    let mut g: DiGraph<usize, ()> = DiGraph::with_capacity(n, n);
    for i in 0..n {
        g.add_node(i);
    }
    for i in 0..n {
        for j in succ(i) {
            g.update_edge(NodeIndex::new(i), NodeIndex::new(j), ());
        }
    }
    let mut out = vec![false; n];
    for scc in tarjan_scc(&g) {
        if nontrivial(&g, &scc) {
            for x in scc {
                out[x.index()] = true;
            }
        }
    }
    out
}

/// Nodes `0..n` from which an accepting cycle is reachable.
pub fn live_states(
    n: usize,
    succ: impl Fn(usize) -> Vec<usize>,
    accepting: impl Fn(usize) -> bool,
) -> Vec<bool> {
    let mut g: DiGraph<usize, ()> = DiGraph::with_capacity(n, n);
    for i in 0..n {
        g.add_node(i);
    }
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in succ(i) {
            g.update_edge(NodeIndex::new(i), NodeIndex::new(j), ());
            preds[j].push(i);
        }
    }
    let mut live = vec![false; n];
    let mut queue = VecDeque::new();
    for scc in tarjan_scc(&g) {
        if nontrivial(&g, &scc) && scc.iter().any(|x| accepting(x.index())) {
            for x in scc {
                if !live[x.index()] {
                    live[x.index()] = true;
                    queue.push_back(x.index());
                }
            }
        }
    }
    while let Some(x) = queue.pop_front() {
        for &p in &preds[x] {
            if !live[p] {
                live[p] = true;
                queue.push_back(p);
            }
        }
    }
    live
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lasso_detection() {
        // 0 -> 1 -> 2 -> 1, accepting 2
        let succ = |n: usize| match n {
            0 => vec![1],
            1 => vec![2],
            2 => vec![1],
            _ => vec![],
        };
        assert!(accepting_lasso(0, succ, |n| n == 2));
        assert!(!accepting_lasso(0, succ, |n| n == 0));
        let live = live_states(4, succ, |n| n == 2);
        assert_eq!(live, vec![true, true, true, false]);
        assert_eq!(on_cycle(4, succ), vec![false, true, true, false]);
    }

    #[test]
    fn self_loop_counts() {
        assert!(accepting_lasso(0, |_| vec![0], |_| true));
        assert!(!accepting_lasso(0, |_| vec![], |_| true));
    }
}
