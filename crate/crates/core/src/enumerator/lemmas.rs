//! Structural facts about connected members of `C(k, l)`, checked on the
//! core graph `K•` (the graph with its boundary stubs removed).

use std::collections::{BTreeMap, BTreeSet};

use crate::bigraph::{BilabelledGraph, Core};

fn core_adjacency(core: &Core) -> BTreeMap<usize, BTreeSet<usize>> {
    let mut adj: BTreeMap<usize, BTreeSet<usize>> = core.vertices.iter().map(|&v| (v, BTreeSet::new())).collect();
    for &(u, v) in core.edges.keys() {
        if u != v {
            adj.entry(u).or_default().insert(v);
            adj.entry(v).or_default().insert(u);
        }
    }
    adj
}

fn connected_without(adj: &BTreeMap<usize, BTreeSet<usize>>, removed: usize) -> bool {
    let Some(&start) = adj.keys().find(|&&v| v != removed) else { return true };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &w in &adj[&u] {
            if w != removed && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() + 1 == adj.len()
}

/// Core vertices whose deletion leaves the core connected.
pub fn removable_core_vertices(g: &BilabelledGraph) -> Vec<usize> {
    let adj = core_adjacency(&g.core());
    adj.keys().copied().filter(|&v| connected_without(&adj, v)).collect()
}

/// A core vertex of core degree at most two whose deletion leaves the core
/// connected. Every connected graph in `C` with at least two core vertices
/// has one.
pub fn low_degree_removable_vertex(g: &BilabelledGraph) -> Option<usize> {
    let core = g.core();
    let adj = core_adjacency(&core);
    let degree = |v: usize| -> usize { core.edges.iter().filter(|(&(a, b), _)| a == v || b == v).map(|(_, &m)| m).sum() };
    adj.keys().copied().find(|&v| degree(v) <= 2 && connected_without(&adj, v))
}

/// Whether the marked positions of a cyclic sequence of length `n` form one
/// cyclic interval (vacuously true for none or all).
pub fn is_cyclic_interval(marked: &[bool]) -> bool {
    let n = marked.len();
    let starts = (0..n).filter(|&i| marked[i] && !marked[(i + n - 1) % n]).count();
    starts <= 1
}

/// Removable core vertices whose occurrences around the boundary do not
/// form a cyclic interval. Empty for every connected graph in `C`.
pub fn nonconsecutive_vertices(g: &BilabelledGraph) -> Vec<usize> {
    let core = g.core();
    let around: Vec<usize> = core.inputs.iter().rev().chain(&core.outputs).copied().collect();
    removable_core_vertices(g)
        .into_iter()
        .filter(|&v| {
            let marked: Vec<bool> = around.iter().map(|&u| u == v).collect();
            !is_cyclic_interval(&marked)
        })
        .collect()
}
