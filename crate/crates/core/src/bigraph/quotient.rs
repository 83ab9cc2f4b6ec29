//! Reduction of graphs modulo three local relations:
//! an isolated inner vertex is worth `N`, a pair of parallel edges is worth
//! `1/N` and an inner vertex of degree two contracts away.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

use super::BilabelledGraph;
use crate::error::{Error, Result};
use crate::exactnum::Scalar;

/// Contracts both edges at the inner degree-two vertex `v`, identifying its
/// two neighbours. Edges between the neighbours turn into loops, which the
/// caller can detect with [`BilabelledGraph::has_loop`].
pub fn two_path_contract(g: &BilabelledGraph, v: usize) -> Result<BilabelledGraph> {
    if v >= g.vertex_count() || g.occurrences()[v] != 0 || g.degree(v) != 2 || g.multiplicity(v, v) > 0 {
        return Err(Error::NotContractible(v));
    }
    let nbrs: Vec<usize> = g
        .adjacency()
        .remove(v)
        .into_iter()
        .flat_map(|(w, m)| std::iter::repeat(w).take(m))
        .collect();
    let (x, y) = (nbrs[0], nbrs[1]);
    let mut edges: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (&(a, b), &m) in g.edge_map() {
        if a == v || b == v {
            continue;
        }
        let (a, b) = (if a == y { x } else { a }, if b == y { x } else { b });
        *edges.entry((a.min(b), a.max(b))).or_insert(0) += m;
    }
    let merge = |u: usize| if u == y { x } else { u };
    let merged = BilabelledGraph::from_parts(
        g.vertex_count(),
        edges,
        g.inputs().iter().map(|&u| merge(u)).collect(),
        g.outputs().iter().map(|&u| merge(u)).collect(),
    );
    let mut drop = BTreeSet::from([v]);
    if x != y {
        drop.insert(y);
    }
    Ok(merged.without_vertices(&drop))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Move {
    EraseVertex(usize),
    ErasePair(usize, usize),
    Contract(usize),
}

fn moves(g: &BilabelledGraph) -> Vec<Move> {
    let degrees = g.degrees();
    let occ = g.occurrences();
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        if occ[v] == 0 && degrees[v] == 0 {
            out.push(Move::EraseVertex(v));
        }
    }
    for (&(u, v), &m) in g.edge_map() {
        if u != v && m >= 2 {
            out.push(Move::ErasePair(u, v));
        }
    }
    for v in 0..g.vertex_count() {
        if occ[v] == 0 && degrees[v] == 2 && g.multiplicity(v, v) == 0 {
            out.push(Move::Contract(v));
        }
    }
    out
}

fn apply(g: &BilabelledGraph, mv: Move, n: &Scalar, factor: &mut Scalar) -> Result<BilabelledGraph> {
    match mv {
        Move::EraseVertex(v) => {
            *factor *= n;
            Ok(g.without_vertices(&BTreeSet::from([v])))
        }
        Move::ErasePair(u, v) => {
            *factor = factor.checked_div(n)?;
            let mut edges = g.edge_map().clone();
            let m = edges.get_mut(&(u, v)).expect("pair present");
            *m -= 2;
            if *m == 0 {
                edges.remove(&(u, v));
            }
            Ok(BilabelledGraph::from_parts(g.vertex_count(), edges, g.inputs().to_vec(), g.outputs().to_vec()))
        }
        Move::Contract(v) => two_path_contract(g, v),
    }
}

fn reduce(g: &BilabelledGraph, n: &Scalar, mut choose: impl FnMut(&[Move]) -> Move) -> Result<(Scalar, BilabelledGraph)> {
    if n.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let mut factor = Scalar::one();
    let mut cur = g.clone();
    loop {
        if let Some(&(v, _)) = cur.edge_map().keys().find(|(a, b)| a == b) {
            return Err(Error::LoopCreated(v));
        }
        let options = moves(&cur);
        if options.is_empty() {
            return Ok((factor, cur));
        }
        let mv = choose(&options);
        cur = apply(&cur, mv, n, &mut factor)?;
    }
}

/// Applies the three relations to a fixpoint, preferring vertex erasure,
/// then pair erasure, then contraction. Returns the accumulated scalar and
/// the reduced graph; a loop anywhere along the way is reported as an error.
pub fn normalize(g: &BilabelledGraph, n: &Scalar) -> Result<(Scalar, BilabelledGraph)> {
    reduce(g, n, |opts| opts[0])
}

/// Like [`normalize`] but picks a uniformly random applicable move each step.
pub fn normalize_random(
    g: &BilabelledGraph,
    n: &Scalar,
    rng: &mut impl Rng,
) -> Result<(Scalar, BilabelledGraph)> {
    reduce(g, n, |opts| opts[rng.gen_range(0..opts.len())])
}
