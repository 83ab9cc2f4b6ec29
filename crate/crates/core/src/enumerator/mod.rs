//! Generation of the graph classes `C(k, l)`: every graph satisfying the six
//! structural conditions, up to isomorphism fixing both tuples.
//!
//! [`algorithm_a`] builds them from one-vertex graphs and stars by gluing and
//! rotating; [`brute_force_c`] enumerates bounded graphs directly and is used
//! as an independent check.

pub mod lemmas;
pub mod words;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::bigraph::{canonical_form, check_conditions, BilabelledGraph, CanonicalForm, Parity};
use crate::error::{Error, Result};
use crate::partition::set_partitions;

/// Upper bound on closure sweeps before giving up.
pub const SWEEP_GUARD: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rule {
    /// Glue onto a single output.
    Single,
    /// Glue onto a pair of outputs.
    Pair,
}

/// One gluing step: a graph of shape `from` became one of shape `to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: Rule,
    pub from: (usize, usize),
    pub to: (usize, usize),
}

/// Graphs grouped by shape `(k, l)`, each kept once per isomorphism class.
#[derive(Clone, Debug, Default)]
pub struct GraphPool {
    k0: usize,
    cells: BTreeMap<(usize, usize), BTreeMap<CanonicalForm, BilabelledGraph>>,
    trace: Vec<TraceStep>,
}

impl GraphPool {
    pub fn new(k0: usize) -> Self {
        GraphPool { k0, ..Default::default() }
    }

    pub fn k0(&self) -> usize {
        self.k0
    }

    /// Inserts the canonical representative; returns whether it was new.
    pub fn insert(&mut self, g: &BilabelledGraph) -> bool {
        let key = canonical_form(g);
        let cell = self.cells.entry((g.k(), g.l())).or_default();
        if cell.contains_key(&key) {
            return false;
        }
        cell.insert(key, g.canonical());
        true
    }

    pub fn contains(&self, g: &BilabelledGraph) -> bool {
        self.cells.get(&(g.k(), g.l())).is_some_and(|c| c.contains_key(&canonical_form(g)))
    }

    pub fn cell(&self, k: usize, l: usize) -> Vec<&BilabelledGraph> {
        self.cells.get(&(k, l)).map(|c| c.values().collect()).unwrap_or_default()
    }

    pub fn count(&self, k: usize, l: usize) -> usize {
        self.cells.get(&(k, l)).map_or(0, BTreeMap::len)
    }

    /// Counts for every shape with `k + l <= k0`, including empty ones.
    pub fn counts(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for total in 0..=self.k0 {
            for k in 0..=total {
                out.insert((k, total - k), self.count(k, total - k));
            }
        }
        out
    }

    pub fn graphs(&self) -> impl Iterator<Item = &BilabelledGraph> {
        self.cells.values().flat_map(|c| c.values())
    }

    pub fn len(&self) -> usize {
        self.cells.values().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn trace(&self) -> &[TraceStep] {
        &self.trace
    }

    /// `k,l,count` lines under a header.
    pub fn counts_csv(&self) -> String {
        let mut s = String::from("k,l,count\n");
        for ((k, l), c) in self.counts() {
            s.push_str(&format!("{k},{l},{c}\n"));
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut cells = serde_json::Map::new();
        for ((k, l), c) in &self.cells {
            let graphs: Vec<&BilabelledGraph> = c.values().collect();
            cells.insert(format!("{k},{l}"), serde_json::to_value(graphs).expect("serialisable"));
        }
        serde_json::json!({ "k0": self.k0, "cells": cells })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<GraphPool> {
        #[derive(Deserialize)]
        struct Raw {
            k0: usize,
            cells: BTreeMap<String, Vec<BilabelledGraph>>,
        }
        let raw: Raw = serde_json::from_value(v.clone())?;
        let mut pool = GraphPool::new(raw.k0);
        for (key, graphs) in raw.cells {
            let (k, l) = key
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
                .ok_or_else(|| Error::Json(format!("bad cell key {key:?}")))?;
            for g in graphs {
                if (g.k(), g.l()) != (k, l) {
                    return Err(Error::Json(format!("graph of shape ({},{}) in cell {key}", g.k(), g.l())));
                }
                pool.insert(&g);
            }
        }
        Ok(pool)
    }

    /// Adds `g` and all of its rotations; returns the newly added graphs.
    fn insert_rotations(&mut self, g: &BilabelledGraph) -> Result<Vec<BilabelledGraph>> {
        let report = check_conditions(g);
        if !report.all() {
            return Err(Error::Precondition(format!("generated graph violates the conditions: {g:?} {report:?}")));
        }
        let mut added = Vec::new();
        for r in g.rotations() {
            if self.insert(&r) {
                added.push(r);
            }
        }
        Ok(added)
    }
}

/// Core image and parity of each output of a graph in the pool.
fn output_cores(g: &BilabelledGraph) -> Option<Vec<(usize, Parity)>> {
    let parity = g.parities()?;
    let core = g.core();
    Some(core.outputs.iter().map(|&v| (v, parity[v])).collect())
}

/// Builds every graph in `C(k, l)` with `k + l <= k0`.
///
/// Seeds the one-vertex graphs and stars with at least four boundary
/// positions, then closes under two gluing rules and rotation:
///
/// * a graph with one output `b` is extended by `M^{1,l}` (`l` odd, at least
///   3) if `b` is a stub and by `X^{1,l}` otherwise;
/// * a graph with two outputs whose core images differ but have the same
///   parity is extended by `M^{2,l}` (both odd) or `X^{2,l}` (both even),
///   `l` even and at least 2.
///
/// Finally the two-point graphs are added and all tensor products of
/// connected members (with their rotations) fill in the disconnected ones.
pub fn algorithm_a(k0: usize) -> Result<GraphPool> {
    let mut pool = GraphPool::new(k0);
    pool.insert(&BilabelledGraph::null());
    let mut connected: Vec<BilabelledGraph> = Vec::new();
    for total in (4..=k0).step_by(2) {
        for k in 0..=total {
            for g in [BilabelledGraph::m(k, total - k), BilabelledGraph::x(k, total - k)] {
                connected.extend(pool.insert_rotations(&g)?);
            }
        }
    }
    let mut frontier = connected.clone();
    let mut sweeps = 0;
    while !frontier.is_empty() {
        sweeps += 1;
        if sweeps > SWEEP_GUARD {
            return Err(Error::GuardExceeded(SWEEP_GUARD));
        }
        let mut next = Vec::new();
        for h in &frontier {
            for (rule, glued) in glue_steps(h, k0)? {
                let added = pool.insert_rotations(&glued)?;
                if !added.is_empty() {
                    pool.trace.push(TraceStep { rule, from: (h.k(), h.l()), to: (glued.k(), glued.l()) });
                }
                next.extend(added);
            }
        }
        connected.extend(next.iter().cloned());
        frontier = next;
    }
    if k0 >= 2 {
        for (k, l) in [(0, 2), (1, 1), (2, 0)] {
            connected.extend(pool.insert_rotations(&BilabelledGraph::m(k, l))?);
        }
    }
    let mut frontier: Vec<BilabelledGraph> = connected.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            for h in &connected {
                if g.boundary_size() + h.boundary_size() > k0 {
                    continue;
                }
                next.extend(pool.insert_rotations(&g.tensor(h))?);
            }
        }
        frontier = next;
    }
    Ok(pool)
}

/// The graphs obtained from `h` by one gluing step.
fn glue_steps(h: &BilabelledGraph, k0: usize) -> Result<Vec<(Rule, BilabelledGraph)>> {
    let mut out = Vec::new();
    let k = h.k();
    let Some(cores) = output_cores(h) else { return Ok(out) };
    match h.l() {
        1 if k % 2 == 1 => {
            let stub = cores[0].0 != h.outputs()[0];
            for l in (3..).step_by(2).take_while(|l| k + l <= k0) {
                let top = if stub { BilabelledGraph::m(1, l) } else { BilabelledGraph::x(1, l) };
                out.push((Rule::Single, BilabelledGraph::compose(&top, h)?));
            }
        }
        2 if k % 2 == 0 => {
            let ((c1, p1), (c2, p2)) = (cores[0], cores[1]);
            if c1 != c2 && p1 == p2 {
                for l in (2..).step_by(2).take_while(|l| k + l <= k0) {
                    let top = match p1 {
                        Parity::Odd => BilabelledGraph::m(2, l),
                        Parity::Even => BilabelledGraph::x(2, l),
                    };
                    out.push((Rule::Pair, BilabelledGraph::compose(&top, h)?));
                }
            }
        }
        _ => {}
    }
    Ok(out)
}

/// Every graph in `C(k, l)` with at most `max_vertices` vertices and
/// `max_edges` edges, as canonical representatives.
///
/// Candidates are all simple graphs with a proper two-colouring that puts
/// the boundary on the even side (every other graph fails the bipartite or
/// simplicity condition). Inner vertices are split into odd and even ones
/// and edges run only between the two sides. A vertex is discarded as soon
/// as its degree is final and already violates a degree condition; every
/// survivor is run through the full condition check.
pub fn brute_force_c(k: usize, l: usize, max_vertices: usize, max_edges: usize) -> Vec<BilabelledGraph> {
    let mut found: BTreeMap<CanonicalForm, BilabelledGraph> = BTreeMap::new();
    for rgs in set_partitions(k + l) {
        let b = rgs.iter().max().map_or(0, |m| m + 1);
        if b > max_vertices {
            continue;
        }
        let mut occ = vec![0usize; b];
        for &v in &rgs {
            occ[v] += 1;
        }
        // Every inner vertex needs at least four edges.
        for odd in (0..=max_vertices - b).take_while(|o| 4 * o <= max_edges) {
            for even_inner in (0..=max_vertices - b - odd).take_while(|e| 4 * e <= max_edges) {
                let search = Search {
                    b,
                    odd,
                    even: b + even_inner,
                    max_edges,
                    occ: &occ,
                    inputs: &rgs[..k],
                    outputs: &rgs[k..],
                };
                search.run(&mut found);
            }
        }
    }
    found.into_values().collect()
}

struct Search<'a> {
    /// Boundary vertices are `0..b`.
    b: usize,
    /// Odd vertices are `even..even + odd`; even ones are `0..even`.
    odd: usize,
    even: usize,
    max_edges: usize,
    occ: &'a [usize],
    inputs: &'a [usize],
    outputs: &'a [usize],
}

impl Search<'_> {
    fn run(&self, found: &mut BTreeMap<CanonicalForm, BilabelledGraph>) {
        let mut edges = Vec::new();
        let mut even_degree = vec![0usize; self.even];
        self.odd_vertex(0, 1, &mut edges, &mut even_degree, found);
    }

    /// Chooses the neighbourhood of odd vertex `i` as a bitmask no smaller
    /// than `min_mask`: odd vertices are interchangeable, so their masks can
    /// be taken in non-decreasing order.
    fn odd_vertex(
        &self,
        i: usize,
        min_mask: u64,
        edges: &mut Vec<(usize, usize)>,
        even_degree: &mut Vec<usize>,
        found: &mut BTreeMap<CanonicalForm, BilabelledGraph>,
    ) {
        if i == self.odd {
            self.finish(edges, even_degree, found);
            return;
        }
        let budget = self.max_edges - edges.len();
        let v = self.even + i;
        for mask in min_mask..(1u64 << self.even) {
            let d = mask.count_ones() as usize;
            // An inner vertex needs even degree, not 2 and not 0.
            if d % 2 == 1 || d < 4 || d > budget {
                continue;
            }
            let before = edges.len();
            for u in 0..self.even {
                if mask >> u & 1 == 1 {
                    edges.push((u, v));
                    even_degree[u] += 1;
                }
            }
            self.odd_vertex(i + 1, mask, edges, even_degree, found);
            for &(u, _) in &edges[before..] {
                even_degree[u] -= 1;
            }
            edges.truncate(before);
        }
    }

    fn finish(
        &self,
        edges: &[(usize, usize)],
        even_degree: &[usize],
        found: &mut BTreeMap<CanonicalForm, BilabelledGraph>,
    ) {
        for v in 0..self.even {
            let d = even_degree[v];
            let ok = if v < self.b {
                (d + self.occ[v]) % 2 == 0
            } else {
                d % 2 == 0 && d >= 4
            };
            if !ok {
                return;
            }
        }
        let g = BilabelledGraph::new(
            self.even + self.odd,
            edges.iter().copied(),
            self.inputs.to_vec(),
            self.outputs.to_vec(),
        )
        .expect("valid by construction");
        if check_conditions(&g).all() {
            found.entry(canonical_form(&g)).or_insert_with(|| g.canonical());
        }
    }
}

/// Pool counts as `(k, l) -> count`.
pub fn counts(pool: &GraphPool) -> BTreeMap<(usize, usize), usize> {
    pool.counts()
}

/// Number of rotation classes, i.e. distinct boundary cycles up to shift,
/// among the pool graphs with `k + l = total`.
pub fn rotation_classes(pool: &GraphPool, total: usize) -> usize {
    let mut classes: BTreeSet<CanonicalForm> = BTreeSet::new();
    for g in pool.cell(0, total) {
        let key = g
            .rotations()
            .into_iter()
            .filter(|r| r.k() == 0)
            .map(|r| canonical_form(&r))
            .min()
            .expect("a graph has at least one rotation");
        classes.insert(key);
    }
    classes.len()
}
