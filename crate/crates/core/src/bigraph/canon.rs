//! Canonical labelling for isomorphism that fixes both tuples pointwise.
//!
//! Boundary vertices are pinned to their first position in `inputs ++
//! outputs`; the remaining vertices are ordered by colour refinement with
//! exhaustive individualisation, keeping the smallest encoding over all
//! leaves of the search tree.

use std::collections::BTreeMap;

use super::BilabelledGraph;

/// Byte encoding that two graphs share exactly when they are isomorphic by
/// a map sending every input and output position to the same position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

fn encode(g: &BilabelledGraph, label: &[usize]) -> Vec<u32> {
    let mut out = vec![g.vertex_count() as u32, g.k() as u32, g.l() as u32];
    out.extend(g.inputs().iter().map(|&v| label[v] as u32));
    out.extend(g.outputs().iter().map(|&v| label[v] as u32));
    let mut edges: Vec<(u32, u32, u32)> = g
        .edge_map()
        .iter()
        .map(|(&(u, v), &m)| {
            let (a, b) = (label[u] as u32, label[v] as u32);
            (a.min(b), a.max(b), m as u32)
        })
        .collect();
    edges.sort_unstable();
    for (a, b, m) in edges {
        out.extend([a, b, m]);
    }
    out
}

fn rank_colours<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).expect("present")).collect()
}

fn colour_count(c: &[usize]) -> usize {
    c.iter().max().map_or(0, |m| m + 1)
}

struct Search<'a> {
    graph: &'a BilabelledGraph,
    adj: Vec<Vec<(usize, usize)>>,
    best: Option<(Vec<u32>, Vec<usize>)>,
}

impl Search<'_> {
    fn refine(&self, mut colours: Vec<usize>) -> Vec<usize> {
        loop {
            let keys: Vec<(usize, Vec<(usize, usize)>)> = (0..colours.len())
                .map(|v| {
                    let mut nb: Vec<(usize, usize)> =
                        self.adj[v].iter().map(|&(w, m)| (colours[w], m)).collect();
                    nb.sort_unstable();
                    (colours[v], nb)
                })
                .collect();
            let next = rank_colours(&keys);
            if colour_count(&next) == colour_count(&colours) {
                return next;
            }
            colours = next;
        }
    }

    fn run(&mut self, colours: Vec<usize>) {
        let colours = self.refine(colours);
        let n = colours.len();
        if colour_count(&colours) == n {
            let code = encode(self.graph, &colours);
            if self.best.as_ref().map_or(true, |(b, _)| code < *b) {
                self.best = Some((code, colours));
            }
            return;
        }
        let mut sizes = vec![0; n];
        for &c in &colours {
            sizes[c] += 1;
        }
        let cell = (0..n).find(|&c| sizes[c] > 1).expect("a non-singleton cell");
        for v in (0..n).filter(|&v| colours[v] == cell) {
            let keys: Vec<(usize, bool)> =
                (0..n).map(|u| (colours[u], colours[u] == cell && u != v)).collect();
            self.run(rank_colours(&keys));
        }
    }
}

/// `label[v]` is the canonical position of vertex `v`.
pub fn canonical_labeling(g: &BilabelledGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut first: BTreeMap<usize, usize> = BTreeMap::new();
    for &v in g.inputs().iter().chain(g.outputs()) {
        let next = first.len();
        first.entry(v).or_insert(next);
    }
    let inner = first.len();
    let initial: Vec<usize> = (0..n).map(|v| first.get(&v).copied().unwrap_or(inner)).collect();
    let mut search = Search { graph: g, adj: g.adjacency(), best: None };
    if n == 0 {
        return Vec::new();
    }
    search.run(initial);
    search.best.expect("at least one leaf").1
}

pub fn canonical_form(g: &BilabelledGraph) -> CanonicalForm {
    let code = encode(g, &canonical_labeling(g));
    CanonicalForm(code.iter().flat_map(|x| x.to_be_bytes()).collect())
}

pub fn are_isomorphic(g: &BilabelledGraph, h: &BilabelledGraph) -> bool {
    canonical_form(g) == canonical_form(h)
}

impl BilabelledGraph {
    /// The representative of this graph's isomorphism class.
    pub fn canonical(&self) -> BilabelledGraph {
        self.relabel(&canonical_labeling(self))
    }
}
