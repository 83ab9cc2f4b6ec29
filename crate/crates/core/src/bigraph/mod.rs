//! Bilabelled multigraphs: a multigraph with an input tuple and an output
//! tuple of (not necessarily distinct) vertices.

mod canon;
mod conditions;
mod dot;
pub mod planarity;
mod quotient;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{Partition, UnionFind};

pub use canon::{are_isomorphic, canonical_form, canonical_labeling, CanonicalForm};
pub use conditions::{check_conditions, three_connectivity_check, ConditionReport};
pub use quotient::{normalize, normalize_random, two_path_contract};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BilabelledGraph {
    vertices: usize,
    edges: BTreeMap<(usize, usize), usize>,
    inputs: Vec<usize>,
    outputs: Vec<usize>,
}

/// An undirected multigraph without boundary data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

/// The graph with the pendant boundary stubs removed, in original vertex ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Core {
    pub vertices: Vec<usize>,
    pub edges: BTreeMap<(usize, usize), usize>,
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
}

impl BilabelledGraph {
    pub fn new(
        vertices: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        inputs: Vec<usize>,
        outputs: Vec<usize>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (u, v) in edges {
            if u >= vertices || v >= vertices {
                return Err(Error::InvalidGraph(format!("edge ({u},{v}) with {vertices} vertices")));
            }
            *map.entry((u.min(v), u.max(v))).or_insert(0) += 1;
        }
        if let Some(&v) = inputs.iter().chain(&outputs).find(|&&v| v >= vertices) {
            return Err(Error::InvalidGraph(format!("boundary vertex {v} with {vertices} vertices")));
        }
        Ok(BilabelledGraph { vertices, edges: map, inputs, outputs })
    }

    pub(crate) fn from_parts(
        vertices: usize,
        edges: BTreeMap<(usize, usize), usize>,
        inputs: Vec<usize>,
        outputs: Vec<usize>,
    ) -> Self {
        BilabelledGraph { vertices, edges, inputs, outputs }
    }

    /// The graph with no vertices and empty tuples.
    pub fn null() -> Self {
        BilabelledGraph { vertices: 0, edges: BTreeMap::new(), inputs: vec![], outputs: vec![] }
    }

    /// One vertex carrying every boundary position.
    pub fn m(k: usize, l: usize) -> Self {
        BilabelledGraph { vertices: 1, edges: BTreeMap::new(), inputs: vec![0; k], outputs: vec![0; l] }
    }

    /// A star: center 0, leaves `1..=k` as inputs and `k+1..=k+l` as outputs.
    pub fn x(k: usize, l: usize) -> Self {
        let edges = (1..=k + l).map(|v| ((0, v), 1)).collect();
        BilabelledGraph {
            vertices: k + l + 1,
            edges,
            inputs: (1..=k).collect(),
            outputs: (k + 1..=k + l).collect(),
        }
    }

    /// A single edge from the input vertex to the output vertex.
    pub fn edge() -> Self {
        BilabelledGraph::new(2, [(0, 1)], vec![0], vec![1]).expect("valid")
    }

    /// Two parallel edges from the input vertex to the output vertex.
    pub fn double_edge() -> Self {
        BilabelledGraph::new(2, [(0, 1), (0, 1)], vec![0], vec![1]).expect("valid")
    }

    /// One vertex per block, no edges.
    pub fn from_partition(p: &Partition) -> Self {
        let labels = p.labels();
        BilabelledGraph {
            vertices: p.block_count(),
            edges: BTreeMap::new(),
            inputs: labels[..p.upper()].to_vec(),
            outputs: labels[p.upper()..].to_vec(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_map(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.values().sum()
    }

    /// Every edge, repeated by multiplicity.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges.iter().flat_map(|(&e, &m)| std::iter::repeat(e).take(m)).collect()
    }

    pub fn inputs(&self) -> &[usize] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    pub fn k(&self) -> usize {
        self.inputs.len()
    }

    pub fn l(&self) -> usize {
        self.outputs.len()
    }

    pub fn boundary_size(&self) -> usize {
        self.inputs.len() + self.outputs.len()
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.edges.get(&(u.min(v), u.max(v))).copied().unwrap_or(0)
    }

    pub fn has_loop(&self) -> bool {
        self.edges.keys().any(|(u, v)| u == v)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices];
        for (&(u, v), &m) in &self.edges {
            d[u] += m;
            d[v] += m;
        }
        d
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees()[v]
    }

    pub fn occurrences(&self) -> Vec<usize> {
        let mut o = vec![0; self.vertices];
        for &v in self.inputs.iter().chain(&self.outputs) {
            o[v] += 1;
        }
        o
    }

    /// Degree in the enveloped graph: graph degree plus boundary occurrences.
    pub fn extended_degrees(&self) -> Vec<usize> {
        self.degrees().iter().zip(self.occurrences()).map(|(d, o)| d + o).collect()
    }

    pub fn extended_degree(&self, v: usize) -> Result<usize> {
        if v >= self.vertices {
            return Err(Error::InvalidGraph(format!("no vertex {v}")));
        }
        Ok(self.extended_degrees()[v])
    }

    /// Neighbours with multiplicities; a loop lists the vertex itself.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for (&(u, v), &m) in &self.edges {
            adj[u].push((v, m));
            if u != v {
                adj[v].push((u, m));
            }
        }
        adj
    }

    /// Component label for every vertex, numbered by smallest member.
    pub fn components(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.vertices);
        for &(u, v) in self.edges.keys() {
            uf.union(u, v);
        }
        let mut label = BTreeMap::new();
        (0..self.vertices)
            .map(|v| {
                let r = uf.find(v);
                let next = label.len();
                *label.entry(r).or_insert(next)
            })
            .collect()
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Two-colouring with every boundary vertex even, if one exists.
    /// Components without boundary start from an even vertex.
    pub fn parities(&self) -> Option<Vec<Parity>> {
        let adj = self.adjacency();
        let mut col: Vec<Option<Parity>> = vec![None; self.vertices];
        let mut queue = VecDeque::new();
        for &v in self.inputs.iter().chain(&self.outputs) {
            if col[v].is_none() {
                col[v] = Some(Parity::Even);
                queue.push_back(v);
            }
        }
        let mut next_root = 0;
        loop {
            while let Some(u) = queue.pop_front() {
                let cu = col[u].expect("coloured");
                for &(w, _) in &adj[u] {
                    match col[w] {
                        None => {
                            col[w] = Some(cu.flip());
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return None,
                        _ => {}
                    }
                }
            }
            while next_root < self.vertices && col[next_root].is_some() {
                next_root += 1;
            }
            if next_root == self.vertices {
                break;
            }
            col[next_root] = Some(Parity::Even);
            queue.push_back(next_root);
        }
        Some(col.into_iter().map(|c| c.expect("coloured")).collect())
    }

    /// Disjoint union with concatenated tuples.
    pub fn tensor(&self, other: &BilabelledGraph) -> BilabelledGraph {
        let s = self.vertices;
        let mut edges = self.edges.clone();
        for (&(u, v), &m) in &other.edges {
            edges.insert((u + s, v + s), m);
        }
        let mut inputs = self.inputs.clone();
        inputs.extend(other.inputs.iter().map(|v| v + s));
        let mut outputs = self.outputs.clone();
        outputs.extend(other.outputs.iter().map(|v| v + s));
        BilabelledGraph { vertices: s + other.vertices, edges, inputs, outputs }
    }

    /// `h` after `k`: the outputs of `k` are identified with the inputs of `h`.
    pub fn compose(h: &BilabelledGraph, k: &BilabelledGraph) -> Result<BilabelledGraph> {
        if k.outputs.len() != h.inputs.len() {
            return Err(Error::ArityMismatch { left: h.inputs.len(), right: k.outputs.len() });
        }
        let s = k.vertices;
        let total = s + h.vertices;
        let mut uf = UnionFind::new(total);
        for (&b, &c) in k.outputs.iter().zip(&h.inputs) {
            uf.union(b, c + s);
        }
        let mut id = BTreeMap::new();
        let map: Vec<usize> = (0..total)
            .map(|v| {
                let r = uf.find(v);
                let next = id.len();
                *id.entry(r).or_insert(next)
            })
            .collect();
        let mut edges = BTreeMap::new();
        for (&(u, v), &m) in &k.edges {
            let (a, b) = (map[u], map[v]);
            *edges.entry((a.min(b), a.max(b))).or_insert(0) += m;
        }
        for (&(u, v), &m) in &h.edges {
            let (a, b) = (map[u + s], map[v + s]);
            *edges.entry((a.min(b), a.max(b))).or_insert(0) += m;
        }
        Ok(BilabelledGraph {
            vertices: id.len(),
            edges,
            inputs: k.inputs.iter().map(|&v| map[v]).collect(),
            outputs: h.outputs.iter().map(|&v| map[v + s]).collect(),
        })
    }

    /// Swaps the input and output tuples.
    pub fn involution(&self) -> BilabelledGraph {
        BilabelledGraph {
            vertices: self.vertices,
            edges: self.edges.clone(),
            inputs: self.outputs.clone(),
            outputs: self.inputs.clone(),
        }
    }

    /// Moves the last output to the end of the inputs.
    pub fn rotate_right(&self) -> Result<BilabelledGraph> {
        let Some((&last, rest)) = self.outputs.split_last() else {
            return Err(Error::EmptyRotation("output"));
        };
        let mut inputs = self.inputs.clone();
        inputs.push(last);
        Ok(BilabelledGraph { outputs: rest.to_vec(), inputs, ..self.clone() })
    }

    /// Moves the first input to the front of the outputs.
    pub fn rotate_left(&self) -> Result<BilabelledGraph> {
        let Some((&first, rest)) = self.inputs.split_first() else {
            return Err(Error::EmptyRotation("input"));
        };
        let mut outputs = vec![first];
        outputs.extend_from_slice(&self.outputs);
        Ok(BilabelledGraph { inputs: rest.to_vec(), outputs, ..self.clone() })
    }

    /// Boundary vertices read around the circle: inputs right to left, then
    /// outputs left to right.
    pub fn boundary_cycle(&self) -> Vec<usize> {
        let mut w: Vec<usize> = self.inputs.iter().rev().copied().collect();
        w.extend_from_slice(&self.outputs);
        w
    }

    /// The graph with boundary cycle `cycle`, cut after `k` positions.
    pub fn with_boundary_cycle(&self, cycle: &[usize], k: usize) -> BilabelledGraph {
        BilabelledGraph {
            vertices: self.vertices,
            edges: self.edges.clone(),
            inputs: cycle[..k].iter().rev().copied().collect(),
            outputs: cycle[k..].to_vec(),
        }
    }

    /// Every graph reachable by rotations: each cyclic shift of the boundary
    /// cycle, cut at each position.
    pub fn rotations(&self) -> Vec<BilabelledGraph> {
        let w = self.boundary_cycle();
        let n = w.len();
        let mut out = Vec::with_capacity(n * (n + 1));
        for shift in 0..n.max(1) {
            let rotated: Vec<usize> = (0..n).map(|i| w[(i + shift) % n]).collect();
            for k in 0..=n {
                out.push(self.with_boundary_cycle(&rotated, k));
            }
        }
        out
    }

    /// Relabels vertices by `map[old] = new` (a permutation).
    pub fn relabel(&self, map: &[usize]) -> BilabelledGraph {
        let edges = self
            .edges
            .iter()
            .map(|(&(u, v), &m)| {
                let (a, b) = (map[u], map[v]);
                ((a.min(b), a.max(b)), m)
            })
            .collect();
        BilabelledGraph {
            vertices: self.vertices,
            edges,
            inputs: self.inputs.iter().map(|&v| map[v]).collect(),
            outputs: self.outputs.iter().map(|&v| map[v]).collect(),
        }
    }

    /// Drops the given vertices (and their edges), renumbering the rest in order.
    pub(crate) fn without_vertices(&self, drop: &BTreeSet<usize>) -> BilabelledGraph {
        let mut map = vec![usize::MAX; self.vertices];
        let mut next = 0;
        for (v, slot) in map.iter_mut().enumerate() {
            if !drop.contains(&v) {
                *slot = next;
                next += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|((u, v), _)| !drop.contains(u) && !drop.contains(v))
            .map(|(&(u, v), &m)| ((map[u], map[v]), m))
            .collect();
        BilabelledGraph {
            vertices: next,
            edges,
            inputs: self.inputs.iter().map(|&v| map[v]).collect(),
            outputs: self.outputs.iter().map(|&v| map[v]).collect(),
        }
    }

    /// Envelope: a boundary cycle `alpha_k .. alpha_1 beta_1 .. beta_l` of new
    /// vertices, with `a_i` joined to `alpha_i` and `b_j` joined to `beta_j`.
    /// New vertices follow the original ones, in cycle order.
    pub fn envelope(&self) -> Multigraph {
        let n = self.vertices;
        let mut edges = self.edge_list();
        let cyc = self.boundary_cycle();
        let len = cyc.len();
        for (i, &v) in cyc.iter().enumerate() {
            edges.push((v, n + i));
        }
        if len >= 2 {
            for i in 0..len {
                edges.push((n + i, n + (i + 1) % len));
            }
        }
        Multigraph { vertices: n + len, edges }
    }

    /// Envelope plus an apex vertex joined to the whole boundary cycle.
    pub fn apex(&self) -> Multigraph {
        let mut g = self.envelope();
        let n = self.vertices;
        let len = self.boundary_size();
        let apex = g.vertices;
        g.edges.extend((0..len).map(|i| (n + i, apex)));
        g.vertices += 1;
        g
    }

    /// Vertices of degree one that occur exactly once on the boundary.
    pub fn stubs(&self) -> Vec<bool> {
        let d = self.degrees();
        let o = self.occurrences();
        (0..self.vertices).map(|v| d[v] == 1 && o[v] == 1 && !self.edges.contains_key(&(v, v))).collect()
    }

    /// The graph without stubs; a stub on the boundary is replaced by its
    /// unique neighbour.
    pub fn core(&self) -> Core {
        let stubs = self.stubs();
        let adj = self.adjacency();
        let lift = |v: usize| if stubs[v] { adj[v][0].0 } else { v };
        Core {
            vertices: (0..self.vertices).filter(|&v| !stubs[v]).collect(),
            edges: self
                .edges
                .iter()
                .filter(|((u, v), _)| !stubs[*u] && !stubs[*v])
                .map(|(&e, &m)| (e, m))
                .collect(),
            inputs: self.inputs.iter().map(|&v| lift(v)).collect(),
            outputs: self.outputs.iter().map(|&v| lift(v)).collect(),
        }
    }

    pub fn is_planar(&self) -> bool {
        let g = self.apex();
        planarity::is_planar(g.vertices, &g.edges)
    }

    pub fn to_dot(&self, name: &str) -> String {
        dot::render(self, name)
    }
}

impl std::fmt::Debug for BilabelledGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Graph(n={}, edges={:?}, in={:?}, out={:?})",
            self.vertices,
            self.edge_list(),
            self.inputs,
            self.outputs
        )
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    inputs: Vec<usize>,
    outputs: Vec<usize>,
}

impl Serialize for BilabelledGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson {
            vertices: self.vertices,
            edges: self.edge_list(),
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BilabelledGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GraphJson::deserialize(d)?;
        BilabelledGraph::new(j.vertices, j.edges, j.inputs, j.outputs).map_err(serde::de::Error::custom)
    }
}
