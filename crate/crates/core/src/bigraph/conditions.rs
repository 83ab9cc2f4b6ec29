use std::collections::{BTreeSet, VecDeque};

use super::{planarity, BilabelledGraph};
use crate::error::{Error, Result};

/// Outcome of the six structural conditions, each with a witness on failure.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConditionReport {
    /// (i) the apex graph is planar; otherwise a block of it (in apex-graph
    /// vertex ids) that cannot be embedded.
    pub nonplanar_block: Option<Vec<usize>>,
    /// (ii) a vertex of odd extended degree.
    pub odd_vertex: Option<usize>,
    /// (iii) an edge whose ends cannot get different sides with the whole
    /// boundary on one side.
    pub bipartition_conflict: Option<(usize, usize)>,
    /// (iv) an inner vertex of degree two.
    pub contractible_vertex: Option<usize>,
    /// (v) a pair of vertices joined more than once.
    pub multi_edge: Option<(usize, usize)>,
    /// (vi) a vertex in a component that avoids the boundary.
    pub floating_vertex: Option<usize>,
}

impl ConditionReport {
    pub fn planar(&self) -> bool {
        self.nonplanar_block.is_none()
    }

    pub fn even_degrees(&self) -> bool {
        self.odd_vertex.is_none()
    }

    pub fn bipartite(&self) -> bool {
        self.bipartition_conflict.is_none()
    }

    pub fn no_contractible_vertex(&self) -> bool {
        self.contractible_vertex.is_none()
    }

    pub fn simple(&self) -> bool {
        self.multi_edge.is_none()
    }

    pub fn boundary_reaches_every_component(&self) -> bool {
        self.floating_vertex.is_none()
    }

    /// Conditions (i) to (iii).
    pub fn structural(&self) -> bool {
        self.planar() && self.even_degrees() && self.bipartite()
    }

    pub fn all(&self) -> bool {
        self.structural()
            && self.no_contractible_vertex()
            && self.simple()
            && self.boundary_reaches_every_component()
    }

    pub fn flags(&self) -> [bool; 6] {
        [
            self.planar(),
            self.even_degrees(),
            self.bipartite(),
            self.no_contractible_vertex(),
            self.simple(),
            self.boundary_reaches_every_component(),
        ]
    }
}

pub fn check_conditions(g: &BilabelledGraph) -> ConditionReport {
    let apex = g.apex();
    let degrees = g.degrees();
    let occ = g.occurrences();
    let n = g.vertex_count();
    let comps = g.components();
    let touched: BTreeSet<usize> = g.inputs().iter().chain(g.outputs()).map(|&v| comps[v]).collect();
    ConditionReport {
        nonplanar_block: planarity::nonplanar_block(apex.vertices, &apex.edges),
        odd_vertex: (0..n).find(|&v| (degrees[v] + occ[v]) % 2 == 1),
        bipartition_conflict: bipartition_conflict(g),
        contractible_vertex: (0..n).find(|&v| occ[v] == 0 && degrees[v] == 2),
        multi_edge: g.edge_map().iter().find(|(&(u, v), &m)| u != v && m > 1).map(|(&e, _)| e),
        floating_vertex: (0..n).find(|&v| !touched.contains(&comps[v])),
    }
}

fn bipartition_conflict(g: &BilabelledGraph) -> Option<(usize, usize)> {
    if g.parities().is_some() {
        return None;
    }
    // Re-run the colouring to name the offending edge.
    let adj = g.adjacency();
    let n = g.vertex_count();
    let mut side: Vec<Option<bool>> = vec![None; n];
    let mut queue = VecDeque::new();
    for &v in g.inputs().iter().chain(g.outputs()) {
        side[v] = Some(false);
        queue.push_back(v);
    }
    for root in 0..n {
        if side[root].is_none() && queue.is_empty() {
            side[root] = Some(false);
            queue.push_back(root);
        }
        while let Some(u) = queue.pop_front() {
            for &(w, _) in &adj[u] {
                match side[w] {
                    None => {
                        side[w] = Some(!side[u].expect("set"));
                        queue.push_back(w);
                    }
                    Some(s) if Some(s) == side[u] => return Some((u.min(w), u.max(w))),
                    _ => {}
                }
            }
        }
    }
    None
}

/// Whether the stub-free apex graph stays connected after deleting any two
/// vertices. Needs a connected graph whose core has at least two vertices.
pub fn three_connectivity_check(g: &BilabelledGraph) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::Precondition("graph is not connected".into()));
    }
    let core = g.core();
    if core.vertices.len() < 2 {
        return Err(Error::Precondition("core has fewer than two vertices".into()));
    }
    let kept: BTreeSet<usize> = core.vertices.iter().copied().collect();
    let drop: BTreeSet<usize> = (0..g.vertex_count()).filter(|v| !kept.contains(v)).collect();
    // Build the core as a bilabelled graph and reuse the apex construction.
    let map: Vec<usize> = {
        let mut m = vec![usize::MAX; g.vertex_count()];
        for (i, &v) in core.vertices.iter().enumerate() {
            m[v] = i;
        }
        m
    };
    let core_graph = BilabelledGraph::new(
        core.vertices.len(),
        core.edges.iter().flat_map(|(&(u, v), &m)| std::iter::repeat((map[u], map[v])).take(m)),
        core.inputs.iter().map(|&v| map[v]).collect(),
        core.outputs.iter().map(|&v| map[v]).collect(),
    )?;
    debug_assert_eq!(core_graph.vertex_count() + drop.len(), g.vertex_count());
    let apex = core_graph.apex();
    let n = apex.vertices;
    let mut adj = vec![BTreeSet::new(); n];
    for &(u, v) in &apex.edges {
        if u != v {
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    let connected_without = |x: usize, y: usize| {
        let Some(start) = (0..n).find(|&v| v != x && v != y) else { return true };
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if w != x && w != y && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n - usize::from(x != y) - 1
    };
    for x in 0..n {
        for y in x..n {
            if !connected_without(x, y) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
