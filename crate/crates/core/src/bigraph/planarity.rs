//! Planarity testing by path addition on biconnected blocks.
//!
//! Each block is embedded incrementally starting from a cycle. At every step
//! the unembedded part splits into fragments; a fragment whose attachment
//! vertices do not all lie on one face proves non-planarity, otherwise a path
//! through a fragment with the fewest admissible faces is drawn into one of
//! them.

use std::collections::{BTreeSet, VecDeque};

/// Simple adjacency with loops and parallel edges dropped.
fn simple_adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); n];
    for &(u, v) in edges {
        if u != v {
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    adj
}

pub fn is_planar(n: usize, edges: &[(usize, usize)]) -> bool {
    nonplanar_block(n, edges).is_none()
}

/// Vertex set of a biconnected block that admits no plane embedding, if any.
pub fn nonplanar_block(n: usize, edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    let adj = simple_adjacency(n, edges);
    for block in biconnected_blocks(&adj) {
        let vs: BTreeSet<usize> = block.iter().flat_map(|&(u, v)| [u, v]).collect();
        if vs.len() < 5 {
            continue;
        }
        if block.len() > 3 * vs.len() - 6 || !embed_block(&vs, &block) {
            return Some(vs.into_iter().collect());
        }
    }
    None
}

/// Edge sets of the biconnected blocks (Tarjan).
fn biconnected_blocks(adj: &[BTreeSet<usize>]) -> Vec<Vec<(usize, usize)>> {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // Iterative DFS: frames of (vertex, parent, neighbour iterator position).
        let mut frames: Vec<(usize, usize, Vec<usize>, usize)> = Vec::new();
        disc[root] = time;
        low[root] = time;
        time += 1;
        frames.push((root, usize::MAX, adj[root].iter().copied().collect(), 0));
        while let Some(frame) = frames.last_mut() {
            let (u, parent) = (frame.0, frame.1);
            if frame.3 < frame.2.len() {
                let v = frame.2[frame.3];
                frame.3 += 1;
                if disc[v] == usize::MAX {
                    stack.push((u, v));
                    disc[v] = time;
                    low[v] = time;
                    time += 1;
                    frames.push((v, u, adj[v].iter().copied().collect(), 0));
                } else if v != parent && disc[v] < disc[u] {
                    stack.push((u, v));
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                frames.pop();
                if let Some(pf) = frames.last() {
                    let p = pf.0;
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = stack.pop() {
                            block.push(e);
                            if e == (p, u) {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

/// A cycle through the first edge at `start`: drop the edge and join its
/// ends by a shortest path.
fn find_cycle(adj: &[BTreeSet<usize>], start: usize) -> Vec<usize> {
    let Some(&target) = adj[start].iter().next() else { return Vec::new() };
    let mut parent = vec![usize::MAX; adj.len()];
    parent[start] = start;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if (u, v) == (start, target) || parent[v] != usize::MAX {
                continue;
            }
            parent[v] = u;
            if v == target {
                let mut cycle = vec![v];
                let mut x = v;
                while x != start {
                    x = parent[x];
                    cycle.push(x);
                }
                return cycle;
            }
            queue.push_back(v);
        }
    }
    Vec::new()
}

struct Fragment {
    attachments: Vec<usize>,
    /// Either a single chord `(u, v)` or a component of unembedded vertices.
    chord: Option<(usize, usize)>,
    inner: Vec<usize>,
}

fn embed_block(vs: &BTreeSet<usize>, block: &[(usize, usize)]) -> bool {
    let order: Vec<usize> = vs.iter().copied().collect();
    let local = |v: usize| order.binary_search(&v).expect("block vertex");
    let m = order.len();
    let mut adj = vec![BTreeSet::new(); m];
    for &(u, v) in block {
        let (a, b) = (local(u), local(v));
        adj[a].insert(b);
        adj[b].insert(a);
    }
    let cycle = find_cycle(&adj, 0);
    if cycle.len() < 3 {
        return true;
    }
    let mut in_h = vec![false; m];
    let mut h_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        in_h[a] = true;
        h_edges.insert((a.min(b), a.max(b)));
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle];
    loop {
        let fragments = fragments(&adj, &in_h, &h_edges);
        if fragments.is_empty() {
            return true;
        }
        let admissible: Vec<Vec<usize>> = fragments
            .iter()
            .map(|f| {
                (0..faces.len())
                    .filter(|&i| f.attachments.iter().all(|a| faces[i].contains(a)))
                    .collect()
            })
            .collect();
        if admissible.iter().any(Vec::is_empty) {
            return false;
        }
        let pick = admissible.iter().position(|a| a.len() == 1).unwrap_or(0);
        let face_idx = admissible[pick][0];
        let path = fragment_path(&adj, &in_h, &fragments[pick]);
        for w in path.windows(2) {
            h_edges.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        for &v in &path {
            in_h[v] = true;
        }
        let face = faces[face_idx].clone();
        let (x, y) = (path[0], path[path.len() - 1]);
        let ix = face.iter().position(|&v| v == x).expect("attachment on face");
        let iy = face.iter().position(|&v| v == y).expect("attachment on face");
        let walk = |from: usize, to: usize| {
            let mut w = vec![face[from]];
            let mut i = from;
            while i != to {
                i = (i + 1) % face.len();
                w.push(face[i]);
            }
            w
        };
        let interior = &path[1..path.len() - 1];
        let mut f1 = walk(ix, iy);
        f1.extend(interior.iter().rev());
        let mut f2 = walk(iy, ix);
        f2.extend(interior.iter());
        faces[face_idx] = f1;
        faces.push(f2);
    }
}

fn fragments(adj: &[BTreeSet<usize>], in_h: &[bool], h_edges: &BTreeSet<(usize, usize)>) -> Vec<Fragment> {
    let m = adj.len();
    let mut out = Vec::new();
    for u in 0..m {
        for &v in &adj[u] {
            if u < v && in_h[u] && in_h[v] && !h_edges.contains(&(u, v)) {
                out.push(Fragment { attachments: vec![u, v], chord: Some((u, v)), inner: vec![] });
            }
        }
    }
    let mut seen = vec![false; m];
    for s in 0..m {
        if in_h[s] || seen[s] {
            continue;
        }
        let mut inner = vec![];
        let mut att = BTreeSet::new();
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(u) = queue.pop_front() {
            inner.push(u);
            for &v in &adj[u] {
                if in_h[v] {
                    att.insert(v);
                } else if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        out.push(Fragment { attachments: att.into_iter().collect(), chord: None, inner });
    }
    out
}

/// A path through the fragment joining two distinct attachment vertices.
fn fragment_path(adj: &[BTreeSet<usize>], in_h: &[bool], f: &Fragment) -> Vec<usize> {
    if let Some((u, v)) = f.chord {
        return vec![u, v];
    }
    let x = f.attachments[0];
    let inner: BTreeSet<usize> = f.inner.iter().copied().collect();
    let start = *adj[x].iter().find(|v| inner.contains(v)).expect("fragment touches attachment");
    let mut parent = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::from([start]);
    parent[start] = start;
    while let Some(u) = queue.pop_front() {
        if let Some(&y) = adj[u].iter().find(|&&y| in_h[y] && y != x) {
            let mut path = vec![y, u];
            let mut w = u;
            while w != start {
                w = parent[w];
                path.push(w);
            }
            path.push(x);
            path.reverse();
            return path;
        }
        for &v in &adj[u] {
            if inner.contains(&v) && parent[v] == usize::MAX {
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    unreachable!("a fragment of a biconnected block has two attachments")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn complete(n: usize) -> Vec<(usize, usize)> {
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
    }

    fn k33() -> Vec<(usize, usize)> {
        (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect()
    }

    /// Independent check: some rotation system has Euler characteristic 2 on
    /// every component.
    fn planar_by_rotations(n: usize, edges: &[(usize, usize)]) -> bool {
        let adj: Vec<Vec<usize>> = simple_adjacency(n, edges).into_iter().map(|s| s.into_iter().collect()).collect();
        let mut comp = vec![usize::MAX; n];
        let mut comps = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut members = vec![];
            let mut stack = vec![s];
            comp[s] = id;
            while let Some(u) = stack.pop() {
                members.push(u);
                for &v in &adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        stack.push(v);
                    }
                }
            }
            comps.push(members);
        }
        comps.iter().all(|members| component_planar(&adj, members))
    }

    fn component_planar(adj: &[Vec<usize>], members: &[usize]) -> bool {
        let v = members.len() as i64;
        let e: i64 = members.iter().map(|&u| adj[u].len() as i64).sum::<i64>() / 2;
        if e == 0 {
            return true;
        }
        // Each vertex cycles its neighbours; fix the first neighbour and permute the rest.
        let mut rot: Vec<Vec<usize>> = adj.to_vec();
        fn rec(i: usize, members: &[usize], rot: &mut Vec<Vec<usize>>, target: i64, e: i64) -> bool {
            if i == members.len() {
                return faces(rot, members, e) == target;
            }
            let u = members[i];
            let d = rot[u].len();
            if d <= 2 {
                return rec(i + 1, members, rot, target, e);
            }
            let rest: Vec<usize> = rot[u][1..].to_vec();
            let mut found = false;
            permute(&rest, &mut |perm| {
                if found {
                    return;
                }
                let first = rot[u][0];
                rot[u] = std::iter::once(first).chain(perm.iter().copied()).collect();
                if rec(i + 1, members, rot, target, e) {
                    found = true;
                }
            });
            found
        }
        fn permute(items: &[usize], f: &mut dyn FnMut(&[usize])) {
            let mut v = items.to_vec();
            fn go(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
                if k == v.len() {
                    f(v);
                    return;
                }
                for i in k..v.len() {
                    v.swap(k, i);
                    go(v, k + 1, f);
                    v.swap(k, i);
                }
            }
            go(&mut v, 0, f);
        }
        fn faces(rot: &[Vec<usize>], members: &[usize], e: i64) -> i64 {
            let mut used = std::collections::BTreeSet::new();
            let mut count = 0;
            for &u in members {
                for &v in &rot[u] {
                    if used.contains(&(u, v)) {
                        continue;
                    }
                    count += 1;
                    let (mut a, mut b) = (u, v);
                    while used.insert((a, b)) {
                        let pos = rot[b].iter().position(|&x| x == a).unwrap();
                        let c = rot[b][(pos + 1) % rot[b].len()];
                        a = b;
                        b = c;
                    }
                }
            }
            let _ = e;
            count
        }
        rec(0, members, &mut rot, 2 - v + e, e)
    }

    #[test]
    fn kuratowski_graphs() {
        assert!(!is_planar(5, &complete(5)));
        assert!(!is_planar(6, &k33()));
        assert!(is_planar(4, &complete(4)));
        let mut k5_minus = complete(5);
        k5_minus.pop();
        assert!(is_planar(5, &k5_minus));
        // Subdivided K3,3 with a pendant tree hanging off it.
        let mut sub = vec![];
        let mut next = 6;
        for (u, v) in k33() {
            sub.push((u, next));
            sub.push((next, v));
            next += 1;
        }
        sub.push((0, next));
        assert!(!is_planar(next + 1, &sub));
        let petersen = vec![
            (0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
        ];
        assert!(!is_planar(10, &petersen));
        let cube = vec![
            (0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4), (1, 5), (2, 6), (3, 7),
        ];
        assert!(is_planar(8, &cube));
    }

    #[test]
    fn agrees_with_rotation_systems_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (mut nonplanar, mut checked) = (0, 0);
        for _ in 0..600 {
            let n = rng.gen_range(1..=7);
            let p: f64 = rng.gen_range(0.2..0.8);
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            let adj = simple_adjacency(n, &edges);
            let systems: f64 = adj.iter().map(|s| (1..s.len().max(1)).product::<usize>() as f64).product();
            if systems > 2e5 {
                continue;
            }
            checked += 1;
            let fast = is_planar(n, &edges);
            assert_eq!(fast, planar_by_rotations(n, &edges), "{n} {edges:?}");
            nonplanar += usize::from(!fast);
        }
        assert!(checked > 200);
        assert!(nonplanar > 5);
        assert!(!planar_by_rotations(5, &complete(5)));
        assert!(!planar_by_rotations(6, &k33()));
    }
}
