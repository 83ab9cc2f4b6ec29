use d4plus_core::bigraph::{are_isomorphic, canonical_form, check_conditions, BilabelledGraph, Parity};
use d4plus_core::enumerator::words::boundary_word;
use d4plus_core::enumerator::{algorithm_a, brute_force_c, rotation_classes, GraphPool};
use d4plus_core::verify::{pool8, pool_is_closed};

/// Builds a graph with no inputs from its core: `order` lists core vertices
/// around the boundary, and each occurrence of an odd vertex becomes a stub.
fn from_core(parity: &[Parity], core_edges: &[(usize, usize)], order: &[usize]) -> BilabelledGraph {
    let mut vertices = parity.len();
    let mut edges = core_edges.to_vec();
    let mut outputs = Vec::new();
    for &v in order {
        match parity[v] {
            Parity::Even => outputs.push(v),
            Parity::Odd => {
                edges.push((v, vertices));
                outputs.push(vertices);
                vertices += 1;
            }
        }
    }
    BilabelledGraph::new(vertices, edges, vec![], outputs).unwrap()
}

fn catalan(n: u64) -> u64 {
    (0..n).fold(1, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

#[test]
fn counts_are_squared_catalan_numbers() {
    let pool = pool8().unwrap();
    for k in 0..=4 {
        assert_eq!(pool.count(0, 2 * k) as u64, catalan(k as u64).pow(2), "C(0,{})", 2 * k);
    }
    for total in (1..=7).step_by(2) {
        for k in 0..=total {
            assert_eq!(pool.count(k, total - k), 0);
        }
    }
    // A graph and its rotations share a count.
    for total in (0..=8).step_by(2) {
        let c = pool.count(0, total);
        assert!((0..=total).all(|k| pool.count(k, total - k) == c));
    }
}

#[test]
fn the_trivial_cells() {
    let pool = algorithm_a(0).unwrap();
    assert_eq!(pool.cell(0, 0), vec![&BilabelledGraph::null()]);
    assert_eq!(pool.counts_csv(), "k,l,count\n0,0,1\n");
    let pool = algorithm_a(2).unwrap();
    assert!(pool.counts_csv().contains("0,2,1\n"));
    assert!(are_isomorphic(pool.cell(0, 2)[0], &BilabelledGraph::m(0, 2)));
}

#[test]
fn brute_force_matches_on_small_windows() {
    let only = |k, l, v, e| {
        let found = brute_force_c(k, l, v, e);
        assert_eq!(found.len(), 1);
        found[0].clone()
    };
    assert!(are_isomorphic(&only(0, 2, 3, 3), &BilabelledGraph::m(0, 2)));
    assert!(are_isomorphic(&only(1, 1, 3, 3), &BilabelledGraph::m(1, 1)));
    // The star needs its centre and four leaves.
    assert_eq!(brute_force_c(0, 4, 4, 4).len(), 3);
    let four = brute_force_c(0, 4, 5, 4);
    let expected = [
        BilabelledGraph::m(0, 4),
        BilabelledGraph::x(0, 4),
        BilabelledGraph::m(0, 2).tensor(&BilabelledGraph::m(0, 2)),
        BilabelledGraph::new(2, [], vec![], vec![0, 1, 1, 0]).unwrap(),
    ];
    assert_eq!(four.len(), 4);
    for g in &expected {
        assert!(four.iter().any(|h| are_isomorphic(g, h)), "{g:?}");
    }
}

#[test]
fn algorithm_a_equals_brute_force_up_to_six_points() {
    let pool = pool8().unwrap();
    for total in 0..=6 {
        for k in 0..=total {
            let l = total - k;
            let brute = brute_force_c(k, l, 8, 8);
            let mut ours: Vec<_> = pool.cell(k, l).into_iter().map(canonical_form).collect();
            let mut theirs: Vec<_> = brute.iter().map(canonical_form).collect();
            ours.sort();
            theirs.sort();
            assert_eq!(ours, theirs, "({k},{l})");
        }
    }
}

#[test]
fn brute_force_confirms_eight_points() {
    let pool = pool8().unwrap();
    let brute = brute_force_c(0, 8, 10, 10);
    assert_eq!(brute.len(), 196);
    assert!(brute.iter().all(|g| pool.contains(g)));
}

#[test]
fn the_worked_example_graphs_appear() {
    use Parity::{Even as E, Odd as O};
    let graphs = [
        from_core(&[E, O, E], &[(0, 1), (1, 2)], &[0, 0, 0, 1, 1, 2, 2, 2]),
        from_core(&[E, O, E], &[(0, 1), (1, 2)], &[0, 0, 0, 1, 2, 2, 2, 1]),
        from_core(&[O, E, O], &[(0, 1), (1, 2)], &[0, 0, 0, 1, 1, 2, 2, 2]),
        from_core(&[O, E, O], &[(0, 1), (1, 2)], &[0, 0, 0, 1, 2, 2, 2, 1]),
        from_core(&[E, O, E, O], &[(0, 1), (1, 2), (2, 3), (3, 0)], &[0, 0, 1, 1, 2, 2, 3, 3]),
    ];
    let pool = pool8().unwrap();
    for (i, g) in graphs.iter().enumerate() {
        assert!(check_conditions(g).all(), "graph {i}");
        assert!(pool.contains(g), "graph {i}");
        for h in &graphs[..i] {
            assert!(!g.rotations().iter().any(|r| are_isomorphic(r, h)));
        }
    }
}

#[test]
fn the_pool_is_closed_and_consistent() {
    let pool = pool8().unwrap();
    assert!(pool_is_closed(pool));
    assert!(pool.trace().iter().all(|s| s.to.0 + s.to.1 >= s.from.0 + s.from.1));
    for g in pool.graphs().filter(|g| g.is_connected() && g.boundary_size() > 0) {
        assert_eq!(boundary_word(g).unwrap().len() % 2, 0);
    }
    // Boundary cycles of C(0,4) up to shift: both stars, and the two ways of
    // pairing four points without crossing coincide.
    assert_eq!(rotation_classes(pool, 4), 3);
}

#[test]
fn pool_json_round_trip() {
    let pool = algorithm_a(6).unwrap();
    let text = serde_json::to_string(&pool.to_json()).unwrap();
    let back = GraphPool::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back.counts(), pool.counts());
    assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), text);
    assert!(GraphPool::from_json(&serde_json::json!({"k0": 2, "cells": {"0,3": []}})).is_ok());
    assert!(GraphPool::from_json(&serde_json::json!({"k0": 2, "cells": {"x": []}})).is_err());
}
