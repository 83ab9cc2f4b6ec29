//! Random samples for property checks. Everything takes an explicit RNG so
//! runs are reproducible from a seed.

use rand::Rng;

use crate::bigraph::BilabelledGraph;
use crate::exactnum::{Matrix, Scalar};
use crate::partition::{Partition, PartitionVector};

/// A partition with block labels drawn uniformly per point.
pub fn partition(rng: &mut impl Rng, upper: usize, lower: usize) -> Partition {
    let n = upper + lower;
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n.max(1))).collect();
    Partition::from_labels(upper, lower, &labels).expect("label count matches")
}

/// A combination of up to `terms` random partitions with small rational
/// coefficients.
pub fn partition_vector(rng: &mut impl Rng, upper: usize, lower: usize, terms: usize) -> PartitionVector {
    let mut v = PartitionVector::zero(upper, lower);
    for _ in 0..rng.gen_range(1..=terms.max(1)) {
        v.add_term(small_scalar(rng), partition(rng, upper, lower)).expect("same shape");
    }
    v
}

/// A nonzero rational with numerator in `-3..=3` and denominator in `1..=3`.
pub fn small_scalar(rng: &mut impl Rng) -> Scalar {
    loop {
        let p = rng.gen_range(-3..=3);
        if p != 0 {
            return Scalar::ratio(p, rng.gen_range(1..=3));
        }
    }
}

/// A symmetric `n x n` matrix of small rationals.
pub fn symmetric_matrix(rng: &mut impl Rng, n: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let v = if rng.gen_bool(0.3) { Scalar::zero() } else { small_scalar(rng) };
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
    }
    m
}

/// A loopless multigraph on `1..=max_vertices` vertices with up to
/// `max_edges` edges and random boundary tuples of the given lengths.
pub fn graph(rng: &mut impl Rng, k: usize, l: usize, max_vertices: usize, max_edges: usize) -> BilabelledGraph {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let mut edges = Vec::new();
    if n >= 2 {
        for _ in 0..rng.gen_range(0..=max_edges) {
            let u = rng.gen_range(0..n);
            let v = (u + rng.gen_range(1..n)) % n;
            edges.push((u, v));
        }
    }
    let inputs = (0..k).map(|_| rng.gen_range(0..n)).collect();
    let outputs = (0..l).map(|_| rng.gen_range(0..n)).collect();
    BilabelledGraph::new(n, edges, inputs, outputs).expect("indices in range")
}
