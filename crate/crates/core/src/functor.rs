//! Evaluating graphs: the weighted homomorphism tensor `T^A_K` and the
//! partition expansion `F_pi K` for `pi = alpha id + beta {u1}{l1}`.

use std::collections::BTreeSet;

use crate::bigraph::BilabelledGraph;
use crate::error::{Error, Result};
use crate::exactnum::{Matrix, Scalar};
use crate::partition::{tau, Partition, PartitionVector, UnionFind};
use crate::tensor::{self, check_size, for_each_tuple, Tensor, DEFAULT_MAX_ENTRIES};

/// Largest edge count accepted by [`evaluate_fpi`] (one term per edge subset).
pub const MAX_FPI_EDGES: usize = 24;

fn check_weights(a: &Matrix) -> Result<usize> {
    if !a.is_symmetric() || a.rows() == 0 {
        return Err(Error::BadWeightMatrix(a.rows()));
    }
    Ok(a.rows())
}

/// Entrywise power of the weight matrix, for parallel edges.
fn schur_power(a: &Matrix, m: usize) -> Matrix {
    let mut out = a.clone();
    for _ in 1..m {
        out = out.schur(a).expect("same shape");
    }
    out
}

/// `T^A_K` by summing over every colouring of the vertices. Entry
/// `(row, col)` collects colourings that read `row` on the outputs and `col`
/// on the inputs.
pub fn evaluate_ta_bruteforce(g: &BilabelledGraph, a: &Matrix) -> Result<Tensor> {
    let n = check_weights(a)?;
    check_size(n, g.vertex_count(), DEFAULT_MAX_ENTRIES * 16)?;
    let mut t = Tensor::zeros(n, g.k(), g.l())?;
    let weights: Vec<(usize, usize, Matrix)> =
        g.edge_map().iter().map(|(&(u, v), &m)| (u, v, schur_power(a, m))).collect();
    let mut data = vec![Scalar::zero(); t.matrix().rows() * t.matrix().cols()];
    let cols = t.matrix().cols();
    for_each_tuple(n, g.vertex_count(), |phi| {
        let mut w = Scalar::one();
        for (u, v, am) in &weights {
            let e = am.get(phi[*u], phi[*v]);
            if e.is_zero() {
                return;
            }
            w *= e;
        }
        let col = g.inputs().iter().fold(0, |acc, &v| acc * n + phi[v]);
        let row = g.outputs().iter().fold(0, |acc, &v| acc * n + phi[v]);
        data[row * cols + col] += w;
    });
    t = Tensor::from_matrix(n, g.k(), g.l(), Matrix::from_flat(t.matrix().rows(), cols, data)?)?;
    Ok(t)
}

#[derive(Clone)]
struct Factor {
    vars: Vec<usize>,
    values: Vec<Scalar>,
}

/// Multiplies `factors` together over `vars` (sorted), summing out `drop`.
fn combine(factors: &[&Factor], vars: &[usize], drop: Option<usize>, n: usize) -> Factor {
    let keep: Vec<usize> = vars.iter().copied().filter(|&v| Some(v) != drop).collect();
    let positions: Vec<Vec<usize>> = factors
        .iter()
        .map(|f| f.vars.iter().map(|v| vars.binary_search(v).expect("var in union")).collect())
        .collect();
    let keep_pos: Vec<usize> = keep.iter().map(|v| vars.binary_search(v).expect("kept")).collect();
    let mut values = vec![Scalar::zero(); n.pow(keep.len() as u32)];
    for_each_tuple(n, vars.len(), |x| {
        let mut w = Scalar::one();
        for (f, pos) in factors.iter().zip(&positions) {
            let idx = pos.iter().fold(0, |acc, &p| acc * n + x[p]);
            let e = &f.values[idx];
            if e.is_zero() {
                return;
            }
            w *= e;
        }
        let out = keep_pos.iter().fold(0, |acc, &p| acc * n + x[p]);
        values[out] += w;
    });
    Factor { vars: keep, values }
}

struct Plan {
    order: Vec<usize>,
}

fn initial_factors(g: &BilabelledGraph, a: &Matrix) -> Vec<Factor> {
    let n = a.rows();
    g.edge_map()
        .iter()
        .map(|(&(u, v), &m)| {
            let am = schur_power(a, m);
            if u == v {
                Factor { vars: vec![u], values: (0..n).map(|i| am.get(i, i).clone()).collect() }
            } else {
                Factor { vars: vec![u, v], values: am.data().to_vec() }
            }
        })
        .collect()
}

fn plan(g: &BilabelledGraph, scopes: &[Vec<usize>]) -> Plan {
    let boundary: BTreeSet<usize> = g.inputs().iter().chain(g.outputs()).copied().collect();
    let mut remaining: BTreeSet<usize> = (0..g.vertex_count()).filter(|v| !boundary.contains(v)).collect();
    let mut scopes: Vec<BTreeSet<usize>> = scopes.iter().map(|s| s.iter().copied().collect()).collect();
    let mut order = Vec::new();
    while !remaining.is_empty() {
        let cost = |v: usize| {
            scopes.iter().filter(|s| s.contains(&v)).flat_map(|s| s.iter()).collect::<BTreeSet<_>>().len()
        };
        let v = *remaining.iter().min_by_key(|&&v| (cost(v), v)).expect("nonempty");
        let mut merged = BTreeSet::new();
        scopes.retain(|s| {
            if s.contains(&v) {
                merged.extend(s.iter().copied());
                false
            } else {
                true
            }
        });
        merged.remove(&v);
        scopes.push(merged);
        remaining.remove(&v);
        order.push(v);
    }
    Plan { order }
}

/// Elimination order for the inner vertices: repeatedly the vertex whose
/// current neighbourhood in the factor scopes is smallest (ties by id).
pub fn contraction_order(g: &BilabelledGraph) -> Vec<usize> {
    let scopes: Vec<Vec<usize>> = g
        .edge_map()
        .keys()
        .map(|&(u, v)| if u == v { vec![u] } else { vec![u, v] })
        .collect();
    plan(g, &scopes).order
}

/// `T^A_K` by eliminating inner vertices one at a time.
pub fn evaluate_ta(g: &BilabelledGraph, a: &Matrix) -> Result<Tensor> {
    evaluate_ta_capped(g, a, DEFAULT_MAX_ENTRIES)
}

pub fn evaluate_ta_capped(g: &BilabelledGraph, a: &Matrix, cap: usize) -> Result<Tensor> {
    let n = check_weights(a)?;
    check_size(n, g.boundary_size(), cap)?;
    let mut factors = initial_factors(g, a);
    let order = contraction_order(g);
    let mut scalar = Scalar::one();
    for v in order {
        let (touching, rest): (Vec<Factor>, Vec<Factor>) =
            factors.into_iter().partition(|f| f.vars.contains(&v));
        factors = rest;
        if touching.is_empty() {
            scalar *= &Scalar::from(n);
            continue;
        }
        let vars: Vec<usize> =
            touching.iter().flat_map(|f| f.vars.iter().copied()).collect::<BTreeSet<_>>().into_iter().collect();
        check_size(n, vars.len(), cap)?;
        let refs: Vec<&Factor> = touching.iter().collect();
        factors.push(combine(&refs, &vars, Some(v), n));
    }
    let boundary: Vec<usize> =
        g.inputs().iter().chain(g.outputs()).copied().collect::<BTreeSet<_>>().into_iter().collect();
    let refs: Vec<&Factor> = factors.iter().collect();
    let joint = combine(&refs, &boundary, None, n);
    let mut t = Tensor::zeros_capped(n, g.k(), g.l(), cap)?;
    let mut m = t.matrix().clone();
    for_each_tuple(n, boundary.len(), |x| {
        let e = &joint.values[x.iter().fold(0, |acc, &d| acc * n + d)];
        if e.is_zero() {
            return;
        }
        let val = |v: usize| x[boundary.binary_search(&v).expect("boundary vertex")];
        let col = g.inputs().iter().fold(0, |acc, &v| acc * n + val(v));
        let row = g.outputs().iter().fold(0, |acc, &v| acc * n + val(v));
        m.set(row, col, e * &scalar);
    });
    t = Tensor::from_matrix(n, g.k(), g.l(), m)?;
    Ok(t)
}

/// Expands every edge as `alpha` (merge its ends) plus `beta` (cut it):
/// `sum over S of alpha^{|E - S|} beta^{|S|} N^{closed components} p_{K - S}`.
pub fn evaluate_fpi(g: &BilabelledGraph, alpha: &Scalar, beta: &Scalar, n: &Scalar) -> Result<PartitionVector> {
    if n.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let edges = g.edge_list();
    if edges.len() > MAX_FPI_EDGES {
        return Err(Error::Precondition(format!(
            "{} edges exceed the expansion limit of {MAX_FPI_EDGES}",
            edges.len()
        )));
    }
    let e = edges.len();
    let coeff: Vec<Scalar> = (0..=e)
        .map(|cut| &alpha.pow((e - cut) as i32).unwrap_or_else(|_| Scalar::zero()) * &beta.pow(cut as i32).unwrap_or_else(|_| Scalar::zero()))
        .collect();
    let powers: Vec<Scalar> = (0..=g.vertex_count()).map(|r| n.pow(r as i32).expect("nonzero")).collect();
    let boundary: Vec<usize> = g.inputs().iter().chain(g.outputs()).copied().collect();
    let mut out = PartitionVector::zero(g.k(), g.l());
    for mask in 0u32..(1u32 << e) {
        let cut = mask.count_ones() as usize;
        if coeff[cut].is_zero() {
            continue;
        }
        let mut uf = UnionFind::new(g.vertex_count());
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 0 {
                uf.union(u, v);
            }
        }
        let labels: Vec<usize> = boundary.iter().map(|&v| uf.find(v)).collect();
        let touched: BTreeSet<usize> = labels.iter().copied().collect();
        let closed = (0..g.vertex_count())
            .filter(|&v| uf.find(v) == v && !touched.contains(&v))
            .count();
        let p = Partition::from_labels(g.k(), g.l(), &labels)?;
        out.add_term(&coeff[cut] * &powers[closed], p)?;
    }
    Ok(out)
}

/// Checks `T^{T_tau}_K = T_{F_tau K}` at dimension `n`.
pub fn consistency_check(g: &BilabelledGraph, n: usize) -> Result<bool> {
    let ns = Scalar::from(n);
    let a = tensor::evaluate(&tau(&ns)?, n)?.into_matrix();
    let lhs = evaluate_ta(g, &a)?;
    let beta = -(&Scalar::integer(2) / &ns);
    let rhs = tensor::evaluate(&evaluate_fpi(g, &Scalar::one(), &beta, &ns)?, n)?;
    Ok(lhs == rhs)
}

/// The matrix of `tau` at dimension `n`: `delta_ij - 2/n`.
pub fn tau_matrix(n: usize) -> Result<Matrix> {
    Ok(tensor::evaluate(&tau(&Scalar::from(n))?, n)?.into_matrix())
}
