//! Rank of the images of `C(0, k)` under `T^A` with `A` the matrix of `tau`,
//! next to the fixed-space dimension of the classical group at `N = 4`.

use std::fmt::Write;

use serde::Serialize;

use crate::enumerator::GraphPool;
use crate::error::Result;
use crate::exactnum::{gram, matrix_rank};
use crate::functor::{evaluate_ta_capped, tau_matrix};
use crate::tensor::{classical_d4_generators, DEFAULT_MAX_ENTRIES};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimsRow {
    pub k: usize,
    /// `#C(0, k)`.
    pub count: usize,
    /// Rank of the image vectors.
    pub rank: usize,
    /// Only computed at `N = 4`.
    pub d4_fixed_dimension: Option<usize>,
}

impl DimsRow {
    pub fn independent(&self) -> bool {
        self.rank == self.count
    }
}

/// One row per even `k` in `2..=max_points`; `pool` must reach `max_points`.
pub fn dims_report(pool: &GraphPool, n: usize, max_points: usize, cap: usize) -> Result<Vec<DimsRow>> {
    let a = tau_matrix(n)?;
    let gens = classical_d4_generators();
    let mut rows = Vec::new();
    for k in (2..=max_points).step_by(2) {
        let graphs = pool.cell(0, k);
        let vectors = graphs
            .iter()
            .map(|g| Ok(evaluate_ta_capped(g, &a, cap)?.flat().to_vec()))
            .collect::<Result<Vec<_>>>()?;
        // Over the rationals the Gram matrix has the same rank as the vectors.
        let rank = if vectors.is_empty() { 0 } else { matrix_rank(&gram(&vectors)?) };
        let d4_fixed_dimension = if n == 4 {
            Some(crate::tensor::fixed_space_dimension(&gens, k)?)
        } else {
            None
        };
        rows.push(DimsRow { k, count: graphs.len(), rank, d4_fixed_dimension });
    }
    Ok(rows)
}

pub fn dims_report_default(pool: &GraphPool, n: usize, max_points: usize) -> Result<Vec<DimsRow>> {
    dims_report(pool, n, max_points, DEFAULT_MAX_ENTRIES)
}

/// Plain-text table.
pub fn render(rows: &[DimsRow], n: usize) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "N = {n}");
    let _ = writeln!(s, "{:>3} {:>7} {:>6} {:>12} {:>10}", "k", "#C(0,k)", "rank", "independent", "D4 fixed");
    for r in rows {
        let d4 = r.d4_fixed_dimension.map_or("-".to_string(), |d| d.to_string());
        let _ = writeln!(s, "{:>3} {:>7} {:>6} {:>12} {:>10}", r.k, r.count, r.rank, r.independent(), d4);
    }
    s
}
