//! Dense tensors `T_p` attached to partitions, and the classical objects
//! (permanent vector, signed permutation groups) used to test them.
//!
//! A tensor with `k` inputs and `l` outputs over `C^N` is an `N^l x N^k`
//! matrix. Multi-indices are read big-endian: the first leg is the most
//! significant digit.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{Matrix, Scalar};
use crate::partition::{Partition, PartitionVector};

/// Default bound on the number of entries of a dense tensor (`4^10`).
pub const DEFAULT_MAX_ENTRIES: usize = 1 << 20;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor {
    n: usize,
    k: usize,
    l: usize,
    matrix: Matrix,
}

pub(crate) fn check_size(n: usize, legs: usize, cap: usize) -> Result<usize> {
    let entries = (n as u128).checked_pow(legs as u32).unwrap_or(u128::MAX);
    if entries > cap as u128 {
        return Err(Error::MemoryCap { entries, cap });
    }
    Ok(entries as usize)
}

/// Big-endian digits of `index` in base `n`, `len` of them.
pub fn digits(mut index: usize, n: usize, len: usize) -> Vec<usize> {
    let mut d = vec![0; len];
    for slot in d.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
    d
}

pub fn undigits(d: &[usize], n: usize) -> usize {
    d.iter().fold(0, |acc, &x| acc * n + x)
}

/// Calls `f` with every tuple in `0..n` of the given length, in
/// lexicographic order.
pub(crate) fn for_each_tuple(n: usize, len: usize, mut f: impl FnMut(&[usize])) {
    let mut t = vec![0; len];
    if len > 0 && n == 0 {
        return;
    }
    loop {
        f(&t);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < n {
                break;
            }
            t[i] = 0;
        }
    }
}

impl Tensor {
    pub fn zeros(n: usize, k: usize, l: usize) -> Result<Self> {
        Tensor::zeros_capped(n, k, l, DEFAULT_MAX_ENTRIES)
    }

    pub fn zeros_capped(n: usize, k: usize, l: usize, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroParameter);
        }
        check_size(n, k + l, cap)?;
        Ok(Tensor { n, k, l, matrix: Matrix::zeros(n.pow(l as u32), n.pow(k as u32)) })
    }

    pub fn from_matrix(n: usize, k: usize, l: usize, matrix: Matrix) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroParameter);
        }
        if matrix.rows() != n.pow(l as u32) || matrix.cols() != n.pow(k as u32) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for a ({k},{l}) tensor over dimension {n}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Tensor { n, k, l, matrix })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn inputs(&self) -> usize {
        self.k
    }

    pub fn outputs(&self) -> usize {
        self.l
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    /// Entry at output multi-index `out` and input multi-index `inp`.
    pub fn get(&self, out: &[usize], inp: &[usize]) -> &Scalar {
        self.matrix.get(undigits(out, self.n), undigits(inp, self.n))
    }

    /// Entries flattened row-major; for `k = 0` this is the vector itself.
    pub fn flat(&self) -> &[Scalar] {
        self.matrix.data()
    }

    pub fn nonzero_count(&self) -> usize {
        self.matrix.nonzeros().count()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn scale(&self, s: &Scalar) -> Tensor {
        Tensor { matrix: self.matrix.scale(s), ..self.clone() }
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        self.check_same(other)?;
        Ok(Tensor { matrix: self.matrix.add(&other.matrix)?, ..self.clone() })
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        self.check_same(other)?;
        Ok(Tensor { matrix: self.matrix.sub(&other.matrix)?, ..self.clone() })
    }

    /// Side-by-side product.
    pub fn tensor(&self, other: &Tensor) -> Result<Tensor> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch("different base dimensions".into()));
        }
        Ok(Tensor {
            n: self.n,
            k: self.k + other.k,
            l: self.l + other.l,
            matrix: self.matrix.kron(&other.matrix),
        })
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &Tensor) -> Result<Tensor> {
        if self.n != first.n {
            return Err(Error::DimensionMismatch("different base dimensions".into()));
        }
        if self.k != first.l {
            return Err(Error::ArityMismatch { left: self.k, right: first.l });
        }
        Ok(Tensor { n: self.n, k: first.k, l: self.l, matrix: self.matrix.matmul(&first.matrix)? })
    }

    pub fn transpose(&self) -> Tensor {
        Tensor { n: self.n, k: self.l, l: self.k, matrix: self.matrix.transpose() }
    }

    /// Reinterprets the legs: the first `l` legs (outputs, then inputs, in
    /// order) become outputs and the rest inputs. The entries are untouched.
    pub fn regroup(&self, k: usize, l: usize) -> Result<Tensor> {
        if k + l != self.k + self.l {
            return Err(Error::DimensionMismatch("regrouping changes the leg count".into()));
        }
        let data = self.matrix.data().to_vec();
        Tensor::from_matrix(
            self.n,
            k,
            l,
            Matrix::from_flat(self.n.pow(l as u32), self.n.pow(k as u32), data)?,
        )
    }

    /// Applies `x` to every output leg of a tensor with no inputs.
    pub fn apply_on_every_leg(&self, x: &Matrix) -> Result<Tensor> {
        if self.k != 0 || !x.is_square() || x.rows() != self.n {
            return Err(Error::DimensionMismatch("leg action needs a vector and an N x N matrix".into()));
        }
        let n = self.n;
        let mut cur: Vec<Scalar> = self.flat().to_vec();
        let total = cur.len();
        for leg in 0..self.l {
            let stride = n.pow((self.l - 1 - leg) as u32);
            let mut next = vec![Scalar::zero(); total];
            for (idx, v) in cur.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let digit = (idx / stride) % n;
                let base = idx - digit * stride;
                for r in 0..n {
                    let c = x.get(r, digit);
                    if !c.is_zero() {
                        next[base + r * stride] += c * v;
                    }
                }
            }
            cur = next;
        }
        Tensor::from_matrix(n, 0, self.l, Matrix::from_flat(total, 1, cur)?)
    }

    fn check_same(&self, other: &Tensor) -> Result<()> {
        if (self.n, self.k, self.l) != (other.n, other.k, other.l) {
            return Err(Error::DimensionMismatch(format!(
                "({},{},{}) vs ({},{},{})",
                self.n, self.k, self.l, other.n, other.k, other.l
            )));
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TensorJson {
    #[serde(rename = "N")]
    n: usize,
    k: usize,
    l: usize,
    entries: Vec<(Scalar, usize, usize)>,
}

impl Serialize for Tensor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TensorJson {
            n: self.n,
            k: self.k,
            l: self.l,
            entries: self.matrix.nonzeros().map(|(r, c, v)| (v.clone(), r, c)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tensor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = TensorJson::deserialize(d)?;
        let mut t = Tensor::zeros(j.n, j.k, j.l).map_err(D::Error::custom)?;
        for (v, r, c) in j.entries {
            if r >= t.matrix.rows() || c >= t.matrix.cols() {
                return Err(D::Error::custom("entry index out of range"));
            }
            t.matrix.set(r, c, v);
        }
        Ok(t)
    }
}

fn add_partition(t: &mut Tensor, p: &Partition, coeff: &Scalar, distinct: bool) {
    let (n, k) = (t.n, t.k);
    let blocks = p.block_count();
    let mut values = vec![0usize; blocks];
    let mut used = vec![false; n];
    fn go(
        b: usize,
        values: &mut Vec<usize>,
        used: &mut Vec<bool>,
        distinct: bool,
        emit: &mut dyn FnMut(&[usize]),
    ) {
        if b == values.len() {
            emit(values);
            return;
        }
        for v in 0..used.len() {
            if distinct && used[v] {
                continue;
            }
            values[b] = v;
            used[v] = true;
            go(b + 1, values, used, distinct, emit);
            used[v] = false;
        }
    }
    let labels = p.labels().to_vec();
    let matrix = &mut t.matrix;
    go(0, &mut values, &mut used, distinct, &mut |vals| {
        let col = labels[..k].iter().fold(0, |acc, &b| acc * n + vals[b]);
        let row = labels[k..].iter().fold(0, |acc, &b| acc * n + vals[b]);
        *matrix.entry_mut(row, col) += coeff;
    });
}

/// `T_x`: entry 1 where indices agree on every block, extended linearly.
pub fn evaluate(x: &PartitionVector, n: usize) -> Result<Tensor> {
    evaluate_capped(x, n, DEFAULT_MAX_ENTRIES)
}

pub fn evaluate_capped(x: &PartitionVector, n: usize, cap: usize) -> Result<Tensor> {
    let mut t = Tensor::zeros_capped(n, x.upper(), x.lower(), cap)?;
    for (p, c) in x.terms() {
        add_partition(&mut t, p, c, false);
    }
    Ok(t)
}

/// `T^hat_x`: entry 1 where indices agree exactly on blocks, i.e. equal
/// within a block and distinct across blocks.
pub fn evaluate_hat(x: &PartitionVector, n: usize) -> Result<Tensor> {
    evaluate_hat_capped(x, n, DEFAULT_MAX_ENTRIES)
}

pub fn evaluate_hat_capped(x: &PartitionVector, n: usize, cap: usize) -> Result<Tensor> {
    let mut t = Tensor::zeros_capped(n, x.upper(), x.lower(), cap)?;
    for (p, c) in x.terms() {
        add_partition(&mut t, p, c, true);
    }
    Ok(t)
}

/// The vector in `(C^N)^{N}` with entry 1 on every permutation of `0..N`.
pub fn permanent_vector(n: usize) -> Result<Tensor> {
    let mut t = Tensor::zeros(n, 0, n)?;
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        t.matrix.set(undigits(p, n), 0, Scalar::one());
    });
    Ok(t)
}

fn permutations(items: &mut Vec<usize>, start: usize, f: &mut dyn FnMut(&[usize])) {
    if start == items.len() {
        f(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permutations(items, start + 1, f);
        items.swap(start, i);
    }
}

/// `sum over sigma of prod_i x[i][sigma(i)]`.
pub fn permanent(x: &Matrix) -> Result<Scalar> {
    if !x.is_square() {
        return Err(Error::DimensionMismatch("permanent of a non-square matrix".into()));
    }
    let mut total = Scalar::zero();
    let mut perm: Vec<usize> = (0..x.rows()).collect();
    permutations(&mut perm, 0, &mut |p| {
        let mut prod = Scalar::one();
        for (i, &j) in p.iter().enumerate() {
            let e = x.get(i, j);
            if e.is_zero() {
                return;
            }
            prod *= e;
        }
        total += prod;
    });
    Ok(total)
}

/// A permutation with a sign on each column: column `j` is `signs[j] e_{perm[j]}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn matrix(&self) -> Matrix {
        let n = self.perm.len();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            m.set(self.perm[j], j, Scalar::integer(self.signs[j] as i64));
        }
        m
    }

    /// `self` after `other`.
    pub fn then_after(&self, other: &SignedPermutation) -> SignedPermutation {
        let n = self.perm.len();
        let perm = (0..n).map(|j| self.perm[other.perm[j]]).collect();
        let signs = (0..n).map(|j| other.signs[j] * self.signs[other.perm[j]]).collect();
        SignedPermutation { perm, signs }
    }
}

/// All `2^n n!` signed permutations of `0..n`.
pub fn signed_permutations(n: usize) -> Vec<SignedPermutation> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        for mask in 0..(1u32 << n) {
            let signs = (0..n).map(|j| if mask >> j & 1 == 1 { -1 } else { 1 }).collect();
            out.push(SignedPermutation { perm: p.to_vec(), signs });
        }
    });
    out.sort();
    out
}

/// The signed 4x4 permutation matrices with permanent one.
pub fn classical_d4_elements() -> Vec<SignedPermutation> {
    signed_permutations(4)
        .into_iter()
        .filter(|s| permanent(&s.matrix()).map(|p| p.is_one()).unwrap_or(false))
        .collect()
}

/// Three adjacent transpositions and the transposition of the first two
/// coordinates with both signs flipped.
pub fn classical_d4_generators() -> Vec<SignedPermutation> {
    let mut gens = Vec::new();
    for i in 0..3 {
        let mut perm: Vec<usize> = (0..4).collect();
        perm.swap(i, i + 1);
        gens.push(SignedPermutation { perm, signs: vec![1; 4] });
    }
    gens.push(SignedPermutation { perm: vec![1, 0, 2, 3], signs: vec![-1, -1, 1, 1] });
    gens
}

/// Closure of a set of signed permutations under composition.
pub fn generated_group(gens: &[SignedPermutation]) -> Vec<SignedPermutation> {
    let Some(first) = gens.first() else { return Vec::new() };
    let n = first.perm.len();
    let id = SignedPermutation { perm: (0..n).collect(), signs: vec![1; n] };
    let mut seen = std::collections::BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for h in gens {
            let gh = h.then_after(&g);
            if seen.insert(gh.clone()) {
                queue.push_back(gh);
            }
        }
    }
    seen.into_iter().collect()
}

/// Dimension of the subspace of `(C^n)^{tensor k}` fixed by every `g^{tensor k}`.
///
/// Signed permutations act monomially on the standard basis, so the fixed
/// space has a basis of signed orbit sums: one per orbit of index tuples on
/// which the induced signs are consistent.
pub fn fixed_space_dimension(gens: &[SignedPermutation], k: usize) -> Result<usize> {
    let Some(first) = gens.first() else {
        return Err(Error::Precondition("no generators".into()));
    };
    let n = first.perm.len();
    let total = check_size(n, k, usize::MAX)?;
    let mut sign: Vec<i8> = vec![0; total];
    let mut dim = 0;
    for start in 0..total {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut consistent = true;
        let mut queue = VecDeque::from([start]);
        while let Some(idx) = queue.pop_front() {
            let t = digits(idx, n, k);
            for g in gens {
                let mut s = sign[idx];
                let image: Vec<usize> = t
                    .iter()
                    .map(|&j| {
                        s *= g.signs[j];
                        g.perm[j]
                    })
                    .collect();
                let j = undigits(&image, n);
                if sign[j] == 0 {
                    sign[j] = s;
                    queue.push_back(j);
                } else if sign[j] != s {
                    consistent = false;
                }
            }
        }
        if consistent {
            dim += 1;
        }
    }
    Ok(dim)
}

/// Sparse view used by reports: `(row, col) -> value` for every nonzero.
pub fn nonzero_map(t: &Tensor) -> BTreeMap<(usize, usize), Scalar> {
    t.matrix.nonzeros().map(|(r, c, v)| ((r, c), v.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{matrix_rank, nullspace};
    use crate::partition::{hat, Partition};

    fn pv(p: Partition) -> PartitionVector {
        p.into()
    }

    /// Reference definition straight from the block condition.
    fn delta(p: &Partition, idx: &[usize]) -> bool {
        (0..idx.len()).all(|a| (0..idx.len()).all(|b| p.label(a) != p.label(b) || idx[a] == idx[b]))
    }

    #[test]
    fn evaluation_matches_pointwise_definition() {
        for p in Partition::all(1, 2).into_iter().chain(Partition::all(2, 2)) {
            let t = evaluate(&pv(p.clone()), 3).unwrap();
            let (k, l) = (p.upper(), p.lower());
            for_each_tuple(3, k + l, |idx| {
                let expect = if delta(&p, idx) { Scalar::one() } else { Scalar::zero() };
                assert_eq!(t.get(&idx[k..], &idx[..k]), &expect);
            });
        }
    }

    #[test]
    fn small_tensors() {
        let pair = evaluate(&pv(Partition::pair()), 3).unwrap();
        assert_eq!(pair.nonzero_count(), 3);
        assert_eq!(pair.get(&[1, 1], &[]), &Scalar::one());
        assert_eq!(pair.get(&[1, 2], &[]), &Scalar::zero());
        let id = evaluate(&pv(Partition::identity()), 5).unwrap();
        assert_eq!(id.matrix(), &Matrix::identity(5));
        let disc = evaluate(&pv(Partition::disconnecter()), 2).unwrap();
        assert_eq!(disc.nonzero_count(), 4);
        let hat4 = evaluate_hat(&pv(Partition::singletons(0, 4)), 4).unwrap();
        assert_eq!(hat4.nonzero_count(), 24);
        assert_eq!(hat4, permanent_vector(4).unwrap());
    }

    #[test]
    fn permanent_vector_is_the_image_of_hat_of_singletons() {
        for n in 2..=4 {
            let h = hat(&Partition::singletons(0, n));
            assert_eq!(evaluate(&h, n).unwrap(), permanent_vector(n).unwrap(), "N = {n}");
        }
        for (n, l) in [(2, 3), (2, 4), (3, 4), (3, 5)] {
            let h = hat(&Partition::singletons(0, l));
            assert!(evaluate(&h, n).unwrap().is_zero(), "N = {n}, l = {l}");
        }
    }

    #[test]
    fn hat_evaluation_is_mobius_inversion_of_plain_evaluation() {
        for p in Partition::all(1, 3) {
            let lhs = evaluate(&hat(&p), 3).unwrap();
            let rhs = evaluate_hat(&pv(p), 3).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn memory_cap_is_enforced() {
        let e = evaluate_capped(&pv(Partition::one_block(0, 6)), 4, 1000).unwrap_err();
        assert!(matches!(e, Error::MemoryCap { entries: 4096, cap: 1000 }));
        assert_eq!(evaluate(&pv(Partition::pair()), 0).unwrap_err(), Error::ZeroParameter);
    }

    #[test]
    fn signed_permutation_counts() {
        assert_eq!(signed_permutations(4).len(), 384);
        let d4 = classical_d4_elements();
        assert_eq!(d4.len(), 192);
        let gens = classical_d4_generators();
        assert!(gens.iter().all(|g| d4.contains(g)));
        assert_eq!(generated_group(&gens), d4);
    }

    #[test]
    fn permanent_vector_transforms_by_the_permanent() {
        let p = permanent_vector(4).unwrap();
        for s in signed_permutations(4) {
            let x = s.matrix();
            let moved = p.apply_on_every_leg(&x).unwrap();
            assert_eq!(moved, p.scale(&permanent(&x).unwrap()));
        }
    }

    #[test]
    fn classical_fixed_space_dimensions() {
        let gens = classical_d4_generators();
        assert_eq!(fixed_space_dimension(&gens, 2).unwrap(), 1);
        assert_eq!(fixed_space_dimension(&gens, 4).unwrap(), 5);
        // Character average: (1/|G|) sum_g trace(g)^k.
        let d4 = classical_d4_elements();
        for k in 0..=6u32 {
            let total: i64 = d4
                .iter()
                .map(|g| {
                    let tr: i64 = (0..4).filter(|&j| g.perm[j] == j).map(|j| g.signs[j] as i64).sum();
                    tr.pow(k)
                })
                .sum();
            assert_eq!(total % 192, 0);
            assert_eq!(fixed_space_dimension(&gens, k as usize).unwrap() as i64, total / 192, "k = {k}");
        }
    }

    #[test]
    fn fixed_space_by_linear_algebra_at_four_legs() {
        // Stack (X^{tensor 4} - I) for the generators and take the kernel.
        let gens = classical_d4_generators();
        let dim = 256;
        let mut rows = Vec::new();
        for g in &gens {
            let x = g.matrix();
            for i in 0..dim {
                let mut e = Tensor::zeros(4, 0, 4).unwrap();
                e.matrix.set(i, 0, Scalar::one());
                let moved = e.apply_on_every_leg(&x).unwrap();
                let mut col: Vec<Scalar> = moved.flat().to_vec();
                col[i] -= &Scalar::one();
                rows.push(col);
            }
        }
        // rows[i] is column i of (X - I); transpose to get the operator.
        let m = Matrix::from_rows(rows).unwrap();
        let mut op_rows = Vec::new();
        for block in 0..gens.len() {
            for r in 0..dim {
                op_rows.push((0..dim).map(|c| m.get(block * dim + c, r).clone()).collect());
            }
        }
        let op = Matrix::from_rows(op_rows).unwrap();
        assert_eq!(dim - matrix_rank(&op), 5);
        assert_eq!(nullspace(&op).len(), 5);
    }

    #[test]
    fn regroup_and_apply() {
        let four = evaluate(&pv(Partition::fourblock()), 2).unwrap();
        let m = four.regroup(2, 2).unwrap();
        assert_eq!(m, evaluate(&pv(Partition::connecter()), 2).unwrap());
    }

    #[test]
    fn json_lists_nonzeros() {
        let t = evaluate(&pv(Partition::pair()), 2).unwrap();
        let j = serde_json::to_string(&t).unwrap();
        assert_eq!(j, r#"{"N":2,"k":0,"l":2,"entries":[["1",0,0],["1",3,0]]}"#);
        let back: Tensor = serde_json::from_str(&j).unwrap();
        assert_eq!(back, t);
    }
}
