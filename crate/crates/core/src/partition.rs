//! Set partitions of two rows of points and their formal linear combinations.
//!
//! A partition in `P(k, l)` has `k` upper points and `l` lower points,
//! indexed `0..k` (upper, left to right) followed by `k..k+l` (lower, left
//! to right). Block labels are stored as a restricted growth string, so two
//! partitions are equal exactly when their label vectors are.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    upper: usize,
    lower: usize,
    labels: Vec<usize>,
}

/// All restricted growth strings of length `n`, i.e. all set partitions of
/// `0..n`, in lexicographic order.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn go(n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let limit = if cur.is_empty() { 0 } else { max + 1 };
        for b in 0..=limit {
            cur.push(b);
            go(n, cur, max.max(b), out);
            cur.pop();
        }
    }
    go(n, &mut cur, 0, &mut out);
    out
}

fn normalize_labels(raw: &[usize]) -> Vec<usize> {
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    raw.iter()
        .map(|x| {
            let next = seen.len();
            *seen.entry(*x).or_insert(next)
        })
        .collect()
}

impl Partition {
    /// Builds a partition from arbitrary block labels, one per point.
    pub fn from_labels(upper: usize, lower: usize, labels: &[usize]) -> Result<Self> {
        if labels.len() != upper + lower {
            return Err(Error::InvalidPartition(format!(
                "{} labels for {} points",
                labels.len(),
                upper + lower
            )));
        }
        Ok(Partition { upper, lower, labels: normalize_labels(labels) })
    }

    /// Builds a partition from explicit blocks of point indices.
    pub fn from_blocks(upper: usize, lower: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let n = upper + lower;
        let mut labels = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &p in block {
                if p >= n {
                    return Err(Error::InvalidPartition(format!("point {p} out of range 0..{n}")));
                }
                if labels[p] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("point {p} in two blocks")));
                }
                labels[p] = b;
            }
        }
        if let Some(p) = labels.iter().position(|&x| x == usize::MAX) {
            return Err(Error::InvalidPartition(format!("point {p} not covered")));
        }
        Partition::from_labels(upper, lower, &labels)
    }

    pub fn empty() -> Self {
        Partition { upper: 0, lower: 0, labels: Vec::new() }
    }

    /// Every point in its own block.
    pub fn singletons(upper: usize, lower: usize) -> Self {
        Partition { upper, lower, labels: (0..upper + lower).collect() }
    }

    /// All points in one block.
    pub fn one_block(upper: usize, lower: usize) -> Self {
        Partition { upper, lower, labels: vec![0; upper + lower] }
    }

    pub fn identity() -> Self {
        Partition::one_block(1, 1)
    }

    pub fn pair() -> Self {
        Partition::one_block(0, 2)
    }

    pub fn singleton() -> Self {
        Partition::one_block(0, 1)
    }

    pub fn fourblock() -> Self {
        Partition::one_block(0, 4)
    }

    /// The one-block partition in `P(2, 2)`.
    pub fn connecter() -> Self {
        Partition::one_block(2, 2)
    }

    /// `{u1}{l1}` in `P(1, 1)`.
    pub fn disconnecter() -> Self {
        Partition::singletons(1, 1)
    }

    /// `{u1 l2}{u2 l1}`.
    pub fn crossing() -> Self {
        Partition { upper: 2, lower: 2, labels: vec![0, 1, 1, 0] }
    }

    /// `{u1 l1}{u2 l2}`, the identity on two points.
    pub fn nested() -> Self {
        Partition { upper: 2, lower: 2, labels: vec![0, 1, 0, 1] }
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    pub fn lower(&self) -> usize {
        self.lower
    }

    pub fn points(&self) -> usize {
        self.upper + self.lower
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, point: usize) -> usize {
        self.labels[point]
    }

    pub fn block_count(&self) -> usize {
        self.labels.iter().max().map_or(0, |m| m + 1)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (p, &b) in self.labels.iter().enumerate() {
            blocks[b].push(p);
        }
        blocks
    }

    /// Places `other` to the right of `self`.
    pub fn tensor(&self, other: &Partition) -> Partition {
        let shift = self.block_count();
        let mut labels = Vec::with_capacity(self.points() + other.points());
        labels.extend_from_slice(&self.labels[..self.upper]);
        labels.extend(other.labels[..other.upper].iter().map(|b| b + shift));
        labels.extend_from_slice(&self.labels[self.upper..]);
        labels.extend(other.labels[other.upper..].iter().map(|b| b + shift));
        Partition {
            upper: self.upper + other.upper,
            lower: self.lower + other.lower,
            labels: normalize_labels(&labels),
        }
    }

    /// Stacks `q` below `p` (so `p` acts first) and returns the glued
    /// partition together with the number of closed middle components.
    pub fn glue(q: &Partition, p: &Partition) -> Result<(Partition, usize)> {
        if p.lower != q.upper {
            return Err(Error::ArityMismatch { left: q.upper, right: p.lower });
        }
        let bp = p.block_count();
        let bq = q.block_count();
        let mut uf = UnionFind::new(bp + bq);
        for i in 0..p.lower {
            uf.union(p.labels[p.upper + i], bp + q.labels[i]);
        }
        let mut labels = Vec::with_capacity(p.upper + q.lower);
        for i in 0..p.upper {
            labels.push(uf.find(p.labels[i]));
        }
        for j in 0..q.lower {
            labels.push(uf.find(bp + q.labels[q.upper + j]));
        }
        let mut roots: Vec<usize> = (0..bp + bq).map(|x| uf.find(x)).collect();
        roots.sort_unstable();
        roots.dedup();
        let loops = roots.iter().filter(|r| !labels.contains(r)).count();
        Ok((
            Partition { upper: p.upper, lower: q.lower, labels: normalize_labels(&labels) },
            loops,
        ))
    }

    /// Reflects the picture, swapping the two rows.
    pub fn involution(&self) -> Partition {
        let mut labels = self.labels[self.upper..].to_vec();
        labels.extend_from_slice(&self.labels[..self.upper]);
        Partition { upper: self.lower, lower: self.upper, labels: normalize_labels(&labels) }
    }

    /// Moves the rightmost lower point to the right end of the upper row.
    pub fn rotate_right(&self) -> Result<Partition> {
        if self.lower == 0 {
            return Err(Error::EmptyRotation("lower"));
        }
        let n = self.points();
        let mut labels = self.labels[..self.upper].to_vec();
        labels.push(self.labels[n - 1]);
        labels.extend_from_slice(&self.labels[self.upper..n - 1]);
        Ok(Partition {
            upper: self.upper + 1,
            lower: self.lower - 1,
            labels: normalize_labels(&labels),
        })
    }

    /// Moves the leftmost upper point to the left end of the lower row.
    pub fn rotate_left(&self) -> Result<Partition> {
        if self.upper == 0 {
            return Err(Error::EmptyRotation("upper"));
        }
        let mut labels = self.labels[1..self.upper].to_vec();
        labels.push(self.labels[0]);
        labels.extend_from_slice(&self.labels[self.upper..]);
        Ok(Partition {
            upper: self.upper - 1,
            lower: self.lower + 1,
            labels: normalize_labels(&labels),
        })
    }

    /// Labels read around the boundary circle: upper row right to left, then
    /// lower row left to right.
    pub fn cyclic_labels(&self) -> Vec<usize> {
        let mut seq: Vec<usize> = self.labels[..self.upper].iter().rev().copied().collect();
        seq.extend_from_slice(&self.labels[self.upper..]);
        seq
    }

    pub fn is_noncrossing(&self) -> bool {
        let seq = self.cyclic_labels();
        let n = seq.len();
        for a in 0..n {
            for b in a + 1..n {
                if seq[b] == seq[a] {
                    continue;
                }
                for c in b + 1..n {
                    if seq[c] != seq[a] {
                        continue;
                    }
                    if seq[c + 1..].contains(&seq[b]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// True when every block of `self` lies inside a block of `coarse`.
    pub fn refines(&self, coarse: &Partition) -> bool {
        if self.upper != coarse.upper || self.lower != coarse.lower {
            return false;
        }
        let mut image = vec![usize::MAX; self.block_count()];
        for (p, &b) in self.labels.iter().enumerate() {
            let c = coarse.labels[p];
            if image[b] == usize::MAX {
                image[b] = c;
            } else if image[b] != c {
                return false;
            }
        }
        true
    }

    /// All partitions obtained by merging blocks, including `self`.
    pub fn coarsenings(&self) -> Vec<Partition> {
        set_partitions(self.block_count())
            .into_iter()
            .map(|merge| {
                let labels: Vec<usize> = self.labels.iter().map(|&b| merge[b]).collect();
                Partition { upper: self.upper, lower: self.lower, labels: normalize_labels(&labels) }
            })
            .collect()
    }

    /// Every partition of the given shape.
    pub fn all(upper: usize, lower: usize) -> Vec<Partition> {
        set_partitions(upper + lower)
            .into_iter()
            .map(|labels| Partition { upper, lower, labels })
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.points() == 0 {
            return write!(f, "{{}}");
        }
        for block in self.blocks() {
            let names: Vec<String> = block
                .iter()
                .map(|&p| {
                    if p < self.upper {
                        format!("u{}", p + 1)
                    } else {
                        format!("l{}", p - self.upper + 1)
                    }
                })
                .collect();
            write!(f, "{{{}}}", names.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({},{}){}", self.upper, self.lower, self)
    }
}

#[derive(Serialize, Deserialize)]
struct PartitionJson {
    upper: usize,
    lower: usize,
    blocks: Vec<Vec<usize>>,
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PartitionJson { upper: self.upper, lower: self.lower, blocks: self.blocks() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PartitionJson::deserialize(d)?;
        Partition::from_blocks(j.upper, j.lower, &j.blocks).map_err(serde::de::Error::custom)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    /// Links the larger root under the smaller one.
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Möbius function of the merge order, computed from its defining
/// recursion over the interval `[p, q]`.
pub fn mobius(p: &Partition, q: &Partition) -> Result<Scalar> {
    if !p.refines(q) {
        return Err(Error::NotCoarsening { fine: p.to_string(), coarse: q.to_string() });
    }
    let interval: Vec<Partition> = p.coarsenings().into_iter().filter(|r| r.refines(q)).collect();
    let row = mobius_over(p, interval);
    Ok(row[q].clone())
}

/// `mu(p, q)` for every coarsening `q` of `p`.
pub fn mobius_row(p: &Partition) -> BTreeMap<Partition, Scalar> {
    mobius_over(p, p.coarsenings())
}

fn mobius_over(p: &Partition, mut interval: Vec<Partition>) -> BTreeMap<Partition, Scalar> {
    interval.sort_by_key(|r| std::cmp::Reverse(r.block_count()));
    let mut done: Vec<(Partition, Scalar)> = Vec::with_capacity(interval.len());
    for r in interval {
        let value = if &r == p {
            Scalar::one()
        } else {
            -done.iter().filter(|(s, _)| s.refines(&r)).map(|(_, m)| m).sum::<Scalar>()
        };
        done.push((r, value));
    }
    done.into_iter().collect()
}

/// Product formula for the Möbius function: each block of `q` that merges
/// `n` blocks of `p` contributes `(-1)^(n-1) (n-1)!`.
pub fn mobius_closed_form(p: &Partition, q: &Partition) -> Result<Scalar> {
    if !p.refines(q) {
        return Err(Error::NotCoarsening { fine: p.to_string(), coarse: q.to_string() });
    }
    let mut merged = vec![std::collections::BTreeSet::new(); q.block_count()];
    for (pt, &b) in q.labels.iter().enumerate() {
        merged[b].insert(p.labels[pt]);
    }
    let mut acc = Scalar::one();
    for set in merged {
        let n = set.len() as u32;
        let mut f = Scalar::factorial(n - 1);
        if n % 2 == 0 {
            f = -f;
        }
        acc *= &f;
    }
    Ok(acc)
}

/// Formal linear combination of partitions of one fixed shape.
#[derive(Clone, PartialEq, Eq)]
pub struct PartitionVector {
    upper: usize,
    lower: usize,
    terms: BTreeMap<Partition, Scalar>,
}

impl PartitionVector {
    pub fn zero(upper: usize, lower: usize) -> Self {
        PartitionVector { upper, lower, terms: BTreeMap::new() }
    }

    pub fn from_partition(p: Partition) -> Self {
        let mut v = PartitionVector::zero(p.upper, p.lower);
        v.terms.insert(p, Scalar::one());
        v
    }

    pub fn from_terms(
        upper: usize,
        lower: usize,
        terms: impl IntoIterator<Item = (Scalar, Partition)>,
    ) -> Result<Self> {
        let mut v = PartitionVector::zero(upper, lower);
        for (c, p) in terms {
            v.add_term(c, p)?;
        }
        Ok(v)
    }

    pub fn add_term(&mut self, coeff: Scalar, p: Partition) -> Result<()> {
        if p.upper != self.upper || p.lower != self.lower {
            return Err(Error::DimensionMismatch(format!(
                "adding a term of shape ({},{}) to a vector of shape ({},{})",
                p.upper, p.lower, self.upper, self.lower
            )));
        }
        if coeff.is_zero() {
            return Ok(());
        }
        let entry = self.terms.entry(p);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
        Ok(())
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    pub fn lower(&self) -> usize {
        self.lower
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Partition) -> Scalar {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Scalar)> {
        self.terms.iter()
    }

    pub fn scale(&self, s: &Scalar) -> PartitionVector {
        if s.is_zero() {
            return PartitionVector::zero(self.upper, self.lower);
        }
        PartitionVector {
            upper: self.upper,
            lower: self.lower,
            terms: self.terms.iter().map(|(p, c)| (p.clone(), c * s)).collect(),
        }
    }

    pub fn add(&self, other: &PartitionVector) -> Result<PartitionVector> {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(c.clone(), p.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PartitionVector) -> Result<PartitionVector> {
        self.add(&other.scale(&Scalar::integer(-1)))
    }

    pub fn tensor(&self, other: &PartitionVector) -> PartitionVector {
        let mut out = PartitionVector::zero(self.upper + other.upper, self.lower + other.lower);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                out.add_term(a * b, p.tensor(q)).expect("shapes agree");
            }
        }
        out
    }

    /// `q` after `p`; every closed middle component contributes a factor `n`.
    pub fn compose(q: &PartitionVector, p: &PartitionVector, n: &Scalar) -> Result<PartitionVector> {
        if p.lower != q.upper {
            return Err(Error::ArityMismatch { left: q.upper, right: p.lower });
        }
        let mut out = PartitionVector::zero(p.upper, q.lower);
        for (pp, a) in &p.terms {
            for (qq, b) in &q.terms {
                let (r, loops) = Partition::glue(qq, pp)?;
                let factor = &(a * b) * &n.pow(loops as i32)?;
                out.add_term(factor, r)?;
            }
        }
        Ok(out)
    }

    pub fn involution(&self) -> PartitionVector {
        self.map_terms(self.lower, self.upper, |p| Ok(p.involution())).expect("total map")
    }

    pub fn rotate_right(&self) -> Result<PartitionVector> {
        if self.lower == 0 {
            return Err(Error::EmptyRotation("lower"));
        }
        self.map_terms(self.upper + 1, self.lower - 1, Partition::rotate_right)
    }

    pub fn rotate_left(&self) -> Result<PartitionVector> {
        if self.upper == 0 {
            return Err(Error::EmptyRotation("upper"));
        }
        self.map_terms(self.upper - 1, self.lower + 1, Partition::rotate_left)
    }

    fn map_terms(
        &self,
        upper: usize,
        lower: usize,
        f: impl Fn(&Partition) -> Result<Partition>,
    ) -> Result<PartitionVector> {
        let mut out = PartitionVector::zero(upper, lower);
        for (p, c) in &self.terms {
            out.add_term(c.clone(), f(p)?)?;
        }
        Ok(out)
    }
}

impl From<Partition> for PartitionVector {
    fn from(p: Partition) -> Self {
        PartitionVector::from_partition(p)
    }
}

impl fmt::Display for PartitionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(p, c)| format!("({c}){p}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for PartitionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V({},{})[{}]", self.upper, self.lower, self)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: Scalar,
    partition: Partition,
}

#[derive(Serialize, Deserialize)]
struct VectorJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    upper: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lower: Option<usize>,
    terms: Vec<TermJson>,
}

impl Serialize for PartitionVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let shape = self.terms.is_empty().then_some((self.upper, self.lower));
        VectorJson {
            upper: shape.map(|x| x.0),
            lower: shape.map(|x| x.1),
            terms: self
                .terms
                .iter()
                .map(|(p, c)| TermJson { coeff: c.clone(), partition: p.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PartitionVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = VectorJson::deserialize(d)?;
        let (upper, lower) = match (j.upper, j.lower, j.terms.first()) {
            (Some(u), Some(l), _) => (u, l),
            (_, _, Some(t)) => (t.partition.upper, t.partition.lower),
            _ => return Err(D::Error::custom("empty vector without a shape")),
        };
        PartitionVector::from_terms(upper, lower, j.terms.into_iter().map(|t| (t.coeff, t.partition)))
            .map_err(D::Error::custom)
    }
}

/// The projection-type basis element: `sum over q >= p of mu(p, q) q`.
pub fn hat(p: &Partition) -> PartitionVector {
    let mut v = PartitionVector::zero(p.upper, p.lower);
    for (q, m) in mobius_row(p) {
        v.add_term(m, q).expect("same shape");
    }
    v
}

/// `id - (2/n) {u1}{l1}`.
pub fn tau(n: &Scalar) -> Result<PartitionVector> {
    if n.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let coeff = -(&Scalar::integer(2) / n);
    PartitionVector::from_terms(
        1,
        1,
        [(Scalar::one(), Partition::identity()), (coeff, Partition::disconnecter())],
    )
}

/// `tau` tensored with itself `m` times (the empty product is `P(0,0)`'s unit).
pub fn tau_power(m: usize, n: &Scalar) -> Result<PartitionVector> {
    let t = tau(n)?;
    let mut acc = PartitionVector::from_partition(Partition::empty());
    for _ in 0..m {
        acc = acc.tensor(&t);
    }
    Ok(acc)
}

/// Sandwiches `x` between tensor powers of `tau` on both rows.
pub fn conjugate_by_tau(x: &PartitionVector, n: &Scalar) -> Result<PartitionVector> {
    let top = tau_power(x.upper(), n)?;
    let bottom = tau_power(x.lower(), n)?;
    let inner = PartitionVector::compose(x, &top, n)?;
    PartitionVector::compose(&bottom, &inner, n)
}

/// The named generating elements at parameter `n`.
#[derive(Clone, Debug)]
pub struct Generators {
    pub pair: PartitionVector,
    pub identity: PartitionVector,
    pub crossing: PartitionVector,
    pub fourblock: PartitionVector,
    pub singleton: PartitionVector,
    pub tau: PartitionVector,
    pub connecter: PartitionVector,
    pub nested: PartitionVector,
    /// `-crossing + 2 connecter`.
    pub crossing_relation: PartitionVector,
}

pub fn generators(n: &Scalar) -> Result<Generators> {
    let crossing_relation = PartitionVector::from_terms(
        2,
        2,
        [
            (Scalar::integer(-1), Partition::crossing()),
            (Scalar::integer(2), Partition::connecter()),
        ],
    )?;
    Ok(Generators {
        pair: Partition::pair().into(),
        identity: Partition::identity().into(),
        crossing: Partition::crossing().into(),
        fourblock: Partition::fourblock().into(),
        singleton: Partition::singleton().into(),
        tau: tau(n)?,
        connecter: Partition::connecter().into(),
        nested: Partition::nested().into(),
        crossing_relation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn n(x: i64) -> Scalar {
        Scalar::integer(x)
    }

    fn p(upper: usize, lower: usize, labels: &[usize]) -> Partition {
        Partition::from_labels(upper, lower, labels).unwrap()
    }

    #[test]
    fn bell_numbers() {
        let bell: Vec<usize> = (0..8).map(|k| set_partitions(k).len()).collect();
        assert_eq!(bell, vec![1, 1, 2, 5, 15, 52, 203, 877]);
    }

    #[test]
    fn labels_are_normalized() {
        let a = p(1, 2, &[7, 3, 7]);
        assert_eq!(a.labels(), &[0, 1, 0]);
        assert_eq!(a, p(1, 2, &[0, 5, 0]));
        assert!(Partition::from_blocks(1, 1, &[vec![0]]).is_err());
        assert!(Partition::from_blocks(1, 1, &[vec![0, 1], vec![1]]).is_err());
        assert_eq!(Partition::from_blocks(1, 1, &[vec![1], vec![0]]).unwrap(), Partition::disconnecter());
    }

    #[test]
    fn pair_composed_with_its_reflection_closes_a_loop() {
        let pair: PartitionVector = Partition::pair().into();
        let cap = pair.involution();
        let r = PartitionVector::compose(&cap, &pair, &n(4)).unwrap();
        assert_eq!(r, PartitionVector::from_partition(Partition::empty()).scale(&n(4)));
        let (_, loops) = Partition::glue(&Partition::pair().involution(), &Partition::pair()).unwrap();
        assert_eq!(loops, 1);
    }

    #[test]
    fn crossing_squares_to_identity() {
        let c: PartitionVector = Partition::crossing().into();
        let r = PartitionVector::compose(&c, &c, &n(3)).unwrap();
        assert_eq!(r, Partition::nested().into());
    }

    #[test]
    fn rotating_the_pair_gives_the_identity() {
        assert_eq!(Partition::pair().rotate_right().unwrap(), Partition::identity());
        assert_eq!(Partition::identity().rotate_left().unwrap(), Partition::pair());
        assert_eq!(Partition::singleton().rotate_left(), Err(Error::EmptyRotation("upper")));
    }

    #[test]
    fn tau_is_an_involution() {
        for k in [1, 2, 3, 4, 7] {
            let t = tau(&n(k)).unwrap();
            let tt = PartitionVector::compose(&t, &t, &n(k)).unwrap();
            assert_eq!(tt, Partition::identity().into(), "N = {k}");
        }
        assert_eq!(tau(&Scalar::zero()).unwrap_err(), Error::ZeroParameter);
    }

    #[test]
    fn conjugation_is_an_involution() {
        let x: PartitionVector = Partition::fourblock().into();
        let once = conjugate_by_tau(&x, &n(5)).unwrap();
        assert_eq!(once.len(), 12);
        assert_eq!(conjugate_by_tau(&once, &n(5)).unwrap(), x);
    }

    #[test]
    fn mobius_on_small_intervals() {
        let s3 = Partition::singletons(0, 3);
        assert_eq!(mobius(&s3, &Partition::one_block(0, 3)).unwrap(), n(2));
        let s4 = Partition::singletons(0, 4);
        assert_eq!(mobius(&s4, &Partition::one_block(0, 4)).unwrap(), n(-6));
        assert_eq!(mobius(&s4, &p(0, 4, &[0, 0, 1, 1])).unwrap(), n(1));
        assert!(mobius(&Partition::one_block(0, 3), &s3).is_err());
    }

    #[test]
    fn hat_of_three_singletons() {
        let h = hat(&Partition::singletons(0, 3));
        let expected = PartitionVector::from_terms(
            0,
            3,
            [
                (n(1), p(0, 3, &[0, 1, 2])),
                (n(-1), p(0, 3, &[0, 0, 1])),
                (n(-1), p(0, 3, &[0, 1, 0])),
                (n(-1), p(0, 3, &[0, 1, 1])),
                (n(2), p(0, 3, &[0, 0, 0])),
            ],
        )
        .unwrap();
        assert_eq!(h, expected);
        assert_eq!(hat(&Partition::singletons(0, 4)).len(), 15);
    }

    #[test]
    fn noncrossing_counts_are_catalan() {
        // Brute force: test every partition of n points.
        let counts: Vec<usize> = (0..=7)
            .map(|k| Partition::all(0, k).into_iter().filter(Partition::is_noncrossing).count())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42, 132, 429]);
        assert!(!Partition::crossing().is_noncrossing());
        assert!(Partition::nested().is_noncrossing());
    }

    #[test]
    fn json_shapes() {
        let j = serde_json::to_string(&Partition::crossing()).unwrap();
        assert_eq!(j, r#"{"upper":2,"lower":2,"blocks":[[0,3],[1,2]]}"#);
        let back: Partition = serde_json::from_str(&j).unwrap();
        assert_eq!(back, Partition::crossing());
        let t = tau(&n(4)).unwrap();
        let j = serde_json::to_string(&t).unwrap();
        assert_eq!(
            j,
            r#"{"terms":[{"coeff":"1","partition":{"upper":1,"lower":1,"blocks":[[0,1]]}},{"coeff":"-1/2","partition":{"upper":1,"lower":1,"blocks":[[0],[1]]}}]}"#
        );
        let back: PartitionVector = serde_json::from_str(&j).unwrap();
        assert_eq!(back, t);
        let z = PartitionVector::zero(2, 1);
        let back: PartitionVector = serde_json::from_str(&serde_json::to_string(&z).unwrap()).unwrap();
        assert_eq!(back, z);
    }

    fn partition_strategy(max_points: usize) -> impl Strategy<Value = Partition> {
        (0..=max_points)
            .prop_flat_map(|total| (0..=total, proptest::collection::vec(0usize..4, total)))
            .prop_map(|(upper, raw)| {
                let lower = raw.len() - upper;
                Partition::from_labels(upper, lower, &raw).unwrap()
            })
    }

    proptest! {
        #[test]
        fn involution_is_an_involution(a in partition_strategy(7)) {
            prop_assert_eq!(a.involution().involution(), a);
        }

        #[test]
        fn a_full_turn_of_rotations_is_the_identity(a in partition_strategy(7)) {
            let (k, l) = (a.upper(), a.lower());
            let mut x = a.clone();
            for _ in 0..l {
                x = x.rotate_right().unwrap();
            }
            for _ in 0..k + l {
                x = x.rotate_left().unwrap();
            }
            for _ in 0..k {
                x = x.rotate_right().unwrap();
            }
            prop_assert_eq!(x, a.clone());
            if k > 0 {
                let y = a.rotate_left().unwrap();
                prop_assert_eq!(normalize_labels(&y.cyclic_labels()), normalize_labels(&a.cyclic_labels()));
            }
        }

        #[test]
        fn mobius_recursion_matches_product_formula(a in partition_strategy(5)) {
            for q in a.coarsenings() {
                prop_assert_eq!(mobius(&a, &q).unwrap(), mobius_closed_form(&a, &q).unwrap());
            }
        }

        #[test]
        fn mobius_inversion(a in partition_strategy(5)) {
            let mut total = PartitionVector::zero(a.upper(), a.lower());
            for q in a.coarsenings() {
                total = total.add(&hat(&q)).unwrap();
            }
            prop_assert_eq!(total, PartitionVector::from_partition(a));
        }

        #[test]
        fn composition_is_associative(
            a in partition_strategy(4), b in partition_strategy(4), c in partition_strategy(4), nn in 1i64..6
        ) {
            // Reshape b and c so the arities line up.
            let b = Partition::from_labels(a.lower(), b.points(), &[a.labels()[a.upper()..].to_vec(), b.labels().to_vec()].concat()).unwrap();
            let c = Partition::from_labels(b.lower(), c.points(), &[b.labels()[b.upper()..].to_vec(), c.labels().to_vec()].concat()).unwrap();
            let (a, b, c): (PartitionVector, PartitionVector, PartitionVector) = (a.into(), b.into(), c.into());
            let nn = n(nn);
            let left = PartitionVector::compose(&c, &PartitionVector::compose(&b, &a, &nn).unwrap(), &nn).unwrap();
            let right = PartitionVector::compose(&PartitionVector::compose(&c, &b, &nn).unwrap(), &a, &nn).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
