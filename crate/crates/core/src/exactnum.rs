//! Exact rational scalars and small dense matrices over them.
//!
//! Everything downstream compares values with `==`; there is no floating
//! point anywhere in the crate.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An arbitrary-precision rational number kept in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Scalar(BigRational::new(numer.into(), denom)))
    }

    /// Shorthand for small literals; panics on a zero denominator.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        Scalar::new(numer, denom).expect("nonzero denominator")
    }

    pub fn integer(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(&self.0 / &rhs.0))
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, exp: i32) -> Result<Self> {
        if exp < 0 {
            return self.recip()?.pow(-exp);
        }
        let mut acc = Scalar::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        Ok(acc)
    }

    pub fn factorial(n: u32) -> Self {
        let mut acc = BigInt::one();
        for i in 2..=n {
            acc *= i;
        }
        Scalar(BigRational::from_integer(acc))
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::integer(n)
    }
}

impl From<usize> for Scalar {
    fn from(n: usize) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar(BigRational::from_integer(n))
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar(r)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::ScalarParse(s.to_string());
        match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Scalar::new(n, d)
            }
            None => {
                let n: BigInt = t.parse().map_err(|_| bad())?;
                Ok(Scalar::from(n))
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(&self.0 $op &rhs.0)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0 $op rhs.0)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0 $op &rhs.0)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(&self.0 $op rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

/// Panics on division by zero, like integer division; use
/// [`Scalar::checked_div`] when the divisor is not known to be nonzero.
impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

/// Dense row-major matrix of scalars.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Scalar> {
        self.data
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for m in 0..self.cols {
                let a = self.get(r, m);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(m, c);
                    if !b.is_zero() {
                        *out.entry_mut(r, c) += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product with the left factor's indices most significant.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..rhs.rows {
                    for c2 in 0..rhs.cols {
                        let b = rhs.get(r2, c2);
                        if !b.is_zero() {
                            out.set(r1 * rhs.rows + r2, c1 * rhs.cols + c2, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_same_shape(rhs)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_same_shape(rhs)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// Entrywise product.
    pub fn schur(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_same_shape(rhs)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a * b).collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(i, v)| (i / self.cols, i % self.cols, v))
    }

    fn check_same_shape(&self, rhs: &Matrix) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }
}

/// Row-reduces `rows` in place and returns the pivot columns.
fn echelon(rows: &mut Vec<Vec<Scalar>>, width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..width {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].recip().expect("pivot is nonzero");
        let support: Vec<usize> = (col..width).filter(|&j| !rows[rank][j].is_zero()).collect();
        for j in &support {
            rows[rank][*j] *= &inv;
        }
        for r in 0..rows.len() {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for &j in &support {
                let delta = &f * &rows[rank][j];
                rows[r][j] -= &delta;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    pivots
}

/// Exact rank of a family of equal-length vectors.
pub fn rank(vectors: &[Vec<Scalar>]) -> Result<usize> {
    let width = vectors.first().map_or(0, Vec::len);
    if vectors.iter().any(|v| v.len() != width) {
        return Err(Error::DimensionMismatch("vectors of different lengths".into()));
    }
    let mut rows = vectors.to_vec();
    Ok(echelon(&mut rows, width).len())
}

pub fn matrix_rank(m: &Matrix) -> usize {
    let mut rows: Vec<Vec<Scalar>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    echelon(&mut rows, m.cols()).len()
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace(m: &Matrix) -> Vec<Vec<Scalar>> {
    let mut rows: Vec<Vec<Scalar>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    let pivots = echelon(&mut rows, m.cols());
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Scalar::zero(); m.cols()];
            x[f] = Scalar::one();
            for (row, &pc) in rows.iter().zip(&pivots) {
                x[pc] = -&row[f];
            }
            x
        })
        .collect()
}

pub fn dot(u: &[Scalar], v: &[Scalar]) -> Scalar {
    u.iter()
        .zip(v)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .map(|(a, b)| a * b)
        .sum()
}

/// Matrix of pairwise inner products.
pub fn gram(vectors: &[Vec<Scalar>]) -> Result<Matrix> {
    let width = vectors.first().map_or(0, Vec::len);
    if vectors.iter().any(|v| v.len() != width) {
        return Err(Error::DimensionMismatch("vectors of different lengths".into()));
    }
    let n = vectors.len();
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let d = dot(&vectors[i], &vectors[j]);
            g.set(j, i, d.clone());
            g.set(i, j, d);
        }
    }
    Ok(g)
}

pub fn determinant(m: &Matrix) -> Result<Scalar> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
    }
    let n = m.rows();
    let mut a: Vec<Vec<Scalar>> = (0..n).map(|r| m.row(r).to_vec()).collect();
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Ok(Scalar::zero());
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pivot;
            for j in col..n {
                let delta = &f * &a[col][j];
                a[r][j] -= &delta;
            }
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn lowest_terms_and_display() {
        assert_eq!(s(6, -4).to_string(), "-3/2");
        assert_eq!(s(-6, -3).to_string(), "2");
        assert_eq!("4/-8".parse::<Scalar>().unwrap(), s(-1, 2));
        assert_eq!("7".parse::<Scalar>().unwrap(), Scalar::integer(7));
        assert!(Scalar::new(1, 0).is_err());
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
    }

    #[test]
    fn powers_and_factorial() {
        assert_eq!(s(2, 3).pow(-2).unwrap(), s(9, 4));
        assert!(Scalar::zero().pow(-1).is_err());
        assert_eq!(Scalar::factorial(5), Scalar::integer(120));
        assert_eq!(Scalar::factorial(0), Scalar::one());
    }

    #[test]
    fn json_round_trip() {
        let v = vec![s(1, 3), s(-5, 1)];
        let j = serde_json::to_string(&v).unwrap();
        assert_eq!(j, r#"["1/3","-5"]"#);
        let back: Vec<Scalar> = serde_json::from_str(&j).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn rank_of_examples() {
        let rows = vec![
            vec![s(1, 1), s(2, 1), s(3, 1)],
            vec![s(2, 1), s(4, 1), s(6, 1)],
            vec![s(0, 1), s(1, 2), s(1, 1)],
        ];
        assert_eq!(rank(&rows).unwrap(), 2);
        assert_eq!(rank(&[]).unwrap(), 0);
        let m = Matrix::from_rows(rows).unwrap();
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 1);
        for r in 0..3 {
            assert!(dot(m.row(r), &ns[0]).is_zero());
        }
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = Matrix::from_rows(vec![
            vec![s(2, 1), s(1, 2), s(0, 1)],
            vec![s(1, 1), s(3, 1), s(-1, 1)],
            vec![s(4, 1), s(0, 1), s(5, 3)],
        ])
        .unwrap();
        // 2(5 - 0) - 1/2(5/3 + 4) + 0
        assert_eq!(determinant(&m).unwrap(), s(10, 1) - s(17, 6));
    }

    fn small_scalar() -> impl Strategy<Value = Scalar> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Scalar::ratio(n, d))
    }

    proptest! {
        #[test]
        fn field_axioms(a in small_scalar(), b in small_scalar(), c in small_scalar()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&a - &a, Scalar::zero());
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
            prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
        }

        #[test]
        fn rank_invariant_under_scaling_and_permutation(
            rows in proptest::collection::vec(proptest::collection::vec(small_scalar(), 4), 0..5),
            factor in 1i64..5,
        ) {
            let r = rank(&rows).unwrap();
            let mut scaled: Vec<Vec<Scalar>> = rows
                .iter()
                .map(|v| v.iter().map(|x| x * &Scalar::integer(factor)).collect())
                .collect();
            scaled.reverse();
            prop_assert_eq!(rank(&scaled).unwrap(), r);
            prop_assert!(r <= rows.len().min(4));
            let g = gram(&rows).unwrap();
            prop_assert_eq!(matrix_rank(&g), r);
        }
    }
}
