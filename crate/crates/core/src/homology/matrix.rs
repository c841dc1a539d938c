//! Dense integer matrices over any checked integer scalar.

use std::fmt;
use std::hash::Hash;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed};

use crate::error::{Error, Result};

/// Integer scalars usable in exact elimination. Arithmetic goes through the
/// checked operations so fixed-width types report overflow instead of wrapping.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + Eq
    + Ord
    + Hash
    + Signed
    + Integer
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + From<i64>
    + Into<BigInt>
    + TryFrom<BigInt>
{
    fn add_c(&self, other: &Self) -> Result<Self> {
        self.checked_add(other).ok_or(Error::Overflow)
    }

    fn sub_c(&self, other: &Self) -> Result<Self> {
        self.checked_sub(other).ok_or(Error::Overflow)
    }

    fn mul_c(&self, other: &Self) -> Result<Self> {
        self.checked_mul(other).ok_or(Error::Overflow)
    }

    /// `self - q·other`
    fn sub_mul_c(&self, q: &Self, other: &Self) -> Result<Self> {
        self.sub_c(&q.mul_c(other)?)
    }

    fn to_big(&self) -> BigInt {
        self.clone().into()
    }

    fn from_big(b: &BigInt) -> Result<Self> {
        Self::try_from(b.clone()).map_err(|_| Error::Overflow)
    }
}

impl<T> Scalar for T where
    T: Clone
        + fmt::Debug
        + fmt::Display
        + Eq
        + Ord
        + Hash
        + Signed
        + Integer
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + From<i64>
        + Into<BigInt>
        + TryFrom<BigInt>
{
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from rows of equal length; `cols` is used when there are no rows.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Invalid(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>], cols: usize) -> Result<Self> {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| T::from(x)).collect()).collect(),
            cols,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != other.rows {
            return Err(Error::DegreeMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].add_c(&a.mul_c(b)?)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, x: &[T]) -> Result<Vec<T>> {
        assert_eq!(x.len(), self.rows, "vector length must match row count");
        let mut out = vec![T::zero(); self.cols];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let a = &self[(i, j)];
                if !a.is_zero() {
                    *o = o.add_c(&xi.mul_c(a)?)?;
                }
            }
        }
        Ok(out)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] -= q · row[src]`
    pub fn row_sub_mul(&mut self, dst: usize, q: &T, src: usize) -> Result<()> {
        if q.is_zero() {
            return Ok(());
        }
        for j in 0..self.cols {
            let s = self.data[src * self.cols + j].clone();
            if !s.is_zero() {
                let d = &mut self.data[dst * self.cols + j];
                *d = d.sub_mul_c(q, &s)?;
            }
        }
        Ok(())
    }

    /// `col[dst] -= q · col[src]`
    pub fn col_sub_mul(&mut self, dst: usize, q: &T, src: usize) -> Result<()> {
        if q.is_zero() {
            return Ok(());
        }
        for i in 0..self.rows {
            let s = self.data[i * self.cols + src].clone();
            if !s.is_zero() {
                let d = &mut self.data[i * self.cols + dst];
                *d = d.sub_mul_c(q, &s)?;
            }
        }
        Ok(())
    }

    pub fn negate_row(&mut self, i: usize) {
        for x in self.row_mut(i) {
            *x = -x.clone();
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let x = &mut self.data[i * self.cols + j];
            *x = -x.clone();
        }
    }

    pub fn to_big(&self) -> Matrix<BigInt> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.to_big()).collect(),
        }
    }

    pub fn convert<U: Scalar>(&self) -> Result<Matrix<U>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| U::from_big(&x.to_big())).collect::<Result<_>>()?,
        })
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.data[i * self.cols..(i + 1) * self.cols]
                .iter()
                .map(|x| x.to_string())
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_and_transpose() {
        let a = Matrix::<i64>::from_i64_rows(&[vec![1, 2], vec![3, 4]], 2).unwrap();
        let b = a.mul(&Matrix::identity(2)).unwrap();
        assert_eq!(a, b);
        let c = a.mul(&a.transpose()).unwrap();
        assert_eq!(c.to_rows(), vec![vec![5, 11], vec![11, 25]]);
        assert_eq!(a.left_apply(&[1, 1]).unwrap(), vec![4, 6]);
    }

    #[test]
    fn overflow_is_reported() {
        let a = Matrix::<i64>::from_i64_rows(&[vec![i64::MAX]], 1).unwrap();
        assert_eq!(a.mul(&a), Err(Error::Overflow));
        let big = a.to_big();
        assert!(big.mul(&big).is_ok());
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(Matrix::<i64>::from_i64_rows(&[vec![1], vec![1, 2]], 1).is_err());
    }
}
