//! Smith normal form with optional unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::{Matrix, Scalar};
use crate::error::{Error, Result};

/// Which transforms to accumulate.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Transforms {
    pub u: bool,
    pub v: bool,
    pub u_inv: bool,
    pub v_inv: bool,
}

impl Transforms {
    pub const NONE: Transforms = Transforms {
        u: false,
        v: false,
        u_inv: false,
        v_inv: false,
    };
    pub const ALL: Transforms = Transforms {
        u: true,
        v: true,
        u_inv: true,
        v_inv: true,
    };
    pub const V_BOTH: Transforms = Transforms {
        u: false,
        v: true,
        u_inv: false,
        v_inv: true,
    };
}

/// `U·A·V = D` with `D` diagonal; `diag` lists its nonzero entries, each
/// positive and dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm<T> {
    pub rows: usize,
    pub cols: usize,
    pub diag: Vec<T>,
    pub u: Option<Matrix<T>>,
    pub v: Option<Matrix<T>>,
    pub u_inv: Option<Matrix<T>>,
    pub v_inv: Option<Matrix<T>>,
}

impl<T: Scalar> SmithForm<T> {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Diagonal entries that are not 1.
    pub fn nontrivial(&self) -> Vec<T> {
        self.diag.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    /// The full `rows × cols` diagonal matrix.
    pub fn d_matrix(&self) -> Matrix<T> {
        let mut d = Matrix::zeros(self.rows, self.cols);
        for (i, x) in self.diag.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }

    pub fn to_big(&self) -> SmithForm<BigInt> {
        SmithForm {
            rows: self.rows,
            cols: self.cols,
            diag: self.diag.iter().map(|x| x.to_big()).collect(),
            u: self.u.as_ref().map(|m| m.to_big()),
            v: self.v.as_ref().map(|m| m.to_big()),
            u_inv: self.u_inv.as_ref().map(|m| m.to_big()),
            v_inv: self.v_inv.as_ref().map(|m| m.to_big()),
        }
    }
}

/// Smith form of an arbitrary-precision matrix with every transform.
pub fn smith_normal_form(a: &Matrix<BigInt>) -> SmithForm<BigInt> {
    smith(a, Transforms::ALL)
}

/// Tries fixed-width arithmetic first and redoes the elimination in
/// arbitrary precision if anything overflows.
pub fn smith(a: &Matrix<BigInt>, want: Transforms) -> SmithForm<BigInt> {
    if let Ok(small) = a.convert::<i64>() {
        if let Ok(s) = smith_with(&small, want) {
            return s.to_big();
        }
    }
    smith_with(a, want).expect("arbitrary precision elimination cannot overflow")
}

struct Elim<T> {
    a: Matrix<T>,
    u: Option<Matrix<T>>,
    v: Option<Matrix<T>>,
    u_inv: Option<Matrix<T>>,
    v_inv: Option<Matrix<T>>,
}

impl<T: Scalar> Elim<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap_rows(i, j);
        }
    }

    /// `row[dst] -= q·row[src]`
    fn row_op(&mut self, dst: usize, q: &T, src: usize) -> Result<()> {
        self.a.row_sub_mul(dst, q, src)?;
        if let Some(u) = &mut self.u {
            u.row_sub_mul(dst, q, src)?;
        }
        if let Some(ui) = &mut self.u_inv {
            // inverse of E = I - q·e_dst e_srcᵀ is I + q·e_dst e_srcᵀ, applied on the right
            ui.col_sub_mul(src, &-q.clone(), dst)?;
        }
        Ok(())
    }

    /// `col[dst] -= q·col[src]`
    fn col_op(&mut self, dst: usize, q: &T, src: usize) -> Result<()> {
        self.a.col_sub_mul(dst, q, src)?;
        if let Some(v) = &mut self.v {
            v.col_sub_mul(dst, q, src)?;
        }
        if let Some(vi) = &mut self.v_inv {
            vi.row_sub_mul(src, &-q.clone(), dst)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(u) = &mut self.u {
            u.negate_row(i);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.negate_col(i);
        }
    }
}

/// Smith form in the scalar type `T`; fails with `Overflow` for fixed-width
/// types when an intermediate value does not fit.
///
/// Pivots are chosen as the entry of smallest absolute value in the remaining
/// block, ties broken by row-major position.
pub fn smith_with<T: Scalar>(a: &Matrix<T>, want: Transforms) -> Result<SmithForm<T>> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut e = Elim {
        a: a.clone(),
        u: want.u.then(|| Matrix::identity(rows)),
        v: want.v.then(|| Matrix::identity(cols)),
        u_inv: want.u_inv.then(|| Matrix::identity(rows)),
        v_inv: want.v_inv.then(|| Matrix::identity(cols)),
    };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = smallest(&e.a, t..rows, t..cols) else {
            break;
        };
        e.swap_rows(t, pi);
        e.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !e.a[(i, t)].is_zero() {
                    let q = e.a[(i, t)].div_floor(&e.a[(t, t)]);
                    e.row_op(i, &q, t)?;
                    if !e.a[(i, t)].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !e.a[(t, j)].is_zero() {
                    let q = e.a[(t, j)].div_floor(&e.a[(t, t)]);
                    e.col_op(j, &q, t)?;
                    if !e.a[(t, j)].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // a smaller remainder appeared in the pivot row or column
                let (pi, pj) = smallest_cross(&e.a, t);
                e.swap_rows(t, pi);
                e.swap_cols(t, pj);
                continue;
            }
            // pivot row and column are clear; enforce divisibility
            let p = e.a[(t, t)].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !e.a[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => e.row_op(t, &-T::one(), i)?,
                None => break,
            }
        }
        if e.a[(t, t)].is_negative() {
            e.negate_row(t);
        }
        diag.push(e.a[(t, t)].clone());
        t += 1;
    }
    Ok(SmithForm {
        rows,
        cols,
        diag,
        u: e.u,
        v: e.v,
        u_inv: e.u_inv,
        v_inv: e.v_inv,
    })
}

fn smallest<T: Scalar>(
    a: &Matrix<T>,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                best = Some((i, j, ax));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Smallest nonzero entry in the pivot row or column of block `t`.
fn smallest_cross<T: Scalar>(a: &Matrix<T>, t: usize) -> (usize, usize) {
    let mut best: Option<(usize, usize, T)> = None;
    let cands = (t..a.rows()).map(|i| (i, t)).chain((t + 1..a.cols()).map(|j| (t, j)));
    for (i, j) in cands {
        let x = &a[(i, j)];
        if !x.is_zero() && best.as_ref().is_none_or(|(_, _, b)| x.abs() < *b) {
            best = Some((i, j, x.abs()));
        }
    }
    let (i, j, _) = best.expect("pivot cross is nonzero");
    (i, j)
}

/// Nonzero invariant factors (all of them, including ones).
pub fn invariant_factors(a: &Matrix<BigInt>) -> Vec<BigInt> {
    smith(a, Transforms::NONE).diag
}

/// Invariant factors of `ℤⁿ / rowspan(a)`: nontrivial torsion plus free rank.
pub fn cokernel(a: &Matrix<BigInt>) -> (Vec<BigInt>, usize) {
    let s = smith(a, Transforms::NONE);
    let torsion = s.diag.iter().filter(|d| !d.is_one()).cloned().collect();
    (torsion, a.cols() - s.rank())
}

/// `det` up to sign via the product of the diagonal; zero when singular.
pub fn abs_det(a: &Matrix<BigInt>) -> BigInt {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    let s = smith(a, Transforms::NONE);
    if s.rank() < a.rows() {
        return BigInt::zero();
    }
    s.diag.iter().fold(BigInt::one(), |acc, d| acc * d)
}

/// True if `x` lies in the row lattice described by `s` (needs `v`).
pub fn in_row_lattice(s: &SmithForm<BigInt>, x: &[BigInt]) -> Result<bool> {
    let v = s.v.as_ref().ok_or_else(|| Error::Invalid("row lattice test needs V".into()))?;
    let y = v.left_apply(x)?;
    Ok(y.iter().enumerate().all(|(i, yi)| match s.diag.get(i) {
        Some(d) => yi.is_multiple_of(d),
        None => yi.is_zero(),
    }))
}
