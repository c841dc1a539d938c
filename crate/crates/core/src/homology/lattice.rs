//! Integer row lattices in Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A sublattice of `ℤⁿ`, kept as a row-style Hermite basis: pivots strictly
/// increase, are positive, and entries above each pivot lie in `[0, pivot)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
}

fn leading(v: &[BigInt]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice {
            dim,
            basis: Vec::new(),
        }
    }

    pub fn from_rows<I, R>(rows: I, dim: usize) -> Self
    where
        I: IntoIterator<Item = R>,
        R: AsRef<[BigInt]>,
    {
        let mut l = Lattice::zero(dim);
        for r in rows {
            l.insert(r.as_ref().to_vec());
        }
        l
    }

    pub fn from_i64_rows(rows: &[Vec<i64>], dim: usize) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()),
            dim,
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// True when the lattice is all of `ℤⁿ`.
    pub fn is_full(&self) -> bool {
        self.rank() == self.dim && self.basis.iter().enumerate().all(|(i, r)| r[i].is_one())
    }

    pub fn insert(&mut self, mut v: Vec<BigInt>) {
        assert_eq!(v.len(), self.dim, "vector length must match lattice dimension");
        let mut k = 0;
        while let Some(c) = leading(&v) {
            while k < self.basis.len() && leading(&self.basis[k]).unwrap() < c {
                k += 1;
            }
            if k == self.basis.len() || leading(&self.basis[k]).unwrap() > c {
                if v[c].is_negative() {
                    v.iter_mut().for_each(|x| *x = -x.clone());
                }
                self.basis.insert(k, v);
                self.normalize();
                return;
            }
            let b = &self.basis[k];
            let (a0, v0) = (b[c].clone(), v[c].clone());
            let e = a0.extended_gcd(&v0);
            let (fa, fv) = (&a0 / &e.gcd, &v0 / &e.gcd);
            let new_b: Vec<BigInt> = b.iter().zip(&v).map(|(x, y)| &e.x * x + &e.y * y).collect();
            let new_v: Vec<BigInt> = b.iter().zip(&v).map(|(x, y)| &fa * y - &fv * x).collect();
            self.basis[k] = new_b;
            if self.basis[k][c].is_negative() {
                self.basis[k].iter_mut().for_each(|x| *x = -x.clone());
            }
            v = new_v;
        }
        self.normalize();
    }

    /// Reduces entries above pivots into `[0, pivot)`.
    fn normalize(&mut self) {
        for j in 0..self.basis.len() {
            let c = leading(&self.basis[j]).unwrap();
            let p = self.basis[j][c].clone();
            let (upper, lower) = self.basis.split_at_mut(j);
            for row in upper.iter_mut() {
                let q = row[c].div_floor(&p);
                if !q.is_zero() {
                    for (x, y) in row.iter_mut().zip(&lower[0]) {
                        *x -= &q * y;
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut v = v.to_vec();
        for b in &self.basis {
            let c = leading(b).unwrap();
            if let Some(lv) = leading(&v) {
                if lv < c {
                    return false;
                }
            }
            if v[c].is_zero() {
                continue;
            }
            let (q, r) = v[c].div_rem(&b[c]);
            if !r.is_zero() {
                return false;
            }
            for (x, y) in v.iter_mut().zip(b) {
                *x -= &q * y;
            }
        }
        v.iter().all(|x| x.is_zero())
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// Index `[ℤⁿ : L]` when `L` has full rank.
    pub fn index(&self) -> Option<BigInt> {
        (self.rank() == self.dim).then(|| {
            self.basis
                .iter()
                .enumerate()
                .fold(BigInt::one(), |acc, (i, r)| acc * &r[i])
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hermite_basis_is_canonical() {
        let a = Lattice::from_i64_rows(&[vec![2, 1], vec![0, 3]], 2);
        let b = Lattice::from_i64_rows(&[vec![2, 4], vec![4, 5], vec![2, 1]], 2);
        assert_eq!(a, b);
        assert_eq!(a.index(), Some(BigInt::from(6)));
        assert!(a.contains(&v(&[2, 4])));
        assert!(!a.contains(&v(&[1, 0])));
    }

    #[test]
    fn full_lattice() {
        let a = Lattice::from_i64_rows(&[vec![2, 3], vec![3, 5]], 2);
        assert!(a.is_full());
        assert!(!Lattice::from_i64_rows(&[vec![2, 0], vec![0, 1]], 2).is_full());
        assert!(Lattice::zero(0).is_full());
    }

    #[test]
    fn degenerate_rows() {
        let a = Lattice::from_i64_rows(&[vec![0, 0, 0], vec![0, 4, 6], vec![0, -2, -3]], 3);
        assert_eq!(a.rank(), 1);
        assert_eq!(a.basis()[0], v(&[0, 2, 3]));
        assert!(a.contains(&v(&[0, -6, -9])));
        assert!(!a.contains(&v(&[1, 2, 3])));
    }
}
