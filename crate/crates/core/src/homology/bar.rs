//! Second homology of a small finite group from the normalized bar complex.
//!
//! Used as an oracle independent of presentations: only the multiplication
//! table of the group enters.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::snf::{smith, Transforms};
use crate::error::{Error, Result};
use crate::permgroup::PermGroup;

pub const DEFAULT_BAR_CAP: usize = 24;

/// Largest order for which the boundary maps go through integer SNF.
const INTEGER_SNF_LIMIT: usize = 8;

/// A prime used for the rational-rank lower bound.
const RANK_PRIME: u64 = 2_147_483_647;

/// Multiplication table in enumeration order: `mul[a][b]` is the index of `a·b`.
pub fn multiplication_table(g: &PermGroup) -> Result<Vec<Vec<usize>>> {
    let elements = g.enumerate_elements()?;
    let index: HashMap<_, _> = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    Ok(elements
        .iter()
        .map(|a| elements.iter().map(|b| index[&a.then(b)]).collect())
        .collect())
}

struct Bar {
    n: usize,
    mul: Vec<Vec<usize>>,
}

impl Bar {
    /// Index of `[g₁|…|g_k]` among tuples of non-identity elements.
    fn cell(&self, gs: &[usize]) -> Option<usize> {
        let mut idx = 0;
        for &g in gs {
            if g == 0 {
                return None;
            }
            idx = idx * (self.n - 1) + (g - 1);
        }
        Some(idx)
    }

    fn dim(&self, k: u32) -> usize {
        (self.n - 1).pow(k)
    }

    /// `∂[g|h] = [h] - [gh] + [g]`, as sparse columns.
    fn d2(&self) -> Vec<Vec<(usize, i64)>> {
        let mut out = Vec::with_capacity(self.dim(2));
        for g in 1..self.n {
            for h in 1..self.n {
                let gh = self.mul[g][h];
                let terms = [(vec![h], 1), (vec![gh], -1), (vec![g], 1)];
                out.push(self.collect(&terms));
            }
        }
        out
    }

    /// `∂[g|h|k] = [h|k] - [gh|k] + [g|hk] - [g|h]`
    fn d3(&self) -> Vec<Vec<(usize, i64)>> {
        let mut out = Vec::with_capacity(self.dim(3));
        for g in 1..self.n {
            for h in 1..self.n {
                for k in 1..self.n {
                    let terms = [
                        (vec![h, k], 1),
                        (vec![self.mul[g][h], k], -1),
                        (vec![g, self.mul[h][k]], 1),
                        (vec![g, h], -1),
                    ];
                    out.push(self.collect(&terms));
                }
            }
        }
        out
    }

    fn collect(&self, terms: &[(Vec<usize>, i64)]) -> Vec<(usize, i64)> {
        let mut acc: Vec<(usize, i64)> = Vec::new();
        for (cell, sign) in terms {
            if let Some(i) = self.cell(cell) {
                match acc.iter_mut().find(|(j, _)| *j == i) {
                    Some(e) => e.1 += sign,
                    None => acc.push((i, *sign)),
                }
            }
        }
        acc.retain(|&(_, c)| c != 0);
        acc
    }
}

fn dense(columns: &[Vec<(usize, i64)>], rows: usize) -> Matrix<BigInt> {
    let mut m = Matrix::zeros(rows, columns.len());
    for (j, col) in columns.iter().enumerate() {
        for &(i, c) in col {
            m[(i, j)] = BigInt::from(c);
        }
    }
    m
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Inverse of a unit modulo `m`, by the extended Euclidean algorithm.
fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "not a unit");
    t0.rem_euclid(m as i128) as u64
}

/// Splits off every unit pivot of the span of `vectors` over `ℤ/modulus`,
/// where `modulus` is a power of the prime `p`. Returns the number of unit
/// pivots and the residual vectors, all of whose entries are divisible by `p`.
fn split_units(vectors: Vec<Vec<u64>>, dim: usize, p: u64, modulus: u64) -> (usize, Vec<Vec<u64>>) {
    let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut residual = Vec::new();
    let reduce = |v: &mut Vec<u64>, pivots: &[(usize, Vec<u64>)]| {
        for (c, pv) in pivots {
            let x = v[*c];
            if x != 0 {
                for (a, b) in v.iter_mut().zip(pv) {
                    if *b != 0 {
                        *a = (*a + modulus - mul_mod(x, *b, modulus)) % modulus;
                    }
                }
            }
        }
    };
    for mut v in vectors {
        reduce(&mut v, &pivots);
        match (0..dim).find(|&i| v[i] % p != 0) {
            Some(c) => {
                let inv = inv_mod(v[c], modulus);
                v.iter_mut().for_each(|a| *a = mul_mod(*a, inv, modulus));
                pivots.push((c, v));
            }
            None => {
                if v.iter().any(|&a| a != 0) {
                    residual.push(v);
                }
            }
        }
    }
    // residuals found early may still meet later pivots
    for v in &mut residual {
        reduce(v, &pivots);
    }
    residual.retain(|v| v.iter().any(|&a| a != 0));
    (pivots.len(), residual)
}

fn reduce_columns(columns: &[Vec<(usize, i64)>], dim: usize, modulus: u64) -> Vec<Vec<u64>> {
    columns
        .iter()
        .map(|col| {
            let mut v = vec![0u64; dim];
            for &(i, c) in col {
                v[i] = c.rem_euclid(modulus as i64) as u64;
            }
            v
        })
        .collect()
}

/// Counts of elementary divisors of valuation `0, 1, …, k-1` at the prime `p`.
fn local_valuations(columns: &[Vec<(usize, i64)>], dim: usize, p: u64, k: u32) -> Vec<usize> {
    let mut counts = Vec::new();
    let mut vectors = reduce_columns(columns, dim, p.pow(k));
    for level in 0..k {
        let modulus = p.pow(k - level);
        let (found, residual) = split_units(vectors, dim, p, modulus);
        counts.push(found);
        vectors = residual.into_iter().map(|v| v.into_iter().map(|a| a / p).collect()).collect();
    }
    counts
}

fn rank_mod_prime(columns: &[Vec<(usize, i64)>], dim: usize) -> usize {
    split_units(reduce_columns(columns, dim, RANK_PRIME), dim, RANK_PRIME, RANK_PRIME).0
}

fn prime_factors(mut n: usize) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p as u64, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n as u64, 1));
    }
    out
}

/// Invariant factors from a list of prime powers.
fn combine_prime_powers(mut by_prime: Vec<(u64, Vec<u32>)>) -> Vec<BigInt> {
    let len = by_prime.iter().map(|(_, vs)| vs.len()).max().unwrap_or(0);
    for (_, vs) in &mut by_prime {
        vs.sort_unstable();
        while vs.len() < len {
            vs.insert(0, 0);
        }
    }
    (0..len)
        .map(|i| {
            by_prime
                .iter()
                .fold(BigInt::one(), |acc, (p, vs)| acc * BigInt::from(*p).pow(vs[i]))
        })
        .collect()
}

/// Nontrivial invariant factors of `H₂(G; ℤ)`.
///
/// For a finite group the torsion of `C₂ / im ∂₃` is exactly `H₂`, so the
/// answer is the list of elementary divisors of `∂₃` other than 1. Small
/// groups use integer Smith form directly; larger ones work one prime at a
/// time over `ℤ/pᵏ`, with the rational rank pinned between a rank over a
/// large prime field and `dim C₂ - rank ∂₂`.
pub fn bar_h2_oracle(g: &PermGroup, cap: usize) -> Result<Vec<BigInt>> {
    let order = g.order()?;
    if order > cap {
        return Err(Error::CapExceeded {
            what: "bar complex group order",
            cap,
        });
    }
    if order == 1 {
        return Ok(Vec::new());
    }
    let bar = Bar {
        n: order,
        mul: multiplication_table(g)?,
    };
    let d3 = bar.d3();
    let dim2 = bar.dim(2);
    if order <= INTEGER_SNF_LIMIT {
        let s = smith(&dense(&d3, dim2), Transforms::NONE);
        return Ok(s.nontrivial());
    }
    let d2 = bar.d2();
    let rank_d3 = rank_mod_prime(&d3, dim2);
    let upper = dim2 - rank_mod_prime(&d2, bar.dim(1));
    if rank_d3 != upper {
        return Err(Error::Invalid(format!(
            "rational rank of ∂₃ not pinned ({rank_d3} vs {upper})"
        )));
    }
    let rational_zeros = dim2 - rank_d3;
    let mut by_prime = Vec::new();
    for (p, e) in prime_factors(order) {
        let mut k = e + 1;
        let counts = loop {
            let counts = local_valuations(&d3, dim2, p, k);
            let below: usize = counts.iter().sum();
            if dim2 - below == rational_zeros {
                break counts;
            }
            if p.checked_pow(2 * k).is_none() {
                return Err(Error::Invalid(format!("{p}-adic valuations did not stabilize")));
            }
            k *= 2;
        };
        let vals: Vec<u32> = counts
            .iter()
            .enumerate()
            .skip(1)
            .flat_map(|(v, &c)| std::iter::repeat_n(v as u32, c))
            .collect();
        by_prime.push((p, vals));
    }
    Ok(combine_prime_powers(by_prime)
        .into_iter()
        .filter(|d| !d.is_one() && !d.is_zero())
        .collect())
}

/// Nontrivial invariant factors of `H₁(G; ℤ)` from `∂₂` (the normalized `∂₁` vanishes).
pub fn bar_h1_oracle(g: &PermGroup, cap: usize) -> Result<Vec<BigInt>> {
    let order = g.order()?;
    if order > cap {
        return Err(Error::CapExceeded {
            what: "bar complex group order",
            cap,
        });
    }
    if order == 1 {
        return Ok(Vec::new());
    }
    let bar = Bar {
        n: order,
        mul: multiplication_table(g)?,
    };
    Ok(smith(&dense(&bar.d2(), bar.dim(1)), Transforms::NONE).nontrivial())
}
