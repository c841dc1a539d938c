//! The Cayley graph of a realized group as a 1-complex, its cycle lattice
//! `K = ker ∂₁`, and the coinvariants `K_G`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::snf::{smith, SmithForm, Transforms};
use crate::error::{Error, Result};
use crate::permgroup::Permutation;
use crate::presentation::{Presentation, Realization};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub group_order: usize,
    pub symbols: usize,
    pub k_rank: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            group_order: 360,
            symbols: 12,
            k_rank: 2500,
        }
    }
}

/// Vertices are group elements in enumeration order; the edge `(g, s)` runs
/// from `g` to `g·s` and has index `g·|S| + s`.
#[derive(Debug, Clone)]
pub struct CayleyComplex {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    nsym: usize,
    right: Vec<Vec<usize>>,
    parent: Vec<Option<(usize, usize)>>,
    k_index: Vec<Option<usize>>,
    nontree: Vec<usize>,
    /// Fundamental cycle of each non-tree edge, sparse.
    cycles: Vec<Vec<(usize, i64)>>,
}

impl CayleyComplex {
    pub fn new(real: &Realization, caps: Caps) -> Result<Self> {
        let nsym = real.symbol_perms.len();
        if nsym > caps.symbols {
            return Err(Error::CapExceeded {
                what: "symbol count",
                cap: caps.symbols,
            });
        }
        if real.order() > caps.group_order {
            return Err(Error::CapExceeded {
                what: "group order",
                cap: caps.group_order,
            });
        }
        let bfs = real.group.bfs()?;
        let n = bfs.elements.len();
        let right: Vec<Vec<usize>> = bfs
            .elements
            .iter()
            .map(|g| real.symbol_perms.iter().map(|s| bfs.index[&g.then(s)]).collect())
            .collect();
        let mut is_tree = vec![false; n * nsym];
        for p in bfs.parent.iter().flatten() {
            is_tree[p.0 * nsym + p.1] = true;
        }
        let nontree: Vec<usize> = (0..n * nsym).filter(|&e| !is_tree[e]).collect();
        if nontree.len() > caps.k_rank {
            return Err(Error::CapExceeded {
                what: "rank of the cycle lattice",
                cap: caps.k_rank,
            });
        }
        let mut k_index = vec![None; n * nsym];
        for (i, &e) in nontree.iter().enumerate() {
            k_index[e] = Some(i);
        }
        let mut c = CayleyComplex {
            elements: bfs.elements,
            index: bfs.index,
            nsym,
            right,
            parent: bfs.parent,
            k_index,
            nontree,
            cycles: Vec::new(),
        };
        c.cycles = c
            .nontree
            .iter()
            .map(|&e| {
                let (g, s) = (e / nsym, e % nsym);
                let mut z = c.path(g);
                z.push((e, 1));
                z.extend(c.path(c.right[g][s]).into_iter().map(|(f, x)| (f, -x)));
                compact(z)
            })
            .collect();
        Ok(c)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn symbol_count(&self) -> usize {
        self.nsym
    }

    pub fn edge_count(&self) -> usize {
        self.order() * self.nsym
    }

    /// `m = |G|·|S| - |G| + 1`
    pub fn k_rank(&self) -> usize {
        self.nontree.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element_index(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Index of `g·s`.
    pub fn right(&self, g: usize, s: usize) -> usize {
        self.right[g][s]
    }

    pub fn tree_parent(&self, g: usize) -> Option<(usize, usize)> {
        self.parent[g]
    }

    pub fn cycle(&self, k: usize) -> &[(usize, i64)] {
        &self.cycles[k]
    }

    /// Tree path from the identity to `g`, as signed edges.
    fn path(&self, mut g: usize) -> Vec<(usize, i64)> {
        let mut out = Vec::new();
        while let Some((p, s)) = self.parent[g] {
            out.push((p * self.nsym + s, 1));
            g = p;
        }
        out
    }

    /// `∂₁` as a `|G| × |G||S|` matrix: column `(g, s)` is `e_{gs} - e_g`.
    pub fn boundary1(&self) -> Matrix<BigInt> {
        let mut m = Matrix::zeros(self.order(), self.edge_count());
        for g in 0..self.order() {
            for s in 0..self.nsym {
                let e = g * self.nsym + s;
                let h = self.right[g][s];
                m[(h, e)] += BigInt::one();
                m[(g, e)] -= BigInt::one();
            }
        }
        m
    }

    /// `∂₁` of a sparse edge chain, dense over vertices.
    pub fn boundary_of(&self, z: &[(usize, i64)]) -> Vec<i64> {
        let mut out = vec![0; self.order()];
        for &(e, x) in z {
            let (g, s) = (e / self.nsym, e % self.nsym);
            out[self.right[g][s]] += x;
            out[g] -= x;
        }
        out
    }

    /// Coordinates of a cycle in the fundamental-cycle basis: its
    /// coefficients on non-tree edges.
    pub fn k_coords(&self, z: &[(usize, i64)]) -> Vec<i64> {
        let mut out = vec![0; self.k_rank()];
        for &(e, x) in z {
            if let Some(k) = self.k_index[e] {
                out[k] += x;
            }
        }
        out
    }

    /// The cycle with the given K coordinates, sparse over edges.
    pub fn expand(&self, x: &[i64]) -> Vec<(usize, i64)> {
        let mut z = Vec::new();
        for (k, &xk) in x.iter().enumerate() {
            if xk != 0 {
                z.extend(self.cycles[k].iter().map(|&(e, c)| (e, c * xk)));
            }
        }
        compact(z)
    }

    /// The closed edge path traced by `w` from the identity, using symbol
    /// positions from `p`.
    pub fn word_cycle(&self, p: &Presentation, w: &Word) -> Result<Vec<(usize, i64)>> {
        let mut g = 0;
        let mut z = Vec::new();
        for l in w.letters() {
            let s = p.position(l.symbol).ok_or(Error::SymbolOutOfRange(l.symbol))?;
            if l.inverted {
                let prev = self.left_of(g, s);
                z.push((prev * self.nsym + s, -1));
                g = prev;
            } else {
                z.push((g * self.nsym + s, 1));
                g = self.right[g][s];
            }
        }
        if g != 0 {
            return Err(Error::Invalid("word does not close up in the realized group".into()));
        }
        Ok(compact(z))
    }

    /// The element `h` with `h·s = g`.
    fn left_of(&self, g: usize, s: usize) -> usize {
        (0..self.order())
            .find(|&h| self.right[h][s] == g)
            .expect("right multiplication is a bijection")
    }

    /// Left translation `(g, s) ↦ (h·g, s)` of a chain.
    pub fn translate(&self, h: usize, z: &[(usize, i64)]) -> Vec<(usize, i64)> {
        let hg = |g: usize| self.index[&self.elements[h].then(&self.elements[g])];
        compact(
            z.iter()
                .map(|&(e, x)| (hg(e / self.nsym) * self.nsym + e % self.nsym, x))
                .collect(),
        )
    }

    /// Per-symbol coefficient sums, the map to the coinvariants `ℤ^S` of the
    /// edge module.
    pub fn symbol_sums(&self, z: &[(usize, i64)]) -> Vec<i64> {
        let mut out = vec![0; self.nsym];
        for &(e, x) in z {
            out[e % self.nsym] += x;
        }
        out
    }

    /// Distinct non-identity symbol images, by element index.
    pub fn generator_elements(&self) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.nsym).map(|s| self.right[0][s]).filter(|&h| h != 0).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Merges repeated edges and drops zeros, sorted by edge.
fn compact(mut z: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    z.sort_unstable_by_key(|&(e, _)| e);
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(z.len());
    for (e, x) in z {
        match out.last_mut() {
            Some(last) if last.0 == e => last.1 += x,
            _ => out.push((e, x)),
        }
    }
    out.retain(|&(_, x)| x != 0);
    out
}

/// `K_G = K / I·K` presented as `ℤᵐ / L` with `L` spanned by `(h - 1)·c`.
#[derive(Debug, Clone)]
pub struct RelationModuleCoinv {
    pub complex: CayleyComplex,
    relations: Vec<Vec<i64>>,
    snf: SmithForm<BigInt>,
    v_small: Option<Matrix<i64>>,
    /// Diagonal padded with zeros to length `m`.
    divisors: Vec<BigInt>,
    /// Positions whose divisor is not 1, in order; torsion ones first.
    kept: Vec<usize>,
    /// Passes of the saturation loop until the relation span stopped growing.
    pub saturation_rounds: usize,
}

impl RelationModuleCoinv {
    pub fn new(complex: CayleyComplex) -> Result<Self> {
        let m = complex.k_rank();
        let gens = complex.generator_elements();
        let mut relations = Vec::new();
        for &h in &gens {
            for k in 0..m {
                let c = complex.cycle(k);
                let mut row = complex.k_coords(&complex.translate(h, c));
                row[k] -= 1;
                if row.iter().any(|&x| x != 0) {
                    relations.push(row);
                }
            }
        }
        let mut rounds = 0;
        loop {
            rounds += 1;
            let rmc = Self::from_relations(complex.clone(), relations.clone(), rounds)?;
            let mut added = Vec::new();
            for row in &relations {
                let z = complex.expand(row);
                for &h in &gens {
                    let image = complex.k_coords(&complex.translate(h, &z));
                    if !rmc.in_relations(&image)? {
                        added.push(image);
                    }
                }
            }
            if added.is_empty() {
                return Ok(rmc);
            }
            relations.extend(added);
        }
    }

    fn from_relations(complex: CayleyComplex, relations: Vec<Vec<i64>>, rounds: usize) -> Result<Self> {
        let m = complex.k_rank();
        let mat = Matrix::<BigInt>::from_i64_rows(&relations, m)?;
        let snf = smith(&mat, Transforms::V_BOTH);
        let mut divisors = snf.diag.clone();
        divisors.resize(m, BigInt::zero());
        let kept: Vec<usize> = (0..m).filter(|&i| !divisors[i].is_one()).collect();
        let v_small = snf.v.as_ref().and_then(|v| v.convert::<i64>().ok());
        Ok(RelationModuleCoinv {
            complex,
            relations,
            snf,
            v_small,
            divisors,
            kept,
            saturation_rounds: rounds,
        })
    }

    pub fn k_rank(&self) -> usize {
        self.complex.k_rank()
    }

    pub fn relations(&self) -> &[Vec<i64>] {
        &self.relations
    }

    /// `x·V`
    fn transform(&self, x: &[i64]) -> Result<Vec<BigInt>> {
        if let Some(v) = &self.v_small {
            if let Ok(y) = v.left_apply(x) {
                return Ok(y.into_iter().map(BigInt::from).collect());
            }
        }
        let v = self.snf.v.as_ref().expect("V is tracked");
        v.left_apply(&x.iter().map(|&a| BigInt::from(a)).collect::<Vec<_>>())
    }

    pub fn in_relations(&self, x: &[i64]) -> Result<bool> {
        let y = self.transform(x)?;
        Ok(y.iter().zip(&self.divisors).all(|(yi, d)| {
            if d.is_zero() {
                yi.is_zero()
            } else {
                yi.is_multiple_of(d)
            }
        }))
    }

    /// Orders of the cyclic factors of `K_G` (0 for ℤ), in coordinate order.
    pub fn divisors(&self) -> Vec<BigInt> {
        self.kept.iter().map(|&i| self.divisors[i].clone()).collect()
    }

    pub fn torsion_count(&self) -> usize {
        self.kept.iter().filter(|&&i| !self.divisors[i].is_zero()).count()
    }

    pub fn free_rank(&self) -> usize {
        self.kept.len() - self.torsion_count()
    }

    /// Class of a K vector in `K_G` coordinates, reduced modulo each divisor.
    pub fn class(&self, x: &[i64]) -> Result<Vec<BigInt>> {
        let y = self.transform(x)?;
        Ok(self
            .kept
            .iter()
            .map(|&i| reduce_mod(&y[i], &self.divisors[i]))
            .collect())
    }

    /// A K vector representing the `j`-th generator of `K_G`.
    pub fn generator(&self, j: usize) -> Result<Vec<i64>> {
        let vi = self.snf.v_inv.as_ref().expect("V⁻¹ is tracked");
        vi.row(self.kept[j])
            .iter()
            .map(|x| i64::try_from(x).map_err(|_| Error::Overflow))
            .collect()
    }

    /// `φ` on a K vector: per-symbol exponent sums.
    pub fn phi(&self, x: &[i64]) -> Vec<i64> {
        self.complex.symbol_sums(&self.complex.expand(x))
    }
}

pub(crate) fn reduce_mod(y: &BigInt, d: &BigInt) -> BigInt {
    if d.is_zero() {
        y.clone()
    } else {
        y.mod_floor(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{Letter, SymbolRef};

    fn realize(n: usize, relators: Vec<Word>) -> (Presentation, Realization) {
        let p = Presentation::unnamed((0..n).map(|i| SymbolRef::new(0, i)).collect(), relators).unwrap();
        let r = p.regular_realization(1000).unwrap();
        (p, r)
    }

    fn a(i: usize) -> Word {
        Word::symbol(SymbolRef::new(0, i))
    }

    #[test]
    fn boundary_examples() {
        let (_, r) = realize(1, vec![a(0)]);
        let c = CayleyComplex::new(&r, Caps::default()).unwrap();
        assert_eq!(c.boundary1(), Matrix::zeros(1, 1));

        let (_, r) = realize(1, vec![a(0).pow(2)]);
        let c = CayleyComplex::new(&r, Caps::default()).unwrap();
        let b = c.boundary1();
        assert_eq!(b.to_rows(), vec![vec![BigInt::from(-1), BigInt::from(1)], vec![BigInt::from(1), BigInt::from(-1)]]);
        assert_eq!(smith(&b, Transforms::NONE).rank(), 1);
    }

    #[test]
    fn klein_four_complex() {
        let (p, r) = realize(2, vec![a(0).pow(2), a(1).pow(2), a(0).commutator(&a(1))]);
        let c = CayleyComplex::new(&r, Caps::default()).unwrap();
        assert_eq!(smith(&c.boundary1(), Transforms::NONE).rank(), 3);
        assert_eq!(c.k_rank(), 5);
        for k in 0..c.k_rank() {
            assert!(c.boundary_of(c.cycle(k)).iter().all(|&x| x == 0));
        }
        let z = c.word_cycle(&p, &a(0).commutator(&a(1))).unwrap();
        assert!(c.boundary_of(&z).iter().all(|&x| x == 0));
        assert_eq!(c.symbol_sums(&z), vec![0, 0]);
        assert!(c.word_cycle(&p, &a(0)).is_err());
    }

    #[test]
    fn coinvariants_of_cyclic_group() {
        let (p, r) = realize(1, vec![a(0).pow(2)]);
        let rmc = RelationModuleCoinv::new(CayleyComplex::new(&r, Caps::default()).unwrap()).unwrap();
        assert_eq!(rmc.k_rank(), 1);
        assert_eq!(rmc.divisors(), vec![BigInt::zero()]);
        let z = rmc.complex.word_cycle(&p, &a(0).pow(2)).unwrap();
        let x = rmc.complex.k_coords(&z);
        assert_eq!(rmc.phi(&x), vec![2]);
        assert_eq!(rmc.class(&x).unwrap().len(), 1);
        assert_eq!(rmc.saturation_rounds, 1);
    }

    #[test]
    fn trivial_group_coinvariants() {
        let (_, r) = realize(1, vec![Word::letter(Letter::pos(SymbolRef::new(0, 0)))]);
        let rmc = RelationModuleCoinv::new(CayleyComplex::new(&r, Caps::default()).unwrap()).unwrap();
        assert_eq!(rmc.divisors(), vec![BigInt::zero()]);
    }

    #[test]
    fn caps_enforced() {
        let (_, r) = realize(1, vec![a(0).pow(5)]);
        let caps = Caps {
            group_order: 4,
            ..Caps::default()
        };
        assert!(matches!(CayleyComplex::new(&r, caps), Err(Error::CapExceeded { .. })));
    }
}
