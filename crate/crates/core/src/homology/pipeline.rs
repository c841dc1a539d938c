//! H₁ and H₂ of a finite group through the five-term sequence
//! `0 → H₂(G) → K_G → ℤ^S → H₁(G) → 0`, with the induced Γ-action.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::complex::{reduce_mod, Caps, CayleyComplex, RelationModuleCoinv};
use super::lattice::Lattice;
use super::matrix::Matrix;
use super::snf::{cokernel, smith, Transforms};
use crate::action::ActionTable;
use crate::equivariant::{Check, EquivariantPresentation, ExpandedPresentation, Mode, Origin};
use crate::error::{Error, Result};
use crate::permgroup::{generated_order, Permutation};
use crate::presentation::{Presentation, Realization, DEFAULT_MAX_COSETS};

/// `H₁` as nontrivial invariant factors plus free rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1 {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

/// Cokernel of the relator exponent-sum matrix.
pub fn abelianization(p: &Presentation) -> H1 {
    let m = Matrix::<BigInt>::from_i64_rows(&p.exponent_matrix(), p.symbols().len())
        .expect("exponent rows have one entry per symbol");
    let (torsion, free_rank) = cokernel(&m);
    H1 { torsion, free_rank }
}

/// `∂₁` of the Cayley complex of a realized group.
pub fn boundary1(real: &Realization) -> Result<Matrix<BigInt>> {
    Ok(CayleyComplex::new(real, Caps::default())?.boundary1())
}

pub fn relation_module_coinvariants(real: &Realization, caps: Caps) -> Result<RelationModuleCoinv> {
    RelationModuleCoinv::new(CayleyComplex::new(real, caps)?)
}

/// The maps of the five-term sequence in matrix form: `phi` has one row per
/// K basis vector (row convention, values in `ℤ^S`), `psi` is the relator
/// exponent lattice whose cokernel is `H₁`.
pub fn phi_psi_maps(rmc: &RelationModuleCoinv, p: &Presentation) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let m = rmc.k_rank();
    let phi = (0..m)
        .map(|k| rmc.complex.symbol_sums(rmc.complex.cycle(k)))
        .collect();
    (phi, p.exponent_matrix())
}

/// Homology of a presentation of a realized finite group.
#[derive(Debug, Clone)]
pub struct GroupHomology {
    pub presentation: Presentation,
    pub rmc: RelationModuleCoinv,
    pub h1: H1,
    pub h2: Vec<BigInt>,
    /// K vectors lifting the generators of `H₂ ⊆ K_G`.
    pub h2_representatives: Vec<Vec<i64>>,
}

/// `H₂(G) = ker(φ̄: K_G → ℤ^S)`, which for finite `G` is the torsion of `K_G`.
pub fn h2(p: &Presentation, real: &Realization, caps: Caps) -> Result<GroupHomology> {
    let rmc = relation_module_coinvariants(real, caps)?;
    let t = rmc.torsion_count();
    let h2 = rmc.divisors()[..t].to_vec();
    let h2_representatives = (0..t).map(|j| rmc.generator(j)).collect::<Result<_>>()?;
    Ok(GroupHomology {
        presentation: p.clone(),
        h1: abelianization(p),
        rmc,
        h2,
        h2_representatives,
    })
}

impl GroupHomology {
    /// K vector of each relator's closed path.
    pub fn relator_classes(&self) -> Result<Vec<Vec<i64>>> {
        self.presentation
            .relators()
            .iter()
            .map(|r| {
                let z = self.rmc.complex.word_cycle(&self.presentation, r)?;
                Ok(self.rmc.complex.k_coords(&z))
            })
            .collect()
    }

    pub fn h2_rank(&self) -> usize {
        self.h2.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomologyOptions {
    pub caps: Caps,
    pub max_cosets: usize,
}

impl Default for HomologyOptions {
    fn default() -> Self {
        HomologyOptions {
            caps: Caps::default(),
            max_cosets: DEFAULT_MAX_COSETS,
        }
    }
}

/// How a Γ-element moves symbols and group elements.
#[derive(Debug, Clone)]
struct Induced {
    /// Symbol position ↦ symbol position.
    sigma: Vec<usize>,
    /// Element index ↦ element index.
    alpha: Vec<usize>,
}

/// Homology of an equivariant presentation together with the Γ-action.
#[derive(Debug, Clone)]
pub struct EquivariantHomology {
    pub ep: EquivariantPresentation,
    pub table: ActionTable,
    pub expanded: ExpandedPresentation,
    pub realization: Realization,
    pub homology: GroupHomology,
}

impl EquivariantHomology {
    pub fn compute(ep: &EquivariantPresentation, opts: HomologyOptions) -> Result<Self> {
        let table = ep.tabulate()?;
        let expanded = ep.expand_r_with(&table)?;
        let realization = expanded.presentation.regular_realization(opts.max_cosets)?;
        let homology = h2(&expanded.presentation, &realization, opts.caps)?;
        Ok(EquivariantHomology {
            ep: ep.clone(),
            table,
            expanded,
            realization,
            homology,
        })
    }

    fn complex(&self) -> &CayleyComplex {
        &self.homology.rmc.complex
    }

    fn rmc(&self) -> &RelationModuleCoinv {
        &self.homology.rmc
    }

    fn induced(&self, k: usize) -> Result<Induced> {
        let gs = self.ep.gamma_set();
        let symbols = self.expanded.presentation.symbols();
        let sigma = symbols
            .iter()
            .map(|&s| gs.symbol_position(self.table.act_symbol(k, s)))
            .collect::<Result<Vec<_>>>()?;
        let c = self.complex();
        let n = c.order();
        let mut alpha = vec![0usize; n];
        for g in 1..n {
            let (p, s) = c.tree_parent(g).expect("non-identity elements have a tree parent");
            alpha[g] = c.right(alpha[p], sigma[s]);
        }
        for g in 0..n {
            for s in 0..sigma.len() {
                if alpha[c.right(g, s)] != c.right(alpha[g], sigma[s]) {
                    return Err(Error::ActionNotWellDefined(format!(
                        "symbol map of {} does not extend to an automorphism of G",
                        self.table.elements()[k]
                    )));
                }
            }
        }
        let mut seen = vec![false; n];
        for &a in &alpha {
            if std::mem::replace(&mut seen[a], true) {
                return Err(Error::ActionNotWellDefined("induced map on G is not injective".into()));
            }
        }
        Ok(Induced { sigma, alpha })
    }

    /// Image of a K vector under the chain map `(g, s) ↦ (α(g), σ(s))`.
    fn map_k(&self, ind: &Induced, x: &[i64]) -> Vec<i64> {
        let c = self.complex();
        let nsym = c.symbol_count();
        let z: Vec<(usize, i64)> = c
            .expand(x)
            .into_iter()
            .map(|(e, v)| (ind.alpha[e / nsym] * nsym + ind.sigma[e % nsym], v))
            .collect();
        c.k_coords(&z)
    }

    /// Matrix of a Γ-element on `K_G` coordinates (column convention,
    /// entry `(i, j)` reduced modulo the `i`-th divisor). Fails if the
    /// relation subspace is not preserved.
    pub fn kg_matrix(&self, k: usize) -> Result<Matrix<BigInt>> {
        let ind = self.induced(k)?;
        let rmc = self.rmc();
        for row in rmc.relations() {
            if !rmc.in_relations(&self.map_k(&ind, row))? {
                return Err(Error::ActionNotWellDefined(format!(
                    "{} does not preserve the coinvariant relations",
                    self.table.elements()[k]
                )));
            }
        }
        let dim = rmc.divisors().len();
        let mut m = Matrix::zeros(dim, dim);
        for j in 0..dim {
            let image = rmc.class(&self.map_k(&ind, &rmc.generator(j)?))?;
            for (i, y) in image.into_iter().enumerate() {
                m[(i, j)] = y;
            }
        }
        Ok(m)
    }

    /// Restriction of `kg_matrix` to the torsion coordinates, i.e. to `H₂`.
    pub fn h2_matrix(&self, k: usize) -> Result<Matrix<BigInt>> {
        let full = self.kg_matrix(k)?;
        let t = self.homology.h2.len();
        for j in 0..t {
            for i in t..full.rows() {
                if !full[(i, j)].is_zero() {
                    return Err(Error::ActionNotWellDefined("H₂ is not carried into itself".into()));
                }
            }
        }
        Ok(Matrix::from_fn(t, t, |i, j| full[(i, j)].clone()))
    }

    pub fn h2_matrix_of(&self, g: &Permutation) -> Result<Matrix<BigInt>> {
        let k = self.table.element_index(g).ok_or(Error::NotInGroup)?;
        self.h2_matrix(k)
    }

    /// `A·B` with row `i` reduced modulo the `i`-th H₂ divisor.
    pub fn h2_product(&self, a: &Matrix<BigInt>, b: &Matrix<BigInt>) -> Result<Matrix<BigInt>> {
        let mut p = a.mul(b)?;
        self.h2_reduce(&mut p);
        Ok(p)
    }

    fn h2_reduce(&self, m: &mut Matrix<BigInt>) {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                m[(i, j)] = reduce_mod(&m[(i, j)], &self.homology.h2[i]);
            }
        }
    }

    pub fn h2_identity(&self) -> Matrix<BigInt> {
        let mut m = Matrix::identity(self.homology.h2.len());
        self.h2_reduce(&mut m);
        m
    }

    /// Matrices of every Γ generator on H₂, checked to be invertible.
    pub fn gamma_action_on_h2(&self) -> Result<Vec<(String, Matrix<BigInt>)>> {
        let gamma = self.ep.gamma_set().gamma();
        let mut out = Vec::new();
        for (name, g) in gamma.names().iter().zip(gamma.generators()) {
            let m = self.h2_matrix_of(g)?;
            let inv = self.h2_matrix_of(&g.inverse())?;
            if self.h2_product(&m, &inv)? != self.h2_identity() {
                return Err(Error::ActionNotWellDefined(format!("action of {name} on H₂ is not invertible")));
            }
            out.push((name.clone(), m));
        }
        Ok(out)
    }

    /// `matrix(γδ) = matrix(γ)·matrix(δ)` for all generator words up to length 3.
    pub fn check_functoriality(&self) -> Result<bool> {
        let gens = self.ep.gamma_set().gamma().generators();
        let mats: Vec<Matrix<BigInt>> = gens.iter().map(|g| self.h2_matrix_of(g)).collect::<Result<_>>()?;
        let degree = self.ep.gamma_set().gamma().degree();
        if self.h2_matrix_of(&Permutation::identity(degree))? != self.h2_identity() {
            return Ok(false);
        }
        let mut words: Vec<Vec<usize>> = (0..gens.len()).map(|i| vec![i]).collect();
        let mut frontier = words.clone();
        for _ in 1..3 {
            let next: Vec<Vec<usize>> = frontier
                .iter()
                .flat_map(|w| (0..gens.len()).map(move |i| [w.clone(), vec![i]].concat()))
                .collect();
            words.extend(next.iter().cloned());
            frontier = next;
        }
        for w in words {
            let elem = w.iter().fold(Permutation::identity(degree), |acc, &i| acc.then(&gens[i]));
            let mut prod = self.h2_identity();
            for &i in &w {
                prod = self.h2_product(&prod, &mats[i])?;
            }
            if self.h2_matrix_of(&elem)? != prod {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// H₂ matrices of every element of Γ in enumeration order.
    pub fn all_h2_matrices(&self) -> Result<Vec<Matrix<BigInt>>> {
        (0..self.table.order()).map(|k| self.h2_matrix(k)).collect()
    }

    pub fn gamma_generation_rank(&self) -> Result<(usize, Vec<Vec<BigInt>>)> {
        Ok(gamma_generation_rank(&self.homology.h2, &self.all_h2_matrices()?))
    }

    /// The five-term diagnostics, each an exact check.
    pub fn five_term_check(&self) -> Result<Vec<Check>> {
        let hom = &self.homology;
        let rmc = self.rmc();
        let c = self.complex();
        let p = &self.expanded.presentation;
        let nsym = c.symbol_count();
        let mut checks = Vec::new();

        // (a) H₂ → K_G → ℤ^S
        let in_kernel = hom.h2_representatives.iter().all(|x| rmc.phi(x).iter().all(|&v| v == 0));
        checks.push(Check::new(
            "h2_in_kernel",
            in_kernel,
            format!("φ vanishes on all {} H₂ generators", hom.h2.len()),
        ));
        let t = rmc.torsion_count();
        let free_rows: Vec<Vec<i64>> = (t..t + rmc.free_rank())
            .map(|j| Ok(rmc.phi(&rmc.generator(j)?)))
            .collect::<Result<_>>()?;
        let free_rank = smith(&Matrix::from_i64_rows(&free_rows, nsym)?, Transforms::NONE).rank();
        let kernel_ok = free_rank == rmc.free_rank();
        checks.push(Check::new(
            "kernel_is_h2",
            kernel_ok,
            format!(
                "φ̄ has rank {free_rank} on the free part of K_G (rank {}), so ker φ̄ is the torsion",
                rmc.free_rank()
            ),
        ));

        // (b) im φ = ker ψ
        let (phi, psi) = phi_psi_maps(rmc, p);
        let im_phi = Lattice::from_i64_rows(&phi, nsym);
        let ker_psi = Lattice::from_i64_rows(&psi, nsym);
        checks.push(Check::new(
            "image_phi_is_kernel_psi",
            im_phi == ker_psi,
            format!("both lattices have rank {} in ℤ^{nsym}", im_phi.rank()),
        ));

        // (c) coker φ = H₁ two ways, and |H₁| = |G/[G,G]|
        let (coker_t, coker_free) = cokernel(&Matrix::from_i64_rows(&phi, nsym)?);
        let two_routes = coker_t == hom.h1.torsion && coker_free == hom.h1.free_rank;
        checks.push(Check::new(
            "h1_two_routes",
            two_routes,
            format!("coker φ = {} ; abelianization = {}", fmt_factors(&coker_t, coker_free), fmt_factors(&hom.h1.torsion, hom.h1.free_rank)),
        ));
        let ab_order = abelianization_order(&self.realization)?;
        let h1_order: BigInt = hom.h1.torsion.iter().product();
        checks.push(Check::new(
            "h1_matches_group",
            hom.h1.free_rank == 0 && h1_order == BigInt::from(ab_order),
            format!("|G/[G,G]| = {ab_order}"),
        ));

        // (d) relator classes generate K_G, and R₀ generates it as a Γ-module
        let classes = hom.relator_classes()?;
        let mut stacked: Vec<Vec<i64>> = rmc.relations().to_vec();
        stacked.extend(classes.iter().cloned());
        let s = smith(&Matrix::from_i64_rows(&stacked, rmc.k_rank())?, Transforms::NONE);
        let spans = s.rank() == rmc.k_rank() && s.diag.iter().all(|d| d.is_one());
        checks.push(Check::new(
            "relators_span_kg",
            spans,
            format!("{} relator classes against K_G of rank {}", classes.len(), rmc.k_rank()),
        ));
        let seeds: Vec<Vec<BigInt>> = self
            .expanded
            .provenance
            .iter()
            .zip(&classes)
            .filter(|(o, _)| match o {
                Origin::Orbit { gamma, .. } => *gamma == 0,
                Origin::Conj { .. } => true,
            })
            .map(|(_, x)| rmc.class(x))
            .collect::<Result<_>>()?;
        let gens: Vec<Matrix<BigInt>> = self
            .ep
            .gamma_set()
            .gamma()
            .generators()
            .iter()
            .map(|g| {
                let k = self.table.element_index(g).expect("generator in Γ");
                self.kg_matrix(k)
            })
            .collect::<Result<_>>()?;
        let divisors = rmc.divisors();
        let closure = orbit_closure(&seeds, &gens, &divisors)?;
        let module_ok = spans_quotient(&closure, &divisors);
        let seed_note = if self.ep.mode() == Mode::Weak { "R₀ ∪ R_conj" } else { "R₀" };
        checks.push(Check::new(
            "r0_generates_kg",
            module_ok,
            format!("Γ-closure of the {seed_note} classes has {} vectors", closure.len()),
        ));

        // (e) ℤ^S = ⊕ permutation modules with ranks [Γ : Γ_s]
        let gs = self.ep.gamma_set();
        let gamma_order = self.table.order();
        let mut orbit_notes = Vec::new();
        let mut orbit_ok = true;
        for s0 in gs.s0() {
            let stab = gs.stabilizer_of_symbol(s0)?;
            let stab_order = generated_order(gs.gamma().degree(), &stab, gs.gamma().element_cap())?;
            let size = gs.orbits()[s0.orbit_index].domain_size;
            orbit_ok &= size * stab_order == gamma_order;
            orbit_notes.push(format!("{}·{}", size, stab_order));
        }
        checks.push(Check::new(
            "orbit_stabilizer",
            orbit_ok,
            format!("{} = |Γ| = {gamma_order}", orbit_notes.join(", ")),
        ));

        // φ commutes with the Γ-action
        let mut equivariant = true;
        for g in gs.gamma().generators() {
            let k = self.table.element_index(g).expect("generator in Γ");
            let ind = self.induced(k)?;
            for j in 0..divisors.len() {
                let x = rmc.generator(j)?;
                let before = rmc.phi(&x);
                let after = rmc.phi(&self.map_k(&ind, &x));
                let mut permuted = vec![0; nsym];
                for (s, v) in before.into_iter().enumerate() {
                    permuted[ind.sigma[s]] = v;
                }
                equivariant &= permuted == after;
            }
        }
        checks.push(Check::new(
            "phi_equivariant",
            equivariant,
            "φ∘γ = perm_S(γ)∘φ on K_G generators".to_string(),
        ));

        if self.ep.mode() == Mode::Weak {
            let iota = self.ep.iota_all(&self.table)?;
            let id = self.h2_identity();
            let mut trivial = true;
            for x in &iota {
                trivial &= self.h2_matrix_of(x)? == id;
            }
            checks.push(Check::new(
                "inner_action_trivial",
                trivial,
                format!("{} elements ι(s) checked on H₂", iota.len()),
            ));
        }
        Ok(checks)
    }

    pub fn report(&self) -> Result<HomologyReport> {
        let hom = &self.homology;
        let rmc = self.rmc();
        let divisors = rmc.divisors();
        let actions = self.gamma_action_on_h2()?;
        let (rank, chosen) = self.gamma_generation_rank()?;
        let mut five_term = self.five_term_check()?;
        five_term.push(Check::new(
            "action_functorial",
            self.check_functoriality()?,
            "generator words up to length 3".to_string(),
        ));
        Ok(HomologyReport {
            group_order: self.realization.order(),
            gamma_order: self.table.order(),
            symbol_count: self.complex().symbol_count(),
            relator_count: self.expanded.presentation.relators().len(),
            k_rank: rmc.k_rank(),
            h1_invariant_factors: to_u64(&hom.h1.torsion)?,
            h1_free_rank: hom.h1.free_rank,
            kg_torsion: to_u64(&divisors[..rmc.torsion_count()])?,
            kg_free_rank: rmc.free_rank(),
            h2_invariant_factors: to_u64(&hom.h2)?,
            h2_basis_representatives: hom.h2_representatives.clone(),
            gamma_action_matrices: actions
                .into_iter()
                .map(|(generator, m)| {
                    Ok(ActionMatrix {
                        generator,
                        matrix: m.to_rows().iter().map(|r| to_u64(r)).collect::<Result<_>>()?,
                    })
                })
                .collect::<Result<_>>()?,
            gamma_generation_rank: rank,
            gamma_module_generators: chosen.iter().map(|v| to_u64(v)).collect::<Result<_>>()?,
            five_term_diagnostics: five_term,
        })
    }
}

/// Greedy choice of H₂ basis vectors whose Γ-orbits span `⊕ ℤ/dᵢ`.
///
/// `matrices` are the H₂ matrices of every element of Γ.
pub fn gamma_generation_rank(divisors: &[BigInt], matrices: &[Matrix<BigInt>]) -> (usize, Vec<Vec<BigInt>>) {
    let t = divisors.len();
    let unit = |i: usize| -> Vec<BigInt> {
        (0..t).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()
    };
    let mut lattice = Lattice::from_rows(
        (0..t).map(|i| {
            let mut v = vec![BigInt::zero(); t];
            v[i] = divisors[i].clone();
            v
        }),
        t,
    );
    let mut chosen = Vec::new();
    for i in 0..t {
        let e = unit(i);
        if lattice.contains(&e) {
            continue;
        }
        for m in matrices {
            lattice.insert(m.column(i));
        }
        lattice.insert(e.clone());
        chosen.push(e);
    }
    (chosen.len(), chosen)
}

/// All images of `seeds` under words in `gens`, reduced modulo `divisors`.
fn orbit_closure(seeds: &[Vec<BigInt>], gens: &[Matrix<BigInt>], divisors: &[BigInt]) -> Result<Vec<Vec<BigInt>>> {
    let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
    let mut out = Vec::new();
    let gens: Vec<Matrix<BigInt>> = gens.iter().map(|m| m.transpose()).collect();
    let mut queue: Vec<Vec<BigInt>> = seeds.to_vec();
    while let Some(v) = queue.pop() {
        if !seen.insert(v.clone()) {
            continue;
        }
        for m in &gens {
            let w: Vec<BigInt> = m
                .left_apply(&v)?
                .iter()
                .zip(divisors)
                .map(|(x, d)| reduce_mod(x, d))
                .collect();
            if !seen.contains(&w) {
                queue.push(w);
            }
        }
        out.push(v);
    }
    out.sort();
    Ok(out)
}

/// True if `vectors` together with `dᵢ·eᵢ` span `ℤⁿ`.
fn spans_quotient(vectors: &[Vec<BigInt>], divisors: &[BigInt]) -> bool {
    let n = divisors.len();
    let mut l = Lattice::from_rows(vectors, n);
    for (i, d) in divisors.iter().enumerate() {
        let mut v = vec![BigInt::zero(); n];
        v[i] = d.clone();
        l.insert(v);
    }
    l.is_full()
}

/// Order of `G/[G,G]` computed inside the realized permutation group.
fn abelianization_order(real: &Realization) -> Result<usize> {
    let elements = real.group.enumerate_elements()?;
    let mut comms: Vec<Permutation> = Vec::new();
    let mut seen = HashSet::new();
    for x in &elements {
        for y in &elements {
            let c = x.then(y).then(&x.inverse()).then(&y.inverse());
            if seen.insert(c.clone()) {
                comms.push(c);
            }
        }
    }
    let derived = generated_order(real.order(), &comms, real.order().max(1))?;
    Ok(real.order() / derived)
}

fn fmt_factors(t: &[BigInt], free: usize) -> String {
    let mut parts: Vec<String> = t.iter().map(|d| format!("ℤ/{d}")).collect();
    if free > 0 {
        parts.push(format!("ℤ^{free}"));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ⊕ ")
    }
}

fn to_u64(xs: &[BigInt]) -> Result<Vec<u64>> {
    xs.iter().map(|x| x.to_u64().ok_or(Error::Overflow)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionMatrix {
    pub generator: String,
    pub matrix: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub group_order: usize,
    pub gamma_order: usize,
    pub symbol_count: usize,
    pub relator_count: usize,
    pub k_rank: usize,
    pub h1_invariant_factors: Vec<u64>,
    pub h1_free_rank: usize,
    pub kg_torsion: Vec<u64>,
    pub kg_free_rank: usize,
    pub h2_invariant_factors: Vec<u64>,
    pub h2_basis_representatives: Vec<Vec<i64>>,
    pub gamma_action_matrices: Vec<ActionMatrix>,
    pub gamma_generation_rank: usize,
    pub gamma_module_generators: Vec<Vec<u64>>,
    pub five_term_diagnostics: Vec<Check>,
}

impl HomologyReport {
    pub fn passed(&self) -> bool {
        self.five_term_diagnostics.iter().all(|c| c.passed)
    }
}

/// Full pipeline: realize, compute H₁ and H₂, the Γ-action and all checks.
pub fn homology_report(ep: &EquivariantPresentation, opts: HomologyOptions) -> Result<HomologyReport> {
    EquivariantHomology::compute(ep, opts)?.report()
}
