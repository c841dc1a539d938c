//! Finite and weakly-finite Γ-equivariant presentations.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::action::{ActionTable, GammaSet, GeneratorOrbit};
use crate::error::{Error, Result};
use crate::permgroup::{generated_order, PermGroup, Permutation};
use crate::presentation::{Presentation, Realization};
use crate::word::{Letter, SymbolRef, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Finite,
    Weak,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Finite => "finite",
            Mode::Weak => "weak",
        }
    }
}

/// `(S₀, R₀)` over a Γ-set, plus `ι: S₀ → Γ` in weak mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantPresentation {
    gs: GammaSet,
    r0: Vec<Word>,
    mode: Mode,
    /// One Γ-element per orbit (the image of its representative), weak mode only.
    iota: Option<Vec<Permutation>>,
}

impl EquivariantPresentation {
    pub fn finite(gs: GammaSet, r0: Vec<Word>) -> Result<Self> {
        Self::build(gs, r0, Mode::Finite, None)
    }

    pub fn weak(gs: GammaSet, r0: Vec<Word>, iota: Vec<Permutation>) -> Result<Self> {
        if iota.len() != gs.orbits().len() {
            return Err(Error::Invalid(format!(
                "ι needs one element per orbit ({} given, {} orbits)",
                iota.len(),
                gs.orbits().len()
            )));
        }
        for p in &iota {
            if p.degree() != gs.gamma().degree() {
                return Err(Error::DegreeMismatch {
                    left: gs.gamma().degree(),
                    right: p.degree(),
                });
            }
        }
        Self::build(gs, r0, Mode::Weak, Some(iota))
    }

    fn build(gs: GammaSet, r0: Vec<Word>, mode: Mode, iota: Option<Vec<Permutation>>) -> Result<Self> {
        for r in &r0 {
            for s in r.symbols() {
                gs.check_symbol(s)?;
            }
        }
        Ok(EquivariantPresentation { gs, r0, mode, iota })
    }

    pub fn gamma_set(&self) -> &GammaSet {
        &self.gs
    }

    pub fn r0(&self) -> &[Word] {
        &self.r0
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn iota(&self) -> Option<&[Permutation]> {
        self.iota.as_deref()
    }

    pub fn tabulate(&self) -> Result<ActionTable> {
        self.gs.tabulate()
    }

    /// `ι` on every symbol, in `enumerate_s` order: `ι(^t s₀) = t·ι(s₀)·t⁻¹`.
    pub fn iota_all(&self, table: &ActionTable) -> Result<Vec<Permutation>> {
        let iota = self.iota.as_ref().ok_or(Error::ModeMismatch { expected: "weak" })?;
        let mut out = Vec::with_capacity(self.gs.symbol_count());
        for (oi, o) in self.gs.orbits().iter().enumerate() {
            let transversal = table.transversal(oi, o.base_point);
            for t in transversal {
                out.push(iota[oi].conjugated_by(&table.elements()[t]));
            }
        }
        Ok(out)
    }

    /// `R_conj`: `s·t·s⁻¹·(^s t)⁻¹` for every ordered pair, with `^s t`
    /// computed by acting with `ι(s)`. Trivial words are dropped.
    pub fn r_conj(&self) -> Result<Vec<ConjRelator>> {
        if self.mode != Mode::Weak {
            return Err(Error::ModeMismatch { expected: "weak" });
        }
        let table = self.tabulate()?;
        self.r_conj_with(&table)
    }

    pub fn r_conj_with(&self, table: &ActionTable) -> Result<Vec<ConjRelator>> {
        let iota = self.iota_all(table)?;
        let symbols = self.gs.enumerate_s();
        let mut out = Vec::new();
        for (si, &s) in symbols.iter().enumerate() {
            let k = table.element_index(&iota[si]).ok_or_else(|| {
                Error::Invalid(format!("ι({}) is not an element of Γ", self.gs.symbol_name(s)))
            })?;
            for &t in &symbols {
                let st = table.act_symbol(k, t);
                let w: Word = vec![Letter::pos(s), Letter::pos(t), Letter::neg(s), Letter::neg(st)].into();
                if !w.is_empty() {
                    out.push(ConjRelator { s, t, word: w });
                }
            }
        }
        Ok(out)
    }

    /// `R = Γ·R₀` (plus `R_conj` in weak mode), deduplicated as exact words in
    /// first-occurrence order: Γ elements in enumeration order, then `R₀`.
    pub fn expand_r(&self) -> Result<ExpandedPresentation> {
        let table = self.tabulate()?;
        self.expand_r_with(&table)
    }

    pub fn expand_r_with(&self, table: &ActionTable) -> Result<ExpandedPresentation> {
        let mut seen = HashSet::new();
        let mut relators = Vec::new();
        let mut provenance = Vec::new();
        for k in 0..table.order() {
            for (ri, r) in self.r0.iter().enumerate() {
                let w = table.act_word(k, r);
                if !w.is_empty() && seen.insert(w.clone()) {
                    relators.push(w);
                    provenance.push(Origin::Orbit {
                        gamma: k,
                        r0_index: ri,
                    });
                }
            }
        }
        if self.mode == Mode::Weak {
            for c in self.r_conj_with(table)? {
                if seen.insert(c.word.clone()) {
                    relators.push(c.word);
                    provenance.push(Origin::Conj { s: c.s, t: c.t });
                }
            }
        }
        let symbols = self.gs.enumerate_s();
        let names = symbols.iter().map(|&s| self.gs.symbol_name(s)).collect();
        Ok(ExpandedPresentation {
            presentation: Presentation::new(symbols, names, relators)?,
            provenance,
        })
    }

    pub fn realize(&self, max_cosets: usize) -> Result<(ExpandedPresentation, Realization)> {
        let expanded = self.expand_r()?;
        let real = expanded.presentation.regular_realization(max_cosets)?;
        Ok((expanded, real))
    }

    /// Runs every structural check and realizes the group.
    pub fn validate(&self, max_cosets: usize) -> Result<ValidationReport> {
        let table = self.tabulate()?;
        let mut checks = Vec::new();

        checks.push(Check::new(
            "action_homomorphism",
            table.is_homomorphism(),
            if table.is_homomorphism() {
                format!("generator actions extend over all {} elements of Γ", table.order())
            } else {
                table.conflicts()[0].clone()
            },
        ));

        let mut iota_all = None;
        if self.mode == Mode::Weak {
            let iota = self.iota.as_ref().expect("weak mode has ι");
            let missing: Vec<String> = iota
                .iter()
                .enumerate()
                .filter(|(_, p)| table.element_index(p).is_none())
                .map(|(i, _)| self.gs.orbits()[i].rep_name.clone())
                .collect();
            checks.push(Check::new(
                "iota_in_gamma",
                missing.is_empty(),
                if missing.is_empty() {
                    "every ι(s₀) lies in Γ".to_string()
                } else {
                    format!("ι not in Γ for {}", missing.join(", "))
                },
            ));

            let mut bad = Vec::new();
            for (oi, s0) in self.gs.s0().into_iter().enumerate() {
                for sigma in self.gs.stabilizer_of_symbol(s0)? {
                    if iota[oi].conjugated_by(&sigma) != iota[oi] {
                        bad.push(format!("{} by {sigma}", self.gs.symbol_name(s0)));
                    }
                }
            }
            checks.push(Check::new(
                "iota_equivariant",
                bad.is_empty(),
                if bad.is_empty() {
                    "stabilizer generators centralize ι(s₀)".to_string()
                } else {
                    format!("not centralized: {}", bad.join("; "))
                },
            ));

            let all = self.iota_all(&table)?;
            let sub = PermGroup::new(
                self.gs.gamma().degree(),
                all.iter().enumerate().map(|(i, p)| (format!("i{i}"), p.clone())).collect(),
            )?
            .with_element_cap(self.gs.gamma().element_cap());
            let members: HashSet<Permutation> = sub.enumerate_elements()?.into_iter().collect();
            let normal = all.iter().all(|x| {
                self.gs
                    .gamma()
                    .generators()
                    .iter()
                    .all(|g| members.contains(&x.conjugated_by(g)))
            });
            checks.push(Check::new(
                "iota_normal",
                normal,
                format!("⟨ι(S)⟩ has order {} and is {}normal in Γ", members.len(), if normal { "" } else { "not " }),
            ));
            iota_all = Some((all, members.len()));
        }

        let expanded = self.expand_r_with(&table)?;
        let pres = &expanded.presentation;
        let real = pres.regular_realization(max_cosets)?;
        let order = real.order();
        checks.push(Check::new(
            "realization",
            true,
            format!("coset enumeration closed with {order} cosets over {} relators", pres.relators().len()),
        ));

        let closes = pres.relators().iter().all(|r| real.table.closes(pres, r));
        let rel = pres.verify_relators(&real.assignment)?;
        checks.push(Check::new(
            "relators_hold",
            closes && rel.passed(),
            format!("{} relators evaluated in the regular representation", rel.checked),
        ));

        if let Some((all, sub_order)) = &iota_all {
            let assignment: BTreeMap<SymbolRef, Permutation> =
                self.gs.enumerate_s().into_iter().zip(all.iter().cloned()).collect();
            let rel = pres.verify_relators(&assignment)?;
            let ok = *sub_order == order && rel.passed();
            checks.push(Check::new(
                "iota_realization_agrees",
                ok,
                format!(
                    "|⟨ι(S)⟩| = {sub_order}, realized order {order}, {} relator failures under ι",
                    rel.failures.len()
                ),
            ));
        }

        let gen_order = generated_order(order, &real.symbol_perms, order.max(1))?;
        checks.push(Check::new(
            "symbols_generate",
            gen_order == order,
            format!("symbol images generate a group of order {gen_order}"),
        ));

        let set: HashSet<&Word> = pres.relators().iter().collect();
        let mut closed = true;
        'outer: for g in self.gs.gamma().generators() {
            let k = table.element_index(g).expect("generator in Γ");
            for r in pres.relators() {
                if !set.contains(&table.act_word(k, r)) {
                    closed = false;
                    break 'outer;
                }
            }
        }
        checks.push(Check::new(
            "gamma_closure",
            closed,
            "Γ-generators permute the expanded relator set".to_string(),
        ));

        Ok(ValidationReport {
            mode: self.mode,
            gamma_order: table.order(),
            symbol_count: self.gs.symbol_count(),
            r0_count: self.r0.len(),
            relator_count: pres.relators().len(),
            realized_order: order,
            checks,
        })
    }

    /// The same group with Γ replaced by the trivial group: every symbol
    /// becomes its own orbit and `R₀` becomes the full expanded relator set.
    pub fn trivialized(&self) -> Result<EquivariantPresentation> {
        let expanded = self.expand_r()?;
        let symbols = self.gs.enumerate_s();
        let orbits = symbols
            .iter()
            .map(|&s| GeneratorOrbit {
                rep_name: format!("{}{}", self.gs.orbits()[s.orbit_index].rep_name, s.point),
                domain_size: 1,
                action: Vec::new(),
                base_point: 0,
            })
            .collect();
        let gs = GammaSet::new(PermGroup::trivial(self.gs.gamma().degree()), orbits)?;
        let relabel: BTreeMap<SymbolRef, SymbolRef> = symbols
            .iter()
            .enumerate()
            .map(|(i, &s)| (s, SymbolRef::new(i, 0)))
            .collect();
        let r0 = expanded
            .presentation
            .relators()
            .iter()
            .map(|r| r.map_symbols(|s| relabel[&s]))
            .collect();
        EquivariantPresentation::finite(gs, r0)
    }
}

/// One member of `R_conj`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjRelator {
    pub s: SymbolRef,
    pub t: SymbolRef,
    pub word: Word,
}

/// Where an expanded relator came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    /// `^γ r₀` with γ the Γ-element at this enumeration index.
    Orbit { gamma: usize, r0_index: usize },
    Conj { s: SymbolRef, t: SymbolRef },
}

#[derive(Debug, Clone)]
pub struct ExpandedPresentation {
    pub presentation: Presentation,
    pub provenance: Vec<Origin>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub mode: Mode,
    pub gamma_order: usize,
    pub symbol_count: usize,
    pub r0_count: usize,
    pub relator_count: usize,
    pub realized_order: usize,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}
