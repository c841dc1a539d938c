//! The alphabet `S = Γ·S₀` as a union of explicit Γ-orbits.
//!
//! Each orbit carries, for every generator `g` of Γ, a permutation `ρ(g)` of
//! its domain, and `ρ` is expected to respect left-to-right composition. The
//! *left* action on symbols is `^γ p = ρ(γ)⁻¹(p)`. With products written left
//! to right this is the convention under which `^{γδ}s = ^γ(^δ s)` holds and
//! under which conjugation `γ g γ⁻¹` inside an ambient permutation group
//! matches the action on generator symbols.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::permgroup::{CayleyBfs, PermGroup, Permutation};
use crate::word::{Letter, SymbolRef, Word};

/// One Γ-orbit of generator symbols, given extensionally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorOrbit {
    pub rep_name: String,
    pub domain_size: usize,
    /// `action[i]` is the permutation of the domain attached to Γ-generator `i`.
    pub action: Vec<Permutation>,
    pub base_point: usize,
}

impl GeneratorOrbit {
    fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.domain_size];
        seen[self.base_point] = true;
        let mut stack = vec![self.base_point];
        let mut count = 1;
        while let Some(p) = stack.pop() {
            for g in &self.action {
                for q in [g.apply(p), g.inverse().apply(p)] {
                    if !seen[q] {
                        seen[q] = true;
                        count += 1;
                        stack.push(q);
                    }
                }
            }
        }
        count == self.domain_size
    }
}

/// Γ together with its orbits of generator symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaSet {
    gamma: PermGroup,
    orbits: Vec<GeneratorOrbit>,
}

impl GammaSet {
    pub fn new(gamma: PermGroup, orbits: Vec<GeneratorOrbit>) -> Result<Self> {
        let ngens = gamma.generators().len();
        for (i, o) in orbits.iter().enumerate() {
            if orbits[..i].iter().any(|p| p.rep_name == o.rep_name) {
                return Err(Error::Invalid(format!(
                    "duplicate orbit name `{}`",
                    o.rep_name
                )));
            }
            if o.domain_size == 0 {
                return Err(Error::Invalid(format!("orbit `{}` is empty", o.rep_name)));
            }
            if o.base_point >= o.domain_size {
                return Err(Error::PointOutOfRange {
                    point: o.base_point,
                    degree: o.domain_size,
                });
            }
            if o.action.len() != ngens {
                return Err(Error::Invalid(format!(
                    "orbit `{}` gives {} action permutations for {} generators",
                    o.rep_name,
                    o.action.len(),
                    ngens
                )));
            }
            for p in &o.action {
                if p.degree() != o.domain_size {
                    return Err(Error::DegreeMismatch {
                        left: o.domain_size,
                        right: p.degree(),
                    });
                }
            }
            if !o.is_transitive() {
                return Err(Error::Invalid(format!(
                    "Γ does not act transitively on orbit `{}`",
                    o.rep_name
                )));
            }
        }
        Ok(GammaSet { gamma, orbits })
    }

    pub fn gamma(&self) -> &PermGroup {
        &self.gamma
    }

    pub fn orbits(&self) -> &[GeneratorOrbit] {
        &self.orbits
    }

    pub fn orbit_index(&self, name: &str) -> Option<usize> {
        self.orbits.iter().position(|o| o.rep_name == name)
    }

    /// The representatives `S₀`, one per orbit.
    pub fn s0(&self) -> Vec<SymbolRef> {
        self.orbits
            .iter()
            .enumerate()
            .map(|(i, o)| SymbolRef::new(i, o.base_point))
            .collect()
    }

    pub fn is_s0(&self, s: SymbolRef) -> bool {
        self.orbits
            .get(s.orbit_index)
            .is_some_and(|o| o.base_point == s.point)
    }

    /// Every symbol, orbit by orbit, points in increasing order.
    pub fn enumerate_s(&self) -> Vec<SymbolRef> {
        self.orbits
            .iter()
            .enumerate()
            .flat_map(|(i, o)| (0..o.domain_size).map(move |p| SymbolRef::new(i, p)))
            .collect()
    }

    pub fn symbol_count(&self) -> usize {
        self.orbits.iter().map(|o| o.domain_size).sum()
    }

    /// Position of `s` in `enumerate_s`.
    pub fn symbol_position(&self, s: SymbolRef) -> Result<usize> {
        self.check_symbol(s)?;
        Ok(self.orbits[..s.orbit_index]
            .iter()
            .map(|o| o.domain_size)
            .sum::<usize>()
            + s.point)
    }

    pub fn symbol_name(&self, s: SymbolRef) -> String {
        match self.orbits.get(s.orbit_index) {
            Some(o) => format!("{}.{}", o.rep_name, s.point),
            None => s.to_string(),
        }
    }

    pub fn check_symbol(&self, s: SymbolRef) -> Result<()> {
        match self.orbits.get(s.orbit_index) {
            Some(o) if s.point < o.domain_size => Ok(()),
            _ => Err(Error::SymbolOutOfRange(s)),
        }
    }

    fn step(&self, gen: usize, exponent: i32, s: SymbolRef) -> SymbolRef {
        let rho = &self.orbits[s.orbit_index].action[gen];
        let point = if exponent > 0 {
            rho.inverse().apply(s.point)
        } else {
            rho.apply(s.point)
        };
        SymbolRef::new(s.orbit_index, point)
    }

    fn resolve(&self, gamma_word: &[(String, i32)]) -> Result<Vec<(usize, i32)>> {
        gamma_word
            .iter()
            .map(|(name, e)| {
                let g = self
                    .gamma
                    .generator_index(name)
                    .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
                if *e != 1 && *e != -1 {
                    return Err(Error::Invalid(format!("exponent {e} in Γ-word")));
                }
                Ok((g, *e))
            })
            .collect()
    }

    /// `^γ s` for γ given as a word in Γ's generators.
    pub fn act_symbol(&self, gamma_word: &[(String, i32)], s: SymbolRef) -> Result<SymbolRef> {
        self.check_symbol(s)?;
        let word = self.resolve(gamma_word)?;
        Ok(word.iter().rev().fold(s, |acc, &(g, e)| self.step(g, e, acc)))
    }

    /// Letterwise action on a word; exponents are preserved.
    pub fn act_word(&self, gamma_word: &[(String, i32)], w: &Word) -> Result<Word> {
        let word = self.resolve(gamma_word)?;
        for s in w.symbols() {
            self.check_symbol(s)?;
        }
        Ok(w.map_symbols(|s| word.iter().rev().fold(s, |acc, &(g, e)| self.step(g, e, acc))))
    }

    /// Generators of `Γ_s` as elements of Γ, via Schreier's lemma applied to
    /// the action on the orbit of `s`.
    pub fn stabilizer_of_symbol(&self, s: SymbolRef) -> Result<Vec<Permutation>> {
        self.check_symbol(s)?;
        let orbit = &self.orbits[s.orbit_index];
        let gens = self.gamma.generators();
        // transversal[q] is an element t with ^t s = q
        let mut transversal: Vec<Option<Permutation>> = vec![None; orbit.domain_size];
        transversal[s.point] = Some(self.gamma.identity());
        let mut order = vec![s.point];
        let mut queue = VecDeque::from([s.point]);
        while let Some(q) = queue.pop_front() {
            let tq = transversal[q].clone().expect("visited");
            for (gi, g) in gens.iter().enumerate() {
                let r = orbit.action[gi].inverse().apply(q);
                if transversal[r].is_none() {
                    transversal[r] = Some(g.then(&tq));
                    order.push(r);
                    queue.push_back(r);
                }
            }
        }
        let mut out: Vec<Permutation> = Vec::new();
        for &q in &order {
            let tq = transversal[q].as_ref().expect("visited");
            for (gi, g) in gens.iter().enumerate() {
                let r = orbit.action[gi].inverse().apply(q);
                let tr = transversal[r].as_ref().expect("orbit closed");
                let sg = tr.inverse().then(g).then(tq);
                if !sg.is_identity() && !out.contains(&sg) {
                    out.push(sg);
                }
            }
        }
        Ok(out)
    }

    /// Enumerates Γ and extends the generator actions to every element,
    /// recording any product on which the extension is inconsistent.
    pub fn tabulate(&self) -> Result<ActionTable> {
        let gens = self.gamma.generators();
        let bfs = CayleyBfs::run(
            self.gamma.identity(),
            gens,
            self.gamma.element_cap(),
            "group enumeration",
        )?;
        let n = bfs.elements.len();
        let ids: Vec<Permutation> = self
            .orbits
            .iter()
            .map(|o| Permutation::identity(o.domain_size))
            .collect();
        let mut rho: Vec<Option<Vec<Permutation>>> = vec![None; n];
        rho[0] = Some(ids);
        let mut conflicts = Vec::new();
        // Elements are discovered in BFS order, so parents are filled first.
        for k in 1..n {
            let (p, g) = bfs.parent[k].expect("non-identity has a parent");
            let prev = rho[p].as_ref().expect("parent tabulated");
            rho[k] = Some(
                prev.iter()
                    .zip(&self.orbits)
                    .map(|(r, o)| r.then(&o.action[g]))
                    .collect(),
            );
        }
        let rho: Vec<Vec<Permutation>> = rho.into_iter().map(|r| r.expect("filled")).collect();
        for k in 0..n {
            for (g, gp) in gens.iter().enumerate() {
                let j = bfs.index[&bfs.elements[k].then(gp)];
                for (oi, o) in self.orbits.iter().enumerate() {
                    if rho[k][oi].then(&o.action[g]) != rho[j][oi] {
                        conflicts.push(format!(
                            "orbit `{}`: action of element #{k} times generator `{}` disagrees with element #{j}",
                            o.rep_name,
                            self.gamma.names()[g]
                        ));
                    }
                }
            }
        }
        let left = rho
            .iter()
            .map(|per_orbit| per_orbit.iter().map(|r| r.inverse()).collect())
            .collect();
        Ok(ActionTable {
            elements: bfs.elements,
            index: bfs.index,
            left,
            conflicts,
        })
    }
}

/// Γ enumerated, with the induced left action of each element on every orbit.
#[derive(Debug, Clone)]
pub struct ActionTable {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    /// `left[k][o]` maps a point of orbit `o` to its image under element `k`.
    left: Vec<Vec<Permutation>>,
    conflicts: Vec<String>,
}

impl ActionTable {
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element_index(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Products on which the generator actions failed to extend consistently.
    pub fn conflicts(&self) -> &[String] {
        &self.conflicts
    }

    pub fn is_homomorphism(&self) -> bool {
        self.conflicts.is_empty()
    }

    pub fn act_symbol(&self, element: usize, s: SymbolRef) -> SymbolRef {
        SymbolRef::new(s.orbit_index, self.left[element][s.orbit_index].apply(s.point))
    }

    pub fn act_letter(&self, element: usize, l: Letter) -> Letter {
        Letter {
            symbol: self.act_symbol(element, l.symbol),
            inverted: l.inverted,
        }
    }

    pub fn act_word(&self, element: usize, w: &Word) -> Word {
        w.map_symbols(|s| self.act_symbol(element, s))
    }

    /// Acting element given as a permutation of Γ's points.
    pub fn act_symbol_by(&self, g: &Permutation, s: SymbolRef) -> Result<SymbolRef> {
        let k = self.element_index(g).ok_or(Error::NotInGroup)?;
        Ok(self.act_symbol(k, s))
    }

    /// An element `t` with `^t s₀ = s` for each point of the orbit of `s₀`,
    /// taking the first such element in enumeration order.
    pub fn transversal(&self, orbit_index: usize, base_point: usize) -> Vec<usize> {
        let size = self.left[0][orbit_index].degree();
        let mut out = vec![usize::MAX; size];
        for k in 0..self.elements.len() {
            let q = self.left[k][orbit_index].apply(base_point);
            if out[q] == usize::MAX {
                out[q] = k;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::generated_order;

    fn perm(d: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(d, cycles).unwrap()
    }

    /// Sym_n acting naturally on a single orbit of size n.
    fn natural(n: usize) -> GammaSet {
        let cycle: Vec<usize> = (0..n).collect();
        let gens = vec![
            ("t".to_string(), perm(n, &[&[0, 1]])),
            ("c".to_string(), perm(n, &[&cycle])),
        ];
        let action = gens.iter().map(|(_, p)| p.clone()).collect();
        GammaSet::new(
            PermGroup::new(n, gens).unwrap(),
            vec![GeneratorOrbit {
                rep_name: "s".into(),
                domain_size: n,
                action,
                base_point: 0,
            }],
        )
        .unwrap()
    }

    fn w(gens: &[(&str, i32)]) -> Vec<(String, i32)> {
        gens.iter().map(|(n, e)| (n.to_string(), *e)).collect()
    }

    #[test]
    fn act_symbol_examples() {
        let gs = natural(3);
        let s = SymbolRef::new(0, 0);
        assert_eq!(gs.act_symbol(&[], s).unwrap(), s);
        assert_eq!(gs.act_symbol(&w(&[("t", 1)]), s).unwrap(), SymbolRef::new(0, 1));
        assert_eq!(gs.act_symbol(&w(&[("c", 1), ("c", -1)]), s).unwrap(), s);
        assert_eq!(
            gs.act_symbol(&w(&[("x", 1)]), s),
            Err(Error::UnknownGenerator("x".into()))
        );
        assert_eq!(
            gs.act_symbol(&[], SymbolRef::new(0, 3)),
            Err(Error::SymbolOutOfRange(SymbolRef::new(0, 3)))
        );
    }

    #[test]
    fn act_word_examples() {
        let gs = natural(3);
        let s0 = SymbolRef::new(0, 0);
        let s1 = SymbolRef::new(0, 1);
        let word: Word = vec![Letter::pos(s0), Letter::neg(s1)].into();
        assert_eq!(
            gs.act_word(&w(&[("t", 1)]), &word).unwrap().letters(),
            &[Letter::pos(s1), Letter::neg(s0)]
        );
        assert!(gs.act_word(&w(&[("t", 1)]), &Word::empty()).unwrap().is_empty());
        assert_eq!(gs.act_word(&[], &word).unwrap(), word);
    }

    #[test]
    fn left_action_law_on_words() {
        let gs = natural(4);
        let words = [
            w(&[("c", 1)]),
            w(&[("t", 1), ("c", 1)]),
            w(&[("c", -1), ("t", 1), ("c", 1)]),
        ];
        for a in &words {
            for b in &words {
                let ab: Vec<_> = a.iter().chain(b.iter()).cloned().collect();
                for s in gs.enumerate_s() {
                    let lhs = gs.act_symbol(&ab, s).unwrap();
                    let rhs = gs.act_symbol(a, gs.act_symbol(b, s).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn enumerate_s_examples() {
        assert_eq!(natural(3).enumerate_s().len(), 3);
        let g = PermGroup::trivial(1);
        let two = GammaSet::new(
            g,
            vec![
                GeneratorOrbit {
                    rep_name: "a".into(),
                    domain_size: 1,
                    action: vec![],
                    base_point: 0,
                },
                GeneratorOrbit {
                    rep_name: "b".into(),
                    domain_size: 1,
                    action: vec![],
                    base_point: 0,
                },
            ],
        )
        .unwrap();
        assert_eq!(two.enumerate_s().len(), 2);
        assert_eq!(two.symbol_position(SymbolRef::new(1, 0)).unwrap(), 1);
    }

    #[test]
    fn two_orbits_sizes_two_and_three() {
        let g = PermGroup::new(
            5,
            vec![("c".into(), perm(5, &[&[0, 1], &[2, 3, 4]]))],
        )
        .unwrap();
        let gs = GammaSet::new(
            g,
            vec![
                GeneratorOrbit {
                    rep_name: "a".into(),
                    domain_size: 2,
                    action: vec![perm(2, &[&[0, 1]])],
                    base_point: 0,
                },
                GeneratorOrbit {
                    rep_name: "b".into(),
                    domain_size: 3,
                    action: vec![perm(3, &[&[0, 1, 2]])],
                    base_point: 0,
                },
            ],
        )
        .unwrap();
        assert_eq!(gs.enumerate_s().len(), 5);
        let table = gs.tabulate().unwrap();
        assert!(table.is_homomorphism());
        for (o, orbit) in gs.orbits().iter().enumerate() {
            let st = gs.stabilizer_of_symbol(SymbolRef::new(o, 0)).unwrap();
            assert_eq!(
                orbit.domain_size * generated_order(5, &st, 1000).unwrap(),
                table.order()
            );
        }
    }

    #[test]
    fn rejects_intransitive_orbit() {
        let g = PermGroup::new(3, vec![("a".into(), perm(3, &[&[0, 1]]))]).unwrap();
        let r = GammaSet::new(
            g,
            vec![GeneratorOrbit {
                rep_name: "s".into(),
                domain_size: 3,
                action: vec![perm(3, &[&[0, 1]])],
                base_point: 0,
            }],
        );
        assert!(matches!(r, Err(Error::Invalid(_))));
    }

    #[test]
    fn stabilizer_examples() {
        let gs = natural(4);
        let st = gs.stabilizer_of_symbol(SymbolRef::new(0, 0)).unwrap();
        assert_eq!(generated_order(4, &st, 100).unwrap(), 6);
        let table = gs.tabulate().unwrap();
        for g in &st {
            assert_eq!(
                table.act_symbol_by(g, SymbolRef::new(0, 0)).unwrap(),
                SymbolRef::new(0, 0)
            );
        }

        let trivial = GammaSet::new(
            PermGroup::trivial(2),
            vec![GeneratorOrbit {
                rep_name: "s".into(),
                domain_size: 1,
                action: vec![],
                base_point: 0,
            }],
        )
        .unwrap();
        assert!(trivial
            .stabilizer_of_symbol(SymbolRef::new(0, 0))
            .unwrap()
            .is_empty());

        // orbit of size one: every generator fixes the symbol
        let g = PermGroup::new(
            3,
            vec![
                ("a".into(), perm(3, &[&[0, 1]])),
                ("b".into(), perm(3, &[&[1, 2]])),
            ],
        )
        .unwrap();
        let gens = g.generators().to_vec();
        let fixed = GammaSet::new(
            g,
            vec![GeneratorOrbit {
                rep_name: "z".into(),
                domain_size: 1,
                action: vec![Permutation::identity(1); 2],
                base_point: 0,
            }],
        )
        .unwrap();
        assert_eq!(
            fixed.stabilizer_of_symbol(SymbolRef::new(0, 0)).unwrap(),
            gens
        );
    }

    #[test]
    fn tabulate_detects_non_homomorphism() {
        // Γ = Z/2 but the orbit action claims order 3
        let g = PermGroup::new(3, vec![("a".into(), perm(3, &[&[0, 1]]))]).unwrap();
        let gs = GammaSet::new(
            g,
            vec![GeneratorOrbit {
                rep_name: "s".into(),
                domain_size: 3,
                action: vec![perm(3, &[&[0, 1, 2]])],
                base_point: 0,
            }],
        )
        .unwrap();
        assert!(!gs.tabulate().unwrap().is_homomorphism());
    }

    #[test]
    fn table_matches_word_action() {
        let gs = natural(4);
        let table = gs.tabulate().unwrap();
        for (k, el) in table.elements().iter().enumerate() {
            let word = gs.gamma().word_for_element(el).unwrap();
            for s in gs.enumerate_s() {
                assert_eq!(table.act_symbol(k, s), gs.act_symbol(&word, s).unwrap());
            }
        }
    }
}
