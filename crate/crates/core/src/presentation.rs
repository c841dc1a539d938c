//! Finitely presented groups and their realization by coset enumeration.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::permgroup::{PermGroup, Permutation};
use crate::word::{SymbolRef, Word};

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

/// `⟨S | R⟩` over an explicit, ordered alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    symbols: Vec<SymbolRef>,
    names: Vec<String>,
    relators: Vec<Word>,
    position: HashMap<SymbolRef, usize>,
}

impl Presentation {
    /// Empty relators are dropped; a relator mentioning a symbol outside the
    /// alphabet is an error.
    pub fn new(symbols: Vec<SymbolRef>, names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        if names.len() != symbols.len() {
            return Err(Error::Invalid("one name per symbol required".into()));
        }
        let position: HashMap<SymbolRef, usize> =
            symbols.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        if position.len() != symbols.len() {
            return Err(Error::Invalid("duplicate symbol in alphabet".into()));
        }
        for r in &relators {
            for s in r.symbols() {
                if !position.contains_key(&s) {
                    return Err(Error::SymbolOutOfRange(s));
                }
            }
        }
        Ok(Presentation {
            symbols,
            names,
            relators: relators.into_iter().filter(|r| !r.is_empty()).collect(),
            position,
        })
    }

    /// Symbols named by their `Display` form.
    pub fn unnamed(symbols: Vec<SymbolRef>, relators: Vec<Word>) -> Result<Self> {
        let names = symbols.iter().map(|s| s.to_string()).collect();
        Self::new(symbols, names, relators)
    }

    pub fn symbols(&self) -> &[SymbolRef] {
        &self.symbols
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn position(&self, s: SymbolRef) -> Option<usize> {
        self.position.get(&s).copied()
    }

    /// Column index in a coset table: `2i` for `sᵢ`, `2i+1` for `sᵢ⁻¹`.
    fn columns(&self, w: &Word) -> Vec<usize> {
        w.letters()
            .iter()
            .map(|l| 2 * self.position[&l.symbol] + usize::from(l.inverted))
            .collect()
    }

    /// Exponent-sum matrix: one row per relator, one column per symbol.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| {
                let mut row = vec![0i64; self.symbols.len()];
                for l in r.letters() {
                    row[self.position[&l.symbol]] += l.exponent() as i64;
                }
                row
            })
            .collect()
    }

    /// Evaluates `w` under `assignment`, multiplying left to right.
    pub fn evaluate(&self, w: &Word, assignment: &BTreeMap<SymbolRef, Permutation>) -> Result<Permutation> {
        let degree = match assignment.values().next() {
            Some(p) => p.degree(),
            None => {
                return match w.letters().first() {
                    Some(l) => Err(Error::MissingImage(l.symbol)),
                    None => Ok(Permutation::identity(0)),
                }
            }
        };
        let mut acc = Permutation::identity(degree);
        for l in w.letters() {
            let p = assignment.get(&l.symbol).ok_or(Error::MissingImage(l.symbol))?;
            acc = if l.inverted {
                acc.compose(&p.inverse())?
            } else {
                acc.compose(p)?
            };
        }
        Ok(acc)
    }

    /// Checks every relator against a concrete assignment of permutations.
    pub fn verify_relators(&self, assignment: &BTreeMap<SymbolRef, Permutation>) -> Result<RelatorReport> {
        for s in &self.symbols {
            if !assignment.contains_key(s) {
                return Err(Error::MissingImage(*s));
            }
        }
        let mut failures = Vec::new();
        for (i, r) in self.relators.iter().enumerate() {
            if !self.evaluate(r, assignment)?.is_identity() {
                failures.push(i);
            }
        }
        Ok(RelatorReport {
            checked: self.relators.len(),
            failures,
        })
    }

    pub fn todd_coxeter(&self, subgroup: &[Word], max_cosets: usize) -> Result<CosetTable> {
        Enumerator::new(self, max_cosets).run(subgroup)
    }

    /// The action of the group on itself by right multiplication.
    pub fn regular_realization(&self, max_cosets: usize) -> Result<Realization> {
        let table = self.todd_coxeter(&[], max_cosets)?;
        let symbol_perms: Vec<Permutation> = (0..self.symbols.len())
            .map(|i| {
                Permutation::from_images((0..table.num_cosets).map(|c| table.get(c, 2 * i)).collect())
                    .expect("completed coset table columns are bijections")
            })
            .collect();
        let group = PermGroup::new(
            table.num_cosets,
            self.names.iter().cloned().zip(symbol_perms.iter().cloned()).collect(),
        )?
        .with_element_cap(table.num_cosets.max(1));
        let assignment = self.symbols.iter().copied().zip(symbol_perms.iter().cloned()).collect();
        Ok(Realization {
            group,
            symbol_perms,
            assignment,
            table,
        })
    }
}

/// Outcome of evaluating relators under an assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorReport {
    pub checked: usize,
    /// Indices of relators that did not evaluate to the identity.
    pub failures: Vec<usize>,
}

impl RelatorReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A group realized as permutations of the cosets of the trivial subgroup.
#[derive(Debug, Clone)]
pub struct Realization {
    pub group: PermGroup,
    pub symbol_perms: Vec<Permutation>,
    pub assignment: BTreeMap<SymbolRef, Permutation>,
    pub table: CosetTable,
}

impl Realization {
    pub fn order(&self) -> usize {
        self.table.num_cosets
    }
}

/// A complete coset table with standardized numbering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    pub num_cosets: usize,
    pub num_columns: usize,
    /// Row-major, `num_cosets × num_columns`.
    entries: Vec<usize>,
}

impl CosetTable {
    pub fn get(&self, coset: usize, column: usize) -> usize {
        self.entries[coset * self.num_columns + column]
    }

    pub fn row(&self, coset: usize) -> &[usize] {
        &self.entries[coset * self.num_columns..(coset + 1) * self.num_columns]
    }

    /// True if tracing `w` from every coset returns to that coset.
    pub fn closes(&self, p: &Presentation, w: &Word) -> bool {
        let cols = p.columns(w);
        (0..self.num_cosets).all(|c| cols.iter().fold(c, |acc, &x| self.get(acc, x)) == c)
    }
}

const UNDEF: usize = usize::MAX;

/// HLT coset enumeration with union-find coincidence handling.
struct Enumerator<'a> {
    pres: &'a Presentation,
    relators: Vec<Vec<usize>>,
    ncols: usize,
    table: Vec<Vec<usize>>,
    /// `forward[c] == c` for live cosets; otherwise a coset it was merged into.
    forward: Vec<usize>,
    queue: Vec<usize>,
    max_cosets: usize,
}

fn inv(col: usize) -> usize {
    col ^ 1
}

impl<'a> Enumerator<'a> {
    fn new(pres: &'a Presentation, max_cosets: usize) -> Self {
        let ncols = 2 * pres.symbols.len();
        Enumerator {
            pres,
            relators: pres.relators.iter().map(|r| pres.columns(r)).collect(),
            ncols,
            table: vec![vec![UNDEF; ncols]],
            forward: vec![0],
            queue: Vec::new(),
            max_cosets: max_cosets.max(1),
        }
    }

    fn live(&self, c: usize) -> bool {
        self.forward[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<()> {
        if self.table.len() >= self.max_cosets {
            return Err(Error::CapExceeded {
                what: "coset enumeration",
                cap: self.max_cosets,
            });
        }
        let d = self.table.len();
        self.table.push(vec![UNDEF; self.ncols]);
        self.forward.push(d);
        self.table[c][x] = d;
        self.table[d][inv(x)] = c;
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.forward[root] != root {
            root = self.forward[root];
        }
        let mut cur = c;
        while self.forward[cur] != root {
            let next = self.forward[cur];
            self.forward[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the classes of `a` and `b`; the smaller number survives.
    fn merge(&mut self, a: usize, b: usize) {
        let ra = self.rep(a);
        let rb = self.rep(b);
        if ra == rb {
            return;
        }
        let (keep, lose) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.forward[lose] = keep;
        self.queue.push(lose);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let gamma = self.queue[i];
            i += 1;
            for x in 0..self.ncols {
                let delta = self.table[gamma][x];
                if delta == UNDEF {
                    continue;
                }
                self.table[delta][inv(x)] = UNDEF;
                let mu = self.rep(gamma);
                let nu = self.rep(delta);
                if self.table[mu][x] != UNDEF {
                    let t = self.table[mu][x];
                    self.merge(nu, t);
                } else if self.table[nu][inv(x)] != UNDEF {
                    let t = self.table[nu][inv(x)];
                    self.merge(mu, t);
                } else {
                    self.table[mu][x] = nu;
                    self.table[nu][inv(x)] = mu;
                }
            }
        }
        self.queue.clear();
    }

    fn scan_and_fill(&mut self, alpha: usize, w: &[usize]) -> Result<()> {
        let r = w.len() as isize;
        let mut f = alpha;
        let mut b = alpha;
        let mut i: isize = 0;
        let mut j: isize = r - 1;
        loop {
            while i < r && self.table[f][w[i as usize]] != UNDEF {
                f = self.table[f][w[i as usize]];
                i += 1;
            }
            if i >= r {
                if f != alpha {
                    self.coincidence(f, alpha);
                }
                return Ok(());
            }
            while j >= i && self.table[b][inv(w[j as usize])] != UNDEF {
                b = self.table[b][inv(w[j as usize])];
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            let x = w[i as usize];
            if j == i {
                self.table[f][x] = b;
                self.table[b][inv(x)] = f;
                return Ok(());
            }
            self.define(f, x)?;
        }
    }

    fn run(mut self, subgroup: &[Word]) -> Result<CosetTable> {
        for h in subgroup {
            for s in h.symbols() {
                if self.pres.position(s).is_none() {
                    return Err(Error::SymbolOutOfRange(s));
                }
            }
            let cols = self.pres.columns(h);
            self.scan_and_fill(0, &cols)?;
        }
        let relators = std::mem::take(&mut self.relators);
        let mut alpha = 0;
        while alpha < self.table.len() {
            if self.live(alpha) {
                for r in &relators {
                    self.scan_and_fill(alpha, r)?;
                    if !self.live(alpha) {
                        break;
                    }
                }
                if self.live(alpha) {
                    for x in 0..self.ncols {
                        if self.table[alpha][x] == UNDEF {
                            self.define(alpha, x)?;
                        }
                    }
                }
            }
            alpha += 1;
        }
        self.relators = relators;
        Ok(self.standardize())
    }

    /// Renumbers live cosets by first appearance scanning rows in order.
    fn standardize(self) -> CosetTable {
        let mut new_of = vec![UNDEF; self.table.len()];
        let mut order = vec![0usize];
        new_of[0] = 0;
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            for x in 0..self.ncols {
                let d = self.table[c][x];
                debug_assert!(d != UNDEF && self.live(d));
                if new_of[d] == UNDEF {
                    new_of[d] = order.len();
                    order.push(d);
                }
            }
            k += 1;
        }
        let mut entries = Vec::with_capacity(order.len() * self.ncols);
        for &c in &order {
            entries.extend(self.table[c].iter().map(|&d| new_of[d]));
        }
        CosetTable {
            num_cosets: order.len(),
            num_columns: self.ncols,
            entries,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Letter;

    fn sym(i: usize) -> SymbolRef {
        SymbolRef::new(0, i)
    }

    fn word(pairs: &[(usize, i32)]) -> Word {
        pairs.iter().map(|&(i, e)| Letter::new(sym(i), e)).collect()
    }

    fn power(w: &Word, n: i32) -> Word {
        w.pow(n)
    }

    fn pres(n: usize, relators: Vec<Word>) -> Presentation {
        Presentation::unnamed((0..n).map(sym).collect(), relators).unwrap()
    }

    /// Two commuting involutions.
    fn z2sum2() -> Presentation {
        let a = Word::symbol(sym(0));
        let b = Word::symbol(sym(1));
        pres(
            2,
            vec![a.pow(2), b.pow(2), a.commutator(&b), b.commutator(&a)],
        )
    }

    /// The Γ-orbits of the star relators for n = 3.
    fn star3() -> Presentation {
        let s: Vec<Word> = (0..3).map(|i| Word::symbol(sym(i))).collect();
        let mut rels: Vec<Word> = s.iter().map(|w| w.pow(2)).collect();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    rels.push(power(&s[i].concat(&s[j]), 3));
                }
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    if i != j && j != k && i != k {
                        rels.push(power(&s[i].concat(&s[j]).concat(&s[k]), 4));
                    }
                }
            }
        }
        pres(3, rels)
    }

    #[test]
    fn cyclic_three() {
        let p = pres(1, vec![word(&[(0, 1), (0, 1), (0, 1)])]);
        let t = p.todd_coxeter(&[], 100).unwrap();
        assert_eq!(t.num_cosets, 3);
        let r = p.regular_realization(100).unwrap();
        assert_eq!(r.group.order().unwrap(), 3);
        assert_eq!(r.symbol_perms[0].to_string(), "(0 1 2)");
    }

    #[test]
    fn trivial_group() {
        let p = pres(1, vec![word(&[(0, 1)])]);
        let r = p.regular_realization(100).unwrap();
        assert_eq!(r.order(), 1);
    }

    #[test]
    fn z2sum_two() {
        let p = z2sum2();
        let t = p.todd_coxeter(&[], 100).unwrap();
        assert_eq!(t.num_cosets, 4);
        for r in p.relators() {
            assert!(t.closes(&p, r));
        }
        let real = p.regular_realization(100).unwrap();
        let (a, b) = (&real.symbol_perms[0], &real.symbol_perms[1]);
        assert!(a.then(a).is_identity() && !a.is_identity());
        assert_eq!(a.then(b), b.then(a));
        assert_eq!(real.group.order().unwrap(), 4);
    }

    #[test]
    fn star_three_has_order_72() {
        let p = star3();
        let t = p.todd_coxeter(&[], 1000).unwrap();
        assert_eq!(t.num_cosets, 72);
        for r in p.relators() {
            assert!(t.closes(&p, r));
        }
        // Sym₄ is only a quotient: s_i ↦ (i 3) satisfies every relator
        let assignment = (0..3)
            .map(|i| (sym(i), Permutation::from_cycles(4, &[&[i, 3]]).unwrap()))
            .collect();
        assert!(p.verify_relators(&assignment).unwrap().passed());
    }

    #[test]
    fn subgroup_index() {
        let p = star3();
        let t = p.todd_coxeter(&[Word::symbol(sym(0))], 1000).unwrap();
        assert_eq!(t.num_cosets, 36);
        let t = p.todd_coxeter(&[Word::symbol(sym(0)), Word::symbol(sym(1))], 1000).unwrap();
        assert_eq!(t.num_cosets, 12);
    }

    #[test]
    fn cap_exceeded_for_infinite_group() {
        let p = pres(1, vec![]);
        assert_eq!(
            p.todd_coxeter(&[], 50),
            Err(Error::CapExceeded {
                what: "coset enumeration",
                cap: 50
            })
        );
    }

    #[test]
    fn verify_relators_reports_failures() {
        let p = pres(1, vec![word(&[(0, 1), (0, 1), (0, 1)])]);
        let assignment = BTreeMap::from([(sym(0), Permutation::from_cycles(2, &[&[0, 1]]).unwrap())]);
        assert_eq!(p.verify_relators(&assignment).unwrap().failures, vec![0]);
        let empty = pres(1, vec![]);
        assert!(empty.verify_relators(&assignment).unwrap().passed());
        assert_eq!(
            p.verify_relators(&BTreeMap::new()),
            Err(Error::MissingImage(sym(0)))
        );
    }

    #[test]
    fn deterministic_tables() {
        let p = star3();
        assert_eq!(
            p.todd_coxeter(&[], 1000).unwrap(),
            p.todd_coxeter(&[], 1000).unwrap()
        );
    }
}
