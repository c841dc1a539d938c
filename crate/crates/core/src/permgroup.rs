//! Finite permutation groups by explicit enumeration.
//!
//! Composition is left to right throughout: `p.compose(q)` applies `p` first,
//! then `q`, and a word `g₁g₂…gₖ` evaluates to `g₁.compose(g₂)…compose(gₖ)`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub const DEFAULT_ELEMENT_CAP: usize = 100_000;

/// A bijection of `{0, …, d-1}`, stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &i in &images {
            if i >= d || seen[i] {
                return Err(Error::NotAPermutation(d));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a >= degree || b >= degree {
                    return Err(Error::PointOutOfRange {
                        point: a.max(b),
                        degree,
                    });
                }
                images[a] = b;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Apply `self`, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Infallible `compose` for callers that already know the degrees agree.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// The product `g · self · g⁻¹` (left-to-right composition).
    pub fn conjugated_by(&self, g: &Permutation) -> Permutation {
        g.then(self).then(&g.inverse())
    }

    pub fn pow(&self, n: i64) -> Permutation {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Permutation::identity(self.degree());
        for _ in 0..n.unsigned_abs() {
            out = out.then(&base);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut any = false;
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{i}")?;
                first = false;
                i = self.images[i];
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// A word in named generators: `(name, ±1)` pairs.
pub type GenWord = Vec<(String, i32)>;

/// Evaluates a word of generator indices and signs left to right.
pub fn eval_indexed(degree: usize, gens: &[Permutation], word: &[(usize, i32)]) -> Permutation {
    let mut acc = Permutation::identity(degree);
    for &(g, e) in word {
        acc = if e > 0 {
            acc.then(&gens[g])
        } else {
            acc.then(&gens[g].inverse())
        };
    }
    acc
}

/// Breadth-first exploration of a Cayley graph.
///
/// `letters` are the right multipliers in priority order; each discovered
/// element remembers the element and letter it was first reached from, which
/// makes the stored words shortlex-least.
pub(crate) struct CayleyBfs {
    pub elements: Vec<Permutation>,
    pub index: HashMap<Permutation, usize>,
    pub parent: Vec<Option<(usize, usize)>>,
}

impl CayleyBfs {
    pub fn run(
        identity: Permutation,
        letters: &[Permutation],
        cap: usize,
        what: &'static str,
    ) -> Result<Self> {
        let mut bfs = CayleyBfs {
            elements: vec![identity.clone()],
            index: HashMap::from([(identity, 0)]),
            parent: vec![None],
        };
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (li, l) in letters.iter().enumerate() {
                let next = bfs.elements[i].then(l);
                if bfs.index.contains_key(&next) {
                    continue;
                }
                if bfs.elements.len() >= cap {
                    return Err(Error::CapExceeded { what, cap });
                }
                let k = bfs.elements.len();
                bfs.index.insert(next.clone(), k);
                bfs.elements.push(next);
                bfs.parent.push(Some((i, li)));
                queue.push_back(k);
            }
        }
        Ok(bfs)
    }

    /// Letter indices spelling the element at `k`.
    pub fn word_to(&self, mut k: usize) -> Vec<usize> {
        let mut out = Vec::new();
        while let Some((p, l)) = self.parent[k] {
            out.push(l);
            k = p;
        }
        out.reverse();
        out
    }
}

/// A finite permutation group given by named generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    names: Vec<String>,
    generators: Vec<Permutation>,
    element_cap: usize,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<(String, Permutation)>) -> Result<Self> {
        let mut names = Vec::with_capacity(generators.len());
        let mut perms = Vec::with_capacity(generators.len());
        for (name, p) in generators {
            if p.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: p.degree(),
                });
            }
            if names.contains(&name) {
                return Err(Error::DuplicateGenerator(name));
            }
            names.push(name);
            perms.push(p);
        }
        Ok(PermGroup {
            degree,
            names,
            generators: perms,
            element_cap: DEFAULT_ELEMENT_CAP,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            names: Vec::new(),
            generators: Vec::new(),
            element_cap: DEFAULT_ELEMENT_CAP,
        }
    }

    pub fn with_element_cap(mut self, cap: usize) -> Self {
        self.element_cap = cap.max(1);
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn element_cap(&self) -> usize {
        self.element_cap
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    /// All elements in breadth-first order over right multiplication by the
    /// generators; index 0 is the identity.
    pub fn enumerate_elements(&self) -> Result<Vec<Permutation>> {
        Ok(self.bfs()?.elements)
    }

    pub(crate) fn bfs(&self) -> Result<CayleyBfs> {
        CayleyBfs::run(
            self.identity(),
            &self.generators,
            self.element_cap,
            "group enumeration",
        )
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.enumerate_elements()?.len())
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Ok(false);
        }
        Ok(self.bfs()?.index.contains_key(p))
    }

    fn check_point(&self, point: usize) -> Result<()> {
        if point >= self.degree {
            return Err(Error::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        Ok(())
    }

    /// The orbit of `point`, sorted.
    pub fn orbit(&self, point: usize) -> Result<Vec<usize>> {
        self.check_point(point)?;
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut stack = vec![point];
        let mut out = vec![point];
        while let Some(q) = stack.pop() {
            for g in &self.generators {
                let r = g.apply(q);
                if !seen[r] {
                    seen[r] = true;
                    out.push(r);
                    stack.push(r);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Schreier generators of the stabilizer of `point`, deduplicated, with
    /// identities removed, in first-encountered order.
    pub fn stabilizer_generators(&self, point: usize) -> Result<Vec<Permutation>> {
        self.check_point(point)?;
        // transversal[q] maps `point` to `q`
        let mut transversal: Vec<Option<Permutation>> = vec![None; self.degree];
        transversal[point] = Some(self.identity());
        let mut order = vec![point];
        let mut queue = VecDeque::from([point]);
        while let Some(q) = queue.pop_front() {
            let tq = transversal[q].clone().expect("visited");
            for g in &self.generators {
                let r = g.apply(q);
                if transversal[r].is_none() {
                    transversal[r] = Some(tq.then(g));
                    order.push(r);
                    queue.push_back(r);
                }
            }
        }
        let mut out: Vec<Permutation> = Vec::new();
        for &q in &order {
            let tq = transversal[q].as_ref().expect("visited");
            for g in &self.generators {
                let r = g.apply(q);
                let tr = transversal[r].as_ref().expect("orbit closed");
                let s = tq.then(g).then(&tr.inverse());
                if !s.is_identity() && !out.contains(&s) {
                    out.push(s);
                }
            }
        }
        Ok(out)
    }

    /// Shortest word in generators and inverses evaluating to `target`;
    /// ties are broken lexicographically (declaration order, +1 before -1).
    pub fn word_for_element(&self, target: &Permutation) -> Result<GenWord> {
        Ok(self
            .indexed_word_for_element(target)?
            .into_iter()
            .map(|(g, e)| (self.names[g].clone(), e))
            .collect())
    }

    pub fn indexed_word_for_element(&self, target: &Permutation) -> Result<Vec<(usize, i32)>> {
        if target.degree() != self.degree {
            return Err(Error::NotInGroup);
        }
        let letters = self.signed_letters();
        let bfs = CayleyBfs::run(self.identity(), &letters, self.element_cap, "word search")?;
        let k = *bfs.index.get(target).ok_or(Error::NotInGroup)?;
        Ok(bfs
            .word_to(k)
            .into_iter()
            .map(|l| (l / 2, if l % 2 == 0 { 1 } else { -1 }))
            .collect())
    }

    /// Generators interleaved with their inverses: g₀, g₀⁻¹, g₁, g₁⁻¹, …
    pub(crate) fn signed_letters(&self) -> Vec<Permutation> {
        self.generators
            .iter()
            .flat_map(|g| [g.clone(), g.inverse()])
            .collect()
    }

    pub fn eval_word(&self, word: &[(String, i32)]) -> Result<Permutation> {
        let mut acc = self.identity();
        for (name, e) in word {
            let g = self
                .generator_index(name)
                .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
            acc = acc.then(&self.generators[g].pow(*e as i64));
        }
        Ok(acc)
    }

    /// The subgroup generated by `gens` inside the same symmetric group.
    pub fn subgroup(&self, gens: &[Permutation]) -> Result<PermGroup> {
        let named = gens
            .iter()
            .enumerate()
            .map(|(i, g)| (format!("h{i}"), g.clone()))
            .collect();
        Ok(PermGroup::new(self.degree, named)?.with_element_cap(self.element_cap))
    }
}

/// Order of the group generated by `gens` (degree `degree`).
pub fn generated_order(degree: usize, gens: &[Permutation], cap: usize) -> Result<usize> {
    Ok(CayleyBfs::run(Permutation::identity(degree), gens, cap, "group enumeration")?
        .elements
        .len())
}
