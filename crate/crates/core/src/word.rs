//! Freely reduced words over a signed alphabet of generator symbols.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A generator symbol: a point of one of the orbits making up the alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SymbolRef {
    pub orbit_index: usize,
    pub point: usize,
}

impl SymbolRef {
    pub const fn new(orbit_index: usize, point: usize) -> Self {
        SymbolRef { orbit_index, point }
    }
}

impl fmt::Display for SymbolRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}.{}", self.orbit_index, self.point)
    }
}

/// A symbol raised to the power +1 or -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub symbol: SymbolRef,
    pub inverted: bool,
}

impl Letter {
    pub const fn pos(symbol: SymbolRef) -> Self {
        Letter {
            symbol,
            inverted: false,
        }
    }

    pub const fn neg(symbol: SymbolRef) -> Self {
        Letter {
            symbol,
            inverted: true,
        }
    }

    pub fn new(symbol: SymbolRef, exponent: i32) -> Self {
        assert!(exponent == 1 || exponent == -1, "letter exponent must be ±1");
        Letter {
            symbol,
            inverted: exponent < 0,
        }
    }

    pub fn exponent(self) -> i32 {
        if self.inverted {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        Letter {
            symbol: self.symbol,
            inverted: !self.inverted,
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.symbol == other.symbol && self.inverted != other.inverted
    }
}

/// Free reduction of an arbitrary letter sequence.
pub fn reduce(raw: impl IntoIterator<Item = Letter>) -> Word {
    let mut out: Vec<Letter> = Vec::new();
    for l in raw {
        match out.last() {
            Some(&top) if top.cancels(l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    Word(out)
}

/// A freely reduced word in the free group on the symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn symbol(s: SymbolRef) -> Self {
        Word(vec![Letter::pos(s)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn pow(&self, n: i32) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `self · other · self⁻¹ · other⁻¹`
    pub fn commutator(&self, other: &Word) -> Word {
        reduce(
            self.0
                .iter()
                .chain(other.0.iter())
                .copied()
                .chain(self.inverse().0)
                .chain(other.inverse().0),
        )
    }

    /// Image under the homomorphism determined by `images`.
    pub fn substitute(&self, images: &BTreeMap<SymbolRef, Word>) -> Result<Word> {
        let mut raw = Vec::new();
        for l in &self.0 {
            let img = images.get(&l.symbol).ok_or(Error::MissingImage(l.symbol))?;
            if l.inverted {
                raw.extend(img.inverse().0);
            } else {
                raw.extend_from_slice(&img.0);
            }
        }
        Ok(reduce(raw))
    }

    /// Letterwise relabelling of symbols, exponents preserved.
    pub fn map_symbols(&self, mut f: impl FnMut(SymbolRef) -> SymbolRef) -> Word {
        reduce(self.0.iter().map(|l| Letter {
            symbol: f(l.symbol),
            inverted: l.inverted,
        }))
    }

    pub fn symbols(&self) -> impl Iterator<Item = SymbolRef> + '_ {
        self.0.iter().map(|l| l.symbol)
    }

    /// Exponent sum of each symbol, keyed by symbol.
    pub fn exponent_sums(&self) -> BTreeMap<SymbolRef, i64> {
        let mut out = BTreeMap::new();
        for l in &self.0 {
            *out.entry(l.symbol).or_insert(0) += l.exponent() as i64;
        }
        out
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        reduce(iter)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(raw: Vec<Letter>) -> Self {
        reduce(raw)
    }
}

/// True if the sequence contains an adjacent cancelling pair.
pub fn has_cancellation(letters: &[Letter]) -> bool {
    letters.windows(2).any(|w| w[0].cancels(w[1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: SymbolRef = SymbolRef::new(0, 0);
    const B: SymbolRef = SymbolRef::new(0, 1);
    const C: SymbolRef = SymbolRef::new(1, 0);
    const D: SymbolRef = SymbolRef::new(1, 1);

    fn p(s: SymbolRef) -> Letter {
        Letter::pos(s)
    }
    fn n(s: SymbolRef) -> Letter {
        Letter::neg(s)
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce([p(A), n(A), p(B)]).letters(), &[p(B)]);
        assert!(reduce([]).is_empty());
        assert_eq!(reduce([p(A), p(B), n(B), n(A), p(C)]).letters(), &[p(C)]);
    }

    #[test]
    fn invert_examples() {
        assert_eq!(reduce([p(A), p(B)]).inverse().letters(), &[n(B), n(A)]);
        assert!(Word::empty().inverse().is_empty());
        assert_eq!(reduce([n(A)]).inverse().letters(), &[p(A)]);
    }

    #[test]
    fn concat_examples() {
        assert!(Word::letter(p(A)).concat(&Word::letter(n(A))).is_empty());
        assert_eq!(
            Word::letter(p(A)).concat(&Word::letter(p(B))).letters(),
            &[p(A), p(B)]
        );
        assert_eq!(
            reduce([p(A), p(B)])
                .concat(&reduce([n(B), p(C)]))
                .letters(),
            &[p(A), p(C)]
        );
    }

    #[test]
    fn substitute_examples() {
        let mut images = BTreeMap::new();
        images.insert(A, reduce([p(C), p(D)]));
        assert_eq!(
            reduce([p(A), p(A)]).substitute(&images).unwrap().letters(),
            &[p(C), p(D), p(C), p(D)]
        );

        let mut images = BTreeMap::new();
        images.insert(A, Word::symbol(C));
        assert_eq!(
            reduce([n(A)]).substitute(&images).unwrap().letters(),
            &[n(C)]
        );

        let mut images = BTreeMap::new();
        images.insert(A, Word::symbol(B));
        images.insert(B, Word::letter(n(B)));
        assert!(reduce([p(A), p(B)]).substitute(&images).unwrap().is_empty());
    }

    #[test]
    fn substitute_missing_image() {
        let images = BTreeMap::new();
        assert_eq!(
            Word::symbol(A).substitute(&images),
            Err(Error::MissingImage(A))
        );
    }

    #[test]
    fn commutator_and_pow() {
        let a = Word::symbol(A);
        let b = Word::symbol(B);
        assert_eq!(a.commutator(&b).letters(), &[p(A), p(B), n(A), n(B)]);
        assert!(a.commutator(&a).is_empty());
        assert_eq!(a.pow(-2).letters(), &[n(A), n(A)]);
        assert!(a.pow(0).is_empty());
    }
}
