//! Equivariant group presentations: realization, weak-to-finite conversion
//! and second homology.

pub mod action;
pub mod deweak;
pub mod equivariant;
pub mod error;
pub mod homology;
pub mod io;
pub mod permgroup;
pub mod presentation;
pub mod word;

pub use action::{ActionTable, GammaSet, GeneratorOrbit};
pub use equivariant::{EquivariantPresentation, Mode, ValidationReport};
pub use error::{Error, Result};
pub use permgroup::{PermGroup, Permutation};
pub use presentation::{CosetTable, Presentation, Realization};
pub use word::{Letter, SymbolRef, Word};

pub type IntMatrix = homology::Matrix<num_bigint::BigInt>;
pub type SmallIntMatrix = homology::Matrix<i64>;
