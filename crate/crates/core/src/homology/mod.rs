//! Integer homology of finite groups given by equivariant presentations.

pub mod bar;
pub mod complex;
pub mod lattice;
pub mod matrix;
pub mod pipeline;
pub mod snf;

pub use bar::{bar_h1_oracle, bar_h2_oracle, DEFAULT_BAR_CAP};
pub use lattice::Lattice;
pub use matrix::{Matrix, Scalar};
pub use snf::{smith, smith_normal_form, smith_with, SmithForm, Transforms};
pub use complex::{Caps, CayleyComplex, RelationModuleCoinv};
pub use pipeline::{
    abelianization, boundary1, gamma_generation_rank, h2, homology_report, phi_psi_maps,
    relation_module_coinvariants, ActionMatrix, EquivariantHomology, GroupHomology, HomologyOptions,
    HomologyReport, H1,
};
