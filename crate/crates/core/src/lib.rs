//! Computational group theory for the n-qubit projective Clifford group.
//!
//! The group is realised three ways: as symplectic tableaus
//! ([`tableau`]), as permutations of the conjugacy class of the phase gate
//! ([`perm_rep`]), and as finitely presented groups ([`presentations`]).
//! [`group_algorithms`] supplies exact permutation-group orders, and
//! [`normal_form`] synthesises canonical circuits from tableaus.

pub mod error;
pub mod group_algorithms;
pub mod matrix_oracle;
pub mod normal_form;
pub mod orders;
pub mod pauli;
pub mod perm_rep;
pub mod presentations;
pub mod report;
pub mod suites;
pub mod tableau;

pub use error::{Error, Result};
pub use pauli::PhasedPauli;
pub use tableau::{CliffordTableau, GeneratorKind, GeneratorWord, Letter};
