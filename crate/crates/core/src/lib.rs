//! Betti numbers of Hibi rings.
//!
//! A finite poset `P` determines the distributive lattice `L = I(P)` of its
//! order ideals and the Hibi ring `R[L]`, the toric ring generated by one
//! monomial per lattice element. This crate computes graded and multigraded
//! Betti numbers of `R[L]` exactly, through the reduced homology of
//! squarefree divisor complexes, certifies the Green–Lazarsfeld properties
//! `N_2` and `N_3`, and classifies Koszul relation pairs of the initial
//! ideal through the order complex of `L`.
//!
//! ```
//! use hibi_core::{betti, DistributiveLattice, FieldSpec, Poset};
//!
//! // two incomparable elements: the lattice is a diamond and R[L] is
//! // a hypersurface with one quadric relation
//! let diamond = DistributiveLattice::ideal_lattice(&Poset::antichain(2));
//! assert_eq!(betti::graded_betti(&diamond, 1, 2, FieldSpec::Rationals), 1);
//! assert_eq!(betti::graded_betti(&diamond, 2, 3, FieldSpec::Rationals), 0);
//! ```

pub mod betti;
pub mod complex;
pub mod error;
pub mod homology;
pub mod initial;
pub mod lattice;
pub mod linalg;
pub mod poset;
pub mod semigroup;
pub mod sweep;
pub mod verify;

pub use betti::{BettiTable, NpCertificate};
pub use complex::{ChainVector, SimplicialComplex};
pub use error::{Error, Result};
pub use homology::FieldSpec;
pub use lattice::{DistributiveLattice, IncomparablePair};
pub use poset::{OrderIdeal, Poset};
pub use semigroup::{Multichain, SemigroupElement};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/posets.md")]
    mod posets {}
    #[doc = include_str!("../../../book/src/semigroup.md")]
    mod semigroup {}
    #[doc = include_str!("../../../book/src/homology.md")]
    mod homology {}
    #[doc = include_str!("../../../book/src/betti.md")]
    mod betti {}
    #[doc = include_str!("../../../book/src/koszul.md")]
    mod koszul {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
