//! Exact integer toolkit for simply-connected fibred 4-manifolds.
//!
//! Manifolds are modelled by their second homology lattice together with
//! the classes that matter for Lefschetz fibrations: the canonical class
//! `K`, the generic fibre `Σ` and a section `B`. On top of that the crate
//! builds generalized fibre sums in normal form, iterated sums `M(n)`,
//! twisted sums `M(m,n,C)`, their canonical classes and divisibilities,
//! Seiberg-Witten basic-class bookkeeping for the Morgan-Szabó-Taubes
//! product formula, and the divisibility obstruction for extending
//! boundary diffeomorphisms over the complement of a fibre.
//!
//! Everything is exact: integers are arbitrary precision and signatures
//! are computed by rational congruence diagonalization.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod arith;
pub mod canonical;
pub mod error;
pub mod fibresum;
pub mod lattice;
pub mod manifold;
pub mod obstruction;
pub mod seibergwitten;
pub mod synth;

pub use error::{Error, Result};
pub use fibresum::{FibreSumResult, GluingClass, IteratedSum, NormalFormLabels, Role};
pub use lattice::{FormDescriptor, Inertia, IntegralLattice, LatticeVector, Parity};
pub use manifold::{AlgebraicSurfaceData, Fibred4Manifold, Preset};
