//! Exact computation of the coefficients in the closed-form trace of a
//! symmetrized product of Dirac `Γ_ab` matrices.
//!
//! For antisymmetric tensors `B_1 … B_2n` and `β_i = B_i^{ab} Γ_ab`,
//!
//! ```text
//! Tr{β_1 ⋯ β_2n} = m · Σ_{s ⊢ n} α_s · B^(s)
//! ```
//!
//! where the sum runs over integer partitions of `n` and `B^(s)` is a sum of
//! products of closed index chains `⟨B_1 ⋯ B_q⟩`. This crate finds the
//! rational `α_s` two ways: by solving a `p(n) × p(n)` exact linear system
//! built from random tensors ([`solver::general_algorithm`]), and by solving
//! one scalar equation per `n` in two dimensions and recovering the rest
//! through the product rule `α_s = Π α_j^{μ_j} / μ_j!`
//! ([`solver::minimal_algorithm`]). [`verify`] holds brute-force oracles that
//! check the formula directly against explicit Gamma-matrix products.
//!
//! Everything is exact rational arithmetic. The crate is `no_std` and needs
//! only `alloc`.
#![no_std]

extern crate alloc;

pub mod clifford;
pub mod contraction;
pub mod linalg;
pub mod partitions;
pub mod solver;
pub mod verify;

pub use clifford::{AntisymTensor, GammaRep, Signature, SignatureKind};
pub use linalg::{ComplexRational, ExactMatrix, LinalgError, Rational, RationalMatrix};
pub use partitions::Partition;
pub use solver::{AlphaTable, ElementarySequence, SamplerConfig};
