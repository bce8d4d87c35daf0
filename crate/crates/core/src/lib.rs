//! Machine verification of the two-spin-1/2 realization of the
//! Birman-Murakami-Wenzl algebra.
//!
//! The library constructs the 4x4 Temperley-Lieb and braid generators, the
//! unitary Yang-Baxter solution R(theta, phi) = exp(theta X) with its
//! Lorentz-like spectral-parameter composition, the induced Hamiltonian
//! with its closed-form eigensystem and Berry phases, and the
//! three-dimensional topological basis that reduces the whole structure to
//! spin-1 Wigner rotations. Every asserted identity is checked as a
//! Frobenius residual against an explicit tolerance and reported as a
//! [`report::RelationReport`].
//!
//! Modules follow the structure of the verification:
//!
//! - [`linalg`]: dense complex matrices, qubit-tagged state vectors,
//!   embeddings and qubit permutations
//! - [`bmw`]: generators E, B and the defining relation checks
//! - [`ybe`]: the Yang-Baxter solution, velocity addition, entangled basis
//!   and concurrence
//! - [`spectral`]: Hamiltonian, eigensystem, Berry phases
//! - [`topo`]: graphic states, topological basis, reduced 3x3
//!   representation and the Wigner identification
//! - [`suite`]: seeded verification suites and CSV sweeps for the CLI

pub mod bmw;
pub mod error;
pub mod linalg;
pub mod report;
pub mod spectral;
pub mod suite;
pub mod topo;
pub mod ybe;

pub use error::{Error, Result};
pub use linalg::{C64, CMatrix, QubitPermutation, StateVector};
pub use report::RelationReport;
