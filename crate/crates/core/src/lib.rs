//! Quantum circuit construction and verification toolkit built around the
//! quantum Fourier transform.
//!
//! Qubit `q0` is the least significant bit of a basis index. Circuits list
//! operations in time order, so the unitary of `[g1, g2]` is `U(g2)·U(g1)`.

pub mod circuit;
pub mod constructions;
pub mod dsl;
pub mod equivalence;
pub mod error;
pub mod gates;
pub mod matrix;
pub mod protocols;
pub mod qft;

pub use circuit::{Circuit, CircuitOp, QubitIndex};
pub use error::{Error, Result};
pub use gates::Gate;
pub use matrix::{dist_up_to_phase, ComplexMatrix, ComplexVector, PhaseDistance, Tolerance};
