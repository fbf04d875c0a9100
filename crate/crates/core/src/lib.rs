//! Integrable multi-level two-well boson model.
//!
//! * [`fock`]: fixed-N Fock sectors and ladder operators.
//! * [`model`]: the physical Hamiltonian and its conservation laws.
//! * [`eigen`]: dense and Lanczos eigensolvers.
//! * [`yangbaxter`]: R-matrix, Lax operator, transfer matrix, charges and the
//!   parameter identification.
//! * [`bethe`]: Bethe equations, solver, Bethe vectors and spectrum matching.

// index loops mirror the (j, k) structure of the coupling matrices
#![allow(clippy::needless_range_loop)]

pub mod bethe;
pub mod eigen;
pub mod error;
pub mod fock;
pub mod model;
pub mod sparse;
pub mod yangbaxter;

pub use bethe::{BetheRoots, BetheSolution};
pub use eigen::{eigensolve, EigenOptions, SpectrumResult};
pub use error::{Error, Result};
pub use fock::{dimension, enumerate_sector, FockSector, FockState, ModeId, Well};
pub use model::{build_hamiltonian, ModelParams};
pub use num_complex::Complex64;
pub use sparse::{ComplexOperator, RealOperator, SparseOperator};
pub use yangbaxter::IntegrableParams;
