//! Finite-dimensional quantum channels and their complements.
//!
//! The crate builds qubit channel families (depolarizing, its complement the
//! epolarizing channel, erasure, mixed Pauli, amplitude damping), derives
//! isometric extensions and complementary channels from Kraus form, and
//! evaluates coherent information. The [`coherent`] module also produces
//! certificates that check closed-form spectra, entropies and lower bounds
//! for the complement of the depolarizing and mixed Pauli channels.

pub mod channel;
pub mod coherent;
pub mod config;
pub mod error;
pub mod families;
pub mod linalg;
pub mod verify;

pub use channel::{DensityOperator, Isometry, KrausChannel};
pub use config::Tolerances;
pub use error::{Error, Result};
pub use linalg::Matrix;
