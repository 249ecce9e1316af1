//! Numerical tolerances shared by every module.
//!
//! All thresholds live in [`Tolerances`]; the crate-wide defaults are
//! [`Tolerances::DEFAULT`]. Functions that take no explicit configuration use
//! the defaults.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Max entrywise |h - h^dagger| accepted as Hermitian.
    pub hermitian: f64,
    /// Jacobi sweep cap.
    pub eig_max_sweeps: usize,
    /// Off-diagonal Frobenius norm threshold, relative to the input norm.
    pub eig_offdiag_rel: f64,
    /// Max rows (and max columns) of any constructed matrix.
    pub max_dim: usize,
    /// Max entrywise deviation of the Kraus completeness sum from identity.
    pub kraus_completeness: f64,
    /// Max entrywise deviation of A^dagger A from identity.
    pub isometry: f64,
    /// Smallest eigenvalue accepted for a PSD operator.
    pub psd: f64,
    /// Max |Tr(rho) - 1| for a density operator.
    pub trace: f64,
    /// Eigenvalues in [-entropy_clamp, 0] are treated as zero.
    pub entropy_clamp: f64,
    /// Smallest Choi eigenvalue accepted as completely positive.
    pub choi_psd: f64,
    /// Max entrywise deviation of Tr_out(J) from identity.
    pub choi_tp: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        hermitian: 1e-10,
        eig_max_sweeps: 100,
        eig_offdiag_rel: 1e-14,
        max_dim: 1024,
        kraus_completeness: 1e-10,
        isometry: 1e-10,
        psd: 1e-9,
        trace: 1e-9,
        entropy_clamp: 1e-9,
        choi_psd: 1e-9,
        choi_tp: 1e-9,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
