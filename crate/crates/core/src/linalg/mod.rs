//! Dense complex linear algebra: matrices, Kronecker products, partial
//! traces and Hermitian eigendecomposition.

mod eig;
mod matrix;
mod partial_trace;

pub use eig::{eigen_residual, hermitian_eig, hermitian_eigh, hermitian_eigh_with, HermitianEigen, HermitianSpectrum};
pub use matrix::{hs_inner, pauli, tensor_product, tensor_product_with, Matrix, I, ONE, ZERO};
pub use partial_trace::partial_trace;

pub(crate) use partial_trace::{checked_product, normalize_keep, offsets, strides};
