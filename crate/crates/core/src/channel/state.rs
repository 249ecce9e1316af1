use std::ops::Deref;

use num_complex::Complex64;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, pauli, Matrix};

/// Positive semidefinite, unit-trace operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator(Matrix);

impl DensityOperator {
    /// Validates `m` against the default PSD and trace thresholds. Inputs
    /// outside tolerance are rejected, never repaired.
    pub fn new(m: Matrix) -> Result<Self> {
        Self::new_with(m, &Tolerances::DEFAULT)
    }

    pub fn new_with(m: Matrix, tol: &Tolerances) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::State(format!("density operator must be square, got {:?}", m.shape())));
        }
        let dev = m.hermitian_deviation();
        if dev > tol.hermitian {
            return Err(Error::State(format!("not Hermitian (deviation {dev:e})")));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > tol.trace || tr.im.abs() > tol.trace {
            return Err(Error::State(format!("trace {tr} differs from 1")));
        }
        let spec = hermitian_eig(&m)?;
        if spec.min() < -tol.psd {
            return Err(Error::State(format!(
                "minimum eigenvalue {:e} below -{:e}",
                spec.min(),
                tol.psd
            )));
        }
        Ok(Self(m))
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self(Matrix::identity(d).scale_real(1.0 / d as f64))
    }

    /// diag(p_0, ..., p_{d-1}); the entries must form a probability vector.
    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::State("empty probability vector".into()));
        }
        Self::new(Matrix::diag(probs))
    }

    /// diag(1 - delta, delta).
    pub fn rho_delta(delta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&delta) {
            return Err(Error::Parameter(format!("delta {delta} outside [0, 1]")));
        }
        Ok(Self(Matrix::diag(&[1.0 - delta, delta])))
    }

    /// |psi><psi| after normalizing `psi`.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::State("pure state vector has zero or non-finite norm".into()));
        }
        let v: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Ok(Self(Matrix::projector(&v)))
    }

    /// Qubit state (I + x X + y Y + z Z) / 2 for a Bloch vector of length at most one.
    pub fn from_bloch(r: [f64; 3]) -> Result<Self> {
        let len = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
        if !len.is_finite() || len > 1.0 + 1e-12 {
            return Err(Error::State(format!("Bloch vector length {len} exceeds 1")));
        }
        let mut m = Matrix::identity(2);
        for (k, &rk) in r.iter().enumerate() {
            m = &m + &pauli(k + 1).scale_real(rk);
        }
        Ok(Self(m.scale_real(0.5)))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    /// Bloch vector (Tr(rho X), Tr(rho Y), Tr(rho Z)); qubits only.
    pub fn bloch(&self) -> Option<[f64; 3]> {
        if self.dim() != 2 {
            return None;
        }
        let m = &self.0;
        Some([2.0 * m[(0, 1)].re, -2.0 * m[(0, 1)].im, (m[(0, 0)] - m[(1, 1)]).re])
    }

    /// Wraps without validation. Callers must guarantee the invariants.
    pub(crate) fn from_trusted(m: Matrix) -> Self {
        Self(m)
    }
}

impl Deref for DensityOperator {
    type Target = Matrix;

    fn deref(&self) -> &Matrix {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_thresholds() {
        assert!(DensityOperator::new(Matrix::diag(&[0.5, 0.5])).is_ok());
        assert!(DensityOperator::new(Matrix::diag(&[1.0 + 5e-10, -5e-10])).is_ok());
        assert!(DensityOperator::new(Matrix::diag(&[1.0 + 1e-8, -1e-8])).is_err());
        assert!(DensityOperator::new(Matrix::diag(&[0.5, 0.5 + 1e-8])).is_err());
        assert!(DensityOperator::new(pauli(1)).is_err());
        assert!(DensityOperator::new(Matrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn bloch_round_trip() {
        let r = [0.3, -0.4, 0.5];
        let rho = DensityOperator::from_bloch(r).unwrap();
        let back = rho.bloch().unwrap();
        for k in 0..3 {
            assert!((back[k] - r[k]).abs() < 1e-15);
        }
        assert!(DensityOperator::from_bloch([1.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn pure_state_normalized() {
        let psi = [Complex64::new(3.0, 0.0), Complex64::new(0.0, 4.0)];
        let rho = DensityOperator::pure(&psi).unwrap();
        assert!((rho.trace().re - 1.0).abs() < 1e-15);
        assert!(DensityOperator::pure(&[Complex64::new(0.0, 0.0)]).is_err());
    }
}
