//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a[p][q]`, then applies
//! the real symmetric Jacobi rotation that annihilates it. Sweeps visit every
//! `(p, q)` pair with `p < q` in order until the off-diagonal Frobenius norm
//! falls below `eig_offdiag_rel * ||h||_F`.

use num_complex::Complex64;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Eigenvalues sorted in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianSpectrum {
    pub eigenvalues: Vec<f64>,
}

impl HermitianSpectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(f64::NAN)
    }

    /// Checks the density-operator conditions on the spectrum: each value in
    /// `[-tol, 1 + tol]` and the sum within `tol` of one.
    pub fn is_density_spectrum(&self, tol: f64) -> bool {
        self.eigenvalues.iter().all(|&l| l >= -tol && l <= 1.0 + tol) && (self.sum() - 1.0).abs() <= tol
    }
}

/// Eigenvalues plus the unitary whose columns are the matching eigenvectors.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub spectrum: HermitianSpectrum,
    pub vectors: Matrix,
}

pub fn hermitian_eig(h: &Matrix) -> Result<HermitianSpectrum> {
    hermitian_eigh_with(h, &Tolerances::DEFAULT).map(|e| e.spectrum)
}

pub fn hermitian_eigh(h: &Matrix) -> Result<HermitianEigen> {
    hermitian_eigh_with(h, &Tolerances::DEFAULT)
}

pub fn hermitian_eigh_with(h: &Matrix, tol: &Tolerances) -> Result<HermitianEigen> {
    if !h.is_square() {
        return Err(Error::Shape(format!("eigensolver needs a square matrix, got {:?}", h.shape())));
    }
    let dev = h.hermitian_deviation();
    if dev > tol.hermitian {
        return Err(Error::Shape(format!(
            "matrix is not Hermitian (deviation {dev:e} > {:e})",
            tol.hermitian
        )));
    }
    let n = h.rows();
    let mut a = h.hermitian_part();
    let mut v = Matrix::identity(n);
    let norm = a.frobenius_norm();
    let threshold = tol.eig_offdiag_rel * norm;

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= threshold || off == 0.0 {
            break;
        }
        if sweeps == tol.eig_max_sweeps {
            return Err(Error::Convergence { sweeps, off_norm: off });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut pairs: Vec<(f64, usize)> = (0..n).map(|i| (a[(i, i)].re, i)).collect();
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0));
    let mut vectors = Matrix::zeros(n, n);
    for (dst, &(_, src)) in pairs.iter().enumerate() {
        for r in 0..n {
            vectors[(r, dst)] = v[(r, src)];
        }
    }
    let eig = HermitianEigen {
        spectrum: HermitianSpectrum {
            eigenvalues: pairs.into_iter().map(|(l, _)| l).collect(),
        },
        vectors,
    };
    debug_assert!(
        eigen_residual(h, &eig) <= 1e-9 * norm.max(f64::MIN_POSITIVE),
        "eigen residual {} too large",
        eigen_residual(h, &eig)
    );
    Ok(eig)
}

/// max_i max_r |(h v_i - lambda_i v_i)[r]|.
pub fn eigen_residual(h: &Matrix, eig: &HermitianEigen) -> f64 {
    let n = h.rows();
    let hv = h * &eig.vectors;
    let mut worst: f64 = 0.0;
    for (c, &l) in eig.spectrum.eigenvalues.iter().enumerate() {
        for r in 0..n {
            worst = worst.max((hv[(r, c)] - eig.vectors[(r, c)] * l).norm());
        }
    }
    worst
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[(r, c)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let n = a.rows();
    // e^{-i phi} makes the pivot real after rescaling column q.
    let phase = apq.conj() / mag;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // Column update: A <- A G with G = diag(1, phase) * [[c, s], [-s, c]].
    let gpp = Complex64::new(c, 0.0);
    let gpq = Complex64::new(s, 0.0);
    let gqp = phase * (-s);
    let gqq = phase * c;
    for r in 0..n {
        let xp = a[(r, p)];
        let xq = a[(r, q)];
        a[(r, p)] = xp * gpp + xq * gqp;
        a[(r, q)] = xp * gpq + xq * gqq;
        let yp = v[(r, p)];
        let yq = v[(r, q)];
        v[(r, p)] = yp * gpp + yq * gqp;
        v[(r, q)] = yp * gpq + yq * gqq;
    }
    // Row update: A <- G^dagger A.
    for col in 0..n {
        let xp = a[(p, col)];
        let xq = a[(q, col)];
        a[(p, col)] = gpp.conj() * xp + gqp.conj() * xq;
        a[(q, col)] = gpq.conj() * xp + gqq.conj() * xq;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
}
