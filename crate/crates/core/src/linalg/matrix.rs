use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::config::Tolerances;
use crate::error::{Error, Result};

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense complex matrix stored row-major.
///
/// Entry `(r, c)` lives at `data[r * cols + c]`. Tensor products follow the
/// Kronecker convention, so the first factor is the most significant index.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    /// Builds a matrix from row-major entries, rejecting empty shapes,
    /// mismatched lengths, and non-finite values.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("empty shape {rows}x{cols}")));
        }
        let expected = rows
            .checked_mul(cols)
            .ok_or_else(|| Error::Dimension(format!("shape {rows}x{cols} overflows")))?;
        if data.len() != expected {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {expected} entries, got {}",
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Shape("matrix has non-finite entries".into()));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix shape");
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds from nested rows. Panics on ragged input; intended for literals.
    pub fn from_rows<R: AsRef<[Complex64]>>(rows: &[R]) -> Self {
        let ncols = rows[0].as_ref().len();
        let mut data = Vec::with_capacity(rows.len() * ncols);
        for r in rows {
            assert_eq!(r.as_ref().len(), ncols, "ragged rows");
            data.extend_from_slice(r.as_ref());
        }
        Self::new(rows.len(), ncols, data).expect("invalid matrix literal")
    }

    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let converted: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&converted)
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// Column vector `v` as an n x 1 matrix.
    pub fn column(v: &[Complex64]) -> Self {
        Self::new(v.len(), 1, v.to_vec()).expect("invalid column vector")
    }

    /// Outer product |v><v|.
    pub fn projector(v: &[Complex64]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                m[(r, c)] = v[r] * v[c].conj();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Complex64> {
        self.data
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(c, r)] = self[(r, c)].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn diagonal_real(&self) -> Vec<f64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].re).collect()
    }

    /// Checked product; errors on an inner-dimension mismatch.
    pub fn matmul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == ZERO {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[r * rhs.cols..(r + 1) * rhs.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `self * m * self^dagger`.
    pub fn conjugate(&self, m: &Matrix) -> Result<Matrix> {
        self.matmul(m)?.matmul(&self.adjoint())
    }

    fn zip_with(&self, rhs: &Matrix, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Matrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::Dimension(format!(
                "shape mismatch {:?} vs {:?}",
                self.shape(),
                rhs.shape()
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn checked_add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn checked_sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise |self - rhs|; infinite on shape mismatch.
    pub fn max_abs_diff(&self, rhs: &Matrix) -> f64 {
        if self.shape() != rhs.shape() {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Max entrywise |h - h^dagger|; infinite for non-square input.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst: f64 = 0.0;
        for r in 0..n {
            for c in r..n {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// (h + h^dagger) / 2.
    pub fn hermitian_part(&self) -> Matrix {
        let adj = self.adjoint();
        self.zip_with(&adj, |a, b| (a + b) * 0.5)
            .expect("square matrix expected")
    }

    /// Kronecker product with the default size cap.
    pub fn kron(&self, rhs: &Matrix) -> Result<Matrix> {
        tensor_product_with(self, rhs, Tolerances::DEFAULT.max_dim)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product `a ⊗ b`: block (i, j) of the result is `a[i, j] * b`.
pub fn tensor_product(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    tensor_product_with(a, b, Tolerances::DEFAULT.max_dim)
}

pub fn tensor_product_with(a: &Matrix, b: &Matrix, max_dim: usize) -> Result<Matrix> {
    let rows = a.rows.saturating_mul(b.rows);
    let cols = a.cols.saturating_mul(b.cols);
    let requested = rows.max(cols);
    if requested > max_dim {
        return Err(Error::Size {
            what: "tensor product",
            requested,
            cap: max_dim,
        });
    }
    let mut out = Matrix::zeros(rows, cols);
    for ar in 0..a.rows {
        for ac in 0..a.cols {
            let s = a[(ar, ac)];
            if s == ZERO {
                continue;
            }
            for br in 0..b.rows {
                for bc in 0..b.cols {
                    out[(ar * b.rows + br, ac * b.cols + bc)] = s * b[(br, bc)];
                }
            }
        }
    }
    Ok(out)
}

/// Hilbert-Schmidt inner product Tr(x^dagger y).
pub fn hs_inner(x: &Matrix, y: &Matrix) -> Result<Complex64> {
    if x.shape() != y.shape() {
        return Err(Error::Dimension(format!(
            "inner product of {:?} and {:?}",
            x.shape(),
            y.shape()
        )));
    }
    Ok(x.data.iter().zip(&y.data).map(|(a, b)| a.conj() * b).sum())
}

/// Pauli matrices in the order (identity, X, Y, Z).
pub fn pauli(index: usize) -> Matrix {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    match index {
        0 => Matrix::identity(2),
        1 => Matrix::from_rows(&[[c(0., 0.), c(1., 0.)], [c(1., 0.), c(0., 0.)]]),
        2 => Matrix::from_rows(&[[c(0., 0.), c(0., -1.)], [c(0., 1.), c(0., 0.)]]),
        3 => Matrix::from_rows(&[[c(1., 0.), c(0., 0.)], [c(0., 0.), c(-1., 0.)]]),
        _ => panic!("Pauli index {index} out of range"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kron_identity() {
        let id = tensor_product(&Matrix::identity(2), &Matrix::identity(2)).unwrap();
        assert_eq!(id, Matrix::identity(4));
    }

    #[test]
    fn kron_z_z_is_sign_pattern() {
        let zz = tensor_product(&pauli(3), &pauli(3)).unwrap();
        assert_eq!(zz, Matrix::diag(&[1.0, -1.0, -1.0, 1.0]));
    }

    #[test]
    fn kron_x_y_hand_expanded() {
        // X ⊗ Y = [[0, Y], [Y, 0]] with Y = [[0, -i], [i, 0]].
        let z = c(0.0, 0.0);
        let expected = Matrix::from_rows(&[
            [z, z, z, c(0.0, -1.0)],
            [z, z, c(0.0, 1.0), z],
            [z, c(0.0, -1.0), z, z],
            [c(0.0, 1.0), z, z, z],
        ]);
        let xy = tensor_product(&pauli(1), &pauli(2)).unwrap();
        assert_eq!(xy, expected);
    }

    #[test]
    fn kron_respects_cap() {
        let big = Matrix::identity(64);
        let err = tensor_product_with(&big, &big, 1024).unwrap_err();
        assert!(matches!(err, Error::Size { requested: 4096, .. }));
        assert!(tensor_product_with(&big, &Matrix::identity(16), 1024).is_ok());
    }

    #[test]
    fn hs_inner_examples() {
        let delta = 0.3;
        let rho = Matrix::diag(&[1.0 - delta, delta]);
        let v = hs_inner(&pauli(3), &rho).unwrap();
        assert!((v - c(1.0 - 2.0 * delta, 0.0)).norm() < 1e-15);
        assert_eq!(hs_inner(&pauli(1), &pauli(2)).unwrap(), ZERO);
        assert_eq!(hs_inner(&pauli(2), &pauli(2)).unwrap(), c(2.0, 0.0));
        assert!(hs_inner(&pauli(1), &Matrix::identity(3)).is_err());
    }

    #[test]
    fn new_rejects_bad_input() {
        assert!(Matrix::new(2, 2, vec![ZERO; 3]).is_err());
        assert!(Matrix::new(0, 2, vec![]).is_err());
        assert!(Matrix::new(1, 1, vec![c(f64::NAN, 0.0)]).is_err());
        assert!(Matrix::new(1, 1, vec![c(0.0, f64::INFINITY)]).is_err());
    }

    #[test]
    fn matmul_shape_mismatch() {
        assert!(Matrix::identity(2).matmul(&Matrix::identity(3)).is_err());
    }

    #[test]
    fn adjoint_of_y_is_y() {
        assert_eq!(pauli(2).adjoint(), pauli(2));
        assert_eq!(pauli(2).hermitian_deviation(), 0.0);
    }
}
