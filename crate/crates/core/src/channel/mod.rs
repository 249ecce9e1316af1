//! Channel representations: Kraus form, isometric extensions, complementary
//! channels, Choi matrices and tensor products.

mod json;
mod state;

pub use json::ChannelJson;
pub use state::DensityOperator;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg::{
    checked_product, hermitian_eig, normalize_keep, offsets, partial_trace, strides, tensor_product_with, Matrix,
    ONE,
};

/// A CPTP map in Kraus form, `rho -> sum_k A_k rho A_k^dagger`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    d_in: usize,
    d_out: usize,
    kraus: Vec<Matrix>,
}

impl KrausChannel {
    /// Builds a channel, checking Kraus shapes and completeness.
    pub fn new(d_in: usize, d_out: usize, kraus: Vec<Matrix>) -> Result<Self> {
        let ch = Self::from_raw(d_in, d_out, kraus)?;
        ch.validate()?;
        Ok(ch)
    }

    /// Builds a Kraus list checking shapes only. The result need not be trace
    /// preserving; use [`KrausChannel::validate`] or [`choi`] to certify it.
    pub fn from_raw(d_in: usize, d_out: usize, kraus: Vec<Matrix>) -> Result<Self> {
        if d_in == 0 || d_out == 0 {
            return Err(Error::Dimension("channel dimensions must be positive".into()));
        }
        let cap = Tolerances::DEFAULT.max_dim;
        if d_in > cap || d_out > cap {
            return Err(Error::Size {
                what: "channel",
                requested: d_in.max(d_out),
                cap,
            });
        }
        if kraus.is_empty() {
            return Err(Error::Dimension("Kraus list is empty".into()));
        }
        if let Some((k, op)) = kraus.iter().enumerate().find(|(_, op)| op.shape() != (d_out, d_in)) {
            return Err(Error::Dimension(format!(
                "Kraus operator {k} has shape {:?}, expected ({d_out}, {d_in})",
                op.shape()
            )));
        }
        Ok(Self { d_in, d_out, kraus })
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    pub fn kraus(&self) -> &[Matrix] {
        &self.kraus
    }

    pub fn num_kraus(&self) -> usize {
        self.kraus.len()
    }

    /// sum_k A_k^dagger A_k.
    pub fn completeness_sum(&self) -> Matrix {
        let mut acc = Matrix::zeros(self.d_in, self.d_in);
        for op in &self.kraus {
            acc = &acc + &(&op.adjoint() * op);
        }
        acc
    }

    /// Max entrywise deviation of the completeness sum from the identity.
    pub fn completeness_deviation(&self) -> f64 {
        self.completeness_sum().max_abs_diff(&Matrix::identity(self.d_in))
    }

    pub fn validate(&self) -> Result<()> {
        let tol = Tolerances::DEFAULT.kraus_completeness;
        let dev = self.completeness_deviation();
        if dev > tol {
            return Err(Error::Validation {
                check: "Kraus completeness",
                deviation: dev,
                tolerance: tol,
            });
        }
        Ok(())
    }

    /// Applies the channel to a validated density operator.
    pub fn apply(&self, rho: &DensityOperator) -> Result<Matrix> {
        if rho.dim() != self.d_in {
            return Err(Error::Dimension(format!(
                "channel input dimension {} but state has dimension {}",
                self.d_in,
                rho.dim()
            )));
        }
        self.apply_operator(rho)
    }

    /// Applies the linear map to an arbitrary d_in x d_in operator.
    pub fn apply_operator(&self, x: &Matrix) -> Result<Matrix> {
        if x.shape() != (self.d_in, self.d_in) {
            return Err(Error::Dimension(format!(
                "operator shape {:?} does not match input dimension {}",
                x.shape(),
                self.d_in
            )));
        }
        let mut out = Matrix::zeros(self.d_out, self.d_out);
        for op in &self.kraus {
            out = &out + &op.conjugate(x)?;
        }
        Ok(out)
    }

    /// Returns a channel with the Kraus operators listed in `order`.
    pub fn reordered(&self, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.kraus.len()];
        if order.len() != self.kraus.len() || order.iter().any(|&k| k >= seen.len() || std::mem::replace(&mut seen[k], true)) {
            return Err(Error::Dimension(format!("{order:?} is not a permutation of the Kraus list")));
        }
        Ok(Self {
            d_in: self.d_in,
            d_out: self.d_out,
            kraus: order.iter().map(|&k| self.kraus[k].clone()).collect(),
        })
    }
}

/// Isometry `A: C^{d_in} -> C^{out_dims[0]} ⊗ ... ⊗ C^{out_dims[m-1]}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Isometry {
    a: Matrix,
    out_dims: Vec<usize>,
}

impl Isometry {
    pub fn new(a: Matrix, out_dims: Vec<usize>) -> Result<Self> {
        let rows = checked_product(&out_dims)?;
        if rows != a.rows() {
            return Err(Error::Dimension(format!(
                "output factors {out_dims:?} multiply to {rows}, isometry has {} rows",
                a.rows()
            )));
        }
        let tol = Tolerances::DEFAULT.isometry;
        let dev = (&a.adjoint() * &a).max_abs_diff(&Matrix::identity(a.cols()));
        if dev > tol {
            return Err(Error::Validation {
                check: "isometry A^dagger A = I",
                deviation: dev,
                tolerance: tol,
            });
        }
        Ok(Self { a, out_dims })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.a
    }

    pub fn out_dims(&self) -> &[usize] {
        &self.out_dims
    }

    pub fn d_in(&self) -> usize {
        self.a.cols()
    }

    /// Max entrywise |A^dagger A - I|.
    pub fn isometry_deviation(&self) -> f64 {
        (&self.a.adjoint() * &self.a).max_abs_diff(&Matrix::identity(self.a.cols()))
    }

    /// The channel `rho -> Tr_{discarded}(A rho A^dagger)` keeping the listed
    /// output factors. One Kraus operator per basis state of the discarded
    /// factors, in row-major order of those factors.
    pub fn channel(&self, keep: &[usize]) -> Result<KrausChannel> {
        let keep = normalize_keep(keep, self.out_dims.len())?;
        let discarded: Vec<usize> = (0..self.out_dims.len()).filter(|k| !keep.contains(k)).collect();
        let st = strides(&self.out_dims);
        let kept_off = offsets(&self.out_dims, &st, &keep);
        let disc_off = offsets(&self.out_dims, &st, &discarded);
        let d_in = self.d_in();
        let kraus = disc_off
            .iter()
            .map(|&e| {
                let mut k = Matrix::zeros(kept_off.len(), d_in);
                for (r, &ro) in kept_off.iter().enumerate() {
                    for i in 0..d_in {
                        k[(r, i)] = self.a[(ro + e, i)];
                    }
                }
                k
            })
            .collect();
        KrausChannel::new(d_in, kept_off.len(), kraus)
    }
}

/// Choi matrix `J = sum_{ij} |i><j| ⊗ Phi(|i><j|)`, input factor first.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiMatrix {
    pub m: Matrix,
    pub d_in: usize,
    pub d_out: usize,
}

/// Stinespring isometry `A = sum_k A_k ⊗ |k>` with output factors `[d_out, N]`.
pub fn isometric_extension(ch: &KrausChannel) -> Result<Isometry> {
    let n = ch.num_kraus();
    let mut a = Matrix::zeros(ch.d_out * n, ch.d_in);
    for (k, op) in ch.kraus.iter().enumerate() {
        for b in 0..ch.d_out {
            for i in 0..ch.d_in {
                a[(b * n + k, i)] = op[(b, i)];
            }
        }
    }
    Isometry::new(a, vec![ch.d_out, n])
}

/// Complementary channel `rho -> Tr_B(A rho A^dagger)` for the canonical
/// extension. Output dimension is the Kraus count; the environment basis
/// follows Kraus order. Kraus operator `B_j` has `B_j[k, i] = A_k[j, i]`.
pub fn complementary(ch: &KrausChannel) -> Result<KrausChannel> {
    let n = ch.num_kraus();
    let kraus = (0..ch.d_out)
        .map(|j| {
            let mut b = Matrix::zeros(n, ch.d_in);
            for (k, op) in ch.kraus.iter().enumerate() {
                for i in 0..ch.d_in {
                    b[(k, i)] = op[(j, i)];
                }
            }
            b
        })
        .collect();
    KrausChannel::new(ch.d_in, n, kraus)
}

/// Builds and certifies the Choi matrix: Hermitian, PSD, and `Tr_out J = I`.
pub fn choi(ch: &KrausChannel) -> Result<ChoiMatrix> {
    let tol = Tolerances::DEFAULT;
    let (di, dout) = (ch.d_in, ch.d_out);
    let mut m = Matrix::zeros(di * dout, di * dout);
    for i in 0..di {
        for j in 0..di {
            let mut eij = Matrix::zeros(di, di);
            eij[(i, j)] = ONE;
            let block = ch.apply_operator(&eij)?;
            for r in 0..dout {
                for c in 0..dout {
                    m[(i * dout + r, j * dout + c)] = block[(r, c)];
                }
            }
        }
    }
    let herm = m.hermitian_deviation();
    if herm > tol.hermitian {
        return Err(Error::Validation {
            check: "Choi Hermiticity",
            deviation: herm,
            tolerance: tol.hermitian,
        });
    }
    let min_eig = hermitian_eig(&m)?.min();
    if min_eig < -tol.choi_psd {
        return Err(Error::Validation {
            check: "complete positivity (Choi minimum eigenvalue)",
            deviation: -min_eig,
            tolerance: tol.choi_psd,
        });
    }
    let tp = partial_trace(&m, &[di, dout], &[0])?.max_abs_diff(&Matrix::identity(di));
    if tp > tol.choi_tp {
        return Err(Error::Validation {
            check: "trace preservation (Tr_out J = I)",
            deviation: tp,
            tolerance: tol.choi_tp,
        });
    }
    Ok(ChoiMatrix { m, d_in: di, d_out: dout })
}

/// `ch1 ⊗ ch2`; Kraus operators are all pairwise Kronecker products with the
/// first channel's index most significant.
pub fn tensor(ch1: &KrausChannel, ch2: &KrausChannel) -> Result<KrausChannel> {
    let cap = Tolerances::DEFAULT.max_dim;
    let mut kraus = Vec::with_capacity(ch1.num_kraus() * ch2.num_kraus());
    for a in &ch1.kraus {
        for b in &ch2.kraus {
            kraus.push(tensor_product_with(a, b, cap)?);
        }
    }
    KrausChannel::new(ch1.d_in * ch2.d_in, ch1.d_out * ch2.d_out, kraus)
}

/// `Tr_{not keep}(A rho A^dagger)` over the isometry's output factors.
pub fn apply_isometry(iso: &Isometry, rho: &DensityOperator, keep: &[usize]) -> Result<Matrix> {
    if rho.dim() != iso.d_in() {
        return Err(Error::Dimension(format!(
            "isometry input dimension {} but state has dimension {}",
            iso.d_in(),
            rho.dim()
        )));
    }
    let full = iso.a.conjugate(rho)?;
    partial_trace(&full, &iso.out_dims, keep)
}

/// The identity channel on `d` dimensions.
pub fn identity_channel(d: usize) -> KrausChannel {
    KrausChannel::new(d, d, vec![Matrix::identity(d)]).expect("identity is a channel")
}

/// Basis vector |k> in dimension d as a column.
pub fn ket(d: usize, k: usize) -> Matrix {
    let mut v = Matrix::zeros(d, 1);
    v[(k, 0)] = ONE;
    v
}
