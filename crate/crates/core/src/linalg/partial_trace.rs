use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Normalizes a keep-set: sorted, deduplicated, nonempty, in range.
pub(crate) fn normalize_keep(keep: &[usize], factors: usize) -> Result<Vec<usize>> {
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() {
        return Err(Error::Dimension("keep set is empty".into()));
    }
    if let Some(&bad) = keep.iter().find(|&&k| k >= factors) {
        return Err(Error::Dimension(format!(
            "factor index {bad} out of range for {factors} factors"
        )));
    }
    Ok(keep)
}

pub(crate) fn checked_product(dims: &[usize]) -> Result<usize> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::Dimension(format!("invalid factor dimensions {dims:?}")));
    }
    dims.iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .ok_or_else(|| Error::Dimension(format!("factor dimensions {dims:?} overflow")))
}

/// Row-major strides of each factor in the composite index.
pub(crate) fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}

/// Composite offsets for every multi-index over the given factors, in
/// row-major order of those factors.
pub(crate) fn offsets(dims: &[usize], strides: &[usize], factors: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize];
    for &f in factors {
        let mut next = Vec::with_capacity(out.len() * dims[f]);
        for &base in &out {
            for i in 0..dims[f] {
                next.push(base + i * strides[f]);
            }
        }
        out = next;
    }
    out
}

/// Reduces `m` to the factors listed in `keep`, tracing out the rest.
///
/// `dims` gives the factor dimensions (first factor most significant). The
/// kept factors appear in their original order regardless of how `keep` is
/// ordered.
pub fn partial_trace(m: &Matrix, dims: &[usize], keep: &[usize]) -> Result<Matrix> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "partial trace needs a square matrix, got {:?}",
            m.shape()
        )));
    }
    let total = checked_product(dims)?;
    if total != m.rows() {
        return Err(Error::Dimension(format!(
            "factor dimensions {dims:?} multiply to {total}, matrix has dimension {}",
            m.rows()
        )));
    }
    let keep = normalize_keep(keep, dims.len())?;
    let traced: Vec<usize> = (0..dims.len()).filter(|k| !keep.contains(k)).collect();
    let st = strides(dims);
    let kept_off = offsets(dims, &st, &keep);
    let traced_off = offsets(dims, &st, &traced);

    let n = kept_off.len();
    let mut out = Matrix::zeros(n, n);
    for (r, &ro) in kept_off.iter().enumerate() {
        for (c, &co) in kept_off.iter().enumerate() {
            out[(r, c)] = traced_off.iter().map(|&t| m[(ro + t, co + t)]).sum();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::tensor_product;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
        let data = (0..n * n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        Matrix::new(n, n, data).unwrap()
    }

    #[test]
    fn product_state_factorizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let rho = random_matrix(&mut rng, 2);
        let sigma = random_matrix(&mut rng, 2);
        let joint = tensor_product(&rho, &sigma).unwrap();
        let reduced = partial_trace(&joint, &[2, 2], &[0]).unwrap();
        let expected = rho.scale(sigma.trace());
        assert!(reduced.max_abs_diff(&expected) < 1e-14);
        let reduced = partial_trace(&joint, &[2, 2], &[1]).unwrap();
        assert!(reduced.max_abs_diff(&sigma.scale(rho.trace())) < 1e-14);
    }

    #[test]
    fn bell_marginal_is_maximally_mixed() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let z = Complex64::new(0.0, 0.0);
        let phi = [Complex64::new(h, 0.0), z, z, Complex64::new(h, 0.0)];
        let marginal = partial_trace(&Matrix::projector(&phi), &[2, 2], &[1]).unwrap();
        assert!(marginal.max_abs_diff(&Matrix::diag(&[0.5, 0.5])) < 1e-15);
    }

    /// Direct index-summation over the middle qubit of three.
    fn trace_middle_oracle(m: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(4, 4);
        for a in 0..2 {
            for c in 0..2 {
                for a2 in 0..2 {
                    for c2 in 0..2 {
                        let mut s = Complex64::new(0.0, 0.0);
                        for b in 0..2 {
                            s += m[(a * 4 + b * 2 + c, a2 * 4 + b * 2 + c2)];
                        }
                        out[(a * 2 + c, a2 * 2 + c2)] = s;
                    }
                }
            }
        }
        out
    }

    #[test]
    fn three_factor_matches_index_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let x = random_matrix(&mut rng, 8);
        let h = x.hermitian_part();
        let fast = partial_trace(&h, &[2, 2, 2], &[0, 2]).unwrap();
        assert!(fast.max_abs_diff(&trace_middle_oracle(&h)) < 1e-14);
        // Keep order is irrelevant.
        let again = partial_trace(&h, &[2, 2, 2], &[2, 0]).unwrap();
        assert_eq!(fast, again);
    }

    #[test]
    fn mixed_dimensions_preserve_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_matrix(&mut rng, 12);
        for keep in [vec![0], vec![1], vec![2], vec![0, 2], vec![1, 2], vec![0, 1, 2]] {
            let r = partial_trace(&m, &[2, 3, 2], &keep).unwrap();
            assert!((r.trace() - m.trace()).norm() < 1e-13, "keep {keep:?}");
        }
        let full = partial_trace(&m, &[2, 3, 2], &[0, 1, 2]).unwrap();
        assert_eq!(full, m);
    }

    #[test]
    fn errors() {
        let m = Matrix::identity(4);
        assert!(partial_trace(&m, &[2, 3], &[0]).is_err());
        assert!(partial_trace(&m, &[2, 2], &[]).is_err());
        assert!(partial_trace(&m, &[2, 2], &[2]).is_err());
        assert!(partial_trace(&Matrix::zeros(2, 4), &[2], &[0]).is_err());
        assert!(partial_trace(&m, &[4, 0], &[0]).is_err());
    }
}
