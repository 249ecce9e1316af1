use std::f64::consts::LN_2;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, Matrix};

/// `-p log2 p` with `0 log 0 = 0`.
pub(crate) fn plogp(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * p.log2()
    }
}

/// Binary entropy in bits.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Parameter(format!("binary entropy argument {x} outside [0, 1]")));
    }
    // 1 - x is exact for x >= 1/2, so fold onto the lower half.
    let y = if x > 0.5 { 1.0 - x } else { x };
    if y == 0.0 {
        return Ok(0.0);
    }
    Ok(-y * y.log2() - (1.0 - y) * (-y).ln_1p() / LN_2)
}

/// Shannon entropy in bits of a spectrum; entries in `[-clamp, 0]` count as
/// zero and anything below `-clamp` is a state error.
pub fn entropy_of_spectrum(eigenvalues: &[f64], clamp: f64) -> Result<f64> {
    let mut h = 0.0;
    for &l in eigenvalues {
        if l < -clamp {
            return Err(Error::State(format!("eigenvalue {l:e} below -{clamp:e}")));
        }
        h += plogp(l);
    }
    Ok(h)
}

/// Von Neumann entropy `-Tr(rho log2 rho)` of a density matrix.
pub fn von_neumann_entropy(rho: &Matrix) -> Result<f64> {
    let tol = Tolerances::DEFAULT;
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > tol.trace || tr.im.abs() > tol.trace {
        return Err(Error::State(format!("trace {tr} differs from 1")));
    }
    let spec = hermitian_eig(rho)?;
    entropy_of_spectrum(&spec.eigenvalues, tol.entropy_clamp)
}
