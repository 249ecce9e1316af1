//! Lower bound for the complement of a mixed Pauli channel.
//!
//! With probabilities sorted so that `p0 >= p1 >= p2 >= p3`, set
//! `alpha = p2/p1`, `eta' = 2 (1 + alpha) p1` and `cos^2 theta = 1/(1 + alpha)`.
//! The middle block of the complement output on `rho_delta` then has the same
//! spectrum as an epolarizing-type block with parameter `delta'`, where
//! `delta' (1 - delta') = delta (1 - delta) sin^2(2 theta)`.

use num_complex::Complex64;
use serde::Serialize;

use crate::channel::DensityOperator;
use crate::coherent::entropy::{binary_entropy, entropy_of_spectrum};
use crate::coherent::info::coherent_information;
use crate::coherent::theorem1::{max_deviation, xi_spectrum_closed_form, BOUND_SLACK, ENTROPY_TOL, SPECTRUM_TOL};
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::families::{mixed_pauli_complement, PauliProbs};
use crate::linalg::{hermitian_eig, Matrix, I};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem2Certificate {
    /// Probabilities sorted descending.
    pub p: [f64; 4],
    pub delta: f64,
    pub alpha: f64,
    pub eta_prime: f64,
    pub theta: f64,
    pub sin2_2theta: f64,
    pub delta_prime: f64,
    pub xi_spectrum: [f64; 4],
    pub xi_spectrum_closed: [f64; 4],
    /// `(eta'/2) H2(delta') + H2(eta'/2)`.
    pub h_xi: f64,
    pub h_xi_numeric: f64,
    /// `H2((1 - eta') delta + eta'/2)`, the entropy of the mixed Pauli output.
    pub h_out: f64,
    pub lower_bound: f64,
    /// Coherent information of `rho_delta` through the complement of the
    /// sorted mixed Pauli channel.
    pub ic_numeric: f64,
    /// The bound needs `eta' <= 1`; above that the mean-value step fails.
    pub bound_applies: bool,
}

impl Theorem2Certificate {
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let spec_dev = max_deviation(&self.xi_spectrum, &self.xi_spectrum_closed);
        if spec_dev > SPECTRUM_TOL {
            out.push(format!("xi' spectrum deviates from closed form by {spec_dev:e}"));
        }
        let h_dev = (self.h_xi - self.h_xi_numeric).abs();
        if h_dev > ENTROPY_TOL {
            out.push(format!("H(xi') deviates from closed form by {h_dev:e}"));
        }
        if self.bound_applies && self.ic_numeric < self.lower_bound - BOUND_SLACK {
            out.push(format!(
                "coherent information {} below lower bound {}",
                self.ic_numeric, self.lower_bound
            ));
        }
        out
    }

    pub fn holds(&self) -> bool {
        self.violations().is_empty()
    }
}

/// Smaller root of `x (1 - x) = c` for `0 <= c <= 1/4`, in a form that keeps
/// full relative precision for tiny `c`.
pub fn smaller_root(c: f64) -> Result<f64> {
    if !(0.0..=0.25).contains(&c) {
        return Err(Error::Parameter(format!("x(1-x) = {c} has no root in [0, 1/2]")));
    }
    Ok(2.0 * c / (1.0 + (1.0 - 4.0 * c).max(0.0).sqrt()))
}

/// `xi'` for sorted probabilities: the complement output on `rho_delta` with
/// the `(0, 3)` coherence restored to its `delta = 0` value.
pub fn xi_prime_state(p: [f64; 4], delta: f64) -> Matrix {
    let [p0, p1, p2, p3] = p;
    let corner = (p0 * p3).sqrt();
    let mid = (p1 * p2).sqrt() * (1.0 - 2.0 * delta);
    let r = |x: f64| Complex64::new(x, 0.0);
    let o = r(0.0);
    Matrix::from_rows(&[
        [r(p0), o, o, r(corner)],
        [o, r(p1), -I * mid, o],
        [o, I * mid, r(p2), o],
        [r(corner), o, o, r(p3)],
    ])
}

pub fn theorem2_certificate(p: PauliProbs, delta: f64) -> Result<Theorem2Certificate> {
    if p.nonzero_count() < 3 {
        return Err(Error::Hypothesis(format!(
            "at least three nonzero Pauli probabilities required, got {} in {:?}",
            p.nonzero_count(),
            p.as_array()
        )));
    }
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::Parameter(format!("delta {delta} outside (0, 1/2)")));
    }
    let sorted = p.sorted_descending();
    let q = sorted.as_array();
    let alpha = q[2] / q[1];
    let eta_prime = 2.0 * (1.0 + alpha) * q[1];
    let theta = (1.0 / (1.0 + alpha)).sqrt().acos();
    let sin2_2theta = 4.0 * alpha / ((1.0 + alpha) * (1.0 + alpha));
    let delta_prime = smaller_root(delta * (1.0 - delta) * sin2_2theta)?;

    let numeric = hermitian_eig(&xi_prime_state(q, delta))?.eigenvalues;
    let xi_spectrum = [numeric[0], numeric[1], numeric[2], numeric[3]];
    let h_xi_numeric = entropy_of_spectrum(&xi_spectrum, Tolerances::DEFAULT.entropy_clamp)?;
    let h_xi = eta_prime / 2.0 * binary_entropy(delta_prime)? + binary_entropy(eta_prime / 2.0)?;
    let lower_bound = eta_prime / 2.0 * binary_entropy(delta_prime)?
        - (1.0 - eta_prime) * delta * (2.0 / eta_prime).log2();
    let ic_numeric = coherent_information(&mixed_pauli_complement(sorted), &DensityOperator::rho_delta(delta)?)?;

    Ok(Theorem2Certificate {
        p: q,
        delta,
        alpha,
        eta_prime,
        theta,
        sin2_2theta,
        delta_prime,
        xi_spectrum,
        xi_spectrum_closed: xi_spectrum_closed_form(eta_prime, delta_prime),
        h_xi,
        h_xi_numeric,
        h_out: binary_entropy((1.0 - eta_prime) * delta + eta_prime / 2.0)?,
        lower_bound,
        ic_numeric,
        bound_applies: eta_prime <= 1.0,
    })
}
