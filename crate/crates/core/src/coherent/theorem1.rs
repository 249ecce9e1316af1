//! Positivity certificate for the complement of the depolarizing channel.
//!
//! For the input `rho_delta = diag(1 - delta, delta)` the epolarizing output
//! splits as `(1 - delta) xi + delta U xi U^dagger` with `U = diag(1, 1, 1, -1)`,
//! where `xi` has the closed-form spectrum
//! `{1 - eta/2, 0, eta (1 - delta)/2, eta delta/2}`. Concavity of entropy then
//! gives `I_C >= (eta/2) H2(delta) - (1 - eta) delta log2(2/eta)`.

use std::f64::consts::{LN_2, LOG2_E};

use num_complex::Complex64;
use serde::Serialize;

use crate::channel::DensityOperator;
use crate::coherent::entropy::{binary_entropy, entropy_of_spectrum, plogp};
use crate::coherent::info::coherent_information;
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::families::{epolarizing, NoiseParam};
use crate::linalg::{hermitian_eig, Matrix, I};

/// Certificate invariants are checked at these tolerances.
pub const SPECTRUM_TOL: f64 = 1e-12;
pub const ENTROPY_TOL: f64 = 1e-10;
pub const BOUND_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem1Certificate {
    pub eta: f64,
    pub delta: f64,
    /// Numeric eigenvalues of xi, descending.
    pub xi_spectrum: [f64; 4],
    /// Closed-form eigenvalues of xi, descending.
    pub xi_spectrum_closed: [f64; 4],
    /// `(eta/2) H2(delta) + H2(eta/2)`.
    pub h_xi: f64,
    /// Entropy of the numeric xi spectrum.
    pub h_xi_numeric: f64,
    /// `H2((1 - eta) delta + eta/2)`, the entropy of the depolarizing output.
    pub h_out: f64,
    pub lower_bound: f64,
    /// Coherent information of `rho_delta` through the epolarizing channel
    /// from the generic eigensolver path.
    pub ic_numeric: f64,
    /// The same quantity from the block-structured evaluator.
    pub ic_structured: f64,
    pub threshold_log2: f64,
}

impl Theorem1Certificate {
    /// Descriptions of every certificate invariant that fails.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let spec_dev = max_deviation(&self.xi_spectrum, &self.xi_spectrum_closed);
        if spec_dev > SPECTRUM_TOL {
            out.push(format!("xi spectrum deviates from closed form by {spec_dev:e}"));
        }
        let h_dev = (self.h_xi - self.h_xi_numeric).abs();
        if h_dev > ENTROPY_TOL {
            out.push(format!("H(xi) deviates from closed form by {h_dev:e}"));
        }
        if self.ic_numeric < self.lower_bound - BOUND_SLACK {
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

pub(crate) fn max_deviation(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn check_eta(eta: f64) -> Result<()> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::Parameter(format!("eta {eta} outside (0, 1]")));
    }
    Ok(())
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::Parameter(format!("delta {delta} outside (0, 1/2)")));
    }
    Ok(())
}

/// The auxiliary state xi: the epolarizing output on `rho_delta` with the
/// corner coherence restored to its `delta = 0` value.
pub fn xi_state(eta: f64, delta: f64) -> Matrix {
    let e = 0.75 * eta;
    let corner = (e * (1.0 - e) / 3.0).sqrt();
    let t = e / 3.0;
    let z = 1.0 - 2.0 * delta;
    let r = |x: f64| Complex64::new(x, 0.0);
    let o = r(0.0);
    Matrix::from_rows(&[
        [r(1.0 - e), o, o, r(corner)],
        [o, r(t), -I * (t * z), o],
        [o, I * (t * z), r(t), o],
        [r(corner), o, o, r(t)],
    ])
}

/// diag(1, 1, 1, -1).
pub fn corner_flip() -> Matrix {
    Matrix::diag(&[1.0, 1.0, 1.0, -1.0])
}

/// `{1 - eta/2, eta (1 - delta)/2, eta delta/2, 0}` sorted descending.
pub fn xi_spectrum_closed_form(eta: f64, delta: f64) -> [f64; 4] {
    let mut s = [1.0 - eta / 2.0, 0.0, eta * (1.0 - delta) / 2.0, eta * delta / 2.0];
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// `(eta/2) H2(delta) + H2(eta/2)`.
pub fn xi_entropy_closed_form(eta: f64, delta: f64) -> Result<f64> {
    Ok(eta / 2.0 * binary_entropy(delta)? + binary_entropy(eta / 2.0)?)
}

/// `(eta/2) H2(delta) - (1 - eta) delta log2(2/eta)`.
pub fn theorem1_lower_bound(eta: f64, delta: f64) -> Result<f64> {
    check_eta(eta)?;
    Ok(eta / 2.0 * binary_entropy(delta)? - (1.0 - eta) * delta * (2.0 / eta).log2())
}

/// Exponent `-(2 (1 - eta)/eta) log2(2/eta)` of the positivity threshold.
pub fn log2_delta_threshold(eta: f64) -> Result<f64> {
    check_eta(eta)?;
    if eta == 1.0 {
        return Ok(0.0);
    }
    Ok(-(2.0 * (1.0 - eta) / eta) * (2.0 / eta).log2())
}

/// `2^(log2_delta_threshold(eta))`; underflows to zero for eta below ~0.013.
pub fn delta_threshold(eta: f64) -> Result<f64> {
    Ok(log2_delta_threshold(eta)?.exp2())
}

/// Log-domain positivity test of the lower bound at `delta = 2^log2_delta`.
///
/// Uses `H2(delta) >= delta (log2(1/delta) + log2(e)/2)` for `delta <= 1/2`,
/// so the bound is positive whenever the returned margin
/// `log2((eta/2)(-L + log2(e)/2)) - log2((1 - eta) log2(2/eta))` is positive.
/// The common factor `delta` cancels, so no quantity underflows.
pub fn log_domain_bound_margin(eta: f64, log2_delta: f64) -> Result<f64> {
    check_eta(eta)?;
    if log2_delta.is_nan() || log2_delta > -1.0 {
        return Err(Error::Parameter(format!("log2 delta {log2_delta} must be at most -1")));
    }
    if eta == 1.0 {
        return Ok(f64::INFINITY);
    }
    let gain = (eta / 2.0 * (-log2_delta + LOG2_E / 2.0)).log2();
    let loss = ((1.0 - eta) * (2.0 / eta).log2()).log2();
    Ok(gain - loss)
}

/// Coherent information of `diag(1 - delta, delta)` through the epolarizing
/// channel, accurate to relative precision even when it is far below the
/// entropies involved.
///
/// The epolarizing output on this input is block diagonal: a corner block
/// on `{|0>, |3>}` with trace `1 - eta/2` and determinant
/// `(4/3) eps (1 - eps) delta (1 - delta)`, and a middle block with
/// eigenvalues `eta (1 - delta)/2` and `eta delta/2`. Both entropies equal
/// `H2(eta/2)` at `delta = 0`; each is evaluated as an increment over that
/// common value using `ln_1p`, so the difference carries no cancellation.
pub fn epolarizing_diagonal_coherent_information(eta: f64, delta: f64) -> Result<f64> {
    NoiseParam::new(eta)?;
    if !(0.0..=0.5).contains(&delta) {
        return Err(Error::Parameter(format!("delta {delta} outside [0, 1/2]")));
    }
    if eta == 0.0 || delta == 0.0 {
        return Ok(0.0);
    }
    let e = 0.75 * eta;
    let x = eta / 2.0;
    let t = 1.0 - x;

    // Complement side, in nats.
    let det = 4.0 / 3.0 * e * (1.0 - e) * delta * (1.0 - delta);
    let big = t / 2.0 + (t * t / 4.0 - det).max(0.0).sqrt();
    let small = det / big;
    let m2 = x * delta;
    let m1 = x - m2;
    let eve = -t * (-small / t).ln_1p() + small * big.ln() + plogp(small) * LN_2 - x * (-delta).ln_1p()
        + m2 * m1.ln()
        + plogp(m2) * LN_2;

    // Depolarizing side: H2(x + d) - H2(x), in nats.
    let d = (1.0 - eta) * delta;
    let bob = -x * (d / x).ln_1p() - d * (x + d).ln() - (1.0 - x) * (-d / (1.0 - x)).ln_1p()
        + d * (1.0 - x - d).ln();

    Ok((eve - bob) / LN_2)
}

pub fn theorem1_certificate(eta: f64, delta: f64) -> Result<Theorem1Certificate> {
    check_eta(eta)?;
    check_delta(delta)?;
    let xi = xi_state(eta, delta);
    let numeric = hermitian_eig(&xi)?.eigenvalues;
    let xi_spectrum = [numeric[0], numeric[1], numeric[2], numeric[3]];
    let h_xi_numeric = entropy_of_spectrum(&xi_spectrum, Tolerances::DEFAULT.entropy_clamp)?;
    let rho = DensityOperator::rho_delta(delta)?;
    let ic_numeric = coherent_information(&epolarizing(NoiseParam::new(eta)?), &rho)?;
    Ok(Theorem1Certificate {
        eta,
        delta,
        xi_spectrum,
        xi_spectrum_closed: xi_spectrum_closed_form(eta, delta),
        h_xi: xi_entropy_closed_form(eta, delta)?,
        h_xi_numeric,
        h_out: binary_entropy((1.0 - eta) * delta + eta / 2.0)?,
        lower_bound: theorem1_lower_bound(eta, delta)?,
        ic_numeric,
        ic_structured: epolarizing_diagonal_coherent_information(eta, delta)?,
        threshold_log2: log2_delta_threshold(eta)?,
    })
}
