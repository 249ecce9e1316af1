//! Named qubit channel families.
//!
//! Kraus orders are fixed so that complements come out entrywise in the
//! documented environment basis: the depolarizing channel uses
//! `(I, X, Y, Z)` with weights `(sqrt(1-eps), sqrt(eps/3), sqrt(eps/3), sqrt(eps/3))`
//! and `eps = 3 eta / 4`, so its complement is the epolarizing channel matrix
//! with rows and columns indexed by the Pauli label.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channel::{complementary, Isometry, KrausChannel};
use crate::error::{Error, Result};
use crate::linalg::{hs_inner, pauli, Matrix, I};

/// Noise probability `eta` in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct NoiseParam(f64);

impl NoiseParam {
    pub fn new(eta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::Parameter(format!("noise parameter {eta} outside [0, 1]")));
        }
        Ok(Self(eta))
    }

    pub fn eta(self) -> f64 {
        self.0
    }

    /// Total Pauli error probability `3 eta / 4`.
    pub fn eps(self) -> f64 {
        0.75 * self.0
    }
}

/// Probabilities `(p0, p1, p2, p3)` of `I, X, Y, Z` in a mixed Pauli channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PauliProbs([f64; 4]);

impl PauliProbs {
    pub const SUM_TOL: f64 = 1e-12;

    pub fn new(p: [f64; 4]) -> Result<Self> {
        if p.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::Parameter(format!("Pauli probabilities {p:?} must be finite and non-negative")));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > Self::SUM_TOL {
            return Err(Error::Parameter(format!("Pauli probabilities {p:?} sum to {sum}, not 1")));
        }
        Ok(Self(p))
    }

    /// `(1 - eps, eps/3, eps/3, eps/3)`: the depolarizing channel.
    pub fn depolarizing(eta: NoiseParam) -> Self {
        let e = eta.eps();
        Self([1.0 - e, e / 3.0, e / 3.0, e / 3.0])
    }

    /// `(1 - p3, 0, 0, p3)`.
    pub fn dephasing(p3: f64) -> Result<Self> {
        Self::new([1.0 - p3, 0.0, 0.0, p3])
    }

    pub fn as_array(&self) -> [f64; 4] {
        self.0
    }

    pub fn nonzero_count(&self) -> usize {
        self.0.iter().filter(|&&p| p > 0.0).count()
    }

    /// Probabilities sorted in descending order.
    pub fn sorted_descending(&self) -> Self {
        let mut p = self.0;
        p.sort_by(|a, b| b.total_cmp(a));
        Self(p)
    }
}

impl FromStr for PauliProbs {
    type Err = Error;

    /// Parses four comma-separated probabilities, e.g. `0.7,0.15,0.1,0.05`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!("expected 4 comma-separated probabilities, got {}", parts.len())));
        }
        let mut p = [0.0; 4];
        for (dst, part) in p.iter_mut().zip(&parts) {
            *dst = part
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("invalid probability {part:?}: {e}")))?;
        }
        Self::new(p)
    }
}

fn weighted_paulis(weights: [f64; 4]) -> Vec<Matrix> {
    weights
        .iter()
        .enumerate()
        .map(|(k, w)| pauli(k).scale_real(w.sqrt()))
        .collect()
}

/// `rho -> (1 - eta) rho + eta I/2`, Kraus order `(I, X, Y, Z)`.
pub fn depolarizing(eta: NoiseParam) -> KrausChannel {
    mixed_pauli(PauliProbs::depolarizing(eta))
}

/// Complement of [`depolarizing`] in its canonical environment basis.
pub fn epolarizing(eta: NoiseParam) -> KrausChannel {
    complementary(&depolarizing(eta)).expect("complement of a valid channel")
}

/// Evaluates the epolarizing output matrix directly from the Pauli
/// expectation values `<sigma_i, rho>`, without any Kraus machinery.
pub fn epolarizing_direct(eta: NoiseParam, rho: &Matrix) -> Result<Matrix> {
    let e = eta.eps();
    let off = (e * (1.0 - e) / 3.0).sqrt();
    let t = e / 3.0;
    let s = pauli_expectations(rho)?;
    let r = |x: f64| Complex64::new(x, 0.0);
    Ok(Matrix::from_rows(&[
        [r(1.0 - e), s[1] * off, s[2] * off, s[3] * off],
        [s[1] * off, r(t), -I * t * s[3], I * t * s[2]],
        [s[2] * off, I * t * s[3], r(t), -I * t * s[1]],
        [s[3] * off, -I * t * s[2], I * t * s[1], r(t)],
    ]))
}

/// `<sigma_i, rho>` for `i = 0..4`.
pub fn pauli_expectations(rho: &Matrix) -> Result<[Complex64; 4]> {
    let mut s = [Complex64::new(0.0, 0.0); 4];
    for (k, sk) in s.iter_mut().enumerate() {
        *sk = hs_inner(&pauli(k), rho)?;
    }
    Ok(s)
}

/// `rho -> (1-eta) rho ⊕ 0 + eta Tr(rho) |2><2|`.
pub fn erasure(eta: NoiseParam) -> KrausChannel {
    let keep = (1.0 - eta.eta()).sqrt();
    let lose = eta.eta().sqrt();
    let mut k0 = Matrix::zeros(3, 2);
    k0[(0, 0)] = Complex64::new(keep, 0.0);
    k0[(1, 1)] = Complex64::new(keep, 0.0);
    let mut k1 = Matrix::zeros(3, 2);
    k1[(2, 0)] = Complex64::new(lose, 0.0);
    let mut k2 = Matrix::zeros(3, 2);
    k2[(2, 1)] = Complex64::new(lose, 0.0);
    KrausChannel::new(2, 3, vec![k0, k1, k2]).expect("erasure is a channel")
}

/// `rho -> sum_i p_i sigma_i rho sigma_i` with Kraus operators `sqrt(p_i) sigma_i`.
pub fn mixed_pauli(p: PauliProbs) -> KrausChannel {
    KrausChannel::new(2, 2, weighted_paulis(p.as_array())).expect("mixed Pauli is a channel")
}

/// Complement of [`mixed_pauli`] from the isometry `sum_i sqrt(p_i) sigma_i ⊗ |i>`.
pub fn mixed_pauli_complement(p: PauliProbs) -> KrausChannel {
    complementary(&mixed_pauli(p)).expect("complement of a valid channel")
}

/// Direct evaluation of the mixed Pauli complement:
/// entry `(k, l)` is `sqrt(p_k p_l) Tr(sigma_l sigma_k rho)`, written out.
pub fn mixed_pauli_complement_direct(p: PauliProbs, rho: &Matrix) -> Result<Matrix> {
    let [p0, p1, p2, p3] = p.as_array();
    let s = pauli_expectations(rho)?;
    let r = |x: f64| Complex64::new(x, 0.0);
    let q = |a: f64, b: f64| (a * b).sqrt();
    Ok(Matrix::from_rows(&[
        [r(p0), s[1] * q(p0, p1), s[2] * q(p0, p2), s[3] * q(p0, p3)],
        [s[1] * q(p0, p1), r(p1), -I * q(p1, p2) * s[3], I * q(p1, p3) * s[2]],
        [s[2] * q(p0, p2), I * q(p1, p2) * s[3], r(p2), -I * q(p2, p3) * s[1]],
        [s[3] * q(p0, p3), -I * q(p1, p3) * s[2], I * q(p2, p3) * s[1], r(p3)],
    ]))
}

/// Mixed Pauli channel with `p1 = p2 = 0`.
pub fn dephasing(p3: f64) -> Result<KrausChannel> {
    Ok(mixed_pauli(PauliProbs::dephasing(p3)?))
}

/// Amplitude damping with decay |1> -> |0> at probability `eta`:
/// `K0 = diag(1, sqrt(1-eta))`, `K1 = sqrt(eta) |0><1|`.
pub fn amplitude_damping(eta: NoiseParam) -> KrausChannel {
    let mut k0 = Matrix::identity(2);
    k0[(1, 1)] = Complex64::new((1.0 - eta.eta()).sqrt(), 0.0);
    let mut k1 = Matrix::zeros(2, 2);
    k1[(0, 1)] = Complex64::new(eta.eta().sqrt(), 0.0);
    KrausChannel::new(2, 2, vec![k0, k1]).expect("amplitude damping is a channel")
}

/// Output factor positions of [`joint_isometry`].
pub mod factor {
    /// First syndrome qubit; selects the swap branch.
    pub const S1: usize = 0;
    pub const S2: usize = 1;
    /// Garbage qubit swapped with the input on the error branch.
    pub const G1: usize = 2;
    pub const G2: usize = 3;
    /// Channel output.
    pub const A: usize = 4;
}

/// The isometry from one qubit into `S1 ⊗ S2 ⊗ G1 ⊗ G2 ⊗ A`.
///
/// The syndrome pair starts in `sqrt(1-eta)|00> + sqrt(eta)|11>`, the garbage
/// pair in `(|00> + |11>)/sqrt(2)`, and the input is swapped with `G1` when
/// `S1 = 1`. Keeping only `A` gives the depolarizing channel, keeping
/// `S1, A` an erasure-type channel, and keeping everything but `A` a
/// complement of the depolarizing channel.
pub fn joint_isometry(eta: NoiseParam) -> Isometry {
    let syndrome = [(1.0 - eta.eta()).sqrt(), eta.eta().sqrt()];
    let bell = std::f64::consts::FRAC_1_SQRT_2;
    let mut a = Matrix::zeros(32, 2);
    for input in 0..2 {
        for (s, amp) in syndrome.iter().enumerate() {
            for g in 0..2 {
                // On the swap branch G1 holds the input and A holds g.
                let (g1, out) = if s == 1 { (input, g) } else { (g, input) };
                let row = s * 16 + s * 8 + g1 * 4 + g * 2 + out;
                a[(row, input)] += Complex64::new(amp * bell, 0.0);
            }
        }
    }
    Isometry::new(a, vec![2; 5]).expect("joint construction is an isometry")
}

/// Built-in families exposed by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Depolarizing,
    Epolarizing,
    Erasure,
    Dephasing,
    MixedPauli,
    AmplitudeDamping,
    JointIsometry,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Depolarizing,
        Family::Epolarizing,
        Family::Erasure,
        Family::Dephasing,
        Family::MixedPauli,
        Family::AmplitudeDamping,
        Family::JointIsometry,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Depolarizing => "depolarizing",
            Family::Epolarizing => "epolarizing",
            Family::Erasure => "erasure",
            Family::Dephasing => "dephasing",
            Family::MixedPauli => "mixed-pauli",
            Family::AmplitudeDamping => "amplitude-damping",
            Family::JointIsometry => "joint-isometry",
        }
    }

    /// Human-readable parameter description for listings.
    pub fn parameters(self) -> &'static str {
        match self {
            Family::Depolarizing | Family::Epolarizing | Family::Erasure | Family::AmplitudeDamping => {
                "eta in [0, 1]"
            }
            Family::Dephasing => "p3 in [0, 1]",
            Family::MixedPauli => "p0,p1,p2,p3 >= 0 summing to 1",
            Family::JointIsometry => "eta in [0, 1]; swept as the channel keeping S1,S2,G1,G2",
        }
    }

    /// Whether the family is indexed by one real parameter.
    pub fn is_scalar(self) -> bool {
        self != Family::MixedPauli
    }

    /// Channel for a scalar parameter. The joint isometry yields the channel
    /// onto the syndrome and garbage systems.
    pub fn channel(self, param: f64) -> Result<KrausChannel> {
        match self {
            Family::Depolarizing => Ok(depolarizing(NoiseParam::new(param)?)),
            Family::Epolarizing => Ok(epolarizing(NoiseParam::new(param)?)),
            Family::Erasure => Ok(erasure(NoiseParam::new(param)?)),
            Family::Dephasing => dephasing(param),
            Family::AmplitudeDamping => Ok(amplitude_damping(NoiseParam::new(param)?)),
            Family::JointIsometry => {
                joint_isometry(NoiseParam::new(param)?).channel(&[factor::S1, factor::S2, factor::G1, factor::G2])
            }
            Family::MixedPauli => Err(Error::Parameter(
                "mixed-pauli takes four probabilities, not a scalar parameter".into(),
            )),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown channel family {s:?}")))
    }
}
