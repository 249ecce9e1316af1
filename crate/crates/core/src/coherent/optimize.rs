//! Derivative-free search for inputs with large coherent information.
//!
//! Every strategy returns the best value it evaluated, so results are lower
//! bounds on the one-shot coherent information, never certified maxima.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::channel::{DensityOperator, KrausChannel};
use crate::coherent::info::CoherentInfo;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStrategy {
    /// Qubit inputs: a cubic grid over the Bloch ball (points outside are
    /// scaled onto the sphere), then coordinate-wise golden-section passes.
    BlochGrid {
        points_per_axis: usize,
        golden_iterations: usize,
        refinement_rounds: usize,
    },
    /// Inputs up to dimension 4: random spectra in random bases, plus the
    /// maximally mixed and computational basis states.
    RandomStates { samples: usize, seed: u64 },
}

impl Default for SearchStrategy {
    fn default() -> Self {
        SearchStrategy::BlochGrid {
            points_per_axis: 21,
            golden_iterations: 60,
            refinement_rounds: 2,
        }
    }
}

impl SearchStrategy {
    pub fn describe(&self) -> String {
        match *self {
            SearchStrategy::BlochGrid {
                points_per_axis,
                golden_iterations,
                refinement_rounds,
            } => format!(
                "bloch-grid {points_per_axis}^3, {refinement_rounds} golden-section rounds x {golden_iterations} iterations"
            ),
            SearchStrategy::RandomStates { samples, seed } => format!("random-states {samples} (seed {seed})"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CoherentInfoResult {
    /// Best coherent information found, in bits.
    pub value: f64,
    pub argmax_state: DensityOperator,
    pub strategy: String,
    pub evaluations: usize,
}

pub fn maximize_coherent_information(ch: &KrausChannel, strategy: &SearchStrategy) -> Result<CoherentInfoResult> {
    let ci = CoherentInfo::new(ch)?;
    match *strategy {
        SearchStrategy::BlochGrid {
            points_per_axis,
            golden_iterations,
            refinement_rounds,
        } => {
            if ch.d_in() != 2 {
                return Err(Error::Strategy(format!(
                    "Bloch grid search needs a qubit input, channel has d_in = {}",
                    ch.d_in()
                )));
            }
            if points_per_axis < 2 {
                return Err(Error::Strategy("Bloch grid needs at least 2 points per axis".into()));
            }
            bloch_search(&ci, points_per_axis, golden_iterations, refinement_rounds, strategy)
        }
        SearchStrategy::RandomStates { samples, seed } => {
            if ch.d_in() > 4 {
                return Err(Error::Strategy(format!(
                    "random-state search supports d_in <= 4, channel has d_in = {}",
                    ch.d_in()
                )));
            }
            random_search(&ci, samples, seed, strategy)
        }
    }
}

fn bloch_state(r: [f64; 3]) -> DensityOperator {
    let c = |re, im| Complex64::new(re, im);
    let m = Matrix::from_rows(&[
        [c(0.5 * (1.0 + r[2]), 0.0), c(0.5 * r[0], -0.5 * r[1])],
        [c(0.5 * r[0], 0.5 * r[1]), c(0.5 * (1.0 - r[2]), 0.0)],
    ]);
    DensityOperator::from_trusted(m)
}

fn clamp_to_ball(mut r: [f64; 3]) -> [f64; 3] {
    let len = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    if len > 1.0 {
        for x in &mut r {
            *x /= len;
        }
    }
    r
}

fn bloch_search(
    ci: &CoherentInfo,
    n: usize,
    golden_iterations: usize,
    rounds: usize,
    strategy: &SearchStrategy,
) -> Result<CoherentInfoResult> {
    let mut evaluations = 0usize;
    let mut eval = |r: [f64; 3]| -> Result<f64> {
        evaluations += 1;
        ci.evaluate(&bloch_state(r))
    };

    let coord = |i: usize| -1.0 + 2.0 * i as f64 / (n - 1) as f64;
    let mut best_r = [0.0; 3];
    let mut best = f64::NEG_INFINITY;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let r = clamp_to_ball([coord(i), coord(j), coord(k)]);
                let v = eval(r)?;
                if v > best {
                    best = v;
                    best_r = r;
                }
            }
        }
    }

    for _ in 0..rounds {
        for axis in 0..3 {
            let others: f64 = (0..3).filter(|&a| a != axis).map(|a| best_r[a] * best_r[a]).sum();
            let half = (1.0 - others).max(0.0).sqrt();
            let mut failure = None;
            let (t, v) = golden_section_max(
                |t| {
                    let mut r = best_r;
                    r[axis] = t;
                    match eval(clamp_to_ball(r)) {
                        Ok(v) => v,
                        Err(e) => {
                            failure = Some(e);
                            f64::NEG_INFINITY
                        }
                    }
                },
                -half,
                half,
                golden_iterations,
            );
            if let Some(e) = failure {
                return Err(e);
            }
            if v > best {
                best = v;
                best_r[axis] = t;
                best_r = clamp_to_ball(best_r);
            }
        }
    }

    Ok(CoherentInfoResult {
        value: best,
        argmax_state: bloch_state(best_r),
        strategy: strategy.describe(),
        evaluations,
    })
}

/// Maximizes `f` on `[lo, hi]` by golden-section search. Returns the best
/// evaluated point and value (including both end points).
pub fn golden_section_max(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, iterations: usize) -> (f64, f64) {
    let (mut a, mut b) = (lo, hi);
    let mut best = (lo, f(lo));
    let fb = f(hi);
    if fb > best.1 {
        best = (hi, fb);
    }
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iterations {
        if f1 > best.1 {
            best = (x1, f1);
        }
        if f2 > best.1 {
            best = (x2, f2);
        }
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    for (x, fx) in [(x1, f1), (x2, f2)] {
        if fx > best.1 {
            best = (x, fx);
        }
    }
    best
}

fn random_search(ci: &CoherentInfo, samples: usize, seed: u64, strategy: &SearchStrategy) -> Result<CoherentInfoResult> {
    let d = ci.d_in();
    let mut candidates = vec![DensityOperator::maximally_mixed(d)];
    for k in 0..d {
        let mut p = vec![0.0; d];
        p[k] = 1.0;
        candidates.push(DensityOperator::diagonal(&p)?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        candidates.push(random_density(&mut rng, d));
    }
    let mut best: Option<(f64, DensityOperator)> = None;
    for rho in &candidates {
        let v = ci.evaluate(rho)?;
        if best.as_ref().map_or(true, |(b, _)| v > *b) {
            best = Some((v, rho.clone()));
        }
    }
    let (value, argmax_state) = best.expect("candidate list is nonempty");
    Ok(CoherentInfoResult {
        value,
        argmax_state,
        strategy: strategy.describe(),
        evaluations: candidates.len(),
    })
}

/// U diag(p) U^dagger with p from normalized exponentials and U from
/// Gram-Schmidt on a complex Gaussian-like matrix.
fn random_density(rng: &mut ChaCha8Rng, d: usize) -> DensityOperator {
    let mut weights: Vec<f64> = (0..d).map(|_| -rng.gen_range(f64::EPSILON..1.0).ln()).collect();
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);

    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    while cols.len() < d {
        let mut v: Vec<Complex64> = (0..d)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        for u in &cols {
            let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= proj * y;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    let mut m = Matrix::zeros(d, d);
    for (w, u) in weights.iter().zip(&cols) {
        m = &m + &Matrix::projector(u).scale_real(*w);
    }
    DensityOperator::from_trusted(m.hermitian_part())
}

/// Best coherent information over `diag(1 - delta, delta)` inputs, searching
/// delta on `[0, 1]` with a 201-point grid followed by golden-section.
/// Returns `(delta, value)`.
pub fn maximize_over_diagonal_inputs(ch: &KrausChannel) -> Result<(f64, f64)> {
    if ch.d_in() != 2 {
        return Err(Error::Strategy("diagonal-input search needs a qubit input".into()));
    }
    let ci = CoherentInfo::new(ch)?;
    let f = |delta: f64| ci.evaluate(&DensityOperator::from_trusted(Matrix::diag(&[1.0 - delta, delta])));
    let steps = 200;
    let mut best = (0.0, f(0.0)?);
    for i in 1..=steps {
        let delta = i as f64 / steps as f64;
        let v = f(delta)?;
        if v > best.1 {
            best = (delta, v);
        }
    }
    let width = 1.0 / steps as f64;
    let lo = (best.0 - width).max(0.0);
    let hi = (best.0 + width).min(1.0);
    let (d, v) = golden_section_max(|x| f(x).unwrap_or(f64::NEG_INFINITY), lo, hi, 80);
    if v > best.1 {
        best = (d, v);
    }
    Ok(best)
}
