//! Invariant suites run by the `verify` command.
//!
//! Each suite evaluates a list of checks, each a measured deviation against a
//! tolerance, and reports the check that came closest to (or furthest past)
//! its tolerance.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::channel::{apply_isometry, choi, complementary, isometric_extension, DensityOperator, KrausChannel};
use crate::coherent::{
    binary_entropy, coherent_information, corner_flip, delta_threshold, epolarizing_diagonal_coherent_information,
    log2_delta_threshold, log_domain_bound_margin, maximize_coherent_information, maximize_over_diagonal_inputs,
    theorem1_lower_bound, theorem2_certificate, von_neumann_entropy, xi_entropy_closed_form, xi_prime_state,
    xi_spectrum_closed_form, xi_state, SearchStrategy,
};
use crate::error::Result;
use crate::families::{
    amplitude_damping, depolarizing, epolarizing, epolarizing_direct, erasure, factor, joint_isometry, mixed_pauli,
    NoiseParam, PauliProbs,
};
use crate::linalg::{eigen_residual, hermitian_eig, hermitian_eigh, partial_trace, tensor_product, Matrix};

/// Deliberate faults for exercising the failure path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Adds 1e-3 to the identity weight of the depolarizing Kraus set.
    PerturbDepolarizingWeight,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    /// Tolerance for comparing numeric spectra with closed forms.
    pub spectra_tol: f64,
    pub fault: Option<Fault>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            spectra_tol: 1e-10,
            fault: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
}

impl Check {
    fn new(name: impl Into<String>, deviation: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            deviation,
            tolerance,
        }
    }

    pub fn passed(&self) -> bool {
        self.deviation <= self.tolerance
    }

    fn ratio(&self) -> f64 {
        if self.deviation.is_nan() {
            f64::INFINITY
        } else if self.tolerance > 0.0 {
            self.deviation / self.tolerance
        } else if self.deviation > 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: bool,
    /// Name of the check closest to failing, or the first failing one.
    pub worst_check: String,
    pub worst_deviation: f64,
    pub tolerance: f64,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn from_checks(name: &'static str, checks: Vec<Check>) -> Self {
        let failures: Vec<String> = checks.iter().filter(|c| !c.passed()).map(|c| c.name.clone()).collect();
        let worst = checks
            .iter()
            .max_by(|a, b| a.ratio().total_cmp(&b.ratio()))
            .cloned()
            .unwrap_or_else(|| Check::new("none", 0.0, 0.0));
        Self {
            name,
            passed: failures.is_empty(),
            worst_check: worst.name,
            worst_deviation: worst.deviation,
            tolerance: worst.tolerance,
            checks: checks.len(),
            failures,
        }
    }

    fn errored(name: &'static str, err: crate::Error) -> Self {
        Self {
            name,
            passed: false,
            worst_check: format!("error: {err}"),
            worst_deviation: f64::INFINITY,
            tolerance: 0.0,
            checks: 0,
            failures: vec![err.to_string()],
        }
    }
}

type Suite = fn(&VerifyOptions) -> Result<Vec<Check>>;

pub const SUITES: [(&str, Suite); 4] = [
    ("linalg", linalg_suite),
    ("channel", channel_suite),
    ("families", families_suite),
    ("coherent", coherent_suite),
];

/// Runs every suite in order.
pub fn run_all(opts: &VerifyOptions) -> Vec<SuiteReport> {
    SUITES
        .par_iter()
        .map(|(name, suite)| match suite(opts) {
            Ok(checks) => SuiteReport::from_checks(name, checks),
            Err(e) => SuiteReport::errored(name, e),
        })
        .collect()
}

fn max_abs(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn random_bloch(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let r = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        if r.iter().map(|x| x * x).sum::<f64>() <= 1.0 {
            return r;
        }
    }
}

fn random_qubit(rng: &mut ChaCha8Rng) -> Result<DensityOperator> {
    DensityOperator::from_bloch(random_bloch(rng))
}

fn random_unitary(rng: &mut ChaCha8Rng, d: usize) -> Matrix {
    let mut u = Matrix::zeros(d, d);
    for c in 0..d {
        let mut v: Vec<num_complex::Complex64> = (0..d)
            .map(|_| num_complex::Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        for prev in 0..c {
            let proj: num_complex::Complex64 = (0..d).map(|r| u[(r, prev)].conj() * v[r]).sum();
            for (r, x) in v.iter_mut().enumerate() {
                *x -= proj * u[(r, prev)];
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for (r, x) in v.iter().enumerate() {
            u[(r, c)] = x / norm;
        }
    }
    u
}

/// Grid `{step, 2 step, ..., n step}`.
fn grid(step: f64, n: usize) -> Vec<f64> {
    (1..=n).map(|k| k as f64 * step).collect()
}

fn linalg_suite(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut spec = 0.0f64;
    let mut residual = 0.0f64;
    let mut unitary = 0.0f64;
    for d in [2usize, 3, 4, 6, 8] {
        for _ in 0..10 {
            let mut lambda: Vec<f64> = (0..d).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let u = random_unitary(&mut rng, d);
            let h = u.conjugate(&Matrix::diag(&lambda))?.hermitian_part();
            lambda.sort_by(|a, b| b.total_cmp(a));
            let e = hermitian_eigh(&h)?;
            spec = spec.max(max_abs(&e.spectrum.eigenvalues, &lambda));
            residual = residual.max(eigen_residual(&h, &e) / h.frobenius_norm());
            let vv = e.vectors.adjoint().matmul(&e.vectors)?;
            unitary = unitary.max(vv.max_abs_diff(&Matrix::identity(d)));
        }
    }

    // Partial trace of a product recovers each factor.
    let a = random_qubit(&mut rng)?;
    let b = DensityOperator::maximally_mixed(3);
    let c = random_qubit(&mut rng)?;
    let abc = tensor_product(&tensor_product(&a, &b)?, &c)?;
    let pt = partial_trace(&abc, &[2, 3, 2], &[0])?
        .max_abs_diff(&a)
        .max(partial_trace(&abc, &[2, 3, 2], &[1])?.max_abs_diff(&b))
        .max(partial_trace(&abc, &[2, 3, 2], &[0, 2])?.max_abs_diff(&tensor_product(&a, &c)?));

    Ok(vec![
        Check::new("eigenvalues of U diag(l) U^dagger", spec, opts.spectra_tol),
        Check::new("eigen reconstruction residual / ||h||", residual, 1e-9),
        Check::new("eigenvector orthonormality", unitary, 1e-10),
        Check::new("partial trace of product states", pt, 1e-12),
    ])
}

fn depolarizing_for(opts: &VerifyOptions, eta: NoiseParam) -> Result<KrausChannel> {
    let ch = depolarizing(eta);
    match opts.fault {
        Some(Fault::PerturbDepolarizingWeight) => {
            let mut kraus = ch.kraus().to_vec();
            let w = (1.0 - eta.eps()).sqrt() + 1e-3;
            kraus[0] = crate::linalg::pauli(0).scale_real(w);
            KrausChannel::from_raw(2, 2, kraus)
        }
        None => Ok(ch),
    }
}

fn channel_suite(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut completeness = 0.0f64;
    let mut choi_tp = 0.0f64;
    let mut choi_psd = 0.0f64;
    let mut iso = 0.0f64;
    let mut traces = 0.0f64;
    let mut bicomplement = 0.0f64;
    let mut antisym = 0.0f64;
    for k in 0..=10 {
        let eta = NoiseParam::new(k as f64 / 10.0)?;
        let family = [
            depolarizing_for(opts, eta)?,
            epolarizing(eta),
            erasure(eta),
            amplitude_damping(eta),
            mixed_pauli(PauliProbs::new([0.5, 0.2, 0.2, 0.1])?),
        ];
        for ch in &family {
            completeness = completeness.max(ch.completeness_deviation());
            let dim = ch.d_in() * ch.d_out();
            // Built without certification so deviations are measured, not rejected.
            let mut m = Matrix::zeros(dim, dim);
            for i in 0..ch.d_in() {
                for jj in 0..ch.d_in() {
                    let mut eij = Matrix::zeros(ch.d_in(), ch.d_in());
                    eij[(i, jj)] = crate::linalg::ONE;
                    let block = ch.apply_operator(&eij)?;
                    for r in 0..ch.d_out() {
                        for c in 0..ch.d_out() {
                            m[(i * ch.d_out() + r, jj * ch.d_out() + c)] = block[(r, c)];
                        }
                    }
                }
            }
            choi_tp = choi_tp.max(
                partial_trace(&m, &[ch.d_in(), ch.d_out()], &[0])?.max_abs_diff(&Matrix::identity(ch.d_in())),
            );
            choi_psd = choi_psd.max(-hermitian_eig(&m.hermitian_part())?.min());

            if ch.completeness_deviation() > 1e-6 {
                continue;
            }
            let ext = isometric_extension(ch)?;
            iso = iso.max(ext.isometry_deviation());
            let comp = complementary(ch)?;
            let rho = random_qubit(&mut rng)?;
            traces = traces
                .max(apply_isometry(&ext, &rho, &[0])?.max_abs_diff(&ch.apply(&rho)?))
                .max(apply_isometry(&ext, &rho, &[1])?.max_abs_diff(&comp.apply(&rho)?));
            let back = complementary(&comp)?;
            bicomplement = bicomplement.max(
                back.kraus()
                    .iter()
                    .zip(ch.kraus())
                    .map(|(x, y)| x.max_abs_diff(y))
                    .fold(0.0, f64::max),
            );
            antisym = antisym.max((coherent_information(ch, &rho)? + coherent_information(&comp, &rho)?).abs());
        }
    }
    // The certified constructor must agree with the measured deviation.
    let certified = choi(&epolarizing(NoiseParam::new(0.5)?)).is_ok();
    Ok(vec![
        Check::new("Kraus completeness", completeness, 1e-10),
        Check::new("Choi trace preservation", choi_tp, 1e-9),
        Check::new("Choi positivity", choi_psd.max(0.0), 1e-9),
        Check::new("certified Choi construction", if certified { 0.0 } else { 1.0 }, 0.0),
        Check::new("isometric extension A^dagger A = I", iso, 1e-10),
        Check::new("extension partial traces give channel and complement", traces, 1e-12),
        Check::new("complement of complement", bicomplement, 1e-12),
        Check::new("coherent information antisymmetry", antisym, 1e-10),
    ])
}

fn families_suite(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let mut epol = 0.0f64;
    for _ in 0..50 {
        let eta = NoiseParam::new(rng.gen_range(0.0..=1.0))?;
        let rho = random_qubit(&mut rng)?;
        let via_kraus = epolarizing(eta).apply(&rho)?;
        epol = epol.max(via_kraus.max_abs_diff(&epolarizing_direct(eta, &rho)?));
    }

    let mut depol_out = 0.0f64;
    let mut depol_closed = 0.0f64;
    let mut comp_spec = 0.0f64;
    let mut erasure_ic = 0.0f64;
    for eta in [0.2, 0.5, 0.8] {
        let n = NoiseParam::new(eta)?;
        let iso = joint_isometry(n);
        let dep = depolarizing_for(opts, n)?;
        let eve = epolarizing(n);
        let erase = erasure(n);
        let xi_channel = iso.channel(&[factor::S1, factor::A])?;
        for _ in 0..5 {
            let rho = random_qubit(&mut rng)?;
            let out = apply_isometry(&iso, &rho, &[factor::A])?;
            depol_out = depol_out.max(out.max_abs_diff(&dep.apply(&rho)?));
            let closed = &rho.matrix().scale_real(1.0 - eta) + &Matrix::identity(2).scale_real(eta / 2.0);
            depol_closed = depol_closed.max(out.max_abs_diff(&closed));

            let env = apply_isometry(&iso, &rho, &[factor::S1, factor::S2, factor::G1, factor::G2])?;
            let mut got = hermitian_eig(&env)?.eigenvalues;
            let mut want = hermitian_eig(&eve.apply(&rho)?)?.eigenvalues;
            want.resize(got.len(), 0.0);
            got.truncate(want.len());
            comp_spec = comp_spec.max(max_abs(&got, &want));

            erasure_ic = erasure_ic
                .max((coherent_information(&xi_channel, &rho)? - coherent_information(&erase, &rho)?).abs());
        }
    }
    Ok(vec![
        Check::new("complement of depolarizing equals direct epolarizing", epol, 1e-12),
        Check::new("joint isometry keep-A equals depolarizing Kraus output", depol_out, 1e-12),
        Check::new("joint isometry keep-A equals (1-eta) rho + eta I/2", depol_closed, 1e-12),
        Check::new("joint isometry environment spectrum equals epolarizing", comp_spec, 1e-9),
        Check::new("joint isometry keep-S1,A coherent information equals erasure", erasure_ic, 1e-9),
    ])
}

fn coherent_suite(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let etas = grid(0.05, 20);
    let deltas: Vec<f64> = (0..20).map(|k| 0.01 + k as f64 * 0.48 / 19.0).collect();

    let mut mixture = 0.0f64;
    let mut concavity = 0.0f64;
    let mut xi_spec = 0.0f64;
    let mut xi_entropy = 0.0f64;
    let mut mean_value = 0.0f64;
    let mut dominance = 0.0f64;
    let flip = corner_flip();
    for &eta in &etas {
        let n = NoiseParam::new(eta)?;
        let eve = epolarizing(n);
        for &delta in &deltas {
            let rho = DensityOperator::rho_delta(delta)?;
            let out = eve.apply(&rho)?;
            let xi = xi_state(eta, delta);
            let mix = &xi.scale_real(1.0 - delta) + &flip.conjugate(&xi)?.scale_real(delta);
            mixture = mixture.max(out.max_abs_diff(&mix));
            let h_xi = von_neumann_entropy(&xi)?;
            concavity = concavity.max(h_xi - von_neumann_entropy(&out)?);
            let spec = hermitian_eig(&xi)?.eigenvalues;
            xi_spec = xi_spec.max(max_abs(&spec, &xi_spectrum_closed_form(eta, delta)));
            xi_entropy = xi_entropy.max((h_xi - xi_entropy_closed_form(eta, delta)?).abs());
            let lhs = binary_entropy((1.0 - eta) * delta + eta / 2.0)?;
            let rhs = binary_entropy(eta / 2.0)? + (1.0 - eta) * delta * (2.0 / eta).log2();
            mean_value = mean_value.max(lhs - rhs);
            let ic = coherent_information(&eve, &rho)?;
            dominance = dominance.max(theorem1_lower_bound(eta, delta)? - ic);
        }
    }

    let mut xi_prime_spec = 0.0f64;
    for p in [[0.7, 0.15, 0.1, 0.05], [0.4, 0.3, 0.2, 0.1], [0.55, 0.25, 0.2, 0.0], [0.25; 4]] {
        for &delta in &deltas {
            let c = theorem2_certificate(PauliProbs::new(p)?, delta)?;
            let spec = hermitian_eig(&xi_prime_state(c.p, delta))?.eigenvalues;
            xi_prime_spec = xi_prime_spec.max(max_abs(&spec, &xi_spectrum_closed_form(c.eta_prime, c.delta_prime)));
        }
    }

    // Positivity at min(delta*, 0.4) over eta = 0.02, 0.04, ..., 1.0.
    let mut positivity = 0.0f64;
    for eta in grid(0.02, 50) {
        let delta = delta_threshold(eta)?.min(0.4);
        let ic = epolarizing_diagonal_coherent_information(eta, delta)?;
        if ic <= 0.0 {
            positivity = positivity.max(1.0);
        }
    }
    let margin = log_domain_bound_margin(0.005, log2_delta_threshold(0.005)?)?;
    let log_domain = if margin > 0.0 { 0.0 } else { -margin };

    // Structured evaluator against the generic path.
    let mut structured = 0.0f64;
    for &eta in etas.iter().step_by(4) {
        let eve = epolarizing(NoiseParam::new(eta)?);
        for &delta in deltas.iter().step_by(4) {
            let generic = coherent_information(&eve, &DensityOperator::rho_delta(delta)?)?;
            structured = structured.max((generic - epolarizing_diagonal_coherent_information(eta, delta)?).abs());
        }
    }

    // Optimizer against the best certified lower bound, and the hypothesis
    // that diagonal inputs are optimal: the general search must not beat them.
    let strategy = SearchStrategy::default();
    let per_eta: Vec<Result<(f64, f64)>> = etas
        .par_iter()
        .map(|&eta| {
            let eve = epolarizing(NoiseParam::new(eta)?);
            let best = maximize_coherent_information(&eve, &strategy)?.value;
            let mut best_bound = f64::NEG_INFINITY;
            let mut candidates: Vec<f64> = (1..50).map(|k| k as f64 / 100.0).collect();
            candidates.push(delta_threshold(eta)?.clamp(f64::MIN_POSITIVE, 0.49));
            for delta in candidates {
                best_bound = best_bound.max(theorem1_lower_bound(eta, delta)?);
            }
            let (_, diag) = maximize_over_diagonal_inputs(&eve)?;
            Ok((best_bound - best, best - diag))
        })
        .collect();
    let mut sanity = 0.0f64;
    let mut diagonal = 0.0f64;
    for r in per_eta {
        let (s, d) = r?;
        sanity = sanity.max(s);
        diagonal = diagonal.max(d.max(0.0));
    }

    Ok(vec![
        Check::new("epolarizing output equals (1-delta) xi + delta U xi U^dagger", mixture, 1e-12),
        Check::new("H(output) >= H(xi)", concavity.max(0.0), 1e-12),
        Check::new("xi spectrum closed form", xi_spec, opts.spectra_tol),
        Check::new("H(xi) closed form", xi_entropy, 1e-10),
        Check::new("xi' spectrum closed form", xi_prime_spec, opts.spectra_tol),
        Check::new("mean-value inequality", mean_value.max(0.0), 1e-12),
        Check::new("coherent information >= Theorem 1 bound", dominance.max(0.0), 1e-12),
        Check::new("positivity at min(delta*, 0.4)", positivity, 0.0),
        Check::new("log-domain positivity at eta = 0.005", log_domain, 0.0),
        Check::new("structured evaluator matches eigensolver path", structured, 1e-12),
        Check::new("optimizer >= best certified bound", sanity.max(0.0), 1e-12),
        Check::new("grid search does not beat diagonal inputs", diagonal, 1e-9),
    ])
}
