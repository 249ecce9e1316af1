//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any FAIL.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use epolar::channel::{apply_isometry, complementary};
use epolar::coherent::{
    capacity_formula, coherent_information, delta_threshold, epolarizing_diagonal_coherent_information,
    log2_delta_threshold, log_domain_bound_margin, maximize_coherent_information, theorem1_certificate,
    theorem1_lower_bound, theorem2_certificate, von_neumann_entropy, xi_state, SearchStrategy,
};
use epolar::families::{
    amplitude_damping, dephasing, depolarizing, epolarizing, epolarizing_direct, erasure, factor, joint_isometry,
    NoiseParam, PauliProbs,
};
use epolar::linalg::hermitian_eig;
use epolar::verify::{run_all, VerifyOptions};
use epolar::DensityOperator;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion = (u32, &'static str, Option<Duration>, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn eta(x: f64) -> NoiseParam {
    NoiseParam::new(x).unwrap()
}

fn eta_grid() -> Vec<f64> {
    (1..=20).map(|k| k as f64 * 0.05).collect()
}

fn delta_grid() -> Vec<f64> {
    (0..20).map(|k| 0.01 + k as f64 * 0.48 / 19.0).collect()
}

fn max_dev(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn optimum(ch: &epolar::KrausChannel) -> f64 {
    maximize_coherent_information(ch, &SearchStrategy::default()).unwrap().value
}

fn c1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let n = eta(rng.gen_range(0.0..=1.0));
        let r = loop {
            let r = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
            if r.iter().map(|x: &f64| x * x).sum::<f64>() <= 1.0 {
                break r;
            }
        };
        let rho = DensityOperator::from_bloch(r).unwrap();
        let via = complementary(&depolarizing(n)).unwrap().apply(&rho).unwrap();
        worst = worst.max(via.max_abs_diff(&epolarizing_direct(n, &rho).unwrap()));
    }
    outcome(worst <= 1e-12, format!("max entrywise deviation {worst:.2e} over 50 pairs"))
}

fn c2() -> Outcome {
    let mut worst = 0.0f64;
    for &e in &eta_grid() {
        for &d in &delta_grid() {
            let c = theorem1_certificate(e, d).unwrap();
            worst = worst.max(max_dev(&c.xi_spectrum, &c.xi_spectrum_closed));
        }
    }
    outcome(worst <= 1e-10, format!("max spectrum deviation {worst:.2e} on 20x20 grid"))
}

fn c3() -> Outcome {
    let mut worst = 0.0f64;
    for &e in &eta_grid() {
        for &d in &delta_grid() {
            let h = von_neumann_entropy(&xi_state(e, d)).unwrap();
            let closed = e / 2.0 * epolar::coherent::binary_entropy(d).unwrap()
                + epolar::coherent::binary_entropy(e / 2.0).unwrap();
            worst = worst.max((h - closed).abs());
        }
    }
    outcome(worst <= 1e-10, format!("max |H(xi) - closed form| {worst:.2e}"))
}

fn c4() -> Outcome {
    let mut min_ic = f64::INFINITY;
    let mut failures = Vec::new();
    for k in 1..=50 {
        let e = k as f64 * 0.02;
        let d = delta_threshold(e).unwrap().min(0.4);
        let ic = epolarizing_diagonal_coherent_information(e, d).unwrap();
        min_ic = min_ic.min(ic);
        if ic.is_nan() || ic <= 0.0 {
            failures.push(e);
        }
    }
    let l = log2_delta_threshold(0.005).unwrap();
    let margin = log_domain_bound_margin(0.005, l).unwrap();
    outcome(
        failures.is_empty() && margin > 0.0,
        format!("min I_C {min_ic:.3e} over 50 eta, failures {failures:?}; eta=0.005 log2 delta* {l:.1}, log margin {margin:.3e}"),
    )
}

fn c5() -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    for &e in &eta_grid() {
        for &d in &delta_grid() {
            let c = theorem1_certificate(e, d).unwrap();
            worst = worst.max(theorem1_lower_bound(e, d).unwrap() - c.ic_numeric);
        }
    }
    outcome(worst <= 1e-12, format!("max (bound - I_C) {worst:.3e}"))
}

fn c6() -> Outcome {
    let mut worst = 0.0f64;
    for e in [0.1, 0.3, 0.5, 0.7] {
        let v = optimum(&erasure(eta(e)));
        worst = worst.max((v - capacity_formula("erasure", e).unwrap()).abs());
    }
    outcome(worst <= 1e-6, format!("max |value - max(0, 1 - 2 eta)| {worst:.2e}"))
}

fn c7() -> Outcome {
    let mut worst = 0.0f64;
    for p3 in [0.1, 0.25, 0.5] {
        let v = optimum(&dephasing(p3).unwrap());
        worst = worst.max((v - capacity_formula("dephasing", p3).unwrap()).abs());
    }
    outcome(worst <= 1e-6, format!("max |value - (1 - H2(p3))| {worst:.2e}"))
}

fn c8() -> Outcome {
    let best = [0.35, 0.5, 0.8]
        .iter()
        .map(|&e| optimum(&depolarizing(eta(e))))
        .fold(f64::NEG_INFINITY, f64::max);
    outcome(best <= 1e-9, format!("largest optimizer value {best:.3e}"))
}

fn c9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let (mut keep_a, mut spec, mut ic) = (0.0f64, 0.0f64, 0.0f64);
    for e in [0.2, 0.5, 0.8] {
        let n = eta(e);
        let iso = joint_isometry(n);
        let xi = iso.channel(&[factor::S1, factor::A]).unwrap();
        for _ in 0..10 {
            let r = [rng.gen_range(-0.57..0.57), rng.gen_range(-0.57..0.57), rng.gen_range(-0.57..0.57)];
            let rho = DensityOperator::from_bloch(r).unwrap();
            let out = apply_isometry(&iso, &rho, &[factor::A]).unwrap();
            keep_a = keep_a.max(out.max_abs_diff(&depolarizing(n).apply(&rho).unwrap()));
            let env = apply_isometry(&iso, &rho, &[factor::S1, factor::S2, factor::G1, factor::G2]).unwrap();
            let got = hermitian_eig(&env).unwrap().eigenvalues;
            let mut want = hermitian_eig(&epolarizing(n).apply(&rho).unwrap()).unwrap().eigenvalues;
            want.resize(got.len(), 0.0);
            spec = spec.max(max_dev(&got, &want));
            let a = coherent_information(&xi, &rho).unwrap();
            let b = coherent_information(&erasure(n), &rho).unwrap();
            ic = ic.max((a - b).abs());
        }
    }
    outcome(
        keep_a <= 1e-12 && spec <= 1e-9 && ic <= 1e-9,
        format!("keep-A {keep_a:.2e}, complement spectrum {spec:.2e}, erasure I_C {ic:.2e}"),
    )
}

fn c10() -> Outcome {
    let c = theorem2_certificate(PauliProbs::new([0.7, 0.15, 0.1, 0.05]).unwrap(), 0.01).unwrap();
    let spec = max_dev(&c.xi_spectrum, &c.xi_spectrum_closed);
    let mut reduction = 0.0f64;
    for &e in &eta_grid() {
        for &d in &delta_grid() {
            let t2 = theorem2_certificate(PauliProbs::depolarizing(eta(e)), d).unwrap();
            let t1 = theorem1_certificate(e, d).unwrap();
            reduction = reduction
                .max((t2.eta_prime - t1.eta).abs())
                .max((t2.delta_prime - t1.delta).abs())
                .max((t2.lower_bound - t1.lower_bound).abs())
                .max((t2.ic_numeric - t1.ic_numeric).abs())
                .max((t2.h_xi - t1.h_xi).abs())
                .max(max_dev(&t2.xi_spectrum_closed, &t1.xi_spectrum_closed));
        }
    }
    outcome(
        c.lower_bound > 0.0 && c.ic_numeric >= c.lower_bound && spec <= 1e-10 && reduction <= 1e-12,
        format!(
            "bound {:.4e}, I_C {:.4e}, spectrum {spec:.2e}, depolarizing reduction {reduction:.2e}",
            c.lower_bound, c.ic_numeric
        ),
    )
}

fn c11() -> Outcome {
    let low = optimum(&amplitude_damping(eta(0.3)));
    let high = [0.5, 0.6]
        .iter()
        .map(|&e| optimum(&amplitude_damping(eta(e))))
        .fold(f64::NEG_INFINITY, f64::max);
    outcome(low > 0.1 && high <= 1e-9, format!("eta=0.3 value {low:.6}, max over eta in {{0.5, 0.6}} {high:.3e}"))
}

fn c12() -> Outcome {
    let reports = run_all(&VerifyOptions::default());
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed).map(|r| r.name).collect();
    outcome(failed.is_empty(), format!("{} suites, failed {failed:?}", reports.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, "epolarizing matrix identity", Some(Duration::from_secs(1)), c1),
        (2, "Theorem 1 xi spectrum", Some(Duration::from_secs(5)), c2),
        (3, "H(xi) closed form", None, c3),
        (4, "Theorem 1 positivity", Some(Duration::from_secs(10)), c4),
        (5, "lower-bound dominance", None, c5),
        (6, "erasure one-shot value", Some(Duration::from_secs(30)), c6),
        (7, "dephasing one-shot value", None, c7),
        (8, "depolarizing one-shot non-positivity", None, c8),
        (9, "joint isometry construction", None, c9),
        (10, "Theorem 2 certificate", None, c10),
        (11, "amplitude damping regimes", None, c11),
        (12, "verify suite end-to-end", Some(Duration::from_secs(60)), c12),
    ];
    let mut all = true;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = budget.map_or(true, |b| elapsed <= b);
        let passed = out.passed && in_time;
        all &= passed;
        let budget_note = budget.map_or(String::new(), |b| format!(" / {:.0}s", b.as_secs_f64()));
        println!(
            "{} criterion {id:>2} {name}: {} [{:.3}s{budget_note}]",
            if passed { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
