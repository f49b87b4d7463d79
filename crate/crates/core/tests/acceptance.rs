//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on failure.
//!
//! Run with `cargo test -p etaphase-core --test acceptance`.

mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use common::*;
use etaphase_core::gaussian::{GaussianState, Verdict};
use etaphase_core::mixture::{transition_purity, TransitionVerdictKind};
use etaphase_core::symplectic::{eta_positivity, symplectic_spectrum, williamson};
use etaphase_core::wigner::{eta_fourier, marginals, moyal_overlap, weyl_apply, wigner_transform};
use etaphase_core::{states, CovarianceMatrix, DMatrix, Grid1D};
use rand::Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

const ETAS: [f64; 6] = [0.5, 1.0, 2.0, -0.5, -1.0, -2.0];

fn family_grid() -> Grid1D {
    Grid1D::centered(40.0, 512).unwrap()
}

/// Gaussian–Wigner correspondence at N = 512, pointwise 1e-6, under 5 s.
fn c1_gaussian_wigner() -> Outcome {
    let grid = family_grid();
    let mut worst = 0.0_f64;
    for eta in [0.5, 1.0, 2.0] {
        for sigma_x in [1.0, 0.6] {
            let sigma_p = eta / (2.0 * sigma_x);
            let w = wigner_transform(&states::coherent(grid, sigma_x, 0.0, 0.0), eta).unwrap();
            for j in 0..grid.len {
                for k in 0..grid.len {
                    let (x, p) = (w.x_grid().point(j), w.p_grid().point(k));
                    worst = worst.max((w.get(j, k) - gauss1(sigma_x, sigma_p, x, p)).abs());
                }
            }
        }
    }
    outcome(worst <= 1e-6, format!("max |W - rho_XP| = {worst:.3e} (tol 1e-6)"))
}

fn seeded_pairs() -> Vec<(usize, usize)> {
    let mut r = rng(2024);
    let len = state_family(Grid1D::centered(1.0, 2).unwrap()).len();
    (0..10).map(|_| (r.random_range(0..len), r.random_range(0..len))).collect()
}

/// Moyal identity over 10 seeded pairs and η ∈ {±0.5, ±1, ±2}, 1e-6, under 30 s.
fn c2_moyal() -> Outcome {
    let family = state_family(family_grid());
    let mut worst = 0.0_f64;
    for eta in ETAS {
        let transforms: Vec<_> = family.iter().map(|(_, s)| wigner_transform(s, eta).unwrap()).collect();
        for (a, b) in seeded_pairs() {
            let lhs = moyal_overlap(&transforms[a], &transforms[b]).unwrap();
            let rhs = family[a].1.inner(&family[b].1).unwrap().norm_sqr();
            worst = worst.max((lhs - rhs).abs());
        }
    }
    outcome(worst <= 1e-6, format!("max |Moyal - |<psi|phi>|^2| = {worst:.3e} over 10 pairs x 6 eta (tol 1e-6)"))
}

/// Both marginal identities, pointwise 1e-6. For `η < 0` the signed prefactor
/// gives `∫W = sign(η)·|·|²`, which is the identity checked there.
fn c3_marginals() -> Outcome {
    let family = state_family(family_grid());
    let mut worst_x = 0.0_f64;
    let mut worst_p = 0.0_f64;
    for eta in ETAS {
        for (_, psi) in &family {
            let w = wigner_transform(psi, eta).unwrap();
            let (pos, mom) = marginals(&w);
            let f = eta_fourier(psi, eta).unwrap();
            let sign = eta.signum();
            for (v, d) in pos.iter().zip(psi.density()) {
                worst_x = worst_x.max((v - sign * d).abs());
            }
            for (v, d) in mom.iter().zip(f.density()) {
                worst_p = worst_p.max((v - sign * d).abs());
            }
        }
    }
    outcome(
        worst_x <= 1e-6 && worst_p <= 1e-6,
        format!("position {worst_x:.3e}, momentum {worst_p:.3e} (tol 1e-6)"),
    )
}

fn c4_time_reversal() -> Outcome {
    let family = state_family(family_grid());
    let mut worst = 0.0_f64;
    for eta in ETAS {
        for (_, psi) in &family {
            let a = wigner_transform(psi, eta).unwrap();
            let b = wigner_transform(&psi.conj(), -eta).unwrap();
            worst = worst.max(a.values().iter().zip(b.values()).map(|(u, v)| (u + v).abs()).fold(0.0, f64::max));
        }
    }
    outcome(worst <= 1e-10, format!("max |W_eta psi + W_-eta psi*| = {worst:.3e} (tol 1e-10)"))
}

fn c5_williamson() -> Outcome {
    let family = spd_family(1000, 7);
    let (mut sympl, mut recon, mut det_rel) = (0.0_f64, 0.0_f64, 0.0_f64);
    for sigma in &family {
        let w = williamson(sigma).unwrap();
        let j = j_matrix(sigma.modes());
        let r1 = (w.s.transpose() * &j * &w.s - &j).abs().max();
        let r2 = (w.s.transpose() * &w.d * &w.s - sigma.matrix()).abs().max() / sigma.matrix().abs().max();
        let det = det_cholesky(sigma);
        let r3 = (symplectic_spectrum(sigma).unwrap().product_of_squares() - det).abs() / det;
        sympl = sympl.max(r1);
        recon = recon.max(r2);
        det_rel = det_rel.max(r3);
    }
    outcome(
        sympl <= 1e-10 && recon <= 1e-9 && det_rel <= 1e-9,
        format!("1000 SPD: |S^TJS-J| {sympl:.3e}, recon {recon:.3e}, det {det_rel:.3e}"),
    )
}

fn c6_positivity() -> Outcome {
    let family = spd_family(1000, 7);
    let factors = [-0.5, 0.05, 0.3, 0.7, 0.999, 1.0, -1.001, 1.05, 1.5, 3.0];
    let (mut agree, mut compared, mut boundary) = (0, 0, 0);
    for sigma in &family {
        let threshold = 2.0 * spectrum_oracle(sigma)[0];
        for f in factors {
            let eta = f * threshold;
            let report = eta_positivity(sigma, eta).unwrap();
            if report.boundary {
                boundary += 1;
                continue;
            }
            compared += 1;
            let oracle = hermitian_min_eigenvalue(sigma, eta) >= 0.0;
            if oracle == report.positive {
                agree += 1;
            }
        }
    }
    outcome(
        agree == compared,
        format!("{agree}/{compared} agree with Hermitian oracle, {boundary} in boundary band"),
    )
}

fn c7_purity_law() -> Outcome {
    let mut r = rng(99);
    let mut worst = 0.0_f64;
    for n in [1usize, 2] {
        for _ in 0..20 {
            let sigma = random_spd(&mut r, n);
            let state = GaussianState::centered(sigma.clone());
            let threshold = state.quantum_threshold().unwrap();
            let eta = r.random_range(0.05..1.0) * threshold * if r.random_bool(0.5) { 1.0 } else { -1.0 };
            let purity = state.purity_eta(eta).unwrap();
            let oracle = if n == 1 {
                single_mode_purity_quadrature(&sigma, eta)
            } else {
                (2.0 * PI * eta.abs()).powi(n as i32) * gaussian_square_integral(&sigma)
            };
            worst = worst.max((purity - oracle).abs());
        }
    }
    outcome(worst <= 1e-6, format!("max |purity - (2pi|eta|)^n int rho^2| = {worst:.3e} (tol 1e-6)"))
}

fn c8_transition() -> Outcome {
    let hbar = 1.0;
    let half = transition_purity(1.0, hbar, 0.5 * hbar, 1).unwrap();
    let at = transition_purity(1.0, hbar, hbar, 1).unwrap();
    let at_neg = transition_purity(1.0, hbar, -hbar, 1).unwrap();
    let above: Vec<_> = [1.0 + 1e-9, 1.5, 2.0, -3.0]
        .iter()
        .map(|f| transition_purity(1.0, hbar, f * hbar, 1).unwrap())
        .collect();
    let ok = half.implied_purity == 0.5
        && half.verdict == TransitionVerdictKind::Feasible
        && at.verdict == TransitionVerdictKind::PureOnly
        && (at.implied_purity - 1.0).abs() <= 1e-12
        && at_neg.verdict == TransitionVerdictKind::PureOnly
        && above.iter().all(|t| t.verdict == TransitionVerdictKind::Infeasible);
    outcome(
        ok,
        format!(
            "eta=hbar/2 -> {} {}, eta=hbar -> {}, |eta|>hbar -> {:?}",
            half.implied_purity,
            half.verdict,
            at.verdict,
            above.iter().map(|t| t.verdict.as_str()).collect::<Vec<_>>()
        ),
    )
}

fn rotation(theta: f64) -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[theta.cos(), -theta.sin(), theta.sin(), theta.cos()])
}

fn c9_classification_sequence() -> Outcome {
    let mut r = rng(31);
    let factors = [0.1, 0.25, 0.5, 0.75, 0.9, 0.999, 1.0, 1.001, 1.2, 2.0];
    let mut failures = Vec::new();
    for case in 0..10 {
        let (a, b) = (r.random_range(0.2..3.0), r.random_range(0.2..3.0));
        let diag = DMatrix::from_row_slice(2, 2, &[a, 0.0, 0.0, b]);
        let m = if case < 5 {
            diag
        } else {
            let rot = rotation(r.random_range(0.1..3.0));
            &rot * diag * rot.transpose()
        };
        let sigma = CovarianceMatrix::new(m).unwrap();
        let lambda = (a * b).sqrt();
        let etas: Vec<f64> = factors.iter().map(|f| f * 2.0 * lambda).collect();
        let verdicts: Vec<Verdict> = GaussianState::centered(sigma)
            .sweep(&etas)
            .unwrap()
            .into_iter()
            .map(|c| c.verdict)
            .collect();
        let at = factors.iter().position(|f| *f == 1.0).unwrap();
        let ok = verdicts[..at].iter().all(|v| *v == Verdict::MixedQuantum)
            && verdicts[at] == Verdict::PureQuantum
            && verdicts[at + 1..].iter().all(|v| *v == Verdict::Classical);
        if !ok {
            failures.push(format!("case {case}: {verdicts:?}"));
        }
    }
    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            "10 single-mode sweeps: MixedQuantum -> PureQuantum at 2*lambda -> Classical".into()
        } else {
            failures.join("; ")
        },
    )
}

fn c10_weyl() -> Outcome {
    let grid = Grid1D::centered(24.0, 256).unwrap();
    let h = |k| states::hermite(grid, k, 1.0);
    let pairs = vec![
        ("h0,h0", h(0), h(0), 1.0),
        ("h0,h1", h(0), h(1), 1.0),
        ("h1,h3", h(1), h(3), 0.7),
        ("coh(0.5),coh", states::coherent(grid, 0.8, 0.5, 0.0), states::coherent(grid, 0.8, 0.0, 0.0), 1.0),
        ("chirp,h0", states::chirped(grid, 0.9, 0.2, 0.3), h(0), 1.5),
    ];
    let mut worst = 0.0_f64;
    let mut orthogonal_worst = 0.0_f64;
    for (name, psi0, psi, eta) in &pairs {
        let symbol = wigner_transform(psi0, *eta).unwrap();
        let applied = weyl_apply(&symbol, psi, *eta).unwrap();
        let expected = psi0.scaled(psi0.inner(psi).unwrap());
        let dev = applied.max_deviation(&expected).unwrap();
        worst = worst.max(dev);
        if *name == "h0,h1" || *name == "h1,h3" {
            orthogonal_worst = orthogonal_worst.max(applied.samples().iter().map(|v| v.norm()).fold(0.0, f64::max));
        }
    }
    outcome(
        worst <= 1e-5 && orthogonal_worst <= 1e-5,
        format!("max |rho psi - <psi0|psi> psi0| = {worst:.3e}, orthogonal pairs {orthogonal_worst:.3e} (tol 1e-5)"),
    )
}

fn c11_oracle_equivalence() -> Outcome {
    let grid = Grid1D::centered(16.0, 128).unwrap();
    let mut worst = 0.0_f64;
    for (_, psi) in state_family(grid) {
        for eta in [1.0, -0.7, 2.0] {
            let fast = wigner_transform(&psi, eta).unwrap();
            worst = worst.max(max_abs_diff(fast.values(), &direct_wigner(&psi, eta)));
        }
    }
    outcome(worst <= 1e-9, format!("max |FFT - direct| = {worst:.3e} at N=128 (tol 1e-9)"))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);
    let criteria: Vec<Criterion> = vec![
        ("1 Gaussian-Wigner correspondence", c1_gaussian_wigner, Some(Duration::from_secs(5))),
        ("2 Moyal identity", c2_moyal, Some(Duration::from_secs(30))),
        ("3 marginals", c3_marginals, None),
        ("4 time reversal", c4_time_reversal, None),
        ("5 symplectic/Williamson suite", c5_williamson, Some(Duration::from_secs(10))),
        ("6 positivity equivalence", c6_positivity, None),
        ("7 purity law", c7_purity_law, None),
        ("8 transition law", c8_transition, None),
        ("9 classification sequence", c9_classification_sequence, None),
        ("10 Weyl correspondence", c10_weyl, Some(Duration::from_secs(30))),
        ("11 FFT vs direct summation", c11_oracle_equivalence, None),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let in_time = budget.is_none_or(|b| elapsed <= b);
        let passed = result.passed && in_time;
        if !passed {
            failed += 1;
        }
        let timing = match budget {
            Some(b) => format!("{:.2}s / {:.0}s budget", elapsed.as_secs_f64(), b.as_secs_f64()),
            None => format!("{:.2}s", elapsed.as_secs_f64()),
        };
        println!(
            "[{}] criterion {name}: {} ({timing})",
            if passed { "PASS" } else { "FAIL" },
            result.detail
        );
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
