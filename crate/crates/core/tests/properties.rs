mod common;

use common::*;
use etaphase_core::gaussian::{GaussianState, Verdict};
use etaphase_core::mixture::{trace_condition, transition_purity, TransitionVerdictKind};
use etaphase_core::symplectic::{eta_positivity, symplectic_spectrum, williamson};
use etaphase_core::wigner::{moyal_overlap, wigner_transform};
use etaphase_core::{states, CovarianceMatrix, Grid1D, Tolerances};
use proptest::prelude::*;

fn covariance(seed: u64, n: usize) -> CovarianceMatrix {
    random_spd(&mut rng(seed), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spectrum_is_symplectic_invariant(seed in any::<u64>(), other in any::<u64>(), n in 1usize..4) {
        let sigma = covariance(seed, n);
        let s = williamson(&covariance(other, n)).unwrap().s;
        let moved = sigma.congruence(&s).unwrap();
        let a = symplectic_spectrum(&sigma).unwrap();
        let b = symplectic_spectrum(&moved).unwrap();
        for (u, v) in a.values().iter().zip(b.values()) {
            prop_assert!((u - v).abs() <= 1e-8 * u);
        }
    }

    #[test]
    fn spectrum_squares_give_determinant(seed in any::<u64>(), n in 1usize..4) {
        let sigma = covariance(seed, n);
        let det = det_cholesky(&sigma);
        let spec = symplectic_spectrum(&sigma).unwrap();
        prop_assert!((spec.product_of_squares() - det).abs() <= 1e-9 * det);
        prop_assert!(spec.values().windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(spec.values().iter().all(|v| *v > 0.0));
    }

    #[test]
    fn positivity_depends_on_abs_eta(seed in any::<u64>(), n in 1usize..4, f in 0.01f64..3.0) {
        let sigma = covariance(seed, n);
        let eta = f * 2.0 * symplectic_spectrum(&sigma).unwrap().min();
        let a = eta_positivity(&sigma, eta).unwrap();
        let b = eta_positivity(&sigma, -eta).unwrap();
        prop_assert_eq!((a.positive, a.boundary), (b.positive, b.boundary));
        prop_assert_eq!(a.margin, b.margin);
    }

    #[test]
    fn classification_depends_on_abs_eta(seed in any::<u64>(), n in 1usize..4, f in 0.01f64..3.0) {
        let state = GaussianState::centered(covariance(seed, n));
        let eta = f * state.quantum_threshold().unwrap();
        prop_assert_eq!(state.classify(eta).unwrap(), {
            let mut c = state.classify(-eta).unwrap();
            c.eta = eta;
            c
        });
    }

    #[test]
    fn purity_increases_with_abs_eta(seed in any::<u64>(), n in 1usize..4, a in 0.01f64..1.0, b in 0.01f64..1.0) {
        prop_assume!((a - b).abs() > 1e-6);
        let state = GaussianState::centered(covariance(seed, n));
        let t = state.quantum_threshold().unwrap();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (p_lo, p_hi) = (state.purity_eta(lo * t).unwrap(), state.purity_eta(hi * t).unwrap());
        prop_assert!(p_lo < p_hi);
        prop_assert!(p_hi <= 1.0 + 1e-12);
    }

    #[test]
    fn rescaling_is_homogeneous(seed in any::<u64>(), n in 1usize..4, c in 0.1f64..10.0, f in 0.05f64..1.0) {
        let sigma = covariance(seed, n);
        let state = GaussianState::centered(sigma.clone());
        let scaled = GaussianState::centered(sigma.scaled(c).unwrap());
        let t = state.quantum_threshold().unwrap();
        prop_assert!((scaled.quantum_threshold().unwrap() - c * t).abs() <= 1e-9 * c * t);
        let eta = f * t;
        let (p, q) = (state.purity_eta(eta).unwrap(), scaled.purity_eta(c * eta).unwrap());
        prop_assert!((p - q).abs() <= 1e-9);
    }

    #[test]
    fn sweep_never_returns_from_classical(seed in any::<u64>(), n in 1usize..4, mut fs in proptest::collection::vec(0.01f64..3.0, 1..20)) {
        let state = GaussianState::centered(covariance(seed, n));
        let t = state.quantum_threshold().unwrap();
        fs.sort_by(|a, b| a.total_cmp(b));
        let etas: Vec<f64> = fs.iter().map(|f| f * t).collect();
        let verdicts: Vec<Verdict> = state.sweep(&etas).unwrap().into_iter().map(|c| c.verdict).collect();
        if let Some(first) = verdicts.iter().position(|v| *v == Verdict::Classical) {
            prop_assert!(verdicts[first..].iter().all(|v| *v == Verdict::Classical));
        }
    }

    #[test]
    fn transition_round_trip(p in 0.01f64..=1.0, hbar in 0.1f64..10.0, eta in 0.1f64..10.0, n in 1u32..4) {
        let forward = transition_purity(p, hbar, eta, n).unwrap();
        prop_assume!(forward.implied_purity <= 1.0);
        let back = transition_purity(forward.implied_purity, eta, hbar, n).unwrap();
        prop_assert!((back.implied_purity - p).abs() <= 1e-12 * p.max(1.0));
    }

    #[test]
    fn transition_boundary_location(p in 0.01f64..=1.0, hbar in 0.1f64..10.0, n in 1u32..4, f in 0.5f64..2.0) {
        prop_assume!((f - 1.0).abs() > 1e-6);
        let edge = hbar * p.powf(-1.0 / n as f64);
        let v = transition_purity(p, hbar, f * edge, n).unwrap();
        let expected = if f < 1.0 { TransitionVerdictKind::Feasible } else { TransitionVerdictKind::Infeasible };
        prop_assert_eq!(v.verdict, expected);
        let lower = transition_purity(p, hbar, 0.9 * f * edge, n).unwrap();
        prop_assert!(lower.implied_purity < v.implied_purity);
    }

    #[test]
    fn trace_condition_is_symmetric(
        raw_a in proptest::collection::vec(0.01f64..1.0, 1..5),
        raw_b in proptest::collection::vec(0.01f64..1.0, 1..5),
        hbar in 0.1f64..5.0,
        eta in 0.1f64..5.0,
    ) {
        let normalize = |v: Vec<f64>| { let s: f64 = v.iter().sum(); v.into_iter().map(|x| x / s).collect::<Vec<_>>() };
        let (a, b) = (normalize(raw_a), normalize(raw_b));
        prop_assume!((a.iter().sum::<f64>() - 1.0).abs() < 1e-13);
        prop_assume!((b.iter().sum::<f64>() - 1.0).abs() < 1e-13);
        let tol = Tolerances::default();
        let x = trace_condition(&a, hbar, &b, eta, &tol).unwrap();
        let y = trace_condition(&b, eta, &a, hbar, &tol).unwrap();
        prop_assert_eq!(x.holds, y.holds);
        prop_assert!((x.residual - y.residual).abs() <= 1e-15);
    }
}

#[test]
fn moyal_self_purity_across_eta() {
    let family = state_family(Grid1D::centered(40.0, 512).unwrap());
    for eta in [0.5, 1.0, 2.0, -0.5, -1.0, -2.0] {
        for (name, psi) in &family {
            let w = wigner_transform(psi, eta).unwrap();
            let purity = moyal_overlap(&w, &w).unwrap();
            assert!((purity - psi.norm_sqr().powi(2)).abs() < 1e-6, "{name} at eta {eta}: {purity}");
        }
    }
}

#[test]
fn gaussian_wigner_nonnegative_hermite_negative() {
    let g = Grid1D::centered(24.0, 256).unwrap();
    let gauss = wigner_transform(&states::coherent(g, 1.0, 0.0, 0.0), 1.0).unwrap();
    assert!(gauss.min() >= -1e-14);
    let h1 = wigner_transform(&states::hermite(g, 1, 1.0), 1.0).unwrap();
    assert!(h1.min() < -0.3);
}
