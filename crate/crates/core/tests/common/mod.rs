//! Independent oracles and seeded fixtures shared by the integration tests.
//!
//! Nothing here calls into the FFT or SVD paths of the library: Wigner values
//! come from direct summation, symplectic spectra from a general complex
//! eigensolve of `JΣ`, positivity from Hermitian eigenvalues of `Σ + (iη/2)J`.

#![allow(dead_code)]

use std::f64::consts::PI;

use etaphase_core::states;
use etaphase_core::{Complex64, CovarianceMatrix, DMatrix, Grid1D, GridWavefunction};
use nalgebra::{Complex, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn j_matrix(n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(2 * n, 2 * n, |r, c| {
        if c == r + n {
            1.0
        } else if r == c + n {
            -1.0
        } else {
            0.0
        }
    })
}

/// `AAᵀ + 0.2·I`, rescaled by a random factor in `[e^{−1}, e]`.
pub fn random_spd(rng: &mut ChaCha8Rng, n: usize) -> CovarianceMatrix {
    let dim = 2 * n;
    let a = DMatrix::from_fn(dim, dim, |_, _| rng.random_range(-1.0..1.0));
    let scale = rng.random_range(-1.0f64..1.0).exp();
    let m = (&a * a.transpose() + DMatrix::identity(dim, dim) * 0.2) * scale;
    let m = (&m + m.transpose()) * 0.5;
    CovarianceMatrix::new(m).expect("random SPD")
}

/// The family used by the symplectic acceptance criteria.
pub fn spd_family(count: usize, seed: u64) -> Vec<CovarianceMatrix> {
    let mut r = rng(seed);
    (0..count).map(|i| random_spd(&mut r, i % 3 + 1)).collect()
}

/// Positive imaginary parts of the eigenvalues of `JΣ`, sorted.
pub fn spectrum_oracle(sigma: &CovarianceMatrix) -> Vec<f64> {
    let n = sigma.modes();
    let js = j_matrix(n) * sigma.matrix();
    let mut im: Vec<f64> = js.complex_eigenvalues().iter().map(|z| z.im).filter(|v| *v > 0.0).collect();
    im.sort_by(|a, b| a.total_cmp(b));
    assert_eq!(im.len(), n, "JΣ must have n eigenvalues with positive imaginary part");
    im
}

/// Smallest eigenvalue of the Hermitian matrix `Σ + (iη/2)J`.
pub fn hermitian_min_eigenvalue(sigma: &CovarianceMatrix, eta: f64) -> f64 {
    let n = sigma.modes();
    let j = j_matrix(n);
    let m = sigma.matrix();
    let h = DMatrix::from_fn(2 * n, 2 * n, |r, c| Complex::new(m[(r, c)], 0.5 * eta * j[(r, c)]));
    SymmetricEigen::new(h).eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
}

/// Determinant via Cholesky: `Π L_ii²`.
pub fn det_cholesky(sigma: &CovarianceMatrix) -> f64 {
    let l = sigma.matrix().clone().cholesky().unwrap().unpack();
    l.diagonal().iter().map(|v| v * v).product()
}

/// `∫ρ_Σ² d^{2n}z = (4π)^{−n} (det Σ)^{−1/2}`.
pub fn gaussian_square_integral(sigma: &CovarianceMatrix) -> f64 {
    (4.0 * PI).powi(-(sigma.modes() as i32)) / det_cholesky(sigma).sqrt()
}

/// `(2π|η|) ∬ ρ_Σ² dx dp` for one mode by the trapezoid rule on a wide box.
pub fn single_mode_purity_quadrature(sigma: &CovarianceMatrix, eta: f64) -> f64 {
    assert_eq!(sigma.modes(), 1);
    let m = sigma.matrix();
    let (a, b, c) = (m[(0, 0)], m[(0, 1)], m[(1, 1)]);
    let det = a * c - b * b;
    let (ia, ib, ic) = (c / det, -b / det, a / det);
    let density = |x: f64, p: f64| (-0.5 * (ia * x * x + 2.0 * ib * x * p + ic * p * p)).exp() / (2.0 * PI * det.sqrt());
    let points = 481;
    let hx = 12.0 * a.sqrt() / (points - 1) as f64 * 2.0;
    let hp = 12.0 * c.sqrt() / (points - 1) as f64 * 2.0;
    let mut sum = 0.0;
    for i in 0..points {
        let x = -12.0 * a.sqrt() + i as f64 * hx;
        for k in 0..points {
            let p = -12.0 * c.sqrt() + k as f64 * hp;
            let v = density(x, p);
            sum += v * v;
        }
    }
    2.0 * PI * eta.abs() * sum * hx * hp
}

/// `W(x_j, p_k) = (1/2πη) Σ_m 2dx e^{−i p_k 2m dx/η} ψ[j+m] ψ*[j−m]`, summed directly.
pub fn direct_wigner(psi: &GridWavefunction, eta: f64) -> Vec<f64> {
    let g = psi.grid();
    let n = g.len;
    let dp = PI * eta.abs() / (n as f64 * g.spacing);
    let p0 = -0.5 * n as f64 * dp;
    let s = psi.samples();
    let mut out = vec![0.0; n * n];
    for j in 0..n {
        for k in 0..n {
            let p = p0 + k as f64 * dp;
            let mut acc = Complex64::new(0.0, 0.0);
            for m in -(n as i64)..(n as i64) {
                let (a, b) = (j as i64 + m, j as i64 - m);
                if a < 0 || b < 0 || a >= n as i64 || b >= n as i64 {
                    continue;
                }
                let y = 2.0 * m as f64 * g.spacing;
                acc += Complex64::from_polar(1.0, -p * y / eta) * s[a as usize] * s[b as usize].conj();
            }
            out[j * n + k] = (acc * 2.0 * g.spacing / (2.0 * PI * eta)).re;
        }
    }
    out
}

/// Direct `(2π|η|)^{−1/2} Σ_a e^{−ip x_a/η} ψ_a dx` at a single momentum.
pub fn direct_fourier(psi: &GridWavefunction, eta: f64, p: f64) -> Complex64 {
    let g = psi.grid();
    let sum: Complex64 = psi
        .samples()
        .iter()
        .enumerate()
        .map(|(a, v)| Complex64::from_polar(1.0, -p * g.point(a) / eta) * v)
        .sum();
    sum * g.spacing / (2.0 * PI * eta.abs()).sqrt()
}

/// Named test states on a shared grid.
pub fn state_family(grid: Grid1D) -> Vec<(&'static str, GridWavefunction)> {
    vec![
        ("coherent(1.0)", states::coherent(grid, 1.0, 0.0, 0.0)),
        ("coherent(0.7, x=0.5)", states::coherent(grid, 0.7, 0.5, 0.0)),
        ("coherent(1.2, k=1)", states::coherent(grid, 1.2, -0.3, 1.0)),
        ("hermite1", states::hermite(grid, 1, 1.0)),
        ("hermite2", states::hermite(grid, 2, 1.0)),
        ("hermite1(l=0.8)", states::hermite(grid, 1, 0.8)),
        ("chirp(0.8, b=0.4)", states::chirped(grid, 0.8, 0.0, 0.4)),
        ("chirp(1.1, b=-0.3, x=-0.4)", states::chirped(grid, 1.1, -0.4, -0.3)),
    ]
}

/// Closed-form `ρ_{X,P}` with `σ_P = |η|/(2σ_X)`.
pub fn gauss1(sigma_x: f64, sigma_p: f64, x: f64, p: f64) -> f64 {
    (-0.5 * (x * x / (sigma_x * sigma_x) + p * p / (sigma_p * sigma_p))).exp() / (2.0 * PI * sigma_x * sigma_p)
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max)
}
