//! Analytic test wavefunctions sampled on a grid.

use std::f64::consts::PI;

use rustfft::num_complex::Complex64;

use crate::wigner::{Grid1D, GridWavefunction};

/// Coherent state with position variance `σ²`, centered at `center`, carrying
/// the plane-wave factor `e^{i·wavenumber·x}`:
/// `(2πσ²)^{−1/4} e^{−(x−c)²/4σ²} e^{ikx}`.
///
/// Its `η`-Wigner transform at `wavenumber = 0` is the Gaussian with variances
/// `σ²` and `(η/2σ)²`.
pub fn coherent(grid: Grid1D, sigma: f64, center: f64, wavenumber: f64) -> GridWavefunction {
    let amp = (2.0 * PI * sigma * sigma).powf(-0.25);
    GridWavefunction::from_fn(grid, |x| {
        let d = x - center;
        Complex64::from_polar(amp * (-d * d / (4.0 * sigma * sigma)).exp(), wavenumber * x)
    })
}

/// Coherent state multiplied by the chirp `e^{iβ(x−c)²}`.
pub fn chirped(grid: Grid1D, sigma: f64, center: f64, chirp: f64) -> GridWavefunction {
    let amp = (2.0 * PI * sigma * sigma).powf(-0.25);
    GridWavefunction::from_fn(grid, |x| {
        let d = x - center;
        Complex64::from_polar(amp * (-d * d / (4.0 * sigma * sigma)).exp(), chirp * d * d)
    })
}

/// The `k`-th normalized Hermite function with length scale `ℓ`:
/// `(2^k k! √π ℓ)^{−1/2} H_k(x/ℓ) e^{−x²/2ℓ²}`.
///
/// With `ℓ = √η` these are the harmonic oscillator eigenstates at Planck
/// parameter `η` (unit mass and frequency).
pub fn hermite(grid: Grid1D, k: usize, length: f64) -> GridWavefunction {
    GridWavefunction::from_fn(grid, |x| Complex64::new(hermite_function(k, x / length) / length.sqrt(), 0.0))
}

/// `h_k(u) = (2^k k! √π)^{−1/2} H_k(u) e^{−u²/2}` by the stable three-term recurrence.
pub fn hermite_function(k: usize, u: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25) * (-0.5 * u * u).exp();
    for i in 0..k {
        let next = (2.0 / (i as f64 + 1.0)).sqrt() * u * cur - (i as f64 / (i as f64 + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_functions_are_orthonormal() {
        let grid = Grid1D::centered(30.0, 512).unwrap();
        let fs: Vec<_> = (0..4).map(|k| hermite(grid, k, 1.3)).collect();
        for (i, a) in fs.iter().enumerate() {
            for (j, b) in fs.iter().enumerate() {
                let ip = a.inner(b).unwrap();
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((ip.re - expected).abs() < 1e-12 && ip.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn first_hermite_closed_form() {
        let u = 0.37;
        let h1 = (2.0_f64).sqrt() * PI.powf(-0.25) * u * (-0.5 * u * u).exp();
        assert!((hermite_function(1, u) - h1).abs() < 1e-15);
    }

    #[test]
    fn coherent_and_chirped_normalized() {
        let grid = Grid1D::centered(30.0, 512).unwrap();
        assert!(coherent(grid, 1.1, 0.4, 2.0).is_normalized());
        assert!(chirped(grid, 0.9, -0.3, 0.5).is_normalized());
    }
}
