//! Symplectic linear algebra on covariance matrices.
//!
//! Phase-space vectors use the block convention `z = (x₁…x_n, p₁…p_n)`, so the
//! standard symplectic form is `J = [[0, I], [−I, 0]]`.

use nalgebra::{Complex, DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tolerance::{self, Tolerances};

/// Returns `J = [[0, I], [−I, 0]]` of size `2n × 2n`.
pub fn standard_symplectic_matrix(n: usize) -> Result<DMatrix<f64>> {
    if n == 0 {
        return Err(Error::InvalidDimension("number of modes must be at least 1".into()));
    }
    let mut j = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(i, n + i)] = 1.0;
        j[(n + i, i)] = -1.0;
    }
    Ok(j)
}

/// `‖SᵀJS − J‖_max`, the distance of `s` from the symplectic group.
pub fn symplectic_residual(s: &DMatrix<f64>) -> Result<f64> {
    if !s.is_square() || !s.nrows().is_multiple_of(2) {
        return Err(Error::InvalidDimension(format!(
            "expected a square matrix of even size, got {}x{}",
            s.nrows(),
            s.ncols()
        )));
    }
    let j = standard_symplectic_matrix(s.nrows() / 2)?;
    Ok(max_abs(&(s.transpose() * &j * s - j)))
}

pub(crate) fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

/// A real symmetric positive-definite `2n × 2n` covariance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    modes: usize,
    entries: DMatrix<f64>,
}

impl CovarianceMatrix {
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        let (rows, cols) = entries.shape();
        if rows != cols {
            return Err(Error::InvalidDimension(format!("covariance matrix must be square, got {rows}x{cols}")));
        }
        if rows == 0 || rows % 2 != 0 {
            return Err(Error::InvalidDimension(format!(
                "covariance matrix must be 2n x 2n with n >= 1, got {rows}x{cols}"
            )));
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("covariance matrix has non-finite entries".into()));
        }
        let scale = max_abs(&entries);
        for r in 0..rows {
            for c in (r + 1)..cols {
                let deviation = (entries[(r, c)] - entries[(c, r)]).abs();
                if deviation > tolerance::SYMMETRY_REL * scale {
                    return Err(Error::NotSymmetric { row: r, col: c, deviation });
                }
            }
        }
        let entries = (&entries + entries.transpose()) * 0.5;
        let smallest = SymmetricEigen::new(entries.clone())
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        if !(smallest > 0.0) {
            return Err(Error::NotPositiveDefinite { eigenvalue: smallest });
        }
        Ok(Self { modes: rows / 2, entries })
    }

    /// Builds the matrix from row-major nested rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::InvalidDimension(format!(
                "covariance matrix must be square: {dim} rows but a row of length {}",
                bad.len()
            )));
        }
        Self::new(DMatrix::from_fn(dim, dim, |r, c| rows[r][c]))
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        Self::new(DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(values)))
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn dim(&self) -> usize {
        2 * self.modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.row_iter().map(|r| r.iter().cloned().collect()).collect()
    }

    /// `det Σ`, via the product of the symmetric eigenvalues.
    pub fn determinant(&self) -> f64 {
        SymmetricEigen::new(self.entries.clone()).eigenvalues.iter().product()
    }

    /// The symmetric square root `Σ^{1/2}`.
    pub fn sqrt(&self) -> DMatrix<f64> {
        self.spectral_power(0.5)
    }

    /// The symmetric inverse square root `Σ^{−1/2}`.
    pub fn inv_sqrt(&self) -> DMatrix<f64> {
        self.spectral_power(-0.5)
    }

    fn spectral_power(&self, exponent: f64) -> DMatrix<f64> {
        let eig = SymmetricEigen::new(self.entries.clone());
        let scaled = eig.eigenvalues.map(|w| w.powf(exponent));
        &eig.eigenvectors * DMatrix::from_diagonal(&scaled) * eig.eigenvectors.transpose()
    }

    /// `cΣ` for `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::InvalidParameter(format!("scale factor must be positive, got {c}")));
        }
        Self::new(&self.entries * c)
    }

    /// The congruence `SᵀΣS`.
    pub fn congruence(&self, s: &DMatrix<f64>) -> Result<Self> {
        if s.shape() != self.entries.shape() {
            return Err(Error::InvalidDimension(format!(
                "congruence by a {}x{} matrix on a {}x{} covariance",
                s.nrows(),
                s.ncols(),
                self.dim(),
                self.dim()
            )));
        }
        Self::new(s.transpose() * &self.entries * s)
    }

    /// The skew-symmetric matrix `K = Σ^{1/2} J Σ^{1/2}`, conjugate to `JΣ`.
    fn skew_form(&self) -> DMatrix<f64> {
        let root = self.sqrt();
        let j = standard_symplectic_matrix(self.modes).expect("modes >= 1");
        &root * j * &root
    }
}

/// The symplectic eigenvalues `λ₁ ≤ … ≤ λ_n` of a covariance matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymplecticSpectrum {
    values: Vec<f64>,
}

impl SymplecticSpectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// `Π λ_j²`, equal to `det Σ`.
    pub fn product_of_squares(&self) -> f64 {
        self.values.iter().map(|v| v * v).product()
    }
}

/// Symplectic spectrum from the singular values of `Σ^{1/2} J Σ^{1/2}`.
///
/// Every singular value of the skew form appears twice; adjacent sorted values
/// are paired and averaged.
pub fn symplectic_spectrum(sigma: &CovarianceMatrix) -> Result<SymplecticSpectrum> {
    let mut singular: Vec<f64> = sigma.skew_form().singular_values().iter().cloned().collect();
    singular.sort_by(|a, b| a.total_cmp(b));
    let mut values = Vec::with_capacity(sigma.modes());
    for pair in singular.chunks_exact(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let spread = (hi - lo).abs() / hi.abs().max(f64::MIN_POSITIVE);
        if spread > tolerance::PAIRING_REL {
            return Err(Error::NumericalInstability {
                context: "pairing singular values of the skew form".into(),
                residual: spread,
            });
        }
        let v = 0.5 * (lo + hi);
        if !(v > 0.0) {
            return Err(Error::NotPositiveDefinite { eigenvalue: v });
        }
        values.push(v);
    }
    Ok(SymplecticSpectrum { values })
}

/// A Williamson factorization `Σ = SᵀDS` with `S` symplectic and `D = diag(Λ, Λ)`.
#[derive(Debug, Clone)]
pub struct WilliamsonDecomposition {
    pub s: DMatrix<f64>,
    pub d: DMatrix<f64>,
    pub spectrum: SymplecticSpectrum,
    /// `‖SᵀJS − J‖_max`
    pub symplectic_residual: f64,
    /// `‖SᵀDS − Σ‖_max / ‖Σ‖_max`
    pub reconstruction_residual: f64,
}

impl WilliamsonDecomposition {
    /// The diagonal of `Λ`.
    pub fn lambda(&self) -> Vec<f64> {
        let n = self.d.nrows() / 2;
        (0..n).map(|i| self.d[(i, i)]).collect()
    }
}

/// Williamson diagonalization.
///
/// The skew form `K = Σ^{1/2}JΣ^{1/2}` is brought to the canonical shape
/// `OᵀKO = [[0, Λ], [−Λ, 0]]` using the eigenvectors of the Hermitian matrix
/// `iK`: for `iKu = λu` with `u = a + ib` we have `Ka = λb` and `Kb = −λa`, and
/// the columns `√2 b`, `√2 a` are orthonormal. Then `S = D^{−1/2}OᵀΣ^{1/2}`.
pub fn williamson(sigma: &CovarianceMatrix) -> Result<WilliamsonDecomposition> {
    let n = sigma.modes();
    let dim = 2 * n;
    let root = sigma.sqrt();
    let j = standard_symplectic_matrix(n)?;
    let skew = &root * &j * &root;

    let hermitian = DMatrix::from_fn(dim, dim, |r, c| Complex::new(0.0, skew[(r, c)]));
    let eig = SymmetricEigen::new(hermitian);
    let mut positive: Vec<usize> = (0..dim).filter(|&i| eig.eigenvalues[i] > 0.0).collect();
    if positive.len() != n {
        return Err(Error::NumericalInstability {
            context: format!("expected {n} positive eigenvalues of iK, found {}", positive.len()),
            residual: f64::NAN,
        });
    }
    positive.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let sqrt2 = std::f64::consts::SQRT_2;
    let mut orthogonal = DMatrix::zeros(dim, dim);
    let mut lambda = Vec::with_capacity(n);
    for (slot, &idx) in positive.iter().enumerate() {
        lambda.push(eig.eigenvalues[idx]);
        let u = eig.eigenvectors.column(idx);
        for r in 0..dim {
            orthogonal[(r, slot)] = sqrt2 * u[r].im;
            orthogonal[(r, n + slot)] = sqrt2 * u[r].re;
        }
    }

    let mut d = DMatrix::zeros(dim, dim);
    let mut d_inv_sqrt = DMatrix::zeros(dim, dim);
    for (i, &l) in lambda.iter().enumerate() {
        d[(i, i)] = l;
        d[(n + i, n + i)] = l;
        d_inv_sqrt[(i, i)] = 1.0 / l.sqrt();
        d_inv_sqrt[(n + i, n + i)] = 1.0 / l.sqrt();
    }
    let s = d_inv_sqrt * orthogonal.transpose() * &root;

    let symplectic = max_abs(&(s.transpose() * &j * &s - &j));
    let bound = tolerance::SYMPLECTIC_ABS * max_abs(&s).powi(2).max(1.0);
    if !(symplectic <= bound) {
        return Err(Error::NumericalInstability {
            context: "Williamson factor fails S^T J S = J".into(),
            residual: symplectic,
        });
    }
    let reconstruction = max_abs(&(s.transpose() * &d * &s - sigma.matrix())) / max_abs(sigma.matrix());

    Ok(WilliamsonDecomposition {
        s,
        d,
        spectrum: symplectic_spectrum(sigma)?,
        symplectic_residual: symplectic,
        reconstruction_residual: reconstruction,
    })
}

/// Outcome of the `Σ + (iη/2)J ≥ 0` test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PositivityReport {
    pub eta: f64,
    /// `|η| ≤ 2λ_min`
    pub positive: bool,
    /// `|margin| ≤ boundary_rel · threshold`
    pub boundary: bool,
    /// `2λ_min`
    pub threshold: f64,
    /// `2λ_min − |η|`
    pub margin: f64,
}

pub fn eta_positivity(sigma: &CovarianceMatrix, eta: f64) -> Result<PositivityReport> {
    eta_positivity_with(sigma, eta, &Tolerances::default())
}

pub fn eta_positivity_with(sigma: &CovarianceMatrix, eta: f64, tol: &Tolerances) -> Result<PositivityReport> {
    check_eta(eta)?;
    let threshold = 2.0 * symplectic_spectrum(sigma)?.min();
    Ok(positivity_from_threshold(threshold, eta, tol))
}

pub(crate) fn positivity_from_threshold(threshold: f64, eta: f64, tol: &Tolerances) -> PositivityReport {
    let margin = threshold - eta.abs();
    PositivityReport {
        eta,
        positive: eta.abs() <= threshold,
        boundary: margin.abs() <= tol.boundary_rel * threshold,
        threshold,
        margin,
    }
}

pub(crate) fn check_eta(eta: f64) -> Result<()> {
    if eta == 0.0 || !eta.is_finite() {
        return Err(Error::InvalidParameter(format!("eta must be a non-zero finite real, got {eta}")));
    }
    Ok(())
}
