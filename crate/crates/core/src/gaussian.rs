//! Gaussian phase-space densities `ρ_Σ` and their status as `η` varies.
//!
//! A Gaussian `ρ_Σ` is always a classical probability density. It is the
//! `η`-Wigner distribution of a density operator exactly when
//! `|η| ≤ 2λ_min`, where `λ_min` is the smallest symplectic eigenvalue of `Σ`.
//! Its `η`-purity is then `(|η|/2)^n / √det Σ`.
//!
//! The mean vector does not enter classification or purity; it only shifts
//! the density.

use std::f64::consts::PI;

use nalgebra::DVector;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::symplectic::{self, CovarianceMatrix, SymplecticSpectrum};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    mean: DVector<f64>,
    sigma: CovarianceMatrix,
}

impl GaussianState {
    /// A centered Gaussian.
    pub fn centered(sigma: CovarianceMatrix) -> Self {
        Self {
            mean: DVector::zeros(sigma.dim()),
            sigma,
        }
    }

    pub fn with_mean(mean: DVector<f64>, sigma: CovarianceMatrix) -> Result<Self> {
        if mean.len() != sigma.dim() {
            return Err(Error::InvalidDimension(format!(
                "mean has length {} but covariance is {}x{}",
                mean.len(),
                sigma.dim(),
                sigma.dim()
            )));
        }
        Ok(Self { mean, sigma })
    }

    /// The uncorrelated single-mode Gaussian with `Σ = diag(σ_X², σ_P²)`.
    pub fn single_mode(sigma_x: f64, sigma_p: f64) -> Result<Self> {
        if !(sigma_x > 0.0 && sigma_p > 0.0) || !sigma_x.is_finite() || !sigma_p.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "widths must be positive, got sigma_x = {sigma_x}, sigma_p = {sigma_p}"
            )));
        }
        Ok(Self::centered(CovarianceMatrix::diagonal(&[sigma_x * sigma_x, sigma_p * sigma_p])?))
    }

    pub fn modes(&self) -> usize {
        self.sigma.modes()
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn sigma(&self) -> &CovarianceMatrix {
        &self.sigma
    }

    pub fn spectrum(&self) -> Result<SymplecticSpectrum> {
        symplectic::symplectic_spectrum(&self.sigma)
    }

    /// `(2π)^{−n} det(Σ)^{−1/2} exp(−½ (z−m)ᵀΣ⁻¹(z−m))`.
    pub fn density(&self, z: &[f64]) -> Result<f64> {
        let dim = self.sigma.dim();
        if z.len() != dim {
            return Err(Error::InvalidDimension(format!("point has length {} but state has dimension {dim}", z.len())));
        }
        let chol = self
            .sigma
            .matrix()
            .clone()
            .cholesky()
            .ok_or(Error::NotPositiveDefinite { eigenvalue: f64::NAN })?;
        let shifted = DVector::from_column_slice(z) - &self.mean;
        let quad = shifted.dot(&chol.solve(&shifted));
        let sqrt_det: f64 = chol.l_dirty().diagonal().iter().product();
        Ok((2.0 * PI).powi(-(self.modes() as i32)) / sqrt_det * (-0.5 * quad).exp())
    }

    /// `2λ_min`, the largest `|η|` at which the state is quantum.
    pub fn quantum_threshold(&self) -> Result<f64> {
        Ok(2.0 * self.spectrum()?.min())
    }

    /// `Tr(ρ̂_η²) = (|η|/2)^n det(Σ)^{−1/2}`.
    ///
    /// Errors with [`Error::NotQuantum`] when `|η|` exceeds `2λ_min` by more
    /// than the boundary band.
    pub fn purity_eta(&self, eta: f64) -> Result<f64> {
        self.purity_eta_with(eta, &Tolerances::default())
    }

    pub fn purity_eta_with(&self, eta: f64, tol: &Tolerances) -> Result<f64> {
        symplectic::check_eta(eta)?;
        let spectrum = self.spectrum()?;
        let report = symplectic::positivity_from_threshold(2.0 * spectrum.min(), eta, tol);
        if !report.positive && !report.boundary {
            return Err(Error::NotQuantum {
                eta,
                threshold: report.threshold,
            });
        }
        Ok(purity_from_spectrum(&spectrum, eta))
    }

    pub fn classify(&self, eta: f64) -> Result<EtaClassification> {
        self.classify_with(eta, &Tolerances::default())
    }

    pub fn classify_with(&self, eta: f64, tol: &Tolerances) -> Result<EtaClassification> {
        symplectic::check_eta(eta)?;
        let spectrum = self.spectrum()?;
        Ok(classify_spectrum(&spectrum, eta, tol))
    }

    /// Classifies every `η` in order.
    pub fn sweep(&self, etas: &[f64]) -> Result<Vec<EtaClassification>> {
        self.sweep_with(etas, &Tolerances::default())
    }

    pub fn sweep_with(&self, etas: &[f64], tol: &Tolerances) -> Result<Vec<EtaClassification>> {
        if etas.is_empty() {
            return Err(Error::InvalidParameter("sweep needs at least one eta value".into()));
        }
        etas.iter().try_for_each(|&eta| symplectic::check_eta(eta))?;
        let spectrum = self.spectrum()?;
        Ok(etas.iter().map(|&eta| classify_spectrum(&spectrum, eta, tol)).collect())
    }
}

/// `Π_j (|η| / 2λ_j)`, which equals `(|η|/2)^n / √det Σ`.
fn purity_from_spectrum(spectrum: &SymplecticSpectrum, eta: f64) -> f64 {
    let half = 0.5 * eta.abs();
    spectrum.values().iter().map(|l| half / l).product()
}

fn classify_spectrum(spectrum: &SymplecticSpectrum, eta: f64, tol: &Tolerances) -> EtaClassification {
    let report = symplectic::positivity_from_threshold(2.0 * spectrum.min(), eta, tol);
    let half = 0.5 * eta.abs();
    let quantum_side = report.positive || report.boundary;
    let purity = quantum_side.then(|| purity_from_spectrum(spectrum, eta));
    let all_at_half = spectrum.values().iter().all(|l| (l - half).abs() <= tol.pure_rel * half);
    let verdict = match purity {
        Some(p) if all_at_half && (p - 1.0).abs() <= tol.pure_rel => Verdict::PureQuantum,
        Some(_) if report.boundary => Verdict::Boundary,
        Some(_) => Verdict::MixedQuantum,
        None => Verdict::Classical,
    };
    EtaClassification {
        verdict,
        eta,
        threshold: report.threshold,
        margin: report.margin,
        purity,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Classical,
    MixedQuantum,
    PureQuantum,
    Boundary,
}

impl Verdict {
    pub fn is_quantum(self) -> bool {
        !matches!(self, Verdict::Classical)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Classical => "Classical",
            Verdict::MixedQuantum => "MixedQuantum",
            Verdict::PureQuantum => "PureQuantum",
            Verdict::Boundary => "Boundary",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EtaClassification {
    pub verdict: Verdict,
    pub eta: f64,
    /// `2λ_min`
    pub threshold: f64,
    /// `2λ_min − |η|`
    pub margin: f64,
    /// `Tr(ρ̂_η²)`; `None` for classical states.
    pub purity: Option<f64>,
}
