//! Finite mixed states `ρ̂ = Σ α_j |ψ_j⟩⟨ψ_j|` on a one-mode grid.
//!
//! Components are required to be orthonormal, which makes the purity
//! `Tr(ρ̂²) = Σ α_j²` and turns the Moyal identity into the cross-`η` condition
//! `(2πħ)^{−n} Σα_j² = (2π|η|)^{−n} Σβ_j²`.
//!
//! That condition, and the purity law `|η|^n Tr(ρ̂²) = ħ^n Tr(ρ̂_η²)` derived
//! from it, are necessary conditions only. A `Feasible` verdict means the
//! condition does not rule the transition out; it does not construct the
//! target ensemble.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use rustfft::num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::symplectic::check_eta;
use crate::tolerance::{self, Tolerances};
use crate::wigner::{self, GridWavefunction, PhaseSpaceFunction};

#[derive(Debug, Clone, PartialEq)]
pub struct MixedState {
    components: Vec<(f64, GridWavefunction)>,
    hbar: f64,
    warnings: Vec<String>,
}

impl MixedState {
    pub fn new(components: Vec<(f64, GridWavefunction)>, hbar: f64) -> Result<Self> {
        if !(hbar > 0.0) || !hbar.is_finite() {
            return Err(Error::InvalidParameter(format!("hbar must be positive, got {hbar}")));
        }
        if components.is_empty() {
            return Err(Error::InvalidState("a mixed state needs at least one component".into()));
        }
        if let Some((w, _)) = components.iter().find(|(w, _)| !(*w >= 0.0) || !w.is_finite()) {
            return Err(Error::InvalidState(format!("weights must be non-negative, got {w}")));
        }
        let mut warnings = Vec::new();
        let before = components.len();
        let components: Vec<_> = components.into_iter().filter(|(w, _)| *w >= tolerance::WEIGHT_DROP).collect();
        if components.len() < before {
            warnings.push(format!(
                "dropped {} component(s) with weight below {:e}",
                before - components.len(),
                tolerance::WEIGHT_DROP
            ));
        }
        if components.is_empty() {
            return Err(Error::InvalidState("all weights are numerically zero".into()));
        }
        let total: f64 = components.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > tolerance::WEIGHT_SUM_ABS {
            return Err(Error::InvalidState(format!("weights sum to {total}, not 1")));
        }
        let states: Vec<GridWavefunction> = components.iter().map(|(_, s)| s.clone()).collect();
        let report = validate_orthonormal(&states)?;
        if !report.pass {
            return Err(Error::InvalidState(format!(
                "components are not orthonormal: max |<psi_j|psi_k>| = {:e}, max | ||psi_j||^2 - 1 | = {:e}",
                report.max_off_diagonal, report.max_diagonal_deviation
            )));
        }
        Ok(Self {
            components,
            hbar,
            warnings,
        })
    }

    pub fn pure(state: GridWavefunction, hbar: f64) -> Result<Self> {
        Self::new(vec![(1.0, state)], hbar)
    }

    pub fn components(&self) -> &[(f64, GridWavefunction)] {
        &self.components
    }

    pub fn weights(&self) -> Vec<f64> {
        self.components.iter().map(|(w, _)| *w).collect()
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// `Tr(ρ̂²) = Σ α_j²`.
    pub fn purity(&self) -> f64 {
        self.components.iter().map(|(w, _)| w * w).sum()
    }

    /// `P_η = Σ α_j W_ηψ_j`.
    pub fn eta_wigner_distribution(&self, eta: f64) -> Result<PhaseSpaceFunction> {
        check_eta(eta)?;
        let transforms = self
            .components
            .iter()
            .map(|(w, s)| wigner::wigner_transform(s, eta).map(|t| (*w, t)))
            .collect::<Result<Vec<_>>>()?;
        let terms: Vec<(f64, &PhaseSpaceFunction)> = transforms.iter().map(|(w, t)| (*w, t)).collect();
        PhaseSpaceFunction::linear_combination(&terms)
    }

    /// `(2π|η|)∬P_η² dz`; equals [`MixedState::purity`] by the Moyal identity.
    pub fn phase_space_purity(&self, eta: f64) -> Result<f64> {
        let p = self.eta_wigner_distribution(eta)?;
        wigner::moyal_overlap(&p, &p)
    }
}

/// Gram matrix summary for a list of grid wavefunctions.
#[derive(Debug, Clone)]
pub struct OrthonormalityReport {
    pub gram: DMatrix<Complex64>,
    pub max_off_diagonal: f64,
    pub max_diagonal_deviation: f64,
    pub pass: bool,
}

pub fn validate_orthonormal(states: &[GridWavefunction]) -> Result<OrthonormalityReport> {
    if states.is_empty() {
        return Err(Error::InvalidParameter("orthonormality check needs at least one state".into()));
    }
    let k = states.len();
    let mut gram = DMatrix::from_element(k, k, Complex64::new(0.0, 0.0));
    for i in 0..k {
        for j in i..k {
            let ip = states[i].inner(&states[j])?;
            gram[(i, j)] = ip;
            gram[(j, i)] = ip.conj();
        }
    }
    let mut max_off_diagonal = 0.0_f64;
    let mut max_diagonal_deviation = 0.0_f64;
    for i in 0..k {
        for j in 0..k {
            if i == j {
                max_diagonal_deviation = max_diagonal_deviation.max((gram[(i, i)] - 1.0).norm());
            } else {
                max_off_diagonal = max_off_diagonal.max(gram[(i, j)].norm());
            }
        }
    }
    Ok(OrthonormalityReport {
        gram,
        max_off_diagonal,
        max_diagonal_deviation,
        pass: max_off_diagonal <= tolerance::ORTHO_ABS && max_diagonal_deviation <= tolerance::NORM_ABS,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TransitionVerdictKind {
    Feasible,
    PureOnly,
    Infeasible,
}

impl TransitionVerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TransitionVerdictKind::Feasible => "Feasible",
            TransitionVerdictKind::PureOnly => "PureOnly",
            TransitionVerdictKind::Infeasible => "Infeasible",
        }
    }
}

impl std::fmt::Display for TransitionVerdictKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransitionVerdict {
    pub source_purity: f64,
    pub hbar: f64,
    pub eta: f64,
    pub modes: u32,
    /// `(|η|/ħ)^n · source_purity`
    pub implied_purity: f64,
    pub verdict: TransitionVerdictKind,
}

/// Solves `|η|^n · source_purity = ħ^n · implied_purity` for the purity the
/// same phase-space function must have as an `η`-state.
pub fn transition_purity(source_purity: f64, hbar: f64, eta: f64, modes: u32) -> Result<TransitionVerdict> {
    transition_purity_with(source_purity, hbar, eta, modes, &Tolerances::default())
}

pub fn transition_purity_with(
    source_purity: f64,
    hbar: f64,
    eta: f64,
    modes: u32,
    tol: &Tolerances,
) -> Result<TransitionVerdict> {
    if !(source_purity > 0.0 && source_purity <= 1.0) {
        return Err(Error::InvalidParameter(format!("source purity must lie in (0, 1], got {source_purity}")));
    }
    if !(hbar > 0.0) || !hbar.is_finite() {
        return Err(Error::InvalidParameter(format!("hbar must be positive, got {hbar}")));
    }
    check_eta(eta)?;
    if modes == 0 {
        return Err(Error::InvalidDimension("number of modes must be at least 1".into()));
    }
    let implied_purity = (eta.abs() / hbar).powi(modes as i32) * source_purity;
    let verdict = if (implied_purity - 1.0).abs() <= tol.transition_abs {
        TransitionVerdictKind::PureOnly
    } else if implied_purity < 1.0 {
        TransitionVerdictKind::Feasible
    } else {
        TransitionVerdictKind::Infeasible
    };
    Ok(TransitionVerdict {
        source_purity,
        hbar,
        eta,
        modes,
        implied_purity,
        verdict,
    })
}

/// Both sides of `(2πħ)^{−1} Σα_j² = (2π|η|)^{−1} Σβ_j²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceCondition {
    pub source_side: f64,
    pub target_side: f64,
    /// `|source − target| / max(|source|, |target|)`
    pub residual: f64,
    pub holds: bool,
}

/// Evaluates the one-mode trace condition for weight vectors `alpha` at `ħ`
/// and `beta` at `η`.
pub fn trace_condition(alpha: &[f64], hbar: f64, beta: &[f64], eta: f64, tol: &Tolerances) -> Result<TraceCondition> {
    check_probability_vector(alpha)?;
    check_probability_vector(beta)?;
    check_eta(hbar)?;
    check_eta(eta)?;
    let sum_sq = |w: &[f64]| w.iter().map(|v| v * v).sum::<f64>();
    let source_side = sum_sq(alpha) / (2.0 * PI * hbar.abs());
    let target_side = sum_sq(beta) / (2.0 * PI * eta.abs());
    let residual = (source_side - target_side).abs() / source_side.abs().max(target_side.abs());
    Ok(TraceCondition {
        source_side,
        target_side,
        residual,
        holds: residual <= tol.trace_condition_rel,
    })
}

/// Necessary condition for `Σ α_j W_ħψ_j = Σ β_j W_ηφ_j` with orthonormal
/// `φ_j` to admit a solution.
pub fn check_transition_pair(source: &MixedState, target_weights: &[f64], eta: f64) -> Result<TraceCondition> {
    trace_condition(&source.weights(), source.hbar, target_weights, eta, &Tolerances::default())
}

fn check_probability_vector(w: &[f64]) -> Result<()> {
    if w.is_empty() {
        return Err(Error::InvalidParameter("weight list is empty".into()));
    }
    if let Some(bad) = w.iter().find(|v| !(**v >= 0.0) || !v.is_finite()) {
        return Err(Error::InvalidParameter(format!("weights must be non-negative, got {bad}")));
    }
    let total: f64 = w.iter().sum();
    if (total - 1.0).abs() > tolerance::WEIGHT_SUM_ABS {
        return Err(Error::InvalidParameter(format!("weights sum to {total}, not 1")));
    }
    Ok(())
}
