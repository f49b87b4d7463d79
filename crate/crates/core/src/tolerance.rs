//! Numerical tolerance bands used across the crate.
//!
//! The mathematical statements being implemented are exact; the constants below
//! are the bands inside which floating point results are accepted as meeting
//! them. All of them live here so that the CLI can override them in one place.

use serde::{Deserialize, Serialize};

/// Relative symmetry tolerance for covariance matrices, scaled by `max|Σ|`.
pub const SYMMETRY_REL: f64 = 1e-12;
/// Relative band around `2λ_min` reported as a boundary verdict.
pub const BOUNDARY_REL: f64 = 1e-9;
/// Relative tolerance for the "all symplectic eigenvalues equal |η|/2" pure test.
pub const PURE_REL: f64 = 1e-9;
/// Maximum relative disagreement between the two singular values of a pair.
pub const PAIRING_REL: f64 = 1e-6;
/// Bound on `‖SᵀJS − J‖_max` per unit `‖S‖²_max`.
pub const SYMPLECTIC_ABS: f64 = 1e-10;
/// Bound on `‖SᵀDS − Σ‖_max / ‖Σ‖_max`.
pub const RECONSTRUCTION_REL: f64 = 1e-9;
/// Allowed imaginary residual of a Wigner transform relative to its real part.
pub const IMAG_RESIDUAL_REL: f64 = 1e-10;
/// Maximum `|ψ|²dx` mass in the outer 5% of a grid before a transform warns.
pub const EDGE_MASS: f64 = 1e-8;
/// Normalization tolerance for grid wavefunctions.
pub const NORM_ABS: f64 = 1e-9;
/// Orthogonality tolerance between ensemble components.
pub const ORTHO_ABS: f64 = 1e-8;
/// Tolerance on `Σα_j = 1`.
pub const WEIGHT_SUM_ABS: f64 = 1e-12;
/// Weights below this are dropped from an ensemble.
pub const WEIGHT_DROP: f64 = 1e-14;
/// Band for the PureOnly transition verdict.
pub const TRANSITION_ABS: f64 = 1e-12;
/// Relative agreement of the two sides of the cross-η trace condition.
pub const TRACE_CONDITION_REL: f64 = 1e-9;

/// Tolerances applied by classification routines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub boundary_rel: f64,
    pub pure_rel: f64,
    pub transition_abs: f64,
    pub trace_condition_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            boundary_rel: BOUNDARY_REL,
            pure_rel: PURE_REL,
            transition_abs: TRANSITION_ABS,
            trace_condition_rel: TRACE_CONDITION_REL,
        }
    }
}
