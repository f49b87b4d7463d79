//! Phase-space descriptions of quantum states at a tunable Planck parameter `η`.
//!
//! The crate is organised bottom-up:
//!
//! - [`symplectic`]: the standard symplectic form, symplectic spectra, Williamson
//!   diagonalization and the `Σ + (iη/2)J ≥ 0` positivity test.
//! - [`gaussian`]: Gaussian states `ρ_Σ`, their `η`-purity and the
//!   quantum / mixed / classical classification as `η` varies.
//! - [`wigner`]: grid wavefunctions in one mode and the `η`-Wigner transform,
//!   `η`-Fourier transform, marginals, Moyal overlaps and Weyl application.
//! - [`mixture`]: finite orthonormal ensembles, their `η`-Wigner distributions,
//!   purity and the cross-`η` purity transition law.
//! - [`io`]: the plain-text and JSON file formats used by the command line tool.
//!
//! Quantities are unit-free; `ħ` is a runtime value (see [`Tolerances`] and the
//! CLI's `--hbar` flag), never a compiled-in constant.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod gaussian;
pub mod io;
pub mod mixture;
pub mod states;
pub mod symplectic;
pub mod tolerance;
pub mod wigner;

pub use error::{Error, Result};
pub use gaussian::{EtaClassification, GaussianState, Verdict};
pub use mixture::{MixedState, TransitionVerdict, TransitionVerdictKind};
pub use symplectic::{CovarianceMatrix, PositivityReport, SymplecticSpectrum, WilliamsonDecomposition};
pub use tolerance::Tolerances;
pub use wigner::{Grid1D, GridWavefunction, PhaseSpaceFunction};

pub use nalgebra::{DMatrix, DVector};
pub use rustfft::num_complex::Complex64;
