//! wasm-bindgen bindings behind `www/index.html`.
//!
//! Three operations: an η-Wigner heatmap of a preset wavefunction, an η sweep
//! of a single-mode Gaussian, and the transition purity calculator.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use etaphase_core::gaussian::{GaussianState, Verdict};
use etaphase_core::mixture::transition_purity;
use etaphase_core::wigner::{moyal_overlap, wigner_transform};
use etaphase_core::{states, Complex64, CovarianceMatrix, Grid1D, GridWavefunction};
use wasm_bindgen::prelude::*;

/// Preset states: `coherent`, `hermite1`, `hermite2`, `cat`, `chirp`.
/// `width` is the position width of the envelope.
pub fn preset_state(name: &str, width: f64, grid: Grid1D) -> Result<GridWavefunction, String> {
    if !(width > 0.0) {
        return Err(format!("width must be positive, got {width}"));
    }
    Ok(match name {
        "coherent" => states::coherent(grid, width, 0.0, 0.0),
        "hermite1" => states::hermite(grid, 1, width),
        "hermite2" => states::hermite(grid, 2, width),
        "chirp" => states::chirped(grid, width, 0.0, 0.5),
        "cat" => {
            let a = states::coherent(grid, width, -2.5 * width, 0.0);
            let b = states::coherent(grid, width, 2.5 * width, 0.0);
            let sum: Vec<Complex64> = a.samples().iter().zip(b.samples()).map(|(u, v)| u + v).collect();
            GridWavefunction::new(grid, sum).and_then(|s| s.normalized()).map_err(|e| e.to_string())?
        }
        other => return Err(format!("unknown state '{other}'")),
    })
}

#[wasm_bindgen]
pub struct Heatmap {
    values: Vec<f64>,
    nx: usize,
    np: usize,
    x_range: [f64; 2],
    p_range: [f64; 2],
    min: f64,
    max: f64,
    self_purity: f64,
}

#[wasm_bindgen]
impl Heatmap {
    /// Row-major, row `j` is `x_j`.
    pub fn values(&self) -> Vec<f64> {
        self.values.clone()
    }
    pub fn nx(&self) -> usize {
        self.nx
    }
    pub fn np(&self) -> usize {
        self.np
    }
    pub fn x_min(&self) -> f64 {
        self.x_range[0]
    }
    pub fn x_max(&self) -> f64 {
        self.x_range[1]
    }
    pub fn p_min(&self) -> f64 {
        self.p_range[0]
    }
    pub fn p_max(&self) -> f64 {
        self.p_range[1]
    }
    pub fn min(&self) -> f64 {
        self.min
    }
    pub fn max(&self) -> f64 {
        self.max
    }
    pub fn self_purity(&self) -> f64 {
        self.self_purity
    }
}

/// `W_ηψ` of a preset on a `len`-point grid spanning `[−length/2, length/2)`.
#[wasm_bindgen]
pub fn wigner_heatmap(state: &str, width: f64, eta: f64, length: f64, len: usize) -> Result<Heatmap, String> {
    let grid = Grid1D::centered(length, len).map_err(|e| e.to_string())?;
    let psi = preset_state(state, width, grid)?;
    let w = wigner_transform(&psi, eta).map_err(|e| e.to_string())?;
    let (x, p) = (*w.x_grid(), *w.p_grid());
    Ok(Heatmap {
        values: w.values().to_vec(),
        nx: x.len,
        np: p.len,
        x_range: [x.origin, x.point(x.len - 1)],
        p_range: [p.origin, p.point(p.len - 1)],
        min: w.min(),
        max: w.max(),
        self_purity: moyal_overlap(&w, &w).map_err(|e| e.to_string())?,
    })
}

#[wasm_bindgen]
pub struct Sweep {
    etas: Vec<f64>,
    purities: Vec<f64>,
    verdicts: Vec<u8>,
    threshold: f64,
}

#[wasm_bindgen]
impl Sweep {
    pub fn etas(&self) -> Vec<f64> {
        self.etas.clone()
    }
    /// `NaN` where the state is classical.
    pub fn purities(&self) -> Vec<f64> {
        self.purities.clone()
    }
    /// 0 classical, 1 mixed quantum, 2 pure quantum, 3 boundary.
    pub fn verdicts(&self) -> Vec<u8> {
        self.verdicts.clone()
    }
    pub fn threshold(&self) -> f64 {
        self.threshold
    }
}

pub fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Classical => 0,
        Verdict::MixedQuantum => 1,
        Verdict::PureQuantum => 2,
        Verdict::Boundary => 3,
    }
}

/// Single-mode Gaussian with `Var x = σx²`, `Var p = σp²`, correlation `r`,
/// classified at `steps` values of η evenly spaced in `(0, eta_max]`.
#[wasm_bindgen]
pub fn gaussian_sweep(sigma_x: f64, sigma_p: f64, r: f64, eta_max: f64, steps: usize) -> Result<Sweep, String> {
    if !(r.abs() < 1.0) {
        return Err(format!("correlation must lie in (−1, 1), got {r}"));
    }
    if !(eta_max > 0.0) || steps == 0 {
        return Err("need eta_max > 0 and at least one step".into());
    }
    let c = r * sigma_x * sigma_p;
    let sigma = CovarianceMatrix::from_rows(&[vec![sigma_x * sigma_x, c], vec![c, sigma_p * sigma_p]])
        .map_err(|e| e.to_string())?;
    let state = GaussianState::centered(sigma);
    let etas: Vec<f64> = (1..=steps).map(|i| eta_max * i as f64 / steps as f64).collect();
    let rows = state.sweep(&etas).map_err(|e| e.to_string())?;
    Ok(Sweep {
        purities: rows.iter().map(|c| c.purity.unwrap_or(f64::NAN)).collect(),
        verdicts: rows.iter().map(|c| verdict_code(c.verdict)).collect(),
        threshold: state.quantum_threshold().map_err(|e| e.to_string())?,
        etas,
    })
}

/// One line: implied purity and verdict.
#[wasm_bindgen]
pub fn transition(purity: f64, hbar: f64, eta: f64, modes: u32) -> Result<String, String> {
    let v = transition_purity(purity, hbar, eta, modes).map_err(|e| e.to_string())?;
    Ok(format!("implied purity {}, {}", v.implied_purity, v.verdict))
}
