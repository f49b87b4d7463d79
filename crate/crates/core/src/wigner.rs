//! One-mode grid wavefunctions and their `η`-parametrized phase-space transforms.
//!
//! Sampling conventions:
//!
//! - a wavefunction lives on `x_j = x0 + j·dx`, `j = 0..N`, with `N` a power of two;
//! - the Wigner integral over `y` is sampled at `y = 2m·dx`, so that `x ± y/2`
//!   stay on grid points; samples outside the grid are zero;
//! - the momentum grid is then `p_k = p0 + k·dp` with `dp = π|η|/(N·dx)` and
//!   `p0 = −N·dp/2`, which makes the `m ↔ k` sum an exact length-`N` DFT.
//!
//! The prefactor `1/(2πη)` keeps its sign, so for `η < 0` the transform is
//! `W_ηψ = −W_{−η}(ψ*)` and its integral is `−1`.

use std::f64::consts::PI;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::symplectic::check_eta;
use crate::tolerance;

/// A uniform one-dimensional grid `origin + k·spacing`, `k = 0..len`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid1D {
    pub origin: f64,
    pub spacing: f64,
    pub len: usize,
}

impl Grid1D {
    pub fn new(origin: f64, spacing: f64, len: usize) -> Result<Self> {
        if !(spacing > 0.0) || !spacing.is_finite() || !origin.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "grid needs a finite origin and positive spacing, got origin {origin}, spacing {spacing}"
            )));
        }
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::InvalidDimension(format!("grid length must be a power of two, got {len}")));
        }
        Ok(Self { origin, spacing, len })
    }

    /// `len` points covering `[−L/2, L/2)`.
    pub fn centered(length: f64, len: usize) -> Result<Self> {
        let spacing = length / len as f64;
        Self::new(-0.5 * length, spacing, len)
    }

    pub fn point(&self, k: usize) -> f64 {
        self.origin + k as f64 * self.spacing
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len).map(move |k| self.point(k))
    }

    /// The momentum grid paired with this position grid at `η`.
    pub fn momentum_grid(&self, eta: f64) -> Result<Grid1D> {
        check_eta(eta)?;
        let dp = PI * eta.abs() / (self.len as f64 * self.spacing);
        Grid1D::new(-0.5 * self.len as f64 * dp, dp, self.len)
    }

    fn approx_eq(&self, other: &Grid1D) -> bool {
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0);
        self.len == other.len && close(self.origin, other.origin) && close(self.spacing, other.spacing)
    }
}

/// Complex samples `ψ(x0 + k·dx)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridWavefunction {
    grid: Grid1D,
    samples: Vec<Complex64>,
}

impl GridWavefunction {
    pub fn new(grid: Grid1D, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.len {
            return Err(Error::InvalidDimension(format!(
                "grid has {} points but {} samples were given",
                grid.len,
                samples.len()
            )));
        }
        if samples.iter().any(|s| !s.re.is_finite() || !s.im.is_finite()) {
            return Err(Error::InvalidParameter("wavefunction has non-finite samples".into()));
        }
        Ok(Self { grid, samples })
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> Complex64) -> Self {
        let samples = grid.points().map(f).collect();
        Self { grid, samples }
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// `Σ|ψ_k|²·dx`
    pub fn norm_sqr(&self) -> f64 {
        self.samples.iter().map(|s| s.norm_sqr()).sum::<f64>() * self.grid.spacing
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tolerance::NORM_ABS
    }

    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm_sqr().sqrt();
        if !(norm > 0.0) {
            return Err(Error::InvalidState("cannot normalize the zero wavefunction".into()));
        }
        Ok(self.scaled(Complex64::new(1.0 / norm, 0.0)))
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            grid: self.grid,
            samples: self.samples.iter().map(|s| s * c).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            grid: self.grid,
            samples: self.samples.iter().map(|s| s.conj()).collect(),
        }
    }

    /// `⟨self|other⟩ = Σ ψ_k* φ_k dx`.
    pub fn inner(&self, other: &GridWavefunction) -> Result<Complex64> {
        self.check_same_grid(other)?;
        let sum: Complex64 = self.samples.iter().zip(&other.samples).map(|(a, b)| a.conj() * b).sum();
        Ok(sum * self.grid.spacing)
    }

    /// Pointwise maximum of `|ψ − φ|`.
    pub fn max_deviation(&self, other: &GridWavefunction) -> Result<f64> {
        self.check_same_grid(other)?;
        Ok(self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `|ψ|²·dx` mass in the outer 5% of the grid on either side.
    pub fn edge_mass(&self) -> f64 {
        let outer = ((self.len() as f64) * 0.05).ceil() as usize;
        let n = self.len();
        let mass: f64 = self.samples[..outer.min(n)]
            .iter()
            .chain(&self.samples[n.saturating_sub(outer)..])
            .map(|s| s.norm_sqr())
            .sum();
        mass * self.grid.spacing
    }

    /// `|ψ(x_k)|²`
    pub fn density(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.norm_sqr()).collect()
    }

    fn check_same_grid(&self, other: &GridWavefunction) -> Result<()> {
        if !self.grid.approx_eq(&other.grid) {
            return Err(Error::GridMismatch(format!("{:?} vs {:?}", self.grid, other.grid)));
        }
        Ok(())
    }

    fn edge_warning(&self) -> Option<String> {
        let mass = self.edge_mass();
        (mass > tolerance::EDGE_MASS).then(|| {
            format!("wavefunction has |psi|^2 mass {mass:e} in the outer 5% of the grid; transforms may be truncated")
        })
    }
}

/// Real samples of a quasi-distribution on an `N × M` `(x, p)` grid, row-major
/// in `x` (`values[j·M + k]` is the value at `(x_j, p_k)`).
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpaceFunction {
    x: Grid1D,
    p: Grid1D,
    values: Vec<f64>,
    eta: f64,
    warnings: Vec<String>,
}

impl PhaseSpaceFunction {
    pub fn new(x: Grid1D, p: Grid1D, values: Vec<f64>, eta: f64) -> Result<Self> {
        check_eta(eta)?;
        if values.len() != x.len * p.len {
            return Err(Error::InvalidDimension(format!(
                "expected {} x {} = {} values, got {}",
                x.len,
                p.len,
                x.len * p.len,
                values.len()
            )));
        }
        Ok(Self {
            x,
            p,
            values,
            eta,
            warnings: Vec::new(),
        })
    }

    pub fn x_grid(&self) -> &Grid1D {
        &self.x
    }

    pub fn p_grid(&self) -> &Grid1D {
        &self.p
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.values[j * self.p.len + k]
    }

    pub fn row(&self, j: usize) -> &[f64] {
        &self.values[j * self.p.len..(j + 1) * self.p.len]
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// `∬ W dx dp`
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.x.spacing * self.p.spacing
    }

    pub fn min(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Pointwise maximum of `|self − other|` on identical grids.
    pub fn max_deviation(&self, other: &PhaseSpaceFunction) -> Result<f64> {
        self.check_compatible(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// `Σ_i w_i·F_i` over functions sharing grids and `η`.
    pub fn linear_combination(terms: &[(f64, &PhaseSpaceFunction)]) -> Result<PhaseSpaceFunction> {
        let (_, first) = terms
            .first()
            .ok_or_else(|| Error::InvalidParameter("empty linear combination".into()))?;
        let mut values = vec![0.0; first.values.len()];
        let mut warnings = Vec::new();
        for (w, f) in terms {
            first.check_compatible(f)?;
            for (acc, v) in values.iter_mut().zip(&f.values) {
                *acc += w * v;
            }
            warnings.extend(f.warnings.iter().cloned());
        }
        warnings.dedup();
        Ok(PhaseSpaceFunction {
            x: first.x,
            p: first.p,
            values,
            eta: first.eta,
            warnings,
        })
    }

    fn check_compatible(&self, other: &PhaseSpaceFunction) -> Result<()> {
        if !self.x.approx_eq(&other.x) || !self.p.approx_eq(&other.p) {
            return Err(Error::GridMismatch(format!(
                "phase-space grids differ: x {:?} / {:?}, p {:?} / {:?}",
                self.x, other.x, self.p, other.p
            )));
        }
        if self.eta != other.eta {
            return Err(Error::GridMismatch(format!(
                "phase-space functions built at different eta: {} vs {}",
                self.eta, other.eta
            )));
        }
        Ok(())
    }
}

fn plan(len: usize, forward: bool) -> Arc<dyn Fft<f64>> {
    let mut planner = FftPlanner::new();
    if forward {
        planner.plan_fft_forward(len)
    } else {
        planner.plan_fft_inverse(len)
    }
}

/// The `η`-Wigner transform `W_ηψ(x,p) = (1/2πη)∫e^{−ipy/η}ψ(x+y/2)ψ*(x−y/2)dy`.
///
/// For each row `x_j` the correlation `ψ[j+m]ψ*[j−m]` is transformed over `m`
/// with a single length-`N` FFT. The `(−1)^m` factor recenters the momentum
/// grid at `p = 0`.
pub fn wigner_transform(psi: &GridWavefunction, eta: f64) -> Result<PhaseSpaceFunction> {
    check_eta(eta)?;
    let n = psi.len();
    let x = *psi.grid();
    let p = x.momentum_grid(eta)?;
    let fft = plan(n, eta > 0.0);
    let prefactor = x.spacing / (PI * eta);
    let samples = psi.samples();

    let mut values = vec![0.0; n * n];
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    let mut max_re = 0.0_f64;
    let mut max_im = 0.0_f64;
    for j in 0..n {
        buf.iter_mut().for_each(|b| *b = Complex64::new(0.0, 0.0));
        let reach = j.min(n - 1 - j);
        for m in 0..=reach {
            let c = samples[j + m] * samples[j - m].conj();
            let c = if m % 2 == 1 { -c } else { c };
            buf[m] = c;
            if m > 0 {
                buf[n - m] = c.conj();
            }
        }
        fft.process_with_scratch(&mut buf, &mut scratch);
        for (k, v) in buf.iter().enumerate() {
            let w = prefactor * v;
            max_re = max_re.max(w.re.abs());
            max_im = max_im.max(w.im.abs());
            values[j * n + k] = w.re;
        }
    }
    if max_im > tolerance::IMAG_RESIDUAL_REL * max_re.max(f64::MIN_POSITIVE) && max_im > 0.0 {
        return Err(Error::NumericalInstability {
            context: "imaginary part of the Wigner transform".into(),
            residual: max_im / max_re.max(f64::MIN_POSITIVE),
        });
    }
    let mut out = PhaseSpaceFunction::new(x, p, values, eta)?;
    out.warnings.extend(psi.edge_warning());
    Ok(out)
}

/// The `η`-Fourier transform `F_ηψ(p) = (2π|η|)^{−1/2}∫e^{−ipx/η}ψ(x)dx`,
/// sampled on the momentum grid of [`wigner_transform`].
///
/// The momentum spacing is half the natural DFT spacing, so `ψ` is zero-padded
/// to length `2N`.
pub fn eta_fourier(psi: &GridWavefunction, eta: f64) -> Result<GridWavefunction> {
    check_eta(eta)?;
    let n = psi.len();
    let x = *psi.grid();
    let p = x.momentum_grid(eta)?;
    let sign = eta.signum();
    let fft = plan(2 * n, eta > 0.0);
    let mut buf = vec![Complex64::new(0.0, 0.0); 2 * n];
    buf[..n].copy_from_slice(psi.samples());
    fft.process(&mut buf);

    let norm = x.spacing / (2.0 * PI * eta.abs()).sqrt();
    let samples = (0..n)
        .map(|k| {
            // p_k·a·dx/η = sign·2π·a·(k − N/2)/(2N)
            let idx = (k + 2 * n - n / 2) % (2 * n);
            let pk = p.point(k);
            let phase = Complex64::from_polar(1.0, -sign * pk * x.origin / eta.abs());
            buf[idx] * phase * norm
        })
        .collect();
    GridWavefunction::new(p, samples)
}

/// `(∫W dp, ∫W dx)` sampled on the `x` and `p` grids.
pub fn marginals(w: &PhaseSpaceFunction) -> (Vec<f64>, Vec<f64>) {
    let (nx, np) = (w.x.len, w.p.len);
    let position = (0..nx)
        .map(|j| w.row(j).iter().sum::<f64>() * w.p.spacing)
        .collect();
    let mut momentum = vec![0.0; np];
    for j in 0..nx {
        for (acc, v) in momentum.iter_mut().zip(w.row(j)) {
            *acc += v;
        }
    }
    momentum.iter_mut().for_each(|v| *v *= w.x.spacing);
    (position, momentum)
}

/// `(2π|η|)∬W_ψ W_φ dx dp`, which approximates `|⟨ψ|φ⟩|²`.
pub fn moyal_overlap(a: &PhaseSpaceFunction, b: &PhaseSpaceFunction) -> Result<f64> {
    a.check_compatible(b)?;
    let dot: f64 = a.values.iter().zip(&b.values).map(|(u, v)| u * v).sum();
    Ok(2.0 * PI * a.eta.abs() * dot * a.x.spacing * a.p.spacing)
}

/// `max |W_ηψ − (−1)·W_{−η}(ψ*)|` on the shared grid.
pub fn conjugation_relation_check(psi: &GridWavefunction, eta: f64) -> Result<f64> {
    let direct = wigner_transform(psi, eta)?;
    let reversed = wigner_transform(&psi.conj(), -eta)?;
    Ok(direct
        .values
        .iter()
        .zip(&reversed.values)
        .map(|(a, b)| (a + b).abs())
        .fold(0.0, f64::max))
}

/// Applies the operator with phase-space symbol `ρ` to `ψ`:
/// `ρ̂ψ(x) = ∬ e^{ip(x−y)/η} ρ(½(x+y), p) ψ(y) dy dp`.
///
/// The midpoints `½(x_j + y_l)` fall on the half-grid `x0 + s·dx/2`. `ρ` is
/// band-limited-interpolated onto it along `x`, then for each `s` the `p`
/// integral is a zero-padded length-`2N` FFT evaluated at `x − y = r·dx`.
pub fn weyl_apply(rho: &PhaseSpaceFunction, psi: &GridWavefunction, eta: f64) -> Result<GridWavefunction> {
    check_eta(eta)?;
    if rho.eta != eta {
        return Err(Error::GridMismatch(format!("symbol built at eta = {} but applied at eta = {eta}", rho.eta)));
    }
    if !rho.x.approx_eq(psi.grid()) {
        return Err(Error::GridMismatch(format!(
            "symbol x-grid {:?} differs from wavefunction grid {:?}",
            rho.x,
            psi.grid()
        )));
    }
    let expected_p = psi.grid().momentum_grid(eta)?;
    if !rho.p.approx_eq(&expected_p) {
        return Err(Error::GridMismatch(format!(
            "symbol p-grid {:?} does not match the grid {:?} paired with the wavefunction",
            rho.p, expected_p
        )));
    }

    let n = psi.len();
    let two_n = 2 * n;
    let half = interpolate_to_half_grid(rho);

    // kernel[s][r mod 2N] = dp Σ_k e^{i p_k r dx / η} ρ(X_s, p_k)
    let sign = eta.signum();
    let fft = plan(two_n, eta < 0.0);
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    let mut kernel = vec![Complex64::new(0.0, 0.0); (two_n - 1) * two_n];
    for s in 0..(two_n - 1) {
        let row = &mut kernel[s * two_n..(s + 1) * two_n];
        row[..n].copy_from_slice(&half[s * n..(s + 1) * n]);
        fft.process_with_scratch(row, &mut scratch);
    }
    // e^{i·sign·π·r·(k − N/2)/N} = (−i·sign)^r · e^{i·sign·2π·r·k/(2N)}
    let quarter = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, -sign),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, sign),
    ];

    let dx = psi.grid().spacing;
    let dp = rho.p.spacing;
    let samples = psi.samples();
    let out = (0..n)
        .map(|j| {
            let acc: Complex64 = (0..n)
                .map(|l| {
                    let s = j + l;
                    let r = j as isize - l as isize;
                    let idx = r.rem_euclid(two_n as isize) as usize;
                    let phase = quarter[r.rem_euclid(4) as usize];
                    kernel[s * two_n + idx] * phase * samples[l]
                })
                .sum();
            acc * (dx * dp)
        })
        .collect();
    GridWavefunction::new(*psi.grid(), out)
}

/// Band-limited interpolation of `ρ(·, p_k)` onto `x0 + s·dx/2`, `s = 0..2N−1`.
/// Returns complex rows `half[s·M + k]`.
fn interpolate_to_half_grid(rho: &PhaseSpaceFunction) -> Vec<Complex64> {
    let (n, m) = (rho.x.len, rho.p.len);
    let two_n = 2 * n;
    let forward = plan(n, true);
    let inverse = plan(two_n, false);
    let mut half = vec![Complex64::new(0.0, 0.0); two_n * m];
    let mut column = vec![Complex64::new(0.0, 0.0); n];
    let mut padded = vec![Complex64::new(0.0, 0.0); two_n];
    for k in 0..m {
        for (j, c) in column.iter_mut().enumerate() {
            *c = Complex64::new(rho.get(j, k), 0.0);
        }
        forward.process(&mut column);
        padded.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
        if n == 1 {
            padded[0] = column[0];
        } else {
            let nyq = n / 2;
            padded[..nyq].copy_from_slice(&column[..nyq]);
            padded[two_n - nyq + 1..].copy_from_slice(&column[nyq + 1..]);
            padded[nyq] = column[nyq] * 0.5;
            padded[two_n - nyq] = column[nyq] * 0.5;
        }
        inverse.process(&mut padded);
        for s in 0..two_n {
            half[s * m + k] = Complex64::new(padded[s].re / n as f64, 0.0);
        }
    }
    half
}
