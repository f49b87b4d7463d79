//! File formats.
//!
//! - Wavefunction: header line `x0 dx N`, then `N` lines `re im`.
//! - Phase-space dump: header line `x0 dx N p0 dp M eta`, then `N` lines of
//!   `M` whitespace-separated values (row `j` is `x_j`).
//! - Covariance: JSON `{"n": 1, "sigma": [[..], ..]}`, or a CSV body with one
//!   matrix row per line.
//! - Mixture manifest: JSON `{"hbar": 1.0, "components": [{"weight": 0.5,
//!   "file": "psi0.txt"}, ..]}` with files relative to the manifest; `hbar`
//!   may be omitted.
//!
//! Floats are written with `{:e}`, the shortest representation that parses
//! back to the same `f64`.

use std::fmt::Write as _;
use std::path::Path;

use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mixture::MixedState;
use crate::symplectic::CovarianceMatrix;
use crate::wigner::{Grid1D, GridWavefunction, PhaseSpaceFunction};

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_f64(token: &str, line: usize) -> Result<f64> {
    token
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("line {line}: '{token}' is not a number")))
}

fn parse_usize(token: &str, line: usize) -> Result<usize> {
    token
        .parse::<usize>()
        .map_err(|_| Error::Parse(format!("line {line}: '{token}' is not a non-negative integer")))
}

pub fn parse_wavefunction(text: &str) -> Result<GridWavefunction> {
    let mut lines = data_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| Error::Parse("empty wavefunction file".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(Error::Parse(format!("line {hline}: expected header 'x0 dx N', got '{header}'")));
    }
    let x0 = parse_f64(fields[0], hline)?;
    let dx = parse_f64(fields[1], hline)?;
    let n = parse_usize(fields[2], hline)?;
    let grid = Grid1D::new(x0, dx, n)?;
    let mut samples = Vec::with_capacity(n);
    for (line, body) in lines {
        let parts: Vec<&str> = body.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(Error::Parse(format!("line {line}: expected 're im', got '{body}'")));
        }
        samples.push(Complex64::new(parse_f64(parts[0], line)?, parse_f64(parts[1], line)?));
    }
    if samples.len() != n {
        return Err(Error::Parse(format!("header declares {n} samples but the file has {}", samples.len())));
    }
    GridWavefunction::new(grid, samples)
}

pub fn format_wavefunction(psi: &GridWavefunction) -> String {
    let g = psi.grid();
    let mut out = format!("{:e} {:e} {}\n", g.origin, g.spacing, g.len);
    for s in psi.samples() {
        let _ = writeln!(out, "{:e} {:e}", s.re, s.im);
    }
    out
}

pub fn parse_phase_space(text: &str) -> Result<PhaseSpaceFunction> {
    let mut lines = data_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| Error::Parse("empty phase-space file".into()))?;
    let f: Vec<&str> = header.split_whitespace().collect();
    if f.len() != 7 {
        return Err(Error::Parse(format!(
            "line {hline}: expected header 'x0 dx N p0 dp M eta', got '{header}'"
        )));
    }
    let x = Grid1D::new(parse_f64(f[0], hline)?, parse_f64(f[1], hline)?, parse_usize(f[2], hline)?)?;
    let p = Grid1D::new(parse_f64(f[3], hline)?, parse_f64(f[4], hline)?, parse_usize(f[5], hline)?)?;
    let eta = parse_f64(f[6], hline)?;
    let mut values = Vec::with_capacity(x.len * p.len);
    let mut rows = 0;
    for (line, body) in lines {
        let row = body
            .split_whitespace()
            .map(|t| parse_f64(t, line))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != p.len {
            return Err(Error::Parse(format!("line {line}: expected {} values, got {}", p.len, row.len())));
        }
        values.extend(row);
        rows += 1;
    }
    if rows != x.len {
        return Err(Error::Parse(format!("header declares {} rows but the file has {rows}", x.len)));
    }
    PhaseSpaceFunction::new(x, p, values, eta)
}

pub fn format_phase_space(w: &PhaseSpaceFunction) -> String {
    let (x, p) = (w.x_grid(), w.p_grid());
    let mut out = format!(
        "{:e} {:e} {} {:e} {:e} {} {:e}\n",
        x.origin,
        x.spacing,
        x.len,
        p.origin,
        p.spacing,
        p.len,
        w.eta()
    );
    for j in 0..x.len {
        let row: Vec<String> = w.row(j).iter().map(|v| format!("{v:e}")).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CovarianceFile {
    pub n: usize,
    pub sigma: Vec<Vec<f64>>,
}

/// Parses a covariance file: JSON when the body starts with `{`, CSV otherwise.
pub fn parse_covariance(text: &str) -> Result<CovarianceMatrix> {
    let trimmed = text.trim_start();
    let rows = if trimmed.starts_with('{') {
        let file: CovarianceFile =
            serde_json::from_str(trimmed).map_err(|e| Error::Parse(format!("covariance JSON: {e}")))?;
        if file.sigma.len() != 2 * file.n {
            return Err(Error::InvalidDimension(format!(
                "n = {} requires a {}x{} matrix, got {} rows",
                file.n,
                2 * file.n,
                2 * file.n,
                file.sigma.len()
            )));
        }
        file.sigma
    } else {
        data_lines(text)
            .map(|(line, body)| {
                body.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| parse_f64(t, line))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?
    };
    if rows.is_empty() {
        return Err(Error::Parse("covariance file has no matrix rows".into()));
    }
    CovarianceMatrix::from_rows(&rows)
}

pub fn format_covariance(sigma: &CovarianceMatrix) -> String {
    serde_json::to_string(&CovarianceFile {
        n: sigma.modes(),
        sigma: sigma.rows(),
    })
    .expect("plain numbers serialize")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub weight: f64,
    pub file: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureManifest {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hbar: Option<f64>,
    pub components: Vec<ManifestEntry>,
}

pub fn parse_manifest(text: &str) -> Result<MixtureManifest> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("mixture manifest: {e}")))
}

pub fn read_wavefunction(path: &Path) -> Result<GridWavefunction> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_wavefunction(&text)
}

pub fn read_covariance(path: &Path) -> Result<CovarianceMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_covariance(&text)
}

/// Loads a manifest and every wavefunction it names. `default_hbar` applies
/// when the manifest has no `hbar` field.
pub fn read_mixture(path: &Path, default_hbar: f64) -> Result<MixedState> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let manifest = parse_manifest(&text)?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let components = manifest
        .components
        .iter()
        .map(|entry| read_wavefunction(&base.join(&entry.file)).map(|psi| (entry.weight, psi)))
        .collect::<Result<Vec<_>>>()?;
    MixedState::new(components, manifest.hbar.unwrap_or(default_hbar))
}
