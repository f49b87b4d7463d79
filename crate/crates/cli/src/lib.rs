//! `etaphase` command implementations.
//!
//! Each `cmd_*` returns an [`Output`] holding the rendered report and the
//! process exit code: 0 for success or a quantum verdict, 1 for a classical or
//! infeasible verdict, 2 for usage or data errors.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use etaphase_core::gaussian::{EtaClassification, GaussianState};
use etaphase_core::mixture::{transition_purity_with, TransitionVerdict, TransitionVerdictKind};
use etaphase_core::symplectic::{symplectic_spectrum, williamson};
use etaphase_core::tolerance::{RECONSTRUCTION_REL, SYMPLECTIC_ABS};
use etaphase_core::wigner::{eta_fourier, marginals, moyal_overlap, wigner_transform};
use etaphase_core::{io, CovarianceMatrix, DMatrix, Error, PhaseSpaceFunction, Tolerances};
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CLASSICAL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "etaphase", version, about = "Phase-space states at a variable Planck parameter")]
pub struct Cli {
    /// Planck constant of the reference quantization.
    #[arg(long, global = true, default_value_t = 1.0, allow_negative_numbers = true)]
    pub hbar: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Relative width of the boundary band and of the pure-state test.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a Gaussian covariance at one value of eta (default: hbar).
    Classify {
        file: PathBuf,
        #[arg(allow_negative_numbers = true)]
        eta: Option<f64>,
    },
    /// Classify over an evenly spaced range of eta.
    Sweep {
        file: PathBuf,
        eta_min: f64,
        eta_max: f64,
        steps: usize,
    },
    /// Eta-Wigner transform of a wavefunction file.
    Wigner {
        file: PathBuf,
        #[arg(allow_negative_numbers = true)]
        eta: Option<f64>,
        /// Write the phase-space dump here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Williamson normal form of a covariance.
    Williamson { file: PathBuf },
    /// Purity of a mixture manifest or of a Gaussian covariance.
    Purity {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        eta: Option<f64>,
    },
    /// Purity implied at eta by a state of the given purity at hbar.
    Transition {
        purity: f64,
        #[arg(value_name = "HBAR")]
        source_hbar: f64,
        #[arg(allow_negative_numbers = true)]
        eta: f64,
        modes: u32,
    },
}

/// Validated global flags.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub hbar: f64,
    pub format: Format,
    pub tol: Tolerances,
}

impl RunConfig {
    pub fn new(hbar: f64, format: Format, tol: Option<f64>) -> Result<Self, Error> {
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(Error::InvalidParameter(format!("--hbar must be positive, got {hbar}")));
        }
        let mut tolerances = Tolerances::default();
        if let Some(t) = tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::InvalidParameter(format!("--tol must be positive, got {t}")));
            }
            tolerances.boundary_rel = t;
            tolerances.pure_rel = t;
        }
        Ok(RunConfig { hbar, format, tol: tolerances })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String, code: i32) -> Self {
        Output { stdout, stderr: String::new(), code }
    }

    fn error(e: &Error) -> Self {
        Output {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: EXIT_ERROR,
        }
    }

    fn with_warnings(mut self, warnings: &[String]) -> Self {
        for w in warnings {
            let _ = writeln!(self.stderr, "warning: {w}");
        }
        self
    }
}

pub fn run(cli: &Cli) -> Output {
    let cfg = match RunConfig::new(cli.hbar, cli.format, cli.tol) {
        Ok(c) => c,
        Err(e) => return Output::error(&e),
    };
    let result = match &cli.command {
        Command::Classify { file, eta } => cmd_classify(&cfg, file, eta.unwrap_or(cfg.hbar)),
        Command::Sweep { file, eta_min, eta_max, steps } => cmd_sweep(&cfg, file, *eta_min, *eta_max, *steps),
        Command::Wigner { file, eta, out } => cmd_wigner(&cfg, file, eta.unwrap_or(cfg.hbar), out.as_deref()),
        Command::Williamson { file } => cmd_williamson(&cfg, file),
        Command::Purity { file, eta } => cmd_purity(&cfg, file, *eta),
        Command::Transition { purity, source_hbar, eta, modes } => {
            cmd_transition(&cfg, *purity, *source_hbar, *eta, *modes)
        },
    };
    result.unwrap_or_else(|e| Output::error(&e))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports hold finite numbers");
    s.push('\n');
    s
}

/// Plain decimal, switching to exponent form for very small or large values.
fn num(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-4..1e9).contains(&a) {
        format!("{v:e}")
    } else {
        v.to_string()
    }
}

fn join(values: &[f64]) -> String {
    values.iter().map(|v| num(*v)).collect::<Vec<_>>().join(" ")
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn display_path(p: &Path) -> String {
    p.display().to_string()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassifyReport {
    pub file: String,
    pub eta: f64,
    pub verdict: String,
    pub quantum: bool,
    pub threshold: f64,
    pub margin: f64,
    pub spectrum: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub purity: Option<f64>,
}

pub fn cmd_classify(cfg: &RunConfig, file: &Path, eta: f64) -> Result<Output, Error> {
    let sigma = io::read_covariance(file)?;
    let spectrum = symplectic_spectrum(&sigma)?;
    let c = GaussianState::centered(sigma).classify_with(eta, &cfg.tol)?;
    let report = ClassifyReport {
        file: display_path(file),
        eta,
        verdict: c.verdict.to_string(),
        quantum: c.verdict.is_quantum(),
        threshold: c.threshold,
        margin: c.margin,
        spectrum: spectrum.values().to_vec(),
        purity: c.purity,
    };
    let text = match cfg.format {
        Format::Json => json(&report),
        Format::Csv => format!(
            "eta,verdict,threshold,margin,purity\n{},{},{},{},{}\n",
            report.eta,
            report.verdict,
            report.threshold,
            report.margin,
            opt(report.purity)
        ),
        Format::Human => {
            let mut s = format!("verdict    {}\n", report.verdict);
            let _ = writeln!(s, "eta        {}", report.eta);
            let _ = writeln!(s, "threshold  {}", report.threshold);
            let _ = writeln!(s, "margin     {}", num(report.margin));
            let _ = writeln!(s, "spectrum   {}", join(&report.spectrum));
            if let Some(p) = report.purity {
                let _ = writeln!(s, "purity     {p}");
            }
            s
        }
    };
    let code = if report.quantum { EXIT_OK } else { EXIT_CLASSICAL };
    Ok(Output::ok(text, code))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub file: String,
    pub threshold: f64,
    pub rows: Vec<EtaClassification>,
}

/// `steps` evenly spaced values from `eta_min` to `eta_max`, both included.
pub fn sweep_grid(eta_min: f64, eta_max: f64, steps: usize) -> Result<Vec<f64>, Error> {
    if !(eta_min > 0.0 && eta_min < eta_max && eta_max.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "sweep range needs 0 < eta_min < eta_max, got [{eta_min}, {eta_max}]"
        )));
    }
    if steps < 2 {
        return Err(Error::InvalidParameter(format!("sweep needs at least 2 steps, got {steps}")));
    }
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| if i + 1 == steps { eta_max } else { eta_min + (eta_max - eta_min) * i as f64 / last })
        .collect())
}

pub fn cmd_sweep(cfg: &RunConfig, file: &Path, eta_min: f64, eta_max: f64, steps: usize) -> Result<Output, Error> {
    let etas = sweep_grid(eta_min, eta_max, steps)?;
    let state = GaussianState::centered(io::read_covariance(file)?);
    let rows = state.sweep_with(&etas, &cfg.tol)?;
    let report = SweepReport {
        file: display_path(file),
        threshold: state.quantum_threshold()?,
        rows,
    };
    let text = match cfg.format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut s = String::from("eta,verdict,purity,margin\n");
            for r in &report.rows {
                let _ = writeln!(s, "{},{},{},{}", r.eta, r.verdict, opt(r.purity), r.margin);
            }
            s
        }
        Format::Human => {
            let mut s = format!("threshold {}\n", report.threshold);
            let _ = writeln!(s, "{:>12}  {:<13} {:>22}  {:>22}", "eta", "verdict", "purity", "margin");
            for r in &report.rows {
                let _ = writeln!(
                    s,
                    "{:>12}  {:<13} {:>22}  {:>22}",
                    r.eta,
                    r.verdict.as_str(),
                    opt(r.purity),
                    num(r.margin)
                );
            }
            s
        }
    };
    Ok(Output::ok(text, EXIT_OK))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridInfo {
    pub origin: f64,
    pub spacing: f64,
    pub len: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Moments {
    pub mean_x: f64,
    pub mean_p: f64,
    pub var_x: f64,
    pub var_p: f64,
    pub cov_xp: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WignerReport {
    pub file: String,
    pub eta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    pub x: GridInfo,
    pub p: GridInfo,
    pub norm: f64,
    pub integral: f64,
    pub min: f64,
    pub max: f64,
    pub marginal_x_residual: f64,
    pub marginal_p_residual: f64,
    pub moyal_self_purity: f64,
    pub moments: Moments,
    /// Max deviation from the Gaussian with the same first and second moments.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gaussian_deviation: Option<f64>,
    pub warnings: Vec<String>,
}

fn grid_info(g: &etaphase_core::Grid1D) -> GridInfo {
    GridInfo {
        origin: g.origin,
        spacing: g.spacing,
        len: g.len,
    }
}

fn moments(w: &PhaseSpaceFunction) -> (f64, Moments) {
    let (xg, pg) = (w.x_grid(), w.p_grid());
    let mut m = [0.0f64; 6];
    for j in 0..xg.len {
        let x = xg.point(j);
        for (k, v) in w.row(j).iter().enumerate() {
            let p = pg.point(k);
            m[0] += v;
            m[1] += x * v;
            m[2] += p * v;
            m[3] += x * x * v;
            m[4] += p * p * v;
            m[5] += x * p * v;
        }
    }
    let mass = m[0];
    let (mx, mp) = (m[1] / mass, m[2] / mass);
    let moments = Moments {
        mean_x: mx,
        mean_p: mp,
        var_x: m[3] / mass - mx * mx,
        var_p: m[4] / mass - mp * mp,
        cov_xp: m[5] / mass - mx * mp,
    };
    (mass * xg.spacing * pg.spacing, moments)
}

fn gaussian_deviation(w: &PhaseSpaceFunction, mass: f64, m: &Moments) -> Option<f64> {
    let det = m.var_x * m.var_p - m.cov_xp * m.cov_xp;
    if !(det > 0.0 && m.var_x > 0.0) {
        return None;
    }
    let (ia, ib, ic) = (m.var_p / det, -m.cov_xp / det, m.var_x / det);
    let norm = mass / (2.0 * std::f64::consts::PI * det.sqrt());
    let (xg, pg) = (w.x_grid(), w.p_grid());
    let mut worst = 0.0f64;
    for j in 0..xg.len {
        let dx = xg.point(j) - m.mean_x;
        for (k, v) in w.row(j).iter().enumerate() {
            let dp = pg.point(k) - m.mean_p;
            let g = norm * (-0.5 * (ia * dx * dx + 2.0 * ib * dx * dp + ic * dp * dp)).exp();
            worst = worst.max((v - g).abs());
        }
    }
    Some(worst)
}

pub fn cmd_wigner(cfg: &RunConfig, file: &Path, eta: f64, out: Option<&Path>) -> Result<Output, Error> {
    let psi = io::read_wavefunction(file)?;
    let w = wigner_transform(&psi, eta)?;
    let f = eta_fourier(&psi, eta)?;
    let (pos, mom) = marginals(&w);
    let sign = eta.signum();
    let residual = |a: &[f64], b: Vec<f64>| a.iter().zip(b).map(|(u, v)| (u - sign * v).abs()).fold(0.0, f64::max);
    let (mass, m) = moments(&w);
    if let Some(path) = out {
        std::fs::write(path, io::format_phase_space(&w)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    let report = WignerReport {
        file: display_path(file),
        eta,
        out: out.map(display_path),
        x: grid_info(w.x_grid()),
        p: grid_info(w.p_grid()),
        norm: psi.norm_sqr(),
        integral: w.integral(),
        min: w.min(),
        max: w.max(),
        marginal_x_residual: residual(&pos, psi.density()),
        marginal_p_residual: residual(&mom, f.density()),
        moyal_self_purity: moyal_overlap(&w, &w)?,
        moments: m,
        gaussian_deviation: gaussian_deviation(&w, mass, &m),
        warnings: w.warnings().to_vec(),
    };
    let text = match cfg.format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut s = String::from("x,p,w\n");
            for j in 0..report.x.len {
                let x = w.x_grid().point(j);
                for (k, v) in w.row(j).iter().enumerate() {
                    let _ = writeln!(s, "{},{},{}", x, w.p_grid().point(k), v);
                }
            }
            s
        }
        Format::Human => {
            let mut s = format!("eta                 {}\n", report.eta);
            let _ = writeln!(s, "x grid              {} + k*{} (N={})", report.x.origin, report.x.spacing, report.x.len);
            let _ = writeln!(s, "p grid              {} + k*{} (M={})", report.p.origin, report.p.spacing, report.p.len);
            let _ = writeln!(s, "norm                {}", report.norm);
            let _ = writeln!(s, "integral            {}", report.integral);
            let _ = writeln!(s, "min W               {}", report.min);
            let _ = writeln!(s, "max W               {}", report.max);
            let _ = writeln!(s, "x-marginal residual {:e}", report.marginal_x_residual);
            let _ = writeln!(s, "p-marginal residual {:e}", report.marginal_p_residual);
            let _ = writeln!(s, "moyal self-purity   {}", report.moyal_self_purity);
            if let Some(d) = report.gaussian_deviation {
                let _ = writeln!(s, "gaussian deviation  {d:e}");
            }
            if let Some(o) = &report.out {
                let _ = writeln!(s, "wrote               {o}");
            }
            s
        }
    };
    Ok(Output::ok(text, EXIT_OK).with_warnings(&report.warnings))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WilliamsonReport {
    pub file: String,
    pub s: Vec<Vec<f64>>,
    pub d: Vec<Vec<f64>>,
    pub spectrum: Vec<f64>,
    pub symplectic_residual: f64,
    pub reconstruction_residual: f64,
    pub pass: bool,
}

fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().cloned().collect()).collect()
}

fn write_matrix(s: &mut String, name: &str, m: &[Vec<f64>]) {
    let _ = writeln!(s, "{name}");
    for r in m {
        let _ = writeln!(s, "  {}", r.iter().map(|v| format!("{v:>12.6e}")).collect::<Vec<_>>().join(" "));
    }
}

pub fn cmd_williamson(cfg: &RunConfig, file: &Path) -> Result<Output, Error> {
    let sigma: CovarianceMatrix = io::read_covariance(file)?;
    let w = williamson(&sigma)?;
    let pass = w.symplectic_residual <= SYMPLECTIC_ABS && w.reconstruction_residual <= RECONSTRUCTION_REL;
    let report = WilliamsonReport {
        file: display_path(file),
        s: rows(&w.s),
        d: rows(&w.d),
        spectrum: w.spectrum.values().to_vec(),
        symplectic_residual: w.symplectic_residual,
        reconstruction_residual: w.reconstruction_residual,
        pass,
    };
    let text = match cfg.format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut s = String::from("quantity,value\n");
            for (j, v) in report.spectrum.iter().enumerate() {
                let _ = writeln!(s, "lambda{j},{v}");
            }
            let _ = writeln!(s, "symplectic_residual,{}", report.symplectic_residual);
            let _ = writeln!(s, "reconstruction_residual,{}", report.reconstruction_residual);
            s
        }
        Format::Human => {
            let mut s = String::new();
            write_matrix(&mut s, "S", &report.s);
            write_matrix(&mut s, "D", &report.d);
            let _ = writeln!(s, "spectrum                {}", join(&report.spectrum));
            let _ = writeln!(s, "|S^T J S - J|_max       {:e}", report.symplectic_residual);
            let _ = writeln!(s, "|S^T D S - Σ|/|Σ|       {:e}", report.reconstruction_residual);
            s
        }
    };
    Ok(Output::ok(text, if pass { EXIT_OK } else { EXIT_CLASSICAL }))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PurityReport {
    pub file: String,
    /// `mixture` or `gaussian`.
    pub kind: String,
    pub eta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hbar: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    /// `Tr ρ̂²`; absent when the Gaussian is classical at `eta`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub purity: Option<f64>,
    /// `(2π|η|)∬P_η²` for mixtures.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phase_space_purity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    pub warnings: Vec<String>,
}

fn looks_like_manifest(text: &str) -> bool {
    serde_json::from_str::<serde_json::Value>(text)
        .map(|v| v.get("components").is_some())
        .unwrap_or(false)
}

pub fn cmd_purity(cfg: &RunConfig, file: &Path, eta: Option<f64>) -> Result<Output, Error> {
    let text = std::fs::read_to_string(file).map_err(|e| Error::Io(format!("{}: {e}", file.display())))?;
    let report = if looks_like_manifest(&text) {
        let mix = io::read_mixture(file, cfg.hbar)?;
        let eta = eta.unwrap_or(mix.hbar());
        let mut warnings = mix.warnings().to_vec();
        let dist = mix.eta_wigner_distribution(eta)?;
        warnings.extend(dist.warnings().iter().cloned());
        PurityReport {
            file: display_path(file),
            kind: "mixture".into(),
            eta,
            hbar: Some(mix.hbar()),
            weights: Some(mix.weights()),
            purity: Some(mix.purity()),
            phase_space_purity: Some(moyal_overlap(&dist, &dist)?),
            verdict: None,
            warnings,
        }
    } else {
        let eta = eta.unwrap_or(cfg.hbar);
        let c = GaussianState::centered(io::parse_covariance(&text)?).classify_with(eta, &cfg.tol)?;
        PurityReport {
            file: display_path(file),
            kind: "gaussian".into(),
            eta,
            hbar: None,
            weights: None,
            purity: c.purity,
            phase_space_purity: None,
            verdict: Some(c.verdict.to_string()),
            warnings: Vec::new(),
        }
    };
    let classical = report.kind == "gaussian" && report.purity.is_none();
    let text = match cfg.format {
        Format::Json => json(&report),
        Format::Csv => format!(
            "kind,eta,purity,phase_space_purity\n{},{},{},{}\n",
            report.kind,
            report.eta,
            opt(report.purity),
            opt(report.phase_space_purity)
        ),
        Format::Human => {
            let mut s = format!("kind                {}\n", report.kind);
            let _ = writeln!(s, "eta                 {}", report.eta);
            if let Some(h) = report.hbar {
                let _ = writeln!(s, "hbar                {h}");
            }
            if let Some(w) = &report.weights {
                let _ = writeln!(s, "weights             {}", join(w));
            }
            if let Some(v) = &report.verdict {
                let _ = writeln!(s, "verdict             {v}");
            }
            match report.purity {
                Some(p) => {
                    let _ = writeln!(s, "purity              {p}");
                }
                None => s.push_str("purity              undefined (not a quantum state)\n"),
            }
            if let Some(p) = report.phase_space_purity {
                let _ = writeln!(s, "phase-space purity  {p}");
            }
            s
        }
    };
    let code = if classical { EXIT_CLASSICAL } else { EXIT_OK };
    Ok(Output::ok(text, code).with_warnings(&report.warnings))
}

pub fn cmd_transition(cfg: &RunConfig, purity: f64, hbar: f64, eta: f64, modes: u32) -> Result<Output, Error> {
    let v: TransitionVerdict = transition_purity_with(purity, hbar, eta, modes, &cfg.tol)?;
    let text = match cfg.format {
        Format::Json => json(&v),
        Format::Csv => format!(
            "source_purity,hbar,eta,modes,implied_purity,verdict\n{},{},{},{},{},{}\n",
            v.source_purity, v.hbar, v.eta, v.modes, v.implied_purity, v.verdict
        ),
        Format::Human => format!("implied purity {}, {}\n", v.implied_purity, v.verdict),
    };
    let code = if v.verdict == TransitionVerdictKind::Infeasible { EXIT_CLASSICAL } else { EXIT_OK };
    Ok(Output::ok(text, code))
}
