//! Sweep configuration, grid evaluation and deterministic rendering.
//!
//! A sweep is the cartesian product of five axes — twice_k, β, phase, ζ and
//! the photon budget N — walked in lexicographic order.  Every grid point
//! produces exactly one row: points where a formula is undefined (zero gain,
//! indeterminate derivative, infeasible budget, truncation overflow, …) are
//! emitted with an explanatory `status` token instead of being dropped, so
//! the row count is always the product of the axis counts.

use std::fmt;

use clap::ValueEnum;
use num_complex::Complex64;
use serde::Serialize;

use su11_core::{
    coherent_state, default_truncation_dim, delta_phi_coherent_intelligent, delta_phi_evolved,
    delta_phi_evolved_small_phase_limit, delta_phi_numeric, delta_phi_vacuum, delta_phi_vs_photons,
    evolution_dim, ground_state, moments, total_photons, BargmannIndex, CoherentParams,
    InterferometerConfig, InterferometerEngine, Su11Error, DIM_CAP,
};

/// Truncation tolerance used when building input states for numeric checks.
const NUMERIC_TAIL_TOL: f64 = 1e-14;

/// Largest real amplitude the sweep grid accepts.
const ZETA_MAX: f64 = 0.95;

/// A sweep configuration the CLI could not act on.
#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("invalid range `{0}`: expected a single number or START:STOP:COUNT")]
    InvalidRange(String),
    #[error("invalid range `{0}`: COUNT must be at least 1")]
    EmptyRange(String),
    #[error("invalid range `{0}`: COUNT = 1 requires STOP = START")]
    SingletonMismatch(String),
    #[error("invalid integer range `{0}`: the step (STOP−START)/(COUNT−1) must be an integer")]
    NonIntegerStep(String),
    #[error("twice_k values must be at least 1 (got {0})")]
    TwiceKTooSmall(i64),
    #[error("amplitude {0} outside the supported real range [0, {ZETA_MAX}]")]
    ZetaOutOfBounds(f64),
    #[error("vacuum input fixes twice_k = 1 (got {0}); use --input fock for general k")]
    VacuumNeedsHalf(u32),
    #[error("fock input has no amplitude parameter; leave --zeta at 0 (got {0})")]
    FockNeedsZeroAmplitude(f64),
    #[error("photon budgets must be positive (got {0})")]
    NonpositiveBudget(f64),
}

/// Inclusive, linearly spaced axis of the sweep grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    start: f64,
    stop: f64,
    count: usize,
}

impl Range {
    /// An axis holding a single value.
    pub fn single(value: f64) -> Self {
        Range {
            start: value,
            stop: value,
            count: 1,
        }
    }

    /// An axis of `count` evenly spaced values from `start` to `stop`
    /// inclusive.
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self, ConfigError> {
        if count == 0 {
            return Err(ConfigError::EmptyRange(format!("{start}:{stop}:{count}")));
        }
        if count == 1 && start != stop {
            return Err(ConfigError::SingletonMismatch(format!(
                "{start}:{stop}:{count}"
            )));
        }
        Ok(Range { start, stop, count })
    }

    /// Parse `"X"` as a single value or `"START:STOP:COUNT"` as a full axis.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let bad = || ConfigError::InvalidRange(text.to_string());
        let parts: Vec<&str> = text.split(':').collect();
        match parts.as_slice() {
            [one] => Ok(Range::single(one.trim().parse().map_err(|_| bad())?)),
            [start, stop, count] => {
                let start: f64 = start.trim().parse().map_err(|_| bad())?;
                let stop: f64 = stop.trim().parse().map_err(|_| bad())?;
                let count: usize = count.trim().parse().map_err(|_| bad())?;
                Range::new(start, stop, count)
            }
            _ => Err(bad()),
        }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// The axis values, endpoints exact.
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.stop
                } else {
                    self.start + step * i as f64
                }
            })
            .collect()
    }
}

/// Parse an integer axis (used for twice_k): the step must land on integers.
pub fn parse_int_range(text: &str) -> Result<Vec<u32>, ConfigError> {
    let bad = || ConfigError::InvalidRange(text.to_string());
    let parts: Vec<&str> = text.split(':').collect();
    let (start, stop, count): (i64, i64, usize) = match parts.as_slice() {
        [one] => {
            let v = one.trim().parse().map_err(|_| bad())?;
            (v, v, 1)
        }
        [start, stop, count] => (
            start.trim().parse().map_err(|_| bad())?,
            stop.trim().parse().map_err(|_| bad())?,
            count.trim().parse().map_err(|_| bad())?,
        ),
        _ => return Err(bad()),
    };
    if count == 0 {
        return Err(ConfigError::EmptyRange(text.to_string()));
    }
    if count == 1 {
        if start != stop {
            return Err(ConfigError::SingletonMismatch(text.to_string()));
        }
    } else if (stop - start) % (count as i64 - 1) != 0 {
        return Err(ConfigError::NonIntegerStep(text.to_string()));
    }
    let step = if count == 1 {
        0
    } else {
        (stop - start) / (count as i64 - 1)
    };
    (0..count as i64)
        .map(|i| {
            let v = start + step * i;
            u32::try_from(v)
                .ok()
                .filter(|&v| v >= 1)
                .ok_or(ConfigError::TwiceKTooSmall(v))
        })
        .collect()
}

/// Which axis a table is organized around.  All five axes always
/// participate in the grid; the mode selects which closed-form column the
/// rows carry (the photon-budget mode switches to the fixed-N formula).
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepMode {
    #[value(name = "phi_sweep")]
    PhiSweep,
    #[value(name = "beta_sweep")]
    BetaSweep,
    #[value(name = "k_sweep")]
    KSweep,
    #[value(name = "photon_budget")]
    PhotonBudget,
}

impl SweepMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepMode::PhiSweep => "phi_sweep",
            SweepMode::BetaSweep => "beta_sweep",
            SweepMode::KSweep => "k_sweep",
            SweepMode::PhotonBudget => "photon_budget",
        }
    }
}

/// Input-state family fed into the first mixer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputKind {
    /// Two-mode vacuum (twice_k = 1); closed column is the φ-resolved
    /// vacuum formula.
    Vacuum,
    /// Amplitude-ζ coherent state of the representation.
    Coherent,
    /// Same state family, read as the intersection of coherent and
    /// minimum-uncertainty ("intelligent") states.
    #[value(name = "coherent_intelligent")]
    CoherentIntelligent,
    /// Number state |k, 0⟩ (idler-seeded input); ζ is fixed to 0.
    Fock,
}

impl InputKind {
    pub fn as_str(self) -> &'static str {
        match self {
            InputKind::Vacuum => "vacuum",
            InputKind::Coherent => "coherent",
            InputKind::CoherentIntelligent => "coherent_intelligent",
            InputKind::Fock => "fock",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// The phase axis: either the net internal phase φ directly, or the two arm
/// phases (φ₁, φ₂) combining as φ = −(φ₁ + φ₂).
#[derive(Debug, Clone, PartialEq)]
pub enum PhaseAxis {
    Single(Range),
    Arms { phi1: Range, phi2: Range },
}

impl PhaseAxis {
    pub fn count(&self) -> usize {
        match self {
            PhaseAxis::Single(r) => r.count(),
            PhaseAxis::Arms { phi1, phi2 } => phi1.count() * phi2.count(),
        }
    }

    /// Grid points as (φ₁, φ₂, φ) with the arm phases echoed when supplied.
    fn points(&self) -> Vec<(Option<f64>, Option<f64>, f64)> {
        match self {
            PhaseAxis::Single(r) => r.values().into_iter().map(|p| (None, None, p)).collect(),
            PhaseAxis::Arms { phi1, phi2 } => {
                let mut out = Vec::with_capacity(self.count());
                for p1 in phi1.values() {
                    for p2 in phi2.values() {
                        out.push((Some(p1), Some(p2), -(p1 + p2)));
                    }
                }
                out
            }
        }
    }
}

/// Full description of one sweep invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub mode: SweepMode,
    pub input: InputKind,
    pub twice_k: Vec<u32>,
    pub beta: Range,
    pub phase: PhaseAxis,
    pub zeta: Range,
    pub n_total: Range,
    pub numeric_check: bool,
    /// Overrides the library's truncation cap when numeric checks size
    /// their Fock boxes.
    pub dim_cap: Option<usize>,
}

impl SweepConfig {
    /// Total number of rows the sweep will emit.
    pub fn row_count(&self) -> usize {
        self.twice_k.len()
            * self.beta.count()
            * self.phase.count()
            * self.zeta.count()
            * self.n_total.count()
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.twice_k.is_empty() {
            return Err(ConfigError::EmptyRange("--twice-k".into()));
        }
        for z in self.zeta.values() {
            if !(0.0..=ZETA_MAX).contains(&z) {
                return Err(ConfigError::ZetaOutOfBounds(z));
            }
            if self.input == InputKind::Fock && z != 0.0 {
                return Err(ConfigError::FockNeedsZeroAmplitude(z));
            }
        }
        if self.input == InputKind::Vacuum {
            if let Some(&bad) = self.twice_k.iter().find(|&&t| t != 1) {
                return Err(ConfigError::VacuumNeedsHalf(bad));
            }
        }
        if self.mode == SweepMode::PhotonBudget {
            if let Some(&bad) = self.n_total.values().iter().find(|&&n| n <= 0.0) {
                return Err(ConfigError::NonpositiveBudget(bad));
            }
        }
        Ok(())
    }
}

/// One evaluated grid point.  Error rows keep their echoed inputs and carry
/// the failure token in `status` with the affected value columns empty.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub mode: &'static str,
    pub input: &'static str,
    pub twice_k: u32,
    pub beta: f64,
    pub phi1: Option<f64>,
    pub phi2: Option<f64>,
    pub phi: f64,
    pub zeta: f64,
    pub n_total: Option<f64>,
    pub delta_phi_sq_closed: Option<f64>,
    pub delta_phi_sq_numeric: Option<f64>,
    pub discrepancy: Option<f64>,
    pub status: String,
}

/// Stable one-word tokens for the status column.
fn status_token(e: &Su11Error) -> &'static str {
    match e {
        Su11Error::DimTooSmall { .. } => "dim_capped",
        Su11Error::InvalidAmplitude { .. } => "invalid_amplitude",
        Su11Error::TailTooLarge { .. } => "tail_too_large",
        Su11Error::BranchMismatch { .. } => "branch_mismatch",
        Su11Error::DegenerateState => "degenerate_state",
        Su11Error::TruncationLeak { .. } => "truncation_leak",
        Su11Error::IndeterminatePoint { .. } => "indeterminate_point",
        Su11Error::ZeroGain => "zero_gain",
        Su11Error::NonpositiveVariance { .. } => "nonpositive_variance",
        Su11Error::InfeasibleBudget { .. } => "infeasible_budget",
        Su11Error::NonpositivePhotons { .. } => "nonpositive_photons",
    }
}

/// Fock-space box size for evolving a state of support `state_dim` at gain
/// β without tripping the leak guard: the worst-phase output populations
/// decay like tanh²ᵝ(β) per level, so the box must reach the level where
/// that tail drops below ~1e-13.
fn engine_dim_for(state_dim: usize, beta: f64, cap: usize) -> usize {
    let t = beta.abs().tanh();
    let tail = if t > 0.0 && t < 1.0 {
        (30.0 / (-2.0 * t.ln())).ceil() as usize
    } else {
        0
    };
    evolution_dim(state_dim, beta)
        .max(state_dim + tail + 32)
        .min(cap.max(state_dim + 8))
}

/// The truncated Fock-space cross-check for one grid point.
fn numeric_value(
    input: InputKind,
    k: BargmannIndex,
    zeta: f64,
    beta: f64,
    phi: f64,
    cap: usize,
) -> Result<f64, Su11Error> {
    match input {
        InputKind::Coherent | InputKind::CoherentIntelligent => {
            let params = CoherentParams::new(k, Complex64::new(zeta, 0.0))?;
            let dim = default_truncation_dim(&params, NUMERIC_TAIL_TOL)?;
            if dim > cap {
                return Err(Su11Error::DimTooSmall { dim: cap, min: dim });
            }
            let state = coherent_state(&params, dim)?;
            let m = moments(&state)?;
            let cfg = InterferometerConfig::new(beta, phi);
            Ok(delta_phi_numeric(&m, &cfg)?.delta_phi_sq)
        }
        InputKind::Vacuum | InputKind::Fock => {
            let state_dim = 8;
            let dim = engine_dim_for(state_dim, beta, cap);
            if dim < state_dim + 8 {
                return Err(Su11Error::DimTooSmall {
                    dim,
                    min: state_dim + 8,
                });
            }
            let engine = InterferometerEngine::new(beta, k, dim)?;
            let state = ground_state(k, state_dim)?;
            let result = if phi == 0.0 {
                delta_phi_evolved_small_phase_limit(&engine, &state)?
            } else {
                delta_phi_evolved(&engine, &state, phi)?
            };
            Ok(result.delta_phi_sq)
        }
    }
}

fn evaluate_row(
    cfg: &SweepConfig,
    twice_k: u32,
    beta: f64,
    (phi1, phi2, phi): (Option<f64>, Option<f64>, f64),
    zeta: f64,
    n: f64,
) -> SweepRow {
    let cap = cfg.dim_cap.unwrap_or(DIM_CAP);
    let k = BargmannIndex::new(twice_k).expect("validated twice_k >= 1");

    // Closed column, the photon count, and — for the budget mode — the
    // gain that realizes the budget (used for the numeric cross-check).
    let (n_total, closed, numeric_beta): (Option<f64>, Result<f64, Su11Error>, f64) =
        if cfg.mode == SweepMode::PhotonBudget {
            let closed = delta_phi_vs_photons(k, zeta, n).map(|r| r.delta_phi_sq);
            let z2 = zeta * zeta;
            let r = (1.0 - z2) / (1.0 + z2) * (n + 1.0) / (2.0 * k.k());
            let beta_star = if r > 1.0 { r.acosh() } else { f64::NAN };
            (Some(n), closed, beta_star)
        } else {
            match CoherentParams::new(k, Complex64::new(zeta, 0.0)) {
                Ok(params) => {
                    let photons = total_photons(&params, beta).ok();
                    let closed = match cfg.input {
                        InputKind::Vacuum => delta_phi_vacuum(beta, phi),
                        _ => delta_phi_coherent_intelligent(k, beta),
                    }
                    .map(|r| r.delta_phi_sq);
                    (photons, closed, beta)
                }
                Err(e) => (None, Err(e), beta),
            }
        };

    let mut status = "ok";
    let closed = match closed {
        Ok(v) => Some(v),
        Err(e) => {
            status = status_token(&e);
            None
        }
    };

    let numeric = if cfg.numeric_check && closed.is_some() {
        match numeric_value(cfg.input, k, zeta, numeric_beta, phi, cap) {
            Ok(v) => Some(v),
            Err(e) => {
                status = status_token(&e);
                None
            }
        }
    } else {
        None
    };

    let discrepancy = match (closed, numeric) {
        (Some(c), Some(n)) => Some((c - n).abs() / c),
        _ => None,
    };

    SweepRow {
        mode: cfg.mode.as_str(),
        input: cfg.input.as_str(),
        twice_k,
        beta,
        phi1,
        phi2,
        phi,
        zeta,
        n_total,
        delta_phi_sq_closed: closed,
        delta_phi_sq_numeric: numeric,
        discrepancy,
        status: status.to_string(),
    }
}

/// Evaluate the full grid in lexicographic order
/// (twice_k, β, phase, ζ, N).
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>, ConfigError> {
    cfg.validate()?;
    let mut rows = Vec::with_capacity(cfg.row_count());
    for &twice_k in &cfg.twice_k {
        for beta in cfg.beta.values() {
            for phase in cfg.phase.points() {
                for zeta in cfg.zeta.values() {
                    for n in cfg.n_total.values() {
                        rows.push(evaluate_row(cfg, twice_k, beta, phase, zeta, n));
                    }
                }
            }
        }
    }
    Ok(rows)
}

/// Floats rendered with 17 significant digits so CSV round-trips are
/// lossless.
fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

pub const CSV_HEADER: &str = "mode,input,twice_k,beta,phi1,phi2,phi,zeta,n_total,\
delta_phi_sq_closed,delta_phi_sq_numeric,discrepancy,status";

pub fn render_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 + rows.len() * 160);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let line = [
            r.mode.to_string(),
            r.input.to_string(),
            r.twice_k.to_string(),
            fmt_f64(r.beta),
            fmt_opt(r.phi1),
            fmt_opt(r.phi2),
            fmt_f64(r.phi),
            fmt_f64(r.zeta),
            fmt_opt(r.n_total),
            fmt_opt(r.delta_phi_sq_closed),
            fmt_opt(r.delta_phi_sq_numeric),
            fmt_opt(r.discrepancy),
            r.status.clone(),
        ]
        .join(",");
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn render_json(rows: &[SweepRow]) -> String {
    let mut out = serde_json::to_string_pretty(rows).expect("rows serialize");
    out.push('\n');
    out
}

pub fn render(rows: &[SweepRow], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => render_csv(rows),
        OutputFormat::Json => render_json(rows),
    }
}

impl fmt::Display for SweepMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for InputKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
