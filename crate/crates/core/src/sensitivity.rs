//! Phase-measurement uncertainty (Δφ)² by Gaussian error propagation and by
//! the closed forms it must reproduce.
//!
//! The estimator reads the output photon observable K₃_out; propagating its
//! spread through the φ-dependence of its mean gives
//!
//! ```text
//! (Δφ)² = Var(K₃_out) / |∂⟨K₃_out⟩/∂φ|².
//! ```
//!
//! Two independent numeric routes compute this:
//!
//! * **moment transport** ([`delta_phi_numeric`]): K₃_out is a fixed real
//!   combination of the input-side K operators, so its variance follows
//!   exactly from the input's symmetrized second moments and the 3×3
//!   transform, and the derivative is analytic;
//! * **state evolution** ([`delta_phi_evolved`]): the state is pushed
//!   through the mixer–phase–mixer unitaries and K₃ statistics are read off
//!   the output, with a central finite difference for the derivative.
//!
//! Closed forms covered: the vacuum-input formula and its φ→0 limit
//! 1/sinh²β, the intelligent-state form 1/(4 sinh²β (ΔK₂)²), the
//! coherent–intelligent intersection value 1/(2k sinh²β), the fixed-photon
//! budget form, and the vacuum budget limit 1/(N(N+2)).

use crate::algebra::BargmannIndex;
use crate::error::{Result, Su11Error};
use crate::interferometer::{k3_out_coefficients, InterferometerConfig, InterferometerEngine};
use crate::states::{moments, KMoments, TruncatedState};

/// Derivatives smaller than this are treated as a 0/0 point.
pub const EPS_DENOMINATOR: f64 = 1e-10;
/// Central-difference step for the evolved route's derivative.
pub const FD_STEP: f64 = 1e-5;
/// Small-phase pair used for the φ→0 Richardson extrapolation.
pub const SMALL_PHASE: f64 = 0.02;

/// How a sensitivity value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Numeric,
    VacuumClosed,
    IntelligentClosed,
    CoherentIntelligentClosed,
    PhotonBudget,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Numeric => "numeric",
            Method::VacuumClosed => "vacuum_closed",
            Method::IntelligentClosed => "intelligent_closed",
            Method::CoherentIntelligentClosed => "coherent_intelligent_closed",
            Method::PhotonBudget => "photon_budget",
        }
    }
}

/// (Δφ)² with its numerator/denominator breakdown.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensitivityResult {
    pub delta_phi_sq: f64,
    /// Variance of K₃_out (numeric) or the closed form's numerator.
    pub numerator: f64,
    /// Squared φ-derivative of ⟨K₃_out⟩ (numeric) or the closed form's
    /// denominator.
    pub denominator: f64,
    pub method: Method,
}

impl SensitivityResult {
    fn from_ratio(numerator: f64, denominator: f64, method: Method) -> Self {
        Self {
            delta_phi_sq: numerator / denominator,
            numerator,
            denominator,
            method,
        }
    }
}

fn check_gain(beta: f64) -> Result<f64> {
    let sh = beta.sinh();
    if sh == 0.0 {
        return Err(Su11Error::ZeroGain);
    }
    Ok(sh)
}

/// Error propagation from input moments through the 3×3 transform.
///
/// Exact in the moments: the variance is c·S·c − (c·m)² over the
/// symmetrized second-moment matrix (only the symmetric part of operator
/// products survives for a real coefficient triple), and the derivative is
/// the analytic coefficient derivative dotted with the first moments.
pub fn delta_phi_numeric(m: &KMoments, cfg: &InterferometerConfig) -> Result<SensitivityResult> {
    let k3c = k3_out_coefficients(cfg);
    let c = k3c.coefficients;
    let derivative = k3c.phi_derivative.dot(&m.mean());
    if derivative.abs() <= EPS_DENOMINATOR {
        return Err(Su11Error::IndeterminatePoint {
            derivative: derivative.abs(),
            eps: EPS_DENOMINATOR,
        });
    }
    let mean_out = c.dot(&m.mean());
    let second_out = (c.transpose() * m.second() * c)[(0, 0)];
    let numerator = second_out - mean_out * mean_out;
    if numerator <= 0.0 {
        return Err(Su11Error::NonpositiveVariance { value: numerator });
    }
    Ok(SensitivityResult::from_ratio(
        numerator,
        derivative * derivative,
        Method::Numeric,
    ))
}

/// Vacuum-input closed form [sin²φ + cosh²β(1−cosφ)²]/(sin²φ sinh²β);
/// at φ = 0 exactly, the limit 1/sinh²β.
pub fn delta_phi_vacuum(beta: f64, phi: f64) -> Result<SensitivityResult> {
    let sh = check_gain(beta)?;
    if phi == 0.0 {
        return Ok(SensitivityResult::from_ratio(
            1.0,
            sh * sh,
            Method::VacuumClosed,
        ));
    }
    let (s, c) = (phi.sin(), phi.cos());
    let ch = beta.cosh();
    let numerator = s * s + ch * ch * (1.0 - c) * (1.0 - c);
    Ok(SensitivityResult::from_ratio(
        numerator,
        s * s * sh * sh,
        Method::VacuumClosed,
    ))
}

/// Intelligent-state sensitivity 1/(4 sinh²β (ΔK₂)²) at the φ→0 working
/// point.
pub fn delta_phi_intelligent(var_k2: f64, beta: f64) -> Result<SensitivityResult> {
    let sh = check_gain(beta)?;
    if var_k2 <= 0.0 {
        return Err(Su11Error::NonpositiveVariance { value: var_k2 });
    }
    Ok(SensitivityResult::from_ratio(
        1.0,
        4.0 * sh * sh * var_k2,
        Method::IntelligentClosed,
    ))
}

/// Intersection-state sensitivity 1/(2k sinh²β), independent of ζ.
pub fn delta_phi_coherent_intelligent(k: BargmannIndex, beta: f64) -> Result<SensitivityResult> {
    let sh = check_gain(beta)?;
    Ok(SensitivityResult::from_ratio(
        1.0,
        2.0 * k.k() * sh * sh,
        Method::CoherentIntelligentClosed,
    ))
}

/// Sensitivity at a fixed photon budget N:
/// (1/2k)·[((1−ζ²)/(1+ζ²)·(N+1)/(2k))² − 1]⁻¹ for real ζ.
pub fn delta_phi_vs_photons(
    k: BargmannIndex,
    zeta: f64,
    n_total: f64,
) -> Result<SensitivityResult> {
    if zeta.abs() >= 1.0 {
        return Err(Su11Error::InvalidAmplitude {
            modulus: zeta.abs(),
        });
    }
    let z2 = zeta * zeta;
    let r = (1.0 - z2) / (1.0 + z2) * (n_total + 1.0) / (2.0 * k.k());
    let bracket = r * r - 1.0;
    if bracket <= 0.0 {
        return Err(Su11Error::InfeasibleBudget {
            n_total,
            twice_k: k.twice_k(),
            zeta,
        });
    }
    Ok(SensitivityResult::from_ratio(
        1.0,
        2.0 * k.k() * bracket,
        Method::PhotonBudget,
    ))
}

/// Vacuum-input sensitivity at photon budget N: 1/(N(N+2)).
pub fn delta_phi_vacuum_limit(n_total: f64) -> Result<SensitivityResult> {
    if n_total <= 0.0 {
        return Err(Su11Error::NonpositivePhotons { n_total });
    }
    Ok(SensitivityResult::from_ratio(
        1.0,
        n_total * (n_total + 2.0),
        Method::PhotonBudget,
    ))
}

fn evolved_k3_stats(
    engine: &InterferometerEngine,
    state: &TruncatedState,
    phi: f64,
) -> Result<(f64, f64)> {
    let out = engine.evolve(state, phi)?;
    let m = moments(&out)?;
    Ok((m.mean_k3(), m.var_k3()))
}

/// Error propagation through explicit state evolution: variance of K₃ on
/// the evolved state, derivative by central finite difference ([`FD_STEP`]).
pub fn delta_phi_evolved(
    engine: &InterferometerEngine,
    state: &TruncatedState,
    phi: f64,
) -> Result<SensitivityResult> {
    let (_, variance) = evolved_k3_stats(engine, state, phi)?;
    let (mean_plus, _) = evolved_k3_stats(engine, state, phi + FD_STEP)?;
    let (mean_minus, _) = evolved_k3_stats(engine, state, phi - FD_STEP)?;
    let derivative = (mean_plus - mean_minus) / (2.0 * FD_STEP);
    if derivative.abs() <= EPS_DENOMINATOR {
        return Err(Su11Error::IndeterminatePoint {
            derivative: derivative.abs(),
            eps: EPS_DENOMINATOR,
        });
    }
    if variance <= 0.0 {
        return Err(Su11Error::NonpositiveVariance { value: variance });
    }
    Ok(SensitivityResult::from_ratio(
        variance,
        derivative * derivative,
        Method::Numeric,
    ))
}

/// The φ→0 value of the evolved route, by Richardson extrapolation from
/// φ = [`SMALL_PHASE`] and half of it (the deviation is quadratic in φ, so
/// the h² term cancels in (4·v(h/2) − v(h))/3).
pub fn delta_phi_evolved_small_phase_limit(
    engine: &InterferometerEngine,
    state: &TruncatedState,
) -> Result<SensitivityResult> {
    let coarse = delta_phi_evolved(engine, state, SMALL_PHASE)?.delta_phi_sq;
    let fine = delta_phi_evolved(engine, state, SMALL_PHASE / 2.0)?.delta_phi_sq;
    let value = (4.0 * fine - coarse) / 3.0;
    Ok(SensitivityResult {
        delta_phi_sq: value,
        numerator: value,
        denominator: 1.0,
        method: Method::Numeric,
    })
}
