//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Everything that can go wrong while building operators, states, or
/// sensitivity estimates.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Su11Error {
    /// Requested truncation dimension is below the minimum needed for the
    /// operation (e.g. commutators need at least a 3×3 block).
    #[error("truncation dimension {dim} is too small (minimum {min})")]
    DimTooSmall { dim: usize, min: usize },

    /// Coherent-state amplitude outside the unit disc.
    #[error("coherent amplitude |ζ| = {modulus} is not < 1")]
    InvalidAmplitude { modulus: f64 },

    /// The coefficient tail mass cannot be brought under the tolerance
    /// within the dimension cap.
    #[error("tail mass {tail:.3e} exceeds tolerance {tol:.3e} at dim {dim}")]
    TailTooLarge { tail: f64, tol: f64, dim: usize },

    /// Eigenvalue-branch sign incompatible with the sign of γ (the |ζ| < 1
    /// condition fails on the wrong branch).
    #[error("branch {branch:+} incompatible with γ = {gamma} (needs |ζ| < 1)")]
    BranchMismatch { gamma: f64, branch: i8 },

    /// A ratio of spreads was requested for a state with ΔK₃ = 0
    /// (the ζ = 0 Fock state).
    #[error("ΔK₃ = 0: γ = ΔK₂/ΔK₃ is undefined for this state")]
    DegenerateState,

    /// State evolution pushed significant amplitude into the truncation
    /// boundary; results at this dimension are untrustworthy.
    #[error("evolution leaked {leak:.3e} probability into the truncation boundary (dim {dim})")]
    TruncationLeak { leak: f64, dim: usize },

    /// The φ-derivative of ⟨K₃_out⟩ is numerically zero: a 0/0 point that
    /// needs a closed-form limit instead of division.
    #[error("|∂⟨K₃_out⟩/∂φ| = {derivative:.3e} below {eps:.1e}; sensitivity is 0/0 here")]
    IndeterminatePoint { derivative: f64, eps: f64 },

    /// β = 0: the mixer creates no photons and no phase signal.
    #[error("β = 0 gives no gain and an undefined sensitivity")]
    ZeroGain,

    /// A variance that must be positive was not.
    #[error("variance {value} must be positive")]
    NonpositiveVariance { value: f64 },

    /// Photon budget too small to realize any β > 0 at the given (k, ζ).
    #[error("photon budget N = {n_total} cannot realize β > 0 at 2k = {twice_k}, ζ = {zeta}")]
    InfeasibleBudget {
        n_total: f64,
        twice_k: u32,
        zeta: f64,
    },

    /// Total photon number must be positive.
    #[error("total photon number {n_total} must be positive")]
    NonpositivePhotons { n_total: f64 },
}

pub type Result<T> = std::result::Result<T, Su11Error>;
