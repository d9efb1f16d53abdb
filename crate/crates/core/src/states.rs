//! SU(1,1) coherent states, their closed-form moments, and the
//! coherent–intelligent intersection states.
//!
//! A Perelomov coherent state of the irrep k is
//!
//! ```text
//! |k,ζ⟩ = (1−|ζ|²)^k Σₙ √(Γ(n+2k)/(n! Γ(2k))) ζⁿ |k,n⟩,   |ζ| < 1,
//! ```
//!
//! generated from |k,0⟩ by a squeeze exp(ξK₊ − ξ*K₋) with ζ = (ξ/|ξ|)tanh|ξ|.
//! Its K-moments have closed forms:
//!
//! ```text
//! (ΔK₂)² = k (1 + |ζ|⁴ − ζ² − ζ*²) / (2(1−|ζ|²)²)
//! (ΔK₃)² = 2k|ζ|² / (1−|ζ|²)²
//! ⟨K₁⟩   = 2k Re ζ / (1−|ζ|²)
//! ```
//!
//! For real ζ the variance of K₂ collapses to k/2 and the state saturates
//! the uncertainty relation ΔK₂·ΔK₃ ≥ ½|⟨K₁⟩|: it is *intelligent* for the
//! pair (K₂, K₃), i.e. an eigenstate of K₂ + iγK₃ with
//!
//! ```text
//! λ = ±ik√(γ²+1),    ζ = 1/(γ ± √(γ²+1))   (upper sign: γ > 0, lower: γ < 0).
//! ```
//!
//! Coefficients are built by the ratio recursion
//! cₙ₊₁/cₙ = ζ·√((n+2k)/(n+1)) rather than by Γ-function evaluation, which
//! would overflow long before the truncation tail becomes negligible.

use nalgebra::{DVector, Matrix3, Vector3};
use num_complex::Complex64;

use crate::algebra::BargmannIndex;
use crate::error::{Result, Su11Error};

/// Default upper bound on truncated probability mass for constructed states.
pub const DEFAULT_TAIL_TOL: f64 = 1e-12;
/// Smallest dimension `default_truncation_dim` will propose.
pub const DIM_FLOOR: usize = 32;
/// Largest dimension `default_truncation_dim` will propose.
pub const DIM_CAP: usize = 4096;
/// States whose tail bound exceeds this are refused by measurement routines.
pub const MEASUREMENT_TAIL_TOL: f64 = 1e-8;
/// Additive terms smaller than this end the tail summation.
const TAIL_TERM_CUTOFF: f64 = 1e-20;

/// A normalized coefficient vector over |k,n⟩, n = 0..dim−1, together with
/// an upper bound on the probability mass discarded by the truncation.
#[derive(Debug, Clone)]
pub struct TruncatedState {
    k: BargmannIndex,
    coefficients: DVector<Complex64>,
    tail_bound: f64,
}

impl TruncatedState {
    /// Wrap raw coefficients, normalizing them. Used by state constructors
    /// and by the evolution routines after their own leak accounting.
    pub(crate) fn new_normalized(
        k: BargmannIndex,
        mut coefficients: DVector<Complex64>,
        tail_bound: f64,
    ) -> Self {
        let norm = coefficients.norm();
        coefficients /= Complex64::new(norm, 0.0);
        Self {
            k,
            coefficients,
            tail_bound,
        }
    }

    pub fn k(&self) -> BargmannIndex {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &DVector<Complex64> {
        &self.coefficients
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    fn check_measurable(&self) -> Result<()> {
        if self.tail_bound > MEASUREMENT_TAIL_TOL {
            return Err(Su11Error::TailTooLarge {
                tail: self.tail_bound,
                tol: MEASUREMENT_TAIL_TOL,
                dim: self.dim(),
            });
        }
        Ok(())
    }
}

/// Coherent-state parameters: irrep label and amplitude ζ, optionally
/// remembering the squeeze parameter ξ that produced ζ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentParams {
    k: BargmannIndex,
    zeta: Complex64,
    xi: Option<Complex64>,
}

impl CoherentParams {
    pub fn new(k: BargmannIndex, zeta: Complex64) -> Result<Self> {
        if zeta.norm() >= 1.0 {
            return Err(Su11Error::InvalidAmplitude {
                modulus: zeta.norm(),
            });
        }
        Ok(Self { k, zeta, xi: None })
    }

    /// Build from the squeeze parameter: ζ = (ξ/|ξ|)·tanh|ξ| (ζ = 0 at ξ = 0).
    pub fn from_squeeze(k: BargmannIndex, xi: Complex64) -> Self {
        let r = xi.norm();
        let zeta = if r == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            xi / r * r.tanh()
        };
        Self {
            k,
            zeta,
            xi: Some(xi),
        }
    }

    pub fn k(&self) -> BargmannIndex {
        self.k
    }

    pub fn zeta(&self) -> Complex64 {
        self.zeta
    }

    pub fn squeeze(&self) -> Option<Complex64> {
        self.xi
    }
}

/// Eigenvalue-branch selector for the intelligent-state equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Upper,
    Lower,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Upper => 1.0,
            Branch::Lower => -1.0,
        }
    }

    fn as_i8(self) -> i8 {
        match self {
            Branch::Upper => 1,
            Branch::Lower => -1,
        }
    }
}

/// Parameters of a coherent–intelligent intersection state: an eigenstate of
/// K₂ + iγK₃ that is simultaneously a coherent state with real amplitude ζ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntelligentParams {
    gamma: f64,
    branch: Branch,
    lambda: Complex64,
    zeta: f64,
}

impl IntelligentParams {
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }
}

/// First moments ⟨K₁⟩, ⟨K₂⟩, ⟨K₃⟩ and the symmetrized second-moment matrix
/// Sᵢⱼ = ⟨(KᵢKⱼ + KⱼKᵢ)/2⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KMoments {
    mean: Vector3<f64>,
    second: Matrix3<f64>,
}

impl KMoments {
    pub fn new(mean: Vector3<f64>, second: Matrix3<f64>) -> Self {
        Self { mean, second }
    }

    pub fn mean(&self) -> Vector3<f64> {
        self.mean
    }

    pub fn second(&self) -> Matrix3<f64> {
        self.second
    }

    pub fn mean_k1(&self) -> f64 {
        self.mean[0]
    }

    pub fn mean_k2(&self) -> f64 {
        self.mean[1]
    }

    pub fn mean_k3(&self) -> f64 {
        self.mean[2]
    }

    /// Variance of Kᵢ (index 0-based: 0 ↦ K₁).
    pub fn var(&self, i: usize) -> f64 {
        self.second[(i, i)] - self.mean[i] * self.mean[i]
    }

    pub fn var_k1(&self) -> f64 {
        self.var(0)
    }

    pub fn var_k2(&self) -> f64 {
        self.var(1)
    }

    pub fn var_k3(&self) -> f64 {
        self.var(2)
    }

    /// Symmetrized covariance ½⟨KᵢKⱼ+KⱼKᵢ⟩ − ⟨Kᵢ⟩⟨Kⱼ⟩.
    pub fn covariance(&self, i: usize, j: usize) -> f64 {
        self.second[(i, j)] - self.mean[i] * self.mean[j]
    }
}

/// Closed-form coherent-state moments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormMoments {
    pub var_k2: f64,
    pub var_k3: f64,
    pub mean_k1: f64,
}

/// Unnormalized coefficient magnitudes |c̃ₙ|² (with c̃₀ = 1) summed over
/// n < dim and n ≥ dim.  The tail sum continues until terms drop below
/// `TAIL_TERM_CUTOFF`, capped at 4·dim extra terms.
fn mass_split(k: BargmannIndex, abs_zeta: f64, dim: usize) -> (f64, f64) {
    let kk = k.k();
    let ratio_sq = |n: usize| abs_zeta * abs_zeta * (n as f64 + 2.0 * kk) / (n as f64 + 1.0);
    let mut term = 1.0f64;
    let mut head = 0.0;
    for n in 0..dim {
        head += term;
        term *= ratio_sq(n);
    }
    let mut tail = 0.0;
    for n in dim..dim + 4 * dim {
        if term < TAIL_TERM_CUTOFF {
            break;
        }
        tail += term;
        term *= ratio_sq(n);
    }
    (head, tail)
}

/// Smallest dimension whose relative tail mass is below `tol`, clamped to
/// [`DIM_FLOOR`], capped at [`DIM_CAP`].
pub fn default_truncation_dim(params: &CoherentParams, tol: f64) -> Result<usize> {
    let az = params.zeta.norm();
    if az == 0.0 {
        return Ok(DIM_FLOOR);
    }
    // Grow geometrically, then refine: dims are cheap to probe.
    let mut dim = DIM_FLOOR;
    loop {
        let (head, tail) = mass_split(params.k, az, dim);
        if tail / (head + tail) < tol {
            break;
        }
        if dim >= DIM_CAP {
            return Err(Su11Error::TailTooLarge {
                tail: tail / (head + tail),
                tol,
                dim,
            });
        }
        dim = (dim * 2).min(DIM_CAP);
    }
    let mut lo = DIM_FLOOR;
    let mut hi = dim;
    while lo < hi {
        let mid = (lo + hi) / 2;
        let (head, tail) = mass_split(params.k, az, mid);
        if tail / (head + tail) < tol {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(hi)
}

/// Build the truncated coherent state |k,ζ⟩ at the requested dimension.
///
/// Fails with `TailTooLarge` when the discarded mass at `dim` exceeds
/// [`DEFAULT_TAIL_TOL`]; use [`default_truncation_dim`] to size `dim`.
pub fn coherent_state(params: &CoherentParams, dim: usize) -> Result<TruncatedState> {
    coherent_state_with_tol(params, dim, DEFAULT_TAIL_TOL)
}

/// As [`coherent_state`] with an explicit tail tolerance.
pub fn coherent_state_with_tol(
    params: &CoherentParams,
    dim: usize,
    tol: f64,
) -> Result<TruncatedState> {
    if dim < 2 {
        return Err(Su11Error::DimTooSmall { dim, min: 2 });
    }
    let kk = params.k.k();
    let zeta = params.zeta;
    let mut coeffs = DVector::<Complex64>::zeros(dim);
    let mut c = Complex64::new(1.0, 0.0);
    for n in 0..dim {
        coeffs[n] = c;
        let n = n as f64;
        c *= zeta * ((n + 2.0 * kk) / (n + 1.0)).sqrt();
    }
    let (head, tail) = mass_split(params.k, zeta.norm(), dim);
    let tail_bound = tail / (head + tail);
    if tail_bound >= tol {
        return Err(Su11Error::TailTooLarge {
            tail: tail_bound,
            tol,
            dim,
        });
    }
    Ok(TruncatedState::new_normalized(params.k, coeffs, tail_bound))
}

/// The lowest-weight state |k,0⟩ (ζ = 0 coherent state; the n₀-photon Fock
/// input of the interferometer).
pub fn ground_state(k: BargmannIndex, dim: usize) -> Result<TruncatedState> {
    let params = CoherentParams::new(k, Complex64::new(0.0, 0.0))?;
    coherent_state(&params, dim)
}

/// Apply K₊ to a coefficient vector, with one slot of headroom so nothing
/// is ever clipped: the result has length `len + 1`.
fn apply_raising(k: f64, v: &DVector<Complex64>) -> DVector<Complex64> {
    let len = v.len();
    let mut out = DVector::<Complex64>::zeros(len + 1);
    for n in 0..len {
        let nf = n as f64;
        out[n + 1] = ((nf + 1.0) * (nf + 2.0 * k)).sqrt() * v[n];
    }
    out
}

/// Apply K₋; result padded to `len + 1` to align with [`apply_raising`].
fn apply_lowering(k: f64, v: &DVector<Complex64>) -> DVector<Complex64> {
    let len = v.len();
    let mut out = DVector::<Complex64>::zeros(len + 1);
    for n in 0..len - 1 {
        let nf = n as f64;
        out[n] = ((nf + 1.0) * (nf + 2.0 * k)).sqrt() * v[n + 1];
    }
    out
}

/// Images K₁|ψ⟩, K₂|ψ⟩, K₃|ψ⟩ with one slot of headroom each.
fn generator_images(state: &TruncatedState) -> [DVector<Complex64>; 3] {
    let k = state.k.k();
    let v = &state.coefficients;
    let up = apply_raising(k, v);
    let down = apply_lowering(k, v);
    let half = Complex64::new(0.5, 0.0);
    let neg_half_i = Complex64::new(0.0, -0.5);
    let k1v = (&up + &down) * half;
    let k2v = (&up - &down) * neg_half_i;
    let mut k3v = DVector::<Complex64>::zeros(v.len() + 1);
    for n in 0..v.len() {
        k3v[n] = Complex64::new(n as f64 + k, 0.0) * v[n];
    }
    [k1v, k2v, k3v]
}

/// First and symmetrized second K-moments of a state, computed with
/// headroom so no operator product is affected by the truncation edge.
pub fn moments(state: &TruncatedState) -> Result<KMoments> {
    state.check_measurable()?;
    let images = generator_images(state);
    let mut padded = DVector::<Complex64>::zeros(state.dim() + 1);
    padded
        .rows_mut(0, state.dim())
        .copy_from(&state.coefficients);

    let mut mean = Vector3::<f64>::zeros();
    let mut second = Matrix3::<f64>::zeros();
    for i in 0..3 {
        mean[i] = padded.dotc(&images[i]).re;
        for j in 0..3 {
            // Re⟨Kᵢψ|Kⱼψ⟩ = ⟨(KᵢKⱼ+KⱼKᵢ)/2⟩ for Hermitian Kᵢ.
            second[(i, j)] = images[i].dotc(&images[j]).re;
        }
    }
    Ok(KMoments { mean, second })
}

/// The closed-form moments of |k,ζ⟩.
pub fn coherent_closed_form_moments(params: &CoherentParams) -> Result<ClosedFormMoments> {
    let z = params.zeta;
    if z.norm() >= 1.0 {
        return Err(Su11Error::InvalidAmplitude { modulus: z.norm() });
    }
    let kk = params.k.k();
    let az2 = z.norm_sqr();
    let denom = (1.0 - az2) * (1.0 - az2);
    let var_k2 = kk * (1.0 + az2 * az2 - 2.0 * (z * z).re) / (2.0 * denom);
    let var_k3 = 2.0 * kk * az2 / denom;
    let mean_k1 = 2.0 * kk * z.re / (1.0 - az2);
    Ok(ClosedFormMoments {
        var_k2,
        var_k3,
        mean_k1,
    })
}

/// Eigenvalue and amplitude of the coherent–intelligent intersection state
/// for a given γ and branch: λ = ±ik√(γ²+1), ζ = 1/(γ ± √(γ²+1)).
///
/// The upper branch needs γ > 0 and the lower γ < 0, otherwise |ζ| ≥ 1 and
/// no normalizable state exists.
pub fn coherent_intelligent_params(
    k: BargmannIndex,
    gamma: f64,
    branch: Branch,
) -> Result<IntelligentParams> {
    let valid = match branch {
        Branch::Upper => gamma > 0.0,
        Branch::Lower => gamma < 0.0,
    };
    if !valid {
        return Err(Su11Error::BranchMismatch {
            gamma,
            branch: branch.as_i8(),
        });
    }
    let root = (gamma * gamma + 1.0).sqrt();
    let zeta = 1.0 / (gamma + branch.sign() * root);
    let lambda = Complex64::new(0.0, branch.sign() * k.k() * root);
    debug_assert!(zeta.abs() < 1.0);
    Ok(IntelligentParams {
        gamma,
        branch,
        lambda,
        zeta,
    })
}

/// Residual norm ‖(K₂ + iγK₃ − λ)|ψ⟩‖ over the interior block (the last
/// entry of the image is dropped: with one off-diagonal operator factor it
/// is the only component the truncation can pollute).
pub fn intelligent_residual(state: &TruncatedState, gamma: f64, lambda: Complex64) -> Result<f64> {
    state.check_measurable()?;
    let k = state.k.k();
    let v = &state.coefficients;
    let dim = state.dim();
    let up = apply_raising(k, v);
    let down = apply_lowering(k, v);
    let mut sq = 0.0f64;
    for n in 0..dim - 1 {
        let k2v = (up[n] - down[n]) * Complex64::new(0.0, -0.5);
        let k3v = Complex64::new(n as f64 + k, 0.0) * v[n];
        let r = k2v + Complex64::new(0.0, gamma) * k3v - lambda * v[n];
        sq += r.norm_sqr();
    }
    Ok(sq.sqrt())
}

/// The spread ratio γ = ΔK₂/ΔK₃ measured from a state.
///
/// Fails with `DegenerateState` on ΔK₃ = 0 (the ζ = 0 Fock state, which is
/// the γ → ∞ limit rather than a finite-γ eigenstate).
pub fn gamma_from_state(state: &TruncatedState) -> Result<f64> {
    let m = moments(state)?;
    let var_k3 = m.var_k3();
    if var_k3 <= 1e-14 {
        return Err(Su11Error::DegenerateState);
    }
    Ok((m.var_k2() / var_k3).sqrt())
}
