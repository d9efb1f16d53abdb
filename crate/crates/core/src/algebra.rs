//! Truncated matrix representations of the su(1,1) generators.
//!
//! The discrete-series irrep with Bargmann index k acts on an orthonormal
//! basis |k,n⟩, n = 0, 1, 2, …  The generators satisfy
//!
//! ```text
//! [K₁, K₂] = −iK₃,   [K₂, K₃] = iK₁,   [K₃, K₁] = iK₂,
//! ```
//!
//! with ladder operators K± = K₁ ± iK₂ acting as
//!
//! ```text
//! K₊|k,n⟩ = √((n+1)(n+2k)) |k,n+1⟩,
//! K₋|k,n⟩ = √(n(n+2k−1))  |k,n−1⟩,
//! K₃|k,n⟩ = (n+k) |k,n⟩.
//! ```
//!
//! Truncating to the first `dim` basis states clips K± at the boundary, so
//! operator products are only faithful on an *interior block*: a product of
//! `f` truncated factors agrees with the untruncated operator on indices
//! `0..dim−f`.  All structure checks in this module (commutators, Casimir)
//! restrict themselves to that block.

use nalgebra::{DMatrix, DMatrixView};
use num_complex::Complex64;

use crate::error::{Result, Su11Error};

/// Half-integer irrep label k ≥ 1/2, stored as 2k so values compare exactly.
///
/// Equivalently the photon-number difference n₀ = 2k − 1 between the two
/// modes feeding the mixer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BargmannIndex {
    twice_k: u32,
}

impl BargmannIndex {
    /// Build from 2k. Rejects 2k = 0 (the discrete series starts at k = 1/2).
    pub fn new(twice_k: u32) -> Result<Self> {
        if twice_k == 0 {
            return Err(Su11Error::DimTooSmall { dim: 0, min: 1 });
        }
        Ok(Self { twice_k })
    }

    /// Build from the photon-number difference n₀ = 2k − 1.
    pub fn from_photon_difference(n0: u32) -> Self {
        Self { twice_k: n0 + 1 }
    }

    /// The doubled index 2k.
    pub fn twice_k(self) -> u32 {
        self.twice_k
    }

    /// The index k as a float.
    pub fn k(self) -> f64 {
        f64::from(self.twice_k) / 2.0
    }

    /// Photon-number difference n₀ = 2k − 1.
    pub fn photon_difference(self) -> u32 {
        self.twice_k - 1
    }
}

impl std::fmt::Display for BargmannIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.twice_k.is_multiple_of(2) {
            write!(f, "{}", self.twice_k / 2)
        } else {
            write!(f, "{}/2", self.twice_k)
        }
    }
}

/// Which generator to materialize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    K1,
    K2,
    K3,
    KPlus,
    KMinus,
}

/// Dense truncation of an operator in the |k,n⟩ basis, n = 0..dim−1.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    k: BargmannIndex,
    entries: DMatrix<Complex64>,
}

impl OperatorMatrix {
    pub(crate) fn new(k: BargmannIndex, entries: DMatrix<Complex64>) -> Self {
        debug_assert_eq!(entries.nrows(), entries.ncols());
        Self { k, entries }
    }

    pub fn k(&self) -> BargmannIndex {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<Complex64> {
        self.entries
    }

    /// View of the interior block for results built from `factors` truncated
    /// operator factors: the trailing `factors` rows/columns are dropped.
    pub fn interior(&self, factors: usize) -> DMatrixView<'_, Complex64> {
        let n = self.dim().saturating_sub(factors);
        self.entries.view((0, 0), (n, n))
    }
}

fn check_dim(dim: usize, min: usize) -> Result<()> {
    if dim < min {
        return Err(Su11Error::DimTooSmall { dim, min });
    }
    Ok(())
}

/// Raising-operator matrix elements √((n+1)(n+2k)) for n = 0..dim−2.
fn raising_elements(k: BargmannIndex, dim: usize) -> Vec<f64> {
    let kk = k.k();
    (0..dim - 1)
        .map(|n| {
            let n = n as f64;
            ((n + 1.0) * (n + 2.0 * kk)).sqrt()
        })
        .collect()
}

/// The dim×dim truncation of one generator in the |k,n⟩ basis.
///
/// K₁ and K₂ come out exactly Hermitian (they are assembled entry-by-entry
/// from the same square roots), K₃ is diagonal real, and the truncated K₊ is
/// exactly the conjugate transpose of the truncated K₋.
pub fn generator_matrix(which: Generator, k: BargmannIndex, dim: usize) -> Result<OperatorMatrix> {
    check_dim(dim, 2)?;
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    match which {
        Generator::KPlus => {
            for (n, e) in raising_elements(k, dim).into_iter().enumerate() {
                m[(n + 1, n)] = Complex64::new(e, 0.0);
            }
        }
        Generator::KMinus => {
            for (n, e) in raising_elements(k, dim).into_iter().enumerate() {
                m[(n, n + 1)] = Complex64::new(e, 0.0);
            }
        }
        Generator::K1 => {
            for (n, e) in raising_elements(k, dim).into_iter().enumerate() {
                let half = Complex64::new(e / 2.0, 0.0);
                m[(n + 1, n)] = half;
                m[(n, n + 1)] = half;
            }
        }
        Generator::K2 => {
            // (K₊ − K₋)/(2i): lower diagonal −i·e/2... times i⁻¹ → entries ∓i e/2.
            for (n, e) in raising_elements(k, dim).into_iter().enumerate() {
                m[(n + 1, n)] = Complex64::new(0.0, -e / 2.0);
                m[(n, n + 1)] = Complex64::new(0.0, e / 2.0);
            }
        }
        Generator::K3 => {
            let kk = k.k();
            for n in 0..dim {
                m[(n, n)] = Complex64::new(n as f64 + kk, 0.0);
            }
        }
    }
    Ok(OperatorMatrix::new(k, m))
}

/// K₃² − K₁² − K₂² from the truncated generators.
///
/// On the interior block (two operator factors, so indices `0..dim−2`) this
/// equals k(k−1)·I; the boundary rows carry truncation artifacts.
pub fn casimir_matrix(k: BargmannIndex, dim: usize) -> Result<OperatorMatrix> {
    check_dim(dim, 3)?;
    let k1 = generator_matrix(Generator::K1, k, dim)?.into_entries();
    let k2 = generator_matrix(Generator::K2, k, dim)?.into_entries();
    let k3 = generator_matrix(Generator::K3, k, dim)?.into_entries();
    let c = &k3 * &k3 - &k1 * &k1 - &k2 * &k2;
    Ok(OperatorMatrix::new(k, c))
}

/// Maximum interior-block defect of the three commutation relations,
/// |[K₁,K₂]+iK₃|, |[K₂,K₃]−iK₁|, |[K₃,K₁]−iK₂|, as a single max-abs entry.
pub fn commutator_residual(k: BargmannIndex, dim: usize) -> Result<f64> {
    check_dim(dim, 3)?;
    let k1 = generator_matrix(Generator::K1, k, dim)?.into_entries();
    let k2 = generator_matrix(Generator::K2, k, dim)?.into_entries();
    let k3 = generator_matrix(Generator::K3, k, dim)?.into_entries();
    let i = Complex64::i();
    let defects = [
        &k1 * &k2 - &k2 * &k1 + k3.map(|z| i * z),
        &k2 * &k3 - &k3 * &k2 - k1.map(|z| i * z),
        &k3 * &k1 - &k1 * &k3 - k2.map(|z| i * z),
    ];
    let interior = dim - 2;
    let mut worst = 0.0f64;
    for d in &defects {
        for col in 0..interior {
            for row in 0..interior {
                worst = worst.max(d[(row, col)].norm());
            }
        }
    }
    Ok(worst)
}

/// Max-abs entry of the *full* matrix (boundary included); used to
/// demonstrate that truncation defects live only on the edge.
pub fn commutator_residual_full(k: BargmannIndex, dim: usize) -> Result<f64> {
    check_dim(dim, 3)?;
    let k1 = generator_matrix(Generator::K1, k, dim)?.into_entries();
    let k2 = generator_matrix(Generator::K2, k, dim)?.into_entries();
    let k3 = generator_matrix(Generator::K3, k, dim)?.into_entries();
    let i = Complex64::i();
    let defect = &k1 * &k2 - &k2 * &k1 + k3.map(|z| i * z);
    Ok(defect.iter().map(|z| z.norm()).fold(0.0, f64::max))
}
