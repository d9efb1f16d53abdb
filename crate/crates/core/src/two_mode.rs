//! Two-mode boson realization of su(1,1), used as an independent oracle for
//! the single-index matrix elements in [`crate::algebra`].
//!
//! On two bosonic modes with ladder operators a₁, a₂ the combinations
//!
//! ```text
//! K₁ = (a₁†a₂† + a₁a₂)/2,
//! K₂ = (a₁†a₂† − a₁a₂)/(2i),
//! K₃ = (a₁†a₁ + a₂a₂†)/2,
//! ```
//!
//! close under the su(1,1) commutation relations, and the photon-number
//! difference a₁†a₁ − a₂†a₂ commutes with all three, labeling irreps.  The
//! sector with difference n₀ carries the Bargmann index k = (n₀+1)/2 and is
//! spanned by |n+n₀⟩₁|n⟩₂ ↦ |k,n⟩.  Pulling the two-mode matrices back
//! through that embedding must reproduce the single-index truncations
//! entry for entry — a validation with no shared code path, since this
//! module only ever touches single-mode ladder matrices and Kronecker
//! products.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::algebra::{generator_matrix, BargmannIndex, Generator};
use crate::error::{Result, Su11Error};

/// The three K matrices on the truncated two-mode Fock space, together with
/// the irrep-labeling photon-number difference.
#[derive(Debug, Clone)]
pub struct TwoModeOperatorSet {
    n0: u32,
    n_max: usize,
    k1: DMatrix<Complex64>,
    k2: DMatrix<Complex64>,
    k3: DMatrix<Complex64>,
    number_difference: DMatrix<Complex64>,
}

/// Single-mode raising operator a† with entries √(n+1), truncated to `dim`.
fn ladder_up(dim: usize) -> DMatrix<Complex64> {
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for n in 0..dim - 1 {
        m[(n + 1, n)] = Complex64::new(((n + 1) as f64).sqrt(), 0.0);
    }
    m
}

fn identity(dim: usize) -> DMatrix<Complex64> {
    DMatrix::<Complex64>::identity(dim, dim)
}

impl TwoModeOperatorSet {
    pub fn n0(&self) -> u32 {
        self.n0
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn k1(&self) -> &DMatrix<Complex64> {
        &self.k1
    }

    pub fn k2(&self) -> &DMatrix<Complex64> {
        &self.k2
    }

    pub fn k3(&self) -> &DMatrix<Complex64> {
        &self.k3
    }

    /// a₁†a₁ − a₂†a₂ on the tensor space.
    pub fn number_difference(&self) -> &DMatrix<Complex64> {
        &self.number_difference
    }

    /// Mode-1 truncation dimension n_max + n₀ + 1 (so every embedded state
    /// up to n = n_max fits without clipping).
    pub fn dim1(&self) -> usize {
        self.n_max + self.n0 as usize + 1
    }

    /// Mode-2 truncation dimension n_max + 1.
    pub fn dim2(&self) -> usize {
        self.n_max + 1
    }

    /// The isometry mapping |k,n⟩ ↦ |n+n₀⟩₁|n⟩₂ as a (dim1·dim2)×(n_max+1)
    /// matrix of 0/1 entries.
    pub fn embedding_isometry(&self) -> DMatrix<Complex64> {
        let (d1, d2) = (self.dim1(), self.dim2());
        let cols = self.n_max + 1;
        let mut e = DMatrix::<Complex64>::zeros(d1 * d2, cols);
        for n in 0..cols {
            let row = (n + self.n0 as usize) * d2 + n;
            e[(row, n)] = Complex64::new(1.0, 0.0);
        }
        e
    }

    /// E†·op·E — the two-mode operator expressed in the embedded |k,n⟩ basis.
    pub fn pull_back(&self, op: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        let e = self.embedding_isometry();
        e.adjoint() * op * e
    }
}

/// Build K₁, K₂, K₃ on the tensor product of two truncated Fock spaces,
/// sized so the photon-difference-n₀ sector holds n = 0..n_max without
/// clipping mode 1.
pub fn build_two_mode_generators(n0: u32, n_max: usize) -> Result<TwoModeOperatorSet> {
    if n_max < 2 {
        return Err(Su11Error::DimTooSmall { dim: n_max, min: 2 });
    }
    let d1 = n_max + n0 as usize + 1;
    let d2 = n_max + 1;
    let up1 = ladder_up(d1);
    let up2 = ladder_up(d2);
    let create_pair = up1.kronecker(&identity(d2)) * identity(d1).kronecker(&up2);
    let destroy_pair = create_pair.adjoint();

    let k1 = (&create_pair + &destroy_pair).map(|z| z / 2.0);
    let k2 = (&create_pair - &destroy_pair).map(|z| z * Complex64::new(0.0, -0.5));
    // Number operators a†a: apply the annihilator first, so the truncated
    // matrix is exactly diag(0, 1, …) with no boundary clipping.
    let n1 = &up1 * up1.adjoint();
    let n2 = &up2 * up2.adjoint();
    let k3 = (n1.kronecker(&identity(d2)) + identity(d1).kronecker(&(&n2 + identity(d2))))
        .map(|z| z / 2.0);
    let number_difference = n1.kronecker(&identity(d2)) - identity(d1).kronecker(&n2);

    Ok(TwoModeOperatorSet {
        n0,
        n_max,
        k1,
        k2,
        k3,
        number_difference,
    })
}

/// Pull the two-mode K matrices back through the embedding and return the
/// maximum absolute deviation from the single-index truncations with
/// k = (n₀+1)/2, over the interior block (last row/column dropped).
pub fn irrep_embedding_check(n0: u32, n_max: usize) -> Result<f64> {
    let set = build_two_mode_generators(n0, n_max)?;
    let k = BargmannIndex::from_photon_difference(n0);
    let dim = n_max + 1;
    let mut worst = 0.0f64;
    for (two_mode, which) in [
        (set.k1(), Generator::K1),
        (set.k2(), Generator::K2),
        (set.k3(), Generator::K3),
    ] {
        let pulled = set.pull_back(two_mode);
        let direct = generator_matrix(which, k, dim)?;
        let interior = dim - 1;
        for col in 0..interior {
            for row in 0..interior {
                worst = worst.max((pulled[(row, col)] - direct.entries()[(row, col)]).norm());
            }
        }
    }
    Ok(worst)
}
