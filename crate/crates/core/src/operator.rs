//! Finite matrices for Toeplitz and Hankel operators on the Hardy space.
//!
//! Coordinates are Fourier-degree-major: coordinate `(k, i)` for Fourier
//! degree `k` and vector component `i` maps to row `k * n + i`, so that
//! compressions of a block Toeplitz operator are block-Toeplitz with
//! `n x n` blocks. Hankel blocks of trigonometric-polynomial symbols are
//! exact finite-rank objects; Toeplitz compressions always compress the
//! infinite operator entrywise and are never products of compressions.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cmatrix::{self, CMatrix};
use crate::error::{Error, Result};
use crate::symbol::MatrixLaurentPoly;

/// Relative singular-value threshold for numerical ranks.
pub const RANK_REL_TOL: f64 = 1e-9;
/// Absolute floor so that the zero matrix reports rank 0.
pub const RANK_ABS_FLOOR: f64 = 1e-12;

/// What a stored finite matrix means as an operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    /// The infinite operator vanishes outside the stored coordinates.
    ExactFiniteRank { support: usize },
    /// Entrywise restriction of an infinite operator to the first
    /// `degrees` Fourier degrees.
    Compression { degrees: usize },
}

/// A finite complex matrix tagged with its operator meaning.
#[derive(Clone, Debug)]
pub struct FiniteOperatorMatrix {
    data: CMatrix,
    block_dim: usize,
    kind: OperatorKind,
}

impl FiniteOperatorMatrix {
    fn new(data: CMatrix, block_dim: usize, kind: OperatorKind) -> Self {
        let degrees = match kind {
            OperatorKind::ExactFiniteRank { support } => support,
            OperatorKind::Compression { degrees } => degrees,
        };
        debug_assert_eq!(data.nrows(), degrees * block_dim);
        debug_assert_eq!(data.ncols(), degrees * block_dim);
        FiniteOperatorMatrix {
            data,
            block_dim,
            kind,
        }
    }

    /// Raw matrix data.
    pub fn data(&self) -> &CMatrix {
        &self.data
    }

    /// Block dimension `n` of the underlying symbol.
    pub fn block_dim(&self) -> usize {
        self.block_dim
    }

    /// Operator meaning tag.
    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    /// Number of Fourier degrees covered by the stored matrix.
    pub fn degrees(&self) -> usize {
        match self.kind {
            OperatorKind::ExactFiniteRank { support } => support,
            OperatorKind::Compression { degrees } => degrees,
        }
    }

    /// Matrix side (`degrees * block_dim`).
    pub fn side(&self) -> usize {
        self.data.nrows()
    }

    /// Copy of the `n x n` block at block position `(j, k)`.
    pub fn block(&self, j: usize, k: usize) -> CMatrix {
        let n = self.block_dim;
        self.data.view((j * n, k * n), (n, n)).into_owned()
    }
}

impl Serialize for FiniteOperatorMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("FiniteOperatorMatrix", 3)?;
        s.serialize_field("matrix", &crate::io::matrix_to_rows(&self.data))?;
        s.serialize_field(
            "kind",
            match self.kind {
                OperatorKind::ExactFiniteRank { .. } => "exact",
                OperatorKind::Compression { .. } => "compression",
            },
        )?;
        s.serialize_field("block_dim", &self.block_dim)?;
        s.end()
    }
}

/// Numerical rank of a matrix together with the evidence used to decide it.
#[derive(Clone, Debug, Serialize)]
pub struct RankReport {
    pub rank: usize,
    pub singular_values: Vec<f64>,
    pub threshold_used: f64,
}

/// Exact finite Hankel block of a Laurent-polynomial symbol:
/// block `(j, k)` is `A_{-1-j-k}`, zero outside `j + k <= m - 1`.
/// Analytic symbols give the zero block padded to one degree.
pub fn hankel_block(phi: &MatrixLaurentPoly) -> FiniteOperatorMatrix {
    let support = phi.coanalytic_degree().max(1);
    hankel_block_padded(phi, support)
}

/// Hankel block on an explicitly enlarged window. Enlarging the window
/// never changes the nonzero block; tests rely on that exactness.
pub fn hankel_block_padded(phi: &MatrixLaurentPoly, support: usize) -> FiniteOperatorMatrix {
    let n = phi.dim();
    let side = support * n;
    let mut data = CMatrix::zeros(side, side);
    for (j, a) in phi.iter() {
        if j >= 0 {
            continue;
        }
        // A_j sits on the antidiagonal row + col = -1 - j.
        let s = (-1 - j) as usize;
        for row in 0..support {
            let col_wanted = s.checked_sub(row);
            if let Some(col) = col_wanted {
                if col < support {
                    data.view_mut((row * n, col * n), (n, n)).copy_from(a);
                }
            }
        }
    }
    FiniteOperatorMatrix::new(data, n, OperatorKind::ExactFiniteRank { support })
}

/// Entrywise compression of the block Toeplitz operator to the first `K`
/// Fourier degrees: block `(j, k)` is `A_{j-k}`.
pub fn toeplitz_compression(phi: &MatrixLaurentPoly, degrees: usize) -> Result<FiniteOperatorMatrix> {
    if degrees == 0 {
        return Err(Error::invalid("compression", "window must be positive"));
    }
    let n = phi.dim();
    let mut data = CMatrix::zeros(degrees * n, degrees * n);
    for (d, a) in phi.iter() {
        for j in 0..degrees {
            let k = j as i64 - d;
            if (0..degrees as i64).contains(&k) {
                data.view_mut((j * n, k as usize * n), (n, n)).copy_from(a);
            }
        }
    }
    Ok(FiniteOperatorMatrix::new(
        data,
        n,
        OperatorKind::Compression { degrees },
    ))
}

fn hankel_difference(phi: &MatrixLaurentPoly, support: usize) -> CMatrix {
    let star = phi.adjoint();
    let h_star = hankel_block_padded(&star, support);
    let h = hankel_block_padded(phi, support);
    h_star.data().adjoint() * h_star.data() - h.data().adjoint() * h.data()
}

/// Exact self-commutator `[T_Phi*, T_Phi]` for a normal-valued symbol.
///
/// With the Toeplitz term vanishing pointwise, the commutator reduces to
/// the difference of Hankel products and is an exact finite-rank Hermitian
/// matrix supported on `max(N, m)` Fourier degrees.
pub fn self_commutator_exact(phi: &MatrixLaurentPoly) -> Result<FiniteOperatorMatrix> {
    let (normal, residual) = phi.is_normal_valued_default();
    if !normal {
        return Err(Error::NotNormalValued { residual });
    }
    Ok(self_commutator_trusted(phi))
}

/// The Hankel-difference commutator without the normal-valued gate; the
/// caller vouches that the Toeplitz term vanishes.
pub(crate) fn self_commutator_trusted(phi: &MatrixLaurentPoly) -> FiniteOperatorMatrix {
    let support = phi.analytic_degree().max(phi.coanalytic_degree()).max(1);
    let data = hankel_difference(phi, support);
    FiniteOperatorMatrix::new(
        data,
        phi.dim(),
        OperatorKind::ExactFiniteRank { support },
    )
}

/// Entrywise compression of the true infinite self-commutator to `K`
/// Fourier degrees: Toeplitz compression of `Phi* Phi - Phi Phi*` plus the
/// padded Hankel difference. This is not the commutator of compressions.
pub fn self_commutator_compression(
    phi: &MatrixLaurentPoly,
    degrees: usize,
) -> Result<FiniteOperatorMatrix> {
    let support = phi.analytic_degree().max(phi.coanalytic_degree()).max(1);
    if degrees < support {
        return Err(Error::WindowTooSmall {
            need: support,
            got: degrees,
        });
    }
    let star = phi.adjoint();
    let toeplitz_symbol = star.multiply(phi)?.sub(&phi.multiply(&star)?)?;
    let mut data = toeplitz_compression(&toeplitz_symbol, degrees)?.data.clone();
    let n = phi.dim();
    let hankel = hankel_difference(phi, support);
    data.view_mut((0, 0), (support * n, support * n))
        .iter_mut()
        .zip(hankel.iter())
        .for_each(|(d, h)| *d += h);
    Ok(FiniteOperatorMatrix::new(
        data,
        n,
        OperatorKind::Compression { degrees },
    ))
}

/// Numerical rank of a raw matrix at a relative threshold.
pub fn rank_of_matrix(m: &CMatrix, rel_tol: f64) -> RankReport {
    let singular_values = cmatrix::singular_values_desc(m);
    let sigma_max = singular_values.first().copied().unwrap_or(0.0);
    let threshold_used = (rel_tol * sigma_max).max(RANK_ABS_FLOOR);
    let rank = singular_values
        .iter()
        .take_while(|&&s| s > threshold_used)
        .count();
    RankReport {
        rank,
        singular_values,
        threshold_used,
    }
}

/// Numerical rank of a tagged operator matrix.
pub fn numerical_rank(m: &FiniteOperatorMatrix, rel_tol: f64) -> RankReport {
    rank_of_matrix(&m.data, rel_tol)
}

/// Rank and minimum eigenvalue of a Hermitian operator matrix from a
/// single eigendecomposition (the singular values of a Hermitian matrix
/// are the absolute eigenvalues).
pub fn hermitian_rank_and_min(
    m: &FiniteOperatorMatrix,
    rel_tol: f64,
) -> Result<(RankReport, f64)> {
    let scale = 1.0 + cmatrix::max_abs(&m.data);
    let dev = cmatrix::hermitian_deviation(&m.data);
    if dev > 1e-10 * scale {
        return Err(Error::NotHermitian(dev));
    }
    let eigenvalues = cmatrix::hermitian_eigenvalues(&m.data);
    let min = eigenvalues.first().copied().unwrap_or(0.0);
    let mut singular_values: Vec<f64> = eigenvalues.iter().map(|e| e.abs()).collect();
    singular_values.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let sigma_max = singular_values.first().copied().unwrap_or(0.0);
    let threshold_used = (rel_tol * sigma_max).max(RANK_ABS_FLOOR);
    let rank = singular_values
        .iter()
        .take_while(|&&s| s > threshold_used)
        .count();
    Ok((
        RankReport {
            rank,
            singular_values,
            threshold_used,
        },
        min,
    ))
}

/// PSD acceptance tolerance for a given matrix scale.
pub fn psd_tolerance(m: &FiniteOperatorMatrix) -> f64 {
    1e-9 * (1.0 + cmatrix::max_abs(&m.data))
}

/// Minimum eigenvalue of a Hermitian operator matrix. The matrix is
/// symmetrized before the eigensolve; a deviation beyond the Hermitian
/// tolerance is an error rather than silently repaired.
pub fn psd_min_eigenvalue(m: &FiniteOperatorMatrix) -> Result<f64> {
    let scale = 1.0 + cmatrix::max_abs(&m.data);
    let dev = cmatrix::hermitian_deviation(&m.data);
    if dev > 1e-10 * scale {
        return Err(Error::NotHermitian(dev));
    }
    Ok(cmatrix::hermitian_eigenvalues(&m.data)
        .first()
        .copied()
        .unwrap_or(0.0))
}
