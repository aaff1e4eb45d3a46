//! Dense complex matrix helpers on top of [`nalgebra`].
//!
//! All operator-level numerics in this crate run through the routines here:
//! singular values, Hermitian eigenvalues, rank-revealing decompositions,
//! minimum-norm least squares and the polar gauge. Matrices are plain
//! `DMatrix<Complex64>` values; sizes stay at desk scale (sides well below
//! 1024), so dense methods are sufficient everywhere.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix used throughout the crate.
pub type CMatrix = DMatrix<Complex64>;

/// Shorthand complex constructor.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Largest entry magnitude, zero for empty matrices.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Max-entry deviation from being Hermitian.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

/// Max-entry deviation of `m† m` from the identity.
pub fn unitary_deviation(m: &CMatrix) -> f64 {
    let n = m.ncols();
    max_abs(&(m.adjoint() * m - CMatrix::identity(n, n)))
}

/// Max-entry deviation from being an orthogonal projection (`R = R† = R²`).
pub fn projection_deviation(m: &CMatrix) -> f64 {
    hermitian_deviation(m).max(max_abs(&(m * m - m)))
}

/// Singular values sorted in descending order.
pub fn singular_values_desc(m: &CMatrix) -> Vec<f64> {
    let mut sv: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

/// Largest singular value (0 for the empty matrix).
pub fn spectral_norm(m: &CMatrix) -> f64 {
    singular_values_desc(m).first().copied().unwrap_or(0.0)
}

/// 2-norm condition number; `f64::INFINITY` when the smallest singular
/// value underflows relative to the largest.
pub fn condition_number(m: &CMatrix) -> f64 {
    let sv = singular_values_desc(m);
    match (sv.first(), sv.last()) {
        (Some(&hi), Some(&lo)) if lo > hi * f64::EPSILON && lo > 0.0 => hi / lo,
        (Some(&hi), _) if hi == 0.0 => f64::INFINITY,
        _ => f64::INFINITY,
    }
}

/// Eigenvalues of a Hermitian matrix, ascending. The input is symmetrized
/// before the solve; callers gate on [`hermitian_deviation`] first.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let sym = (m + m.adjoint()).scale(0.5);
    let mut ev: Vec<f64> = sym.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

/// Rank-revealing SVD split: returns `(rank, row_space, null_space)` where
/// `row_space` holds an orthonormal basis of `ran(m†)` as columns and
/// `null_space` an orthonormal basis of `ker(m)`. Rank counts singular
/// values above `rel_tol * sigma_max` (with a small absolute floor so the
/// zero matrix reports rank 0).
pub fn row_and_null_space(m: &CMatrix, rel_tol: f64) -> (usize, CMatrix, CMatrix) {
    let cols = m.ncols();
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("svd requested v_t");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].partial_cmp(&svd.singular_values[a]).unwrap());
    let sigma_max = order.first().map(|&i| svd.singular_values[i]).unwrap_or(0.0);
    let threshold = (rel_tol * sigma_max).max(1e-12);
    let rank = order.iter().filter(|&&i| svd.singular_values[i] > threshold).count();

    // Columns of v = rows of v_t, conjugated; reorder by descending sigma.
    let v = v_t.adjoint();
    let mut row_space = CMatrix::zeros(cols, rank);
    for (pos, &i) in order.iter().take(rank).enumerate() {
        row_space.set_column(pos, &v.column(i));
    }
    let mut null_space = CMatrix::zeros(cols, cols - rank);
    for (pos, &i) in order.iter().skip(rank).enumerate() {
        null_space.set_column(pos, &v.column(i));
    }
    // v_t only covers min(rows, cols) directions; the remaining columns of
    // a wide matrix are free and must be completed from the full basis.
    if order.len() < cols {
        let completion = complete_orthonormal(&v, order.len());
        for (pos, col) in completion.column_iter().enumerate() {
            null_space.set_column(order.len() - rank + pos, &col);
        }
    }
    (rank, row_space, null_space)
}

/// Orthonormal completion of the first `k` columns of `basis` to the full
/// space: range of the complementary projector `I - Q Q†`, whose singular
/// values are exactly 0 or 1.
fn complete_orthonormal(basis: &CMatrix, k: usize) -> CMatrix {
    let dim = basis.nrows();
    let have = basis.columns(0, k).into_owned();
    let mut projector = CMatrix::identity(dim, dim);
    projector -= &have * have.adjoint();
    let (rank, row, _null) = row_and_null_space(&projector, 0.5);
    debug_assert_eq!(rank, dim - k);
    row
}

/// Minimum-norm least-squares solution of `a · x = b` via the SVD
/// pseudoinverse with relative cutoff `rel_tol`.
pub fn min_norm_least_squares(a: &CMatrix, b: &CMatrix, rel_tol: f64) -> CMatrix {
    pseudo_inverse(a, rel_tol) * b
}

/// Moore-Penrose pseudoinverse with relative singular-value cutoff.
pub fn pseudo_inverse(a: &CMatrix, rel_tol: f64) -> CMatrix {
    let svd = a.clone().svd(true, true);
    let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let eps = (rel_tol * sigma_max).max(1e-300);
    svd.pseudo_inverse(eps).expect("svd computed with u and v_t")
}

/// Constant unitary `w` such that `m · w` is positive semidefinite:
/// `w = v u†` from the SVD `m = u s v†` (so `m w = u s u†`).
pub fn polar_gauge(m: &CMatrix) -> CMatrix {
    let svd = m.clone().svd(true, true);
    let u = svd.u.expect("svd requested u");
    let v = svd.v_t.expect("svd requested v_t").adjoint();
    v * u.adjoint()
}

/// Unitary polar factor of `m` (closest unitary in Frobenius norm).
pub fn polar_unitary_factor(m: &CMatrix) -> CMatrix {
    let svd = m.clone().svd(true, true);
    let u = svd.u.expect("svd requested u");
    let v_t = svd.v_t.expect("svd requested v_t");
    u * v_t
}

/// Winding number of a closed curve sampled at uniformly spaced points,
/// by accumulated argument increments. Samples must avoid the origin.
pub fn winding_number(samples: &[Complex64]) -> i64 {
    if samples.len() < 2 {
        return 0;
    }
    let mut total = 0.0;
    for k in 0..samples.len() {
        let a = samples[k];
        let b = samples[(k + 1) % samples.len()];
        total += (b / a).arg();
    }
    (total / std::f64::consts::TAU).round() as i64
}

/// Validate that a matrix is square with the expected side.
pub(crate) fn expect_square(m: &CMatrix, n: usize, what: &str) -> Result<()> {
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "{what} must be {n}x{n}, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(entries: &[f64]) -> CMatrix {
        CMatrix::from_fn(entries.len(), entries.len(), |i, j| {
            if i == j {
                c64(entries[i], 0.0)
            } else {
                c64(0.0, 0.0)
            }
        })
    }

    #[test]
    fn rank_split_counts_directions() {
        let m = diag(&[3.0, 1.0, 0.0]);
        let (rank, row, null) = row_and_null_space(&m, 1e-9);
        assert_eq!(rank, 2);
        assert_eq!(row.ncols(), 2);
        assert_eq!(null.ncols(), 1);
        assert!(max_abs(&(&m * &null)) < 1e-12);
    }

    #[test]
    fn rank_split_handles_wide_matrices() {
        let mut m = CMatrix::zeros(1, 3);
        m[(0, 0)] = c64(1.0, 0.0);
        let (rank, _row, null) = row_and_null_space(&m, 1e-9);
        assert_eq!(rank, 1);
        assert_eq!(null.ncols(), 2);
        assert!(max_abs(&(&m * &null)) < 1e-12);
        assert!(unitary_deviation(&null) < 1e-12);
    }

    #[test]
    fn polar_gauge_makes_psd() {
        let m = CMatrix::from_row_slice(2, 2, &[c64(0.0, 1.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(-1.0, 0.0)]);
        let w = polar_gauge(&m);
        assert!(unitary_deviation(&w) < 1e-12);
        let p = &m * &w;
        assert!(hermitian_deviation(&p) < 1e-12);
        let ev = hermitian_eigenvalues(&p);
        assert!(ev.iter().all(|&e| e > -1e-12));
    }

    #[test]
    fn winding_of_unit_circle_powers() {
        for deg in 0..4i64 {
            let samples: Vec<Complex64> = (0..512)
                .map(|k| {
                    let theta = std::f64::consts::TAU * k as f64 / 512.0;
                    Complex64::from_polar(1.0, deg as f64 * theta)
                })
                .collect();
            assert_eq!(winding_number(&samples), deg);
        }
    }

    #[test]
    fn min_eigenvalue_of_identity() {
        let m = CMatrix::identity(3, 3);
        let ev = hermitian_eigenvalues(&m);
        assert!((ev[0] - 1.0).abs() < 1e-14);
    }
}
