//! Extraction of the polynomial inner function whose shifted columns span
//! the kernel of the Hankel operator of the conjugated symbol.
//!
//! For an analytic normal-valued symbol of degree `N`, the kernel of
//! `H_{Phi*}` inside the Hardy space is a shift-invariant subspace
//! `Theta H^2` containing `z^N H^2`, which forces `Theta` to be a matrix
//! polynomial of degree at most `N`. The algorithm therefore works in the
//! coefficient space of vector polynomials of degree `<= N`:
//!
//! 1. one rank-revealing SVD of the exact Hankel block of `Phi*` splits
//!    the space into the row space (dimension `r`) and its orthogonal
//!    complement, the kernel,
//! 2. the kernel at degree `<= N` minus the shifted kernel at degree
//!    `<= N-1` is a wandering space of dimension exactly `n`,
//! 3. an orthonormal basis of that wandering space, written as polynomial
//!    columns and gauged so the lowest nonzero coefficient has a positive
//!    semidefinite polar factor, is `Theta`.
//!
//! `dim H(Theta) = r = deg det Theta`, and the commutator rank of the
//! original operator equals `r` as well; the certificate record checks all
//! of this plus membership of the tilde of `Theta` in the contractive set
//! of the tilde of `Phi`.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::analysis::{self, Candidate, CowenCertificate};
use crate::cmatrix::{self, CMatrix};
use crate::error::{Error, Result};
use crate::operator::{self, hankel_block, rank_of_matrix};
use crate::symbol::MatrixLaurentPoly;

/// Relative threshold for the rank-revealing decompositions here.
const NULLSPACE_REL_TOL: f64 = 1e-9;
/// Residual ceiling certified by the extraction.
pub const RESIDUAL_LIMIT: f64 = 1e-8;
/// Grid used to read off the degree of `det Theta` by winding.
const DET_GRID: usize = 2048;

/// The computed inner function together with its certified diagnostics.
#[derive(Clone, Debug)]
pub struct ThetaResult {
    /// Polynomial matrix, indices `0..=N`, unitary-valued on the circle.
    pub theta: MatrixLaurentPoly,
    /// `dim H(Theta)`, the rank of the Hankel block of `Phi*`.
    pub model_space_dim: usize,
    /// Degree of `det Theta`, measured independently by winding number.
    pub deg_det: usize,
    /// Max coefficient deviation of `Theta* Theta` from the identity.
    pub innerness_residual: f64,
    /// Max norm of the Hankel block applied to shifted columns of `Theta`.
    pub kernel_residual: f64,
}

impl Serialize for ThetaResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ThetaResult", 5)?;
        s.serialize_field("theta", &self.theta)?;
        s.serialize_field("model_space_dim", &self.model_space_dim)?;
        s.serialize_field("deg_det", &self.deg_det)?;
        s.serialize_field("innerness_residual", &self.innerness_residual)?;
        s.serialize_field("kernel_residual", &self.kernel_residual)?;
        s.end()
    }
}

/// Compute the inner function for an analytic, normal-valued, nonconstant
/// symbol. Constant symbols are rejected; see
/// [`kernel_inner_theta_allow_constant`] for the identity convention.
pub fn kernel_inner_theta(phi: &MatrixLaurentPoly) -> Result<ThetaResult> {
    if phi.lo() < 0 {
        return Err(Error::NotAnalytic(phi.lo()));
    }
    let (normal_valued, residual) = phi.is_normal_valued_default();
    if !normal_valued {
        return Err(Error::NotNormalValued { residual });
    }
    if phi.is_constant() {
        return Err(Error::ConstantSymbol);
    }
    extract_theta(phi)
}

/// [`kernel_inner_theta`] with the documented convention for constants:
/// the kernel is all of the Hardy space, `Theta = I`, model space `{0}`.
pub fn kernel_inner_theta_allow_constant(phi: &MatrixLaurentPoly) -> Result<ThetaResult> {
    if phi.lo() < 0 {
        return Err(Error::NotAnalytic(phi.lo()));
    }
    let (normal_valued, residual) = phi.is_normal_valued_default();
    if !normal_valued {
        return Err(Error::NotNormalValued { residual });
    }
    if phi.is_constant() {
        let n = phi.dim();
        return Ok(ThetaResult {
            theta: MatrixLaurentPoly::monomial_identity(n, 0),
            model_space_dim: 0,
            deg_det: 0,
            innerness_residual: 0.0,
            kernel_residual: 0.0,
        });
    }
    extract_theta(phi)
}

fn extract_theta(phi: &MatrixLaurentPoly) -> Result<ThetaResult> {
    extract_theta_inner(phi, false, true)
}

/// Verification hook: run the extraction with the kernel basis reversed
/// and without the final gauge, to witness that the construction is
/// unique up to a constant right unitary. Not part of the public contract.
#[doc(hidden)]
pub fn kernel_inner_theta_ungauged(
    phi: &MatrixLaurentPoly,
    reverse_basis: bool,
) -> Result<MatrixLaurentPoly> {
    if phi.lo() < 0 {
        return Err(Error::NotAnalytic(phi.lo()));
    }
    if phi.is_constant() {
        return Err(Error::ConstantSymbol);
    }
    Ok(extract_theta_inner(phi, reverse_basis, false)?.theta)
}

fn extract_theta_inner(
    phi: &MatrixLaurentPoly,
    reverse_basis: bool,
    apply_gauge: bool,
) -> Result<ThetaResult> {
    let n = phi.dim();
    let big_n = phi.analytic_degree();
    let star = phi.adjoint();
    let hankel = hankel_block(&star);
    debug_assert_eq!(hankel.degrees(), big_n);

    // One SVD splits coefficient space at degree <= N-1 into the row space
    // of the Hankel block (dimension r) and its kernel.
    let (rank, _row_space, mut kernel) =
        cmatrix::row_and_null_space(hankel.data(), NULLSPACE_REL_TOL);
    if reverse_basis {
        let cols: Vec<_> = (0..kernel.ncols()).rev().map(|c| kernel.column(c).into_owned()).collect();
        for (i, col) in cols.iter().enumerate() {
            kernel.set_column(i, col);
        }
    }
    let low_dim = big_n * n;
    let high_dim = (big_n + 1) * n;
    let kernel_dim = low_dim - rank;

    // Kernel at degree <= N: padded kernel vectors plus the free top block.
    let mut s_high = CMatrix::zeros(high_dim, kernel_dim + n);
    s_high
        .view_mut((0, 0), (low_dim, kernel_dim))
        .copy_from(&kernel);
    for i in 0..n {
        s_high[(low_dim + i, kernel_dim + i)] = cmatrix::c64(1.0, 0.0);
    }
    // Shifted kernel at degree <= N-1, pushed up one Fourier degree.
    let mut shifted = CMatrix::zeros(high_dim, kernel_dim);
    shifted
        .view_mut((n, 0), (low_dim, kernel_dim))
        .copy_from(&kernel);

    // Wandering space: project the high kernel onto the complement of the
    // shifted kernel and orthonormalize. The nonzero singular values are
    // exactly 1 in theory, so the rank decision is sharp.
    let overlap = shifted.adjoint() * &s_high;
    let projected = &s_high - &shifted * overlap;
    let svd = projected.clone().svd(true, false);
    let u = svd.u.expect("svd requested u");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].partial_cmp(&svd.singular_values[a]).unwrap());
    let sigma: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let wandering_dim = sigma
        .iter()
        .take_while(|&&s| s > NULLSPACE_REL_TOL * sigma[0].max(1.0))
        .count();
    if wandering_dim != n {
        // Refinement pass: a sharp spectral gap at position n still
        // identifies the wandering space; anything else is an error.
        let gap_ok = sigma.len() > n && sigma[n - 1] > 1e3 * sigma[n].max(1e-300);
        if !gap_ok {
            return Err(Error::WanderingDimensionMismatch {
                got: wandering_dim,
                expected: n,
            });
        }
    }

    // Assemble Theta: column c of the basis becomes column c of the
    // polynomial matrix, coefficient block k read from degrees k.
    let mut coeff_blocks: Vec<CMatrix> = vec![CMatrix::zeros(n, n); big_n + 1];
    for c in 0..n {
        let col = u.column(order[c]);
        for k in 0..=big_n {
            for i in 0..n {
                coeff_blocks[k][(i, c)] = col[k * n + i];
            }
        }
    }

    // Gauge: right-multiply by the constant unitary that makes the lowest
    // nonzero coefficient block positive semidefinite.
    if apply_gauge {
        let lowest = coeff_blocks
            .iter()
            .position(|b| cmatrix::max_abs(b) > 1e-9)
            .unwrap_or(0);
        let gauge = cmatrix::polar_gauge(&coeff_blocks[lowest]);
        for block in &mut coeff_blocks {
            *block *= &gauge;
        }
    }

    let theta = MatrixLaurentPoly::from_coeffs(
        n,
        coeff_blocks
            .into_iter()
            .enumerate()
            .map(|(k, b)| (k as i64, b)),
    )?;

    let innerness_residual = theta
        .adjoint()
        .multiply(&theta)?
        .sub(&MatrixLaurentPoly::monomial_identity(n, 0))?
        .max_coeff_abs();
    let kernel_residual = hankel_action_residual(&star, &theta);
    let deg_det = det_degree_by_winding(&theta);

    Ok(ThetaResult {
        theta,
        model_space_dim: rank,
        deg_det,
        innerness_residual,
        kernel_residual,
    })
}

/// Max 2-norm of the Hankel operator of `star` applied to `z^k theta_i`
/// for `k = 0..=N`, via the exact extended Hankel action.
fn hankel_action_residual(star: &MatrixLaurentPoly, theta: &MatrixLaurentPoly) -> f64 {
    let n = star.dim();
    let big_n = star.coanalytic_degree();
    let rows = big_n.max(1);
    let cols = 2 * big_n + 1;
    let mut extended = CMatrix::zeros(rows * n, cols * n);
    for j in 0..rows {
        for c in 0..cols {
            let idx = -1 - (j as i64) - (c as i64);
            if let Some(a) = star.coeff_ref(idx) {
                extended.view_mut((j * n, c * n), (n, n)).copy_from(a);
            }
        }
    }
    let mut worst = 0.0f64;
    for shift in 0..=big_n {
        for col in 0..n {
            let mut vec = CMatrix::zeros(cols * n, 1);
            for (k, block) in theta.iter() {
                let degree = k as usize + shift;
                if degree < cols {
                    for i in 0..n {
                        vec[(degree * n + i, 0)] = block[(i, col)];
                    }
                }
            }
            worst = worst.max((&extended * vec).norm());
        }
    }
    worst
}

/// Degree of `det Theta` read off as the winding number of its boundary
/// values; independent of the rank computation.
fn det_degree_by_winding(theta: &MatrixLaurentPoly) -> usize {
    let samples: Vec<_> = (0..DET_GRID)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / DET_GRID as f64;
            theta.evaluate(angle).determinant()
        })
        .collect();
    cmatrix::winding_number(&samples).max(0) as usize
}

/// Full certificate for the finite-rank criterion on one analytic symbol.
#[derive(Clone, Debug, Serialize)]
pub struct Theorem38Record {
    pub theta: ThetaResult,
    /// Exact rank of the self-commutator.
    pub commutator_rank: usize,
    /// Membership certificate of `tilde Theta` in the contractive set of
    /// `tilde Phi`.
    pub membership: CowenCertificate,
    /// Largest magnitude over the negative coefficients of `Phi* Theta`,
    /// which must vanish for the forward direction.
    pub analytic_product_residual: f64,
    /// True when every check in both directions passed.
    pub both_directions: bool,
}

/// Run both directions of the finite-rank certificate for an analytic,
/// normal-valued, hyponormal symbol.
///
/// Forward: `Phi* Theta` is analytic (checked exactly on coefficients) and
/// `tilde Theta` is an accepted member of the contractive set of
/// `tilde Phi`. Converse: the exact commutator rank equals the model-space
/// dimension, which equals the degree of `det Theta`.
pub fn theorem38_certificate(phi: &MatrixLaurentPoly) -> Result<Theorem38Record> {
    let report = analysis::decide_hyponormal(phi);
    if !report.verdict.is_hyponormal() {
        return Err(Error::PreconditionFailed(
            "symbol is not hyponormal; the finite-rank certificate does not apply".into(),
        ));
    }
    let theta = kernel_inner_theta(phi)?;

    let product = phi.adjoint().multiply(&theta.theta)?;
    let analytic_product_residual = product
        .iter()
        .filter(|&(j, _)| j < 0)
        .map(|(_, m)| cmatrix::max_abs(m))
        .fold(0.0, f64::max);
    let product_tol =
        1e-9 * (1.0 + phi.max_coeff_abs()) * (1.0 + theta.theta.max_coeff_abs());

    let membership = analysis::cowen_membership(
        &phi.tilde(),
        &Candidate::TrigPoly(theta.theta.tilde()),
    )?;

    let commutator = operator::self_commutator_exact(phi)?;
    let commutator_rank = rank_of_matrix(commutator.data(), operator::RANK_REL_TOL).rank;

    let both_directions = analytic_product_residual <= product_tol
        && membership.accepted
        && commutator_rank == theta.model_space_dim
        && theta.model_space_dim == theta.deg_det
        && theta.innerness_residual <= RESIDUAL_LIMIT
        && theta.kernel_residual <= RESIDUAL_LIMIT;

    Ok(Theorem38Record {
        theta,
        commutator_rank,
        membership,
        analytic_product_residual,
        both_directions,
    })
}
