//! Normality and hyponormality analysis for block Toeplitz operators with
//! matrix trigonometric-polynomial symbols.
//!
//! The crate decides whether the block Toeplitz operator of a matrix
//! Laurent-polynomial symbol is normal, hyponormal-but-not-normal, or not
//! hyponormal; computes self-commutator ranks exactly; produces and checks
//! certificates (constant unitaries, trigonometric polynomials and finite
//! Blaschke-Potapov products) for the contractive-completion set of a
//! symbol; and extracts the polynomial inner function whose shifted columns
//! span the kernel of the relevant Hankel operator.
//!
//! Start with the runnable examples:
//!
//! ```bash
//! cargo run -p blocktoep --example analyze
//! cargo run -p blocktoep --example membership
//! cargo run -p blocktoep --example beurling_theta
//! cargo run -p blocktoep --example conjecture_probe
//! ```
//!
//! The main entry points are [`analysis::decide_hyponormal`] for verdicts,
//! [`analysis::cowen_membership`] for certificates,
//! [`beurling::kernel_inner_theta`] for inner-function extraction and
//! [`probe::run_probe`] for randomized experiments.

pub mod analysis;
pub mod beurling;
pub mod blaschke;
pub mod cmatrix;
pub mod error;
pub mod gen;
pub mod io;
pub mod operator;
pub mod probe;
pub mod symbol;

pub use analysis::{
    conjecture_probe, cowen_membership, cowen_membership_with_grid, cowen_recurrence,
    decide_hyponormal, decide_hyponormal_with_tol, defect_rank, normality_unitary,
    shift_equivalence_check, shift_transform, unitary_normality_check, AnalysisReport,
    Candidate, CommutatorRank, ConjectureDatum, CowenCertificate, Reason, Verdict,
};
pub use beurling::{kernel_inner_theta, theorem38_certificate, Theorem38Record, ThetaResult};
pub use blaschke::{BlaschkePotapovFactor, BlaschkePotapovProduct};
pub use cmatrix::{c64, CMatrix};
pub use num_complex::Complex64;
pub use error::{Error, Result};
pub use operator::{
    hankel_block, numerical_rank, psd_min_eigenvalue, self_commutator_compression,
    self_commutator_exact, toeplitz_compression, FiniteOperatorMatrix, OperatorKind, RankReport,
};
pub use probe::{run_probe, ProbeConfig, ProbeFamily, ProbeSummary};
pub use symbol::{MatrixLaurentPoly, SymbolParts};

/// Shared fixtures for unit tests across modules.
#[cfg(test)]
pub(crate) mod testfix {
    use crate::blaschke::{BlaschkePotapovFactor, BlaschkePotapovProduct};
    use crate::cmatrix::{c64, CMatrix};
    use crate::symbol::MatrixLaurentPoly;

    /// The upper-triangular counterexample `[[z, 1], [0, zbar]]` whose
    /// self-commutator has infinite-dimensional range.
    pub fn counterexample_symbol() -> MatrixLaurentPoly {
        let e11 = CMatrix::from_fn(2, 2, |i, j| {
            if (i, j) == (0, 0) { c64(1.0, 0.0) } else { c64(0.0, 0.0) }
        });
        let e12 = CMatrix::from_fn(2, 2, |i, j| {
            if (i, j) == (0, 1) { c64(1.0, 0.0) } else { c64(0.0, 0.0) }
        });
        let e22 = CMatrix::from_fn(2, 2, |i, j| {
            if (i, j) == (1, 1) { c64(1.0, 0.0) } else { c64(0.0, 0.0) }
        });
        MatrixLaurentPoly::from_coeffs(2, [(1, e11), (0, e12), (-1, e22)]).unwrap()
    }

    /// The self-adjoint symbol with every entry `2 cos(theta)`.
    pub fn example_3_6_symbol() -> MatrixLaurentPoly {
        let ones = CMatrix::from_element(2, 2, c64(1.0, 0.0));
        MatrixLaurentPoly::from_coeffs(2, [(1, ones.clone()), (-1, ones)]).unwrap()
    }

    /// `diag(z + zbar, z)` whose self-commutator has rank one.
    pub fn example_3_8_symbol() -> MatrixLaurentPoly {
        let d = |a: f64, b: f64| {
            CMatrix::from_fn(2, 2, move |i, j| {
                if i != j {
                    c64(0.0, 0.0)
                } else if i == 0 {
                    c64(a, 0.0)
                } else {
                    c64(b, 0.0)
                }
            })
        };
        MatrixLaurentPoly::from_coeffs(2, [(1, d(1.0, 1.0)), (-1, d(1.0, 0.0))]).unwrap()
    }

    /// `diag(1, z)` as a one-factor Blaschke-Potapov product.
    pub fn bp_diag_one_z() -> BlaschkePotapovProduct {
        let proj = CMatrix::from_fn(2, 2, |i, j| {
            if (i, j) == (1, 1) { c64(1.0, 0.0) } else { c64(0.0, 0.0) }
        });
        let factor = BlaschkePotapovFactor::new(c64(0.0, 0.0), proj).unwrap();
        BlaschkePotapovProduct::new(CMatrix::identity(2, 2), vec![factor]).unwrap()
    }

    /// `diag(1, z^2)` built from two rank-one factors.
    pub fn bp_diag_one_z2() -> BlaschkePotapovProduct {
        let proj = CMatrix::from_fn(2, 2, |i, j| {
            if (i, j) == (1, 1) { c64(1.0, 0.0) } else { c64(0.0, 0.0) }
        });
        let factor = BlaschkePotapovFactor::new(c64(0.0, 0.0), proj).unwrap();
        BlaschkePotapovProduct::new(CMatrix::identity(2, 2), vec![factor.clone(), factor])
            .unwrap()
    }
}
