//! Independent oracles shared by the integration and acceptance suites.
//!
//! Everything here recomputes expected values from first principles,
//! deliberately avoiding the library code paths under test: the
//! recurrence oracle solves the full stacked linear system, the sampling
//! oracle reads Fourier coefficients off an FFT of boundary samples, and
//! the commutator oracle builds the textbook operator blocks directly.

#![allow(dead_code)] // each test target compiles its own copy

use blocktoep::cmatrix::{c64, CMatrix};
use blocktoep::MatrixLaurentPoly;
use num_complex::Complex64;
use rustfft::FftPlanner;

/// Solve the analyticity constraints "negative Fourier coefficients of
/// `Phi - K Phi*` vanish" for the unknowns `K_0 .. K_{N-1}` as one dense
/// linear system over `vec(K_s)`, using a Kronecker-product layout.
pub fn brute_force_analyticity_solve(phi: &MatrixLaurentPoly) -> Vec<CMatrix> {
    let n = phi.dim();
    let big_n = phi.analytic_degree();
    assert!(big_n >= 1);
    let nn = n * n;
    let id = CMatrix::identity(n, n);
    let mut system = CMatrix::zeros(big_n * nn, big_n * nn);
    let mut rhs = CMatrix::zeros(big_n * nn, 1);
    for t in 1..=big_n {
        for s in 0..=(big_n - t) {
            // Equation block t, unknown block s: K_s * A_{t+s}^dagger.
            let b = phi.coeff((t + s) as i64).adjoint();
            let block = b.transpose().kronecker(&id);
            system
                .view_mut(((t - 1) * nn, s * nn), (nn, nn))
                .copy_from(&block);
        }
        let c = phi.coeff(-(t as i64));
        for col in 0..n {
            for row in 0..n {
                rhs[((t - 1) * nn + col * n + row, 0)] = c[(row, col)];
            }
        }
    }
    let solution = blocktoep::cmatrix::pseudo_inverse(&system, 1e-12) * rhs;
    (0..big_n)
        .map(|s| {
            CMatrix::from_fn(n, n, |row, col| solution[(s * nn + col * n + row, 0)])
        })
        .collect()
}

/// Fourier coefficient at `index` of a matrix-valued circle function,
/// read off an FFT of `grid` uniform boundary samples, entry by entry.
pub fn fourier_coeff_by_fft<F>(f: F, n: usize, grid: usize, index: i64) -> CMatrix
where
    F: Fn(f64) -> CMatrix,
{
    let samples: Vec<CMatrix> = (0..grid)
        .map(|k| f(std::f64::consts::TAU * k as f64 / grid as f64))
        .collect();
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(grid);
    let mut out = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut buffer: Vec<Complex64> = samples.iter().map(|m| m[(i, j)]).collect();
            fft.process(&mut buffer);
            let wrapped = index.rem_euclid(grid as i64) as usize;
            out[(i, j)] = buffer[wrapped] / c64(grid as f64, 0.0);
        }
    }
    out
}

/// `K x K` compression of the shift `T_z` (ones on the subdiagonal).
pub fn shift_compression(k: usize) -> CMatrix {
    CMatrix::from_fn(k, k, |i, j| {
        if i == j + 1 {
            c64(1.0, 0.0)
        } else {
            c64(0.0, 0.0)
        }
    })
}

/// Component-major compression of the self-commutator of the symbol
/// `[[z, 1], [0, zbar]]`, assembled from the four textbook operator
/// blocks: `[[-T_z T_zbar, T_zbar - T_z], [T_z - T_zbar, T_z T_zbar]]`.
/// The products are compressions of the true products (`T_z T_zbar` is
/// the identity minus the projection onto constants).
pub fn counterexample_commutator_component_major(k: usize) -> CMatrix {
    let tz = shift_compression(k);
    let tzbar = tz.transpose();
    let mut tz_tzbar = CMatrix::identity(k, k);
    tz_tzbar[(0, 0)] = c64(0.0, 0.0);
    let upper_right = &tzbar - &tz;
    let lower_left = &tz - &tzbar;
    let mut out = CMatrix::zeros(2 * k, 2 * k);
    out.view_mut((0, 0), (k, k)).copy_from(&(-&tz_tzbar));
    out.view_mut((0, k), (k, k)).copy_from(&upper_right);
    out.view_mut((k, 0), (k, k)).copy_from(&lower_left);
    out.view_mut((k, k), (k, k)).copy_from(&tz_tzbar);
    out
}

/// Permute a degree-major block matrix (coordinate `(degree, component)`)
/// into component-major layout (coordinate `(component, degree)`).
pub fn degree_major_to_component_major(m: &CMatrix, n: usize, degrees: usize) -> CMatrix {
    let side = n * degrees;
    assert_eq!(m.nrows(), side);
    CMatrix::from_fn(side, side, |row, col| {
        let (ri, rk) = (row / degrees, row % degrees);
        let (ci, ck) = (col / degrees, col % degrees);
        m[(rk * n + ri, ck * n + ci)]
    })
}

/// Rank-k random Hermitian PSD matrix built as a sum of outer products.
pub fn random_psd_of_rank(rng: &mut impl rand::Rng, side: usize, rank: usize) -> CMatrix {
    let mut acc = CMatrix::zeros(side, side);
    for _ in 0..rank {
        let v = CMatrix::from_fn(side, 1, |_, _| {
            c64(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
        });
        acc += &v * v.adjoint();
    }
    acc
}

/// The paper-example symbols, rebuilt here independently of the library
/// test fixtures.
pub fn example_3_6() -> MatrixLaurentPoly {
    let ones = CMatrix::from_element(2, 2, c64(1.0, 0.0));
    MatrixLaurentPoly::from_coeffs(2, [(1, ones.clone()), (-1, ones)]).unwrap()
}

pub fn example_3_8() -> MatrixLaurentPoly {
    let a1 = CMatrix::identity(2, 2);
    let am1 = CMatrix::from_fn(2, 2, |i, j| {
        if (i, j) == (0, 0) {
            c64(1.0, 0.0)
        } else {
            c64(0.0, 0.0)
        }
    });
    MatrixLaurentPoly::from_coeffs(2, [(1, a1), (-1, am1)]).unwrap()
}

pub fn counterexample() -> MatrixLaurentPoly {
    let e = |r: usize, c: usize| {
        CMatrix::from_fn(2, 2, move |i, j| {
            if (i, j) == (r, c) {
                c64(1.0, 0.0)
            } else {
                c64(0.0, 0.0)
            }
        })
    };
    MatrixLaurentPoly::from_coeffs(2, [(1, e(0, 0)), (0, e(0, 1)), (-1, e(1, 1))]).unwrap()
}
