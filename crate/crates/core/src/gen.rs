//! Seeded random generators for symbols, unitaries, projections and
//! Blaschke-Potapov products. Entries are drawn uniformly from the complex
//! square `[-1, 1] x [-1, 1]`; structure (well-conditioned leading blocks,
//! families of normal symbols) is enforced on top. Seeds are the sole
//! entropy source, so every corpus is reproducible.

use num_complex::Complex64;
use rand::Rng;

use crate::blaschke::{BlaschkePotapovFactor, BlaschkePotapovProduct};
use crate::cmatrix::{c64, CMatrix};
use crate::symbol::MatrixLaurentPoly;

/// Uniform draw from the complex square.
pub fn complex_in_square<R: Rng>(rng: &mut R) -> Complex64 {
    c64(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
}

/// Dense matrix with independent uniform entries.
pub fn random_matrix<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| complex_in_square(rng))
}

/// Haar-like random unitary via the QR decomposition of a random matrix,
/// with the phase of the diagonal of `R` fixed.
pub fn random_unitary<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    let m = random_matrix(rng, n);
    let qr = m.qr();
    let q = qr.q();
    let r = qr.r();
    let mut phases = CMatrix::zeros(n, n);
    for i in 0..n {
        let d = r[(i, i)];
        phases[(i, i)] = if d.norm() > 1e-12 { d / d.norm() } else { c64(1.0, 0.0) };
    }
    q * phases
}

/// Random orthogonal projection of the given rank.
pub fn random_projection<R: Rng>(rng: &mut R, n: usize, rank: usize) -> CMatrix {
    assert!(rank <= n);
    let u = random_unitary(rng, n);
    let cols = u.columns(0, rank).into_owned();
    &cols * cols.adjoint()
}

/// Random matrix with all singular values in `[1, 2]`, so the condition
/// number stays at most 2.
pub fn well_conditioned_matrix<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    let u = random_unitary(rng, n);
    let v = random_unitary(rng, n);
    let mut sigma = CMatrix::zeros(n, n);
    for i in 0..n {
        sigma[(i, i)] = c64(rng.gen_range(1.0..=2.0), 0.0);
    }
    u * sigma * v.adjoint()
}

/// Random two-sided symbol with coanalytic degree exactly `m`, analytic
/// degree exactly `n_deg` and a well-conditioned leading coefficient.
pub fn random_symbol<R: Rng>(rng: &mut R, n: usize, m: usize, n_deg: usize) -> MatrixLaurentPoly {
    assert!(m >= 1 && n_deg >= m);
    let mut pairs: Vec<(i64, CMatrix)> = Vec::new();
    for j in -(m as i64)..=(n_deg as i64 - 1) {
        if j == 0 || rng.gen_bool(0.8) {
            pairs.push((j, random_matrix(rng, n)));
        }
    }
    // Exact end degrees: a well-conditioned leading block and a nonzero
    // deepest coanalytic block.
    pairs.retain(|&(j, _)| j != n_deg as i64 && j != -(m as i64));
    pairs.push((n_deg as i64, well_conditioned_matrix(rng, n)));
    pairs.push((-(m as i64), random_matrix(rng, n)));
    MatrixLaurentPoly::from_coeffs(n, pairs).expect("generated indices are distinct")
}

/// Random diagonal analytic symbol of degree at most `n_deg`, guaranteed
/// nonconstant (the first diagonal entry always carries degree `n_deg`).
pub fn random_diagonal_analytic<R: Rng>(
    rng: &mut R,
    n: usize,
    n_deg: usize,
) -> MatrixLaurentPoly {
    assert!(n_deg >= 1);
    let mut acc = MatrixLaurentPoly::zero(n);
    for i in 0..n {
        let top = if i == 0 { n_deg } else { rng.gen_range(0..=n_deg) };
        for j in 0..=top {
            if j < top && !rng.gen_bool(0.7) {
                continue;
            }
            let value = if j == top && i == 0 {
                // Keep the forced top coefficient away from zero.
                let z = complex_in_square(rng);
                if z.norm() < 0.2 { c64(0.7, 0.3) } else { z }
            } else {
                complex_in_square(rng)
            };
            let mut unit = CMatrix::zeros(n, n);
            unit[(i, i)] = value;
            acc = acc
                .add(&MatrixLaurentPoly::monomial(j as i64, unit))
                .expect("dimensions agree");
        }
    }
    acc
}

/// Unitary conjugation of a random diagonal analytic symbol; stays
/// analytic and normal-valued with the same commutator rank profile.
pub fn random_unitary_conjugated_diagonal<R: Rng>(
    rng: &mut R,
    n: usize,
    n_deg: usize,
) -> MatrixLaurentPoly {
    let d = random_diagonal_analytic(rng, n, n_deg);
    let v = random_unitary(rng, n);
    MatrixLaurentPoly::constant(v.clone())
        .multiply(&d)
        .and_then(|m| m.multiply(&MatrixLaurentPoly::constant(v.adjoint())))
        .expect("dimensions agree")
}

/// Symbol of the form `G + U G*` with `G` analytic, zero constant term,
/// and `U` a constant unitary commuting with the coefficients of `G`, so
/// that the symbol is normal-valued on the circle and the block Toeplitz
/// operator is normal with `U` as its certificate.
///
/// Two sub-families are mixed: a scalar unimodular `U = c I` paired with a
/// fully random `G` (any `G` works there), and a conjugated-diagonal pair
/// `G = V D(z) V†`, `U = V L V†` with diagonal `D` coefficients and a
/// diagonal unitary `L`.
pub fn random_normal_generated<R: Rng>(
    rng: &mut R,
    n: usize,
    n_deg: usize,
) -> (MatrixLaurentPoly, CMatrix) {
    assert!(n_deg >= 1);
    let analytic_indices: Vec<i64> = (1..=n_deg as i64)
        .filter(|&j| j == n_deg as i64 || rng.gen_bool(0.8))
        .collect();
    if rng.gen_bool(0.5) {
        let c = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
        let u = CMatrix::identity(n, n).map(|z| z * c);
        let pairs: Vec<(i64, CMatrix)> = analytic_indices
            .iter()
            .map(|&j| (j, random_matrix(rng, n)))
            .collect();
        let g = MatrixLaurentPoly::from_coeffs(n, pairs).expect("distinct indices");
        let phi = assemble_normal_generated(&g, &u);
        (phi, u)
    } else {
        let v = random_unitary(rng, n);
        let lambda = CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))
            } else {
                c64(0.0, 0.0)
            }
        });
        let u = &v * lambda * v.adjoint();
        let pairs: Vec<(i64, CMatrix)> = analytic_indices
            .iter()
            .map(|&j| {
                let d = CMatrix::from_fn(n, n, |i, k| {
                    if i == k { complex_in_square(rng) } else { c64(0.0, 0.0) }
                });
                (j, &v * d * v.adjoint())
            })
            .collect();
        let g = MatrixLaurentPoly::from_coeffs(n, pairs).expect("distinct indices");
        let phi = assemble_normal_generated(&g, &u);
        (phi, u)
    }
}

fn assemble_normal_generated(g: &MatrixLaurentPoly, u: &CMatrix) -> MatrixLaurentPoly {
    g.add(
        &MatrixLaurentPoly::constant(u.clone())
            .multiply(&g.adjoint())
            .expect("dimensions agree"),
    )
    .expect("dimensions agree")
}

/// Random Blaschke-Potapov product with the given number of factors and
/// zeros of modulus at most `alpha_max`.
pub fn random_blaschke<R: Rng>(
    rng: &mut R,
    n: usize,
    factors: usize,
    alpha_max: f64,
) -> BlaschkePotapovProduct {
    let v = random_unitary(rng, n);
    let fs: Vec<BlaschkePotapovFactor> = (0..factors)
        .map(|_| {
            let radius = rng.gen_range(0.0..=alpha_max.min(0.95));
            let angle = rng.gen_range(0.0..std::f64::consts::TAU);
            let alpha = Complex64::from_polar(radius, angle);
            let rank = rng.gen_range(1..=n);
            let projection = random_projection(rng, n, rank);
            BlaschkePotapovFactor::new(alpha, projection)
                .expect("generated projections satisfy the invariants")
        })
        .collect();
    BlaschkePotapovProduct::new(v, fs).expect("generated unitary is valid")
}
