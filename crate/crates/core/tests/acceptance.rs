//! Acceptance suite: one test per criterion, each printing a pass line
//! with its measured runtime. Expected values come from the worked
//! examples and from the independent oracles in `common`; every tolerance
//! is pinned here, not configurable.

mod common;

use std::time::{Duration, Instant};

use blocktoep::analysis::{self, Candidate, CommutatorRank, Verdict};
use blocktoep::cmatrix::{self, c64, CMatrix};
use blocktoep::gen;
use blocktoep::operator::RANK_REL_TOL;
use blocktoep::{
    decide_hyponormal, numerical_rank, psd_min_eigenvalue, self_commutator_compression,
    BlaschkePotapovFactor, BlaschkePotapovProduct, MatrixLaurentPoly,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn finish(name: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    println!("PASS {name}: {elapsed:?} (budget {budget:?})");
    assert!(
        elapsed <= budget,
        "{name} exceeded its runtime budget: {elapsed:?} > {budget:?}"
    );
}

fn bp_diag_one_z() -> BlaschkePotapovProduct {
    let proj = CMatrix::from_fn(2, 2, |i, j| {
        if (i, j) == (1, 1) {
            c64(1.0, 0.0)
        } else {
            c64(0.0, 0.0)
        }
    });
    let factor = BlaschkePotapovFactor::new(c64(0.0, 0.0), proj).unwrap();
    BlaschkePotapovProduct::new(CMatrix::identity(2, 2), vec![factor]).unwrap()
}

/// Criterion 1: the all-entries `2 cos(theta)` symbol is normal, with an
/// exactly vanishing commutator and an accepted constant unitary.
#[test]
fn criterion_1_normal_example_reproduction() {
    let started = Instant::now();
    let phi = common::example_3_6();
    let report = decide_hyponormal(&phi);
    assert_eq!(report.verdict, Verdict::Normal);
    assert_eq!(report.rank.exact(), Some(0));
    let commutator = blocktoep::self_commutator_exact(&phi).unwrap();
    assert!(cmatrix::max_abs(commutator.data()) <= 1e-12);

    let (u, certificate) = analysis::normality_unitary(&phi).unwrap();
    assert!(certificate.accepted);
    assert!(cmatrix::unitary_deviation(&u) <= 1e-8);
    // The identity is one valid answer and the gauge recovers it here.
    assert!(cmatrix::max_abs(&(&u - CMatrix::identity(2, 2))) <= 1e-8);
    finish("criterion 1", started, Duration::from_secs(1));
}

/// Criterion 2: `diag(z + zbar, z)` is hyponormal, not normal, rank one,
/// and `diag(1, z)` certifies the rank-equals-degree match.
#[test]
fn criterion_2_rank_one_example_reproduction() {
    let started = Instant::now();
    let phi = common::example_3_8();
    let report = decide_hyponormal(&phi);
    assert_eq!(report.verdict, Verdict::HyponormalNotNormal);
    assert_eq!(report.rank.exact(), Some(1));

    let datum = analysis::conjecture_probe(&phi, &bp_diag_one_z()).unwrap();
    assert_eq!(datum.rank, 1);
    assert_eq!(datum.deg_det, 1);
    assert!(datum.matched);
    finish("criterion 2", started, Duration::from_secs(1));
}

/// Criterion 3: the upper-triangular counterexample shows strictly
/// growing compression ranks (each at least `K - 2`) with a negative
/// eigenvalue at every window.
#[test]
fn criterion_3_infinite_rank_witness() {
    let started = Instant::now();
    let phi = common::counterexample();
    let mut previous = 0usize;
    for window in [8usize, 16, 32] {
        let comp = self_commutator_compression(&phi, window).unwrap();
        let rank = numerical_rank(&comp, 1e-9).rank;
        let min = psd_min_eigenvalue(&comp).unwrap();
        assert!(rank > previous, "rank {rank} did not grow at K={window}");
        assert!(rank >= window - 2, "rank {rank} < K-2 at K={window}");
        assert!(min < 0.0, "no negative eigenvalue at K={window}");
        previous = rank;
    }
    let report = decide_hyponormal(&phi);
    assert_eq!(report.verdict, Verdict::NotHyponormal);
    assert!(matches!(report.rank, CommutatorRank::Unbounded(_)));
    finish("criterion 3", started, Duration::from_secs(5));
}

/// Criterion 4: on 100 seeded random symbols the triangular recurrence
/// matches the brute-force linear-system oracle within 1e-8, and the
/// prescribed trailing coefficients ignore the low analytic coefficients.
#[test]
fn criterion_4_recurrence_suite() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x2101);
    for trial in 0..100 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=5);
        let n_deg = rng.gen_range(m..=5);
        let phi = gen::random_symbol(&mut rng, n, m, n_deg);

        let ks = analysis::cowen_recurrence(&phi).unwrap();
        let oracle = common::brute_force_analyticity_solve(&phi);
        assert_eq!(ks.len(), oracle.len());
        for (j, (k, o)) in ks.iter().zip(&oracle).enumerate() {
            let dev = cmatrix::max_abs(&(k - o));
            assert!(dev <= 1e-8, "trial {trial}, K_{j} deviates by {dev}");
        }

        // Invariance: randomize A_0 .. A_{N-m}, keep A_N and the
        // coanalytic part, and compare the prescribed tail.
        let replaced: Vec<(i64, CMatrix)> = phi
            .iter()
            .filter(|&(j, _)| j < 0 || j > (n_deg - m) as i64)
            .map(|(j, a)| (j, a.clone()))
            .chain((0..=(n_deg - m) as i64).map(|j| (j, gen::random_matrix(&mut rng, n))))
            .collect();
        let randomized = MatrixLaurentPoly::from_coeffs(n, replaced).unwrap();
        let ks2 = analysis::cowen_recurrence(&randomized).unwrap();
        for j in (n_deg - m)..n_deg {
            let dev = cmatrix::max_abs(&(&ks[j] - &ks2[j]));
            assert!(dev <= 1e-8, "trial {trial}: K_{j} moved by {dev}");
        }
    }
    finish("criterion 4", started, Duration::from_secs(30));
}

/// Criterion 5: hyponormality is invariant under the analytic shift for
/// every valid shift amount on 100 seeded eligible symbols.
#[test]
fn criterion_5_shift_equivalence_suite() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x2301);
    for trial in 0..100 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=3);
        let n_deg = rng.gen_range(m..=5);
        let phi = gen::random_symbol(&mut rng, n, m, n_deg);
        for r in 0..=(n_deg - m) {
            assert!(
                analysis::shift_equivalence_check(&phi, r).unwrap(),
                "trial {trial}: verdicts disagree at shift {r}"
            );
        }
    }
    finish("criterion 5", started, Duration::from_secs(60));
}

/// Criterion 6: 50 seeded normal-by-construction symbols round-trip
/// through the constant-unitary machinery.
#[test]
fn criterion_6_constant_unitary_round_trip() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x3451);
    for trial in 0..50 {
        let n = rng.gen_range(1..=3);
        let deg = rng.gen_range(1..=4);
        let (phi, _witness) = gen::random_normal_generated(&mut rng, n, deg);

        let (u, certificate) = analysis::normality_unitary(&phi)
            .unwrap_or_else(|e| panic!("trial {trial}: no unitary found: {e}"));
        assert!(certificate.accepted, "trial {trial}");
        assert!(analysis::unitary_normality_check(&phi, &u).unwrap());

        let report = decide_hyponormal(&phi);
        assert_eq!(report.verdict, Verdict::Normal, "trial {trial}");
        let commutator = blocktoep::self_commutator_exact(&phi).unwrap();
        assert!(
            cmatrix::max_abs(commutator.data()) <= 1e-10,
            "trial {trial}: commutator norm {}",
            cmatrix::max_abs(commutator.data())
        );
    }
    finish("criterion 6", started, Duration::from_secs(30));
}

/// Criterion 7: on 50 seeded analytic normal-valued polynomials the
/// extracted inner function is certified inner, spans the Hankel kernel,
/// and its determinant degree equals both the Hankel rank and the exact
/// commutator rank; the two-directional certificate holds throughout.
#[test]
fn criterion_7_inner_function_suite() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x3801);
    for trial in 0..50 {
        let n = rng.gen_range(1..=3);
        let deg = rng.gen_range(1..=5);
        let phi = if trial % 2 == 0 {
            gen::random_diagonal_analytic(&mut rng, n, deg)
        } else {
            gen::random_unitary_conjugated_diagonal(&mut rng, n, deg)
        };

        let record = blocktoep::theorem38_certificate(&phi)
            .unwrap_or_else(|e| panic!("trial {trial}: {e}"));
        let theta = &record.theta;
        assert!(theta.innerness_residual <= 1e-8, "trial {trial}");
        assert!(theta.kernel_residual <= 1e-8, "trial {trial}");

        let hankel = blocktoep::hankel_block(&phi.adjoint());
        let hankel_rank = numerical_rank(&hankel, RANK_REL_TOL).rank;
        assert_eq!(theta.deg_det, hankel_rank, "trial {trial}");
        assert_eq!(record.commutator_rank, hankel_rank, "trial {trial}");
        assert!(record.both_directions, "trial {trial}");
    }
    finish("criterion 7", started, Duration::from_secs(60));
}

/// Criterion 8: for 30 seeded Blaschke-Potapov products the defect-rank
/// identity returns exactly the determinant degree once the window
/// clears it, stable under doubling.
#[test]
fn criterion_8_defect_rank_identity() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x3701);
    for trial in 0..30 {
        let n = rng.gen_range(1..=3);
        let factors = rng.gen_range(0..=3);
        let q = gen::random_blaschke(&mut rng, n, factors, 0.7);
        let deg = q.deg_det().unwrap();
        let window = deg + 2 + rng.gen_range(0..2);
        let candidate = Candidate::Blaschke(q);
        let first = analysis::defect_rank(&candidate, window).unwrap();
        let doubled = analysis::defect_rank(&candidate, 2 * window).unwrap();
        assert_eq!(first.rank, deg, "trial {trial} at window {window}");
        assert_eq!(doubled.rank, deg, "trial {trial} at window {}", 2 * window);
    }
    finish("criterion 8", started, Duration::from_secs(30));
}

/// Criterion 9: the scalar degenerate case `c zbar + z`.
#[test]
fn criterion_9_scalar_degenerate_case() {
    let started = Instant::now();
    let quarter_turn = num_complex::Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    let cases = [c64(0.5, 0.0), c64(0.9, 0.0), c64(1.0, 0.0), quarter_turn];
    for c in cases {
        let phi = MatrixLaurentPoly::scalar(&[(-1, c), (1, c64(1.0, 0.0))]);
        let report = decide_hyponormal(&phi);
        if c.norm() < 1.0 {
            assert_eq!(report.verdict, Verdict::HyponormalNotNormal, "c = {c}");
            assert_eq!(report.rank.exact(), Some(1), "c = {c}");
            let constant = CMatrix::from_element(1, 1, c);
            let cert =
                analysis::cowen_membership(&phi, &Candidate::Constant(constant)).unwrap();
            assert!(cert.accepted, "c = {c}");
        } else {
            assert_eq!(report.verdict, Verdict::Normal, "c = {c}");
            assert_eq!(report.rank.exact(), Some(0), "c = {c}");
        }
    }
    finish("criterion 9", started, Duration::from_secs(1));
}
