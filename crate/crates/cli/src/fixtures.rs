//! The worked-example fixtures: symbols and candidate products with their
//! expected analysis outcomes. The `examples` subcommand regenerates the
//! JSON files and asserts every expectation.

use std::fs;
use std::path::Path;

use blocktoep::analysis::{self, Candidate, CommutatorRank, Verdict};
use blocktoep::cmatrix::{c64, CMatrix};
use blocktoep::error::Error;
use blocktoep::{io, BlaschkePotapovFactor, BlaschkePotapovProduct, Complex64, MatrixLaurentPoly};

fn unit_entry(n: usize, r: usize, c: usize, value: Complex64) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    m[(r, c)] = value;
    m
}

pub fn example_3_6() -> MatrixLaurentPoly {
    let ones = CMatrix::from_element(2, 2, c64(1.0, 0.0));
    MatrixLaurentPoly::from_coeffs(2, [(1, ones.clone()), (-1, ones)]).unwrap()
}

pub fn example_3_8() -> MatrixLaurentPoly {
    let mut lower = CMatrix::zeros(2, 2);
    lower[(0, 0)] = c64(1.0, 0.0);
    MatrixLaurentPoly::from_coeffs(2, [(1, CMatrix::identity(2, 2)), (-1, lower)]).unwrap()
}

pub fn sec2_counterexample() -> MatrixLaurentPoly {
    MatrixLaurentPoly::from_coeffs(
        2,
        [
            (1, unit_entry(2, 0, 0, c64(1.0, 0.0))),
            (0, unit_entry(2, 0, 1, c64(1.0, 0.0))),
            (-1, unit_entry(2, 1, 1, c64(1.0, 0.0))),
        ],
    )
    .unwrap()
}

pub fn scalar_nakazi(c: Complex64) -> MatrixLaurentPoly {
    MatrixLaurentPoly::scalar(&[(-1, c), (1, c64(1.0, 0.0))])
}

pub fn recurrence_basic() -> MatrixLaurentPoly {
    MatrixLaurentPoly::scalar(&[(-1, c64(1.0, 0.0)), (1, c64(2.0, 0.0))])
}

pub fn recurrence_singular_lead() -> MatrixLaurentPoly {
    MatrixLaurentPoly::from_coeffs(
        2,
        [
            (-1, CMatrix::identity(2, 2)),
            (2, unit_entry(2, 0, 0, c64(1.0, 0.0))),
        ],
    )
    .unwrap()
}

pub fn recurrence_degree_violation() -> MatrixLaurentPoly {
    MatrixLaurentPoly::scalar(&[(-2, c64(1.0, 0.0)), (1, c64(1.0, 0.0))])
}

pub fn shift_cubic() -> MatrixLaurentPoly {
    MatrixLaurentPoly::scalar(&[(-1, c64(1.0, 0.0)), (3, c64(1.0, 0.0))])
}

pub fn theta_diag_z_z2() -> MatrixLaurentPoly {
    MatrixLaurentPoly::from_coeffs(
        2,
        [
            (1, unit_entry(2, 0, 0, c64(1.0, 0.0))),
            (2, unit_entry(2, 1, 1, c64(1.0, 0.0))),
        ],
    )
    .unwrap()
}

pub fn theta_shift_identity() -> MatrixLaurentPoly {
    MatrixLaurentPoly::monomial_identity(2, 1)
}

pub fn scalar_two_zbar_z() -> MatrixLaurentPoly {
    MatrixLaurentPoly::scalar(&[(-1, c64(2.0, 0.0)), (1, c64(1.0, 0.0))])
}

pub fn bp_diag_one_z() -> BlaschkePotapovProduct {
    let factor =
        BlaschkePotapovFactor::new(c64(0.0, 0.0), unit_entry(2, 1, 1, c64(1.0, 0.0))).unwrap();
    BlaschkePotapovProduct::new(CMatrix::identity(2, 2), vec![factor]).unwrap()
}

pub fn bp_diag_one_z2() -> BlaschkePotapovProduct {
    let factor =
        BlaschkePotapovFactor::new(c64(0.0, 0.0), unit_entry(2, 1, 1, c64(1.0, 0.0))).unwrap();
    BlaschkePotapovProduct::new(CMatrix::identity(2, 2), vec![factor.clone(), factor]).unwrap()
}

/// Write every fixture and run its assertion; returns the failures.
pub fn regenerate_and_check(out_dir: &Path) -> std::io::Result<Vec<String>> {
    fs::create_dir_all(out_dir)?;
    let mut failures: Vec<String> = Vec::new();
    let mut check = |name: &str, ok: bool, detail: String| {
        if ok {
            println!("PASS {name}");
        } else {
            println!("FAIL {name}: {detail}");
            failures.push(format!("{name}: {detail}"));
        }
    };

    let write_symbol = |name: &str, phi: &MatrixLaurentPoly| -> std::io::Result<()> {
        fs::write(out_dir.join(name), io::symbol_to_json(phi) + "\n")
    };
    let write_product = |name: &str, q: &BlaschkePotapovProduct| -> std::io::Result<()> {
        fs::write(out_dir.join(name), io::product_to_json(q) + "\n")
    };

    // Normal example with a constant-unitary certificate.
    let phi36 = example_3_6();
    write_symbol("example_3_6.json", &phi36)?;
    let report = analysis::decide_hyponormal(&phi36);
    let unitary_ok = analysis::normality_unitary(&phi36)
        .map(|(_, cert)| cert.accepted)
        .unwrap_or(false);
    check(
        "example_3_6 verdict Normal + unitary certificate",
        report.verdict == Verdict::Normal && unitary_ok,
        format!("verdict {:?}", report.verdict),
    );

    // Rank-one example plus both product certificates.
    let phi38 = example_3_8();
    write_symbol("example_3_8.json", &phi38)?;
    write_product("bp_diag_1_z.json", &bp_diag_one_z())?;
    write_product("bp_diag_1_z2.json", &bp_diag_one_z2())?;
    let report = analysis::decide_hyponormal(&phi38);
    let probe = analysis::conjecture_probe(&phi38, &bp_diag_one_z());
    check(
        "example_3_8 verdict HyponormalNotNormal rank 1, diag(1,z) matches",
        report.verdict == Verdict::HyponormalNotNormal
            && report.rank.exact() == Some(1)
            && probe.as_ref().map(|d| d.matched).unwrap_or(false),
        format!("verdict {:?} rank {:?}", report.verdict, report.rank.exact()),
    );
    let wide = analysis::conjecture_probe(&phi38, &bp_diag_one_z2());
    check(
        "example_3_8 diag(1,z^2) is a member but does not match",
        wide.as_ref()
            .map(|d| d.certificate.accepted && !d.matched && d.deg_det == 2)
            .unwrap_or(false),
        format!("{wide:?}"),
    );

    // Infinite-rank counterexample.
    let phi_cx = sec2_counterexample();
    write_symbol("sec2_counterexample.json", &phi_cx)?;
    let report = analysis::decide_hyponormal(&phi_cx);
    let growth_ok = match &report.rank {
        CommutatorRank::Unbounded(ev) => {
            ev.windows(2).all(|w| w[0].rank < w[1].rank)
                && ev.iter().all(|e| e.min_eigenvalue < 0.0)
        }
        CommutatorRank::Exact(_) => false,
    };
    check(
        "sec2_counterexample verdict NotHyponormal with growing evidence",
        report.verdict == Verdict::NotHyponormal && growth_ok,
        format!("verdict {:?}", report.verdict),
    );

    // Scalar degenerate family.
    for (tag, c, hyponormal) in [
        ("c05", c64(0.5, 0.0), true),
        ("c09", c64(0.9, 0.0), true),
        ("c10", c64(1.0, 0.0), false),
        (
            "c_unimodular",
            Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4),
            false,
        ),
    ] {
        let phi = scalar_nakazi(c);
        write_symbol(&format!("scalar_nakazi_{tag}.json"), &phi)?;
        let report = analysis::decide_hyponormal(&phi);
        let ok = if hyponormal {
            let cert = analysis::cowen_membership(
                &phi,
                &Candidate::Constant(CMatrix::from_element(1, 1, c)),
            );
            report.verdict == Verdict::HyponormalNotNormal
                && report.rank.exact() == Some(1)
                && cert.map(|c| c.accepted).unwrap_or(false)
        } else {
            report.verdict == Verdict::Normal && report.rank.exact() == Some(0)
        };
        check(
            &format!("scalar_nakazi_{tag}"),
            ok,
            format!("verdict {:?}", report.verdict),
        );
    }

    // Recurrence fixtures: one solvable, two designed failures.
    let basic = recurrence_basic();
    write_symbol("recurrence_zbar_2z.json", &basic)?;
    let ks = analysis::cowen_recurrence(&basic);
    check(
        "recurrence_zbar_2z gives K_0 = 0.5",
        ks.map(|k| (k[0][(0, 0)] - c64(0.5, 0.0)).norm() < 1e-12)
            .unwrap_or(false),
        "unexpected coefficients".into(),
    );
    let singular = recurrence_singular_lead();
    write_symbol("recurrence_singular_lead.json", &singular)?;
    check(
        "recurrence_singular_lead is rejected",
        matches!(
            analysis::cowen_recurrence(&singular),
            Err(Error::LeadingCoefficientSingular(_))
        ),
        "expected LeadingCoefficientSingular".into(),
    );
    let violation = recurrence_degree_violation();
    write_symbol("recurrence_degree_violation.json", &violation)?;
    check(
        "recurrence_degree_violation is rejected",
        matches!(
            analysis::cowen_recurrence(&violation),
            Err(Error::DegreeViolation { .. })
        ),
        "expected DegreeViolation".into(),
    );

    // Shift-equivalence fixture.
    let cubic = shift_cubic();
    write_symbol("shift_cubic.json", &cubic)?;
    let ok = (0..=2).all(|r| analysis::shift_equivalence_check(&cubic, r).unwrap_or(false));
    check("shift_cubic equivalence for r = 0, 1, 2", ok, "disagreement".into());

    // Inner-function fixtures.
    let diag = theta_diag_z_z2();
    write_symbol("theta_diag_z_z2.json", &diag)?;
    let record = blocktoep::theorem38_certificate(&diag);
    check(
        "theta_diag_z_z2 certificate (deg det 3)",
        record
            .map(|r| r.theta.deg_det == 3 && r.both_directions)
            .unwrap_or(false),
        "certificate failed".into(),
    );
    let shift2 = theta_shift_identity();
    write_symbol("theta_shift_identity_2.json", &shift2)?;
    let record = blocktoep::theorem38_certificate(&shift2);
    check(
        "theta_shift_identity_2 certificate (deg det 2)",
        record
            .map(|r| r.theta.deg_det == 2 && r.both_directions)
            .unwrap_or(false),
        "certificate failed".into(),
    );

    // Norm-rejected constant candidate.
    let two = scalar_two_zbar_z();
    write_symbol("scalar_2zbar_z.json", &two)?;
    fs::write(
        out_dir.join("candidate_constant_2.json"),
        io::symbol_to_json(&MatrixLaurentPoly::constant(CMatrix::from_element(
            1,
            1,
            c64(2.0, 0.0),
        ))) + "\n",
    )?;
    let cert = analysis::cowen_membership(
        &two,
        &Candidate::Constant(CMatrix::from_element(1, 1, c64(2.0, 0.0))),
    );
    check(
        "scalar_2zbar_z rejects the constant 2 on norm",
        cert.map(|c| !c.accepted && c.analyticity_residual < 1e-12)
            .unwrap_or(false),
        "expected norm rejection".into(),
    );

    Ok(failures)
}
