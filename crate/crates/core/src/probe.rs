//! Randomized probe harness: generates seeded families of symbols, runs
//! the full analysis pipeline on each and aggregates the outcomes. The
//! summary fields are counts and extrema, so shards can be merged in any
//! order; identical configurations always produce identical summaries.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::{self, Verdict};
use crate::beurling;
use crate::blaschke::BlaschkePotapovProduct;
use crate::error::{Error, Result};
use crate::gen;

/// Guardrails for desk-scale probing.
pub const MAX_DIMENSION: usize = 6;
pub const MAX_DEGREE: usize = 10;

/// Which family of symbols to generate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeFamily {
    /// Diagonal analytic polynomials.
    Diagonal,
    /// Constant-unitary conjugations of diagonal analytic polynomials.
    UnitaryConjugatedDiagonal,
    /// Symbols `G + U G*` that are normal by construction.
    NormalGenerated,
}

impl std::fmt::Display for ProbeFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ProbeFamily::Diagonal => "diagonal",
            ProbeFamily::UnitaryConjugatedDiagonal => "unitary_conjugated_diagonal",
            ProbeFamily::NormalGenerated => "normal_generated",
        };
        f.write_str(s)
    }
}

/// Probe configuration; the seed is the sole entropy source.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ProbeConfig {
    pub seed: u64,
    pub count: usize,
    pub n_max: usize,
    pub deg_max: usize,
    pub family: ProbeFamily,
}

impl ProbeConfig {
    fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::invalid("probe config", "count must be positive"));
        }
        if self.n_max == 0 || self.n_max > MAX_DIMENSION {
            return Err(Error::invalid(
                "probe config",
                format!("n_max must lie in 1..={MAX_DIMENSION}"),
            ));
        }
        if self.deg_max == 0 || self.deg_max > MAX_DEGREE {
            return Err(Error::invalid(
                "probe config",
                format!("deg_max must lie in 1..={MAX_DEGREE}"),
            ));
        }
        Ok(())
    }
}

/// Outcome of one probe instance.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeInstance {
    pub index: usize,
    pub n: usize,
    pub verdict: Verdict,
    pub rank: Option<usize>,
    /// Degree of the determinant of the extracted or supplied certificate.
    pub deg_det: Option<usize>,
    /// Certificate verdict for analytic instances.
    pub both_directions: Option<bool>,
    /// Whether rank equals certificate degree.
    pub matched: Option<bool>,
    pub anomaly: bool,
}

/// Aggregated probe outcome; counts and extrema only, so merging shards is
/// order-independent.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeSummary {
    pub config: ProbeConfig,
    pub total: usize,
    pub normal: usize,
    pub hyponormal_not_normal: usize,
    pub not_hyponormal: usize,
    pub certificates_both_directions: usize,
    pub certificate_failures: usize,
    pub conjecture_matches: usize,
    pub conjecture_mismatches: usize,
    pub anomalies: usize,
    pub max_innerness_residual: f64,
    pub max_kernel_residual: f64,
    pub instances: Vec<ProbeInstance>,
}

/// Run a probe over a generated corpus.
pub fn run_probe(config: ProbeConfig) -> Result<ProbeSummary> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut summary = ProbeSummary {
        config,
        total: config.count,
        normal: 0,
        hyponormal_not_normal: 0,
        not_hyponormal: 0,
        certificates_both_directions: 0,
        certificate_failures: 0,
        conjecture_matches: 0,
        conjecture_mismatches: 0,
        anomalies: 0,
        max_innerness_residual: 0.0,
        max_kernel_residual: 0.0,
        instances: Vec::with_capacity(config.count),
    };

    for index in 0..config.count {
        let n = rng.gen_range(1..=config.n_max);
        let deg = rng.gen_range(1..=config.deg_max);
        let instance = match config.family {
            ProbeFamily::Diagonal => {
                let phi = gen::random_diagonal_analytic(&mut rng, n, deg);
                analytic_instance(index, &phi, &mut summary)?
            }
            ProbeFamily::UnitaryConjugatedDiagonal => {
                let phi = gen::random_unitary_conjugated_diagonal(&mut rng, n, deg);
                analytic_instance(index, &phi, &mut summary)?
            }
            ProbeFamily::NormalGenerated => {
                let (phi, _witness) = gen::random_normal_generated(&mut rng, n, deg);
                let report = analysis::decide_hyponormal(&phi);
                let (u, _cert) = analysis::normality_unitary(&phi)?;
                let product = BlaschkePotapovProduct::constant(u)?;
                let datum = analysis::conjecture_probe(&phi, &product)?;
                tally_verdict(report.verdict, &mut summary);
                if datum.matched {
                    summary.conjecture_matches += 1;
                } else {
                    summary.conjecture_mismatches += 1;
                }
                ProbeInstance {
                    index,
                    n,
                    verdict: report.verdict,
                    rank: report.rank.exact(),
                    deg_det: Some(datum.deg_det),
                    both_directions: None,
                    matched: Some(datum.matched),
                    anomaly: report.anomaly,
                }
            }
        };
        if instance.anomaly {
            summary.anomalies += 1;
        }
        summary.instances.push(instance);
    }
    Ok(summary)
}

fn analytic_instance(
    index: usize,
    phi: &crate::symbol::MatrixLaurentPoly,
    summary: &mut ProbeSummary,
) -> Result<ProbeInstance> {
    let report = analysis::decide_hyponormal(phi);
    tally_verdict(report.verdict, summary);
    let record = beurling::theorem38_certificate(phi)?;
    if record.both_directions {
        summary.certificates_both_directions += 1;
    } else {
        summary.certificate_failures += 1;
    }
    let matched = report.rank.exact() == Some(record.theta.deg_det);
    if matched {
        summary.conjecture_matches += 1;
    } else {
        summary.conjecture_mismatches += 1;
    }
    summary.max_innerness_residual = summary
        .max_innerness_residual
        .max(record.theta.innerness_residual);
    summary.max_kernel_residual = summary.max_kernel_residual.max(record.theta.kernel_residual);
    Ok(ProbeInstance {
        index,
        n: phi.dim(),
        verdict: report.verdict,
        rank: report.rank.exact(),
        deg_det: Some(record.theta.deg_det),
        both_directions: Some(record.both_directions),
        matched: Some(matched),
        anomaly: report.anomaly,
    })
}

fn tally_verdict(verdict: Verdict, summary: &mut ProbeSummary) {
    match verdict {
        Verdict::Normal => summary.normal += 1,
        Verdict::HyponormalNotNormal => summary.hyponormal_not_normal += 1,
        Verdict::NotHyponormal => summary.not_hyponormal += 1,
    }
}
