//! Thin command-line front end over the `blocktoep` library.
//!
//! Exit codes: `analyze` maps its verdict to 0 (normal), 1 (hyponormal,
//! not normal) or 2 (not hyponormal); boolean subcommands exit 0 on
//! success and 1 on a negative outcome; I/O and parse problems exit 3;
//! domain errors (singular leading coefficients, degree violations,
//! invalid inputs) exit 4.

mod fixtures;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use blocktoep::analysis::{self, Candidate, Verdict};
use blocktoep::probe::{ProbeConfig, ProbeFamily};
use blocktoep::{beurling, io, CowenCertificate, Error, MatrixLaurentPoly};

const EXIT_IO: u8 = 3;
const EXIT_DOMAIN: u8 = 4;

#[derive(Parser)]
#[command(
    name = "blocktoep",
    about = "Normality and hyponormality analysis of block Toeplitz operators",
    version
)]
struct Cli {
    /// Write the full JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Tolerance override for the pointwise-normality gate.
    #[arg(long, global = true, value_name = "REAL")]
    tol: Option<f64>,

    /// Circle grid for certified sup-norm brackets.
    #[arg(long, global = true, value_name = "INT", default_value_t = 4096)]
    grid: usize,

    /// Seed for randomized commands.
    #[arg(long, global = true, value_name = "INT", default_value_t = 42)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide normality / hyponormality of the symbol in a file.
    Analyze { symbol: PathBuf },
    /// Print the prescribed leading Taylor coefficients of any
    /// contractive-set member.
    Recurrence { symbol: PathBuf },
    /// Check that hyponormality is invariant under the analytic shift.
    #[command(name = "shift-check")]
    ShiftCheck {
        symbol: PathBuf,
        /// Shift amount; all valid shifts when omitted.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Check a candidate (symbol or product file) for contractive-set
    /// membership.
    Membership { symbol: PathBuf, candidate: PathBuf },
    /// Extract the kernel inner function and run the finite-rank
    /// certificate in both directions.
    Theta {
        symbol: PathBuf,
        /// Accept constant symbols with the identity convention.
        #[arg(long)]
        allow_constant: bool,
    },
    /// Run a randomized probe over a generated family of symbols.
    Probe {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long, default_value_t = 5)]
        deg_max: usize,
        #[arg(long, value_enum, default_value_t = FamilyArg::UnitaryConjugatedDiagonal)]
        family: FamilyArg,
    },
    /// Regenerate the worked-example fixtures and assert their verdicts.
    Examples {
        /// Output directory for the fixture files.
        #[arg(long, default_value = "fixtures")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Diagonal,
    UnitaryConjugatedDiagonal,
    NormalGenerated,
}

impl From<FamilyArg> for ProbeFamily {
    fn from(value: FamilyArg) -> Self {
        match value {
            FamilyArg::Diagonal => ProbeFamily::Diagonal,
            FamilyArg::UnitaryConjugatedDiagonal => ProbeFamily::UnitaryConjugatedDiagonal,
            FamilyArg::NormalGenerated => ProbeFamily::NormalGenerated,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.exit)
        }
    }
}

struct Failure {
    message: String,
    exit: u8,
}

impl Failure {
    fn io(message: impl Into<String>) -> Self {
        Failure {
            message: message.into(),
            exit: EXIT_IO,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::Invalid { .. } => EXIT_IO,
            _ => EXIT_DOMAIN,
        };
        Failure {
            message: e.to_string(),
            exit,
        }
    }
}

fn load_symbol(path: &Path) -> Result<MatrixLaurentPoly, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::io(format!("cannot read {}: {e}", path.display())))?;
    io::symbol_from_json(&text).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

/// A candidate file is a product file when it has a "factors" key, a
/// constant when its only coefficient index is zero, and a trigonometric
/// polynomial otherwise.
fn load_candidate(path: &Path) -> Result<Candidate, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::io(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    if value.get("factors").is_some() {
        let product =
            io::product_from_json(&text).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
        return Ok(Candidate::Blaschke(product));
    }
    let symbol =
        io::symbol_from_json(&text).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    if symbol.is_constant() {
        Ok(Candidate::Constant(symbol.coeff(0)))
    } else {
        Ok(Candidate::TrigPoly(symbol))
    }
}

fn write_json<T: serde::Serialize>(path: &Option<PathBuf>, value: &T) -> Result<(), Failure> {
    if let Some(path) = path {
        let text = serde_json::to_string_pretty(value)
            .map_err(|e| Failure::io(format!("serialization failed: {e}")))?;
        fs::write(path, text + "\n")
            .map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn print_certificate(cert: &CowenCertificate) {
    println!(
        "  analyticity residual: {:.3e}",
        cert.analyticity_residual
    );
    println!(
        "  sup-norm bracket:     [{:.9}, {:.9}]",
        cert.norm_lower, cert.norm_upper
    );
    println!("  accepted:             {}", cert.accepted);
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Analyze { symbol } => {
            let phi = load_symbol(&symbol)?;
            let mut report = match cli.tol {
                Some(tol) => analysis::decide_hyponormal_with_tol(&phi, tol),
                None => analysis::decide_hyponormal(&phi),
            };
            if report.verdict == Verdict::Normal {
                if let Ok((_, certificate)) = analysis::normality_unitary(&phi) {
                    report.certificates.push(certificate);
                }
            }
            println!("verdict: {:?}", report.verdict);
            println!("reason:  {:?}", report.reason);
            match &report.rank {
                blocktoep::CommutatorRank::Exact(r) => println!("rank:    {r}"),
                blocktoep::CommutatorRank::Unbounded(ev) => {
                    println!("rank:    unbounded; compression evidence:");
                    for e in ev {
                        println!(
                            "  window {:>3}: rank {:>3}, min eigenvalue {:+.6e}",
                            e.window, e.rank, e.min_eigenvalue
                        );
                    }
                }
            }
            println!("min eigenvalue: {:+.6e}", report.min_eigenvalue);
            if report.anomaly {
                println!("anomaly: PSD-looking compressions despite a non-normal-valued symbol");
            }
            if !report.certificates.is_empty() {
                println!("constant-unitary certificate:");
                print_certificate(&report.certificates[0]);
            }
            write_json(&cli.json, &report)?;
            Ok(ExitCode::from(match report.verdict {
                Verdict::Normal => 0,
                Verdict::HyponormalNotNormal => 1,
                Verdict::NotHyponormal => 2,
            }))
        }
        Command::Recurrence { symbol } => {
            let phi = load_symbol(&symbol)?;
            let ks = analysis::cowen_recurrence(&phi)?;
            for (j, k) in ks.iter().enumerate() {
                println!("K_{j}:");
                for row in 0..k.nrows() {
                    let cells: Vec<String> = (0..k.ncols())
                        .map(|col| format!("{:.6}{:+.6}i", k[(row, col)].re, k[(row, col)].im))
                        .collect();
                    println!("  [{}]", cells.join(", "));
                }
            }
            let rows: Vec<Vec<Vec<[f64; 2]>>> = ks.iter().map(io::matrix_to_rows).collect();
            write_json(&cli.json, &serde_json::json!({ "coefficients": rows }))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ShiftCheck { symbol, r } => {
            let phi = load_symbol(&symbol)?;
            let max =
                phi.analytic_degree().saturating_sub(phi.coanalytic_degree());
            let shifts: Vec<usize> = match r {
                Some(r) => vec![r],
                None => (0..=max).collect(),
            };
            let mut all_ok = true;
            let mut outcomes = Vec::new();
            for r in shifts {
                let ok = analysis::shift_equivalence_check(&phi, r)?;
                println!("shift r = {r}: verdicts {}", if ok { "agree" } else { "DISAGREE" });
                outcomes.push(serde_json::json!({ "r": r, "agree": ok }));
                all_ok &= ok;
            }
            write_json(&cli.json, &serde_json::json!({ "checks": outcomes }))?;
            Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Membership { symbol, candidate } => {
            let phi = load_symbol(&symbol)?;
            let candidate = load_candidate(&candidate)?;
            let cert = analysis::cowen_membership_with_grid(&phi, &candidate, cli.grid)?;
            println!("membership certificate:");
            print_certificate(&cert);
            write_json(&cli.json, &cert)?;
            Ok(if cert.accepted { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Theta { symbol, allow_constant } => {
            let phi = load_symbol(&symbol)?;
            if allow_constant && phi.is_constant() {
                let result = beurling::kernel_inner_theta_allow_constant(&phi)?;
                println!("constant symbol: theta = identity, model space dimension 0");
                write_json(&cli.json, &result)?;
                return Ok(ExitCode::SUCCESS);
            }
            let record = beurling::theorem38_certificate(&phi)?;
            println!("model space dimension: {}", record.theta.model_space_dim);
            println!("deg det theta:         {}", record.theta.deg_det);
            println!("commutator rank:       {}", record.commutator_rank);
            println!(
                "innerness residual:    {:.3e}",
                record.theta.innerness_residual
            );
            println!("kernel residual:       {:.3e}", record.theta.kernel_residual);
            println!(
                "product residual:      {:.3e}",
                record.analytic_product_residual
            );
            println!("membership accepted:   {}", record.membership.accepted);
            println!("both directions:       {}", record.both_directions);
            write_json(&cli.json, &record)?;
            Ok(if record.both_directions {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Probe {
            count,
            n_max,
            deg_max,
            family,
        } => {
            let config = ProbeConfig {
                seed: cli.seed,
                count,
                n_max,
                deg_max,
                family: family.into(),
            };
            let summary = blocktoep::run_probe(config)?;
            println!(
                "family {} seed {} count {}",
                summary.config.family, summary.config.seed, summary.total
            );
            println!(
                "verdicts: normal {}, hyponormal-not-normal {}, not-hyponormal {}",
                summary.normal, summary.hyponormal_not_normal, summary.not_hyponormal
            );
            println!(
                "certificates both directions: {} (failures {})",
                summary.certificates_both_directions, summary.certificate_failures
            );
            println!(
                "rank/degree matches: {} (mismatches {})",
                summary.conjecture_matches, summary.conjecture_mismatches
            );
            println!("anomalies: {}", summary.anomalies);
            println!(
                "max residuals: innerness {:.3e}, kernel {:.3e}",
                summary.max_innerness_residual, summary.max_kernel_residual
            );
            write_json(&cli.json, &summary)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Examples { out } => {
            let failures = fixtures::regenerate_and_check(&out)
                .map_err(|e| Failure::io(format!("cannot write fixtures: {e}")))?;
            println!(
                "fixtures written to {}; {} check(s) failed",
                out.display(),
                failures.len()
            );
            Ok(if failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
