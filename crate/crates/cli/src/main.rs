//! `gatesmith`: synthesize single-qubit rotations over {Toffoli, S(θ)},
//! certify the completeness claims behind the construction, sweep parameter
//! grids, and probe generator-word coverage.

mod angle_arg;
mod emit;
mod report;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use gatesmith_core::angle::Angle;
use gatesmith_core::circuit::{Circuit, GateApp};
use gatesmith_core::completeness::{density_probe, DensityProbeConfig};
use gatesmith_core::gate::GateKind;
use gatesmith_core::operator::circuit_unitary;
use gatesmith_core::synthesis::{synthesize_with_options, AncillaPolicy, SynthesizeOptions};

use angle_arg::parse_angle;

#[derive(Parser)]
#[command(name = "gatesmith", version, about = "Gate-set compiler and verifier for {Toffoli, S} bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Shared,
    Fresh,
}

impl From<PolicyArg> for AncillaPolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Shared => AncillaPolicy::Shared,
            PolicyArg::Fresh => AncillaPolicy::Fresh,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    Cnot,
    Toffoli,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProbeCaseArg {
    Cnot,
    Toffoli,
    Golden,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Approximate the rotation U_alpha with a {Toffoli, S(theta)} circuit
    Synthesize {
        /// Target rotation angle (radians or p*pi/q)
        #[arg(long, value_parser = parse_angle)]
        alpha: Angle,
        /// Basis rotation angle (radians or p*pi/q); must not be a multiple of pi/2
        #[arg(long, value_parser = parse_angle)]
        theta: Angle,
        /// Total error budget, in (0, 1)
        #[arg(long)]
        eps: f64,
        /// Phase-ancilla reuse policy
        #[arg(long, value_enum, default_value = "fresh")]
        policy: PolicyArg,
        /// Output path stem; writes `<out>.circuit.json` and `<out>.report.json`
        #[arg(long)]
        out: Option<PathBuf>,
        /// Dense verification cap in qubits
        #[arg(long, env = "GATESMITH_MAX_QUBITS", default_value_t = 12)]
        max_qubits: usize,
        /// Circuit materialization cap in gates
        #[arg(long, default_value_t = 5_000_000)]
        max_gates: usize,
    },
    /// Certify the completeness claims for a gate-set case
    VerifyCompleteness {
        #[arg(long, value_enum)]
        case: CaseArg,
        /// Basis angle, required for the cnot case
        #[arg(long, value_parser = parse_angle)]
        theta: Option<Angle>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep a (theta, alpha, eps) grid; reports sizes, errors, and scaling
    Bench {
        /// Grid file: {"theta": [...], "alpha": [...], "eps": [...]} with
        /// angles as strings (radians or p*pi/q)
        #[arg(long)]
        grid: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        #[arg(long, value_enum, default_value = "fresh")]
        policy: PolicyArg,
        #[arg(long, env = "GATESMITH_MAX_QUBITS", default_value_t = 12)]
        max_qubits: usize,
    },
    /// Enumerate generator words and measure coverage of random targets
    DensityProbe {
        #[arg(long, value_enum)]
        case: ProbeCaseArg,
        /// Basis angle for the cnot case
        #[arg(long, value_parser = parse_angle)]
        theta: Option<Angle>,
        #[arg(long, default_value_t = 4)]
        max_word_len: usize,
        #[arg(long, default_value_t = 16)]
        n_targets: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    Precondition(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Precondition(_) => 2,
            CliError::Io(_) => 3,
        }
    }
    fn message(&self) -> &str {
        match self {
            CliError::Precondition(m) | CliError::Io(m) => m,
        }
    }
}

fn write_or_print(path: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, contents)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            println!("{contents}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Synthesize {
            alpha,
            theta,
            eps,
            policy,
            out,
            max_qubits,
            max_gates,
        } => cmd_synthesize(alpha, theta, eps, policy.into(), out.as_deref(), max_qubits, max_gates),
        Command::VerifyCompleteness { case, theta, out } => {
            cmd_verify_completeness(case, theta, out.as_deref())
        }
        Command::Bench {
            grid,
            out,
            format,
            policy,
            max_qubits,
        } => cmd_bench(grid.as_deref(), out.as_deref(), format, policy.into(), max_qubits),
        Command::DensityProbe {
            case,
            theta,
            max_word_len,
            n_targets,
            seed,
            out,
        } => cmd_density_probe(case, theta, max_word_len, n_targets, seed, out.as_deref()),
    }
}

// --- synthesize ---------------------------------------------------------------

fn cmd_synthesize(
    alpha: Angle,
    theta: Angle,
    eps: f64,
    policy: AncillaPolicy,
    out: Option<&Path>,
    max_qubits: usize,
    max_gates: usize,
) -> Result<(), CliError> {
    if theta.is_multiple_of_half_pi() {
        return Err(CliError::Precondition(format!(
            "theta = {theta} is a multiple of pi/2: the basis gate must be basis-changing"
        )));
    }
    let options = SynthesizeOptions {
        policy,
        max_qubits,
        max_gates,
    };
    let (lowered, report) = synthesize_with_options(alpha, theta, eps, options)
        .map_err(|e| CliError::Precondition(e.to_string()))?;

    match out {
        Some(stem) => {
            let circuit_path = stem.with_extension("circuit.json");
            let report_path = stem.with_extension("report.json");
            write_or_print(Some(&circuit_path), &emit::to_json_string(&lowered))?;
            write_or_print(Some(&report_path), &emit::to_json_string(&report))?;
            eprintln!(
                "wrote {} and {}",
                circuit_path.display(),
                report_path.display()
            );
        }
        None => {
            println!("{}", emit::to_json_pretty(&report));
        }
    }
    // a verified report and a bound-only report both exit cleanly;
    // precondition failures already returned through the error path
    Ok(())
}

// --- verify-completeness --------------------------------------------------------

fn cmd_verify_completeness(
    case: CaseArg,
    theta: Option<Angle>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let report = match case {
        CaseArg::Cnot => {
            let theta = theta.ok_or_else(|| {
                CliError::Precondition("--theta is required for the cnot case".into())
            })?;
            report::verify_cnot_case(theta).map_err(|e| match e {
                report::ReportError::ExcludedTheta(m) | report::ReportError::Degenerate(m) => {
                    CliError::Precondition(m)
                }
            })?
        }
        CaseArg::Toffoli => report::verify_toffoli_case(),
    };
    write_or_print(out, &emit::to_json_pretty(&report))?;
    if report.passed {
        Ok(())
    } else {
        Err(CliError::Precondition(format!(
            "{} asserted checks failed",
            report.checks.iter().filter(|c| c.status == report::CheckStatus::Fail).count()
        )))
    }
}

// --- bench ---------------------------------------------------------------------

#[derive(serde::Deserialize)]
struct GridFile {
    theta: Vec<String>,
    alpha: Vec<String>,
    eps: Vec<f64>,
}

#[derive(Serialize)]
struct BenchRow {
    theta: f64,
    alpha: f64,
    eps: f64,
    size: usize,
    ancillae: usize,
    achieved_error: f64,
    k1: usize,
    k2: usize,
    #[serde(rename = "T")]
    grover_t: usize,
}

#[derive(Serialize)]
struct ScalingRow {
    theta: f64,
    alpha: f64,
    eps_from: f64,
    eps_to: f64,
    size_ratio: f64,
    model_ratio: f64,
}

#[derive(Serialize)]
struct BenchReport {
    rows: Vec<BenchRow>,
    scaling: Vec<ScalingRow>,
}

fn cmd_bench(
    grid: Option<&Path>,
    out: Option<&Path>,
    format: FormatArg,
    policy: AncillaPolicy,
    max_qubits: usize,
) -> Result<(), CliError> {
    let (thetas, alphas, epsilons) = match grid {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
            let g: GridFile = serde_json::from_str(&text)
                .map_err(|e| CliError::Precondition(format!("bad grid file: {e}")))?;
            let parse_all = |v: &[String]| -> Result<Vec<Angle>, CliError> {
                v.iter()
                    .map(|s| parse_angle(s).map_err(CliError::Precondition))
                    .collect()
            };
            (parse_all(&g.theta)?, parse_all(&g.alpha)?, g.eps)
        }
        None => (
            vec![
                Angle::pi_fraction(1, 6),
                Angle::from_radians(1.0),
                Angle::from_radians(1.3),
            ],
            vec![
                Angle::pi_fraction(1, 3),
                Angle::from_radians(0.7),
                Angle::from_radians(2.0),
            ],
            vec![0.2, 0.1, 0.05],
        ),
    };
    if thetas.is_empty() || alphas.is_empty() || epsilons.is_empty() {
        return Err(CliError::Precondition("empty grid".into()));
    }

    let mut thetas = thetas;
    let mut alphas = alphas;
    let mut epsilons = epsilons;
    thetas.sort_by(|a, b| a.radians().partial_cmp(&b.radians()).expect("finite"));
    alphas.sort_by(|a, b| a.radians().partial_cmp(&b.radians()).expect("finite"));
    // coarse to fine: sizes grow down the block
    epsilons.sort_by(|a, b| b.partial_cmp(a).expect("finite"));

    let mut rows = Vec::new();
    let mut scaling = Vec::new();
    for &theta in &thetas {
        for &alpha in &alphas {
            let mut block: Vec<(f64, usize)> = Vec::new();
            for &eps in &epsilons {
                let (lowered, report) = synthesize_with_options(
                    alpha,
                    theta,
                    eps,
                    SynthesizeOptions {
                        policy,
                        max_qubits,
                        ..SynthesizeOptions::default()
                    },
                )
                .map_err(|e| CliError::Precondition(e.to_string()))?;
                rows.push(BenchRow {
                    theta: theta.radians(),
                    alpha: alpha.radians(),
                    eps,
                    size: lowered.size(),
                    ancillae: report.ancilla_count,
                    achieved_error: report.achieved_error,
                    k1: report.params.k1,
                    k2: report.params.k2,
                    grover_t: report.params.grover_t,
                });
                block.push((eps, lowered.size()));
            }
            for pair in block.windows(2) {
                let (eps_from, s_from) = pair[0];
                let (eps_to, s_to) = pair[1];
                let halvings = (eps_from / eps_to).log2();
                let model_per_halving = 2.0 * (1.0 + 2.0f64.ln() / (1.0 / eps_from).ln());
                scaling.push(ScalingRow {
                    theta: theta.radians(),
                    alpha: alpha.radians(),
                    eps_from,
                    eps_to,
                    size_ratio: s_to as f64 / s_from as f64,
                    model_ratio: model_per_halving.powf(halvings),
                });
            }
        }
    }

    let text = match format {
        FormatArg::Json => emit::to_json_string(&BenchReport { rows, scaling }),
        FormatArg::Csv => {
            let mut s = String::from("theta,alpha,eps,size,ancillae,achieved_error,k1,k2,T\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    emit::fmt_f64(r.theta),
                    emit::fmt_f64(r.alpha),
                    emit::fmt_f64(r.eps),
                    r.size,
                    r.ancillae,
                    emit::fmt_f64(r.achieved_error),
                    r.k1,
                    r.k2,
                    r.grover_t
                ));
            }
            for sc in &scaling {
                s.push_str(&format!(
                    "# scaling theta={} alpha={}: eps {} -> {}: size ratio {} (model {})\n",
                    emit::fmt_f64(sc.theta),
                    emit::fmt_f64(sc.alpha),
                    emit::fmt_f64(sc.eps_from),
                    emit::fmt_f64(sc.eps_to),
                    emit::fmt_f64(sc.size_ratio),
                    emit::fmt_f64(sc.model_ratio)
                ));
            }
            s
        }
    };
    write_or_print(out, &text)
}

// --- density-probe ---------------------------------------------------------------

fn single_gate(n: usize, kind: GateKind, qubits: Vec<usize>) -> gatesmith_core::operator::RealOperator {
    circuit_unitary(&Circuit::new(n, vec![GateApp::new(kind, qubits)]).expect("static gate"))
        .expect("small register")
}

fn cmd_density_probe(
    case: ProbeCaseArg,
    theta: Option<Angle>,
    max_word_len: usize,
    n_targets: usize,
    seed: u64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let generators = match case {
        ProbeCaseArg::Golden => {
            let angle = Angle::from_radians(std::f64::consts::PI * (5.0f64.sqrt() - 1.0));
            vec![single_gate(1, GateKind::STheta(angle), vec![0])]
        }
        ProbeCaseArg::Cnot => {
            let theta = theta.ok_or_else(|| {
                CliError::Precondition("--theta is required for the cnot case".into())
            })?;
            vec![
                gatesmith_core::completeness::build_cnot_case_operator(theta),
                single_gate(2, GateKind::Cnot, vec![0, 1]),
                single_gate(2, GateKind::Cnot, vec![1, 0]),
            ]
        }
        ProbeCaseArg::Toffoli => {
            let h3 = single_gate(3, GateKind::H, vec![2]);
            let toff_231 = single_gate(3, GateKind::Toffoli, vec![1, 2, 0]);
            let toff_132 = single_gate(3, GateKind::Toffoli, vec![0, 2, 1]);
            let conj = |t: &gatesmith_core::operator::RealOperator| {
                h3.mul(&t.mul(&h3).unwrap()).unwrap()
            };
            vec![
                gatesmith_core::completeness::build_toffoli_case_operator(),
                h3.clone(),
                conj(&toff_231),
                conj(&toff_132),
                toff_231,
                toff_132,
            ]
        }
    };
    let report = density_probe(
        &generators,
        &DensityProbeConfig {
            max_word_len,
            n_targets,
            seed,
        },
    )
    .map_err(|e| CliError::Precondition(e.to_string()))?;
    write_or_print(out, &emit::to_json_pretty(&report))
}
