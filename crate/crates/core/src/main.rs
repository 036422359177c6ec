use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use torus_quant::equivariant::{
    enumerate_liftings, lifting_by_index, rho_linear, rho_projective, LiftingJson,
};
use torus_quant::exact_phase::{make_planck, PlanckConstant};
use torus_quant::json::to_string_pretty;
use torus_quant::lattice::{GammaElement, LatticeVector};
use torus_quant::operator::DenseOperatorJsonOut;
use torus_quant::qtorus::AlgebraElement;
use torus_quant::semiclassics::{default_hbars, scan};
use torus_quant::verify::{run, Suite, VerifyConfig};
use torus_quant::weyl::{pi_monomial, quantize, MonomialOperatorJson};

/// Bounds on command-line inputs; keeps every exponent product inside `i64`.
const MAX_COORD: i64 = 1_000_000;
const MAX_N: i64 = 10_000;

#[derive(Parser)]
#[command(
    name = "torus-quant",
    version,
    about = "Equivariant quantization of the 2-torus at rational Planck constant"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print π(ξ) as a monomial operator and as a dense matrix.
    Rep {
        #[arg(long)]
        hbar: String,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quantize a function given as a JSON file of Fourier terms.
    Quantize {
        #[arg(long)]
        hbar: String,
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print ρ(B), projective and phase-normalized unless a lifting is chosen.
    Rho {
        #[arg(long)]
        hbar: String,
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        /// Lifting index in 0..12.
        #[arg(long)]
        lifting: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite; exit status 1 if any check fails.
    Verify {
        #[arg(long)]
        hbar: String,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Semiclassical defects of a pair of functions over a list of Planck constants.
    Scan {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        /// Comma-separated list; defaults to 1/8,1/16,1/32,1/64.
        #[arg(long)]
        hbar: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the twelve linear liftings.
    Liftings {
        #[arg(long)]
        hbar: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Serialize)]
struct RepOut {
    hbar: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
    xi: [i64; 2],
    monomial: MonomialOperatorJson,
    dense: DenseOperatorJsonOut,
}

#[derive(Serialize)]
struct QuantizeOut {
    hbar: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
    hermitian: bool,
    operator: DenseOperatorJsonOut,
}

#[derive(Serialize)]
struct RhoOut {
    hbar: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
    matrix: [i64; 4],
    lifting: Option<usize>,
    operator: DenseOperatorJsonOut,
}

#[derive(Serialize)]
struct LiftingsOut {
    hbar: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
    count: usize,
    liftings: Vec<LiftingJson>,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<torus_quant::error::Error> for Failure {
    fn from(e: torus_quant::error::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

/// Parses `M/N` or `M`; a note is returned when the fraction was not reduced.
fn parse_hbar(s: &str) -> Result<(PlanckConstant, Option<String>), Failure> {
    let s = s.trim();
    let (m, n) = match s.split_once('/') {
        Some((m, n)) => (m.trim().parse::<i64>(), n.trim().parse::<i64>()),
        None => (s.parse::<i64>(), Ok(1)),
    };
    let (Ok(m), Ok(n)) = (m, n) else {
        return usage(format!("malformed Planck constant {s:?}, expected M/N"));
    };
    let h = make_planck(m, n).map_err(|e| Failure::Usage(e.to_string()))?;
    if h.denominator() > MAX_N || h.numerator().abs() > MAX_COORD {
        return usage(format!(
            "Planck constant {h} out of range (N ≤ {MAX_N}, |M| ≤ {MAX_COORD})"
        ));
    }
    let note =
        (h.numerator() != m || h.denominator() != n).then(|| format!("normalized {m}/{n} to {h}"));
    Ok((h, note))
}

fn parse_xi(s: &str) -> Result<LatticeVector, Failure> {
    let xi: LatticeVector = s
        .parse()
        .map_err(|e: torus_quant::error::Error| Failure::Usage(e.to_string()))?;
    if xi.m.abs() > MAX_COORD || xi.n.abs() > MAX_COORD {
        return usage(format!(
            "lattice vector {xi} out of range (|m|, |n| ≤ {MAX_COORD})"
        ));
    }
    Ok(xi)
}

fn parse_matrix(s: &str) -> Result<GammaElement, Failure> {
    let b: GammaElement = s
        .parse()
        .map_err(|e: torus_quant::error::Error| Failure::Usage(e.to_string()))?;
    if b.max_abs_entry() > MAX_COORD as u64 {
        return usage(format!("matrix entries out of range (≤ {MAX_COORD})"));
    }
    Ok(b)
}

fn read_function(path: &PathBuf) -> Result<AlgebraElement, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    AlgebraElement::from_json_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Failure> {
    match out {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::Runtime(format!("{}: {e}", p.display())))
        }
        None => {
            println!("{}", text.trim_end());
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(value: &T, out: &Option<PathBuf>) -> Result<(), Failure> {
    let mut text = to_string_pretty(value);
    text.push('\n');
    emit(&text, out)
}

fn execute(cmd: Command) -> CmdResult {
    match cmd {
        Command::Rep { hbar, xi, out } => {
            let (h, note) = parse_hbar(&hbar)?;
            let xi = parse_xi(&xi)?;
            let mono = pi_monomial(h, xi);
            let rep = RepOut {
                hbar: h.to_string(),
                note,
                xi: [xi.m, xi.n],
                monomial: mono.to_json(),
                dense: mono.to_dense().to_json(),
            };
            emit_json(&rep, &out)?;
        }
        Command::Quantize { hbar, file, out } => {
            let (h, note) = parse_hbar(&hbar)?;
            let f = read_function(&file)?;
            let op = quantize(h, &f);
            let hermitian = op.hermiticity_defect() <= 1e-12 * op.max_abs().max(1.0);
            emit_json(
                &QuantizeOut {
                    hbar: h.to_string(),
                    note,
                    hermitian,
                    operator: op.to_json(),
                },
                &out,
            )?;
        }
        Command::Rho {
            hbar,
            matrix,
            lifting,
            out,
        } => {
            let (h, note) = parse_hbar(&hbar)?;
            let b = parse_matrix(&matrix)?;
            if let Some(k) = lifting {
                if k >= 12 {
                    return usage(format!("lifting index {k} out of range 0..12"));
                }
            }
            let op = match lifting {
                Some(k) => rho_linear(h, &lifting_by_index(h, k)?, &b)?,
                None => rho_projective(h, &b)?.phase_normalized(),
            };
            let rho = RhoOut {
                hbar: h.to_string(),
                note,
                matrix: b.entries(),
                lifting,
                operator: op.to_json(),
            };
            emit_json(&rho, &out)?;
        }
        Command::Verify {
            hbar,
            suite,
            seed,
            tol,
            out,
        } => {
            let (h, note) = parse_hbar(&hbar)?;
            let suite: Suite = suite
                .parse()
                .map_err(|e: torus_quant::error::Error| Failure::Usage(e.to_string()))?;
            if matches!(tol, Some(t) if t.is_nan() || t < 0.0) {
                return usage("tolerance must be a non-negative number");
            }
            let start = Instant::now();
            let mut outcome = run(suite, &VerifyConfig { h, seed, tol });
            outcome.note = note;
            // timing goes to stderr so stdout stays byte-stable
            eprintln!(
                "{} checks in {:.3} s",
                outcome.checks,
                start.elapsed().as_secs_f64()
            );
            emit_json(&outcome, &out)?;
            if !outcome.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Scan {
            f,
            g,
            hbar,
            format,
            out,
        } => {
            let hbars = match hbar {
                None => default_hbars(),
                Some(list) => {
                    let items: Vec<&str> = list
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .collect();
                    if items.is_empty() {
                        return usage("empty list of Planck constants");
                    }
                    let mut hs = Vec::new();
                    for item in items {
                        let (h, _) = parse_hbar(item)?;
                        if h.numerator() == 0 {
                            return usage("ℏ = 0 has no correspondence defect");
                        }
                        hs.push(h);
                    }
                    hs
                }
            };
            let (f, g) = (read_function(&f)?, read_function(&g)?);
            let report = scan(&f, &g, &hbars)?;
            match format {
                Format::Json => emit(&(report.to_json_string() + "\n"), &out)?,
                Format::Csv => emit(&report.to_csv(), &out)?,
            }
        }
        Command::Liftings { hbar, out } => {
            let (h, note) = parse_hbar(&hbar)?;
            let ls = enumerate_liftings(h)?;
            let liftings = ls.iter().map(|l| l.to_json()).collect();
            emit_json(
                &LiftingsOut {
                    hbar: h.to_string(),
                    note,
                    count: ls.len(),
                    liftings,
                },
                &out,
            )?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
