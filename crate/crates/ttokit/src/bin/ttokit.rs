use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;
use ttokit::directsum::{kernel_decompose, sufficient_word_len, unitary_equiv_check, EquivVerdict};
use ttokit::scenario::{self, CheckKind, Settings, DEFAULT_TOLERANCE};
use ttokit::tto::{matrix_from_rows, matrix_to_rows, TtoMatrix};
use ttokit::{BlaschkeProduct, CircleRational, ModelBasis, Quadrature};

#[derive(Parser)]
#[command(name = "ttokit", version, about = "Truncated Toeplitz operators on model spaces")]
struct Cli {
    /// Relative residual tolerance for scenarios that do not set their own.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    /// Seed for `generate`.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Worker threads for `run`.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Largest circle quadrature order.
    #[arg(long, global = true, default_value_t = 1 << 18)]
    quadrature_max: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file or a directory of scenario files; one JSON report per line.
    Run { path: PathBuf },
    /// Write reproducible random scenarios.
    Generate {
        #[arg(long)]
        kind: CheckKind,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value = "scenarios")]
        out: PathBuf,
    },
    /// Trace-word unitary equivalence test of two matrix files.
    EquivCheck {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        max_word_len: Option<usize>,
    },
    /// Print the matrix of A^Θ_φ.
    BuildTto {
        /// Θ as JSON text, or @file.
        #[arg(long)]
        theta: String,
        /// φ as JSON text, or @file.
        #[arg(long)]
        phi: String,
    },
    /// Kernel of an analytic TTO and the divisor u with K_Θ ⊖ ker = K_u.
    KernelDecompose {
        #[arg(long)]
        theta: String,
        #[arg(long)]
        phi: String,
    },
}

fn read_arg(arg: &str) -> Result<String, String> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}")),
        None => Ok(arg.to_string()),
    }
}

fn parse<T: serde::de::DeserializeOwned>(arg: &str, what: &str) -> Result<T, String> {
    serde_json::from_str(&read_arg(arg)?).map_err(|e| format!("{what}: {e}"))
}

fn execute(cli: Cli) -> Result<bool, String> {
    let quadrature = Quadrature {
        max: cli.quadrature_max,
        ..Quadrature::from_env()
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let emit = |out: &mut std::io::StdoutLock, v: &serde_json::Value| writeln!(out, "{v}").map_err(|e| e.to_string());
    match cli.command {
        Command::Run { path } => {
            let scenarios = scenario::load_scenarios(&path).map_err(|e| e.to_string())?;
            let settings = Settings {
                tolerance: cli.tolerance,
                quadrature,
            };
            let reports = scenario::run_all(&scenarios, &settings, cli.jobs).map_err(|e| e.to_string())?;
            for r in &reports {
                writeln!(out, "{}", serde_json::to_string(r).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            }
            Ok(reports.iter().all(|r| r.pass))
        }
        Command::Generate {
            kind,
            count,
            max_degree,
            out: dir,
        } => {
            let items = scenario::generate(kind, count, cli.seed, max_degree).map_err(|e| e.to_string())?;
            for p in scenario::write_generated(&dir, &items).map_err(|e| e.to_string())? {
                writeln!(out, "{}", p.display()).map_err(|e| e.to_string())?;
            }
            Ok(true)
        }
        Command::EquivCheck { a, b, max_word_len } => {
            let load = |p: &PathBuf| -> Result<_, String> {
                let rows: Vec<Vec<[f64; 2]>> = parse(&format!("@{}", p.display()), &p.display().to_string())?;
                matrix_from_rows(&rows).map_err(|e| e.to_string())
            };
            let (ma, mb) = (load(&a)?, load(&b)?);
            let len = max_word_len.unwrap_or_else(|| sufficient_word_len(ma.nrows()));
            let verdict = unitary_equiv_check(&ma, &mb, len);
            emit(&mut out, &json!({ "verdict": verdict, "max_word_len": len }))?;
            Ok(verdict == EquivVerdict::Equivalent)
        }
        Command::BuildTto { theta, phi } => {
            let theta: BlaschkeProduct = parse(&theta, "theta")?;
            let phi: CircleRational = parse(&phi, "phi")?;
            let basis = ModelBasis::new(&theta, quadrature).map_err(|e| e.to_string())?;
            let tto = TtoMatrix::build(&basis, &phi).map_err(|e| e.to_string())?;
            emit(&mut out, &tto.to_json())?;
            Ok(true)
        }
        Command::KernelDecompose { theta, phi } => {
            let theta: BlaschkeProduct = parse(&theta, "theta")?;
            let phi: CircleRational = parse(&phi, "phi")?;
            let d = kernel_decompose(&theta, &phi, quadrature).map_err(|e| e.to_string())?;
            emit(
                &mut out,
                &json!({
                    "u": d.u,
                    "kernel_dim": d.kernel_dim,
                    "kernel": matrix_to_rows(&d.kernel),
                    "projection_residual": d.projection_residual,
                    "divisibility_residual": d.divisibility_residual,
                    "singular_values": d.singular_values,
                }),
            )?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
