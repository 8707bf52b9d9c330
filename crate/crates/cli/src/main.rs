//! `ratlin`: build, solve, verify and realize rational eigenproblems through
//! JSON files.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input or usage error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use serde::Serialize;
use serde_json::Value;

use ratlin::basis::BasisKind;
use ratlin::io::{cx_to_json, MarkovJson, PencilJson, PoleResidueJson, RationalJson, SolveJson, SpJson};
use ratlin::linearize::{build_pencil, BuildOptions, Family};
use ratlin::random::{seeded_rational, InstanceSpec};
use ratlin::realize::{
    from_pole_residue, hermitian_from_hankel, symmetric_from_hankel, to_hermitian_realization, to_symmetric_realization,
};
use ratlin::solve::{cluster_tol, solve_rep, SolveOptions};
use ratlin::verify::{check_strong_linearization, match_eigenvalues, oracle_eigenvalues};
use ratlin::{CMatrix, CVector, Complex64, Config, RationalMatrixF64};

#[derive(Parser)]
#[command(name = "ratlin", version, about = "Strong linearizations of rational matrices")]
struct Cli {
    /// Relative singular-value cutoff for rank decisions.
    #[arg(long, global = true)]
    tol_rank: Option<f64>,
    /// Relative distance for clustering and matching eigenvalues.
    #[arg(long, global = true)]
    tol_eig: Option<f64>,
    /// Seed for sample points and random instances.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// JSON file with any of tol_rank, tol_eig, tol_residual, sample_points, seed.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a pencil for G and write it as JSON.
    Build {
        #[command(flatten)]
        target: Target,
        /// Output file (stdout if omitted).
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Build, solve and recover eigenvectors of G.
    Solve {
        #[command(flatten)]
        target: Target,
        /// Also recover left eigenvectors.
        #[arg(long)]
        left: bool,
        /// Output file (stdout if omitted).
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Check a pencil against G; exits 1 when any check fails.
    Verify {
        #[arg(long)]
        pencil: PathBuf,
        #[arg(long)]
        g: PathBuf,
        /// Report file (stdout if omitted).
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Realize pole-residue or Markov data in symmetric, Hermitian or plain form.
    Realize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Form::Auto)]
        form: Form,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Determinant-based reference spectrum of G.
    ///
    /// With --random, draws an instance from --seed instead, compares the
    /// oracle with the F pencil and exits 1 on a mismatch.
    Oracle {
        #[arg(long, required_unless_present = "random")]
        input: Option<PathBuf>,
        #[arg(long)]
        random: bool,
        #[arg(long, default_value = "monomial")]
        basis: String,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Target {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    /// Rational matrix JSON.
    #[arg(long)]
    input: PathBuf,
    /// Ansatz vector, JSON list of numbers or [re, im] pairs.
    #[arg(long)]
    v: Option<String>,
    /// Ansatz block H (km x (k-1)m), JSON nested list.
    #[arg(long = "H")]
    h: Option<String>,
    /// Real scaling for SYM and HERM pencils.
    #[arg(long)]
    mu: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Auto,
    Symmetric,
    Hermitian,
    StateSpace,
}

/// Carries the exit code with the message.
struct Failure(u8, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(2, e.to_string())
    }
}

type Outcome = Result<ExitCode, Failure>;

fn parse_family(s: &str) -> Result<Family, String> {
    Family::parse(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let cfg = load_config(&cli)?;
    match cli.command {
        Command::Build { target, output } => {
            let g = load_rational(&target.input, &cfg)?;
            let l = build_pencil(&g, target.family, &build_options(&target)?)?;
            info!("built {} pencil of size {}", target.family.name(), l.size());
            write_json(output.as_deref(), &PencilJson::from_pencil(&l))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve { target, left, json_out } => {
            let g = load_rational(&target.input, &cfg)?;
            let opts = SolveOptions { build: build_options(&target)?, left, tol_eig: cfg.tol_eig };
            let rep = solve_rep(&g, target.family, &opts)?;
            write_json(json_out.as_deref(), &SolveJson::from_report(&g, &rep)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { pencil, g, report } => {
            let l = read_json::<PencilJson>(&pencil)?.to_pencil()?;
            let g = load_rational(&g, &cfg)?;
            let rep = check_strong_linearization(&l, &g, &cfg);
            write_json(report.as_deref(), &rep.checks)?;
            if rep.passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                let failed: Vec<&str> = rep.checks.iter().filter(|c| !c.pass).map(|c| c.check.as_str()).collect();
                Err(Failure(1, format!("failed checks: {}", failed.join(", "))))
            }
        }
        Command::Realize { input, form, output } => {
            let out = realize(&read_json::<Value>(&input)?, form, cfg.tol_rank)?;
            write_json(output.as_deref(), &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { input, random, basis, k, m, n, output } => {
            if random {
                let spec = InstanceSpec {
                    basis: BasisKind::parse(&basis)?,
                    k,
                    m,
                    n,
                    structure: ratlin::ratmodel::Structure::General,
                };
                return oracle_smoke(&spec, &cfg, output.as_deref());
            }
            let path = input.ok_or_else(|| Failure(2, "--input is required".into()))?;
            let g = load_rational(&path, &cfg)?;
            write_json(output.as_deref(), &oracle_eigenvalues(&g, cfg.tol_eig)?)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn load_config(cli: &Cli) -> Result<Config, Failure> {
    let mut cfg = match &cli.config {
        Some(path) => read_json::<Config>(path)?,
        None => Config::default(),
    };
    if let Some(t) = cli.tol_rank {
        cfg.tol_rank = t;
    }
    if let Some(t) = cli.tol_eig {
        cfg.tol_eig = t;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(2, format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure(2, format!("{}: {e}", path.display())))
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value)?;
    match path {
        Some(p) => fs::write(p, text + "\n").map_err(|e| Failure(2, format!("{}: {e}", p.display()))),
        None => {
            use std::io::Write;
            match writeln!(std::io::stdout().lock(), "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure(2, format!("stdout: {e}"))),
                _ => Ok(()),
            }
        }
    }
}

fn load_rational(path: &Path, cfg: &Config) -> Result<RationalMatrixF64, Failure> {
    Ok(read_json::<RationalJson>(path)?.to_rational(cfg.tol_rank)?)
}

/// A number or an `[re, im]` pair.
fn scalar(v: &Value) -> Result<Complex64, Failure> {
    let num = |x: &Value| x.as_f64().ok_or_else(|| Failure(2, format!("expected a number, got {x}")));
    match v {
        Value::Array(p) if p.len() == 2 => Ok(Complex64::new(num(&p[0])?, num(&p[1])?)),
        other => Ok(Complex64::new(num(other)?, 0.0)),
    }
}

fn parse_vector(text: &str) -> Result<CVector, Failure> {
    let v: Vec<Value> = serde_json::from_str(text)?;
    let entries = v.iter().map(scalar).collect::<Result<Vec<_>, _>>()?;
    Ok(CVector::from_vec(entries))
}

fn parse_matrix(text: &str) -> Result<CMatrix, Failure> {
    let rows: Vec<Vec<Value>> = serde_json::from_str(text)?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Failure(2, "matrix rows have different lengths".into()));
    }
    let mut m = CMatrix::zeros(rows.len(), cols);
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            m[(i, j)] = scalar(x)?;
        }
    }
    Ok(m)
}

fn build_options(t: &Target) -> Result<BuildOptions<f64>, Failure> {
    Ok(BuildOptions {
        v: t.v.as_deref().map(parse_vector).transpose()?,
        h: t.h.as_deref().map(parse_matrix).transpose()?,
        mu: Complex64::new(t.mu.unwrap_or(1.0), 0.0),
        state: None,
    })
}

#[derive(Serialize)]
struct RealizationOut {
    n: usize,
    #[serde(flatten)]
    realization: SpJson,
}

fn realize(input: &Value, form: Form, tol: f64) -> Result<RealizationOut, Failure> {
    if input.get("markov").is_some() {
        let mk = serde_json::from_value::<MarkovJson>(input.clone())?.to_sequence()?;
        let n = mk.n;
        let sym = || symmetric_from_hankel(&mk, tol).map(|r| SpJson::from_symmetric(&r));
        let herm = || hermitian_from_hankel(&mk, tol).map(|r| SpJson::from_hermitian(&r));
        let realization = match form {
            Form::Symmetric => sym()?,
            Form::Hermitian => herm()?,
            Form::StateSpace => {
                return Err(Failure(2, "Markov data realizes in symmetric or Hermitian form only".into()))
            }
            Form::Auto => sym().or_else(|_| herm())?,
        };
        return Ok(RealizationOut { n, realization });
    }
    if input.get("poles").is_some() {
        let pr = serde_json::from_value::<PoleResidueJson>(input.clone())?.to_pole_residue()?;
        if pr.poles.is_empty() && pr.residues.is_empty() {
            return Ok(RealizationOut { n: 0, realization: SpJson::StateSpace { a: vec![], b: vec![], c: vec![] } });
        }
        let ss = from_pole_residue(&pr, tol)?;
        let sym = || to_symmetric_realization(&ss, tol).map(|r| SpJson::from_symmetric(&r));
        let herm = || to_hermitian_realization(&ss, tol).map(|r| SpJson::from_hermitian(&r));
        let realization = match form {
            Form::Symmetric => sym()?,
            Form::Hermitian => herm()?,
            Form::StateSpace => SpJson::from_state_space(&ss),
            Form::Auto => sym().or_else(|_| herm()).unwrap_or_else(|_| SpJson::from_state_space(&ss)),
        };
        return Ok(RealizationOut { n: ss.n(), realization });
    }
    Err(Failure(2, "input has neither \"markov\" nor \"poles\"".into()))
}

#[derive(Serialize)]
struct SmokeOut {
    instance: RationalJson,
    oracle: Vec<[f64; 2]>,
    pencil: Vec<[f64; 2]>,
    unmatched_oracle: usize,
    unmatched_pencil: usize,
    worst_distance: f64,
}

fn oracle_smoke(spec: &InstanceSpec, cfg: &Config, output: Option<&Path>) -> Outcome {
    let g = seeded_rational(cfg.seed, spec)?;
    let oracle = oracle_eigenvalues(&g, cfg.tol_eig)?.finite_c::<f64>();
    let opts = SolveOptions { tol_eig: cfg.tol_eig, ..SolveOptions::default() };
    let pencil = solve_rep(&g, Family::F, &opts)?.solution.eigenvalues(true);
    let (pairs, lo, lp) = match_eigenvalues(&oracle, &pencil, cluster_tol(cfg.tol_eig));
    let out = SmokeOut {
        instance: RationalJson::from_rational(&g),
        oracle: oracle.iter().copied().map(cx_to_json).collect(),
        pencil: pencil.iter().copied().map(cx_to_json).collect(),
        unmatched_oracle: lo.len(),
        unmatched_pencil: lp.len(),
        worst_distance: pairs.iter().map(|p| p.distance).fold(0.0, f64::max),
    };
    write_json(output, &out)?;
    if lo.is_empty() && lp.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        Err(Failure(1, format!("{} oracle and {} pencil eigenvalues unmatched", lo.len(), lp.len())))
    }
}
