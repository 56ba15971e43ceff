//! `geospectra` command-line front end.

mod refs;
mod verify;

use clap::{Args, Parser, Subcommand};
use geospectra::bounds::{bound_curve, write_merged_csv};
use geospectra::simulator::write_fer_csv;
use geospectra::spectra::Spectrum;
use geospectra::{
    estimate_fer, parse_grid, select_references, teef, tref, wef, BoundKind, GridUnit, LinearCode,
    ReferenceChoice, ReferenceStrategy, SimConfig, Trellis, TxPolicy,
};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Library(#[from] geospectra::Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Library(_) => 2,
            CliError::Io(_) | CliError::Failed(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "geospectra",
    version,
    about = "Geometric spectra and union-type bounds for linear block codes"
)]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weight, triangle or tetrahedron enumerator as JSON.
    Spectrum(SpectrumArgs),
    /// Union, triangle and tetrahedron bound curves as CSV.
    Bounds(BoundsArgs),
    /// Monte Carlo frame-error rates under ML decoding as CSV.
    Simulate(SimulateArgs),
    /// Runs the oracle cross-checks and prints a JSON report.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Serialize)]
struct SpectrumArgs {
    /// Built-in name (hamming74, simplex73, rep<n>) or generator matrix file.
    #[arg(long)]
    code: String,
    #[arg(long, value_parser = ["wef", "tref", "teef"])]
    kind: String,
    /// min-weight, index:N or symbols:a,b,...
    #[arg(long)]
    ref1: Option<String>,
    #[arg(long)]
    ref2: Option<String>,
    /// Include the trellis state and branch profile.
    #[arg(long)]
    profile: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct BoundsArgs {
    #[arg(long)]
    code: String,
    #[arg(long, value_parser = ["union", "triangle", "tetra", "all"])]
    bound: String,
    /// start:stop:step (inclusive) or a single value.
    #[arg(long)]
    grid: String,
    #[arg(long, default_value = "ebn0-db", value_parser = ["ebn0-db", "sigma"])]
    unit: String,
    /// auto (minimum weight), exhaustive, or explicit with --ref1/--ref2.
    #[arg(long, default_value = "auto", value_parser = ["auto", "exhaustive", "explicit"])]
    refs: String,
    #[arg(long)]
    ref1: Option<String>,
    #[arg(long)]
    ref2: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct SimulateArgs {
    #[arg(long)]
    code: String,
    #[arg(long)]
    grid: String,
    #[arg(long, default_value = "ebn0-db", value_parser = ["ebn0-db", "sigma"])]
    unit: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = geospectra::simulator::DEFAULT_MAX_FRAMES)]
    max_frames: u64,
    #[arg(long, default_value_t = geospectra::simulator::DEFAULT_TARGET_ERRORS)]
    target_errors: u64,
    #[arg(long, default_value = "all-zero", value_parser = ["all-zero", "random"])]
    policy: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    #[arg(long)]
    pub code: Option<String>,
    /// Number of random codes over GF(2), GF(3) and GF(5) to add.
    #[arg(long, default_value_t = 0)]
    pub random_codes: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random reference choices and probability configurations per code.
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    /// Monte Carlo samples per probability cross-check.
    #[arg(long, default_value_t = 200_000)]
    pub mc_samples: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct CodeInfo {
    id: String,
    q: u32,
    n: usize,
    k: usize,
    fingerprint: String,
}

#[derive(Serialize)]
struct Manifest<'a, P: Serialize> {
    subcommand: &'static str,
    params: &'a P,
    code: Option<CodeInfo>,
    version: &'static str,
    seed: Option<u64>,
    threads: Option<usize>,
    outputs: Vec<String>,
}

pub fn load_code(source: &str) -> CliResult<LinearCode> {
    let path = Path::new(source);
    if path.is_file() {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {source}: {e}")))?;
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or(source);
        return Ok(LinearCode::parse(name, &text)?);
    }
    LinearCode::builtin(source)
        .map_err(|_| CliError::Input(format!("`{source}` is neither a file nor a built-in code")))
}

fn code_info(code: &LinearCode) -> CodeInfo {
    CodeInfo {
        id: code.name().to_string(),
        q: code.q(),
        n: code.n(),
        k: code.k(),
        fingerprint: hex::encode(Sha256::digest(code.to_text().as_bytes())),
    }
}

/// Writes `body` to `out`, or to stdout when no path is given.
fn emit(out: Option<&Path>, body: &[u8]) -> CliResult<()> {
    match out {
        Some(p) => fs::write(p, body)?,
        None => io::stdout().lock().write_all(body)?,
    }
    Ok(())
}

fn write_manifest<P: Serialize>(
    out: Option<&Path>,
    subcommand: &'static str,
    params: &P,
    code: Option<&LinearCode>,
    seed: Option<u64>,
    threads: Option<usize>,
    outputs: &[PathBuf],
) -> CliResult<()> {
    let Some(out) = out else { return Ok(()) };
    let manifest = Manifest {
        subcommand,
        params,
        code: code.map(code_info),
        version: env!("CARGO_PKG_VERSION"),
        seed,
        threads,
        outputs: outputs.iter().map(|p| p.display().to_string()).collect(),
    };
    let mut path = out.as_os_str().to_owned();
    path.push(".manifest.json");
    let body = serde_json::to_vec_pretty(&manifest).map_err(|e| CliError::Failed(e.to_string()))?;
    fs::write(PathBuf::from(path), body)?;
    Ok(())
}

fn grid_unit(s: &str) -> CliResult<GridUnit> {
    Ok(s.parse()?)
}

fn run_spectrum(args: &SpectrumArgs, threads: Option<usize>) -> CliResult<()> {
    let code = load_code(&args.code)?;
    let trellis = Trellis::build(&code);
    let need = match args.kind.as_str() {
        "wef" => 0,
        "tref" => 1,
        _ => 2,
    };
    let given = [&args.ref1, &args.ref2]
        .iter()
        .filter(|r| r.is_some())
        .count();
    if args.ref2.is_some() && args.ref1.is_none() || given > need {
        return Err(CliError::Input(format!(
            "`{}` takes {need} reference codeword(s)",
            args.kind
        )));
    }
    let forms = [args.ref1.as_deref(), args.ref2.as_deref()];
    let refs = refs::resolve(&code, &forms[..need])?;
    let spectrum: Spectrum = match need {
        0 => wef(&trellis)?.into(),
        1 => tref(&trellis, &refs[0])?.into(),
        _ => teef(&trellis, &refs[0], &refs[1])?.into(),
    };
    let profile = args.profile.then(|| trellis.profile());
    let mut body = serde_json::to_vec_pretty(&spectrum.to_json(profile.as_ref()))
        .map_err(|e| CliError::Failed(e.to_string()))?;
    body.push(b'\n');
    let out = args.out.as_deref();
    emit(out, &body)?;
    let outputs: Vec<PathBuf> = out.map(Path::to_path_buf).into_iter().collect();
    write_manifest(out, "spectrum", args, Some(&code), None, threads, &outputs)
}

fn bound_references(
    code: &LinearCode,
    args: &BoundsArgs,
    kind: BoundKind,
    grid: &[f64],
    unit: GridUnit,
) -> CliResult<Option<ReferenceChoice>> {
    let count = kind.reference_count();
    if count == 0 {
        return Ok(None);
    }
    let explicit = args.refs == "explicit" || args.ref1.is_some() || args.ref2.is_some();
    let strategy = if explicit {
        if args.refs != "explicit" && args.refs != "auto" {
            return Err(CliError::Input(
                "--ref1/--ref2 require --refs explicit".into(),
            ));
        }
        let forms = [args.ref1.as_deref(), args.ref2.as_deref()];
        if forms[..count].iter().any(Option::is_none) {
            return Err(CliError::Input(format!(
                "the {} bound needs {count} explicit reference(s)",
                kind.name()
            )));
        }
        ReferenceStrategy::Explicit(refs::resolve(code, &forms[..count])?)
    } else if args.refs == "exhaustive" {
        let mid = grid[grid.len() / 2];
        ReferenceStrategy::ExhaustiveBest(unit.noise(mid, code.n(), code.k())?)
    } else {
        ReferenceStrategy::MinWeight
    };
    Ok(Some(select_references(code, count, &strategy)?))
}

fn sibling(out: &Path, tag: &str) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("bounds");
    let ext = out.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    out.with_file_name(format!("{stem}.{tag}.{ext}"))
}

fn run_bounds(args: &BoundsArgs, threads: Option<usize>) -> CliResult<()> {
    let code = load_code(&args.code)?;
    let grid = parse_grid(&args.grid)?;
    let unit = grid_unit(&args.unit)?;
    let kinds = match args.bound.as_str() {
        "all" => vec![
            BoundKind::Union,
            BoundKind::Triangle,
            BoundKind::Tetrahedron,
        ],
        k => vec![k.parse::<BoundKind>()?],
    };
    let mut curves = Vec::new();
    for &kind in &kinds {
        let refs = bound_references(&code, args, kind, &grid, unit)?;
        curves.push(bound_curve(&code, kind, refs.as_ref(), &grid, unit)?);
    }
    let out = args.out.as_deref();
    let mut outputs = Vec::new();
    if curves.len() == 1 {
        let mut body = Vec::new();
        curves[0].write_csv(&mut body)?;
        emit(out, &body)?;
        outputs.extend(out.map(Path::to_path_buf));
    } else {
        if let Some(out) = out {
            for c in &curves {
                let path = sibling(out, c.kind.name());
                let mut body = Vec::new();
                c.write_csv(&mut body)?;
                fs::write(&path, body)?;
                outputs.push(path);
            }
            outputs.push(out.to_path_buf());
        }
        let mut merged = Vec::new();
        write_merged_csv(&curves, &mut merged)?;
        emit(out, &merged)?;
    }
    write_manifest(out, "bounds", args, Some(&code), None, threads, &outputs)
}

fn run_simulate(args: &SimulateArgs, threads: Option<usize>) -> CliResult<()> {
    let code = load_code(&args.code)?;
    let grid = parse_grid(&args.grid)?;
    let unit = grid_unit(&args.unit)?;
    let sigmas = grid
        .iter()
        .map(|&g| unit.noise(g, code.n(), code.k()).map(|nm| nm.sigma()))
        .collect::<Result<Vec<f64>, _>>()?;
    let mut cfg = SimConfig::new(sigmas, args.seed);
    cfg.max_frames = args.max_frames;
    cfg.target_errors = args.target_errors;
    cfg.policy = args.policy.parse::<TxPolicy>()?;
    let estimates = estimate_fer(&code, &cfg)?;
    let mut body = Vec::new();
    write_fer_csv(&estimates, &mut body)?;
    let out = args.out.as_deref();
    emit(out, &body)?;
    let outputs: Vec<PathBuf> = out.map(Path::to_path_buf).into_iter().collect();
    write_manifest(
        out,
        "simulate",
        args,
        Some(&code),
        Some(args.seed),
        threads,
        &outputs,
    )
}

fn run_verify(args: &VerifyArgs, threads: Option<usize>) -> CliResult<()> {
    let code = args.code.as_deref().map(load_code).transpose()?;
    if code.is_none() && args.random_codes == 0 {
        return Err(CliError::Input(
            "give --code, --random-codes, or both".into(),
        ));
    }
    if args.trials == 0 {
        return Err(CliError::Input("--trials must be at least 1".into()));
    }
    let report = verify::run(code.as_ref(), args)?;
    let mut body =
        serde_json::to_vec_pretty(&report).map_err(|e| CliError::Failed(e.to_string()))?;
    body.push(b'\n');
    let out = args.out.as_deref();
    emit(out, &body)?;
    let outputs: Vec<PathBuf> = out.map(Path::to_path_buf).into_iter().collect();
    write_manifest(
        out,
        "verify",
        args,
        code.as_ref(),
        Some(args.seed),
        threads,
        &outputs,
    )?;
    if report.passed {
        Ok(())
    } else {
        Err(CliError::Failed(format!(
            "{} verification check(s) failed",
            report.summary.fail
        )))
    }
}

fn dispatch(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Spectrum(a) => run_spectrum(a, cli.threads),
        Command::Bounds(a) => run_bounds(a, cli.threads),
        Command::Simulate(a) => run_simulate(a, cli.threads),
        Command::Verify(a) => run_verify(a, cli.threads),
    }
}

#[cfg(feature = "parallel")]
fn run(cli: &Cli) -> CliResult<()> {
    match cli.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::Failed(e.to_string()))?
            .install(|| dispatch(cli)),
        None => dispatch(cli),
    }
}

#[cfg(not(feature = "parallel"))]
fn run(cli: &Cli) -> CliResult<()> {
    dispatch(cli)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads == Some(0) {
        eprintln!("error: --threads must be at least 1");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
