use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use qgft::fourier::{convolve, convolve_direct, convolve_dual, convolve_dual_direct, fourier, inverse_fourier, pairing};
use qgft::io::{parse_group, read_function, read_unitary, write_text, IoError, MatrixFile};
use qgft::linalg::Tolerance;
use qgft::models::{dft_compare, GroupFunction, GroupModel};
use qgft::suite::{verify, ModelSource, SuiteConfig, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "qgft", version, about = "Fourier analysis on finite quantum groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full verification suite and write a JSON report.
    Verify(VerifyArgs),
    /// Fourier transform of a function, or the inverse transform of a coefficient function.
    Fourier(FourierArgs),
    /// Convolution of two functions, computed two ways and cross-checked.
    Convolve(ConvolveArgs),
    /// Dual pairing of a function with a coefficient function by every route.
    Pair(PairArgs),
    /// Compare the transform of a function on an abelian group with its character sums.
    DftCompare(DftArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Group shorthand (cyclic:<n>, dihedral:<m>, s3, s4, product:<a>x<b>, ...) or a Cayley table file.
    #[arg(long)]
    group: Option<String>,
    /// JSON file holding a dense W on H ⊗ H.
    #[arg(long)]
    unitary: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: Source,
    /// Absolute and relative tolerance of every numerical check.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Random draws per sampled check.
    #[arg(long, default_value_t = 20)]
    samples: usize,
    /// Report zero elapsed times so that reports are byte-identical.
    #[arg(long)]
    deterministic: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FourierArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    function: PathBuf,
    /// Treat the function as coefficients of L_b and apply the inverse transform.
    #[arg(long)]
    inverse: bool,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConvolveArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    c: PathBuf,
    /// Convolve on the dual side (pointwise product for a group).
    #[arg(long)]
    dual: bool,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct DftArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    function: PathBuf,
    #[arg(long)]
    tol: Option<f64>,
}

/// A failure and the exit code it maps to.
enum Failure {
    /// Input could not be loaded or validated.
    Input(String),
    /// A check ran and did not pass.
    Check(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn input<E: ToString>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn tolerance(tol: Option<f64>) -> Result<Tolerance, Failure> {
    let t = tol.unwrap_or(Tolerance::default().absolute);
    Tolerance::new(t, t).map_err(input)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => Ok(write_text(path, text)?),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data")
}

fn load_model(spec: &str) -> Result<GroupModel, Failure> {
    Ok(GroupModel::build(parse_group(spec)?))
}

fn load_function(model: &GroupModel, path: &Path) -> Result<GroupFunction, Failure> {
    let f = read_function(path)?;
    model.check_len(&f).map_err(input)?;
    Ok(f)
}

fn run_verify(args: VerifyArgs) -> Result<(), Failure> {
    let tol = tolerance(Some(args.tol))?;
    let (name, source) = match (args.source.group, args.source.unitary) {
        (Some(spec), _) => {
            let group = parse_group(&spec)?;
            (spec, ModelSource::Group(group))
        }
        (None, Some(path)) => {
            let mu = read_unitary(&path)?;
            (path.display().to_string(), ModelSource::Unitary(mu))
        }
        (None, None) => return Err(Failure::Input("either --group or --unitary is required".into())),
    };
    let config = SuiteConfig {
        tol,
        seed: args.seed,
        samples: args.samples,
        deterministic: args.deterministic,
    };
    let report = verify(&name, &source, config);
    emit(args.out.as_deref(), &report.to_json())?;
    match report.first_failure() {
        None => {
            eprintln!("{}: all {} checks passed", name, report.checks.len());
            Ok(())
        }
        Some(c) => Err(Failure::Check(format!(
            "check `{}` failed: deviation {:e} exceeds tolerance {:e}",
            c.name, c.deviation, c.tolerance
        ))),
    }
}

#[derive(Serialize)]
struct TransformOutput {
    matrix: MatrixFile,
    function: GroupFunction,
}

fn run_fourier(args: FourierArgs) -> Result<(), Failure> {
    let tol = tolerance(args.tol)?;
    let model = load_model(&args.group)?;
    let f = load_function(&model, &args.function)?;
    let qg = model.qg();
    let output = if args.inverse {
        let m = inverse_fourier(qg, &model.l(&f).map_err(input)?, tol).map_err(input)?;
        TransformOutput {
            function: model.function_of_pi(&m),
            matrix: MatrixFile::from_matrix(model.order(), &m),
        }
    } else {
        let m = fourier(qg, &model.pi(&f).map_err(input)?, tol).map_err(input)?;
        TransformOutput {
            function: model.function_of_l(&m),
            matrix: MatrixFile::from_matrix(model.order(), &m),
        }
    };
    emit(args.out.as_deref(), &to_json(&output))
}

fn run_convolve(args: ConvolveArgs) -> Result<(), Failure> {
    let tol = tolerance(args.tol)?;
    let model = load_model(&args.group)?;
    let a = load_function(&model, &args.a)?;
    let c = load_function(&model, &args.c)?;
    let qg = model.qg();
    let (result, direct, function) = if args.dual {
        let (b, d) = (model.l(&a).map_err(input)?, model.l(&c).map_err(input)?);
        let result = convolve_dual(qg, &b, &d, tol).map_err(input)?;
        let direct = convolve_dual_direct(qg, &b, &d, tol).map_err(input)?;
        let function = model.function_of_l(&result);
        (result, direct, function)
    } else {
        let (x, y) = (model.pi(&a).map_err(input)?, model.pi(&c).map_err(input)?);
        let result = convolve(qg, &x, &y, tol).map_err(input)?;
        let direct = convolve_direct(qg, &x, &y, tol).map_err(input)?;
        let function = model.function_of_pi(&result);
        (result, direct, function)
    };
    let deviation = result.max_abs_diff(&direct);
    let limit = tol.absolute + tol.relative * result.max_abs();
    if deviation > limit {
        return Err(Failure::Check(format!(
            "check `convolution_agreement` failed: routes differ by {deviation:e} (tolerance {limit:e})"
        )));
    }
    emit(args.out.as_deref(), &to_json(&function))
}

#[derive(Serialize)]
struct PairOutput {
    via_inverse: Complex64,
    via_forward: Complex64,
    via_w: Complex64,
    sum: Complex64,
    spread: f64,
}

fn run_pair(args: PairArgs) -> Result<(), Failure> {
    let tol = tolerance(args.tol)?;
    let model = load_model(&args.group)?;
    let a = load_function(&model, &args.a)?;
    let b = load_function(&model, &args.b)?;
    let p = pairing(model.qg(), &model.l(&b).map_err(input)?, &model.pi(&a).map_err(input)?, tol).map_err(input)?;
    let sum = model.pairing_sum(&a, &b);
    emit(
        None,
        &to_json(&PairOutput {
            via_inverse: p.via_inverse,
            via_forward: p.via_forward,
            via_w: p.via_w,
            sum,
            spread: p.spread,
        }),
    )?;
    let off = (p.via_inverse - sum).norm().max(p.spread);
    let limit = tol.absolute + tol.relative * sum.norm();
    if off > limit {
        return Err(Failure::Check(format!("check `pairing_spread` failed: {off:e} exceeds {limit:e}")));
    }
    Ok(())
}

#[derive(Serialize)]
struct DftOutput {
    diagonal: Vec<Complex64>,
    character_sums: Vec<Complex64>,
    off_diagonal: f64,
    deviation: f64,
    tolerance: f64,
    pass: bool,
}

fn run_dft(args: DftArgs) -> Result<(), Failure> {
    let tol = tolerance(args.tol)?;
    let model = load_model(&args.group)?;
    let f = load_function(&model, &args.function)?;
    let report = dft_compare(&model, &f, tol).map_err(input)?;
    let check = report.check(tol);
    emit(
        None,
        &to_json(&DftOutput {
            diagonal: report.diagonal,
            character_sums: report.character_sums,
            off_diagonal: report.off_diagonal,
            deviation: check.deviation,
            tolerance: check.tolerance,
            pass: check.pass,
        }),
    )?;
    if !check.pass {
        return Err(Failure::Check(format!(
            "check `dft_oracle` failed: deviation {:e} exceeds {:e}",
            check.deviation, check.tolerance
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(args) => run_verify(args),
        Command::Fourier(args) => run_fourier(args),
        Command::Convolve(args) => run_convolve(args),
        Command::Pair(args) => run_pair(args),
        Command::DftCompare(args) => run_dft(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
