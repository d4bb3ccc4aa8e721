mod compute;
mod config;
mod error;
mod figures;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ibreg_core::gaussian::Encoder;
use ibreg_core::search::{check_inclusion, Inclusion};
use serde::Serialize;

use config::{CurveRequest, Grid, Params, Quantity};
use error::{CliError, CliResult};
use output::Format;

/// Complexity-relevance curves for collaborative information bottleneck
/// models.
#[derive(Parser)]
#[command(name = "ibreg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one curve.
    Curve(CurveArgs),
    /// Check that curve A lies below curve B; exits 1 when it does not.
    Compare(CompareArgs),
    /// Write the fig3, fig4 and fig6 data sets into a directory.
    Figures(FiguresArgs),
    /// Parse and validate a model or request file.
    Validate(ValidateArgs),
}

/// Request fields settable from the command line; they override a request
/// file given through `--model`.
#[derive(Args, Clone)]
struct RequestArgs {
    /// Model file, or a full request file with `model`, `quantity` and `grid`.
    #[arg(long)]
    model: Option<PathBuf>,
    /// Sweep `min:max:n` of the free variable.
    #[arg(long)]
    grid: Option<Grid>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    budget: Option<u64>,
    /// Fixed second rate of a Gaussian distributed curve.
    #[arg(long)]
    r2: Option<f64>,
    /// Fixed relevance of an (R1, R2) trade-off curve.
    #[arg(long)]
    level: Option<f64>,
    /// Link of a two-way rate curve.
    #[arg(long, value_parser = parse_encoder)]
    encoder: Option<Encoder>,
    /// First description rate of the interactive search.
    #[arg(long)]
    r1: Option<f64>,
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long, value_enum)]
    quantity: Option<Quantity>,
    #[command(flatten)]
    request: RequestArgs,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct CompareArgs {
    /// Quantity name (using the shared flags) or request file of the inner curve.
    inner: String,
    /// Quantity name or request file of the outer curve.
    outer: String,
    #[command(flatten)]
    request: RequestArgs,
    #[arg(long, default_value_t = 0.0)]
    tol: f64,
    /// Verdict file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FiguresArgs {
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 200_000)]
    budget: u64,
    /// Points per curve.
    #[arg(long, default_value_t = 101)]
    points: usize,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    model: PathBuf,
}

fn parse_encoder(s: &str) -> Result<Encoder, String> {
    match s {
        "1" | "one" => Ok(Encoder::One),
        "2" | "two" => Ok(Encoder::Two),
        _ => Err(format!("encoder must be 1 or 2, got `{s}`")),
    }
}

impl RequestArgs {
    /// Merges the flags into the request file (if any) for `quantity`.
    fn request(&self, quantity: Option<Quantity>) -> CliResult<CurveRequest> {
        let path = self.model.as_deref().ok_or_else(|| CliError::Config("--model is required".into()))?;
        let (model, file) = config::read_model_or_request(path)?;
        let flags = Params { r2: self.r2, level: self.level, encoder: self.encoder, r1: self.r1 };
        let quantity = quantity
            .or(file.as_ref().map(|r| r.quantity))
            .ok_or_else(|| CliError::Config("no quantity: pass --quantity or use a request file".into()))?;
        let grid = self
            .grid
            .or(file.as_ref().map(|r| r.grid))
            .ok_or_else(|| CliError::Config("no grid: pass --grid min:max:n or use a request file".into()))?;
        let params = file.as_ref().map(|r| r.params).unwrap_or_default().merged(flags);
        let req = CurveRequest {
            model,
            quantity,
            grid,
            seed: self.seed.or(file.as_ref().and_then(|r| r.seed)),
            budget: self.budget.or(file.as_ref().and_then(|r| r.budget)),
            params,
        };
        req.validate()?;
        Ok(req)
    }

    /// A compare operand: a quantity name uses the shared flags (seed and
    /// budget only when it is stochastic), anything else is read as a
    /// request file.
    fn operand(&self, arg: &str) -> CliResult<CurveRequest> {
        match clap::ValueEnum::from_str(arg, false) {
            Ok(q @ Quantity::MuInt) => self.request(Some(q)),
            Ok(q) => RequestArgs { seed: None, budget: None, ..self.clone() }.request(Some(q)),
            Err(_) => {
                let path = Path::new(arg);
                if !path.exists() {
                    return Err(CliError::Config(format!("`{arg}` is neither a quantity nor a request file")));
                }
                let req: CurveRequest = config::read_json(path)?;
                req.validate()?;
                Ok(req)
            }
        }
    }
}

#[derive(Serialize)]
struct Verdict {
    inner: String,
    outer: String,
    #[serde(flatten)]
    inclusion: Inclusion,
}

fn curve(args: &CurveArgs) -> CliResult<ExitCode> {
    let req = args.request.request(args.quantity)?;
    let c = compute::run(&req)?;
    output::emit(&c.curve, &c.xy, args.out.as_deref(), args.format)?;
    Ok(ExitCode::SUCCESS)
}

fn compare(args: &CompareArgs) -> CliResult<ExitCode> {
    let a = compute::run(&args.request.operand(&args.inner)?)?.curve;
    let b = compute::run(&args.request.operand(&args.outer)?)?.curve;
    let inclusion = check_inclusion(&a, &b, args.tol)?;
    let holds = inclusion.holds;
    let verdict = Verdict { inner: a.method, outer: b.method, inclusion };
    let json = output::pretty_json(&verdict);
    match &args.out {
        Some(path) => output::write_file(path, &json)?,
        None => output::print(&json)?,
    }
    Ok(if holds { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn validate(args: &ValidateArgs) -> CliResult<ExitCode> {
    let (model, req) = config::read_model_or_request(&args.model)?;
    if let Some(r) = &req {
        r.validate()?;
    }
    let summary = figures::summary(&model)?;
    let mut out = serde_json::json!({ "valid": true, "kind": model.kind(), "summary": summary });
    if let Some(r) = req {
        out["quantity"] = serde_json::json!(r.quantity.name());
    }
    output::print(&output::pretty_json(&out))?;
    Ok(ExitCode::SUCCESS)
}

/// Sizes the global rayon pool from `IBREG_THREADS` when set.
fn init_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("IBREG_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Config(format!("IBREG_THREADS must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))
}

fn dispatch(cli: &Cli) -> CliResult<ExitCode> {
    init_threads()?;
    match &cli.command {
        Command::Curve(a) => curve(a),
        Command::Compare(a) => compare(a),
        Command::Figures(a) => figures::run(&a.out, a.seed, a.budget, a.points).map(|_| ExitCode::SUCCESS),
        Command::Validate(a) => validate(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
