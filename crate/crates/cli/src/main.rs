//! Command-line front end: point evaluation, norm scans, radial
//! profiles, divergence witnesses, single checks, and batch reports.
//!
//! Exit codes: 0 on success (and on passing checks), 1 when a check,
//! report, or witness search comes back negative, 2 on usage and domain
//! errors. Complex values are read and written in `a+bi` form.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use presch::{
    default_config, default_domain_id, divergence_witness, domain_from_id, format_complex,
    map_from_id, norm_estimate_with, parse_complex, pre_schwarzian, profile_to_csv,
    radial_profile, run_check, run_report, weighted_modulus, CheckSpec, Domain64, DomainModel,
    GridSpec, Map64, ReportConfig, Weight,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "presch", version, about = "Pre-Schwarzian toolkit for planar harmonic maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate J, omega, and P of a catalog map at one point
    Eval(EvalArgs),
    /// Estimate the weighted supremum norm over a domain
    Norm(NormArgs),
    /// Emit weighted-modulus samples along a ray as CSV
    Profile(ProfileArgs),
    /// Search for a point where the weighted modulus exceeds a threshold
    Witness(WitnessArgs),
    /// Run a single named check
    Check(CheckArgs),
    /// Run a batch of checks from a JSON config
    Report(ReportArgs),
}

#[derive(Args)]
struct Target {
    /// Map ID: koebe, half-plane-L, k-alpha:{a}, f-alpha:{a}:{b1}, f-k:{k}:{a},
    /// ext-counter, slit-example, remark3, identity, recip
    #[arg(long)]
    map: String,
    /// Domain ID: disk, half-plane, exterior, punctured-disk, slit-plane,
    /// riemann:{chart}; defaults to the map's home domain
    #[arg(long)]
    domain: Option<String>,
}

impl Target {
    fn resolve(&self) -> Result<(Map64, Domain64, String)> {
        let f = map_from_id(&self.map)?;
        let id = self
            .domain
            .clone()
            .unwrap_or_else(|| default_domain_id(&self.map).to_string());
        let domain = domain_from_id(&id)?;
        Ok((f, domain, id))
    }
}

#[derive(Args)]
struct GridArgs {
    /// Angular samples of the base sweep
    #[arg(long, default_value_t = 128)]
    n_theta: usize,
    /// Radial samples per ray
    #[arg(long, default_value_t = 160)]
    n_r: usize,
    /// Distance kept from the boundary
    #[arg(long, default_value_t = 1e-6)]
    margin: f64,
    /// Margin-halving refinement rounds
    #[arg(long, default_value_t = 8)]
    refine_rounds: usize,
}

impl GridArgs {
    fn to_spec(&self) -> GridSpec {
        GridSpec {
            n_theta: self.n_theta,
            n_r: self.n_r,
            boundary_margin: self.margin,
            refine_rounds: self.refine_rounds,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightArg {
    /// Reciprocal hyperbolic density (the norm's weight)
    InvDensity,
    /// |z|^3 - |z| on the exterior disk
    ExteriorWeight,
}

impl From<WeightArg> for Weight {
    fn from(w: WeightArg) -> Weight {
        match w {
            WeightArg::InvDensity => Weight::InvDensity,
            WeightArg::ExteriorWeight => Weight::ExteriorWeight,
        }
    }
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    target: Target,
    /// Evaluation point in a+bi form
    #[arg(long, allow_hyphen_values = true)]
    z: String,
}

#[derive(Args)]
struct NormArgs {
    #[command(flatten)]
    target: Target,
    /// Weight multiplying |P|
    #[arg(long, value_enum, default_value_t = WeightArg::InvDensity)]
    weight: WeightArg,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Args)]
struct ProfileArgs {
    #[command(flatten)]
    target: Target,
    /// Ray angle in radians
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    theta: f64,
    /// Number of radii on the domain's default ladder
    #[arg(long, default_value_t = 200)]
    points: usize,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WitnessArgs {
    #[command(flatten)]
    target: Target,
    /// Value the weighted modulus must exceed
    #[arg(long, default_value_t = 1e3)]
    threshold: f64,
    /// Weight for the search; defaults to the cubic growth weight on the
    /// exterior disk and the hyperbolic weight elsewhere
    #[arg(long, value_enum)]
    weight: Option<WeightArg>,
}

#[derive(Args)]
struct CheckArgs {
    /// Check ID, e.g. pointwise-disk, norm-value, distortion, majorization
    #[arg(long)]
    id: String,
    #[arg(long)]
    map: Option<String>,
    #[arg(long)]
    domain: Option<String>,
    /// Shorthand for --param alpha0={value}
    #[arg(long)]
    alpha0: Option<f64>,
    /// Additional check parameters (repeatable)
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Args)]
struct ReportArgs {
    /// JSON config with a `checks` array; omitted runs the stock batch
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Applies the PRESCH_THREADS cap before any parallel work starts.
fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("PRESCH_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| anyhow!("PRESCH_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .context("failed to size the thread pool")?;
    Ok(())
}

/// Returns whether the outcome counts as a pass (exit 0) or not (exit 1).
fn run(command: Command) -> Result<bool> {
    match command {
        Command::Eval(args) => cmd_eval(args),
        Command::Norm(args) => cmd_norm(args),
        Command::Profile(args) => cmd_profile(args),
        Command::Witness(args) => cmd_witness(args),
        Command::Check(args) => cmd_check(args),
        Command::Report(args) => cmd_report(args),
    }
}

fn cmd_eval(args: EvalArgs) -> Result<bool> {
    let (f, domain, _) = args.target.resolve()?;
    let z = parse_complex(&args.z)?;
    let v = pre_schwarzian(&f, z)?;
    let mut obj = serde_json::Map::new();
    obj.insert("J".into(), json!(v.jacobian));
    if let Some(omega) = v.omega {
        obj.insert("omega".into(), json!(format_complex(omega)));
    }
    obj.insert("P".into(), json!(format_complex(v.p)));
    if args.target.domain.is_some() {
        obj.insert("weighted".into(), json!(weighted_modulus(&f, &domain, z)?));
    }
    println!("{}", serde_json::Value::Object(obj));
    Ok(true)
}

fn cmd_norm(args: NormArgs) -> Result<bool> {
    let (f, domain, domain_id) = args.target.resolve()?;
    let est = norm_estimate_with(&f, &domain, &args.grid.to_spec(), args.weight.into())?;
    let out = json!({
        "map": args.target.map,
        "domain": domain_id,
        "sup_lower_bound": est.sup_lower_bound,
        "attained_at": format_complex(est.attained_at),
        "converged": est.converged,
        "refinement_history": est.refinement_history,
        "samples": est.samples,
        "skipped": est.skipped,
        "grid": serde_json::to_value(est.grid)?,
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(true)
}

fn cmd_profile(args: ProfileArgs) -> Result<bool> {
    if args.points == 0 {
        return Err(anyhow!("--points must be at least 1"));
    }
    let (f, domain, _) = args.target.resolve()?;
    let radii = presch::default_radii(&domain, args.points);
    let (samples, skipped) = radial_profile(&f, &domain, args.theta, &radii);
    if skipped > 0 {
        eprintln!("note: {skipped} of {} radii did not evaluate", radii.len());
    }
    let csv = profile_to_csv(&samples);
    match &args.out {
        Some(path) => fs::write(path, csv).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{csv}"),
    }
    Ok(true)
}

fn cmd_witness(args: WitnessArgs) -> Result<bool> {
    let (f, domain, domain_id) = args.target.resolve()?;
    let weight = match args.weight {
        Some(w) => w.into(),
        None if matches!(domain, DomainModel::ExteriorDisk) => Weight::ExteriorWeight,
        None => Weight::InvDensity,
    };
    let found = divergence_witness(&f, &domain, args.threshold, weight)?;
    let mut obj = serde_json::Map::new();
    obj.insert("found".into(), json!(found.is_some()));
    obj.insert("map".into(), json!(args.target.map));
    obj.insert("domain".into(), json!(domain_id));
    obj.insert("threshold".into(), json!(args.threshold));
    obj.insert("weight".into(), serde_json::to_value(weight)?);
    if let Some((z, value)) = found {
        obj.insert("point".into(), json!(format_complex(z)));
        obj.insert("value".into(), json!(value));
    }
    println!("{}", serde_json::to_string_pretty(&serde_json::Value::Object(obj))?);
    Ok(found.is_some())
}

fn cmd_check(args: CheckArgs) -> Result<bool> {
    let mut spec = CheckSpec::new(&args.id);
    if let Some(map) = &args.map {
        spec = spec.map(map);
    }
    if let Some(domain) = &args.domain {
        spec = spec.domain(domain);
    }
    if let Some(alpha0) = args.alpha0 {
        spec = spec.param("alpha0", alpha0);
    }
    for pair in &args.params {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| anyhow!("--param expects KEY=VALUE, got {pair:?}"))?;
        spec = spec.param(key, value);
    }
    let result = run_check(&spec, &args.grid.to_spec())?;
    println!("{}", serde_json::to_string_pretty(&result)?);
    Ok(result.pass)
}

fn cmd_report(args: ReportArgs) -> Result<bool> {
    let config: ReportConfig = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str(&text)
                .with_context(|| format!("parsing {}", path.display()))?
        }
        None => default_config(),
    };
    let report = run_report(&config)?;
    let text = serde_json::to_string_pretty(&report)?;
    match &args.out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => println!("{text}"),
    }
    Ok(report.all_passed())
}
