//! `ulab`: command-line front end for the uniformity-norm laboratory.
//!
//! Subcommands: `gen` (measure generators), `norm` (U^k norms and splits),
//! `dim` (decay envelopes and Fourier-dimension estimates), `slice`
//! (Delta-hat exports), `verify` (the check suite), `converge`
//! (mollification-convergence experiments).
//!
//! Exit codes: 0 success / all checks pass, 1 verification failure,
//! 2 usage or i/o error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gowers_lab::checks::suite::{run_suite, reports_csv, write_reports_json, SuiteConfig};
use gowers_lab::checks::convergence_experiment;
use gowers_lab::delta::{delta_slice, MeasureTuple};
use gowers_lab::measure::{
    gen_cantor, gen_cosine, gen_flat, gen_lebesgue, gen_salem_surrogate, FourierMeasure, Window,
    WindowKind,
};
use gowers_lab::norms::{decay_envelope, dyadic_radii, fourier_dim_order_k, norm_split, uk_norm_pow};

const VERSION_HEADER: &str = concat!("# ulab v", env!("CARGO_PKG_VERSION"));

#[derive(Parser)]
#[command(name = "ulab", version, about = "Uniformity-norm laboratory for band-limited measures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum WindowArg {
    Sharp,
    Fejer,
}

impl From<WindowArg> for WindowKind {
    fn from(w: WindowArg) -> WindowKind {
        match w {
            WindowArg::Sharp => WindowKind::SharpCutoff,
            WindowArg::Fejer => WindowKind::Fejer,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a measure and write it as JSON.
    Gen(GenArgs),
    /// U^k norm of a measure, optionally split at a cutoff level.
    Norm(NormArgs),
    /// Decay envelopes and the order-k Fourier dimension estimate.
    Dim(DimArgs),
    /// Export a Delta-hat^k slice of the diagonal tuple.
    Slice(SliceArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
    /// Mollification-convergence experiment.
    Converge(ConvergeArgs),
}

#[derive(Args)]
struct GenArgs {
    /// lebesgue | cosine | flat | cantor | salem | random
    kind: String,
    #[arg(long, default_value_t = 1)]
    dim: usize,
    #[arg(long, default_value_t = 3)]
    ratio: u32,
    #[arg(long, default_value_t = 8)]
    depth: u32,
    #[arg(long, default_value_t = 0.9)]
    beta: f64,
    #[arg(long, default_value_t = 64)]
    bandwidth: i64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 0.4)]
    decay: f64,
    /// Output path for the measure JSON.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct NormArgs {
    /// Measure JSON file.
    #[arg(long = "input", short = 'i')]
    input: PathBuf,
    #[arg(long, default_value_t = 2)]
    k: u32,
    /// Also split the norm power at this cutoff level.
    #[arg(long = "split", alias = "N")]
    split: Option<i32>,
    #[arg(long, value_enum, default_value_t = WindowArg::Sharp)]
    window: WindowArg,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DimArgs {
    #[arg(long = "input", short = 'i')]
    input: PathBuf,
    /// Largest Delta order entering the estimate.
    #[arg(long, default_value_t = 2)]
    k: u32,
    /// Comma-separated shell radii; dyadic by default.
    #[arg(long, value_delimiter = ',')]
    radii: Option<Vec<i64>>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SliceArgs {
    #[arg(long = "input", short = 'i')]
    input: PathBuf,
    #[arg(long, default_value_t = 2)]
    k: u32,
    #[arg(long, default_value_t = 0)]
    xi: i64,
    #[arg(long)]
    out: PathBuf,
    /// Write JSON instead of CSV.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite configuration JSON; the built-in default zoo runs when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the full JSON report array here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the identity tolerance and inequality slack.
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ConvergeArgs {
    #[arg(long = "input", short = 'i')]
    input: PathBuf,
    #[arg(long, default_value_t = 2)]
    k: u32,
    #[arg(long = "n-min", default_value_t = 1)]
    n_min: i32,
    #[arg(long = "n-max", default_value_t = 5)]
    n_max: i32,
    #[arg(long, value_enum, default_value_t = WindowArg::Sharp)]
    window: WindowArg,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Desk-scale ceilings, keyed by the norm order `k`: an order-`(k-1)` slice
/// costs `(2^k M + 1)^{k-1}` dense entries, so the bandwidth `M` must shrink
/// as `k` grows. Commands working at slice order `k` pass `k + 1` here.
fn check_ceiling(k: u32, bandwidth: i64) -> Result<(), gowers_lab::Error> {
    let limit = match k {
        0..=2 => 256,
        3 => 64,
        _ => 16,
    };
    if bandwidth > limit {
        let order = k - 1;
        return Err(gowers_lab::Error::InvalidParameter(format!(
            "bandwidth {bandwidth} exceeds the ceiling {limit} for k = {k}: the order-{order} \
             box has (2^{order} * {bandwidth} + 1)^{order} dense entries, past the desk-scale \
             budget; lower k or regenerate the measure with a smaller bandwidth"
        )));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Gen(args) => {
            let mu = generate(&args)?;
            mu.save(&args.out)?;
            println!("wrote {} ({})", args.out.display(), mu);
            Ok(ExitCode::SUCCESS)
        }
        Command::Norm(args) => {
            if !(2..=4).contains(&args.k) {
                return Err(Box::new(gowers_lab::Error::InvalidParameter(
                    "norm order k must lie in 2..=4".into(),
                )));
            }
            let mu = FourierMeasure::load(&args.input)?;
            check_ceiling(args.k, mu.bandwidth())?;
            let id = stem(&args.input);
            let root = 1.0 / (1u64 << args.k) as f64;
            match args.split {
                None => {
                    let pow = uk_norm_pow(&mu, args.k)?;
                    if args.json {
                        println!(
                            "{}",
                            serde_json::json!({
                                "version": env!("CARGO_PKG_VERSION"),
                                "measure": id, "k": args.k,
                                "norm": pow.powf(root), "total_pow": pow,
                            })
                        );
                    } else {
                        println!("{VERSION_HEADER}");
                        println!("measure,k,norm,total_pow");
                        println!("{id},{},{},{}", args.k, pow.powf(root), pow);
                    }
                }
                Some(level) => {
                    let kind: WindowKind = args.window.into();
                    let split = norm_split(&mu, args.k, Window { kind, level: Some(level) })?;
                    if args.json {
                        println!(
                            "{}",
                            serde_json::json!({
                                "version": env!("CARGO_PKG_VERSION"),
                                "measure": id, "k": args.k,
                                "window": format!("{kind:?}"), "level": level,
                                "total_pow": split.total_pow,
                                "low_pow": split.low_pow,
                                "high_pow": split.high_pow,
                                "norm": split.total_norm(),
                            })
                        );
                    } else {
                        println!("{VERSION_HEADER}");
                        println!("measure,k,window,level,total_pow,low_pow,high_pow,norm");
                        println!(
                            "{id},{},{kind:?},{level},{},{},{},{}",
                            args.k,
                            split.total_pow,
                            split.low_pow,
                            split.high_pow,
                            split.total_norm()
                        );
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Dim(args) => {
            if !(1..=3).contains(&args.k) {
                return Err(Box::new(gowers_lab::Error::InvalidParameter(
                    "dimension order k must lie in 1..=3".into(),
                )));
            }
            let mu = FourierMeasure::load(&args.input)?;
            check_ceiling(args.k + 1, mu.bandwidth())?;
            let radii = args.radii.unwrap_or_else(|| dyadic_radii(&mu, 1));
            let id = stem(&args.input);
            let mut fits = Vec::new();
            for order in 1..=args.k {
                fits.push(decay_envelope(&mu, order, &radii)?);
            }
            let estimate = fourier_dim_order_k(&mu, args.k, &radii)?;
            if args.json {
                let orders: Vec<serde_json::Value> = fits
                    .iter()
                    .map(|f| {
                        serde_json::json!({
                            "order": f.order,
                            "shells": f.shells.iter().map(|s| vec![s.radius as f64, s.envelope]).collect::<Vec<_>>(),
                            "slope": f.slope, "beta": f.beta, "r2": f.r2,
                            "warnings": f.warnings,
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    serde_json::json!({
                        "version": env!("CARGO_PKG_VERSION"),
                        "measure": id, "k": args.k,
                        "orders": orders, "dimension": estimate.value,
                    })
                );
            } else {
                println!("{VERSION_HEADER}");
                println!("measure,order,shell_radius,envelope,slope,beta,r2");
                for f in &fits {
                    for s in &f.shells {
                        println!(
                            "{id},{},{},{},{},{},{}",
                            f.order, s.radius, s.envelope, f.slope, f.beta, f.r2
                        );
                    }
                    for w in &f.warnings {
                        println!("# order {} warning: {w}", f.order);
                    }
                }
                println!("# fourier-dim order<={} value={}", args.k, estimate.value);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Slice(args) => {
            if !(1..=3).contains(&args.k) {
                return Err(Box::new(gowers_lab::Error::InvalidParameter(
                    "slice order k must lie in 1..=3".into(),
                )));
            }
            let mu = FourierMeasure::load(&args.input)?;
            check_ceiling(args.k + 1, mu.bandwidth())?;
            let t = MeasureTuple::all_equal(&mu, args.k)?;
            let slice = delta_slice(&t, args.xi)?;
            if args.json {
                std::fs::write(&args.out, serde_json::to_string_pretty(&slice.to_json())? + "\n")?;
            } else {
                std::fs::write(&args.out, slice.to_csv())?;
            }
            println!("wrote {} ({} entries)", args.out.display(), slice.len());
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let mut config = match &args.config {
                Some(path) => SuiteConfig::load(path)?,
                None => SuiteConfig::default(),
            };
            if let Some(tol) = args.tolerance {
                config.tolerances.identity = tol;
                config.tolerances.inequality = tol;
            }
            let reports = run_suite(&config)?;
            if let Some(out) = &args.out {
                write_reports_json(&reports, out)?;
            }
            let failures = reports.iter().filter(|r| !r.pass).count();
            if args.json {
                println!("{}", serde_json::to_string(&reports)?);
            } else {
                println!("{VERSION_HEADER}");
                print!("{}", reports_csv(&reports));
                println!("# suite: {} reports, {failures} failures", reports.len());
            }
            if failures > 0 {
                Ok(ExitCode::from(1))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
        Command::Converge(args) => {
            if !(2..=4).contains(&args.k) {
                return Err(Box::new(gowers_lab::Error::InvalidParameter(
                    "convergence order k must lie in 2..=4".into(),
                )));
            }
            if args.n_min > args.n_max {
                return Err(Box::new(gowers_lab::Error::InvalidParameter(
                    "n-min must not exceed n-max".into(),
                )));
            }
            let mu = FourierMeasure::load(&args.input)?;
            check_ceiling(args.k, mu.bandwidth())?;
            let id = stem(&args.input);
            let table = convergence_experiment(
                &mu,
                &id,
                args.k,
                args.n_min..=args.n_max,
                args.window.into(),
            )?;
            if args.json {
                let mut value = serde_json::to_value(&table)?;
                value["version"] = serde_json::json!(env!("CARGO_PKG_VERSION"));
                println!("{value}");
            } else {
                println!("{VERSION_HEADER}");
                println!("measure,k,n,error,neg_log2_error");
                for row in &table.rows {
                    let nl2 = if row.error > 0.0 { -row.error.log2() } else { f64::INFINITY };
                    println!("{id},{},{},{},{nl2}", table.k, row.n, row.error);
                }
                println!(
                    "# slope={:?} predicted={:?} beta_used={}",
                    table.slope, table.predicted, table.beta_used
                );
                for w in &table.warnings {
                    println!("# warning: {w}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn generate(args: &GenArgs) -> Result<FourierMeasure, gowers_lab::Error> {
    match args.kind.as_str() {
        "lebesgue" => gen_lebesgue(args.dim),
        "cosine" => Ok(gen_cosine()),
        "flat" => gen_flat(args.bandwidth),
        "cantor" => gen_cantor(args.ratio, args.depth, args.bandwidth),
        "salem" => gen_salem_surrogate(args.beta, args.bandwidth, args.seed),
        "random" => gowers_lab::checks::suite::gen_random_real(args.bandwidth, args.seed, args.decay),
        other => Err(gowers_lab::Error::InvalidParameter(format!(
            "unknown generator '{other}' (expected lebesgue|cosine|flat|cantor|salem|random)"
        ))),
    }
}

fn stem(path: &std::path::Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "measure".into())
}
