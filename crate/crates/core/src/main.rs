//! Command-line front end: validate a configured semigroup, run an
//! iteration scheme to a CSV trace, or estimate a regularity profile.
//!
//! Exit codes: 0 success; 1 axiom or order-contract violation; 2 config,
//! parse, or io failure; 3 iteration budget or schedule exhausted.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use catk::config::{load_config, SchemeRun};
use catk::csvio::{trace_csv_string, uar_csv_string};
use catk::error::Error;
use catk::numfmt::fmt_g17;
use catk::schemes::{browder_run, km_run, uar_estimate, IterationTrace, RunStatus};
use catk::semigroup::{validate_semigroup, SemigroupSpec};

const VALIDATE_SAMPLES: usize = 400;

#[derive(Parser)]
#[command(name = "catk", version, about = "Order-compatible semigroups on geodesic model spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the configured semigroup against its order and axioms.
    Validate(CommonArgs),
    /// Run the configured iteration scheme and write its trace as CSV.
    Run(RunArgs),
    /// Estimate the asymptotic-regularity profile and write it as CSV.
    Uar(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Path to the TOML configuration.
    #[arg(long)]
    config: PathBuf,
    /// Seed override for sampled checks.
    #[arg(long)]
    seed: Option<u64>,
    /// Output path override; stdout when neither this nor the config sets
    /// one.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Skip the pre-run axiom validation.
    #[arg(long)]
    skip_validate: bool,
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Validate(args) => cmd_validate(&args),
        Command::Run(args) => cmd_run(&args),
        Command::Uar(args) => cmd_uar(&args),
    };
    std::process::exit(code);
}

fn fail(e: &Error) -> i32 {
    eprintln!("error: {e}");
    2
}

fn effective_seed(args: &CommonArgs, config_seed: u64) -> u64 {
    args.seed.unwrap_or(config_seed)
}

/// Writes `text` to `out`, or to stdout when no path is set. Returns the
/// path actually used.
fn emit(text: &str, out: Option<&Path>) -> Result<Option<PathBuf>, Error> {
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
            Ok(Some(path.to_path_buf()))
        }
        None => {
            print!("{text}");
            Ok(None)
        }
    }
}

fn cmd_validate(args: &CommonArgs) -> i32 {
    let report = (|| {
        let cfg = load_config(&args.config)?;
        let sg = cfg.build_semigroup()?;
        validate_semigroup(&sg, VALIDATE_SAMPLES, effective_seed(args, cfg.seed()))
    })();
    match report {
        Ok(report) => {
            println!("{}", report.render());
            if report.passed() {
                0
            } else {
                1
            }
        }
        Err(e) => fail(&e),
    }
}

fn prevalidate(sg: &SemigroupSpec, seed: u64) -> Result<bool, Error> {
    let report = validate_semigroup(sg, VALIDATE_SAMPLES, seed)?;
    if !report.passed() {
        println!("{}", report.render());
    }
    Ok(report.passed())
}

fn status_name(status: RunStatus) -> &'static str {
    match status {
        RunStatus::Converged => "converged",
        RunStatus::MaxIters => "max_iters",
        RunStatus::ScheduleExhausted => "schedule_exhausted",
    }
}

fn report_run(trace: &IterationTrace, out: Option<&Path>) -> Result<i32, Error> {
    let csv = trace_csv_string(trace);
    let path = emit(&csv, out)?;
    let mut summary = String::new();
    summary.push_str(&format!("status: {}\n", status_name(trace.status)));
    summary.push_str(&format!("rows: {}\n", trace.rows.len()));
    for (s, r) in trace.probes.iter().zip(trace.final_residuals()) {
        summary.push_str(&format!("final residual at t={}: {}\n", s, fmt_g17(*r)));
    }
    if let Some(p) = &path {
        summary.push_str(&format!("trace written to {}\n", p.display()));
        print!("{summary}");
    } else {
        eprint!("{summary}");
    }
    if !trace.monotone_throughout() {
        eprintln!("error: a trace row broke the order contract");
        return Ok(1);
    }
    Ok(match trace.status {
        RunStatus::Converged => 0,
        RunStatus::MaxIters | RunStatus::ScheduleExhausted => 3,
    })
}

fn cmd_run(args: &RunArgs) -> i32 {
    let outcome = (|| {
        let cfg = load_config(&args.common.config)?;
        let seed = effective_seed(&args.common, cfg.seed());
        let scheme = cfg.build_scheme()?;
        let sg = match &scheme {
            SchemeRun::Km(c) => c.semigroup(),
            SchemeRun::Browder(c) => c.semigroup(),
        };
        if !args.skip_validate && !prevalidate(sg, seed)? {
            return Ok::<i32, Error>(1);
        }
        let trace = match &scheme {
            SchemeRun::Km(c) => km_run(c)?,
            SchemeRun::Browder(c) => browder_run(c)?,
        };
        let out = args.common.out.clone().or_else(|| cfg.out.as_ref().map(PathBuf::from));
        report_run(&trace, out.as_deref())
    })();
    match outcome {
        Ok(code) => code,
        Err(Error::OrderContract(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(e) => fail(&e),
    }
}

fn cmd_uar(args: &CommonArgs) -> i32 {
    let outcome = (|| {
        let cfg = load_config(&args.config)?;
        let sg = cfg.build_semigroup()?;
        let u = cfg.uar_section()?;
        let profile =
            uar_estimate(&sg, u.h, &u.t_grid, u.n_points, effective_seed(args, cfg.seed()))?;
        let csv = uar_csv_string(&profile);
        let out = args.out.clone().or_else(|| cfg.out.as_ref().map(PathBuf::from));
        let path = emit(&csv, out.as_deref())?;
        let flag = format!(
            "uniformly_asymptotically_regular: {}\n",
            profile.indicates_uniform_regularity()
        );
        if let Some(p) = path {
            println!("profile written to {}", p.display());
            print!("{flag}");
        } else {
            eprint!("{flag}");
        }
        Ok::<(), Error>(())
    })();
    match outcome {
        Ok(()) => 0,
        Err(e) => fail(&e),
    }
}
