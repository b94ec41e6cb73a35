use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use littlewood::campaign::{gen_extremal, run_campaign, CampaignConfig};
use littlewood::formats::{
    float_report_to_string, instance_to_string, read_instance, read_to_string, report_to_string, write_string,
};
use littlewood::{Error, Result};
use littlewood_core::{atom_nd, delta, lo_bound, verify_float_mode, verify_instance, NormSpec, Rational};

/// Exact Littlewood–Offord probabilities and non-uniform bounds.
#[derive(Parser)]
#[command(name = "littlewood", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print C(n, ⌈(n+k)/2⌉) / 2ⁿ exactly and as a decimal.
    Bound { n: u64, k: u64 },
    /// Print P(Σ εᵢvᵢ = x) for an instance file.
    Atom { instance: PathBuf },
    /// Verify the full inequality chain on an instance file.
    Verify {
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the extremal (equality) instance for n and a norm value.
    Extremal {
        n: usize,
        norm: String,
        value: String,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification campaign from a config file.
    Campaign {
        config: PathBuf,
        /// Overrides the config's worker count.
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where counterexample instance files go (default: next to the report).
        #[arg(long)]
        replay_dir: Option<PathBuf>,
    },
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => write_string(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Bound { n, k } => {
            let bound = lo_bound(n, k);
            println!("n = {n}");
            println!("k = {k}");
            println!("delta = {}", delta(n, k));
            println!("bound = {bound}");
            println!("decimal = {}", bound.to_decimal_string(12));
            Ok(0)
        }
        Command::Atom { instance } => {
            let inst = read_instance(&instance)?;
            println!("{}", atom_nd(inst.vectors(), inst.target())?);
            Ok(0)
        }
        Command::Verify { instance, out } => {
            let inst = read_instance(&instance)?;
            let (text, holds) = if inst.norm().is_exact() {
                let report = verify_instance(&inst)?;
                (report_to_string(&inst, &report)?, report.chain_holds)
            } else {
                let report = verify_float_mode(&inst)?;
                (float_report_to_string(&inst, &report)?, report.holds)
            };
            emit(out.as_deref(), &text)?;
            Ok(if holds { 0 } else { 1 })
        }
        Command::Extremal { n, norm, value, dim, out } => {
            let norm: NormSpec = norm.parse().map_err(Error::from)?;
            let value: Rational = value.parse().map_err(Error::from)?;
            let inst = gen_extremal(n, &norm, &value, dim)?;
            emit(out.as_deref(), &instance_to_string(&inst)?)?;
            Ok(0)
        }
        Command::Campaign { config, workers, out, replay_dir } => {
            let mut cfg = CampaignConfig::parse(&read_to_string(&config)?)?;
            if let Some(w) = workers {
                cfg.workers = w;
            }
            let report = run_campaign(&cfg)?;
            emit(out.as_deref(), &report.to_file_string()?)?;
            let replay_dir = replay_dir.unwrap_or_else(|| {
                out.as_deref()
                    .and_then(Path::parent)
                    .unwrap_or_else(|| Path::new("."))
                    .join("violations")
            });
            for path in report.write_replay_files(&replay_dir)? {
                eprintln!("counterexample written to {}", path.display());
            }
            eprintln!(
                "{}: {} instances, {} tight, {} violations, {} errors in {:.2?}",
                report.status(),
                report.instances,
                report.tight,
                report.violations.len(),
                report.errors.len(),
                report.wall_time
            );
            Ok(report.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
