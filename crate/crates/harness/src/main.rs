use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use iclaws_core::explicit::Evaluator;
use iclaws_core::fractional_bv::{tvs_reduced, uniform_grid};
use iclaws_core::SampledFunction;
use iclaws_harness::data::{build_data, build_pair};
use iclaws_harness::report::{profile_csv, read_profile};
use iclaws_harness::{checks, run_experiment, ExperimentId, ProblemConfig};

#[derive(Parser)]
#[command(
    name = "iclaws",
    version,
    about = "Interface conservation laws: solver, variation and experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the explicit solution on a uniform grid of the window.
    Solve {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        t: f64,
        /// Number of grid cells on [-window, window].
        #[arg(long)]
        grid: usize,
        #[arg(long)]
        out: PathBuf,
        /// Case name; defaults to the first case.
        #[arg(long)]
        case: Option<String>,
    },
    /// Fractional variation of a profile CSV with `x` and `u` columns.
    Tvs {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        s: f64,
    },
    /// Run one experiment and write its reports.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        which: ExperimentId,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the invariant suite.
    Check,
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(value) = std::env::var("ICLAWS_THREADS") {
        let threads: usize = value.parse().with_context(|| format!("ICLAWS_THREADS={value:?}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Solve {
            config,
            t,
            grid,
            out,
            case,
        } => {
            let cfg = ProblemConfig::load(&config)?;
            let spec = match &case {
                Some(name) => cfg
                    .cases
                    .iter()
                    .find(|c| &c.name == name)
                    .with_context(|| format!("no case {name:?}"))?,
                None => &cfg.cases[0],
            };
            if grid == 0 {
                bail!("--grid must be positive");
            }
            let pair = build_pair(spec)?;
            let data = build_data(&spec.data, &pair, &cfg)?;
            let ev = Evaluator::new(pair, &data)?;
            let field = ev.sample_profile(t, &uniform_grid(-cfg.window, cfg.window, grid))?;
            std::fs::write(&out, profile_csv(&field)?).with_context(|| format!("writing {}", out.display()))?;
            eprintln!("wrote {} points to {}", field.points.len(), out.display());
            Ok(true)
        }
        Command::Tvs { input, s } => {
            let text = std::fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let (xs, us) = read_profile(&text)?;
            let n = xs.len();
            let result = tvs_reduced(&SampledFunction::new(xs, us)?, s)?;
            println!("n,s,tvs");
            println!("{},{},{}", n.saturating_sub(1), s, result.value);
            Ok(true)
        }
        Command::Experiment { config, which, out } => {
            let cfg = ProblemConfig::load(&config)?;
            let report = run_experiment(which, &cfg)?;
            for path in report.write(&out)? {
                eprintln!("wrote {}", path.display());
            }
            for row in report.failed() {
                eprintln!(
                    "FAIL {} {} = {} (bound {:?})",
                    row.case, row.quantity, row.value, row.bound
                );
            }
            println!(
                "{which}: {} rows, {}",
                report.rows.len(),
                if report.pass() { "pass" } else { "FAIL" }
            );
            Ok(report.pass())
        }
        Command::Check => {
            let outcomes = checks::run_all();
            for o in &outcomes {
                println!(
                    "{} {:<22} {:>7.2}s  {}",
                    if o.pass { "PASS" } else { "FAIL" },
                    o.name,
                    o.seconds,
                    o.detail
                );
            }
            Ok(outcomes.iter().all(|o| o.pass))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
