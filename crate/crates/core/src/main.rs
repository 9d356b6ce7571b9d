use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use stackplan::cli::{self, CliError, ExperimentConfig};
use stackplan::simworld::{plan_from_letters, plan_letters, FailureMode, RatioMode};

#[derive(Parser)]
#[command(version, about = "Plan synthesis for bounded temporal requirements with stacked Thompson bandits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the bandit search; writes stb.csv, baseline.csv and world.txt.
    Plan(Common),
    /// Random-search baseline only; writes baseline.csv and world.txt.
    Baseline(Common),
    /// Estimate the satisfaction probability of one plan.
    Estimate {
        #[command(flatten)]
        common: Common,
        /// Plan as a string of U/D/L/R moves.
        #[arg(long)]
        plan: String,
    },
    /// Repeat the search over consecutive seeds; writes sweep.csv.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Number of seeds, starting at --seed.
        #[arg(long, default_value_t = 10)]
        seeds: u64,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    width: usize,
    #[arg(long, default_value_t = 10)]
    height: usize,
    #[arg(long, default_value_t = 0.2)]
    obstacle_ratio: f64,
    /// `of-all-cells` or `obstacles-to-free`.
    #[arg(long, default_value = "of-all-cells")]
    ratio_mode: RatioMode,
    /// Action failure probability, or `random` to draw it per world.
    #[arg(long, default_value = "random")]
    pfail: FailureMode,
    /// Count moves off the grid as collisions (by default only obstacles count).
    #[arg(long)]
    wall_collisions: bool,
    #[arg(long, default_value = "G<=10 (collisions <= 2)")]
    formula: String,
    #[arg(long, default_value_t = 100_000)]
    budget: u64,
    #[arg(long, default_value_t = 100)]
    estimate_every: u64,
    #[arg(long, default_value_t = 1000)]
    estimate_runs: u64,
    #[arg(long, default_value_t = 1000)]
    baseline_plans: u64,
    #[arg(long, default_value_t = 1000)]
    baseline_evals: u64,
    /// Write a raw row every N iterations.
    #[arg(long, default_value_t = 1)]
    record_every: u64,
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
}

impl From<Common> for ExperimentConfig {
    fn from(c: Common) -> Self {
        ExperimentConfig {
            seed: c.seed,
            width: c.width,
            height: c.height,
            obstacle_ratio: c.obstacle_ratio,
            ratio_mode: c.ratio_mode,
            failure: c.pfail,
            wall_collisions: c.wall_collisions,
            formula: c.formula,
            budget: c.budget,
            estimate_every: c.estimate_every,
            estimate_runs: c.estimate_runs,
            baseline_plans: c.baseline_plans,
            baseline_evals: c.baseline_evals,
            record_every: c.record_every,
            out_dir: c.out_dir,
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Plan(common) => {
            let cfg = ExperimentConfig::from(common);
            let summary = cli::run_experiment(&cfg)?;
            println!(
                "p_fail={} mode_plan={} p_hat={} baseline_plan={} baseline_p_hat={}",
                summary.world.p_fail(),
                plan_letters(&summary.final_mode_plan),
                summary.final_estimate.p_hat(),
                plan_letters(&summary.baseline.best_plan),
                summary.baseline.best_estimate.p_hat(),
            );
        }
        Command::Baseline(common) => {
            let result = cli::run_baseline(&ExperimentConfig::from(common))?;
            println!(
                "best_plan={} p_hat={} stderr={}",
                plan_letters(&result.best_plan),
                result.best_estimate.p_hat(),
                result.best_estimate.stderr(),
            );
        }
        Command::Estimate { common, plan } => {
            let plan = plan_from_letters(&plan).map_err(CliError::Config)?;
            let est = cli::run_estimate(&ExperimentConfig::from(common), &plan)?;
            println!(
                "plan={} successes={} n={} p_hat={} stderr={}",
                plan_letters(&plan),
                est.successes,
                est.n,
                est.p_hat(),
                est.stderr(),
            );
        }
        Command::Sweep { common, seeds } => {
            let reports = cli::run_sweep(&ExperimentConfig::from(common), seeds)?;
            for r in reports {
                let last = r.last();
                println!(
                    "seed={} mode_plan={} p_hat={} baseline_p_hat={}",
                    r.seed,
                    plan_letters(&last.mode_plan),
                    last.mode_estimate.p_hat(),
                    r.baseline.map_or(f64::NAN, |b| b.best_estimate.p_hat()),
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let parsed = match Cli::try_parse() {
        Ok(parsed) => parsed,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(parsed.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
