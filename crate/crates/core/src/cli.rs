//! Experiment orchestration and CSV output.
//!
//! All randomness in an experiment derives from [`ExperimentConfig::seed`]:
//!
//! | stream                      | label                                   |
//! |-----------------------------|-----------------------------------------|
//! | world generation            | `seed("world", 0)`                      |
//! | search loop                 | `subtree("search", 0)`                  |
//! | sampled-plan ground truth   | `seed("estimate-sampled", iteration)`   |
//! | mode-plan ground truth      | `seed("estimate-mode", iteration)`      |
//! | random-search baseline      | `seed("baseline", 0)`                   |
//! | single-plan estimate        | `seed("estimate", 0)`                   |
//!
//! # `stb.csv`
//!
//! Header:
//!
//! ```text
//! kind,iteration,sampled_plan,sat,mode_plan,avg_mode_sampled,avg_cv_sampled,avg_mode_best,avg_cv_best,sampled_p_hat,sampled_stderr,mode_p_hat,mode_stderr,estimate_runs
//! ```
//!
//! `kind = raw` rows are written every `record_every` iterations and on the
//! last one; their estimate columns are empty. `kind = estimate` rows are
//! written every `estimate_every` iterations and on the last one, directly
//! after the raw row of the same iteration, and fill every column. With the
//! default `record_every = 1` the file holds `budget + ceil(budget / k)` data
//! rows. Plans are written as `U`/`D`/`L`/`R` strings.
//!
//! # `baseline.csv`
//!
//! ```text
//! n_plans,n_evals,best_index,best_plan,successes,p_hat,stderr
//! ```
//!
//! # `sweep.csv`
//!
//! ```text
//! seed,p_fail,first_iteration,first_mode_plan,first_p_hat,final_iteration,final_mode_plan,final_p_hat,final_stderr,baseline_plan,baseline_p_hat,ratio_to_baseline
//! ```

use std::fs::{self, File};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::eval::{estimate_sat_prob, random_search, EvalError, PlanDiagnostics, SatEstimate, SearchResult};
use crate::planner::{stb, Plan, PlannerError};
use crate::requirements::{parse, Requirement};
use crate::rng::SeedTree;
use crate::simworld::{generate_world, plan_letters, FailureMode, GridWorld, RatioMode, WorldError, WorldParams};

pub const STB_HEADER: [&str; 14] = [
    "kind",
    "iteration",
    "sampled_plan",
    "sat",
    "mode_plan",
    "avg_mode_sampled",
    "avg_cv_sampled",
    "avg_mode_best",
    "avg_cv_best",
    "sampled_p_hat",
    "sampled_stderr",
    "mode_p_hat",
    "mode_stderr",
    "estimate_runs",
];

pub const BASELINE_HEADER: [&str; 7] = [
    "n_plans",
    "n_evals",
    "best_index",
    "best_plan",
    "successes",
    "p_hat",
    "stderr",
];

pub const SWEEP_HEADER: [&str; 12] = [
    "seed",
    "p_fail",
    "first_iteration",
    "first_mode_plan",
    "first_p_hat",
    "final_iteration",
    "final_mode_plan",
    "final_p_hat",
    "final_stderr",
    "baseline_plan",
    "baseline_p_hat",
    "ratio_to_baseline",
];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("runtime error: {0}")]
    Runtime(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    /// 1 for configuration errors, 2 for everything that fails at run time.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Runtime(_) | CliError::Io(_) => 2,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(err: csv::Error) -> Self {
        match err.into_kind() {
            csv::ErrorKind::Io(e) => CliError::Io(e),
            other => CliError::Runtime(format!("csv: {other:?}")),
        }
    }
}

impl From<EvalError> for CliError {
    fn from(err: EvalError) -> Self {
        CliError::Runtime(err.to_string())
    }
}

impl From<PlannerError> for CliError {
    fn from(err: PlannerError) -> Self {
        CliError::Runtime(err.to_string())
    }
}

impl From<WorldError> for CliError {
    fn from(err: WorldError) -> Self {
        CliError::Config(err.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub width: usize,
    pub height: usize,
    pub obstacle_ratio: f64,
    pub ratio_mode: RatioMode,
    pub failure: FailureMode,
    /// Count moves off the grid as collisions.
    pub wall_collisions: bool,
    pub formula: String,
    pub budget: u64,
    pub estimate_every: u64,
    pub estimate_runs: u64,
    pub baseline_plans: u64,
    pub baseline_evals: u64,
    pub record_every: u64,
    pub out_dir: PathBuf,
}

impl Default for ExperimentConfig {
    /// The 10x10 benchmark: 20% obstacles, random failure probability,
    /// at most two collisions over ten steps.
    fn default() -> Self {
        Self {
            seed: 0,
            width: 10,
            height: 10,
            obstacle_ratio: 0.2,
            ratio_mode: RatioMode::OfAllCells,
            failure: FailureMode::Uniform,
            wall_collisions: false,
            formula: "G<=10 (collisions <= 2)".to_string(),
            budget: 100_000,
            estimate_every: 100,
            estimate_runs: 1000,
            baseline_plans: 1000,
            baseline_evals: 1000,
            record_every: 1,
            out_dir: PathBuf::from("out"),
        }
    }
}

/// A validated configuration, ready to run.
#[derive(Debug, Clone)]
pub struct Setup {
    pub world_params: WorldParams,
    pub phi: Requirement,
    pub horizon: usize,
    pub seeds: SeedTree,
}

impl Setup {
    pub fn world(&self) -> Result<GridWorld, CliError> {
        Ok(generate_world(self.seeds.seed("world", 0), &self.world_params)?)
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<Setup, CliError> {
        let fail = |msg: String| Err(CliError::Config(msg));
        if self.width == 0 || self.height == 0 {
            return fail(format!("grid must be at least 1x1, got {}x{}", self.width, self.height));
        }
        if !(0.0..1.0).contains(&self.obstacle_ratio) {
            return fail(format!("obstacle ratio {} outside [0, 1)", self.obstacle_ratio));
        }
        if let FailureMode::Fixed(p) = self.failure {
            if !(0.0..=1.0).contains(&p) {
                return fail(format!("failure probability {p} outside [0, 1]"));
            }
        }
        for (name, value) in [
            ("budget", self.budget),
            ("estimate-every", self.estimate_every),
            ("estimate-runs", self.estimate_runs),
            ("baseline-plans", self.baseline_plans),
            ("baseline-evals", self.baseline_evals),
            ("record-every", self.record_every),
        ] {
            if value == 0 {
                return fail(format!("{name} must be at least 1"));
            }
        }
        let phi = parse(&self.formula)
            .map_err(|e| CliError::Config(format!("formula `{}`: {e}", self.formula)))?;
        let horizon = phi
            .horizon()
            .map_err(|e| CliError::Config(format!("formula `{}`: {e}", self.formula)))?;
        Ok(Setup {
            world_params: WorldParams {
                width: self.width,
                height: self.height,
                obstacle_ratio: self.obstacle_ratio,
                ratio_mode: self.ratio_mode,
                failure: self.failure,
                wall_collisions: self.wall_collisions,
            },
            phi,
            horizon,
            seeds: SeedTree::new(self.seed),
        })
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self {
            seed,
            ..self.clone()
        }
    }
}

fn num(x: f64) -> String {
    format!("{x}")
}

fn create_out_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    Ok(())
}

fn write_world(dir: &Path, world: &GridWorld) -> Result<(), CliError> {
    let mut file = File::create(dir.join("world.txt"))?;
    file.write_all(world.to_text().as_bytes())?;
    Ok(())
}

fn write_baseline(dir: &Path, cfg: &ExperimentConfig, result: &SearchResult) -> Result<(), CliError> {
    let mut out = csv::Writer::from_path(dir.join("baseline.csv"))?;
    out.write_record(BASELINE_HEADER)?;
    out.write_record([
        cfg.baseline_plans.to_string(),
        cfg.baseline_evals.to_string(),
        result.best_index.to_string(),
        plan_letters(&result.best_plan),
        result.best_estimate.successes.to_string(),
        num(result.best_estimate.p_hat()),
        num(result.best_estimate.stderr()),
    ])?;
    out.flush()?;
    Ok(())
}

fn baseline(setup: &Setup, cfg: &ExperimentConfig, world: &GridWorld) -> Result<SearchResult, CliError> {
    Ok(random_search(
        world,
        &setup.phi,
        cfg.baseline_plans,
        cfg.baseline_evals,
        setup.seeds.seed("baseline", 0),
    )?)
}

/// Outcome of a full `plan` run.
#[derive(Debug, Clone)]
pub struct ExperimentSummary {
    pub world: GridWorld,
    pub final_mode_plan: Plan,
    pub final_estimate: SatEstimate,
    pub baseline: SearchResult,
    pub rows_written: u64,
}

/// Search, instrument and baseline one configuration; writes `stb.csv`,
/// `baseline.csv` and `world.txt` into `out_dir`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentSummary, CliError> {
    let setup = cfg.validate()?;
    let world = setup.world()?;
    create_out_dir(&cfg.out_dir)?;
    write_world(&cfg.out_dir, &world)?;

    let mut out = csv::Writer::from_path(cfg.out_dir.join("stb.csv"))?;
    out.write_record(STB_HEADER)?;

    let mut rows = 0u64;
    let mut failure: Option<CliError> = None;
    let mut final_state: Option<(Plan, SatEstimate)> = None;
    let search = setup.seeds.subtree("search", 0);

    stb(&world, &setup.phi, cfg.budget, &search, |rec| {
        if failure.is_some() {
            return;
        }
        let last = rec.iteration == cfg.budget;
        let mut row = vec![
            "raw".to_string(),
            rec.iteration.to_string(),
            plan_letters(rec.sampled),
            u8::from(rec.sat).to_string(),
            plan_letters(rec.mode),
            num(rec.sampled_diagnostics.avg_mode),
            num(rec.sampled_diagnostics.avg_cv),
            num(rec.mode_diagnostics.avg_mode),
            num(rec.mode_diagnostics.avg_cv),
        ];
        let result = (|| -> Result<(), CliError> {
            if rec.iteration % cfg.record_every == 0 || last {
                let mut raw = row.clone();
                raw.extend(std::iter::repeat_n(String::new(), 5));
                out.write_record(&raw)?;
                rows += 1;
            }
            if rec.iteration % cfg.estimate_every == 0 || last {
                let sampled = estimate_sat_prob(
                    &world,
                    rec.sampled,
                    &setup.phi,
                    cfg.estimate_runs,
                    setup.seeds.seed("estimate-sampled", rec.iteration),
                )?;
                let mode = estimate_sat_prob(
                    &world,
                    rec.mode,
                    &setup.phi,
                    cfg.estimate_runs,
                    setup.seeds.seed("estimate-mode", rec.iteration),
                )?;
                row[0] = "estimate".to_string();
                row.extend([
                    num(sampled.p_hat()),
                    num(sampled.stderr()),
                    num(mode.p_hat()),
                    num(mode.stderr()),
                    cfg.estimate_runs.to_string(),
                ]);
                out.write_record(&row)?;
                rows += 1;
                if last {
                    final_state = Some((rec.mode.clone(), mode));
                }
            }
            Ok(())
        })();
        if let Err(e) = result {
            failure = Some(e);
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    out.flush()?;

    let baseline = baseline(&setup, cfg, &world)?;
    write_baseline(&cfg.out_dir, cfg, &baseline)?;

    let (final_mode_plan, final_estimate) = final_state.expect("last iteration is always estimated");
    Ok(ExperimentSummary {
        world,
        final_mode_plan,
        final_estimate,
        baseline,
        rows_written: rows,
    })
}

/// Random search only; writes `baseline.csv` and `world.txt`.
pub fn run_baseline(cfg: &ExperimentConfig) -> Result<SearchResult, CliError> {
    let setup = cfg.validate()?;
    let world = setup.world()?;
    create_out_dir(&cfg.out_dir)?;
    write_world(&cfg.out_dir, &world)?;
    let result = baseline(&setup, cfg, &world)?;
    write_baseline(&cfg.out_dir, cfg, &result)?;
    Ok(result)
}

/// Ground-truth estimate of one plan with `estimate_runs` runs.
pub fn run_estimate(cfg: &ExperimentConfig, plan: &Plan) -> Result<SatEstimate, CliError> {
    let setup = cfg.validate()?;
    if plan.len() != setup.horizon {
        return Err(CliError::Config(format!(
            "plan has {} actions but the formula horizon is {}",
            plan.len(),
            setup.horizon
        )));
    }
    let world = setup.world()?;
    Ok(estimate_sat_prob(
        &world,
        plan,
        &setup.phi,
        cfg.estimate_runs,
        setup.seeds.seed("estimate", 0),
    )?)
}

/// State of the search at one chosen iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct Checkpoint {
    pub iteration: u64,
    pub mode_plan: Plan,
    pub mode_estimate: SatEstimate,
    pub mode_diagnostics: PlanDiagnostics,
    pub sampled_diagnostics: PlanDiagnostics,
}

#[derive(Debug, Clone)]
pub struct SeedReport {
    pub seed: u64,
    pub world: GridWorld,
    /// In iteration order; the last one is always the final iteration.
    pub checkpoints: Vec<Checkpoint>,
    pub baseline: Option<SearchResult>,
}

impl SeedReport {
    pub fn checkpoint(&self, iteration: u64) -> Option<&Checkpoint> {
        self.checkpoints.iter().find(|c| c.iteration == iteration)
    }

    pub fn last(&self) -> &Checkpoint {
        self.checkpoints.last().expect("final iteration is always checkpointed")
    }
}

/// Search with `cfg` (its own seed) and ground-truth the mode plan at each
/// of `checkpoints` plus the final iteration. Mode-plan estimates use the same
/// seeds as [`run_experiment`], so both report identical values.
pub fn run_seed(
    cfg: &ExperimentConfig,
    checkpoints: &[u64],
    with_baseline: bool,
) -> Result<SeedReport, CliError> {
    let setup = cfg.validate()?;
    let world = setup.world()?;
    let search = setup.seeds.subtree("search", 0);

    let mut taken = Vec::new();
    let mut failure: Option<CliError> = None;
    stb(&world, &setup.phi, cfg.budget, &search, |rec| {
        if failure.is_some() {
            return;
        }
        if rec.iteration == cfg.budget || checkpoints.contains(&rec.iteration) {
            match estimate_sat_prob(
                &world,
                rec.mode,
                &setup.phi,
                cfg.estimate_runs,
                setup.seeds.seed("estimate-mode", rec.iteration),
            ) {
                Ok(mode_estimate) => taken.push(Checkpoint {
                    iteration: rec.iteration,
                    mode_plan: rec.mode.clone(),
                    mode_estimate,
                    mode_diagnostics: rec.mode_diagnostics,
                    sampled_diagnostics: rec.sampled_diagnostics,
                }),
                Err(e) => failure = Some(e.into()),
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let baseline = if with_baseline {
        Some(baseline(&setup, cfg, &world)?)
    } else {
        None
    };
    Ok(SeedReport {
        seed: cfg.seed,
        world,
        checkpoints: taken,
        baseline,
    })
}

/// Run seeds `cfg.seed .. cfg.seed + count`, each as if passed to `plan`, and
/// write `sweep.csv` with the first (`estimate_every`) and final mode-plan
/// estimates against each seed's random-search baseline.
pub fn run_sweep(cfg: &ExperimentConfig, count: u64) -> Result<Vec<SeedReport>, CliError> {
    if count == 0 {
        return Err(CliError::Config("seeds must be at least 1".into()));
    }
    cfg.validate()?;
    create_out_dir(&cfg.out_dir)?;
    let mut out = csv::Writer::from_path(cfg.out_dir.join("sweep.csv"))?;
    out.write_record(SWEEP_HEADER)?;

    let mut reports = Vec::new();
    for seed in cfg.seed..cfg.seed + count {
        let report = run_seed(&cfg.with_seed(seed), &[cfg.estimate_every], true)?;
        let first = &report.checkpoints[0];
        let last = report.last();
        let base = report.baseline.as_ref().expect("baseline requested");
        let base_p = base.best_estimate.p_hat();
        let ratio = if base_p > 0.0 {
            num(last.mode_estimate.p_hat() / base_p)
        } else {
            String::new()
        };
        out.write_record([
            seed.to_string(),
            num(report.world.p_fail()),
            first.iteration.to_string(),
            plan_letters(&first.mode_plan),
            num(first.mode_estimate.p_hat()),
            last.iteration.to_string(),
            plan_letters(&last.mode_plan),
            num(last.mode_estimate.p_hat()),
            num(last.mode_estimate.stderr()),
            plan_letters(&base.best_plan),
            num(base_p),
            ratio,
        ])?;
        reports.push(report);
    }
    out.flush()?;
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(dir: &Path) -> ExperimentConfig {
        ExperimentConfig {
            width: 5,
            height: 5,
            formula: "G<=4 (collisions <= 0)".into(),
            budget: 30,
            estimate_every: 10,
            estimate_runs: 20,
            baseline_plans: 5,
            baseline_evals: 10,
            out_dir: dir.to_path_buf(),
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn validation_rejects_bad_values() {
        let base = ExperimentConfig::default();
        let cases = [
            ExperimentConfig { budget: 0, ..base.clone() },
            ExperimentConfig { estimate_every: 0, ..base.clone() },
            ExperimentConfig { width: 0, ..base.clone() },
            ExperimentConfig { obstacle_ratio: 1.5, ..base.clone() },
            ExperimentConfig { failure: FailureMode::Fixed(1.5), ..base.clone() },
            ExperimentConfig { formula: "G<=0 (x <= 1)".into(), ..base.clone() },
            ExperimentConfig { formula: "collisions <= 2".into(), ..base.clone() },
        ];
        for cfg in cases {
            let err = cfg.validate().unwrap_err();
            assert_eq!(err.exit_code(), 1, "{err}");
        }
        assert_eq!(base.validate().unwrap().horizon, 10);
    }

    #[test]
    fn row_count_matches_schedule() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = small(dir.path());
        cfg.budget = 25;
        let summary = run_experiment(&cfg).unwrap();
        // 25 raw rows + estimates at 10, 20, 25.
        assert_eq!(summary.rows_written, 28);
        let text = fs::read_to_string(dir.path().join("stb.csv")).unwrap();
        assert_eq!(text.lines().count(), 29);
        assert_eq!(text.lines().next().unwrap(), STB_HEADER.join(","));

        cfg.record_every = 10;
        assert_eq!(run_experiment(&cfg).unwrap().rows_written, 6);
    }

    #[test]
    fn run_seed_matches_experiment_estimates() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = small(dir.path());
        let summary = run_experiment(&cfg).unwrap();
        let report = run_seed(&cfg, &[10], true).unwrap();
        assert_eq!(report.last().mode_plan, summary.final_mode_plan);
        assert_eq!(report.last().mode_estimate, summary.final_estimate);
        assert_eq!(report.baseline.unwrap(), summary.baseline);
        assert_eq!(report.checkpoints.len(), 2);
    }

    #[test]
    fn estimate_checks_plan_length() {
        let cfg = ExperimentConfig::default();
        let err = run_estimate(&cfg, &Plan::new(vec![0; 3])).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }
}
