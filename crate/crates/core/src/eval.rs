//! Ground-truth estimates, the random-search baseline and posterior
//! diagnostics.
//!
//! Estimation and random search fan out over rayon. Every task draws from its
//! own stream derived from the caller's seed and task index, and results are
//! combined by integer counts, so the output does not depend on scheduling.

use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::bandit::BetaArm;
use crate::planner::{BanditStack, Plan, PlannerError};
use crate::requirements::Requirement;
use crate::rng::SeedTree;
use crate::simworld::{SimError, SimulationModel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("run count must be at least 1")]
    NoRuns,
    #[error("random search needs at least one plan")]
    NoPlans,
    #[error(transparent)]
    Simulation(#[from] SimError),
}

/// Maximum-likelihood satisfaction probability from `n` Bernoulli runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SatEstimate {
    pub successes: u64,
    pub n: u64,
}

impl SatEstimate {
    /// # Panics
    /// If `n` is zero or `successes > n`.
    pub fn new(successes: u64, n: u64) -> Self {
        assert!(n >= 1 && successes <= n, "invalid estimate {successes}/{n}");
        Self { successes, n }
    }

    pub fn p_hat(&self) -> f64 {
        self.successes as f64 / self.n as f64
    }

    /// `sqrt(p_hat (1 - p_hat) / n)`.
    pub fn stderr(&self) -> f64 {
        let p = self.p_hat();
        (p * (1.0 - p) / self.n as f64).sqrt()
    }
}

/// Estimate how often `plan` satisfies `phi` over `n` independent runs.
///
/// Run `j` uses `SeedTree::new(seed).stream("run", j)`.
pub fn estimate_sat_prob<M>(
    model: &M,
    plan: &Plan,
    phi: &Requirement,
    n: u64,
    seed: u64,
) -> Result<SatEstimate, EvalError>
where
    M: SimulationModel + Sync + ?Sized,
{
    if n == 0 {
        return Err(EvalError::NoRuns);
    }
    let seeds = SeedTree::new(seed);
    let successes = (0..n)
        .into_par_iter()
        .map(|j| {
            model
                .simulate(plan, phi, &mut seeds.stream("run", j))
                .map(|o| u64::from(o.sat))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(SatEstimate::new(successes, n))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best_plan: Plan,
    pub best_estimate: SatEstimate,
    /// Position of the best plan in the candidate sequence.
    pub best_index: u64,
}

/// Uniform random plan of the given shape.
pub fn random_plan<R: Rng + ?Sized>(horizon: usize, actions: usize, rng: &mut R) -> Plan {
    (0..horizon)
        .map(|_| rng.random_range(0..actions))
        .collect::<Vec<_>>()
        .into()
}

/// Sample `n_plans` uniform plans, estimate each with `n_evals` runs and keep
/// the best (earliest on ties).
///
/// Candidate `j` comes from `stream("plan", j)` and is estimated with seed
/// `seed("eval", j)`, so a larger `n_plans` extends the same candidate
/// sequence.
pub fn random_search<M>(
    model: &M,
    phi: &Requirement,
    n_plans: u64,
    n_evals: u64,
    seed: u64,
) -> Result<SearchResult, EvalError>
where
    M: SimulationModel + Sync + ?Sized,
{
    if n_plans == 0 {
        return Err(EvalError::NoPlans);
    }
    if n_evals == 0 {
        return Err(EvalError::NoRuns);
    }
    let horizon = phi.horizon().map_err(SimError::from)?;
    let actions = model.action_count();
    let seeds = SeedTree::new(seed);

    let candidates = (0..n_plans)
        .into_par_iter()
        .map(|j| {
            let plan = random_plan(horizon, actions, &mut seeds.stream("plan", j));
            let estimate = estimate_sat_prob(model, &plan, phi, n_evals, seeds.seed("eval", j))?;
            Ok((plan, estimate))
        })
        .collect::<Result<Vec<_>, EvalError>>()?;

    let mut best: Option<SearchResult> = None;
    for (j, (plan, estimate)) in candidates.into_iter().enumerate() {
        if best
            .as_ref()
            .is_none_or(|b| estimate.successes > b.best_estimate.successes)
        {
            best = Some(SearchResult {
                best_plan: plan,
                best_estimate: estimate,
                best_index: j as u64,
            });
        }
    }
    Ok(best.expect("at least one candidate"))
}

/// Average posterior statistics over the arms a plan selects.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PlanDiagnostics {
    /// Mean of `(s + 1) / (s + f + 2)` over the plan's arms.
    pub avg_mode: f64,
    /// Mean coefficient of variation over the plan's arms.
    pub avg_cv: f64,
}

pub fn plan_diagnostics(stack: &BanditStack, plan: &Plan) -> Result<PlanDiagnostics, PlannerError> {
    stack.check_plan(plan)?;
    let arms: Vec<&BetaArm> = plan
        .iter()
        .enumerate()
        .map(|(step, &action)| stack.arm(step, action))
        .collect();
    let n = arms.len() as f64;
    Ok(PlanDiagnostics {
        avg_mode: arms.iter().map(|a| a.posterior_mean()).sum::<f64>() / n,
        avg_cv: arms.iter().map(|a| a.coefficient_of_variation()).sum::<f64>() / n,
    })
}

/// One instrumented search iteration: the diagnostics the search produced
/// plus ground-truth estimates of the sampled and mode plans.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub iteration: u64,
    pub sampled_plan_sat_estimate: SatEstimate,
    pub mode_plan_sat_estimate: SatEstimate,
    pub avg_mode_sampled: f64,
    pub avg_mode_best: f64,
    pub avg_cv_sampled: f64,
    pub avg_cv_best: f64,
}
