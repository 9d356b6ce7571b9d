//! Stacked bandit search.
//!
//! The policy is a `horizon x actions` grid of [`BetaArm`]s: one independent
//! bandit per plan step. Each iteration samples a plan by Thompson selection
//! at every step, simulates it once, and credits the single boolean outcome to
//! every arm the plan used. Selection depends only on the step index and the
//! arm counts, never on simulated states.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::bandit::{argmax, select_by_sampling, BetaArm};
use crate::eval::{plan_diagnostics, PlanDiagnostics};
use crate::requirements::Requirement;
use crate::rng::SeedTree;
use crate::simworld::{SimError, SimulationModel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlannerError {
    #[error("plan length {plan} does not match stack horizon {horizon}")]
    LengthMismatch { plan: usize, horizon: usize },
    #[error("action {action} at step {step} out of range for {actions} actions")]
    ActionOutOfRange {
        step: usize,
        action: usize,
        actions: usize,
    },
    #[error("iteration budget must be at least 1")]
    EmptyBudget,
    #[error(transparent)]
    Simulation(#[from] SimError),
}

/// A fixed-length sequence of action indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Plan(Vec<usize>);

impl Plan {
    pub fn new(actions: Vec<usize>) -> Self {
        Self(actions)
    }

    pub fn actions(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.0.iter()
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }
}

impl From<Vec<usize>> for Plan {
    fn from(actions: Vec<usize>) -> Self {
        Self(actions)
    }
}

impl fmt::Display for Plan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// One bandit per plan step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BanditStack {
    horizon: usize,
    actions: usize,
    // Row-major: step i occupies arms[i * actions..(i + 1) * actions].
    arms: Vec<BetaArm>,
}

impl BanditStack {
    /// Fresh stack, every arm at `(0, 0)`.
    ///
    /// # Panics
    /// If `horizon` or `actions` is zero.
    pub fn new(horizon: usize, actions: usize) -> Self {
        assert!(horizon > 0, "stack horizon must be positive");
        assert!(actions > 0, "stack needs at least one action");
        Self {
            horizon,
            actions,
            arms: vec![BetaArm::new(); horizon * actions],
        }
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn actions(&self) -> usize {
        self.actions
    }

    pub fn step_arms(&self, step: usize) -> &[BetaArm] {
        &self.arms[step * self.actions..(step + 1) * self.actions]
    }

    pub fn step_arms_mut(&mut self, step: usize) -> &mut [BetaArm] {
        &mut self.arms[step * self.actions..(step + 1) * self.actions]
    }

    pub fn arm(&self, step: usize, action: usize) -> &BetaArm {
        &self.step_arms(step)[action]
    }

    /// Total updates received by the bandit at `step`.
    pub fn step_pulls(&self, step: usize) -> u64 {
        self.step_arms(step).iter().map(BetaArm::pulls).sum()
    }

    /// Thompson-sample one action per step.
    pub fn sample_plan<R: Rng + ?Sized>(&self, rng: &mut R) -> Plan {
        (0..self.horizon)
            .map(|step| {
                select_by_sampling(self.step_arms(step), rng).expect("stack steps are non-empty")
            })
            .collect::<Vec<_>>()
            .into()
    }

    pub(crate) fn check_plan(&self, plan: &Plan) -> Result<(), PlannerError> {
        if plan.len() != self.horizon {
            return Err(PlannerError::LengthMismatch {
                plan: plan.len(),
                horizon: self.horizon,
            });
        }
        if let Some((step, &action)) = plan.iter().enumerate().find(|(_, &a)| a >= self.actions) {
            return Err(PlannerError::ActionOutOfRange {
                step,
                action,
                actions: self.actions,
            });
        }
        Ok(())
    }

    /// Credit `sat` to arm `(plan[i], i)` for every step `i`.
    pub fn record_outcome(&mut self, plan: &Plan, sat: bool) -> Result<(), PlannerError> {
        self.check_plan(plan)?;
        for (step, &action) in plan.iter().enumerate() {
            self.step_arms_mut(step)[action].update(sat);
        }
        Ok(())
    }

    /// Per step, the action with the highest posterior mean (lowest index on
    /// ties).
    pub fn mode_plan(&self) -> Plan {
        (0..self.horizon)
            .map(|step| {
                argmax(self.step_arms(step).iter().map(BetaArm::posterior_mean))
                    .expect("stack steps are non-empty")
            })
            .collect::<Vec<_>>()
            .into()
    }
}

/// What the search loop reports after each iteration's update.
#[derive(Debug, Clone, Copy)]
pub struct IterationRecord<'a> {
    /// 1-based: the record for iteration `n` is emitted after `n` updates.
    pub iteration: u64,
    pub sampled: &'a Plan,
    pub sat: bool,
    pub mode: &'a Plan,
    pub sampled_diagnostics: PlanDiagnostics,
    pub mode_diagnostics: PlanDiagnostics,
    pub stack: &'a BanditStack,
}

/// Run `budget` search iterations against `model`.
///
/// Iteration `n` draws its plan from `seeds.stream("plan", n)` and its
/// simulation from `seeds.stream("sim", n)`, so the trajectory does not
/// depend on what `recorder` does.
pub fn stb<M, F>(
    model: &M,
    phi: &Requirement,
    budget: u64,
    seeds: &SeedTree,
    mut recorder: F,
) -> Result<BanditStack, PlannerError>
where
    M: SimulationModel + ?Sized,
    F: FnMut(&IterationRecord<'_>),
{
    if budget == 0 {
        return Err(PlannerError::EmptyBudget);
    }
    let horizon = phi.horizon().map_err(SimError::from)?;
    let mut stack = BanditStack::new(horizon, model.action_count());

    for iteration in 1..=budget {
        let sampled = stack.sample_plan(&mut seeds.stream("plan", iteration));
        let outcome = model.simulate(&sampled, phi, &mut seeds.stream("sim", iteration))?;
        stack.record_outcome(&sampled, outcome.sat)?;

        let mode = stack.mode_plan();
        let record = IterationRecord {
            iteration,
            sampled: &sampled,
            sat: outcome.sat,
            mode: &mode,
            sampled_diagnostics: plan_diagnostics(&stack, &sampled)?,
            mode_diagnostics: plan_diagnostics(&stack, &mode)?,
            stack: &stack,
        };
        recorder(&record);
    }
    Ok(stack)
}
