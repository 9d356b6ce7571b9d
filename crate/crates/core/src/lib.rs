//! Open-loop plan synthesis for bounded temporal requirements.
//!
//! A plan of fixed length is built by keeping one Beta-Bernoulli bandit per
//! plan step. Each search iteration draws a plan by Thompson sampling at every
//! step, runs it once through a stochastic simulation, and feeds the boolean
//! verdict (did the trace satisfy the requirement?) back into every arm the
//! plan used. Only the verdict is used; intermediate states never influence
//! action selection.
//!
//! Modules:
//!
//! - [`bandit`]: Beta arms, Thompson selection and posterior summaries.
//! - [`requirements`]: bounded temporal formulas, their parser, and a
//!   finite-trace evaluator.
//! - [`simworld`]: the simulation model contract and the stochastic grid world.
//! - [`planner`]: the stacked-bandit search loop and mode-plan extraction.
//! - [`eval`]: Monte-Carlo satisfaction estimates, random search, diagnostics.
//! - [`cli`]: experiment configuration, orchestration and CSV output.

pub mod bandit;
pub mod cli;
pub mod eval;
pub mod planner;
pub mod requirements;
pub mod rng;
pub mod simworld;

pub use bandit::{BanditError, BetaArm};
pub use eval::{PlanDiagnostics, SatEstimate};
pub use planner::{BanditStack, Plan, PlannerError};
pub use requirements::{Requirement, Trace};
pub use rng::{SeedTree, Stream};
pub use simworld::{GridWorld, Move, SimulationModel};
