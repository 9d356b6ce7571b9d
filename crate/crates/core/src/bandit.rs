//! Beta-Bernoulli arms and Thompson sampling.
//!
//! An arm counts successes `s` and failures `f`; under a uniform `Beta(1, 1)`
//! prior its posterior over the success probability is `Beta(s + 1, f + 1)`.
//! Posterior draws use the Gamma-ratio construction: if `X ~ Gamma(s + 1)` and
//! `Y ~ Gamma(f + 1)` are independent then `X / (X + Y) ~ Beta(s + 1, f + 1)`.
//! Both Gamma variates come from the caller's stream, in that order, so a
//! seeded stream reproduces every draw.

use rand::Rng;
use rand_distr::{Distribution, Gamma};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BanditError {
    #[error("no arms")]
    NoArms,
}

/// Success/failure counts of one action's Bernoulli payoff.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct BetaArm {
    successes: u64,
    failures: u64,
}

impl BetaArm {
    /// Arm with the uniform prior and no observations.
    pub const fn new() -> Self {
        Self::with_counts(0, 0)
    }

    pub const fn with_counts(successes: u64, failures: u64) -> Self {
        Self {
            successes,
            failures,
        }
    }

    pub const fn successes(&self) -> u64 {
        self.successes
    }

    pub const fn failures(&self) -> u64 {
        self.failures
    }

    /// Number of updates applied so far.
    pub const fn pulls(&self) -> u64 {
        self.successes + self.failures
    }

    /// First Beta shape parameter, `s + 1`.
    pub fn alpha(&self) -> f64 {
        self.successes as f64 + 1.0
    }

    /// Second Beta shape parameter, `f + 1`.
    pub fn beta(&self) -> f64 {
        self.failures as f64 + 1.0
    }

    pub fn update(&mut self, success: bool) {
        if success {
            self.successes += 1;
        } else {
            self.failures += 1;
        }
    }

    /// Copying variant of [`BetaArm::update`].
    #[must_use]
    pub fn updated(mut self, success: bool) -> Self {
        self.update(success);
        self
    }

    /// One draw from `Beta(s + 1, f + 1)`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        // Shapes are >= 1 and finite, so construction cannot fail.
        let x = Gamma::new(self.alpha(), 1.0)
            .expect("gamma shape >= 1")
            .sample(rng);
        let y = Gamma::new(self.beta(), 1.0)
            .expect("gamma shape >= 1")
            .sample(rng);
        x / (x + y)
    }

    /// `(s + 1) / (s + f + 2)`, the statistic used to rank actions when
    /// extracting the mode plan.
    pub fn posterior_mean(&self) -> f64 {
        self.alpha() / (self.alpha() + self.beta())
    }

    /// The true mode of `Beta(s + 1, f + 1)`, `s / (s + f)`.
    ///
    /// The uniform posterior has no unique mode; 0.5 is reported for it.
    pub fn mode(&self) -> f64 {
        match self.pulls() {
            0 => 0.5,
            n => self.successes as f64 / n as f64,
        }
    }

    pub fn variance(&self) -> f64 {
        let (a, b) = (self.alpha(), self.beta());
        let total = a + b;
        a * b / (total * total * (total + 1.0))
    }

    /// Standard deviation over mean of the posterior.
    pub fn coefficient_of_variation(&self) -> f64 {
        self.variance().sqrt() / self.posterior_mean()
    }
}

/// Index of the largest value; ties go to the lowest index.
///
/// NaN never wins a comparison, so it is only returned if every value is NaN
/// and it is the first one.
pub fn argmax<I>(values: I) -> Option<usize>
where
    I: IntoIterator<Item = f64>,
{
    let mut best: Option<(usize, f64)> = None;
    for (index, value) in values.into_iter().enumerate() {
        match best {
            Some((_, top)) if value.partial_cmp(&top) != Some(std::cmp::Ordering::Greater) => {}
            _ => best = Some((index, value)),
        }
    }
    best.map(|(index, _)| index)
}

/// Thompson selection: one posterior draw per arm, in order, then argmax.
pub fn select_by_sampling<R: Rng + ?Sized>(
    arms: &[BetaArm],
    rng: &mut R,
) -> Result<usize, BanditError> {
    argmax(arms.iter().map(|arm| arm.sample(rng))).ok_or(BanditError::NoArms)
}
