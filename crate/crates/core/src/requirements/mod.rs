//! Bounded temporal requirements over finite traces.
//!
//! Observation 0 of a trace is the initial state and observation `i` is the
//! state after the `i`-th action. `G<=b c` holds at position `t` iff `c` holds
//! at every position `t..=t+b`; `F<=b c` iff at some position in that window.
//! Evaluating a formula from position 0 therefore reads observations
//! `0..=horizon`.

mod parse;

use std::fmt;
use std::num::NonZeroU32;
use std::sync::Arc;

use thiserror::Error;

pub use parse::{parse, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RequirementError {
    #[error("unbounded formula: no temporal operator")]
    Unbounded,
    #[error("trace too short: need {needed} observations, got {got}")]
    TraceTooShort { needed: usize, got: usize },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparator {
    Le,
    Lt,
    Eq,
    Ge,
    Gt,
}

impl Comparator {
    pub const ALL: [Comparator; 5] = [
        Comparator::Le,
        Comparator::Lt,
        Comparator::Eq,
        Comparator::Ge,
        Comparator::Gt,
    ];

    pub fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Comparator::Le => lhs <= rhs,
            Comparator::Lt => lhs < rhs,
            Comparator::Eq => lhs == rhs,
            Comparator::Ge => lhs >= rhs,
            Comparator::Gt => lhs > rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Comparator::Le => "<=",
            Comparator::Lt => "<",
            Comparator::Eq => "=",
            Comparator::Ge => ">=",
            Comparator::Gt => ">",
        }
    }
}

/// A formula of the bounded fragment.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Requirement {
    Always {
        bound: NonZeroU32,
        child: Box<Requirement>,
    },
    Eventually {
        bound: NonZeroU32,
        child: Box<Requirement>,
    },
    Not(Box<Requirement>),
    And(Box<Requirement>, Box<Requirement>),
    Or(Box<Requirement>, Box<Requirement>),
    Atom {
        var: String,
        cmp: Comparator,
        value: i64,
    },
}

impl Requirement {
    /// # Panics
    /// If `bound` is zero.
    pub fn always(bound: u32, child: Requirement) -> Self {
        Requirement::Always {
            bound: NonZeroU32::new(bound).expect("temporal bound must be positive"),
            child: Box::new(child),
        }
    }

    /// # Panics
    /// If `bound` is zero.
    pub fn eventually(bound: u32, child: Requirement) -> Self {
        Requirement::Eventually {
            bound: NonZeroU32::new(bound).expect("temporal bound must be positive"),
            child: Box::new(child),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(child: Requirement) -> Self {
        Requirement::Not(Box::new(child))
    }

    pub fn and(left: Requirement, right: Requirement) -> Self {
        Requirement::And(Box::new(left), Box::new(right))
    }

    pub fn or(left: Requirement, right: Requirement) -> Self {
        Requirement::Or(Box::new(left), Box::new(right))
    }

    pub fn atom(var: impl Into<String>, cmp: Comparator, value: i64) -> Self {
        Requirement::Atom {
            var: var.into(),
            cmp,
            value,
        }
    }

    /// Number of plan steps the formula constrains.
    pub fn horizon(&self) -> Result<usize, RequirementError> {
        if self.has_temporal() {
            Ok(self.depth())
        } else {
            Err(RequirementError::Unbounded)
        }
    }

    /// Furthest observation offset read when evaluating at a position; 0 for
    /// purely propositional formulas.
    fn depth(&self) -> usize {
        match self {
            Requirement::Always { bound, child } | Requirement::Eventually { bound, child } => {
                bound.get() as usize + child.depth()
            }
            Requirement::Not(child) => child.depth(),
            Requirement::And(l, r) | Requirement::Or(l, r) => l.depth().max(r.depth()),
            Requirement::Atom { .. } => 0,
        }
    }

    fn has_temporal(&self) -> bool {
        match self {
            Requirement::Always { .. } | Requirement::Eventually { .. } => true,
            Requirement::Not(child) => child.has_temporal(),
            Requirement::And(l, r) | Requirement::Or(l, r) => l.has_temporal() || r.has_temporal(),
            Requirement::Atom { .. } => false,
        }
    }

    fn check_vars(&self, trace: &Trace) -> Result<(), RequirementError> {
        match self {
            Requirement::Always { child, .. }
            | Requirement::Eventually { child, .. }
            | Requirement::Not(child) => child.check_vars(trace),
            Requirement::And(l, r) | Requirement::Or(l, r) => {
                l.check_vars(trace)?;
                r.check_vars(trace)
            }
            Requirement::Atom { var, .. } => match trace.var_index(var) {
                Some(_) => Ok(()),
                None => Err(RequirementError::UnboundVariable(var.clone())),
            },
        }
    }

    /// Truth value at observation 0 of `trace`.
    pub fn evaluate(&self, trace: &Trace) -> Result<bool, RequirementError> {
        let needed = self.depth() + 1;
        if trace.len() < needed {
            return Err(RequirementError::TraceTooShort {
                needed,
                got: trace.len(),
            });
        }
        self.check_vars(trace)?;
        Ok(self.holds_at(trace, 0))
    }

    fn holds_at(&self, trace: &Trace, pos: usize) -> bool {
        match self {
            Requirement::Always { bound, child } => {
                (pos..=pos + bound.get() as usize).all(|t| child.holds_at(trace, t))
            }
            Requirement::Eventually { bound, child } => {
                (pos..=pos + bound.get() as usize).any(|t| child.holds_at(trace, t))
            }
            Requirement::Not(child) => !child.holds_at(trace, pos),
            Requirement::And(l, r) => l.holds_at(trace, pos) && r.holds_at(trace, pos),
            Requirement::Or(l, r) => l.holds_at(trace, pos) || r.holds_at(trace, pos),
            Requirement::Atom { var, cmp, value } => {
                let index = trace.var_index(var).expect("variables checked before evaluation");
                cmp.holds(trace.observation(pos)[index], *value)
            }
        }
    }
}

/// Free-function form of [`Requirement::horizon`].
pub fn horizon(phi: &Requirement) -> Result<usize, RequirementError> {
    phi.horizon()
}

/// Free-function form of [`Requirement::evaluate`].
pub fn evaluate(phi: &Requirement, trace: &Trace) -> Result<bool, RequirementError> {
    phi.evaluate(trace)
}

/// Canonical text form; [`parse`] reads it back to an equal formula.
impl fmt::Display for Requirement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Requirement::Always { bound, child } => write!(f, "G<={bound} ({child})"),
            Requirement::Eventually { bound, child } => write!(f, "F<={bound} ({child})"),
            Requirement::Not(child) => write!(f, "!({child})"),
            Requirement::And(l, r) => write!(f, "({l}) & ({r})"),
            Requirement::Or(l, r) => write!(f, "({l}) | ({r})"),
            Requirement::Atom { var, cmp, value } => write!(f, "{var} {} {value}", cmp.symbol()),
        }
    }
}

impl std::str::FromStr for Requirement {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// A finite sequence of observations over a fixed set of integer variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    vars: Arc<[String]>,
    values: Vec<i64>,
}

impl Trace {
    pub fn new(vars: Arc<[String]>) -> Self {
        Self {
            vars,
            values: Vec::new(),
        }
    }

    pub fn with_capacity(vars: Arc<[String]>, steps: usize) -> Self {
        let values = Vec::with_capacity(steps * vars.len());
        Self { vars, values }
    }

    /// Single-variable trace, handy for tests and small examples.
    pub fn from_series(var: &str, series: &[i64]) -> Self {
        Self {
            vars: Arc::from(vec![var.to_string()]),
            values: series.to_vec(),
        }
    }

    /// # Panics
    /// If `observation` does not have one value per variable.
    pub fn push(&mut self, observation: &[i64]) {
        assert_eq!(
            observation.len(),
            self.vars.len(),
            "observation width does not match trace variables"
        );
        self.values.extend_from_slice(observation);
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn len(&self) -> usize {
        if self.vars.is_empty() {
            0
        } else {
            self.values.len() / self.vars.len()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn observation(&self, step: usize) -> &[i64] {
        let width = self.vars.len();
        &self.values[step * width..(step + 1) * width]
    }

    pub fn value(&self, step: usize, name: &str) -> Option<i64> {
        let index = self.var_index(name)?;
        (step < self.len()).then(|| self.observation(step)[index])
    }

    /// All values of one variable in step order.
    pub fn series(&self, name: &str) -> Option<Vec<i64>> {
        let index = self.var_index(name)?;
        Some((0..self.len()).map(|t| self.observation(t)[index]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn collisions_le(k: i64) -> Requirement {
        Requirement::atom("collisions", Comparator::Le, k)
    }

    #[test]
    fn horizon_reads_bounds() {
        assert_eq!(Requirement::always(10, collisions_le(2)).horizon(), Ok(10));
        assert_eq!(Requirement::always(1, collisions_le(0)).horizon(), Ok(1));
        let reach = Requirement::atom("collisions", Comparator::Ge, 1);
        assert_eq!(Requirement::eventually(5, reach).horizon(), Ok(5));
    }

    #[test]
    fn horizon_of_nested_and_mixed_formulas() {
        let nested = Requirement::always(3, Requirement::eventually(2, collisions_le(1)));
        assert_eq!(nested.horizon(), Ok(5));
        let mixed = Requirement::and(collisions_le(0), Requirement::always(4, collisions_le(1)));
        assert_eq!(mixed.horizon(), Ok(4));
        assert_eq!(collisions_le(2).horizon(), Err(RequirementError::Unbounded));
    }

    #[test]
    fn always_over_collision_series() {
        let phi = Requirement::always(3, collisions_le(2));
        let ok = Trace::from_series("collisions", &[0, 0, 1, 2]);
        let bad = Trace::from_series("collisions", &[0, 1, 3, 3]);
        assert_eq!(phi.evaluate(&ok), Ok(true));
        assert_eq!(phi.evaluate(&bad), Ok(false));
    }

    #[test]
    fn eventually_that_never_holds() {
        let phi = Requirement::eventually(2, Requirement::atom("collisions", Comparator::Ge, 1));
        assert_eq!(phi.evaluate(&Trace::from_series("collisions", &[0, 0, 0])), Ok(false));
        assert_eq!(phi.evaluate(&Trace::from_series("collisions", &[0, 0, 1])), Ok(true));
    }

    #[test]
    fn evaluation_errors() {
        let phi = Requirement::always(3, collisions_le(2));
        assert_eq!(
            phi.evaluate(&Trace::from_series("collisions", &[0, 0, 0])),
            Err(RequirementError::TraceTooShort { needed: 4, got: 3 })
        );
        assert_eq!(
            phi.evaluate(&Trace::from_series("bumps", &[0, 0, 0, 0])),
            Err(RequirementError::UnboundVariable("collisions".into()))
        );
    }

    #[test]
    fn trace_accessors() {
        let vars: Arc<[String]> = Arc::from(vec!["x".to_string(), "y".to_string()]);
        let mut trace = Trace::new(vars);
        trace.push(&[0, 0]);
        trace.push(&[1, 0]);
        assert_eq!(trace.len(), 2);
        assert_eq!(trace.value(1, "x"), Some(1));
        assert_eq!(trace.value(2, "x"), None);
        assert_eq!(trace.value(0, "z"), None);
        assert_eq!(trace.series("x"), Some(vec![0, 1]));
    }

    fn nondecreasing(len: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(0i64..3, len).prop_map(|steps| {
            steps
                .iter()
                .scan(0, |acc, s| {
                    *acc += s;
                    Some(*acc)
                })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn cumulative_always_reduces_to_last_value(
            bound in 1u32..12,
            k in 0i64..8,
            series in nondecreasing(16),
        ) {
            let phi = Requirement::always(bound, collisions_le(k));
            let trace = Trace::from_series("collisions", &series);
            prop_assert_eq!(phi.evaluate(&trace).unwrap(), series[bound as usize] <= k);
        }

        #[test]
        fn negated_always_is_eventually_negated(
            bound in 1u32..8,
            k in 0i64..6,
            series in proptest::collection::vec(0i64..6, 9),
        ) {
            let inner = collisions_le(k);
            let trace = Trace::from_series("collisions", &series);
            let lhs = Requirement::not(Requirement::always(bound, inner.clone()));
            let rhs = Requirement::eventually(bound, Requirement::not(inner));
            prop_assert_eq!(lhs.evaluate(&trace), rhs.evaluate(&trace));
        }
    }
}
