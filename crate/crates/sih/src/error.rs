//! Error types shared across the crate.

use thiserror::Error;

/// A constructor-time invariant violation on parameters, states, or
/// perturbation sets.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValidationError {
    /// A rate that the model requires to be strictly positive is not.
    #[error("{name} must be strictly positive, got {value}")]
    NonPositiveRate { name: &'static str, value: f64 },

    /// A quantity that must be nonnegative (state counts, surcharges,
    /// benefit amounts) is negative.
    #[error("{name} must be nonnegative, got {value}")]
    NegativeValue { name: &'static str, value: f64 },

    /// The insurance horizon must cover at least one month.
    #[error("horizon must be at least 1 month, got {0}")]
    HorizonTooShort(u32),

    /// The step size must be positive and divide one month into a whole
    /// number of steps.
    #[error("dt must be positive with 1/dt a whole number of steps per month, got {0}")]
    BadStepSize(f64),

    /// Monthly interest rates below -100% make the discount factor undefined.
    #[error("monthly interest rate must exceed -1, got {0}")]
    InterestTooLow(f64),

    /// A perturbation set must contain at least one nonzero entry.
    #[error("perturbation set needs at least one nonzero entry")]
    EmptyPerturbationSet,

    /// Trajectory states must keep the cumulative death counters
    /// nondecreasing.
    #[error("cumulative {counter} counter decreases at state index {index}")]
    NonMonotoneDeaths { counter: &'static str, index: usize },
}

/// Runtime failures of the numerical operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input failed validation.
    #[error(transparent)]
    Validation(#[from] ValidationError),

    /// An integrator step drove a live compartment below zero. The step
    /// size is too large for the current state; `step` is the index
    /// relative to the start of the integration (a single-step call
    /// reports 0).
    #[error("{component} went negative at step {step}; reduce the step size")]
    NegativeState { component: &'static str, step: usize },

    /// Two independent derivations of the same quantity disagree beyond
    /// tolerance. This signals a transcription bug in the closed-form
    /// coefficients, not a property of the inputs.
    #[error("internal inconsistency in {context}: {lhs} vs {rhs}")]
    InternalInconsistency {
        context: &'static str,
        lhs: f64,
        rhs: f64,
    },

    /// A trajectory does not match the grid implied by the policy
    /// parameters.
    #[error("trajectory has {actual} states but the policy grid needs {expected}")]
    GridMismatch { expected: usize, actual: usize },

    /// The premium base is zero: nobody pays premiums, so the equivalence
    /// principle cannot determine one.
    #[error("premium base is zero; net premium is undefined")]
    DegenerateBase,

    /// A parameter perturbation left the valid parameter region.
    #[error("perturbation produces invalid parameters: {0}")]
    InvalidPerturbation(#[source] ValidationError),

    /// A sensitivity index against a zero-valued baseline quantity is
    /// undefined.
    #[error("baseline value of {quantity} is zero; sensitivity index undefined")]
    ZeroBaseline { quantity: &'static str },
}
