use thiserror::Error;

/// Errors raised by the powertower library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("rencontres number D({n},{k}) requires k <= n")]
    FixedPointsExceedSize { n: usize, k: usize },

    #[error("lambda_{k} is undefined: the alternating sum vanishes for k < 2")]
    LambdaUndefined { k: usize },

    #[error("lambda mapping requires 2 <= k < n, got n={n}, k={k}")]
    LambdaDomain { n: usize, k: usize },

    #[error("expected an integer but {value} is not integral")]
    NonIntegral { value: String },

    #[error("x^x is only defined here for x > 0, got {0}")]
    NonPositiveArgument(f64),

    #[error("cannot evaluate a polynomial with negative exponents at x = 0")]
    PoleAtZero,

    #[error("finite-difference stencil leaves the domain: x={x}, h={h}, order {n}")]
    StencilOutOfDomain { n: usize, x: f64, h: f64 },

    #[error("finite differences are limited to order <= {max}, got {n}")]
    DifferenceOrderTooHigh { n: usize, max: usize },

    #[error("step size must be positive and finite, got {0}")]
    InvalidStep(f64),

    #[error("brute-force enumeration is limited to n <= {max}, got {n}")]
    EnumerationBudget { n: usize, max: usize },

    #[error("exponential of a formal series needs a zero constant term")]
    NonZeroConstantTerm,

    #[error("requested index {requested} exceeds available order {available}")]
    OrderExceeded { requested: usize, available: usize },

    #[error("checkpoints must be non-decreasing")]
    UnorderedCheckpoints,

    #[error("exact evaluation requires the anchor x = 1")]
    InexactAnchor,
}

pub type Result<T> = std::result::Result<T, Error>;
