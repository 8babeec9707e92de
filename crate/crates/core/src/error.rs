use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero polynomial")]
    DivisionByZeroPolynomial,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("insufficient word prefix: need {needed} letters, have {available}")]
    InsufficientWordPrefix { needed: usize, available: usize },
    #[error("precision must be at least 1, got {0}")]
    InvalidPrecision(i64),
    #[error("cannot invert a zero series")]
    InvertZeroSeries,
    #[error("order unresolved at this precision")]
    OrderUnresolved,
    #[error("family index must be at least {min}, got {got}")]
    InvalidFamilyIndex { min: u32, got: u32 },
    #[error("depth must be at least {min}, got {got}")]
    DepthTooSmall { min: u64, got: u64 },
    #[error("index must be at least 1")]
    ZeroIndex,
    #[error("2-adic valuation of 0 is undefined here")]
    ValuationOfZero,
    #[error("composition exponent must be at least 1")]
    InvalidCompositionPower,
    #[error("P-recursion exactness violated at (i={i}, m={m})")]
    PRecursionInexact { i: u32, m: u32 },
    #[error("P-polynomial (i={i}, m={m}) has non-integer coefficients")]
    PNotIntegral { i: u32, m: u32 },
    #[error("P-polynomial (i={i}, m={m}) needs {needed} coefficients, over the budget of {budget}")]
    DegreeBudgetExceeded { i: u32, m: u32, needed: u128, budget: usize },
    #[error("P(1) recurrence violated between m={m} and m={next}", next = m + 1)]
    PValueRecurrence { m: u32 },
    #[error("λ recursion degenerate at n={0}")]
    LambdaDegenerate(u64),
    #[error("convergent index {requested} exceeds the {available} available quotients")]
    ConvergentIndex { requested: usize, available: usize },
    #[error("{0}")]
    Parse(String),
}
