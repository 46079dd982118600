use alloc::string::String;

use num_rational::BigRational;

/// Which of the recurrence coefficient limits failed to exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitSide {
    /// Coefficient of `x^j` in `A_n`.
    A,
    /// Coefficient of `x^j` in `B_n`.
    B,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("a coefficient denominator vanishes at n = {0}")]
    DenominatorZeroAtN(u64),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error("root enclosures could not be separated within the refinement budget")]
    InsufficientSeparation,
    #[error("limit of the {1:?} coefficient of x^{0} diverges for the chosen scaling")]
    DivergentLimit(usize, LimitSide),
    #[error("no scaling exponent sigma >= 0 balances the recurrence coefficients")]
    NoValidSigma,
    #[error("series recurrence is obstructed at n = {0} (leading bracket vanishes)")]
    SeriesObstruction(usize),
    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),
    #[error("could not fix the integration constant so that z S(z) -> 1: {0}")]
    NormalizationFailure(String),
    #[error("expression left the Laurent-monomial class: {0}")]
    NonMonomialObstruction(String),
    #[error("evaluation failed: {0}")]
    EvaluationFailure(String),
    #[error("extrapolation did not stabilize at t = {0}")]
    ExtrapolationDiverged(f64),
    #[error("iteration did not converge: {0}")]
    NoConvergence(String),
    #[error("operation requires {0}")]
    Unsupported(String),
    #[error("invalid rational literal `{0}`")]
    ParseRational(String),
}

impl Error {
    pub(crate) fn denominator_zero(n: &BigRational) -> Self {
        Error::DenominatorZeroAtN(crate::util::rational_to_u64(n).unwrap_or(u64::MAX))
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
