use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A (p,q) pair outside `(1, inf)^2`.
    #[error("parameter domain error: {0}")]
    ParamDomain(String),

    /// A function argument outside the function's domain.
    #[error("argument domain error: {0}")]
    ArgDomain(String),

    /// Malformed integration interval (`a >= b`, non-finite limits).
    #[error("invalid integration interval [{a}, {b}]")]
    Interval { a: f64, b: f64 },

    #[error("integrand returned a non-finite value at t = {0}")]
    NonFiniteIntegrand(f64),

    #[error("no convergence after {evaluations} evaluations (error estimate {abs_err_est:e})")]
    NonConvergence {
        evaluations: usize,
        abs_err_est: f64,
    },

    /// The integrand decays like `t^-alpha` with `alpha <= 1`.
    #[error("divergent integral: tail decay exponent {decay_exponent} <= 1")]
    DivergentIntegral { decay_exponent: f64 },

    #[error("series needs more than {terms} terms at x = {x}")]
    SlowConvergence { x: f64, terms: usize },

    #[error("derivative unavailable at x = {0}: too close to the domain boundary")]
    DerivativeUnavailable(f64),
}

impl Error {
    /// True for errors caused by an input lying outside a stated domain.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::ParamDomain(_) | Error::ArgDomain(_) | Error::Interval { .. }
        )
    }
}
