//! Power-series evaluation of `arcsin_{p,q}` and `arcsinh_{p,q}`.
//!
//! Expanding `(1 -+ t^q)^(-1/p)` binomially and integrating term by term:
//!
//! ```text
//! arcsin_{p,q}(x)  = sum_k        (1/p)_k / k! * x^(qk+1) / (qk+1)
//! arcsinh_{p,q}(x) = sum_k (-1)^k (1/p)_k / k! * x^(qk+1) / (qk+1)
//! ```
//!
//! with `(a)_k` the rising factorial; both are Gauss hypergeometric series
//! in `x^q`. They converge for `0 <= x < 1` and exist only to cross-check
//! the quadrature path, so the oracle refuses `x > 0.9` where convergence
//! gets slow.

use crate::error::{Error, Result};
use crate::pq::PqParams;

pub const TERM_BUDGET: usize = 1_000_000;

/// Largest argument the oracle accepts.
pub const MAX_ARGUMENT: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: f64,
    pub terms_used: usize,
    /// Bound on the discarded tail.
    pub truncation_bound: f64,
}

/// Ratio `term_{k+1} / term_k` of the (unsigned) series terms:
/// `(1/p + k)/(k + 1) * x^q * (qk + 1)/(q(k + 1) + 1)`.
pub fn term_ratio(params: &PqParams, x: f64, k: usize) -> f64 {
    let (p, q) = (params.p(), params.q());
    let k = k as f64;
    (1.0 / p + k) / (k + 1.0) * x.powf(q) * (q * k + 1.0) / (q * (k + 1.0) + 1.0)
}

/// Unsigned terms `(1/p)_k / k! * x^(qk+1) / (qk+1)` by multiplicative
/// recurrence.
pub fn terms(params: &PqParams, x: f64) -> impl Iterator<Item = f64> {
    let (p, q) = (params.p(), params.q());
    let xq = x.powf(q);
    // coefficient (1/p)_k / k! and power x^(qk+1)
    let mut coeff = 1.0;
    let mut power = x;
    (0..).map(move |k| {
        let kf = k as f64;
        let term = coeff * power / (q * kf + 1.0);
        coeff *= (1.0 / p + kf) / (kf + 1.0);
        power *= xq;
        term
    })
}

fn check_argument(x: f64) -> Result<()> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::ArgDomain(format!("x must lie in [0,1), got {x}")));
    }
    if x > MAX_ARGUMENT {
        return Err(Error::SlowConvergence { x, terms: 0 });
    }
    Ok(())
}

/// Sums the positive series for `arcsin_{p,q}(x)` until the geometric tail
/// bound `term * x^q / (1 - x^q)` drops below `tol * sum`.
pub fn arcsin_series(params: &PqParams, x: f64, tol: f64) -> Result<SeriesResult> {
    check_argument(x)?;
    if x == 0.0 {
        return Ok(SeriesResult {
            value: 0.0,
            terms_used: 1,
            truncation_bound: 0.0,
        });
    }
    // Each term ratio is below x^q, so the tail after term k is at most
    // term_k * r / (1 - r).
    let r = x.powf(params.q());
    let mut sum = 0.0;
    for (k, term) in terms(params, x).enumerate().take(TERM_BUDGET) {
        sum += term;
        let tail = term * r / (1.0 - r);
        if tail <= tol * sum {
            return Ok(SeriesResult {
                value: sum,
                terms_used: k + 1,
                truncation_bound: tail,
            });
        }
    }
    Err(Error::SlowConvergence {
        x,
        terms: TERM_BUDGET,
    })
}

/// Sums the alternating series for `arcsinh_{p,q}(x)`. Terms decrease in
/// magnitude, so the first omitted term bounds the truncation error.
pub fn arcsinh_series(params: &PqParams, x: f64, tol: f64) -> Result<SeriesResult> {
    check_argument(x)?;
    if x == 0.0 {
        return Ok(SeriesResult {
            value: 0.0,
            terms_used: 1,
            truncation_bound: 0.0,
        });
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    let mut it = terms(params, x).enumerate().take(TERM_BUDGET).peekable();
    while let Some((k, term)) = it.next() {
        sum += sign * term;
        sign = -sign;
        if let Some(&(_, next)) = it.peek() {
            if next <= tol * sum.abs() {
                return Ok(SeriesResult {
                    value: sum,
                    terms_used: k + 1,
                    truncation_bound: next,
                });
            }
        }
    }
    Err(Error::SlowConvergence {
        x,
        terms: TERM_BUDGET,
    })
}
