//! Geometric (multiplicative) convexity.
//!
//! A positive function `f` on an interval `I` of `(0, inf)` is geometrically
//! convex when
//!
//! ```text
//! f(x^l y^(1-l)) <= f(x)^l f(y)^(1-l)     for all x, y in I, l in [0, 1]
//! ```
//!
//! and geometrically concave when the inequality is reversed. For twice
//! differentiable `f` this is equivalent to the elasticity `x f'(x) / f(x)`
//! being increasing, and to
//!
//! ```text
//! x (f f'' - f'^2) + f f' >= 0.
//! ```
//!
//! Power functions satisfy the definition with equality; they are reported
//! as [`Classification::MultiplicativelyAffine`].
//!
//! Two facts used by the convexity argument for `sin_{p,q}` are easy to
//! misstate, so they are recorded here as tested:
//!
//! * The cumulative integral `x -> int_a^x f` of a geometrically concave `f`
//!   is geometrically concave. For a geometrically convex integrand the
//!   mirror statement holds with `a = 0` (e.g. `e^x - 1`, `arcsin_{p,q}`) but
//!   fails for `a > 0`: `e^x - e` on `(1, 2)` is geometrically concave.
//! * Inversion swaps the two notions for increasing functions: the inverse
//!   of an increasing geometrically convex function is geometrically
//!   concave, and vice versa.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::pq::{self, PqParams};
use crate::quadrature::{integrate_finite, DEFAULT_REL_TOL};
use crate::sampling::QuasiRandom;

/// Relative step for first-derivative central differences.
pub const FIRST_DIFF_STEP: f64 = 1e-6;
/// Relative step for second-derivative central differences.
pub const SECOND_DIFF_STEP: f64 = 1e-4;
/// Finite differences need this many steps of clearance from the boundary.
const BOUNDARY_MARGIN: f64 = 10.0;

pub const DEFAULT_TOL: f64 = 1e-9;

type Scalar = Arc<dyn Fn(f64) -> Result<f64> + Send + Sync>;

/// A positive function on an interval `(lo, hi)` of `(0, inf)`, with
/// optional analytic derivatives.
#[derive(Clone)]
pub struct FunctionHandle {
    f: Scalar,
    d1: Option<Scalar>,
    d2: Option<Scalar>,
    lo: f64,
    hi: f64,
}

impl std::fmt::Debug for FunctionHandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FunctionHandle")
            .field("domain", &(self.lo, self.hi))
            .field("analytic_d1", &self.d1.is_some())
            .field("analytic_d2", &self.d2.is_some())
            .finish()
    }
}

fn lift<F: Fn(f64) -> f64 + Send + Sync + 'static>(f: F) -> Scalar {
    Arc::new(move |x| Ok(f(x)))
}

impl FunctionHandle {
    pub fn new<F>(domain: (f64, f64), f: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::fallible(domain, move |x| Ok(f(x)))
    }

    pub fn fallible<F>(domain: (f64, f64), f: F) -> Result<Self>
    where
        F: Fn(f64) -> Result<f64> + Send + Sync + 'static,
    {
        let (lo, hi) = domain;
        if !(lo >= 0.0 && lo < hi) || lo.is_nan() || hi.is_nan() {
            return Err(Error::ArgDomain(format!(
                "domain must be a nondegenerate interval in (0, inf), got ({lo}, {hi})"
            )));
        }
        Ok(FunctionHandle {
            f: Arc::new(f),
            d1: None,
            d2: None,
            lo,
            hi,
        })
    }

    pub fn with_derivative<F: Fn(f64) -> f64 + Send + Sync + 'static>(mut self, d1: F) -> Self {
        self.d1 = Some(lift(d1));
        self
    }

    pub fn with_second_derivative<F: Fn(f64) -> f64 + Send + Sync + 'static>(
        mut self,
        d2: F,
    ) -> Self {
        self.d2 = Some(lift(d2));
        self
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if !self.contains(x) {
            return Err(Error::ArgDomain(format!(
                "{x} lies outside the domain ({}, {})",
                self.lo, self.hi
            )));
        }
        (self.f)(x)
    }

    /// `x^k`, multiplicatively affine with elasticity `k`.
    pub fn power(k: f64, domain: (f64, f64)) -> Result<Self> {
        Ok(Self::new(domain, move |x| x.powf(k))?
            .with_derivative(move |x| k * x.powf(k - 1.0))
            .with_second_derivative(move |x| k * (k - 1.0) * x.powf(k - 2.0)))
    }

    /// `e^x`, geometrically convex with elasticity `x`.
    pub fn exponential(domain: (f64, f64)) -> Result<Self> {
        Ok(Self::new(domain, f64::exp)?
            .with_derivative(f64::exp)
            .with_second_derivative(f64::exp))
    }

    /// `(1 - t^q)^(-1/p)` on `(0, 1)` with analytic derivatives.
    pub fn sine_integrand(params: &PqParams) -> Self {
        let (p, q) = (params.p(), params.q());
        let c = *params;
        Self::new((0.0, 1.0), move |t| pq::sine_density(&c, t))
            .expect("(0, 1) is a valid domain")
            .with_derivative(move |t| {
                let g = 1.0 - t.powf(q);
                q / p * t.powf(q - 1.0) * g.powf(-1.0 / p - 1.0)
            })
            .with_second_derivative(move |t| {
                let tq = t.powf(q);
                let g = 1.0 - tq;
                q / p
                    * t.powf(q - 2.0)
                    * g.powf(-1.0 / p - 2.0)
                    * ((q - 1.0) * g + q * (1.0 + 1.0 / p) * tq)
            })
    }

    /// `(1 + t^q)^(-1/p)` on `(0, hi)` with analytic derivatives.
    pub fn sinh_integrand(params: &PqParams, hi: f64) -> Result<Self> {
        let (p, q) = (params.p(), params.q());
        let c = *params;
        Ok(Self::new((0.0, hi), move |t| pq::sinh_density(&c, t))?
            .with_derivative(move |t| {
                -q / p * t.powf(q - 1.0) * (1.0 + t.powf(q)).powf(-1.0 / p - 1.0)
            })
            .with_second_derivative(move |t| {
                let tq = t.powf(q);
                let g = 1.0 + tq;
                -q / p
                    * t.powf(q - 2.0)
                    * g.powf(-1.0 / p - 2.0)
                    * ((q - 1.0) * g - q * (1.0 + 1.0 / p) * tq)
            }))
    }

    /// `arcsin_{p,q}` on `(0, 1)`; its derivative is the sine integrand.
    pub fn arcsin_pq(params: &PqParams, rel_tol: f64) -> Self {
        let c = *params;
        Self::fallible(
            (0.0, 1.0),
            move |x| Ok(pq::arcsin_pq(&c, x, rel_tol)?.value),
        )
        .expect("(0, 1) is a valid domain")
        .with_derivative(move |x| pq::sine_density(&c, x))
    }

    /// `sin_{p,q}` on `(0, hi)`, `hi <= pi_{p,q}/2`.
    pub fn sin_pq(params: &PqParams, hi: f64, rel_tol: f64) -> Result<Self> {
        let c = *params;
        Self::fallible((0.0, hi), move |y| Ok(pq::sin_pq(&c, y, rel_tol)?.value))
    }

    /// `sinh_{p,q}` on `(0, hi)`, `hi <= m*_{p,q}`.
    pub fn sinh_pq(params: &PqParams, hi: f64, rel_tol: f64) -> Result<Self> {
        let c = *params;
        Self::fallible((0.0, hi), move |y| Ok(pq::sinh_pq(&c, y, rel_tol)?.value))
    }

    /// `x -> int_lo^x f(t) dt` by quadrature.
    pub fn cumulative_integral(&self) -> Result<Self> {
        if !self.hi.is_finite() {
            return Err(Error::ArgDomain(
                "cumulative integral needs a bounded domain".into(),
            ));
        }
        let inner = self.clone();
        let lo = self.lo;
        let derivative = self.clone();
        let mut h = Self::fallible((self.lo, self.hi), move |x| {
            let g = |t: f64| (inner.f)(t).unwrap_or(f64::NAN);
            Ok(integrate_finite(&g, lo, x, DEFAULT_REL_TOL)?.value)
        })?;
        h.d1 = Some(Arc::new(move |x| (derivative.f)(x)));
        Ok(h)
    }

    /// Numerical inverse of an increasing function, by bisection on the
    /// original domain. The inverse lives on `(f(lo+), f(hi-))`.
    pub fn inverse_of_increasing(&self) -> Result<Self> {
        let lo = (self.f)(self.lo.next_up())?;
        let hi = (self.f)(self.hi.next_down())?;
        if !(lo < hi) {
            return Err(Error::ArgDomain(
                "function is not increasing on its domain".into(),
            ));
        }
        let inner = self.clone();
        Self::fallible((lo.max(0.0), hi), move |v| {
            let (mut a, mut b) = (inner.lo, inner.hi);
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                if (inner.f)(m)? < v {
                    a = m;
                } else {
                    b = m;
                }
            }
            Ok(0.5 * (a + b))
        })
    }
}

/// `f(x^l y^(1-l)) - f(x)^l f(y)^(1-l)`: nonpositive everywhere for
/// geometrically convex `f`, nonnegative for geometrically concave `f`.
pub fn gc_defect(f: &FunctionHandle, x: f64, y: f64, lambda: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::ArgDomain(format!(
            "lambda must lie in [0,1], got {lambda}"
        )));
    }
    let fx = f.eval(x)?;
    let fy = f.eval(y)?;
    let mid = x.powf(lambda) * y.powf(1.0 - lambda);
    let fm = f.eval(mid.clamp(x.min(y), x.max(y)))?;
    Ok(fm - fx.powf(lambda) * fy.powf(1.0 - lambda))
}

fn first_derivative(f: &FunctionHandle, x: f64) -> Result<f64> {
    if let Some(d1) = &f.d1 {
        return d1(x);
    }
    let h = FIRST_DIFF_STEP * x;
    if !(f.contains(x - BOUNDARY_MARGIN * h) && f.contains(x + BOUNDARY_MARGIN * h)) {
        return Err(Error::DerivativeUnavailable(x));
    }
    Ok((f.eval(x + h)? - f.eval(x - h)?) / (2.0 * h))
}

fn second_derivative(f: &FunctionHandle, x: f64) -> Result<f64> {
    if let Some(d2) = &f.d2 {
        return d2(x);
    }
    let h = SECOND_DIFF_STEP * x;
    if !(f.contains(x - BOUNDARY_MARGIN * h) && f.contains(x + BOUNDARY_MARGIN * h)) {
        return Err(Error::DerivativeUnavailable(x));
    }
    Ok((f.eval(x + h)? - 2.0 * f.eval(x)? + f.eval(x - h)?) / (h * h))
}

/// `x f'(x) / f(x)`.
pub fn elasticity(f: &FunctionHandle, x: f64) -> Result<f64> {
    let fx = f.eval(x)?;
    Ok(x * first_derivative(f, x)? / fx)
}

/// `x (f f'' - f'^2) + f f'`, nonnegative for geometrically convex `f`.
pub fn lemma21_criterion(f: &FunctionHandle, x: f64) -> Result<f64> {
    let fx = f.eval(x)?;
    let d1 = first_derivative(f, x)?;
    let d2 = second_derivative(f, x)?;
    Ok(x * (fx * d2 - d1 * d1) + fx * d1)
}

/// Closed-form elasticity `(q/p) t^q / (1 - t^q)` of the sine integrand.
pub fn integrand_elasticity(params: &PqParams, t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::ArgDomain(format!("t must lie in (0,1), got {t}")));
    }
    let tq = t.powf(params.q());
    Ok(params.q() / params.p() * tq / (1.0 - tq))
}

/// Derivative `q t^(q-1) / (1 - t^q)^2` of `t^q / (1 - t^q)`; positive on
/// `(0, 1)`, so the integrand elasticity is increasing.
pub fn integrand_elasticity_slope(params: &PqParams, t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::ArgDomain(format!("t must lie in (0,1), got {t}")));
    }
    let q = params.q();
    let g = 1.0 - t.powf(q);
    Ok(q * t.powf(q - 1.0) / (g * g))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Classification {
    GeometricallyConvex,
    GeometricallyConcave,
    MultiplicativelyAffine,
    Indeterminate,
}

impl Classification {
    /// Classifies a set of defects (or of `-criterion` values) spanning
    /// `[min, max]`. A band `|d| <= tol` wins over convex/concave.
    pub fn from_range(min: f64, max: f64, tol: f64) -> Self {
        match (max <= tol, min >= -tol) {
            (true, true) => Classification::MultiplicativelyAffine,
            (true, false) => Classification::GeometricallyConvex,
            (false, true) => Classification::GeometricallyConcave,
            (false, false) => Classification::Indeterminate,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GcReport {
    pub classification: Classification,
    /// The sampled defect least favourable to `classification` (the
    /// largest in magnitude for affine or indeterminate results).
    pub worst_defect: f64,
    /// `(x, y, lambda)` attaining `worst_defect`.
    pub witness: (f64, f64, f64),
    pub min_defect: f64,
    pub max_defect: f64,
    pub samples: usize,
    pub tol: f64,
}

/// Maps `u` in `(0, 1)` log-uniformly into the open interval `(lo, hi)`.
/// A zero lower limit is replaced by `hi * 1e-6`.
pub fn log_uniform(u: f64, lo: f64, hi: f64) -> f64 {
    let lo_eff = if lo > 0.0 { lo } else { hi * 1e-6 };
    let x = (lo_eff.ln() + u * (hi.ln() - lo_eff.ln())).exp();
    x.clamp(lo.next_up(), hi.next_down())
}

/// Evaluates the defect on `samples` seeded low-discrepancy triples
/// `(x, y, lambda)`, with `x, y` log-uniform over the domain.
pub fn classify(f: &FunctionHandle, samples: usize, tol: f64, seed: u64) -> Result<GcReport> {
    if samples == 0 {
        return Err(Error::ArgDomain("samples must be at least 1".into()));
    }
    if !f.hi.is_finite() {
        return Err(Error::ArgDomain("classify needs a bounded domain".into()));
    }
    let mut seq = QuasiRandom::new(3, seed);
    let mut defects = Vec::with_capacity(samples);
    for _ in 0..samples {
        let u = seq.next_point();
        let x = log_uniform(u[0], f.lo, f.hi);
        let y = log_uniform(u[1], f.lo, f.hi);
        let lambda = u[2];
        defects.push(((x, y, lambda), gc_defect(f, x, y, lambda)?));
    }
    let first_extreme = |better: fn(f64, f64) -> bool| {
        defects
            .iter()
            .copied()
            .reduce(|acc, d| if better(d.1, acc.1) { d } else { acc })
            .expect("at least one sample")
    };
    let max = first_extreme(|a, b| a > b);
    let min = first_extreme(|a, b| a < b);
    let classification = Classification::from_range(min.1, max.1, tol);
    let worst = match classification {
        Classification::GeometricallyConvex => max,
        Classification::GeometricallyConcave => min,
        _ => {
            if max.1.abs() >= min.1.abs() {
                max
            } else {
                min
            }
        }
    };
    Ok(GcReport {
        classification,
        worst_defect: worst.1,
        witness: worst.0,
        min_defect: min.1,
        max_defect: max.1,
        samples,
        tol,
    })
}

/// Direction of a sampled quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trend {
    Increasing,
    Decreasing,
    Constant,
    Mixed,
}

impl Trend {
    fn of(values: impl IntoIterator<Item = f64>, tol: f64) -> Self {
        let (mut up, mut down) = (false, false);
        for v in values {
            up |= v > tol;
            down |= v < -tol;
        }
        match (up, down) {
            (false, false) => Trend::Constant,
            (true, false) => Trend::Increasing,
            (false, true) => Trend::Decreasing,
            (true, true) => Trend::Mixed,
        }
    }

    /// The geometric-convexity class this trend of the elasticity implies.
    pub fn classification(self) -> Classification {
        match self {
            Trend::Increasing => Classification::GeometricallyConvex,
            Trend::Decreasing => Classification::GeometricallyConcave,
            Trend::Constant => Classification::MultiplicativelyAffine,
            Trend::Mixed => Classification::Indeterminate,
        }
    }
}

/// The three equivalent characterizations evaluated on one function.
#[derive(Debug, Clone, PartialEq)]
pub struct CriteriaEvidence {
    /// Monotonicity of the elasticity from divided differences on `grid`.
    pub elasticity: Classification,
    /// Sign of the second-order criterion on `grid`.
    pub criterion: Classification,
    /// Sampled defect classification.
    pub defect: Classification,
}

impl CriteriaEvidence {
    pub fn agree(&self) -> bool {
        self.elasticity == self.criterion && self.criterion == self.defect
    }
}

pub fn criteria_evidence(
    f: &FunctionHandle,
    grid: &[f64],
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<CriteriaEvidence> {
    let el = grid
        .iter()
        .map(|&x| elasticity(f, x))
        .collect::<Result<Vec<_>>>()?;
    let slopes = el
        .windows(2)
        .zip(grid.windows(2))
        .map(|(e, x)| (e[1] - e[0]) / (x[1] - x[0]));
    let elasticity = Trend::of(slopes, tol).classification();
    let crit = grid
        .iter()
        .map(|&x| lemma21_criterion(f, x))
        .collect::<Result<Vec<_>>>()?;
    // Criterion >= 0 means convex: it plays the role of a negated defect.
    let lo = crit.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = crit.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let criterion = Classification::from_range(-hi, -lo, tol);
    let defect = classify(f, samples, tol, seed)?.classification;
    Ok(CriteriaEvidence {
        elasticity,
        criterion,
        defect,
    })
}
