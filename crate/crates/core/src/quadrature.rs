//! Double-exponential quadrature.
//!
//! Finite intervals use the tanh-sinh substitution
//! `t = mid + hw * tanh(pi/2 * sinh(s))`, which clusters nodes at both
//! endpoints fast enough to integrate power singularities such as
//! `(1 - t^q)^(-1/p)` at `t = 1`. Semi-infinite ranges use the exp-sinh
//! substitution `t = a + exp(pi/2 * sinh(s))`.
//!
//! Node positions are stored as distances from the nearest endpoint, so a
//! node `1e-200` away from a singular limit is represented exactly. Kernels
//! built with [`Kernel`] receive that distance directly and never have to
//! recover it from `b - t`.
//!
//! Each refinement level halves the step `h` and only evaluates the new
//! (odd) nodes. The difference between consecutive levels is the error
//! estimate; since the method converges roughly quadratically in the number
//! of correct digits, it overstates the true error of the finer level.

use std::cell::Cell;
use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const DEFAULT_REL_TOL: f64 = 1e-12;

/// Maximum number of integrand calls per integral.
pub const EVALUATION_BUDGET: usize = 1 << 20;

const MAX_LEVEL: usize = 16;

/// Smallest endpoint distance (in half-widths) a tanh-sinh node may have.
const MIN_COMPLEMENT: f64 = 1e-300;

/// exp-sinh nodes stay within `[a + 1e-300, a + 1e300]`.
const MAX_LOG_OFFSET: f64 = 690.0;

/// Decay exponents at or below this are treated as divergent.
const DIVERGENCE_MARGIN: f64 = 1e-6;

/// Something that can be integrated.
///
/// `eval(t, to_upper)` receives the abscissa together with `b - t`, computed
/// without cancellation from the node table (`+inf` on semi-infinite
/// ranges). Plain closures `Fn(f64) -> f64` ignore the second argument.
pub trait Integrand {
    fn eval(&self, t: f64, to_upper: f64) -> f64;

    fn singular_at_upper_endpoint(&self) -> bool {
        false
    }

    /// Whether `eval` relies on `to_upper` rather than `t` near the upper
    /// limit. Nodes that round onto an endpoint are skipped otherwise.
    fn uses_complement(&self) -> bool {
        false
    }

    /// Known exponent `alpha` of the tail decay `f(t) ~ t^-alpha`.
    fn decay_exponent(&self) -> Option<f64> {
        None
    }
}

impl<F: Fn(f64) -> f64> Integrand for F {
    #[inline]
    fn eval(&self, t: f64, _to_upper: f64) -> f64 {
        self(t)
    }
}

/// An integrand that consumes the exact distance to the upper limit,
/// optionally tagged with singularity and decay metadata.
pub struct Kernel<F> {
    f: F,
    singular_at_upper: bool,
    decay_exponent: Option<f64>,
}

impl<F: Fn(f64, f64) -> f64> Kernel<F> {
    pub fn new(f: F) -> Self {
        Kernel {
            f,
            singular_at_upper: false,
            decay_exponent: None,
        }
    }

    pub fn singular_at_upper(mut self) -> Self {
        self.singular_at_upper = true;
        self
    }

    pub fn decaying_like(mut self, alpha: f64) -> Self {
        self.decay_exponent = Some(alpha);
        self
    }
}

impl<F: Fn(f64, f64) -> f64> Integrand for Kernel<F> {
    #[inline]
    fn eval(&self, t: f64, to_upper: f64) -> f64 {
        (self.f)(t, to_upper)
    }

    fn singular_at_upper_endpoint(&self) -> bool {
        self.singular_at_upper
    }

    fn uses_complement(&self) -> bool {
        true
    }

    fn decay_exponent(&self) -> Option<f64> {
        self.decay_exponent
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Tolerance {
    pub fn relative(rel: f64) -> Self {
        Tolerance { rel, abs: 0.0 }
    }

    pub fn with_abs(self, abs: f64) -> Self {
        Tolerance { abs, ..self }
    }

    fn target(&self, value: f64) -> f64 {
        (self.rel * value.abs()).max(self.abs)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::relative(DEFAULT_REL_TOL)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_err_est: f64,
    pub evaluations: usize,
}

fn check_rel_tol(rel_tol: f64) -> Result<()> {
    if rel_tol > 1e-15 && rel_tol < 1e-2 {
        Ok(())
    } else {
        Err(Error::ArgDomain(format!(
            "rel_tol must lie in (1e-15, 1e-2), got {rel_tol}"
        )))
    }
}

/// Integrates `f` over `[a, b]` to relative tolerance `rel_tol`.
///
/// `f` may have an integrable power singularity at either endpoint; nodes
/// are always strictly interior.
pub fn integrate_finite<I: Integrand + ?Sized>(
    f: &I,
    a: f64,
    b: f64,
    rel_tol: f64,
) -> Result<QuadResult> {
    check_rel_tol(rel_tol)?;
    integrate_finite_tol(f, a, b, Tolerance::relative(rel_tol))
}

/// Integrates `f` over `[a, inf)` to relative tolerance `rel_tol`.
///
/// Returns [`Error::DivergentIntegral`] when the tail decays like `t^-alpha`
/// with `alpha <= 1`, either as declared by [`Integrand::decay_exponent`]
/// or as measured from the two outermost positive samples.
pub fn integrate_to_infinity<I: Integrand + ?Sized>(
    f: &I,
    a: f64,
    rel_tol: f64,
) -> Result<QuadResult> {
    check_rel_tol(rel_tol)?;
    integrate_to_infinity_tol(f, a, Tolerance::relative(rel_tol))
}

#[derive(Clone, Copy)]
struct TsNode {
    s: f64,
    /// `1 - tanh(pi/2 sinh s)`: distance from the endpoint in half-widths.
    c: f64,
    w: f64,
}

#[derive(Clone, Copy)]
struct EsNode {
    s: f64,
    /// `exp(pi/2 sinh s)` and `exp(-pi/2 sinh s)`.
    far: f64,
    near: f64,
    w_far: f64,
    w_near: f64,
}

/// Abscissae `s > 0` new at `level`: `1, 2, ...` at level 0, odd multiples
/// of `2^-level` afterwards.
fn level_abscissae(level: usize) -> impl Iterator<Item = f64> {
    let h = (0.5f64).powi(level as i32);
    let (start, step) = if level == 0 { (1.0, 1.0) } else { (h, 2.0 * h) };
    (0..).map(move |k| start + step * k as f64)
}

fn ts_level(level: usize) -> &'static [TsNode] {
    static LEVELS: [OnceLock<Vec<TsNode>>; MAX_LEVEL + 1] =
        [const { OnceLock::new() }; MAX_LEVEL + 1];
    LEVELS[level].get_or_init(|| {
        level_abscissae(level)
            .map(|s| {
                let u = FRAC_PI_2 * s.sinh();
                let e = (-2.0 * u).exp();
                let c = 2.0 * e / (1.0 + e);
                TsNode {
                    s,
                    c,
                    w: FRAC_PI_2 * s.cosh() * c * (2.0 - c),
                }
            })
            .take_while(|n| n.c >= MIN_COMPLEMENT)
            .collect()
    })
}

fn es_level(level: usize) -> &'static [EsNode] {
    static LEVELS: [OnceLock<Vec<EsNode>>; MAX_LEVEL + 1] =
        [const { OnceLock::new() }; MAX_LEVEL + 1];
    LEVELS[level].get_or_init(|| {
        level_abscissae(level)
            .take_while(|s| FRAC_PI_2 * s.sinh() <= MAX_LOG_OFFSET)
            .map(|s| {
                let u = FRAC_PI_2 * s.sinh();
                let far = u.exp();
                let near = (-u).exp();
                let ch = FRAC_PI_2 * s.cosh();
                EsNode {
                    s,
                    far,
                    near,
                    w_far: ch * far,
                    w_near: ch * near,
                }
            })
            .collect()
    })
}

/// Tracks when the terms on one side of the node set become negligible.
struct SideCut {
    cut: f64,
    quiet: usize,
}

impl SideCut {
    fn new() -> Self {
        SideCut {
            cut: f64::INFINITY,
            quiet: 0,
        }
    }

    /// Returns false once two consecutive terms fell below `threshold`; the
    /// first of them marks the cut.
    fn observe(&mut self, s: f64, term: f64, threshold: f64) -> bool {
        if term.abs() <= threshold {
            if self.quiet == 0 {
                self.cut = s;
            }
            self.quiet += 1;
            self.quiet < 2
        } else {
            self.quiet = 0;
            self.cut = f64::INFINITY;
            true
        }
    }
}

fn prune_threshold(tol: &Tolerance, estimate: f64) -> f64 {
    1e-4 * tol.target(estimate).max(f64::MIN_POSITIVE)
}

fn checked(v: f64, t: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFiniteIntegrand(t))
    }
}

/// [`integrate_finite`] with an explicit absolute component in the
/// tolerance. Used for the short increments of Newton inversion, where only
/// absolute accuracy matters.
pub fn integrate_finite_tol<I: Integrand + ?Sized>(
    f: &I,
    a: f64,
    b: f64,
    tol: Tolerance,
) -> Result<QuadResult> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::Interval { a, b });
    }
    let width = b - a;
    let hw = 0.5 * width;
    let keep_endpoints = f.uses_complement();
    let evaluations = Cell::new(1usize);

    // Right side: t = b - d; left side: t = a + d.
    let eval_right = |d: f64| -> Result<f64> {
        let t = b - d;
        if d <= 0.0 || (!keep_endpoints && t >= b) {
            return Ok(0.0);
        }
        evaluations.set(evaluations.get() + 1);
        checked(f.eval(t, d), t)
    };
    let eval_left = |d: f64| -> Result<f64> {
        let t = a + d;
        if d <= 0.0 || (!keep_endpoints && t <= a) {
            return Ok(0.0);
        }
        evaluations.set(evaluations.get() + 1);
        checked(f.eval(t, width - d), t)
    };
    let center = checked(f.eval(a + hw, hw), a + hw)?;
    let mut abs_sum = FRAC_PI_2 * center.abs();
    let mut sum = FRAC_PI_2 * center;

    let mut right = SideCut::new();
    for node in ts_level(0) {
        let term = node.w * eval_right(hw * node.c)?;
        sum += term;
        abs_sum += term.abs();
        if !right.observe(node.s, term, prune_threshold(&tol, hw * sum) / hw) {
            break;
        }
    }
    let mut left = SideCut::new();
    for node in ts_level(0) {
        let term = node.w * eval_left(hw * node.c)?;
        sum += term;
        abs_sum += term.abs();
        if !left.observe(node.s, term, prune_threshold(&tol, hw * sum) / hw) {
            break;
        }
    }

    let mut h = 1.0;
    let mut estimate = hw * sum;
    let mut diff = f64::INFINITY;
    for level in 1..=MAX_LEVEL {
        h *= 0.5;
        let mut level_sum = 0.0;
        for node in ts_level(level) {
            let go_right = node.s < right.cut;
            let go_left = node.s < left.cut;
            if !go_right && !go_left {
                break;
            }
            if go_right {
                let term = node.w * eval_right(hw * node.c)?;
                level_sum += term;
                abs_sum += term.abs();
            }
            if go_left {
                let term = node.w * eval_left(hw * node.c)?;
                level_sum += term;
                abs_sum += term.abs();
            }
        }
        let refined = 0.5 * estimate + h * hw * level_sum;
        diff = (refined - estimate).abs();
        estimate = refined;
        let rounding = (64.0 * f64::EPSILON * h * hw * abs_sum).max(f64::MIN_POSITIVE);
        if diff <= tol.target(estimate).max(rounding) {
            return Ok(QuadResult {
                value: estimate,
                abs_err_est: diff.max(rounding),
                evaluations: evaluations.get(),
            });
        }
        if evaluations.get() >= EVALUATION_BUDGET {
            break;
        }
    }
    Err(Error::NonConvergence {
        evaluations: evaluations.get(),
        abs_err_est: diff,
    })
}

/// [`integrate_to_infinity`] with an explicit tolerance.
pub fn integrate_to_infinity_tol<I: Integrand + ?Sized>(
    f: &I,
    a: f64,
    tol: Tolerance,
) -> Result<QuadResult> {
    if !(a.is_finite() && a >= 0.0) {
        return Err(Error::Interval {
            a,
            b: f64::INFINITY,
        });
    }
    if let Some(alpha) = f.decay_exponent() {
        if alpha <= 1.0 + DIVERGENCE_MARGIN {
            return Err(Error::DivergentIntegral {
                decay_exponent: alpha,
            });
        }
    }
    let evaluations = Cell::new(1usize);
    // Outermost abscissa with a nonzero sample, for the tail bound.
    let outermost = Cell::new((0.0f64, 0.0f64));
    let eval_at = |offset: f64| -> Result<f64> {
        let t = a + offset;
        if offset <= 0.0 || !t.is_finite() || (offset < 1.0 && t <= a) {
            return Ok(0.0);
        }
        evaluations.set(evaluations.get() + 1);
        let v = checked(f.eval(t, f64::INFINITY), t)?;
        if v != 0.0 && t > outermost.get().0 {
            outermost.set((t, v));
        }
        Ok(v)
    };

    let center = checked(f.eval(a + 1.0, f64::INFINITY), a + 1.0)?;
    let mut sum = FRAC_PI_2 * center;
    let mut abs_sum = sum.abs();

    // Far side first, recording samples for the tail-ratio test.
    let mut far = SideCut::new();
    let mut tail_samples: Vec<(f64, f64)> = Vec::new();
    for node in es_level(0) {
        let value = eval_at(node.far)?;
        if value > 0.0 {
            tail_samples.push((a + node.far, value));
        }
        let term = node.w_far * value;
        sum += term;
        abs_sum += term.abs();
        if !far.observe(node.s, term, prune_threshold(&tol, sum)) {
            break;
        }
    }
    let alpha = f.decay_exponent().or_else(|| {
        let n = tail_samples.len();
        (n >= 2).then(|| {
            let (t1, f1) = tail_samples[n - 2];
            let (t2, f2) = tail_samples[n - 1];
            -(f2 / f1).ln() / (t2 / t1).ln()
        })
    });
    if let Some(alpha) = alpha {
        if alpha <= 1.0 + DIVERGENCE_MARGIN {
            return Err(Error::DivergentIntegral {
                decay_exponent: alpha,
            });
        }
    }
    // If the far side never became negligible, bound what lies beyond the
    // outermost node by the power-law tail T f(T) / (alpha - 1).
    let tail = || match alpha {
        Some(alpha) if far.cut.is_infinite() => {
            let (t, v) = outermost.get();
            t * v / (alpha - 1.0)
        }
        _ => 0.0,
    };

    let mut near = SideCut::new();
    for node in es_level(0) {
        let term = node.w_near * eval_at(node.near)?;
        sum += term;
        abs_sum += term.abs();
        if !near.observe(node.s, term, prune_threshold(&tol, sum)) {
            break;
        }
    }

    let mut h = 1.0;
    let mut estimate = sum;
    let mut diff = f64::INFINITY;
    for level in 1..=MAX_LEVEL {
        h *= 0.5;
        let mut level_sum = 0.0;
        for node in es_level(level) {
            let go_far = node.s < far.cut;
            let go_near = node.s < near.cut;
            if !go_far && !go_near {
                break;
            }
            if go_far {
                let term = node.w_far * eval_at(node.far)?;
                level_sum += term;
                abs_sum += term.abs();
            }
            if go_near {
                let term = node.w_near * eval_at(node.near)?;
                level_sum += term;
                abs_sum += term.abs();
            }
        }
        let refined = 0.5 * estimate + h * level_sum;
        diff = (refined - estimate).abs();
        estimate = refined;
        let rounding = (64.0 * f64::EPSILON * h * abs_sum).max(f64::MIN_POSITIVE);
        let err = diff.max(rounding) + tail().abs();
        if err <= tol.target(estimate).max(rounding) {
            return Ok(QuadResult {
                value: estimate,
                abs_err_est: err,
                evaluations: evaluations.get(),
            });
        }
        if evaluations.get() >= EVALUATION_BUDGET {
            break;
        }
    }
    Err(Error::NonConvergence {
        evaluations: evaluations.get(),
        abs_err_est: diff + tail().abs(),
    })
}
