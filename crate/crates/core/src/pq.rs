//! The (p,q)-functions and their constants.
//!
//! Forward maps are integrals:
//!
//! ```text
//! arcsin_{p,q}(x)  = int_0^x (1 - t^q)^(-1/p) dt,   0 <= x <= 1
//! arcsinh_{p,q}(x) = int_0^x (1 + t^q)^(-1/p) dt,   x >= 0
//! pi_{p,q}         = 2 arcsin_{p,q}(1)
//! m*_{p,q}         = int_0^inf (1 + t^q)^(-1/p) dt   (finite iff q > p)
//! ```
//!
//! `sin_{p,q}` and `sinh_{p,q}` are obtained by inverting these maps with a
//! bisection-safeguarded Newton iteration. To keep inversion cheap, each
//! parameter pair gets a memoized table of anchor points `(t, F(t))`; an
//! inversion starts from the bracketing anchors and integrates only the
//! short increments between Newton iterates.
//!
//! With `p == q` these are the one-parameter p-functions; there is no
//! separate code path for that case.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_finite_tol, Integrand, Kernel, Tolerance};

/// Tolerance for memoized constants and anchor tables.
const TABLE_TOL: f64 = 1e-14;

/// Above this, sine inversion falls back to pure bisection.
const BISECTION_ZONE: f64 = 1.0 - 1e-6;

const MAX_INVERSION_STEPS: usize = 200;

/// A validated parameter pair with `p, q > 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PqParams {
    p: f64,
    q: f64,
}

impl PqParams {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        for (name, v) in [("p", p), ("q", q)] {
            if !v.is_finite() || v <= 1.0 {
                return Err(Error::ParamDomain(format!(
                    "{name} must be a finite number greater than 1, got {v}"
                )));
            }
        }
        Ok(PqParams { p, q })
    }

    /// The one-parameter case `(p, p)`.
    pub fn p_function(p: f64) -> Result<Self> {
        Self::new(p, p)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// `m*_{p,q}` is finite exactly when `q > p`.
    pub fn has_finite_m_star(&self) -> bool {
        self.q > self.p
    }

    fn key(&self) -> (u64, u64) {
        (self.p.to_bits(), self.q.to_bits())
    }
}

pub fn validate(p: f64, q: f64) -> Result<PqParams> {
    PqParams::new(p, q)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PqConstants {
    pub pi_pq: f64,
    /// `f64::INFINITY` when `q <= p`.
    pub m_star: f64,
    pub pi_abs_err: f64,
    pub m_star_abs_err: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub abs_err_est: f64,
}

impl EvalResult {
    fn exact(value: f64) -> Self {
        EvalResult {
            value,
            abs_err_est: 0.0,
        }
    }
}

/// `1 - t^q` given `t` and `d = 1 - t`, accurate when `t` is close to 1.
#[inline]
fn one_minus_pow(t: f64, d: f64, q: f64) -> f64 {
    if d < 0.5 {
        -(q * (-d).ln_1p()).exp_m1()
    } else {
        1.0 - t.powf(q)
    }
}

/// `ln(1 + t^q)` without overflow for huge `t`.
#[inline]
fn ln_one_plus_pow(t: f64, q: f64) -> f64 {
    if t <= 1.0 {
        t.powf(q).ln_1p()
    } else {
        q * t.ln() + t.powf(-q).ln_1p()
    }
}

/// `(1 - t^q)^(-1/p)`, the derivative of `arcsin_{p,q}`.
#[inline]
pub fn sine_density(params: &PqParams, t: f64) -> f64 {
    one_minus_pow(t, 1.0 - t, params.q).powf(-1.0 / params.p)
}

/// `(1 + t^q)^(-1/p)`, the derivative of `arcsinh_{p,q}`.
#[inline]
pub fn sinh_density(params: &PqParams, t: f64) -> f64 {
    (-ln_one_plus_pow(t, params.q) / params.p).exp()
}

/// Integrand of `arcsin_{p,q}` on an interval whose upper limit is `upper`.
/// The distance to the singularity at 1 is rebuilt as `(1 - upper) + (upper - t)`.
fn sine_kernel(params: PqParams, upper: f64) -> impl Integrand {
    let gap = 1.0 - upper;
    let e = -1.0 / params.p;
    Kernel::new(move |t: f64, to_upper: f64| one_minus_pow(t, gap + to_upper, params.q).powf(e))
        .singular_at_upper()
}

fn sinh_kernel(params: PqParams) -> impl Integrand {
    Kernel::new(move |t: f64, _| (-ln_one_plus_pow(t, params.q) / params.p).exp())
        .decaying_like(params.q / params.p)
}

fn check_tol(rel_tol: f64) -> Result<()> {
    if rel_tol > 1e-15 && rel_tol < 1e-2 {
        Ok(())
    } else {
        Err(Error::ArgDomain(format!(
            "rel_tol must lie in (1e-15, 1e-2), got {rel_tol}"
        )))
    }
}

fn integrate_sine(params: &PqParams, a: f64, b: f64, tol: Tolerance) -> Result<EvalResult> {
    let r = integrate_finite_tol(&sine_kernel(*params, b), a, b, tol)?;
    Ok(EvalResult {
        value: r.value,
        abs_err_est: r.abs_err_est,
    })
}

fn integrate_sinh(params: &PqParams, a: f64, b: f64, tol: Tolerance) -> Result<EvalResult> {
    let r = integrate_finite_tol(&sinh_kernel(*params), a, b, tol)?;
    Ok(EvalResult {
        value: r.value,
        abs_err_est: r.abs_err_est,
    })
}

fn compute_pi(params: &PqParams, tol: f64) -> Result<(f64, f64)> {
    // Near 1 the integrand behaves like (q d)^(-1/p), d = 1 - t, which for p
    // close to 1 leaves mass below any representable node. With d = w^g,
    // g = p/(p - 1), the piece over [1/2, 1] becomes
    // g int_0^(2^(-1/g)) (d / (1 - t^q))^(1/p) dw, a bounded integrand.
    let (p, q) = (params.p, params.q);
    let g = p / (p - 1.0);
    let tol = Tolerance::relative(tol);
    let head = integrate_sine(params, 0.0, 0.5, tol)?;
    let tail = integrate_finite_tol(
        &|w: f64| {
            let d = w.powf(g);
            // (1 - t^q)/d = q (1 + O(d)); avoids subnormal d.
            if d < 1e-20 {
                return q.powf(-1.0 / p);
            }
            (d / one_minus_pow(1.0 - d, d, q)).powf(1.0 / p)
        },
        0.0,
        0.5f64.powf(1.0 / g),
        tol,
    )?;
    let half = head.value + g * tail.value;
    let err = head.abs_err_est + g * tail.abs_err_est;
    Ok((2.0 * half, 2.0 * err))
}

fn compute_m_star(params: &PqParams, tol: f64) -> Result<(f64, f64)> {
    if !params.has_finite_m_star() {
        return Ok((f64::INFINITY, 0.0));
    }
    // Split at 1 and map the tail with t = w^-b, b = p/(q - p):
    // int_1^inf (1 + t^q)^(-1/p) dt = b int_0^1 (1 + w^(bq))^(-1/p) dw,
    // a bounded integrand however slowly the original tail decays.
    let (p, q) = (params.p, params.q);
    let b = p / (q - p);
    let tol = Tolerance::relative(tol);
    let head = integrate_sinh(params, 0.0, 1.0, tol)?;
    let tail = integrate_finite_tol(
        &|w: f64| (-(b * q * w.ln()).exp().ln_1p() / p).exp(),
        0.0,
        1.0,
        tol,
    )?;
    Ok((
        head.value + b * tail.value,
        head.abs_err_est + b * tail.abs_err_est,
    ))
}

#[derive(Debug, Clone, Copy)]
struct Anchor {
    t: f64,
    value: f64,
    err: f64,
}

/// Lazily computed per-parameter data, shared between threads.
#[derive(Default)]
struct Tables {
    pi: OnceLock<Result<(f64, f64)>>,
    m_star: OnceLock<Result<(f64, f64)>>,
    sine: OnceLock<Result<Vec<Anchor>>>,
    sinh: OnceLock<Result<Vec<Anchor>>>,
}

type TableCache = RwLock<HashMap<(u64, u64), Arc<Tables>>>;

fn tables(params: &PqParams) -> Arc<Tables> {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache
        .read()
        .unwrap_or_else(|e| e.into_inner())
        .get(&params.key())
    {
        return Arc::clone(t);
    }
    let mut map = cache.write().unwrap_or_else(|e| e.into_inner());
    Arc::clone(map.entry(params.key()).or_default())
}

impl Tables {
    fn pi(&self, params: &PqParams) -> Result<(f64, f64)> {
        self.pi
            .get_or_init(|| compute_pi(params, TABLE_TOL))
            .clone()
    }

    fn m_star(&self, params: &PqParams) -> Result<(f64, f64)> {
        self.m_star
            .get_or_init(|| compute_m_star(params, TABLE_TOL))
            .clone()
    }

    fn sine_anchors(&self, params: &PqParams) -> Result<&[Anchor]> {
        let r = self.sine.get_or_init(|| {
            let (pi, pi_err) = self.pi(params)?;
            let mut ts: Vec<f64> = (0..16).map(|j| j as f64 / 16.0).collect();
            ts.extend((5..=40).map(|k| 1.0 - (0.5f64).powi(k)));
            let mut anchors = chain(&ts, |a, b| {
                integrate_sine(params, a, b, Tolerance::relative(TABLE_TOL))
            })?;
            anchors.push(Anchor {
                t: 1.0,
                value: 0.5 * pi,
                err: 0.5 * pi_err,
            });
            Ok(anchors)
        });
        r.as_deref().map_err(Clone::clone)
    }

    fn sinh_anchors(&self, params: &PqParams) -> Result<&[Anchor]> {
        let r = self.sinh.get_or_init(|| {
            let mut ts: Vec<f64> = (0..=16).map(|j| j as f64 / 8.0).collect();
            ts.extend((1..=124).map(|k| 2.0 * 2f64.powf(k as f64 / 2.0)));
            chain(&ts, |a, b| {
                integrate_sinh(params, a, b, Tolerance::relative(TABLE_TOL))
            })
        });
        r.as_deref().map_err(Clone::clone)
    }
}

/// Cumulative integrals at the points `ts` (starting at 0), chained from
/// interval to interval.
fn chain<F>(ts: &[f64], mut integral: F) -> Result<Vec<Anchor>>
where
    F: FnMut(f64, f64) -> Result<EvalResult>,
{
    let mut out = Vec::with_capacity(ts.len() + 1);
    let mut prev = Anchor {
        t: ts[0],
        value: 0.0,
        err: 0.0,
    };
    out.push(prev);
    for &t in &ts[1..] {
        let r = integral(prev.t, t)?;
        prev = Anchor {
            t,
            value: prev.value + r.value,
            err: prev.err + r.abs_err_est,
        };
        out.push(prev);
    }
    Ok(out)
}

/// `pi_{p,q}` and `m*_{p,q}`.
///
/// Values are memoized per parameter pair at a tolerance of `1e-14`, which
/// serves every `rel_tol >= 1e-14`; tighter requests are computed afresh.
pub fn constants(params: &PqParams, rel_tol: f64) -> Result<PqConstants> {
    check_tol(rel_tol)?;
    let ((pi_pq, pi_abs_err), (m_star, m_star_abs_err)) = if rel_tol >= TABLE_TOL {
        let t = tables(params);
        (t.pi(params)?, t.m_star(params)?)
    } else {
        (
            compute_pi(params, rel_tol)?,
            compute_m_star(params, rel_tol)?,
        )
    };
    Ok(PqConstants {
        pi_pq,
        m_star,
        pi_abs_err,
        m_star_abs_err,
    })
}

fn half_pi(params: &PqParams) -> Result<(f64, f64)> {
    let (pi, err) = tables(params).pi(params)?;
    Ok((0.5 * pi, 0.5 * err))
}

pub fn arcsin_pq(params: &PqParams, x: f64, rel_tol: f64) -> Result<EvalResult> {
    check_tol(rel_tol)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::ArgDomain(format!("x must lie in [0,1], got {x}")));
    }
    if x == 0.0 {
        return Ok(EvalResult::exact(0.0));
    }
    if x == 1.0 {
        let c = constants(params, rel_tol)?;
        return Ok(EvalResult {
            value: 0.5 * c.pi_pq,
            abs_err_est: 0.5 * c.pi_abs_err,
        });
    }
    integrate_sine(params, 0.0, x, Tolerance::relative(rel_tol))
}

/// `arccos_{p,q}(x) = arcsin_{p,q}((1 - x^p)^(1/q))`.
pub fn arccos_pq(params: &PqParams, x: f64, rel_tol: f64) -> Result<EvalResult> {
    check_tol(rel_tol)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::ArgDomain(format!("x must lie in [0,1], got {x}")));
    }
    if x == 1.0 {
        return Ok(EvalResult::exact(0.0));
    }
    let u = (1.0 - x.powf(params.p)).powf(1.0 / params.q);
    arcsin_pq(params, u, rel_tol)
}

pub fn arcsinh_pq(params: &PqParams, x: f64, rel_tol: f64) -> Result<EvalResult> {
    check_tol(rel_tol)?;
    if !(x.is_finite() && x >= 0.0) {
        return Err(Error::ArgDomain(format!(
            "x must be a finite number >= 0, got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(EvalResult::exact(0.0));
    }
    integrate_sinh(params, 0.0, x, Tolerance::relative(rel_tol))
}

/// Solves `F(t) = y` for an increasing `F` with known values at `lo` and
/// `hi`, where `F(b) - F(a)` is supplied by `increment`.
struct Inverter<D, I> {
    density: D,
    increment: I,
    bisect_above: f64,
}

impl<D, I> Inverter<D, I>
where
    D: Fn(f64) -> f64,
    I: Fn(f64, f64, Tolerance) -> Result<EvalResult>,
{
    fn at(&self, t: f64, lo: &Anchor, hi: &Anchor, tol: Tolerance) -> Result<Anchor> {
        let (base, forward) = if t - lo.t <= hi.t - t {
            (lo, true)
        } else {
            (hi, false)
        };
        if t == base.t {
            return Ok(*base);
        }
        let (value, err) = if forward {
            let r = (self.increment)(base.t, t, tol)?;
            (base.value + r.value, base.err + r.abs_err_est)
        } else {
            let r = (self.increment)(t, base.t, tol)?;
            (base.value - r.value, base.err + r.abs_err_est)
        };
        Ok(Anchor { t, value, err })
    }

    fn solve(&self, y: f64, mut lo: Anchor, mut hi: Anchor, rel_tol: f64) -> Result<EvalResult> {
        let tol_g = rel_tol * (1.0 + y.abs());
        let step_tol = Tolerance::relative((0.1 * rel_tol).max(2e-15)).with_abs(0.05 * tol_g);
        let mid = |lo: &Anchor, hi: &Anchor| 0.5 * (lo.t + hi.t);

        let mut t = lo.t + (y - lo.value) / (hi.value - lo.value) * (hi.t - lo.t);
        if !(t > lo.t && t < hi.t) {
            t = mid(&lo, &hi);
        }
        let mut last_err = f64::INFINITY;
        for _ in 0..MAX_INVERSION_STEPS {
            let here = self.at(t, &lo, &hi, step_tol)?;
            let g = here.value - y;
            let slope = (self.density)(t);
            if g.abs() <= tol_g {
                let polished = (t - g / slope).clamp(lo.t, hi.t);
                return Ok(EvalResult {
                    value: polished,
                    abs_err_est: (g.abs() + here.err) / slope,
                });
            }
            if g < 0.0 {
                lo = here;
            } else {
                hi = here;
            }
            last_err = (g.abs() + here.err) / slope;
            if hi.t - lo.t <= 1e-15 {
                return Ok(EvalResult {
                    value: mid(&lo, &hi),
                    abs_err_est: (hi.t - lo.t).max(last_err),
                });
            }
            t = if t > self.bisect_above {
                mid(&lo, &hi)
            } else {
                let newton = t - g / slope;
                if newton > lo.t && newton < hi.t {
                    newton
                } else {
                    mid(&lo, &hi)
                }
            };
        }
        Err(Error::NonConvergence {
            evaluations: MAX_INVERSION_STEPS,
            abs_err_est: last_err,
        })
    }
}

fn bracket(anchors: &[Anchor], y: f64) -> (Anchor, Anchor) {
    let j = anchors.partition_point(|a| a.value <= y);
    let j = j.clamp(1, anchors.len() - 1);
    (anchors[j - 1], anchors[j])
}

/// The principal branch of `sin_{p,q}` on `[0, pi_{p,q}/2]`.
pub fn sin_pq(params: &PqParams, y: f64, rel_tol: f64) -> Result<EvalResult> {
    check_tol(rel_tol)?;
    let (hp, _) = half_pi(params)?;
    if !(0.0..=hp).contains(&y) {
        return Err(Error::ArgDomain(format!(
            "y must lie in [0, pi_pq/2] = [0, {hp}], got {y}"
        )));
    }
    if y == 0.0 {
        return Ok(EvalResult::exact(0.0));
    }
    if y == hp {
        return Ok(EvalResult::exact(1.0));
    }
    let t = tables(params);
    let (lo, hi) = bracket(t.sine_anchors(params)?, y);
    let p = *params;
    Inverter {
        density: |t| sine_density(&p, t),
        increment: |a, b, tol| integrate_sine(&p, a, b, tol),
        bisect_above: BISECTION_ZONE,
    }
    .solve(y, lo, hi, rel_tol)
}

/// With `c = (1 - t^q)^(1/p)`, `pi_{p,q}/2 - arcsin_{p,q}(t)` is the integral
/// of this density over `[0, c]`.
#[inline]
fn cosine_density(params: &PqParams, u: f64) -> f64 {
    let (p, q) = (params.p, params.q);
    p / q * u.powf(p - 2.0) * ((1.0 / q - 1.0) * (-u.powf(p)).ln_1p()).exp()
}

/// Below this cosine the value is recovered from the complementary integral,
/// since `1 - sin^q` has lost most of its digits.
const COSINE_SWITCH: f64 = 0.4;
const COSINE_BRACKET: f64 = 0.5;

/// `cos_{p,q}(y) = (1 - sin_{p,q}(y)^q)^(1/p)`, decreasing from 1 to 0.
pub fn cos_pq(params: &PqParams, y: f64, rel_tol: f64) -> Result<EvalResult> {
    let s = sin_pq(params, y, rel_tol)?;
    if s.value == 0.0 {
        return Ok(EvalResult::exact(1.0));
    }
    let (p, q) = (params.p, params.q);
    let gap = if s.value >= 0.5 {
        -(q * s.value.ln()).exp_m1()
    } else {
        1.0 - s.value.powf(q)
    };
    let value = gap.max(0.0).powf(1.0 / p);
    if value >= COSINE_SWITCH {
        // |d cos / d sin| = (q/p) s^(q-1) gap^(1/p - 1)
        let slope = q / p * s.value.powf(q - 1.0) * value / gap;
        return Ok(EvalResult {
            value,
            abs_err_est: (slope * s.abs_err_est).min(1.0),
        });
    }
    let (hp, hp_err) = half_pi(params)?;
    let rest = hp - y;
    if rest <= 0.0 {
        return Ok(EvalResult::exact(0.0));
    }
    // pi/2 - y = (p/q) c^(p-1) / (p-1) (1 + O(c^p))
    let lead = ((p - 1.0) * q * rest / p).powf(1.0 / (p - 1.0));
    if lead.powf(p) < f64::EPSILON {
        return Ok(EvalResult {
            value: lead,
            abs_err_est: lead * (f64::EPSILON + hp_err / rest) / (p - 1.0),
        });
    }
    let c = *params;
    let increment = |a: f64, b: f64, tol: Tolerance| -> Result<EvalResult> {
        let r = integrate_finite_tol(&|u: f64| cosine_density(&c, u), a, b, tol)?;
        Ok(EvalResult {
            value: r.value,
            abs_err_est: r.abs_err_est,
        })
    };
    let top = increment(0.0, COSINE_BRACKET, Tolerance::relative(TABLE_TOL))?;
    let lo = Anchor {
        t: 0.0,
        value: 0.0,
        err: 0.0,
    };
    let hi = Anchor {
        t: COSINE_BRACKET,
        value: top.value,
        err: top.abs_err_est,
    };
    let r = Inverter {
        density: |u| cosine_density(&c, u),
        increment,
        bisect_above: f64::INFINITY,
    }
    .solve(rest, lo, hi, rel_tol)?;
    Ok(EvalResult {
        value: r.value,
        abs_err_est: r.abs_err_est + hp_err / cosine_density(&c, r.value),
    })
}

/// `sinh_{p,q}` on `[0, m*_{p,q})`.
pub fn sinh_pq(params: &PqParams, y: f64, rel_tol: f64) -> Result<EvalResult> {
    check_tol(rel_tol)?;
    let tabs = tables(params);
    let (m_star, _) = tabs.m_star(params)?;
    if !(y.is_finite() && y >= 0.0 && y < m_star) {
        return Err(Error::ArgDomain(format!(
            "y must lie in [0, m*_pq) = [0, {}), got {y}",
            if m_star.is_finite() {
                m_star.to_string()
            } else {
                "inf".to_string()
            }
        )));
    }
    if y == 0.0 {
        return Ok(EvalResult::exact(0.0));
    }
    let p = *params;
    let increment = |a: f64, b: f64, tol: Tolerance| integrate_sinh(&p, a, b, tol);
    let anchors = tabs.sinh_anchors(params)?;
    let last = *anchors.last().expect("anchor table is never empty");
    let (lo, hi) = if y < last.value {
        bracket(anchors, y)
    } else {
        // Exponential search beyond the table.
        let tol = Tolerance::relative(TABLE_TOL);
        let mut lo = last;
        loop {
            let t = 2.0 * lo.t;
            if !t.is_finite() || t > 1e300 {
                return Err(Error::NonConvergence {
                    evaluations: 0,
                    abs_err_est: f64::INFINITY,
                });
            }
            let r = increment(lo.t, t, tol)?;
            let next = Anchor {
                t,
                value: lo.value + r.value,
                err: lo.err + r.abs_err_est,
            };
            if next.value > y {
                break (lo, next);
            }
            lo = next;
        }
    };
    Inverter {
        density: |t| sinh_density(&p, t),
        increment,
        bisect_above: f64::INFINITY,
    }
    .solve(y, lo, hi, rel_tol)
}

/// `sin_{p,q}` on the whole real line: odd, `2 pi_{p,q}`-periodic and
/// symmetric about `pi_{p,q}/2`, like the classical sine.
pub fn extend_sin(params: &PqParams, y: f64, rel_tol: f64) -> Result<EvalResult> {
    if !y.is_finite() {
        return Err(Error::ArgDomain(format!("y must be finite, got {y}")));
    }
    check_tol(rel_tol)?;
    if y < 0.0 {
        return extend_sin(params, -y, rel_tol).map(|r| EvalResult {
            value: -r.value,
            ..r
        });
    }
    let (hp, _) = half_pi(params)?;
    let pi = 2.0 * hp;
    let r = y % (2.0 * pi);
    let (arg, sign) = if r <= hp {
        (r, 1.0)
    } else if r <= pi {
        (pi - r, 1.0)
    } else if r <= pi + hp {
        (r - pi, -1.0)
    } else {
        (2.0 * pi - r, -1.0)
    };
    let s = sin_pq(params, arg.clamp(0.0, hp), rel_tol)?;
    Ok(EvalResult {
        value: sign * s.value,
        abs_err_est: s.abs_err_est,
    })
}

/// `d/dy sin_{p,q}(y)`, which equals `cos_{p,q}(y)` on `[0, pi_{p,q}/2)`.
pub fn sin_pq_derivative(params: &PqParams, y: f64, rel_tol: f64) -> Result<EvalResult> {
    let (hp, _) = half_pi(params)?;
    if y >= hp {
        return Err(Error::ArgDomain(format!(
            "y must lie in [0, pi_pq/2) = [0, {hp}), got {y}"
        )));
    }
    cos_pq(params, y, rel_tol)
}
