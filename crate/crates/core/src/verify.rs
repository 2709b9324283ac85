//! Sampled verification of the geometric convexity of `sin_{p,q}` and
//! `sinh_{p,q}` and of the square-root inequalities
//!
//! ```text
//! sin_{p,q}(sqrt(rs))  >= sqrt(sin_{p,q}(r) sin_{p,q}(s))
//! sinh_{p,q}(sqrt(rs)) <= sqrt(sinh_{p,q}(r) sinh_{p,q}(s))
//! ```
//!
//! for `r, s` in `(0, 1)`. Every sample yields a signed margin that is
//! nonnegative when the expected inequality holds.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pq::{self, PqParams};
use crate::render::{sig17, sig17_pair};
use crate::sampling::QuasiRandom;

/// Tolerance for the function evaluations behind each margin.
pub const EVAL_TOL: f64 = 1e-12;
pub const DEFAULT_MARGIN_TOL: f64 = 1e-9;
/// Fraction of a finite `m*_{p,q}` the sinh samples may reach.
pub const SINH_DOMAIN_FRACTION: f64 = 0.999;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Target {
    #[serde(rename = "gc-sin")]
    GcSin,
    #[serde(rename = "gc-sinh")]
    GcSinh,
    #[serde(rename = "ineq-1.1")]
    SinSqrt,
    #[serde(rename = "ineq-1.2")]
    SinhSqrt,
    #[serde(rename = "corollary-p")]
    CorollaryP,
}

impl Target {
    pub const ALL: [Target; 5] = [
        Target::GcSin,
        Target::GcSinh,
        Target::SinSqrt,
        Target::SinhSqrt,
        Target::CorollaryP,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::GcSin => "gc-sin",
            Target::GcSinh => "gc-sinh",
            Target::SinSqrt => "ineq-1.1",
            Target::SinhSqrt => "ineq-1.2",
            Target::CorollaryP => "corollary-p",
        }
    }

    fn fixed_half(self) -> bool {
        !matches!(self, Target::GcSin | Target::GcSinh)
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Target::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Target::ALL.iter().map(|t| t.name()).collect();
                format!("unknown target '{s}', expected one of {}", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Violated,
    /// No violation was found but some samples could not be evaluated.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "verified",
            Verdict::Violated => "violated",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// One evaluated triple. Serialized as `[r, s, lambda, lhs, rhs, margin]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub r: f64,
    pub s: f64,
    pub lambda: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

impl Serialize for Sample {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use crate::render::json_number as n;
        [
            n(self.r),
            n(self.s),
            n(self.lambda),
            n(self.lhs),
            n(self.rhs),
            n(self.margin),
        ]
        .serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub target: Target,
    #[serde(serialize_with = "sig17")]
    pub p: f64,
    #[serde(serialize_with = "sig17")]
    pub q: f64,
    pub samples: usize,
    pub seed: u64,
    #[serde(serialize_with = "sig17")]
    pub tol: f64,
    /// Interval the arguments `r, s` were drawn from.
    #[serde(serialize_with = "sig17_pair")]
    pub sampling_interval: (f64, f64),
    /// Smallest margin over all evaluated samples (`inf` if none).
    #[serde(serialize_with = "sig17")]
    pub min_margin: f64,
    pub violations: Vec<Sample>,
    pub verdict: Verdict,
    /// Margin of every sample, in sampling order; `NaN` for a sample whose
    /// evaluation failed.
    #[serde(skip)]
    pub margins: Vec<f64>,
    #[serde(skip)]
    pub failed_samples: usize,
}

/// Settings of one verification run.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub target: Target,
    pub p: f64,
    /// Ignored (set to `p`) for [`Target::CorollaryP`].
    pub q: f64,
    pub samples: usize,
    pub seed: u64,
    /// A sample violates when its margin is below `-tol`; a negative `tol`
    /// demands a strictly positive margin.
    pub tol: f64,
    /// Fixed values overriding the sampled coordinates.
    pub r: Option<f64>,
    pub s: Option<f64>,
    pub lambda: Option<f64>,
    /// Samples `gc-sin` over the whole principal branch `(0, pi_{p,q}/2)`
    /// instead of `(0, 1)`.
    pub full_branch: bool,
}

impl VerifyConfig {
    pub fn new(target: Target, p: f64, q: f64) -> Self {
        VerifyConfig {
            target,
            p,
            q,
            samples: 10_000,
            seed: 0,
            tol: DEFAULT_MARGIN_TOL,
            r: None,
            s: None,
            lambda: None,
            full_branch: false,
        }
    }

    pub fn samples(mut self, n: usize) -> Self {
        self.samples = n;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn fixed(mut self, r: Option<f64>, s: Option<f64>, lambda: Option<f64>) -> Self {
        self.r = r;
        self.s = s;
        self.lambda = lambda;
        self
    }

    pub fn full_branch(mut self, on: bool) -> Self {
        self.full_branch = on;
        self
    }
}

/// `x^l y^(1-l)`, exact for `x == y` and the endpoints of `l`.
fn weighted_geometric_mean(x: f64, y: f64, lambda: f64) -> f64 {
    if x == y || lambda == 0.0 {
        y
    } else if lambda == 1.0 {
        x
    } else if lambda == 0.5 {
        (x * y).sqrt()
    } else {
        (x.powf(lambda) * y.powf(1.0 - lambda)).clamp(x.min(y), x.max(y))
    }
}

#[derive(Clone, Copy)]
enum Family {
    Sin,
    Sinh,
}

impl Family {
    fn eval(self, params: &PqParams, x: f64) -> Result<f64> {
        Ok(match self {
            Family::Sin => pq::sin_pq(params, x, EVAL_TOL)?.value,
            Family::Sinh => pq::sinh_pq(params, x, EVAL_TOL)?.value,
        })
    }

    /// Defect-based sample; the margin is oriented so that the expected
    /// inequality (concave sin, convex sinh) gives a nonnegative value.
    fn sample(self, params: &PqParams, r: f64, s: f64, lambda: f64) -> Result<Sample> {
        let lhs = self.eval(params, weighted_geometric_mean(r, s, lambda))?;
        let rhs = weighted_geometric_mean(self.eval(params, r)?, self.eval(params, s)?, lambda);
        let margin = match self {
            Family::Sin => lhs - rhs,
            Family::Sinh => rhs - lhs,
        };
        Ok(Sample {
            r,
            s,
            lambda,
            lhs,
            rhs,
            margin,
        })
    }
}

/// Open interval the arguments of `family` are sampled from.
fn sampling_interval(family: Family, params: &PqParams, full_branch: bool) -> Result<(f64, f64)> {
    let c = pq::constants(params, EVAL_TOL)?;
    Ok(match family {
        Family::Sin if full_branch => (0.0, 0.5 * c.pi_pq),
        Family::Sin => (0.0, 1.0),
        Family::Sinh => (0.0, (SINH_DOMAIN_FRACTION * c.m_star).min(1.0)),
    })
}

fn check_fixed(name: &str, v: Option<f64>, lo: f64, hi: f64) -> Result<()> {
    match v {
        Some(x) if !(x > lo && x < hi) => Err(Error::ArgDomain(format!(
            "{name} must lie in ({lo}, {hi}), got {x}"
        ))),
        _ => Ok(()),
    }
}

pub fn run(config: &VerifyConfig) -> Result<VerificationReport> {
    let q = if config.target == Target::CorollaryP {
        config.p
    } else {
        config.q
    };
    let params = PqParams::new(config.p, q)?;
    if config.samples == 0 {
        return Err(Error::ArgDomain("samples must be at least 1".into()));
    }
    if !config.tol.is_finite() {
        return Err(Error::ArgDomain(format!(
            "tol must be finite, got {}",
            config.tol
        )));
    }
    let families: &[Family] = match config.target {
        Target::GcSin | Target::SinSqrt => &[Family::Sin],
        Target::GcSinh | Target::SinhSqrt => &[Family::Sinh],
        Target::CorollaryP => &[Family::Sin, Family::Sinh],
    };
    // With several families the arguments come from the intersection.
    let mut interval = (0.0f64, f64::INFINITY);
    for &fam in families {
        let (lo, hi) = sampling_interval(fam, &params, config.full_branch)?;
        interval = (interval.0.max(lo), interval.1.min(hi));
    }
    let (lo, hi) = interval;
    check_fixed("r", config.r, lo, hi)?;
    check_fixed("s", config.s, lo, hi)?;
    if let Some(l) = config.lambda {
        if config.target.fixed_half() && l != 0.5 {
            return Err(Error::ArgDomain(format!(
                "target {} fixes lambda = 0.5, got {l}",
                config.target
            )));
        }
        if !(0.0..=1.0).contains(&l) {
            return Err(Error::ArgDomain(format!(
                "lambda must lie in [0,1], got {l}"
            )));
        }
    }

    let mut seq = QuasiRandom::new(3, config.seed);
    let mut margins = Vec::with_capacity(config.samples);
    let mut violations = Vec::new();
    let mut failed = 0;
    let mut min_margin = f64::INFINITY;
    for _ in 0..config.samples {
        let u = seq.next_point();
        let r = config.r.unwrap_or(lo + u[0] * (hi - lo));
        let s = config.s.unwrap_or(lo + u[1] * (hi - lo));
        let lambda = if config.target.fixed_half() {
            0.5
        } else {
            config.lambda.unwrap_or(u[2])
        };
        let sample = families
            .iter()
            .map(|fam| fam.sample(&params, r, s, lambda))
            .try_fold(None::<Sample>, |best, next| {
                let next = next?;
                Ok::<_, Error>(Some(match best {
                    Some(b) if b.margin <= next.margin => b,
                    _ => next,
                }))
            });
        match sample {
            Ok(Some(sample)) => {
                margins.push(sample.margin);
                min_margin = min_margin.min(sample.margin);
                if sample.margin < -config.tol {
                    violations.push(sample);
                }
            }
            Ok(None) => unreachable!("at least one family per target"),
            Err(e) if e.is_domain() => return Err(e),
            Err(_) => {
                margins.push(f64::NAN);
                failed += 1;
            }
        }
    }
    let verdict = if !violations.is_empty() {
        Verdict::Violated
    } else if failed > 0 {
        Verdict::Inconclusive
    } else {
        Verdict::Verified
    };
    Ok(VerificationReport {
        target: config.target,
        p: params.p(),
        q: params.q(),
        samples: config.samples,
        seed: config.seed,
        tol: config.tol,
        sampling_interval: interval,
        min_margin,
        violations,
        verdict,
        margins,
        failed_samples: failed,
    })
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        use crate::render::text;
        let mut out = format!(
            "target: {}\np: {}\nq: {}\nsamples: {}\nseed: {}\ntol: {}\n\
             sampling_interval: ({}, {})\nmin_margin: {}\nviolations: {}\n",
            self.target,
            text(self.p),
            text(self.q),
            self.samples,
            self.seed,
            text(self.tol),
            text(self.sampling_interval.0),
            text(self.sampling_interval.1),
            text(self.min_margin),
            self.violations.len(),
        );
        for v in self.violations.iter().take(10) {
            out.push_str(&format!(
                "  r={} s={} lambda={} lhs={} rhs={} margin={}\n",
                text(v.r),
                text(v.s),
                text(v.lambda),
                text(v.lhs),
                text(v.rhs),
                text(v.margin)
            ));
        }
        if self.failed_samples > 0 {
            out.push_str(&format!("failed_samples: {}\n", self.failed_samples));
        }
        out.push_str(&format!("verdict: {}\n", self.verdict));
        out
    }
}
