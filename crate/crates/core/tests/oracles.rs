//! Agreement with independent closed forms: log-gamma Beta identities,
//! classical functions, and the hypergeometric series.

use pqtrig::pq::{self, PqParams};
use pqtrig::quadrature::{integrate_finite, integrate_to_infinity, Kernel};
use pqtrig::series::{arcsin_series, arcsinh_series};
use pqtrig::Error;
use statrs::function::gamma::ln_gamma;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, PI};

fn beta(a: f64, b: f64) -> f64 {
    (ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)).exp()
}

/// `int_0^1 (1 - t^q)^(-1/p) dt` via `u = t^q`.
fn half_pi_oracle(p: f64, q: f64) -> f64 {
    beta(1.0 / q, 1.0 - 1.0 / p) / q
}

/// `int_0^inf (1 + t^q)^(-1/p) dt` via `u = t^q / (1 + t^q)`.
fn m_star_oracle(p: f64, q: f64) -> f64 {
    beta(1.0 / q, 1.0 / p - 1.0 / q) / q
}

fn pq(p: f64, q: f64) -> PqParams {
    PqParams::new(p, q).unwrap()
}

const GRID: [f64; 8] = [1.1, 1.5, 2.0, 2.5, 3.0, 5.0, 7.5, 10.0];

// The log-gamma route itself carries a few ulps of error per term.
const ORACLE_REL: f64 = 5e-15;

#[test]
fn pi_matches_beta_identity_on_grid() {
    for &p in &GRID {
        for &q in &GRID {
            let c = pq::constants(&pq(p, q), 1e-12).unwrap();
            let oracle = 2.0 * half_pi_oracle(p, q);
            let err = (c.pi_pq - oracle).abs();
            assert!(
                err <= 1e-12 * oracle,
                "p={p} q={q}: {} vs {oracle}",
                c.pi_pq
            );
            assert!(
                err <= 10.0 * c.pi_abs_err + ORACLE_REL * oracle,
                "p={p} q={q}: error {err:e} vs estimate {:e}",
                c.pi_abs_err
            );
            assert!(c.pi_pq > 2.0);
        }
    }
}

#[test]
fn m_star_matches_beta_identity_on_grid() {
    for &p in &GRID {
        for &q in &GRID {
            let c = pq::constants(&pq(p, q), 1e-12).unwrap();
            if q <= p {
                assert!(c.m_star.is_infinite(), "p={p} q={q}");
                continue;
            }
            let oracle = m_star_oracle(p, q);
            let err = (c.m_star - oracle).abs();
            assert!(
                err <= 1e-12 * oracle,
                "p={p} q={q}: {} vs {oracle}",
                c.m_star
            );
            assert!(
                err <= 10.0 * c.m_star_abs_err + ORACLE_REL * oracle,
                "p={p} q={q}"
            );
        }
    }
}

#[test]
fn constants_near_the_parameter_boundary() {
    // Strong endpoint singularity (p near 1) and slow tails (q/p near 1).
    for &(p, q) in &[
        (1.01, 40.0),
        (1.001, 3.0),
        (1.05, 1.06),
        (1.2, 1.3),
        (200.0, 1.5),
        (1.5, 200.0),
    ] {
        let c = pq::constants(&pq(p, q), 1e-12).unwrap();
        let oracle = 2.0 * half_pi_oracle(p, q);
        assert!((c.pi_pq / oracle - 1.0).abs() < 1e-11, "pi p={p} q={q}");
        if q > p {
            let oracle = m_star_oracle(p, q);
            assert!((c.m_star / oracle - 1.0).abs() < 1e-11, "m* p={p} q={q}");
        }
    }
}

#[test]
fn quadrature_examples() {
    let f = Kernel::new(|t: f64, d: f64| {
        // 1 - t^4 = (1 - t)(1 + t)(1 + t^2)
        (d * (1.0 + t) * (1.0 + t * t)).powf(-0.25)
    })
    .singular_at_upper();
    let r = integrate_finite(&f, 0.0, 1.0, 1e-12).unwrap();
    assert!((r.value - half_pi_oracle(4.0, 4.0)).abs() < 1e-12);
    assert!((r.value - 1.110_720_734_5).abs() < 1e-10);

    let r = integrate_to_infinity(&|t: f64| (1.0 + t.powi(4)).powf(-0.5), 0.0, 1e-12).unwrap();
    let gamma_quarter = ln_gamma(0.25).exp();
    assert!((r.value - gamma_quarter * gamma_quarter / (4.0 * PI.sqrt())).abs() < 1e-11);

    let r = integrate_to_infinity(&|t: f64| 1.0 / (1.0 + t * t), 0.0, 1e-12).unwrap();
    assert!((r.value - FRAC_PI_2).abs() < 1e-12);

    let r = integrate_to_infinity(&|t: f64| (1.0 + t * t).powf(-0.5), 0.0, 1e-12);
    assert!(matches!(r, Err(Error::DivergentIntegral { .. })), "{r:?}");
}

#[test]
fn reference_constants() {
    let c = pq::constants(&pq(2.0, 2.0), 1e-12).unwrap();
    assert!((c.pi_pq - PI).abs() < 1e-12);
    let c = pq::constants(&pq(4.0, 4.0), 1e-12).unwrap();
    assert!((c.pi_pq - PI / 2f64.sqrt()).abs() < 1e-12);
    let c = pq::constants(&pq(2.0, 4.0), 1e-12).unwrap();
    assert!((c.m_star - 1.854_074_677_3).abs() < 1e-10);
}

#[test]
fn classical_values() {
    let c = pq(2.0, 2.0);
    let tol = 1e-12;
    let close = |a: f64, b: f64| (a - b).abs() < 1e-12;
    assert!(close(pq::arcsin_pq(&c, 0.5, tol).unwrap().value, FRAC_PI_6));
    assert!(close(pq::arccos_pq(&c, 0.5, tol).unwrap().value, FRAC_PI_3));
    assert!(close(pq::arccos_pq(&c, 0.0, tol).unwrap().value, FRAC_PI_2));
    assert!(close(
        pq::arcsinh_pq(&c, 1.0, tol).unwrap().value,
        2f64.sqrt().ln_1p()
    ));
    assert!(close(pq::sinh_pq(&c, 1.0, tol).unwrap().value, 1f64.sinh()));
    assert!(close(pq::cos_pq(&c, FRAC_PI_3, tol).unwrap().value, 0.5));
    assert!(close(pq::cos_pq(&c, 0.0, tol).unwrap().value, 1.0));
    assert!(close(
        pq::sin_pq_derivative(&c, 0.0, tol).unwrap().value,
        1.0
    ));
    assert!(close(
        pq::sin_pq_derivative(&c, FRAC_PI_3, tol).unwrap().value,
        0.5
    ));
    assert!(close(
        pq::extend_sin(&c, 2.0 * PI + FRAC_PI_6, tol).unwrap().value,
        0.5
    ));
    assert!(close(
        pq::extend_sin(&c, -FRAC_PI_6, tol).unwrap().value,
        -0.5
    ));
    let c3 = pq(3.0, 5.0);
    let pi35 = pq::constants(&c3, tol).unwrap().pi_pq;
    assert!(pq::extend_sin(&c3, pi35, tol).unwrap().value.abs() < 1e-12);
}

#[test]
fn composition_identities() {
    // arccos_{2,3}(0.4) = arcsin_{2,3}((1 - 0.4^2)^(1/3))
    let c = pq(2.0, 3.0);
    let direct = pq::arccos_pq(&c, 0.4, 1e-12).unwrap().value;
    let composed = pq::arcsin_pq(&c, 0.84f64.cbrt(), 1e-12).unwrap().value;
    assert!((direct - composed).abs() < 1e-14);

    let c = pq(3.0, 2.0);
    let s = pq::sin_pq(&c, 0.5, 1e-12).unwrap().value;
    let co = pq::cos_pq(&c, 0.5, 1e-12).unwrap().value;
    assert!((s.powf(2.0) + co.powf(3.0) - 1.0).abs() < 1e-10);
    assert!((pq::arccos_pq(&c, co, 1e-12).unwrap().value - 0.5).abs() < 1e-10);

    let c = pq(2.0, 3.0);
    let s = pq::sin_pq(&c, 0.7, 1e-12).unwrap().value;
    assert!((pq::arcsin_pq(&c, s, 1e-12).unwrap().value - 0.7).abs() < 1e-10);

    let c = pq(3.0, 3.0);
    let h = 1e-5;
    let fd = (pq::sin_pq(&c, 0.4 + h, 1e-13).unwrap().value
        - pq::sin_pq(&c, 0.4 - h, 1e-13).unwrap().value)
        / (2.0 * h);
    assert!((pq::sin_pq_derivative(&c, 0.4, 1e-12).unwrap().value - fd).abs() < 1e-6);
}

#[test]
fn arcsinh_approaches_m_star() {
    let c = pq(2.0, 4.0);
    let m = m_star_oracle(2.0, 4.0);
    let mut prev = 0.0;
    for &x in &[1.0, 10.0, 1e3, 1e6] {
        let v = pq::arcsinh_pq(&c, x, 1e-12).unwrap().value;
        assert!(v > prev && v < m);
        prev = v;
    }
    // int_x^inf ~ x^-1 for q/p = 2
    assert!(m - pq::arcsinh_pq(&c, 1e3, 1e-12).unwrap().value < 1.01e-3);
}

#[test]
fn series_agrees_with_quadrature() {
    let values = [1.5, 2.0, 3.0, 5.0];
    for &p in &values {
        for &q in &values {
            let c = pq(p, q);
            for i in 1..=9 {
                let x = i as f64 / 10.0;
                let quad = pq::arcsin_pq(&c, x, 1e-13).unwrap().value;
                let ser = arcsin_series(&c, x, 1e-15).unwrap();
                assert!(
                    (quad - ser.value).abs() <= 1e-10,
                    "arcsin p={p} q={q} x={x}"
                );
                let quad = pq::arcsinh_pq(&c, x, 1e-13).unwrap().value;
                let ser = arcsinh_series(&c, x, 1e-15).unwrap();
                assert!(
                    (quad - ser.value).abs() <= 1e-10,
                    "arcsinh p={p} q={q} x={x}"
                );
            }
        }
    }
}

#[test]
fn series_examples() {
    let r = arcsin_series(&pq(3.0, 2.0), 0.9, 1e-15).unwrap();
    let quad = pq::arcsin_pq(&pq(3.0, 2.0), 0.9, 1e-13).unwrap().value;
    assert!((r.value - quad).abs() < 1e-10);
    let r = arcsinh_series(&pq(2.0, 2.0), 0.5, 1e-15).unwrap();
    assert!((r.value - (0.5 + 1.25f64.sqrt()).ln()).abs() < 1e-15);
    let r = arcsinh_series(&pq(2.0, 4.0), 0.8, 1e-15).unwrap();
    let quad = pq::arcsinh_pq(&pq(2.0, 4.0), 0.8, 1e-13).unwrap().value;
    assert!((r.value - quad).abs() < 1e-10);
}
