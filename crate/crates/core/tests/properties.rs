use pqtrig::geoconvex::{self, FunctionHandle};
use pqtrig::pq::{self, PqParams};
use pqtrig::quadrature::integrate_finite;
use pqtrig::verify::{self, Target, VerifyConfig};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = PqParams> {
    (1.1f64..10.0, 1.1f64..10.0).prop_map(|(p, q)| PqParams::new(p, q).unwrap())
}

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 64,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn additivity(c in params(), a in 0.0f64..0.5, frac in 0.01f64..0.99, b in 0.5f64..0.999) {
        let f = |t: f64| pq::sine_density(&c, t);
        let mid = a + frac * (b - a);
        let whole = integrate_finite(&f, a, b, 1e-12).unwrap();
        let left = integrate_finite(&f, a, mid, 1e-12).unwrap();
        let right = integrate_finite(&f, mid, b, 1e-12).unwrap();
        let bound = 10.0 * (whole.abs_err_est + left.abs_err_est + right.abs_err_est);
        prop_assert!((left.value + right.value - whole.value).abs() <= bound.max(4.0 * f64::EPSILON * whole.value));
    }

    #[test]
    fn integral_grows_with_upper_limit(c in params(), b1 in 0.01f64..0.9, db in 0.001f64..0.09) {
        let f = |t: f64| pq::sinh_density(&c, t);
        let r1 = integrate_finite(&f, 0.0, b1, 1e-12).unwrap();
        let r2 = integrate_finite(&f, 0.0, b1 + db, 1e-12).unwrap();
        prop_assert!(r1.value > 0.0);
        prop_assert!(r2.value >= r1.value);
    }

    #[test]
    fn arcsin_is_an_increasing_homeomorphism(c in params(), x in 0.0f64..1.0, dx in 1e-6f64..0.1) {
        let y = pq::arcsin_pq(&c, x, 1e-12).unwrap().value;
        let x2 = (x + dx).min(1.0);
        prop_assert!(pq::arcsin_pq(&c, x2, 1e-12).unwrap().value > y);
        prop_assert!((pq::sin_pq(&c, y, 1e-12).unwrap().value - x).abs() <= 1e-10);
    }

    #[test]
    fn sinh_round_trip(c in params(), x in 0.0f64..50.0) {
        let y = pq::arcsinh_pq(&c, x, 1e-12).unwrap().value;
        let back = pq::sinh_pq(&c, y, 1e-12).unwrap().value;
        let residual = pq::arcsinh_pq(&c, back, 1e-12).unwrap().value - y;
        prop_assert!(residual.abs() <= 1e-11 * (1.0 + y));
        // dx = dy / density: the x error is only small where that is tame.
        if pq::sinh_density(&c, x) > 1e-3 {
            prop_assert!((back - x).abs() <= 1e-10 * (1.0 + x));
        }
        let m = pq::constants(&c, 1e-12).unwrap().m_star;
        prop_assert!(y < m);
    }

    #[test]
    fn pythagorean_identity(c in params(), u in 0.0f64..1.0) {
        let hp = 0.5 * pq::constants(&c, 1e-12).unwrap().pi_pq;
        let y = u * hp;
        let s = pq::sin_pq(&c, y, 1e-12).unwrap().value;
        let co = pq::cos_pq(&c, y, 1e-12).unwrap().value;
        prop_assert!((s.powf(c.q()) + co.powf(c.p()) - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn sine_is_concave_on_the_principal_branch(c in params(), u in 0.0f64..0.8, g1 in 0.05f64..0.1, g2 in 0.05f64..0.1) {
        let hp = 0.5 * pq::constants(&c, 1e-12).unwrap().pi_pq;
        let (y1, y2, y3) = (u * hp, (u + g1) * hp, (u + g1 + g2) * hp);
        let s = |y: f64| pq::sin_pq(&c, y, 1e-14).unwrap().value;
        let d = ((s(y3) - s(y2)) / (y3 - y2) - (s(y2) - s(y1)) / (y2 - y1)) / (y3 - y1);
        prop_assert!(d <= 1e-8, "second divided difference {d}");
    }

    #[test]
    fn derivative_matches_finite_differences(c in params(), u in 0.01f64..0.8) {
        let hp = 0.5 * pq::constants(&c, 1e-12).unwrap().pi_pq;
        let y = u * hp;
        let h = 1e-5;
        let s = |y: f64| pq::sin_pq(&c, y, 1e-14).unwrap().value;
        let fd = (s(y + h) - s(y - h)) / (2.0 * h);
        let d = pq::sin_pq_derivative(&c, y, 1e-12).unwrap().value;
        prop_assert!((d - fd).abs() <= 1e-6, "{d} vs {fd}");
    }

    #[test]
    fn m_star_is_infinite_exactly_when_q_le_p(p in 1.01f64..20.0, q in 1.01f64..20.0) {
        let c = PqParams::new(p, q).unwrap();
        let m = pq::constants(&c, 1e-12).unwrap().m_star;
        prop_assert_eq!(m.is_infinite(), q <= p);
        prop_assert!(m > 1.0);
    }

    #[test]
    fn equal_parameters_are_the_p_functions(p in 1.01f64..20.0) {
        prop_assert_eq!(PqParams::p_function(p).unwrap(), PqParams::new(p, p).unwrap());
    }

    #[test]
    fn integrand_elasticity_closed_form(c in params(), t in 0.05f64..0.95, dt in 1e-4f64..0.05) {
        let f = FunctionHandle::sine_integrand(&c);
        let numeric = FunctionHandle::new((0.0, 1.0), move |t| pq::sine_density(&c, t)).unwrap();
        let closed = geoconvex::integrand_elasticity(&c, t).unwrap();
        prop_assert!((geoconvex::elasticity(&f, t).unwrap() - closed).abs() <= 1e-8 * (1.0 + closed));
        prop_assert!((geoconvex::elasticity(&numeric, t).unwrap() - closed).abs() <= 1e-8 * (1.0 + closed));
        let t2 = (t + dt).min(0.95);
        if t2 > t {
            prop_assert!(geoconvex::integrand_elasticity(&c, t2).unwrap() > closed);
        }
        prop_assert!(geoconvex::integrand_elasticity_slope(&c, t).unwrap() > 0.0);
    }

    #[test]
    fn power_defect_vanishes(k in -4.0f64..4.0, x in 0.1f64..10.0, y in 0.1f64..10.0, l in 0.0f64..1.0) {
        let f = FunctionHandle::power(k, (0.05, 20.0)).unwrap();
        let d = geoconvex::gc_defect(&f, x, y, l).unwrap();
        prop_assert!(d.abs() <= 1e-12 * f.eval(x).unwrap().max(f.eval(y).unwrap()));
    }

    #[test]
    fn verify_margins_reproduce_from_the_library(
        c in params(), r in 0.001f64..0.999, s in 0.001f64..0.999, l in 0.0f64..1.0, sinh in any::<bool>()
    ) {
        let target = if sinh { Target::GcSinh } else { Target::GcSin };
        let cfg = VerifyConfig::new(target, c.p(), c.q()).samples(1).fixed(Some(r), Some(s), Some(l));
        let rep = verify::run(&cfg).unwrap();
        let f = |x: f64| if sinh {
            pq::sinh_pq(&c, x, 1e-12).unwrap().value
        } else {
            pq::sin_pq(&c, x, 1e-12).unwrap().value
        };
        let lhs = f(r.powf(l) * s.powf(1.0 - l));
        let rhs = f(r).powf(l) * f(s).powf(1.0 - l);
        let margin = if sinh { rhs - lhs } else { lhs - rhs };
        prop_assert!((rep.min_margin - margin).abs() <= 1e-12);
        prop_assert!(rep.min_margin >= -1e-9);
        for v in &rep.violations {
            prop_assert_eq!(v.margin, if sinh { v.rhs - v.lhs } else { v.lhs - v.rhs });
        }
    }

    #[test]
    fn square_root_inequalities_with_equal_arguments(c in params(), r in 0.001f64..0.999) {
        for target in [Target::SinSqrt, Target::SinhSqrt] {
            let cfg = VerifyConfig::new(target, c.p(), c.q()).samples(1).fixed(Some(r), Some(r), None);
            prop_assert_eq!(verify::run(&cfg).unwrap().min_margin, 0.0);
        }
    }
}
