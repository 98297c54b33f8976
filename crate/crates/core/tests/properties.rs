//! Structural invariants of the three families: the g' coupling, harmonicity,
//! sense preservation, boundary behaviour, identities and inversion.

use std::f64::consts::{FRAC_PI_2, PI};

use mingraph::analysis::preimage;
use mingraph::numerics::{
    newton_invert, path_integral, principal_power, NewtonOptions, PlanarMap,
};
use mingraph::*;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn families() -> Vec<HarmonicGraphMap> {
    vec![
        make_sector_example(1.25).unwrap(),
        make_sector_example(1.5).unwrap(),
        make_sector_example(1.75).unwrap(),
        make_critical_example(1.5).unwrap(),
        make_critical_example(2.0).unwrap(),
        make_critical_example(3.0).unwrap(),
        make_halflog_example(),
    ]
}

/// Polar sample of the open right half-plane.
fn interior_points(n_radial: usize, n_angular: usize, s_min: f64, s_max: f64) -> Vec<C64> {
    let mut out = Vec::new();
    for i in 0..n_radial {
        let s = s_min * (s_max / s_min).powf(i as f64 / (n_radial - 1) as f64);
        for j in 0..n_angular {
            let t = -FRAC_PI_2 + PI * (j as f64 + 0.5) / n_angular as f64;
            out.push(C64::from_polar(s, t));
        }
    }
    out
}

#[test]
fn g_prime_matches_finite_differences_of_g() {
    for m in families() {
        for zeta in interior_points(6, 7, 0.5, 200.0) {
            let d = 1e-4 * zeta.norm().max(1.0);
            let fd = (m.g(zeta + d).unwrap() - m.g(zeta - d).unwrap()) / (2.0 * d);
            let exact = m.g_prime(zeta).unwrap();
            assert!(
                (fd - exact).norm() <= 1e-8 * exact.norm(),
                "{} at {zeta}: fd {fd}, exact {exact}",
                m.label()
            );
        }
    }
}

#[test]
fn coordinates_are_harmonic() {
    for m in families() {
        for zeta in [c(2.0, 0.0), c(3.0, 2.5), c(5.0, -4.0)] {
            let lap = |h: f64| {
                let f = |z: C64| m.eval_map(z).unwrap();
                (f(zeta + h) + f(zeta - h) + f(zeta + c(0.0, h)) + f(zeta - c(0.0, h)) - f(zeta) * 4.0)
                    / (h * h)
            };
            let coarse = lap(0.1).norm();
            let fine = lap(0.05).norm();
            // A harmonic function makes the 5-point Laplacian O(h²) only.
            assert!(coarse < 1e-2, "{}: {coarse}", m.label());
            assert!(fine < 0.3 * coarse || fine < 1e-7, "{}: {coarse} -> {fine}", m.label());
        }
    }
}

#[test]
fn jacobian_is_positive_in_open_half_plane() {
    for m in families() {
        for zeta in interior_points(40, 40, 1e-4, 1e6) {
            let j = m.jacobian(zeta).unwrap();
            assert!(j > 0.0, "{} at {zeta}: J = {j}", m.label());
        }
    }
}

#[test]
fn boundary_image_is_monotone_odd_and_even() {
    for m in families() {
        let mut prev = f64::NEG_INFINITY;
        let ts: Vec<f64> = mingraph::analysis::boundary_grid(1e6, 801);
        for &t in &ts {
            let z = m.eval_map(c(0.0, t)).unwrap();
            assert!(z.im > prev, "{} not increasing at t = {t}", m.label());
            prev = z.im;
            let w = m.eval_map(c(0.0, -t)).unwrap();
            let scale = z.norm().max(1.0);
            assert!((z.im + w.im).abs() <= 1e-12 * scale, "{} odd at {t}", m.label());
            assert!((z.re - w.re).abs() <= 1e-12 * scale, "{} even at {t}", m.label());
        }
    }
}

#[test]
fn critical_boundary_speed_exceeds_one() {
    for rho in [1.5, 2.0, 3.0] {
        let m = make_critical_example(rho).unwrap();
        for k in 0..60 {
            let t = 1e-4 * 1.4f64.powi(k);
            let z = c(0.0, t);
            let speed = m.h_jet(z).unwrap().derivative.re - m.g_prime(z).unwrap().re;
            assert!(speed > 1.0, "ρ = {rho}, t = {t}: {speed}");
        }
    }
}

#[test]
fn sector_trig_identity() {
    for gi in 1..40 {
        let gamma = 1.0 + gi as f64 / 40.0;
        for k in 1..200 {
            let theta = FRAC_PI_2 * k as f64 / 200.0;
            let lhs = theta.tan() * (gamma * theta).sin() + (gamma * theta).cos();
            let rhs = ((gamma - 1.0) * theta).cos() / theta.cos();
            assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0), "γ={gamma} θ={theta}");
            assert!(rhs > 0.0);
        }
    }
}

#[test]
fn two_forms_of_critical_g_agree() {
    for b in [0.2, 1.0 / 3.0, 0.5, 2.0 / 3.0, 0.9] {
        for w in interior_points(30, 30, 1e-3, 1e3) {
            let lhs = (principal_power(w, b - 1.0).unwrap() + 1.0).inv()
                + (principal_power(w, 1.0 - b).unwrap() + 1.0).inv();
            assert!((lhs - 1.0).norm() <= 1e-12, "b={b} w={w}: {lhs}");
        }
    }
}

#[test]
fn newton_round_trip_on_hundred_point_grid() {
    let opts = NewtonOptions::default();
    for m in families() {
        for zeta in interior_points(10, 10, 0.1, 100.0) {
            let target = m.eval_map(zeta).unwrap();
            let found = preimage(&m, target, opts).unwrap();
            let image_err = (m.value(found).unwrap() - target).norm();
            assert!(image_err <= 1e-10, "{} at {zeta}: {image_err}", m.label());
            assert!(
                (found - zeta).norm() <= 1e-10 * zeta.norm().max(1.0),
                "{} at {zeta}: found {found}",
                m.label()
            );
        }
    }
}

#[test]
fn newton_examples() {
    let m = make_sector_example(1.5).unwrap();
    let z0 = c(1.0, 1.0);
    let found = newton_invert(&m, m.eval_map(z0).unwrap(), z0, 1e-10).unwrap();
    assert!((found - z0).norm() < 1e-12);

    let m = make_critical_example(2.0).unwrap();
    let target = c(8.0 - 2.0 * 3f64.ln(), 0.0);
    let found = newton_invert(&m, target, c(3.0, 0.0), 1e-10).unwrap();
    assert!((found - c(4.0, 0.0)).norm() < 1e-9, "{found}");
}

#[test]
fn newton_from_far_guess_never_returns_bad_point() {
    for m in families() {
        let target = m.eval_map(c(0.7, 0.2)).unwrap();
        match newton_invert(&m, target, c(1e6, 0.0), 1e-10) {
            Ok(z) => assert!((m.value(z).unwrap() - target).norm() <= 1e-10),
            Err(Error::NewtonDivergence { last, .. }) => assert!(last.re >= 0.0),
            Err(e) => panic!("unexpected {e:?}"),
        }
    }
}

#[test]
fn representation_round_trip_at_ten_endpoints() {
    for m in families() {
        for zeta in interior_points(5, 2, 0.3, 40.0) {
            let r = m.verify_representation(zeta, 1e-10).unwrap();
            assert!(r.max() <= 1e-8, "{} at {zeta}: {r:?}", m.label());
            assert!(r.u_residual <= 1e-10, "{} at {zeta}: {r:?}", m.label());
        }
    }
}

#[test]
fn path_integral_is_additive() {
    let f = |w: C64| principal_power(w, 0.37).unwrap() * (w * 0.2).exp();
    let (a, b, d) = (c(0.5, -1.0), c(2.0, 0.5), c(3.5, 2.0));
    let ab = path_integral(f, a, b, 1e-11).unwrap();
    let bd = path_integral(f, b, d, 1e-11).unwrap();
    let ad = path_integral(f, a, d, 1e-11).unwrap();
    let slack = ab.error_estimate + bd.error_estimate + ad.error_estimate;
    assert!((ab.value + bd.value - ad.value).norm() <= slack.max(1e-13));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn path_integral_of_power_matches_antiderivative(
        a in 0.05f64..2.5,
        x0 in 0.0f64..3.0, y0 in -3.0f64..3.0,
        x1 in 0.0f64..3.0, y1 in -3.0f64..3.0,
    ) {
        let from = c(x0, y0);
        let to = c(x1, y1);
        prop_assume!(from.norm() > 1e-6 && to.norm() > 1e-6);
        let anti = |w: C64| principal_power(w, a + 1.0).unwrap() / (a + 1.0);
        let r = path_integral(|w| principal_power(w, a).unwrap(), from, to, 1e-10).unwrap();
        prop_assert!((r.value - (anti(to) - anti(from))).norm() <= 1e-10);
    }

    #[test]
    fn eval_height_is_nonnegative_and_zero_on_axis(re in 0.0f64..1e6, im in -1e6f64..1e6) {
        let m = make_halflog_example();
        let u = m.eval_height(c(re, im)).unwrap();
        prop_assert!(u >= 0.0);
        prop_assert_eq!(m.eval_height(c(0.0, im)).unwrap(), 0.0);
    }
}
