//! Growth bounds, the comparison bound and the minimal surface residual.

use std::f64::consts::PI;

use mingraph::analysis::*;
use mingraph::verify::*;
use mingraph::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn families() -> Vec<(ExampleFamily, HarmonicGraphMap)> {
    ["sector:1.25", "sector:1.5", "sector:1.75", "critical:1.5", "critical:2", "critical:3", "halflog"]
        .iter()
        .map(|s| {
            let f: ExampleFamily = s.parse().unwrap();
            (f, f.build().unwrap())
        })
        .collect()
}

fn radii() -> Vec<f64> {
    geometric_radii(DEFAULT_R_MIN, DEFAULT_R_MAX, DEFAULT_POINTS_PER_DECADE).unwrap()
}

#[test]
fn linear_bound_holds_for_sectors_and_is_refused_elsewhere() {
    for (fam, m) in families() {
        let res = check_linear_upper_bound(&m, &radii());
        match fam {
            ExampleFamily::Sector { .. } => {
                let rep = res.unwrap();
                assert!(rep.pass, "{fam}: {:?}", rep.samples);
                assert!(rep.constant.is_finite() && rep.constant > 0.0);
            }
            _ => assert!(matches!(res, Err(Error::Hypothesis(_))), "{fam}: {res:?}"),
        }
    }
}

#[test]
fn linear_bound_rejects_superlinear_profile() {
    let r: Vec<f64> = (1..=10).map(|k| 10f64.powi(k)).collect();
    let m: Vec<f64> = r.iter().map(|r| r.powf(1.5)).collect();
    assert!(!linear_upper_bound_from_profile("synthetic", &r, &m).unwrap().pass);
    let m: Vec<f64> = r.iter().map(|r| r.powf(0.8)).collect();
    assert!(linear_upper_bound_from_profile("synthetic", &r, &m).unwrap().pass);
}

#[test]
fn log_lower_bound_is_positive_for_every_family() {
    for (fam, m) in families() {
        let rep = check_log_lower_bound(&m, &radii()).unwrap();
        assert!(rep.pass && rep.constant > 0.0, "{fam}: {}", rep.constant);
    }
}

#[test]
fn log_lower_bound_matches_catenoid_profile() {
    // The catenoid grows like r1 ln r, so its infimum ratio settles near r1.
    let r: Vec<f64> = (2..=12).map(|k| 10f64.powf(k as f64 / 2.0)).collect();
    let m: Vec<f64> = r
        .iter()
        .map(|&r| catenoid_barrier(c(r, 0.0), 1.0).unwrap())
        .collect();
    let rep = log_lower_bound_from_profile("catenoid", &r, &m).unwrap();
    assert!(rep.pass);
    assert!(rep.constant > 1.0 && rep.constant < 1.2, "{}", rep.constant);
}

#[test]
fn order_floor_holds_for_every_family() {
    for (fam, m) in families() {
        let rep = growth_order(&m, &radii(), DEFAULT_WINDOW).unwrap();
        assert!(verify_order_lower_bound(&rep, fam.beta()), "{fam}: {}", rep.fit.slope);
        if let ExampleFamily::Sector { .. } = fam {
            let floor = PI / fam.beta();
            assert!((rep.fit.slope - floor).abs() <= 0.02 * floor, "{fam}: {}", rep.fit.slope);
        }
    }
}

#[test]
fn comparison_bound_dominates_sector_height_along_axis() {
    // sector:1.75 has opening 7π/4; its complement reflected is |arg z| < π/8,
    // so the comparison sector with α = 3π/4 applies with a C from the
    // observed linear growth constant.
    let m = make_sector_example(1.75).unwrap();
    let radii = geometric_radii(1e1, 1e4, 3).unwrap();
    let k = check_linear_upper_bound(&m, &radii).unwrap().constant;
    let setup = TheoremABound::new(3.0 * PI / 4.0, k).unwrap();
    assert!(setup.x1 > 0.0);
    for &x in &[2.0 * setup.x1 + 1.0, 50.0, 500.0, 5000.0] {
        let bound = theorem_a_bound(&setup, x).unwrap();
        let cm = max_on_circle(&m, x).unwrap();
        assert!(cm.m <= bound, "x = {x}: M = {} > bound {bound}", cm.m);
    }
}

#[test]
fn comparison_bound_refuses_bad_setups() {
    assert!(matches!(TheoremABound::new(PI / 3.0, 1.0), Err(Error::Parameter(_))));
    let s = TheoremABound::new(3.0 * PI / 4.0, 1.0).unwrap();
    assert!(matches!(theorem_a_bound(&s, s.x1 / 2.0), Err(Error::Hypothesis(_))));
    // κ ≥ 1 everywhere when C is tiny.
    assert!(matches!(TheoremABound::new(3.0 * PI / 4.0, 1e-3), Err(Error::Hypothesis(_))));
}

#[test]
fn residual_is_small_and_second_order() {
    for (fam, m) in families() {
        let center = m.eval_map(c(3.0, 0.0)).unwrap();
        let coarse = msq_residual(&m, center, 0.5, 1.0 / 64.0).unwrap();
        let fine = msq_residual(&m, center, 0.5, 1.0 / 128.0).unwrap();
        assert!(coarse.max_abs <= 1e-3, "{fam}: {}", coarse.max_abs);
        let ratio = coarse.max_abs / fine.max_abs;
        assert!((3.0..=5.0).contains(&ratio), "{fam}: ratio {ratio}");
    }
}

#[test]
fn residual_detects_non_minimal_graph() {
    // A paraboloid has mean curvature bounded away from zero.
    let n = 41;
    let h = 0.05;
    let u: Vec<Vec<Option<f64>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (x, y) = (i as f64 * h - 1.0, j as f64 * h - 1.0);
                    Some(x * x + y * y)
                })
                .collect()
        })
        .collect();
    let res = mean_curvature_residual(&u, h);
    let max = res.iter().flatten().flatten().fold(0.0f64, |a, v| a.max(v.abs()));
    assert!(max > 1.0, "{max}");
}
