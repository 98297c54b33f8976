//! Growth measurement for harmonic graph maps: boundary traces, the maximum
//! `M(r)` of the height on circles, the growth order, the asymptotic opening
//! angle and sampled univalence evidence.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::Serialize;

use crate::examples::ExampleFamily;
use crate::numerics::{
    bracket_root, fit_power_law, newton_invert, newton_invert_with, principal_power,
    NewtonOptions, PowerLawFit, NEWTON_TOL, ROOT_REL_TOL,
};
use crate::weierstrass::HarmonicGraphMap;
use crate::{Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryPoint {
    pub t: f64,
    pub z: C64,
}

/// Samples of the domain boundary `z(it)`, ordered by `t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryTrace {
    pub samples: Vec<BoundaryPoint>,
    /// Smallest increment of `Im z` between consecutive samples.
    pub min_increment: f64,
}

/// Symmetric grid on `[-t_max, t_max]`: linear on `(0, min(1, t_max)]`,
/// geometric beyond, plus `0` when `n` is odd.
pub fn boundary_grid(t_max: f64, n: usize) -> Vec<f64> {
    let half = n / 2;
    let t_lin = t_max.min(1.0);
    let n_lin = if t_max > 1.0 { (half / 4).max(1) } else { half };
    let n_geo = half - n_lin;
    let mut positive = Vec::with_capacity(half);
    for k in 1..=n_lin {
        positive.push(t_lin * k as f64 / n_lin as f64);
    }
    let ratio = (t_max / t_lin).ln();
    for k in 1..=n_geo {
        positive.push(t_lin * (ratio * k as f64 / n_geo as f64).exp());
    }
    if let Some(last) = positive.last_mut() {
        *last = t_max;
    }
    let mut grid: Vec<f64> = positive.iter().rev().map(|t| -t).collect();
    if n % 2 == 1 {
        grid.push(0.0);
    }
    grid.extend(positive);
    grid
}

fn sample_boundary(m: &HarmonicGraphMap, grid: &[f64]) -> Result<Vec<BoundaryPoint>> {
    grid.par_iter()
        .map(|&t| {
            Ok(BoundaryPoint {
                t,
                z: m.eval_map(C64::new(0.0, t))?,
            })
        })
        .collect()
}

fn min_increment(samples: &[BoundaryPoint]) -> (f64, usize) {
    samples
        .windows(2)
        .enumerate()
        .map(|(i, w)| (w[1].z.im - w[0].z.im, i))
        .fold((f64::INFINITY, 0), |acc, x| if x.0 < acc.0 { x } else { acc })
}

/// Image of the imaginary axis on the symmetric grid of [`boundary_grid`].
/// Fails if `Im z` is not strictly increasing along the trace.
pub fn trace_boundary(m: &HarmonicGraphMap, t_max: f64, n: usize) -> Result<BoundaryTrace> {
    if n < 16 {
        return Err(Error::Parameter(format!("trace needs n >= 16, got {n}")));
    }
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(Error::Parameter(format!("t_max must be positive, got {t_max}")));
    }
    let samples = sample_boundary(m, &boundary_grid(t_max, n))?;
    let (min_increment, at) = min_increment(&samples);
    if !(min_increment > 0.0) {
        return Err(Error::Univalence {
            t0: samples[at].t,
            t1: samples[at + 1].t,
        });
    }
    Ok(BoundaryTrace {
        samples,
        min_increment,
    })
}

/// Maximum of the height over one circle `|z| = r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CircleMax {
    pub r: f64,
    pub m: f64,
    pub zeta_star: C64,
    /// Rays of the sweep that did not cross the circle.
    pub rays_skipped: usize,
}

const SWEEP_RAYS: usize = 64;
const GOLDEN_STEPS: usize = 48;

/// Radius `s` along the ray `arg ζ = θ` at which `|f|` first reaches `r`,
/// provided `|f|` keeps growing beyond it.
fn ray_crossing(m: &HarmonicGraphMap, theta: f64, r: f64) -> Result<f64> {
    let dir = C64::from_polar(1.0, theta);
    let modulus = |s: f64| m.eval_map(dir * s).map(|z| z.norm());
    if modulus(0.0)? >= r {
        return Err(Error::NoCrossing { r });
    }
    let mut lo = 0.0;
    let mut hi = 1.0;
    while modulus(hi)? <= r {
        lo = hi;
        hi *= 2.0;
        if hi > 1e300 {
            return Err(Error::NoCrossing { r });
        }
    }
    // Tail check: |f| must keep increasing past the crossing.
    let a = modulus(hi)?;
    let b = modulus(2.0 * hi)?;
    let c = modulus(4.0 * hi)?;
    if !(a < b && b < c) {
        return Err(Error::NoCrossing { r });
    }
    let s = bracket_root(
        |s| modulus(s).map(|v| v - r).unwrap_or(f64::NAN),
        lo,
        hi,
        ROOT_REL_TOL * hi,
    )?;
    Ok(s)
}

/// `M(r)`: maximises `2 Re ζ` over `{ζ : |f(ζ)| = r}` by a sweep of rays
/// from the origin followed by golden-section refinement in the angle.
pub fn max_on_circle(m: &HarmonicGraphMap, r: f64) -> Result<CircleMax> {
    let origin = m.eval_map(C64::new(0.0, 0.0))?.norm();
    if !(r > origin && r.is_finite()) {
        return Err(Error::Domain(format!(
            "circle |z| = {r} does not enclose f(0) (|f(0)| = {origin})"
        )));
    }
    let height = |theta: f64| -> Option<(f64, C64)> {
        let s = ray_crossing(m, theta, r).ok()?;
        let zeta = C64::from_polar(s, theta);
        Some((2.0 * zeta.re, zeta))
    };

    let step = PI / SWEEP_RAYS as f64;
    let thetas: Vec<f64> = (0..SWEEP_RAYS)
        .map(|j| -FRAC_PI_2 + step * (j as f64 + 0.5))
        .collect();
    let sweep: Vec<Option<(f64, C64)>> = thetas.par_iter().map(|&t| height(t)).collect();
    let rays_skipped = sweep.iter().filter(|v| v.is_none()).count();

    let (best_j, best) = sweep
        .iter()
        .enumerate()
        .filter_map(|(j, v)| v.map(|v| (j, v)))
        .fold(None, |acc: Option<(usize, (f64, C64))>, x| match acc {
            Some(a) if a.1 .0 >= x.1 .0 => Some(a),
            _ => Some(x),
        })
        .ok_or(Error::NoCrossing { r })?;

    // Golden-section search on the bracket of neighbouring rays.
    let mut a = (thetas[best_j] - step).max(-FRAC_PI_2 + 1e-12);
    let mut b = (thetas[best_j] + step).min(FRAC_PI_2 - 1e-12);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let score = |t: f64| height(t).map_or(f64::NEG_INFINITY, |v| v.0);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (score(c), score(d));
    for _ in 0..GOLDEN_STEPS {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = score(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = score(d);
        }
    }
    let mut result = best;
    if let Some(refined) = height(0.5 * (a + b)) {
        if refined.0 > result.0 {
            result = refined;
        }
    }

    Ok(CircleMax {
        r,
        m: result.0,
        zeta_star: result.1,
        rays_skipped,
    })
}

/// Geometric radius list from `r_min` to `r_max` with `per_decade` points per
/// factor of ten (endpoints included).
pub fn geometric_radii(r_min: f64, r_max: f64, per_decade: usize) -> Result<Vec<f64>> {
    if !(r_min > 0.0 && r_min < r_max && r_max.is_finite() && per_decade >= 1) {
        return Err(Error::Parameter(format!(
            "bad radius range [{r_min}, {r_max}] with {per_decade} points per decade"
        )));
    }
    let (lo, hi) = (r_min.log10(), r_max.log10());
    let steps = ((hi - lo) * per_decade as f64 - 1e-9).ceil().max(1.0) as usize;
    Ok((0..=steps)
        .map(|k| 10f64.powf(lo + (hi - lo) * k as f64 / steps as f64))
        .collect())
}

/// Defaults for growth scans: 3 points per decade over `[1e2, 1e6]` and a
/// fit window of `[1e3, 1e6]`.
pub const DEFAULT_R_MIN: f64 = 1e2;
pub const DEFAULT_R_MAX: f64 = 1e6;
pub const DEFAULT_POINTS_PER_DECADE: usize = 3;
pub const DEFAULT_WINDOW: (f64, f64) = (1e3, 1e6);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthReport {
    pub label: String,
    pub family: Option<ExampleFamily>,
    pub radii: Vec<f64>,
    pub m_values: Vec<f64>,
    pub argmax_points: Vec<C64>,
    pub fit: PowerLawFit,
    pub claimed_order: Option<f64>,
    /// Whether `M(r)` came out nondecreasing in `r`.
    pub monotone: bool,
}

impl GrowthReport {
    pub fn samples(&self) -> Vec<(f64, f64)> {
        self.radii.iter().copied().zip(self.m_values.iter().copied()).collect()
    }

    /// `|slope - claimed| / claimed`, if the map has a claimed order.
    pub fn relative_order_error(&self) -> Option<f64> {
        self.claimed_order
            .map(|c| (self.fit.slope - c).abs() / c)
    }
}

/// Computes `M(r)` for every radius and fits the growth exponent over `window`.
pub fn growth_order(
    m: &HarmonicGraphMap,
    radii: &[f64],
    window: (f64, f64),
) -> Result<GrowthReport> {
    if radii.len() < 5 {
        return Err(Error::Parameter(format!(
            "growth scan needs at least 5 radii, got {}",
            radii.len()
        )));
    }
    if radii.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Parameter("radii must be strictly increasing".into()));
    }
    let maxima = circle_maxima(m, radii)?;
    let m_values: Vec<f64> = maxima.iter().map(|c| c.m).collect();
    let samples: Vec<(f64, f64)> = radii.iter().copied().zip(m_values.iter().copied()).collect();
    let fit = fit_power_law(&samples, window)?;
    Ok(GrowthReport {
        label: m.label().to_string(),
        family: m.family(),
        radii: radii.to_vec(),
        monotone: m_values.windows(2).all(|w| w[1] >= w[0]),
        argmax_points: maxima.iter().map(|c| c.zeta_star).collect(),
        m_values,
        fit,
        claimed_order: m.family().map(|f| f.claimed_order()),
    })
}

pub(crate) fn circle_maxima(m: &HarmonicGraphMap, radii: &[f64]) -> Result<Vec<CircleMax>> {
    radii.par_iter().map(|&r| max_on_circle(m, r)).collect()
}

/// Angular measure of `D ∩ {|z| = r}` for a domain symmetric about the real
/// axis whose boundary meets the circle exactly twice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AngleEstimate {
    pub r: f64,
    pub t_crossing: f64,
    pub theta_hat: f64,
}

const ANGLE_T_START: f64 = 1e-3;

pub fn asymptotic_angle(m: &HarmonicGraphMap, r: f64) -> Result<AngleEstimate> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Parameter(format!("radius must be positive, got {r}")));
    }
    let modulus = |t: f64| m.eval_map(C64::new(0.0, t)).map(|z| z.norm());

    // Geometric scan of |f(it)| until it exceeds r; the last decrease seen
    // marks where the monotone tail starts.
    let mut ts = vec![0.0, ANGLE_T_START];
    let mut vals = vec![modulus(0.0)?, modulus(ANGLE_T_START)?];
    while *vals.last().expect("non-empty") <= r {
        let t = ts.last().expect("non-empty") * 2f64.powf(0.25);
        if t > 1e300 {
            return Err(Error::AngleUndefined {
                r,
                reason: "|z(it)| never reaches r".into(),
            });
        }
        ts.push(t);
        vals.push(modulus(t)?);
    }
    let tail_start = vals
        .windows(2)
        .rposition(|w| w[1] <= w[0])
        .map_or(0, |i| i + 1);
    let last = vals.len() - 1;
    if tail_start >= last || vals[tail_start] >= r {
        return Err(Error::AngleUndefined {
            r,
            reason: "|z(it)| is not monotone where it reaches r".into(),
        });
    }
    let lo = ts[last - 1];
    let hi = ts[last];
    let t_crossing = bracket_root(
        |t| modulus(t).map(|v| v - r).unwrap_or(f64::NAN),
        lo,
        hi,
        ROOT_REL_TOL * hi,
    )?;
    let z = m.eval_map(C64::new(0.0, t_crossing))?;
    Ok(AngleEstimate {
        r,
        t_crossing,
        theta_hat: 2.0 * z.arg().abs(),
    })
}

/// Starting point for inverting `f` near `z`, from the leading-order inverse
/// of each family along the real axis.
pub fn initial_guess(m: &HarmonicGraphMap, z: C64) -> C64 {
    let clamp = |w: C64| C64::new(w.re.max(1e-3), w.im);
    let guess = match m.family() {
        Some(ExampleFamily::Sector { gamma }) => {
            principal_power(z, 1.0 / gamma).map(|w| clamp(w - 1.0)).ok()
        }
        Some(ExampleFamily::HalfLog) => principal_power(z * 2.0, 0.5).map(|w| clamp(w - 1.0)).ok(),
        Some(ExampleFamily::Critical { rho }) => {
            let b = 1.0 / rho;
            let s = (b * z.re.max(1e-12) / 2.0).powf(rho);
            Some(C64::new(s.max(1e-3), 0.5 * z.im))
        }
        None => None,
    };
    guess.unwrap_or(C64::new(1.0, 0.0))
}

/// `u(z) = 2 Re f⁻¹(z)`, with Newton started at `guess`.
pub fn height_at(m: &HarmonicGraphMap, z: C64, guess: C64) -> Result<f64> {
    let zeta = newton_invert(m, z, guess, NEWTON_TOL)?;
    m.eval_height(zeta)
}

const CONTINUATION_STEPS: usize = 16;

/// Preimage of `z` without a caller-supplied guess: tries the family's
/// asymptotic inverse, then continues along the segment from a real-axis
/// image point of the same modulus.
pub fn preimage(m: &HarmonicGraphMap, z: C64, opts: NewtonOptions) -> Result<C64> {
    if let Ok(zeta) = newton_invert_with(m, z, initial_guess(m, z), opts) {
        return Ok(zeta);
    }
    let start_zeta = match ray_crossing(m, 0.0, z.norm().max(1.0)) {
        Ok(s) => C64::new(s, 0.0),
        Err(_) => initial_guess(m, C64::new(z.norm(), 0.0)),
    };
    let start = m.eval_map(start_zeta)?;
    let mut zeta = start_zeta;
    for k in 1..=CONTINUATION_STEPS {
        let target = start + (z - start) * (k as f64 / CONTINUATION_STEPS as f64);
        zeta = newton_invert_with(m, target, zeta, opts)?;
    }
    Ok(zeta)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JacobianGrid {
    pub s_min: f64,
    pub s_max: f64,
    pub radial_points: usize,
    pub angular_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnivalenceReport {
    pub label: String,
    pub min_jacobian: f64,
    pub argmin_jacobian: C64,
    pub jacobian_grid: JacobianGrid,
    pub boundary_monotone: bool,
    pub min_boundary_increment: f64,
    pub pass: bool,
}

// Smallest sampled radius relative to s_max.
const JACOBIAN_DYNAMIC_RANGE: f64 = 1e-6;

/// Sampled univalence evidence: Jacobian sign on a polar grid of the open
/// half-plane and monotonicity of `Im z(it)` on `[-s_max, s_max]`.
pub fn check_univalence(m: &HarmonicGraphMap, s_max: f64, grid: usize) -> Result<UnivalenceReport> {
    if grid < 32 {
        return Err(Error::Parameter(format!("univalence grid needs >= 32 points, got {grid}")));
    }
    if !(s_max > 0.0 && s_max.is_finite()) {
        return Err(Error::Parameter(format!("s_max must be positive, got {s_max}")));
    }
    let s_min = s_max * JACOBIAN_DYNAMIC_RANGE;
    let radial: Vec<f64> = (0..grid)
        .map(|i| s_min * (s_max / s_min).powf(i as f64 / (grid - 1) as f64))
        .collect();
    let angular: Vec<f64> = (0..grid)
        .map(|j| -FRAC_PI_2 + PI * (j as f64 + 0.5) / grid as f64)
        .collect();
    let (min_jacobian, argmin_jacobian) = radial
        .par_iter()
        .map(|&s| {
            angular
                .iter()
                .map(|&t| {
                    let zeta = C64::from_polar(s, t);
                    m.jacobian(zeta).map(|j| (j, zeta))
                })
                .try_fold((f64::INFINITY, C64::new(0.0, 0.0)), |acc, x| {
                    x.map(|x| if x.0 < acc.0 { x } else { acc })
                })
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold((f64::INFINITY, C64::new(0.0, 0.0)), |acc, x| if x.0 < acc.0 { x } else { acc });

    let samples = sample_boundary(m, &boundary_grid(s_max, 2 * grid + 1))?;
    let (min_boundary_increment, _) = min_increment(&samples);
    let boundary_monotone = min_boundary_increment > 0.0;

    Ok(UnivalenceReport {
        label: m.label().to_string(),
        min_jacobian,
        argmin_jacobian,
        jacobian_grid: JacobianGrid {
            s_min,
            s_max,
            radial_points: grid,
            angular_points: grid,
        },
        boundary_monotone,
        min_boundary_increment,
        pass: min_jacobian > 0.0 && boundary_monotone,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn grid_shape() {
        let g = boundary_grid(10.0, 1001);
        assert_eq!(g.len(), 1001);
        assert_eq!(g[0], -10.0);
        assert_eq!(g[500], 0.0);
        assert_eq!(g[1000], 10.0);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        let g = boundary_grid(0.5, 16);
        assert_eq!(g.len(), 16);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn halflog_trace_endpoints() {
        let tr = trace_boundary(&make_halflog_example(), 10.0, 1001).unwrap();
        let end = 10.0 + 10f64.atan();
        assert_eq!(tr.samples.len(), 1001);
        assert_abs_diff_eq!(tr.samples[0].z.im, -end, epsilon = 1e-12);
        assert_abs_diff_eq!(tr.samples[1000].z.im, end, epsilon = 1e-12);
        assert!(tr.min_increment > 0.0);
    }

    #[test]
    fn sector_trace_is_conjugation_symmetric() {
        let tr = trace_boundary(&make_sector_example(1.5).unwrap(), 1e3, 201).unwrap();
        let n = tr.samples.len();
        for i in 0..n {
            let a = tr.samples[i].z;
            let b = tr.samples[n - 1 - i].z;
            assert!((a - b.conj()).norm() <= 1e-12 * a.norm().max(1.0));
        }
    }

    #[test]
    fn trace_rejects_small_n() {
        assert!(matches!(
            trace_boundary(&make_halflog_example(), 10.0, 15),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn trace_reports_fold() {
        // f(it) = -it folds the boundary: Im decreasing.
        let m = HarmonicGraphMap::from_closures("fold", |z| -z, |_| c(-1.0, 0.0), |_| c(0.0, 0.0));
        assert!(matches!(trace_boundary(&m, 1.0, 17), Err(Error::Univalence { .. })));
    }

    #[test]
    fn sector_circle_max_dominates_real_axis_point() {
        let m = make_sector_example(1.5).unwrap();
        let r = 1e3;
        let s = ray_crossing(&m, 0.0, r).unwrap();
        assert_abs_diff_eq!(m.eval_map(c(s, 0.0)).unwrap().re, r, epsilon = 1e-9);
        let cm = max_on_circle(&m, r).unwrap();
        assert!(cm.m >= 2.0 * s - 1e-9);
        assert_abs_diff_eq!(m.eval_map(cm.zeta_star).unwrap().norm(), r, epsilon = 1e-8);
    }

    #[test]
    fn critical_circle_max_lower_bound() {
        let m = make_critical_example(2.0).unwrap();
        let r = 400.0 - 2.0 * 101f64.ln();
        assert_abs_diff_eq!(r, 390.77, epsilon = 1e-2);
        let cm = max_on_circle(&m, r).unwrap();
        assert!(cm.m >= 2e4 - 1e-6, "{cm:?}");
    }

    #[test]
    fn circle_must_enclose_origin_image() {
        assert!(max_on_circle(&make_halflog_example(), 0.1).is_err());
    }

    #[test]
    fn geometric_radii_defaults() {
        let r = geometric_radii(DEFAULT_R_MIN, DEFAULT_R_MAX, DEFAULT_POINTS_PER_DECADE).unwrap();
        assert_eq!(r.len(), 13);
        assert_abs_diff_eq!(r[0], 1e2, epsilon = 1e-9);
        assert_abs_diff_eq!(r[3], 1e3, epsilon = 1e-9);
        assert_abs_diff_eq!(r[12], 1e6, epsilon = 1e-6);
    }

    #[test]
    fn growth_order_needs_five_radii() {
        let e = growth_order(&make_halflog_example(), &[1e2, 1e3, 1e4, 1e5], DEFAULT_WINDOW);
        assert!(matches!(e, Err(Error::Parameter(_))));
    }

    #[test]
    fn angle_of_halflog() {
        let a = asymptotic_angle(&make_halflog_example(), 1e6).unwrap();
        assert!((a.theta_hat - 2.0 * PI).abs() <= 0.01 * 2.0 * PI, "{a:?}");
        let z = make_halflog_example().eval_map(c(0.0, a.t_crossing)).unwrap();
        assert_abs_diff_eq!(z.norm(), 1e6, epsilon = 1e-4);
    }

    #[test]
    fn height_round_trips() {
        let m = make_sector_example(1.25).unwrap();
        let z = m.eval_map(c(2.0, 1.0)).unwrap();
        assert_abs_diff_eq!(height_at(&m, z, c(2.0, 1.0)).unwrap(), 4.0, epsilon = 1e-12);
        let g = initial_guess(&m, z);
        assert_abs_diff_eq!(height_at(&m, z, g).unwrap(), 4.0, epsilon = 1e-9);

        let m = make_critical_example(2.0).unwrap();
        let z = c(8.0 - 2.0 * 3f64.ln(), 0.0);
        assert_abs_diff_eq!(height_at(&m, z, c(3.0, 0.0)).unwrap(), 8.0, epsilon = 1e-9);
    }

    #[test]
    fn boundary_points_have_zero_height() {
        let m = make_halflog_example();
        let z = m.eval_map(c(0.0, 2.0)).unwrap();
        let u = height_at(&m, z, c(0.5, 2.0)).unwrap();
        assert!(u.abs() <= 1e-9, "{u}");
    }

    #[test]
    fn univalence_of_families_and_negative_control() {
        let sector = check_univalence(&make_sector_example(1.5).unwrap(), 1e3, 32).unwrap();
        assert!(sector.pass);
        // |ζ+1| >= 1 on the closed half-plane, so J >= γ² - 1/γ².
        assert!(sector.min_jacobian >= 2.25 - 1.0 / 2.25 - 1e-9);
        assert!(sector.min_jacobian <= 2.25 - 1.0 / 2.25 + 1e-3);

        assert!(check_univalence(&make_halflog_example(), 1e3, 32).unwrap().pass);

        let broken = HarmonicGraphMap::from_closures(
            "broken",
            |z| z * 0.5,
            |_| c(0.5, 0.0),
            |z| z * -2.0,
        );
        let rep = check_univalence(&broken, 1e3, 32).unwrap();
        assert!(!rep.pass);
        assert_abs_diff_eq!(rep.min_jacobian, 0.25 - 4.0, epsilon = 1e-12);
    }
}
