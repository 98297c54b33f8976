//! Theorem-level checks: minimal surface equation residuals, the linear upper
//! bound on sector-containing domains, the catenoid barrier and logarithmic
//! lower bound, and the comparison bound with its hypothesis checks.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{circle_maxima, preimage, GrowthReport};
use crate::examples::ExampleFamily;
use crate::numerics::{newton_invert_with, NewtonOptions};
use crate::weierstrass::HarmonicGraphMap;
use crate::{Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Patch {
    pub center: C64,
    pub half_width: f64,
}

/// Minimal-surface-operator residuals on a square patch of the `z`-plane.
///
/// `values[j][i]` belongs to the node `center + (-w + i·step) + i(-w + j·step)`;
/// it is `None` on the patch rim and wherever a stencil node failed to invert.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualGrid {
    pub patch: Patch,
    pub step: f64,
    pub values: Vec<Vec<Option<f64>>>,
    pub max_abs: f64,
    pub invalid_nodes: usize,
}

impl ResidualGrid {
    /// `(x, y, residual)` for every node with a residual, row-major.
    pub fn nodes(&self) -> Vec<(f64, f64, f64)> {
        let w = self.patch.half_width;
        let mut out = Vec::new();
        for (j, row) in self.values.iter().enumerate() {
            for (i, v) in row.iter().enumerate() {
                if let Some(v) = v {
                    out.push((
                        self.patch.center.re - w + i as f64 * self.step,
                        self.patch.center.im - w + j as f64 * self.step,
                        *v,
                    ));
                }
            }
        }
        out
    }
}

/// Divergence of `∇u / sqrt(1 + |∇u|²)` in flux form.
///
/// Fluxes live on cell faces: the normal derivative is a one-cell difference,
/// the tangential one averages the centred differences of the two adjacent
/// nodes. `u[j][i]` is indexed like [`ResidualGrid::values`].
pub fn mean_curvature_residual(u: &[Vec<Option<f64>>], step: f64) -> Vec<Vec<Option<f64>>> {
    let ny = u.len();
    let nx = u.first().map_or(0, |r| r.len());
    let at = |i: usize, j: usize| u[j][i];
    let flux = |p: f64, q: f64| 1.0 / (1.0 + p * p + q * q).sqrt();

    let mut out = vec![vec![None; nx]; ny];
    for j in 1..ny.saturating_sub(1) {
        for i in 1..nx.saturating_sub(1) {
            let mut s = [[0.0; 3]; 3];
            let mut ok = true;
            for (dj, row) in s.iter_mut().enumerate() {
                for (di, v) in row.iter_mut().enumerate() {
                    match at(i + di - 1, j + dj - 1) {
                        Some(x) => *v = x,
                        None => ok = false,
                    }
                }
            }
            if !ok {
                continue;
            }
            // s[dj][di], centre s[1][1]
            let h = step;
            let east_p = (s[1][2] - s[1][1]) / h;
            let east_q = (s[2][1] - s[0][1] + s[2][2] - s[0][2]) / (4.0 * h);
            let west_p = (s[1][1] - s[1][0]) / h;
            let west_q = (s[2][1] - s[0][1] + s[2][0] - s[0][0]) / (4.0 * h);
            let north_q = (s[2][1] - s[1][1]) / h;
            let north_p = (s[1][2] - s[1][0] + s[2][2] - s[2][0]) / (4.0 * h);
            let south_q = (s[1][1] - s[0][1]) / h;
            let south_p = (s[1][2] - s[1][0] + s[0][2] - s[0][0]) / (4.0 * h);

            let div = (east_p * flux(east_p, east_q) - west_p * flux(west_p, west_q)) / h
                + (north_q * flux(north_p, north_q) - south_q * flux(south_p, south_q)) / h;
            out[j][i] = Some(div);
        }
    }
    out
}

const MAX_INVALID_FRACTION: f64 = 0.05;

fn residual_newton() -> NewtonOptions {
    NewtonOptions {
        tol: 1e-12,
        max_iter: 60,
        polish_steps: 3,
    }
}

/// Reconstructs `u` on a Cartesian patch by inverting the map node by node,
/// then evaluates the minimal surface operator on it.
///
/// Nodes are seeded deterministically: the first column top-down from the
/// patch centre's preimage, then each row left to right from its first node.
pub fn msq_residual(m: &HarmonicGraphMap, center: C64, half_width: f64, step: f64) -> Result<ResidualGrid> {
    if !(half_width > 0.0 && step > 0.0 && step < half_width) {
        return Err(Error::Parameter(format!(
            "patch needs 0 < step < half_width, got step {step}, half_width {half_width}"
        )));
    }
    let n = (2.0 * half_width / step).round() as usize + 1;
    let node = |i: usize, j: usize| {
        center + C64::new(-half_width + i as f64 * step, -half_width + j as f64 * step)
    };
    let opts = residual_newton();
    let seed = preimage(m, center, opts)?;

    // First column: walk out from the centre's preimage.
    let mut first_col = vec![None; n];
    let mut guess = seed;
    for (j, slot) in first_col.iter_mut().enumerate() {
        if let Ok(z) = newton_invert_with(m, node(0, j), guess, opts) {
            guess = z;
            *slot = Some(z);
        }
    }
    let rows: Vec<Vec<Option<f64>>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut row = vec![None; n];
            let mut guess = first_col[j].unwrap_or(seed);
            for (i, slot) in row.iter_mut().enumerate() {
                let found = if i == 0 {
                    first_col[j]
                } else {
                    newton_invert_with(m, node(i, j), guess, opts).ok()
                };
                if let Some(z) = found {
                    guess = z;
                    *slot = Some(2.0 * z.re);
                }
            }
            row
        })
        .collect();

    let invalid_nodes = rows.iter().flatten().filter(|v| v.is_none()).count();
    let total = n * n;
    if invalid_nodes as f64 > MAX_INVALID_FRACTION * total as f64 {
        return Err(Error::Patch {
            invalid: invalid_nodes,
            total,
        });
    }
    let values = mean_curvature_residual(&rows, step);
    let max_abs = values
        .iter()
        .flatten()
        .flatten()
        .fold(0.0f64, |a, v| a.max(v.abs()));
    Ok(ResidualGrid {
        patch: Patch { center, half_width },
        step,
        values,
        max_abs,
        invalid_nodes,
    })
}

/// Upper half of the vertical catenoid with neck radius `r1`:
/// `r1 · arccosh(|z| / r1)`.
pub fn catenoid_barrier(z: C64, r1: f64) -> Result<f64> {
    let rho = z.norm();
    if !(r1 > 0.0 && r1.is_finite()) {
        return Err(Error::Domain(format!("neck radius must be positive, got {r1}")));
    }
    if !(rho >= r1) {
        return Err(Error::Domain(format!("|z| = {rho} is inside the neck radius {r1}")));
    }
    Ok(r1 * (rho / r1).acosh())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    LinearUpper,
    LogLower,
    TheoremA,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundSample {
    /// Radius, or abscissa for the comparison bound.
    pub x: f64,
    pub value: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheckReport {
    pub kind: BoundKind,
    pub label: String,
    pub samples: Vec<BoundSample>,
    /// Empirical `K` (linear), `c` (logarithmic) or `C` (comparison).
    pub constant: f64,
    pub window: (f64, f64),
    pub pass: bool,
}

// Running infimum of M(r)/log r counts as stable when the last three values
// are within this relative spread.
const LOG_STABILITY: f64 = 0.10;

/// `c = inf M(r)/ln r` over the radii; passes when `c > 0` and the running
/// infimum has settled over the last three radii.
pub fn log_lower_bound_from_profile(label: &str, radii: &[f64], m_values: &[f64]) -> Result<BoundCheckReport> {
    if radii.len() != m_values.len() || radii.len() < 3 {
        return Err(Error::Parameter("need at least 3 matching (r, M) samples".into()));
    }
    let samples: Vec<BoundSample> = radii
        .iter()
        .zip(m_values)
        .map(|(&r, &v)| BoundSample {
            x: r,
            value: v,
            ratio: v / r.ln(),
        })
        .collect();
    let running: Vec<f64> = samples
        .iter()
        .scan(f64::INFINITY, |inf, s| {
            *inf = inf.min(s.ratio);
            Some(*inf)
        })
        .collect();
    let c = *running.last().expect("non-empty");
    let tail = &running[running.len() - 3..];
    let hi = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = tail.iter().copied().fold(f64::INFINITY, f64::min);
    let stable = hi > 0.0 && (hi - lo) <= LOG_STABILITY * hi;
    Ok(BoundCheckReport {
        kind: BoundKind::LogLower,
        label: label.to_string(),
        window: (radii[0], radii[radii.len() - 1]),
        samples,
        constant: c,
        pass: c > 0.0 && stable,
    })
}

pub fn check_log_lower_bound(m: &HarmonicGraphMap, radii: &[f64]) -> Result<BoundCheckReport> {
    if radii.iter().any(|&r| !(r >= 10.0)) {
        return Err(Error::Parameter("log lower bound radii must be >= 10".into()));
    }
    let maxima = circle_maxima(m, radii)?;
    let m_values: Vec<f64> = maxima.iter().map(|c| c.m).collect();
    log_lower_bound_from_profile(m.label(), radii, &m_values)
}

/// `K = sup M(r)/r`; passes when `K` is finite and `M(r)/r` is
/// non-increasing over the upper half of the radii.
pub fn linear_upper_bound_from_profile(label: &str, radii: &[f64], m_values: &[f64]) -> Result<BoundCheckReport> {
    if radii.len() != m_values.len() || radii.len() < 3 {
        return Err(Error::Parameter("need at least 3 matching (r, M) samples".into()));
    }
    let samples: Vec<BoundSample> = radii
        .iter()
        .zip(m_values)
        .map(|(&r, &v)| BoundSample {
            x: r,
            value: v,
            ratio: v / r,
        })
        .collect();
    let k = samples.iter().map(|s| s.ratio).fold(f64::NEG_INFINITY, f64::max);
    let tail = &samples[samples.len() / 2..];
    let decreasing = tail.windows(2).all(|w| w[1].ratio <= w[0].ratio);
    Ok(BoundCheckReport {
        kind: BoundKind::LinearUpper,
        label: label.to_string(),
        window: (radii[0], radii[radii.len() - 1]),
        samples,
        constant: k,
        pass: k.is_finite() && decreasing,
    })
}

/// Linear growth bound for domains containing a sector of opening larger
/// than `π`. Only the sector family (`π < β < 2π`) is certified to satisfy
/// the hypotheses; every other map is refused.
pub fn check_linear_upper_bound(m: &HarmonicGraphMap, radii: &[f64]) -> Result<BoundCheckReport> {
    match m.family() {
        Some(f @ ExampleFamily::Sector { .. }) if f.beta() > PI && f.beta() < 2.0 * PI => {}
        other => {
            return Err(Error::Hypothesis(format!(
                "linear bound needs a Jordan-arc domain containing a sector wider than π; \
                 not certified for {}",
                other.map_or_else(|| m.label().to_string(), |f| f.to_string())
            )))
        }
    }
    let maxima = circle_maxima(m, radii)?;
    let m_values: Vec<f64> = maxima.iter().map(|c| c.m).collect();
    linear_upper_bound_from_profile(m.label(), radii, &m_values)
}

/// Setup for the comparison bound `u(x, y) <= g(x / (1 - κ(x)))` on the
/// reflected complement of the sector `|arg z| <= α`, with
/// `f(x) = tan(π - α) x`, `g(x) = C x (1 - e^{-x}/2)` and `κ = f / (2g)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TheoremABound {
    pub alpha: f64,
    pub c: f64,
    pub f_slope: f64,
    /// Abscissa beyond which `0 < κ < 1` and `κ` is decreasing (sampled).
    pub x1: f64,
}

const KAPPA_SCAN_START: f64 = 1e-2;
const KAPPA_SCAN_END: f64 = 30.0;
const KAPPA_SCAN_POINTS: usize = 400;
const KAPPA_CHECK_POINTS: usize = 256;

impl TheoremABound {
    pub fn new(alpha: f64, c: f64) -> Result<Self> {
        if !(alpha > FRAC_PI_2 && alpha < PI) {
            return Err(Error::Parameter(format!("α must lie in (π/2, π), got {alpha}")));
        }
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::Parameter(format!("C must be positive, got {c}")));
        }
        let mut setup = Self {
            alpha,
            c,
            f_slope: (PI - alpha).tan(),
            x1: f64::NAN,
        };
        setup.x1 = setup.find_x1()?;
        Ok(setup)
    }

    pub fn f(&self, x: f64) -> f64 {
        self.f_slope * x
    }

    pub fn g(&self, x: f64) -> f64 {
        self.c * x * (1.0 - (-x).exp() / 2.0)
    }

    /// `f(x) / (2 g(x))` with the common factor `x` cancelled, so sampled
    /// monotonicity is not spoiled by rounding once `e^{-x}` underflows.
    pub fn kappa(&self, x: f64) -> f64 {
        self.f_slope / (2.0 * self.c * (1.0 - (-x).exp() / 2.0))
    }

    fn scan(&self, from: f64, to: f64, points: usize) -> Vec<(f64, f64)> {
        (0..points)
            .map(|k| {
                let x = from * (to / from).powf(k as f64 / (points - 1) as f64);
                (x, self.kappa(x))
            })
            .collect()
    }

    // First scan point after which κ stays in (0, 1) and never increases,
    // doubled for margin.
    fn find_x1(&self) -> Result<f64> {
        let scan = self.scan(KAPPA_SCAN_START, KAPPA_SCAN_END, KAPPA_SCAN_POINTS);
        let mut start = None;
        for k in (0..scan.len()).rev() {
            let (_, kappa) = scan[k];
            let ok_here = kappa > 0.0 && kappa < 1.0;
            let ok_next = k + 1 == scan.len() || scan[k + 1].1 <= kappa;
            if ok_here && ok_next {
                start = Some(scan[k].0);
            } else {
                break;
            }
        }
        start.map(|x| 2.0 * x).ok_or_else(|| {
            Error::Hypothesis(format!(
                "0 < κ(x) < 1 with κ decreasing fails for every sampled x (α = {}, C = {})",
                self.alpha, self.c
            ))
        })
    }

    /// Checks `0 < κ < 1` and that `κ` does not increase on `[x1, x]`.
    pub fn check_hypotheses(&self, x: f64) -> Result<()> {
        if !(x > self.x1) {
            return Err(Error::Hypothesis(format!("x = {x} is not beyond x1 = {}", self.x1)));
        }
        let scan = self.scan(self.x1, x, KAPPA_CHECK_POINTS);
        if let Some(&(xb, kb)) = scan.iter().find(|(_, k)| !(*k > 0.0 && *k < 1.0)) {
            return Err(Error::Hypothesis(format!("κ({xb}) = {kb} is outside (0, 1)")));
        }
        if let Some(w) = scan.windows(2).find(|w| w[1].1 > w[0].1) {
            return Err(Error::Hypothesis(format!(
                "κ increases between x = {} and x = {}",
                w[0].0, w[1].0
            )));
        }
        Ok(())
    }
}

/// `g(x / (1 - κ(x)))`.
pub fn theorem_a_bound(setup: &TheoremABound, x: f64) -> Result<f64> {
    setup.check_hypotheses(x)?;
    Ok(setup.g(x / (1.0 - setup.kappa(x))))
}

/// True when the fitted order clears the floor `π/β` up to the fit tolerance.
pub fn verify_order_lower_bound(report: &GrowthReport, beta: f64) -> bool {
    order_floor_holds(report.fit.slope, beta)
}

pub const ORDER_FLOOR_SLACK: f64 = 0.03;

pub fn order_floor_holds(slope: f64, beta: f64) -> bool {
    slope >= PI / beta - ORDER_FLOOR_SLACK
}
