use serde::Serialize;

use crate::{Error, Result};

/// Least-squares line through `(ln r, ln v)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerLawFit {
    /// The growth exponent.
    pub slope: f64,
    /// Natural-log intercept, so `v ≈ e^intercept · r^slope`.
    pub intercept: f64,
    pub max_abs_residual: f64,
    pub window: (f64, f64),
    pub samples_used: usize,
}

// Geometric radius lists are generated with rounding; endpoints of the
// window are matched with this relative slack.
const WINDOW_SLACK: f64 = 1e-9;

/// Fits `ln v = slope · ln r + intercept` over the samples with `r` inside
/// `window` (inclusive).
pub fn fit_power_law(samples: &[(f64, f64)], window: (f64, f64)) -> Result<PowerLawFit> {
    let (r_min, r_max) = window;
    if !(r_min > 0.0 && r_min < r_max && r_max.is_finite()) {
        return Err(Error::Domain(format!(
            "fit window must satisfy 0 < r_min < r_max, got ({r_min}, {r_max})"
        )));
    }
    let lo = r_min * (1.0 - WINDOW_SLACK);
    let hi = r_max * (1.0 + WINDOW_SLACK);
    let mut points = Vec::with_capacity(samples.len());
    for &(r, v) in samples.iter().filter(|(r, _)| *r >= lo && *r <= hi) {
        if !(r > 0.0 && v > 0.0 && r.is_finite() && v.is_finite()) {
            return Err(Error::Domain(format!("sample ({r}, {v}) is not positive")));
        }
        points.push((r.ln(), v.ln()));
    }
    if points.len() < 3 {
        return Err(Error::InsufficientSamples {
            found: points.len(),
        });
    }

    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points
        .iter()
        .map(|p| (p.0 - mean_x) * (p.1 - mean_y))
        .sum();
    if sxx == 0.0 {
        return Err(Error::Domain("all radii in the window coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let max_abs_residual = points
        .iter()
        .map(|p| (p.1 - slope * p.0 - intercept).abs())
        .fold(0.0, f64::max);

    Ok(PowerLawFit {
        slope,
        intercept,
        max_abs_residual,
        window,
        samples_used: points.len(),
    })
}
