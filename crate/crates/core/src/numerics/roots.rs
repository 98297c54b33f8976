use crate::{Error, Result};

const MAX_ITER: usize = 400;

/// Root of a continuous real function on a sign-changing bracket.
///
/// Secant steps are taken when they land well inside the bracket and shrink
/// it fast enough; otherwise the bracket is bisected. Returns once the bracket
/// is no wider than `tol` (or an exact zero is hit).
pub fn bracket_root<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if !(lo.is_finite() && hi.is_finite() && tol > 0.0) {
        return Err(Error::Domain(format!(
            "bad bracket [{lo}, {hi}] or tolerance {tol}"
        )));
    }
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut fa = f(a);
    let mut fb = f(b);
    if fa.is_nan() || fb.is_nan() {
        return Err(Error::Domain("function is NaN at a bracket end".into()));
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Bracketing { lo, hi });
    }

    let mut last_width = b - a;
    for _ in 0..MAX_ITER {
        let width = b - a;
        if width <= tol {
            break;
        }
        let mut x = b - fb * (b - a) / (fb - fa);
        let margin = 0.01 * width;
        if !(x > a + margin && x < b - margin) || width > 0.5 * last_width {
            x = 0.5 * (a + b);
        }
        if !(x > a && x < b) {
            break;
        }
        last_width = width;
        let fx = f(x);
        if fx.is_nan() {
            return Err(Error::Domain(format!("function is NaN at {x}")));
        }
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    Ok(if fa.abs() <= fb.abs() { a } else { b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn linear_root() {
        let r = bracket_root(|t| t - 2.0, 0.0, 5.0, 1e-12).unwrap();
        assert_abs_diff_eq!(r, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn square_root_of_two() {
        let r = bracket_root(|t| t * t - 2.0, 0.0, 2.0, 1e-12).unwrap();
        assert_abs_diff_eq!(r, std::f64::consts::SQRT_2, epsilon = 1e-12);
    }

    #[test]
    fn no_sign_change() {
        let e = bracket_root(|t| t + 1.0, 0.0, 1.0, 1e-12).unwrap_err();
        assert_eq!(e, Error::Bracketing { lo: 0.0, hi: 1.0 });
    }

    #[test]
    fn flat_tail_still_terminates() {
        // Very asymmetric function: secant alone would crawl.
        let r = bracket_root(|t: f64| t.powi(9) - 1e-9, 0.0, 10.0, 1e-13).unwrap();
        assert_abs_diff_eq!(r, 0.1, epsilon = 1e-12);
    }
}
