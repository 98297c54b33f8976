use crate::{Error, Result, C64};

use super::ensure_finite;

/// Principal logarithm, imaginary part in `(-π, π)`.
///
/// Rejects zero and the closed negative real axis, where the principal branch
/// is either undefined or discontinuous.
pub fn principal_log(w: C64) -> Result<C64> {
    ensure_finite(w, "argument")?;
    if w.im == 0.0 && w.re <= 0.0 {
        return Err(Error::Domain(format!(
            "principal log undefined on the closed negative real axis: {w}"
        )));
    }
    if w.im == 0.0 {
        return Ok(C64::new(w.re.ln(), 0.0));
    }
    Ok(w.ln())
}

/// `w^a = exp(a Log w)` on the principal branch.
///
/// `0^a` is `0` for `a > 0`; positive reals are handled with the real `powf`
/// so the result stays exactly real there.
pub fn principal_power(w: C64, a: f64) -> Result<C64> {
    ensure_finite(w, "base")?;
    if !a.is_finite() {
        return Err(Error::Domain(format!("exponent is not finite: {a}")));
    }
    if w.re == 0.0 && w.im == 0.0 {
        return if a > 0.0 {
            Ok(C64::new(0.0, 0.0))
        } else {
            Err(Error::Domain(format!("0^{a} is undefined")))
        };
    }
    if w.im == 0.0 {
        if w.re < 0.0 {
            return Err(Error::Domain(format!(
                "principal power undefined on the negative real axis: {w}"
            )));
        }
        return Ok(C64::new(w.re.powf(a), 0.0));
    }
    Ok((principal_log(w)? * a).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn unity_to_any_power() {
        assert_eq!(principal_power(C64::new(1.0, 0.0), 1.5).unwrap(), C64::new(1.0, 0.0));
    }

    #[test]
    fn square_root_of_i() {
        let r = principal_power(C64::new(0.0, 1.0), 0.5).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(r.re, s, epsilon = 1e-15);
        assert_abs_diff_eq!(r.im, s, epsilon = 1e-15);
    }

    #[test]
    fn real_axis_matches_root_products() {
        // 2^1.75 = 2 * sqrt(2) * sqrt(sqrt(2))
        let oracle = 2.0 * 2f64.sqrt() * 2f64.sqrt().sqrt();
        let r = principal_power(C64::new(2.0, 0.0), 1.75).unwrap();
        assert_abs_diff_eq!(r.re, oracle, epsilon = 1e-14);
        assert_eq!(r.im, 0.0);
        assert_abs_diff_eq!(oracle, 3.36359, epsilon = 1e-5);
    }

    #[test]
    fn domain_errors() {
        assert!(principal_power(C64::new(0.0, 0.0), 0.0).is_err());
        assert!(principal_power(C64::new(0.0, 0.0), -0.5).is_err());
        assert!(principal_power(C64::new(-2.0, 0.0), 0.5).is_err());
        assert!(principal_power(C64::new(f64::NAN, 0.0), 0.5).is_err());
        assert_eq!(principal_power(C64::new(0.0, 0.0), 0.5).unwrap(), C64::new(0.0, 0.0));
    }

    #[test]
    fn imaginary_part_of_log_in_open_interval() {
        let l = principal_log(C64::new(-1.0, 1e-9)).unwrap();
        assert!(l.im < std::f64::consts::PI && l.im > 3.14);
        let l = principal_log(C64::new(-1.0, -1e-9)).unwrap();
        assert!(l.im > -std::f64::consts::PI && l.im < -3.14);
    }

    proptest! {
        #[test]
        fn exponents_add(re in 1e-3f64..50.0, im in -50.0f64..50.0, a in -3.0f64..3.0, b in -3.0f64..3.0) {
            let w = C64::new(re, im);
            let lhs = principal_power(w, a).unwrap() * principal_power(w, b).unwrap();
            let rhs = principal_power(w, a + b).unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm());
        }
    }
}
