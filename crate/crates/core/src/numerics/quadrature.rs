//! Globally adaptive Gauss–Kronrod (7, 15) quadrature along straight segments
//! of the complex plane.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::{Error, Result, C64};

/// Upper bound on the number of subintervals before giving up.
pub const MAX_SEGMENTS: usize = 4000;

// Smallest subinterval of the unit parameter range that is still bisected.
// Small enough for the w^(-2/3) endpoint singularities met in practice.
const MIN_WIDTH: f64 = 1e-80;

// Kronrod abscissae on [-1, 1]; odd indices are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: C64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    lo: f64,
    hi: f64,
    value: C64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

/// Integrates `integrand` along the straight segment `from -> to`.
///
/// The segment is parametrised by `t ∈ [0, 1]` and the worst subinterval is
/// bisected until the summed error estimate drops below `tol` (absolute).
/// Endpoints are never evaluated, so integrable endpoint singularities are
/// allowed.
pub fn path_integral<F>(integrand: F, from: C64, to: C64, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(C64) -> C64,
{
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    super::ensure_finite(from, "segment start")?;
    super::ensure_finite(to, "segment end")?;
    if from == to {
        return Ok(QuadratureResult {
            value: C64::new(0.0, 0.0),
            error_estimate: 0.0,
            evaluations: 1,
        });
    }

    let delta = to - from;
    let mut evaluations = 0usize;
    let mut rule = |lo: f64, hi: f64| -> Result<Piece> {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let eval = |x: f64| -> Result<C64> {
            let v = integrand(from + delta * (mid + half * x));
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::Domain(format!(
                    "integrand not finite at {}",
                    from + delta * (mid + half * x)
                )));
            }
            Ok(v)
        };
        let centre = eval(0.0)?;
        let mut kronrod = centre * WGK[7];
        let mut gauss = centre * WG[3];
        for j in 0..7 {
            let pair = eval(XGK[j])? + eval(-XGK[j])?;
            kronrod += pair * WGK[j];
            if j % 2 == 1 {
                gauss += pair * WG[j / 2];
            }
        }
        evaluations += 15;
        let scale = delta * half;
        Ok(Piece {
            lo,
            hi,
            value: kronrod * scale,
            error: ((kronrod - gauss) * scale).norm(),
        })
    };

    let first = rule(0.0, 1.0)?;
    let mut total_error = first.error;
    let mut heap = BinaryHeap::from(vec![first]);

    while total_error > tol {
        if heap.len() >= MAX_SEGMENTS {
            return Err(convergence_failure(&heap, evaluations));
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if worst.hi - worst.lo < MIN_WIDTH {
            heap.push(worst);
            return Err(convergence_failure(&heap, evaluations));
        }
        let left = rule(worst.lo, mid)?;
        let right = rule(mid, worst.hi)?;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // Running sums drift; refresh them once the estimate looks converged.
        if total_error <= tol {
            total_error = heap.iter().map(|p| p.error).sum();
        }
    }

    let (value, error_estimate) = ordered_sum(&heap);
    Ok(QuadratureResult {
        value,
        error_estimate,
        evaluations,
    })
}

fn ordered_sum(heap: &BinaryHeap<Piece>) -> (C64, f64) {
    let mut pieces: Vec<&Piece> = heap.iter().collect();
    pieces.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    pieces
        .iter()
        .fold((C64::new(0.0, 0.0), 0.0), |(v, e), p| (v + p.value, e + p.error))
}

fn convergence_failure(heap: &BinaryHeap<Piece>, evaluations: usize) -> Error {
    let (value, error) = ordered_sum(heap);
    Error::QuadratureConvergence {
        value,
        error,
        evaluations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const TOL: f64 = 1e-10;

    #[test]
    fn constant_integrand() {
        let r = path_integral(|_| C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 1.0), TOL)
            .unwrap();
        assert_abs_diff_eq!(r.value.re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.value.im, 1.0, epsilon = 1e-14);
        assert!(r.error_estimate <= TOL);
    }

    #[test]
    fn linear_integrand_on_imaginary_segment() {
        let r = path_integral(|w| w * 2.0, C64::new(0.0, 0.0), C64::new(0.0, 1.0), TOL).unwrap();
        assert_abs_diff_eq!(r.value.re, -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.value.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn square_root_cusp_at_endpoint() {
        // u = sqrt(w): 2 ∫_0^1 u/(1+u) du = 2(1 - ln 2)
        let oracle = 2.0 * (1.0 - 2f64.ln());
        let r = path_integral(
            |w| 1.0 / (1.0 + w.sqrt()),
            C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
            TOL,
        )
        .unwrap();
        assert!((r.value.re - oracle).abs() <= TOL);
        assert!(r.error_estimate <= TOL);
        assert_abs_diff_eq!(oracle, 0.613706, epsilon = 1e-6);
    }

    #[test]
    fn polynomial_antiderivative() {
        let from = C64::new(0.3, -1.2);
        let to = C64::new(2.5, 0.7);
        let anti = |w: C64| w.powi(6) / 6.0 - w.powi(3) + w * 4.0;
        let r = path_integral(|w| w.powi(5) - w * w * 3.0 + 4.0, from, to, TOL).unwrap();
        assert!((r.value - (anti(to) - anti(from))).norm() <= TOL);
    }

    #[test]
    fn non_integrable_singularity_fails_to_converge() {
        let e = path_integral(|w| 1.0 / w, C64::new(0.0, 0.0), C64::new(1.0, 0.0), TOL)
            .unwrap_err();
        assert!(matches!(e, Error::QuadratureConvergence { .. }), "{e:?}");
    }

    #[test]
    fn empty_segment_and_bad_tolerance() {
        let z = C64::new(0.5, 0.5);
        assert_eq!(path_integral(|w| w, z, z, TOL).unwrap().value, C64::new(0.0, 0.0));
        assert!(path_integral(|w| w, z, z * 2.0, 0.0).is_err());
    }

    #[test]
    fn deterministic() {
        let f = |w: C64| (w * 3.0).sin() / (1.0 + w * w);
        let a = path_integral(f, C64::new(0.0, 0.0), C64::new(5.0, 2.0), 1e-12).unwrap();
        let b = path_integral(f, C64::new(0.0, 0.0), C64::new(5.0, 2.0), 1e-12).unwrap();
        assert_eq!(a, b);
    }
}
