//! Harmonic graph maps `f = h + conj(g)` with `g' = -1/h'`, their height
//! `U(ζ) = 2 Re ζ`, and the Weierstrass data `(ω, G)` that generate them.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::examples::ExampleFamily;
use crate::numerics::{self, path_integral, PlanarMap};
use crate::{Error, Result, C64};

/// Value and first derivative of an analytic function at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalyticJet {
    pub value: C64,
    pub derivative: C64,
}

/// Analytic data behind a harmonic graph map.
///
/// Implementors provide `h`, `h'` and `g` on the closed right half-plane
/// minus [`ShearPair::singular_points`]; `g' = -1/h'` is implied.
pub trait ShearPair: Send + Sync + fmt::Debug {
    fn h(&self, zeta: C64) -> Result<C64>;
    fn h_prime(&self, zeta: C64) -> Result<C64>;
    fn g(&self, zeta: C64) -> Result<C64>;

    /// `h(ζ) + conj(g(ζ))`. Overridden where the two parts cancel
    /// analytically and the difference is better computed in closed form.
    fn f(&self, zeta: C64) -> Result<C64> {
        Ok(self.h(zeta)? + self.g(zeta)?.conj())
    }

    /// Points of the closed half-plane where `h'` blows up or vanishes.
    fn singular_points(&self) -> &[C64] {
        &[]
    }
}

/// A planar harmonic map of the right half-plane together with its graph
/// height `U = 2 Re ζ`. Cheap to clone; clones share any quadrature cache.
#[derive(Clone)]
pub struct HarmonicGraphMap {
    data: Arc<dyn ShearPair>,
    label: String,
    family: Option<ExampleFamily>,
}

impl fmt::Debug for HarmonicGraphMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HarmonicGraphMap")
            .field("label", &self.label)
            .field("family", &self.family)
            .field("data", &self.data)
            .finish()
    }
}

impl HarmonicGraphMap {
    pub fn new(data: impl ShearPair + 'static, label: impl Into<String>) -> Self {
        Self {
            data: Arc::new(data),
            label: label.into(),
            family: None,
        }
    }

    /// Map from closed-form `h`, `h'` and `g`. Used for ad-hoc and control
    /// maps; nothing checks that `g' = -1/h'`.
    pub fn from_closures<H, DH, G>(label: impl Into<String>, h: H, h_prime: DH, g: G) -> Self
    where
        H: Fn(C64) -> C64 + Send + Sync + 'static,
        DH: Fn(C64) -> C64 + Send + Sync + 'static,
        G: Fn(C64) -> C64 + Send + Sync + 'static,
    {
        Self::new(
            ClosurePair {
                h: Box::new(h),
                h_prime: Box::new(h_prime),
                g: Box::new(g),
            },
            label,
        )
    }

    pub(crate) fn with_family(mut self, family: ExampleFamily) -> Self {
        self.family = Some(family);
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn family(&self) -> Option<ExampleFamily> {
        self.family
    }

    /// Quadrature base point; every integral of `g'` starts here.
    pub fn base_point(&self) -> C64 {
        C64::new(0.0, 0.0)
    }

    pub fn singular_points(&self) -> &[C64] {
        self.data.singular_points()
    }

    fn check_domain(&self, zeta: C64) -> Result<()> {
        numerics::ensure_finite(zeta, "ζ")?;
        if zeta.re < 0.0 {
            return Err(Error::Domain(format!(
                "ζ = {zeta} is outside the closed right half-plane"
            )));
        }
        Ok(())
    }

    fn check_regular(&self, zeta: C64) -> Result<()> {
        self.check_domain(zeta)?;
        if self.singular_points().contains(&zeta) {
            return Err(Error::Singularity(zeta));
        }
        Ok(())
    }

    /// `f(ζ) = h(ζ) + conj(g(ζ))`. Defined at declared singular points as the
    /// boundary limit.
    pub fn eval_map(&self, zeta: C64) -> Result<C64> {
        self.check_domain(zeta)?;
        let z = self.data.f(zeta)?;
        numerics::ensure_finite(z, "f(ζ)")?;
        Ok(z)
    }

    /// Height of the graph above `f(ζ)`.
    pub fn eval_height(&self, zeta: C64) -> Result<f64> {
        self.check_domain(zeta)?;
        Ok(2.0 * zeta.re)
    }

    pub fn h_jet(&self, zeta: C64) -> Result<AnalyticJet> {
        self.check_regular(zeta)?;
        Ok(AnalyticJet {
            value: self.data.h(zeta)?,
            derivative: self.h_prime(zeta)?,
        })
    }

    pub fn g(&self, zeta: C64) -> Result<C64> {
        self.check_domain(zeta)?;
        self.data.g(zeta)
    }

    fn h_prime(&self, zeta: C64) -> Result<C64> {
        self.check_regular(zeta)?;
        let d = self
            .data
            .h_prime(zeta)
            .map_err(|_| Error::Singularity(zeta))?;
        if d == C64::new(0.0, 0.0) || !(d.re.is_finite() && d.im.is_finite()) {
            return Err(Error::Singularity(zeta));
        }
        Ok(d)
    }

    /// `g'(ζ) = -1/h'(ζ)`.
    pub fn g_prime(&self, zeta: C64) -> Result<C64> {
        Ok(-self.h_prime(zeta)?.inv())
    }

    /// Jacobian determinant `|h'|² - |g'|²` of `f` as a planar map.
    pub fn jacobian(&self, zeta: C64) -> Result<f64> {
        let d = self.h_prime(zeta)?;
        let v = d.norm_sqr();
        Ok(v - 1.0 / v)
    }

    pub fn weierstrass_data(&self) -> WeierstrassData<'_> {
        WeierstrassData { map: self }
    }

    /// Integrates the three Weierstrass coordinate forms from the base point
    /// to `zeta_end` and compares them with the closed-form map and height.
    pub fn verify_representation(
        &self,
        zeta_end: C64,
        tol: f64,
    ) -> Result<RepresentationResiduals> {
        self.check_domain(zeta_end)?;
        let base = self.base_point();
        let data = self.weierstrass_data();
        let quad_tol = 0.5 * tol;
        let nan = C64::new(f64::NAN, f64::NAN);

        let x_form = path_integral(
            |w| data.x_integrand(w).unwrap_or(nan),
            base,
            zeta_end,
            quad_tol,
        )?;
        let y_form = path_integral(
            |w| data.y_integrand(w).unwrap_or(nan),
            base,
            zeta_end,
            quad_tol,
        )?;
        let u_form = path_integral(
            |w| data.u_integrand(w).unwrap_or(nan),
            base,
            zeta_end,
            quad_tol,
        )?;

        let f0 = self.eval_map(base)?;
        let f1 = self.eval_map(zeta_end)?;
        let x = f0.re + x_form.value.re;
        let y = f0.im + y_form.value.re;
        let u = self.eval_height(base)? + u_form.value.re;

        Ok(RepresentationResiduals {
            zeta_end,
            x_residual: (x - f1.re).abs(),
            y_residual: (y - f1.im).abs(),
            u_residual: (u - self.eval_height(zeta_end)?).abs(),
            quadrature_error: x_form.error_estimate
                + y_form.error_estimate
                + u_form.error_estimate,
        })
    }
}

impl PlanarMap for HarmonicGraphMap {
    fn value(&self, zeta: C64) -> Result<C64> {
        self.eval_map(zeta)
    }

    fn wirtinger(&self, zeta: C64) -> Result<(C64, C64)> {
        let d = self.h_prime(zeta)?;
        Ok((d, (-d.inv()).conj()))
    }
}

/// Weierstrass data `ω = 2g'` and `G = -h'` of a harmonic graph map.
///
/// With `g'h' = -1` this choice of sign makes the height form integrate to
/// `+2 Re ζ`; `G = +h'` describes the reflected surface with height `-2 Re ζ`.
#[derive(Debug, Clone, Copy)]
pub struct WeierstrassData<'a> {
    map: &'a HarmonicGraphMap,
}

impl WeierstrassData<'_> {
    pub fn omega(&self, zeta: C64) -> Result<C64> {
        Ok(self.map.g_prime(zeta)? * 2.0)
    }

    pub fn gauss(&self, zeta: C64) -> Result<C64> {
        Ok(-self.map.h_prime(zeta)?)
    }

    /// `½ ω (1 - G²)`; its integral has real part `x`.
    pub fn x_integrand(&self, zeta: C64) -> Result<C64> {
        let g = self.gauss(zeta)?;
        Ok(self.omega(zeta)? * (1.0 - g * g) * 0.5)
    }

    /// `(i/2) ω (1 + G²)`; its integral has real part `y`.
    pub fn y_integrand(&self, zeta: C64) -> Result<C64> {
        let g = self.gauss(zeta)?;
        Ok(self.omega(zeta)? * (1.0 + g * g) * C64::new(0.0, 0.5))
    }

    /// `ω G`; its integral has real part `U`.
    pub fn u_integrand(&self, zeta: C64) -> Result<C64> {
        Ok(self.omega(zeta)? * self.gauss(zeta)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RepresentationResiduals {
    pub zeta_end: C64,
    pub x_residual: f64,
    pub y_residual: f64,
    pub u_residual: f64,
    pub quadrature_error: f64,
}

impl RepresentationResiduals {
    pub fn max(&self) -> f64 {
        self.x_residual.max(self.y_residual).max(self.u_residual)
    }
}

struct ClosurePair {
    h: Box<dyn Fn(C64) -> C64 + Send + Sync>,
    h_prime: Box<dyn Fn(C64) -> C64 + Send + Sync>,
    g: Box<dyn Fn(C64) -> C64 + Send + Sync>,
}

impl fmt::Debug for ClosurePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ClosurePair")
    }
}

impl ShearPair for ClosurePair {
    fn h(&self, zeta: C64) -> Result<C64> {
        Ok((self.h)(zeta))
    }
    fn h_prime(&self, zeta: C64) -> Result<C64> {
        Ok((self.h_prime)(zeta))
    }
    fn g(&self, zeta: C64) -> Result<C64> {
        Ok((self.g)(zeta))
    }
}

/// `∫_0^ζ φ(w) dw` along the straight ray, memoised per ray.
///
/// The ray through `ζ` is cut at the fixed radii `0, 2^k (k >= MIN_KNOT)`;
/// integrals over whole pieces are cached and only the last partial piece is
/// recomputed. Each cached piece depends only on the ray direction and its
/// index, so results do not depend on evaluation order.
pub struct RayIntegral<F> {
    integrand: F,
    tol: f64,
    cache: RwLock<HashMap<(u64, u64, i32), C64>>,
}

const MIN_KNOT: i32 = -8;
const CACHE_LIMIT: usize = 1 << 20;
// Roundoff floor for pieces whose integral is large.
const RELATIVE_FLOOR: f64 = 1e-14;

impl<F> fmt::Debug for RayIntegral<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cached = self.cache.read().map(|c| c.len()).unwrap_or(0);
        f.debug_struct("RayIntegral")
            .field("tol", &self.tol)
            .field("cached_pieces", &cached)
            .finish()
    }
}

impl<F> RayIntegral<F>
where
    F: Fn(C64) -> C64 + Send + Sync,
{
    pub fn new(integrand: F, tol: f64) -> Self {
        Self {
            integrand,
            tol,
            cache: RwLock::new(HashMap::new()),
        }
    }

    fn knot(k: i32) -> f64 {
        if k < MIN_KNOT {
            0.0
        } else {
            2f64.powi(k)
        }
    }

    fn piece(&self, from: C64, to: C64) -> Result<C64> {
        let len = (to - from).norm();
        let scale = len * (self.integrand)(to).norm();
        let tol = self.tol.max(RELATIVE_FLOOR * scale);
        Ok(path_integral(&self.integrand, from, to, tol)?.value)
    }

    pub fn integrate(&self, zeta: C64) -> Result<C64> {
        let s = zeta.norm();
        if s == 0.0 {
            return Ok(C64::new(0.0, 0.0));
        }
        let dir = zeta / s;
        let key = (dir.re.to_bits(), dir.im.to_bits());

        // Pieces [knot(k-1), knot(k)] for k = MIN_KNOT.. while knot(k) <= s.
        let mut total = C64::new(0.0, 0.0);
        let mut k = MIN_KNOT;
        while Self::knot(k) <= s {
            let cached = self
                .cache
                .read()
                .ok()
                .and_then(|c| c.get(&(key.0, key.1, k)).copied());
            let value = match cached {
                Some(v) => v,
                None => {
                    let v = self.piece(dir * Self::knot(k - 1), dir * Self::knot(k))?;
                    if let Ok(mut c) = self.cache.write() {
                        if c.len() >= CACHE_LIMIT {
                            c.clear();
                        }
                        c.insert((key.0, key.1, k), v);
                    }
                    v
                }
            };
            total += value;
            k += 1;
        }
        let last = dir * Self::knot(k - 1);
        Ok(total + self.piece(last, zeta)?)
    }
}
