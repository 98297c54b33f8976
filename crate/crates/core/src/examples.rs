//! The three explicit families of minimal graphs over unbounded domains.
//!
//! | family   | `h(ζ)`             | `g(ζ)`                               | order | angle |
//! |----------|--------------------|--------------------------------------|-------|-------|
//! | sector   | `(ζ+1)^γ`          | `-(ζ+1)^{2-γ} / (γ(2-γ))`            | `1/γ` | `γπ`  |
//! | critical | `ζ + ζ^b / b`      | `-ζ + ∫_0^ζ dw / (1 + w^{1-b})`      | `ρ`   | `π`   |
//! | half-log | `(ζ+1)² / 2`       | `-Log(ζ+1)`                          | `1/2` | `2π`  |
//!
//! with `1 < γ < 2` and `b = 1/ρ`, `ρ > 1`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::numerics::{principal_log, principal_power, QUADRATURE_TOL};
use crate::weierstrass::{HarmonicGraphMap, RayIntegral, ShearPair};
use crate::{Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ExampleFamily {
    Sector { gamma: f64 },
    Critical { rho: f64 },
    #[serde(rename = "halflog")]
    HalfLog,
}

impl ExampleFamily {
    pub fn sector(gamma: f64) -> Result<Self> {
        let f = Self::Sector { gamma };
        f.validate()?;
        Ok(f)
    }

    pub fn critical(rho: f64) -> Result<Self> {
        let f = Self::Critical { rho };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::Sector { gamma } if !(gamma > 1.0 && gamma < 2.0) => Err(Error::Parameter(
                format!("sector family needs 1 < γ < 2, got {gamma}"),
            )),
            Self::Critical { rho } if !(rho > 1.0 && rho.is_finite()) => Err(Error::Parameter(
                format!("critical family needs ρ > 1, got {rho}"),
            )),
            _ => Ok(()),
        }
    }

    /// Growth order the construction is known to have.
    pub fn claimed_order(&self) -> f64 {
        family_metadata(self).0
    }

    /// Asymptotic opening angle of the image domain.
    pub fn beta(&self) -> f64 {
        family_metadata(self).1
    }

    pub fn build(&self) -> Result<HarmonicGraphMap> {
        match *self {
            Self::Sector { gamma } => make_sector_example(gamma),
            Self::Critical { rho } => make_critical_example(rho),
            Self::HalfLog => Ok(make_halflog_example()),
        }
    }
}

impl fmt::Display for ExampleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Sector { gamma } => write!(f, "sector:{gamma}"),
            Self::Critical { rho } => write!(f, "critical:{rho}"),
            Self::HalfLog => f.write_str("halflog"),
        }
    }
}

impl FromStr for ExampleFamily {
    type Err = Error;

    /// Parses `sector:<γ>`, `critical:<ρ>` or `halflog`.
    fn from_str(s: &str) -> Result<Self> {
        let parse = |v: &str| {
            v.trim()
                .parse::<f64>()
                .map_err(|e| Error::Parameter(format!("bad family parameter {v:?}: {e}")))
        };
        match s.trim().split_once(':') {
            Some(("sector", v)) => Self::sector(parse(v)?),
            Some(("critical", v)) => Self::critical(parse(v)?),
            None if s.trim() == "halflog" => Ok(Self::HalfLog),
            _ => Err(Error::Parameter(format!(
                "unknown family {s:?}; expected sector:<γ>, critical:<ρ> or halflog"
            ))),
        }
    }
}

/// `(claimed order, asymptotic angle β)`.
pub fn family_metadata(family: &ExampleFamily) -> (f64, f64) {
    match *family {
        ExampleFamily::Sector { gamma } => (1.0 / gamma, gamma * PI),
        ExampleFamily::Critical { rho } => (rho, PI),
        ExampleFamily::HalfLog => (0.5, 2.0 * PI),
    }
}

#[derive(Debug, Clone, Copy)]
struct SectorPair {
    gamma: f64,
    // 1 / (γ(2-γ))
    coupling: f64,
}

impl ShearPair for SectorPair {
    fn h(&self, zeta: C64) -> Result<C64> {
        principal_power(zeta + 1.0, self.gamma)
    }

    fn h_prime(&self, zeta: C64) -> Result<C64> {
        Ok(principal_power(zeta + 1.0, self.gamma - 1.0)? * self.gamma)
    }

    fn g(&self, zeta: C64) -> Result<C64> {
        Ok(-principal_power(zeta + 1.0, 2.0 - self.gamma)? * self.coupling)
    }
}

pub fn make_sector_example(gamma: f64) -> Result<HarmonicGraphMap> {
    let family = ExampleFamily::sector(gamma)?;
    let pair = SectorPair {
        gamma,
        coupling: 1.0 / (gamma * (2.0 - gamma)),
    };
    Ok(HarmonicGraphMap::new(pair, family.to_string()).with_family(family))
}

#[derive(Debug, Clone, Copy)]
struct HalfLogPair;

impl ShearPair for HalfLogPair {
    fn h(&self, zeta: C64) -> Result<C64> {
        let w = zeta + 1.0;
        Ok(w * w * 0.5)
    }

    fn h_prime(&self, zeta: C64) -> Result<C64> {
        Ok(zeta + 1.0)
    }

    fn g(&self, zeta: C64) -> Result<C64> {
        Ok(-principal_log(zeta + 1.0)?)
    }
}

pub fn make_halflog_example() -> HarmonicGraphMap {
    HarmonicGraphMap::new(HalfLogPair, "halflog").with_family(ExampleFamily::HalfLog)
}

type CriticalIntegrand = Box<dyn Fn(C64) -> C64 + Send + Sync>;

#[derive(Debug)]
struct CriticalPair {
    b: f64,
    // ∫_0^ζ dw / (1 + w^{1-b}); bounded integrand, equal to 1 at w = 0.
    tail: RayIntegral<CriticalIntegrand>,
}

const ORIGIN: [C64; 1] = [C64::new(0.0, 0.0)];

impl CriticalPair {
    fn power(&self, zeta: C64, a: f64) -> Result<C64> {
        principal_power(zeta, a)
    }
}

impl ShearPair for CriticalPair {
    fn h(&self, zeta: C64) -> Result<C64> {
        Ok(zeta + self.power(zeta, self.b)? / self.b)
    }

    fn h_prime(&self, zeta: C64) -> Result<C64> {
        Ok(self.power(zeta, self.b - 1.0)? + 1.0)
    }

    fn g(&self, zeta: C64) -> Result<C64> {
        Ok(self.tail.integrate(zeta)? - zeta)
    }

    // The linear parts ζ and -conj(ζ) cancel in the real part; combine them
    // exactly before adding the power and integral terms.
    fn f(&self, zeta: C64) -> Result<C64> {
        let linear = C64::new(0.0, 2.0 * zeta.im);
        Ok(linear + self.power(zeta, self.b)? / self.b + self.tail.integrate(zeta)?.conj())
    }

    fn singular_points(&self) -> &[C64] {
        &ORIGIN
    }
}

pub fn make_critical_example(rho: f64) -> Result<HarmonicGraphMap> {
    let family = ExampleFamily::critical(rho)?;
    let b = 1.0 / rho;
    let exponent = 1.0 - b;
    let integrand: CriticalIntegrand = Box::new(move |w: C64| {
        principal_power(w, exponent)
            .map(|p| (p + 1.0).inv())
            .unwrap_or(C64::new(f64::NAN, f64::NAN))
    });
    let pair = CriticalPair {
        b,
        tail: RayIntegral::new(integrand, QUADRATURE_TOL),
    };
    Ok(HarmonicGraphMap::new(pair, family.to_string()).with_family(family))
}
