//! Complex-analytic numerics shared by the rest of the crate.
//!
//! All routines are pure functions of their inputs and deterministic.

mod fit;
mod newton;
mod power;
mod quadrature;
mod roots;

pub use fit::{fit_power_law, PowerLawFit};
pub use newton::{newton_invert, newton_invert_with, NewtonOptions, PlanarMap};
pub use power::{principal_log, principal_power};
pub use quadrature::{path_integral, QuadratureResult, MAX_SEGMENTS};
pub use roots::bracket_root;

/// Default absolute tolerance for segment quadrature.
pub const QUADRATURE_TOL: f64 = 1e-10;
/// Default image-distance tolerance for Newton inversion.
pub const NEWTON_TOL: f64 = 1e-10;
/// Default relative tolerance for bracketed root finding.
pub const ROOT_REL_TOL: f64 = 1e-12;

pub(crate) fn ensure_finite(z: crate::C64, what: &str) -> crate::Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(crate::Error::Domain(format!("{what} is not finite: {z}")))
    }
}
