//! Numerical laboratory for explicit minimal graphs over unbounded plane domains.
//!
//! Every surface handled here is a graph `(x, y, u(x, y))` given in isothermal
//! coordinates over the right half-plane `H = {Re ζ > 0}`. The planar part is a
//! harmonic map `f = h + conj(g)` whose analytic parts are coupled by
//! `g' = -1/h'`, and the height pulled back to `H` is `U(ζ) = 2 Re ζ`.
//!
//! The crate is organised bottom-up:
//!
//! - [`numerics`]: principal powers, adaptive path quadrature, planar Newton
//!   inversion, bracketed root finding and log-log fitting.
//! - [`weierstrass`]: the harmonic graph map, its height, Jacobian and a
//!   round-trip check against the Weierstrass integral form.
//! - [`examples`]: the three explicit families (sector, critical, half-log).
//! - [`analysis`]: boundary traces, `M(r)`, growth order, asymptotic angle and
//!   univalence evidence.
//! - [`verify`]: minimal-surface residuals and the growth bounds.

// `!(x > y)` rejects NaN as well; Kronrod nodes keep their published digits.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision, clippy::needless_range_loop)]

pub mod analysis;
pub mod error;
pub mod examples;
pub mod numerics;
pub mod verify;
pub mod weierstrass;

pub use error::{Error, Result};
pub use examples::{
    make_critical_example, make_halflog_example, make_sector_example, ExampleFamily,
};
pub use weierstrass::HarmonicGraphMap;

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;
