use thiserror::Error;

use crate::C64;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("singularity at {0}")]
    Singularity(C64),

    #[error(
        "quadrature did not converge after {evaluations} evaluations: \
         best estimate {value}, achieved error {error:e}"
    )]
    QuadratureConvergence {
        value: C64,
        error: f64,
        evaluations: usize,
    },

    #[error("Newton iteration diverged; last iterate {last} with residual {residual:e}")]
    NewtonDivergence { last: C64, residual: f64 },

    #[error("no sign change on [{lo}, {hi}]")]
    Bracketing { lo: f64, hi: f64 },

    #[error("insufficient samples in fit window: found {found}, need at least 3")]
    InsufficientSamples { found: usize },

    #[error("boundary image not monotone between t = {t0} and t = {t1}")]
    Univalence { t0: f64, t1: f64 },

    #[error("no ray crosses the circle |z| = {r}")]
    NoCrossing { r: f64 },

    #[error("asymptotic angle undefined at r = {r}: {reason}")]
    AngleUndefined { r: f64, reason: String },

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("residual patch rejected: {invalid} of {total} nodes failed to invert")]
    Patch { invalid: usize, total: usize },
}
