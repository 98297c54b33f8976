use crate::{Error, Result, C64};

/// A smooth map of the closed right half-plane into the plane, seen as a map
/// of two real variables.
pub trait PlanarMap {
    fn value(&self, zeta: C64) -> Result<C64>;

    /// Wirtinger derivatives `(∂f/∂ζ, ∂f/∂ζ̄)`. For `f = h + conj(g)` these
    /// are `(h', conj(g'))`.
    fn wirtinger(&self, zeta: C64) -> Result<(C64, C64)>;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonOptions {
    pub tol: f64,
    pub max_iter: usize,
    /// Extra steps taken after `tol` is met, kept only while they reduce the
    /// residual.
    pub polish_steps: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        Self {
            tol: super::NEWTON_TOL,
            max_iter: 100,
            polish_steps: 3,
        }
    }
}

const MAX_HALVINGS: usize = 40;

/// Solves `f(ζ) = target` for `ζ` with `Re ζ >= 0`, starting at `guess`.
pub fn newton_invert<M: PlanarMap + ?Sized>(
    map: &M,
    target: C64,
    guess: C64,
    tol: f64,
) -> Result<C64> {
    newton_invert_with(
        map,
        target,
        guess,
        NewtonOptions {
            tol,
            ..NewtonOptions::default()
        },
    )
}

pub fn newton_invert_with<M: PlanarMap + ?Sized>(
    map: &M,
    target: C64,
    guess: C64,
    opts: NewtonOptions,
) -> Result<C64> {
    super::ensure_finite(target, "target")?;
    super::ensure_finite(guess, "guess")?;
    if !(opts.tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {}", opts.tol)));
    }
    if guess.re < 0.0 {
        return Err(Error::Domain(format!("guess {guess} is outside the half-plane")));
    }

    let residual = |z: C64| -> Option<f64> {
        map.value(z)
            .ok()
            .map(|w| (w - target).norm())
            .filter(|r| r.is_finite())
    };

    let mut zeta = guess;
    let mut res = residual(zeta).ok_or(Error::NewtonDivergence {
        last: zeta,
        residual: f64::INFINITY,
    })?;
    let mut polished = 0usize;

    for _ in 0..opts.max_iter {
        if res <= opts.tol && polished >= opts.polish_steps {
            return Ok(zeta);
        }
        let Some(step) = newton_step(map, zeta, target) else {
            break;
        };
        let mut lambda = 1.0;
        let mut accepted = None;
        for _ in 0..MAX_HALVINGS {
            let trial = zeta + step * lambda;
            if trial.re >= 0.0 {
                if let Some(r) = residual(trial) {
                    if r < res {
                        accepted = Some((trial, r));
                        break;
                    }
                }
            }
            lambda *= 0.5;
        }
        match accepted {
            Some((z, r)) => {
                zeta = z;
                res = r;
                if res <= opts.tol {
                    polished += 1;
                }
            }
            None => break,
        }
    }

    if res <= opts.tol {
        Ok(zeta)
    } else {
        Err(Error::NewtonDivergence {
            last: zeta,
            residual: res,
        })
    }
}

/// Full Newton step for the real 2×2 system, written with Wirtinger
/// derivatives: solves `a δ + b conj(δ) = -F`.
fn newton_step<M: PlanarMap + ?Sized>(map: &M, zeta: C64, target: C64) -> Option<C64> {
    let rhs = -(map.value(zeta).ok()? - target);
    let (a, b) = map.wirtinger(zeta).ok()?;
    let det = a.norm_sqr() - b.norm_sqr();
    if det == 0.0 || !det.is_finite() {
        return None;
    }
    let step = (a.conj() * rhs - b * rhs.conj()) / det;
    (step.re.is_finite() && step.im.is_finite()).then_some(step)
}
