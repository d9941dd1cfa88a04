//! The two Gauss hypergeometric functions needed by the Poisson formulas.

use crate::error::{Error, Result};
use crate::quad;
use crate::scalar::Scalar;

use super::{gamma, sincd};

const MAX_TERMS: usize = 4000;

/// Sums a power series whose term ratio is `ratio(n) = t_{n+1} / t_n`,
/// starting from `t_0 = 1`.
fn series<T: Scalar>(ratio: impl Fn(T) -> T) -> T {
    let mut term = T::one();
    let mut sum = T::one();
    let eps = T::epsilon() * T::c(0.25);
    for n in 0..MAX_TERMS {
        term = term * ratio(T::from_int(n));
        sum = sum + term;
        if term.abs() <= eps * sum.abs() {
            break;
        }
    }
    sum
}

fn check_delta<T: Scalar>(op: &'static str, delta: T) -> Result<()> {
    if !(delta > T::zero() && delta < T::one()) {
        return Err(Error::domain(op, format!("delta = {} not in (0,1)", delta)));
    }
    Ok(())
}

/// `₂F₁(1, −δ; 1−δ; −θ)`, the reciprocal of the Poisson success probability
/// under Rayleigh fading.
///
/// Three regimes keep every series argument at most 1/2: the direct series for
/// `θ < 1/2`, the Pfaff transform to `θ/(1+θ)` on `[1/2, 1)`, and the
/// `1 − z` connection formula (argument `1/(1+θ)`) for `θ ≥ 1`, where the
/// leading term `θ^δ / sinc δ` carries the tail.
pub fn gauss2f1_ps_kernel<T: Scalar>(delta: T, theta: T) -> Result<T> {
    check_delta("gauss2f1_ps_kernel", delta)?;
    if !(theta >= T::zero()) || !theta.is_finite() {
        return Err(Error::domain("gauss2f1_ps_kernel", format!("theta = {} must be finite and >= 0", theta)));
    }
    let one = T::one();
    let half = T::c(0.5);
    if theta == T::zero() {
        return Ok(one);
    }
    if theta < half {
        // 1 + δ Σ_{n≥1} (−1)^{n+1} θⁿ / (n − δ)
        let mut pow = one;
        let mut sum = T::zero();
        let eps = T::epsilon() * T::c(0.25);
        for n in 1..MAX_TERMS {
            pow = -pow * theta;
            let term = -pow / (T::from_int(n) - delta);
            sum = sum + term;
            if term.abs() <= eps * sum.abs() {
                break;
            }
        }
        return Ok(one + delta * sum);
    }
    if theta < one {
        let w = theta / (one + theta);
        // ₂F₁(−δ, −δ; 1−δ; w)
        let f = series(|n: T| (n - delta) * (n - delta) / ((n + one - delta) * (n + one)) * w);
        return Ok((one + theta).powf(delta) * f);
    }
    let z = one / (one + theta);
    // ₂F₁(1, 1; 2+δ; z)
    let f = series(|n: T| (n + one) / (n + T::c(2.0) + delta) * z);
    Ok(theta.powf(delta) / sincd_unchecked(delta) + delta / ((one + delta) * (one + theta)) * f)
}

fn sincd_unchecked<T: Scalar>(delta: T) -> T {
    sincd(delta).unwrap_or_else(|_| T::nan())
}

/// `₂F₁(1, 1−δ; 2−δ; −θ)` evaluated through its Euler integral
/// `(1−δ) ∫₀¹ t^{−δ} / (1 + θ t) dt`, substituted to `∫₀¹ du / (1 + θ u^{1/(1−δ)})`.
///
/// Deliberately independent of [`gauss2f1_ps_kernel`] so that the contiguous
/// relation between the two can be used as a check.
pub fn gauss2f1_aux<T: Scalar>(delta: T, theta: T) -> Result<T> {
    check_delta("gauss2f1_aux", delta)?;
    if !(theta >= T::zero()) || !theta.is_finite() {
        return Err(Error::domain("gauss2f1_aux", format!("theta = {} must be finite and >= 0", theta)));
    }
    let p = T::one() / (T::one() - delta);
    quad::integrate(|u: T| T::one() / (T::one() + theta * u.powf(p)), T::zero(), T::one(), T::c(1e-13))
}

/// Leading behaviour `Γ(1−δ)Γ(1+δ)`; exposed for the tail checks.
pub fn reflection_constant<T: Scalar>(delta: T) -> T {
    gamma(T::one() - delta) * gamma(T::one() + delta)
}
