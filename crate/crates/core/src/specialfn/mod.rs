//! Scalar special functions behind the closed-form expressions.
//!
//! | Function | Meaning |
//! |----------|---------|
//! | [`gauss2f1_ps_kernel`] | `₂F₁(1, −δ; 1−δ; −θ)` |
//! | [`gauss2f1_aux`] | `₂F₁(1, 1−δ; 2−δ; −θ)` (integral route) |
//! | [`incomplete_bell`] | partial Bell polynomial `B_{n,k}` |
//! | [`epstein_z`] | square-lattice Epstein zeta `4 ζ(x/2) β(x/2)` |
//! | [`sincd`] | `sin(πδ)/(πδ)` |
//! | [`gamma`], [`lgamma`] | Γ and ln Γ |
//!
//! Everything here is pure and generic over [`Scalar`].

mod bell;
mod gamma;
mod hyp2f1;
mod zeta;

pub use bell::{bell_table, incomplete_bell, MAX_BELL_ORDER};
pub use gamma::{gamma, lgamma};
pub use hyp2f1::{gauss2f1_aux, gauss2f1_ps_kernel, reflection_constant};
pub use zeta::{dirichlet_beta, epstein_z, hurwitz_zeta, riemann_zeta};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `sinc δ = sin(πδ)/(πδ)` on `(0, 1)`.
pub fn sincd<T: Scalar>(delta: T) -> Result<T> {
    if !(delta > T::zero() && delta < T::one()) {
        return Err(Error::domain("sincd", format!("delta = {delta} not in (0,1)")));
    }
    let x = T::PI() * delta;
    Ok(x.sin() / x)
}
