//! Unit-mean Gamma (Nakagami-m) power fading.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Exp1, Gamma};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::specialfn::{gamma, lgamma};

/// Power fading law. `Rayleigh` is the same law as `Nakagami { m: 1 }`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FadingModel {
    #[default]
    Rayleigh,
    Nakagami {
        m: u32,
    },
}

impl FadingModel {
    /// Nakagami model, normalized so that `m = 1` becomes `Rayleigh`.
    pub fn nakagami(m: u32) -> Result<Self> {
        match m {
            0 => Err(Error::domain("FadingModel::nakagami", "m must be a positive integer")),
            1 => Ok(FadingModel::Rayleigh),
            m => Ok(FadingModel::Nakagami { m }),
        }
    }

    /// Shape parameter (diversity order) `m`.
    pub fn m(&self) -> u32 {
        match *self {
            FadingModel::Rayleigh => 1,
            FadingModel::Nakagami { m } => m,
        }
    }

    /// Draws one power gain.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.sampler().sample(rng)
    }

    /// Reusable sampler; cheaper than [`FadingModel::sample`] in loops.
    pub fn sampler(&self) -> FadingSampler {
        match self.m() {
            1 => FadingSampler::Exponential,
            m => {
                let shape = m as f64;
                FadingSampler::Gamma(Gamma::new(shape, 1.0 / shape).expect("positive shape"))
            }
        }
    }

    /// `P(h > x)`: `Q(m, m x)`, written as the Erlang tail sum.
    pub fn ccdf<T: Scalar>(&self, x: T) -> Result<T> {
        if !(x >= T::zero()) {
            return Err(Error::domain("fading ccdf", format!("x = {x} must be >= 0")));
        }
        let m = self.m() as usize;
        let mx = T::from_int(m) * x;
        let mut term = T::one();
        let mut sum = T::one();
        for k in 1..m {
            term = term * mx / T::from_int(k);
            sum = sum + term;
        }
        Ok((-mx).exp() * sum)
    }

    /// `P(h ≤ x)`, computed without cancellation for small `x`.
    pub fn cdf<T: Scalar>(&self, x: T) -> Result<T> {
        if !(x >= T::zero()) {
            return Err(Error::domain("fading cdf", format!("x = {x} must be >= 0")));
        }
        let m = self.m() as usize;
        let mx = T::from_int(m) * x;
        if mx > T::from_int(m) {
            return Ok(T::one() - self.ccdf(x)?);
        }
        // e^{−mx} Σ_{k≥m} (mx)^k / k!
        let mut term = (T::from_int(m) * mx.ln() - mx - lgamma(T::from_int(m + 1))).exp();
        if mx == T::zero() {
            return Ok(T::zero());
        }
        let mut sum = T::zero();
        let mut k = m;
        while term > T::epsilon() * sum || sum == T::zero() {
            sum = sum + term;
            k += 1;
            term = term * mx / T::from_int(k);
            if k > m + 500 {
                break;
            }
        }
        Ok(sum)
    }

    /// Fractional moment `E(h^t) = Γ(m+t) / (Γ(m) m^t)` for `t > −m`.
    pub fn moment<T: Scalar>(&self, t: T) -> Result<T> {
        let m = T::from_int(self.m() as usize);
        if !(t > -m) {
            return Err(Error::domain("fading moment", format!("order {t} must exceed -m = -{m}")));
        }
        Ok((lgamma(m + t) - lgamma(m) - t * m.ln()).exp())
    }

    /// Laplace transform `E e^{−sh} = (1 + s/m)^{−m}`.
    pub fn laplace<T: Scalar>(&self, s: T) -> Result<T> {
        if !(s >= T::zero()) {
            return Err(Error::domain("fading laplace", format!("s = {s} must be >= 0")));
        }
        let m = T::from_int(self.m() as usize);
        Ok((T::one() + s / m).powf(-m))
    }

    /// `(m, c_m)` with `F_h(x) ~ c_m x^m` as `x → 0`; `c_m = m^{m−1} / Γ(m)`.
    pub fn small_x_params<T: Scalar>(&self) -> (u32, T) {
        let m = self.m();
        let mf = T::from_int(m as usize);
        (m, mf.powi(m as i32 - 1) / gamma(mf))
    }
}

impl fmt::Display for FadingModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FadingModel::Rayleigh => write!(f, "rayleigh"),
            FadingModel::Nakagami { m } => write!(f, "nakagami:{m}"),
        }
    }
}

impl FromStr for FadingModel {
    type Err = Error;

    /// Accepts `rayleigh`, `nakagami:<m>` or `nakagami<m>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if s == "rayleigh" {
            return Ok(FadingModel::Rayleigh);
        }
        if let Some(rest) = s.strip_prefix("nakagami") {
            let rest = rest.trim_start_matches([':', '=', '-']);
            let m: u32 = rest
                .parse()
                .map_err(|_| Error::domain("FadingModel::from_str", format!("bad Nakagami parameter '{rest}'")))?;
            return FadingModel::nakagami(m);
        }
        Err(Error::domain("FadingModel::from_str", format!("unknown fading '{s}'")))
    }
}

/// Prebuilt fading sampler.
#[derive(Debug, Clone, Copy)]
pub enum FadingSampler {
    Exponential,
    Gamma(Gamma<f64>),
}

impl Distribution<f64> for FadingSampler {
    #[inline]
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            FadingSampler::Exponential => Exp1.sample(rng),
            FadingSampler::Gamma(g) => g.sample(rng),
        }
    }
}
