//! Closed forms, bounds and asymptotes.
//!
//! Notation: `δ = 2/α`; `θ` is the SIR threshold (linear); MISR is the mean
//! interference-to-average-signal ratio and EFIR the expected
//! fading-to-interference ratio. `G0 = MISR_PPP / MISR` and
//! `G∞ = EFIR / EFIR_PPP` are the horizontal gains at the two ends of the
//! SIR distribution.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fading::FadingModel;
use crate::quad;
use crate::scalar::Scalar;
use crate::specialfn::{bell_table, epstein_z, gamma, gauss2f1_ps_kernel, lgamma, sincd, MAX_BELL_ORDER};

/// Linear to decibel.
pub fn to_db<T: Scalar>(x: T) -> T {
    T::c(10.0) * x.log10()
}

/// Decibel to linear.
pub fn from_db<T: Scalar>(db: T) -> T {
    T::c(10.0).powf(db / T::c(10.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GainReport<T> {
    pub g0: T,
    pub g_inf: T,
    pub g0_db: T,
    pub g_inf_db: T,
    pub diversity_m: u32,
}

impl<T: Scalar> GainReport<T> {
    pub fn new(g0: T, g_inf: T, diversity_m: u32) -> Result<Self> {
        if !(g0 > T::zero() && g_inf > T::zero()) {
            return Err(Error::domain("GainReport::new", format!("gains must be positive, got {g0}, {g_inf}")));
        }
        Ok(GainReport { g0, g_inf, g0_db: to_db(g0), g_inf_db: to_db(g_inf), diversity_m })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EfirMethod {
    ClosedForm,
    Bounds,
    ProductQuadrature,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EfirResult<T> {
    pub value: T,
    pub method: EfirMethod,
    pub lower: Option<T>,
    pub upper: Option<T>,
    /// Standard error, for Monte Carlo estimates.
    pub std_err: Option<T>,
}

impl<T: Scalar> EfirResult<T> {
    fn exact(value: T, method: EfirMethod) -> Self {
        EfirResult { value, method, lower: None, upper: None, std_err: None }
    }

    /// `EFIR^δ`, the constant of the SIR tail `p_s(θ) θ^δ → EFIR^δ`.
    pub fn tail_constant(&self, delta: T) -> T {
        self.value.powf(delta)
    }
}

fn check_delta<T: Scalar>(op: &'static str, delta: T) -> Result<()> {
    if !(delta > T::zero() && delta < T::one()) {
        return Err(Error::domain(op, format!("delta = {delta} not in (0,1)")));
    }
    Ok(())
}

fn check_positive<T: Scalar>(op: &'static str, what: &str, v: T) -> Result<()> {
    if !(v > T::zero() && v.is_finite()) {
        return Err(Error::domain(op, format!("{what} = {v} must be positive")));
    }
    Ok(())
}

/// `δ = 2/α` with the `α > 2` check.
pub fn delta_of_alpha<T: Scalar>(alpha: T) -> Result<T> {
    if !(alpha > T::c(2.0) && alpha.is_finite()) {
        return Err(Error::domain("delta_of_alpha", format!("alpha = {alpha} must exceed 2")));
    }
    Ok(T::c(2.0) / alpha)
}

/// Success probability of the Poisson network with Rayleigh fading,
/// `1 / ₂F₁(1, −δ; 1−δ; −θ)`; `1 / (1 + √θ arctan √θ)` when `δ = 1/2`.
pub fn ps_ppp_rayleigh<T: Scalar>(theta: T, delta: T) -> Result<T> {
    check_delta("ps_ppp_rayleigh", delta)?;
    if !(theta >= T::zero()) {
        return Err(Error::domain("ps_ppp_rayleigh", format!("theta = {theta} must be >= 0")));
    }
    if delta == T::c(0.5) {
        let r = theta.sqrt();
        return Ok(T::one() / (T::one() + r * r.atan()));
    }
    Ok(T::one() / gauss2f1_ps_kernel(delta, theta)?)
}

/// `MISR_PPP = 2/(α−2)`.
pub fn misr_ppp<T: Scalar>(alpha: T) -> Result<T> {
    let two = T::c(2.0);
    if !(alpha > two) {
        return Err(Error::domain("misr_ppp", format!("alpha = {alpha} must exceed 2")));
    }
    if alpha.is_infinite() {
        return Ok(T::zero());
    }
    Ok(two / (alpha - two))
}

/// `E(ISRⁿ)` for the Poisson network with arbitrary fading:
/// `Σ_k k! B_{n,k}(x₁, …)` with `x_j = δ E(h^j) / (j − δ)`.
pub fn isr_moment_ppp<T: Scalar>(n: usize, delta: T, fading: FadingModel) -> Result<T> {
    check_delta("isr_moment_ppp", delta)?;
    if n == 0 {
        return Err(Error::domain("isr_moment_ppp", "order must be >= 1"));
    }
    if n > MAX_BELL_ORDER {
        return Err(Error::domain("isr_moment_ppp", format!("order {n} exceeds {MAX_BELL_ORDER}")));
    }
    let x: Vec<T> = (1..=n)
        .map(|j| {
            let jt = T::from_int(j);
            Ok(delta * fading.moment(jt)? / (jt - delta))
        })
        .collect::<Result<_>>()?;
    let table = bell_table(n, &x)?;
    let mut fact = T::one();
    let mut sum = T::zero();
    for k in 1..=n {
        fact = fact * T::from_int(k);
        sum = sum + fact * table[n][k];
    }
    Ok(sum)
}

/// Generalized MISR `MISR_n = (E ISRⁿ)^{1/n}` of the Poisson network.
pub fn gen_misr_ppp<T: Scalar>(n: usize, delta: T, fading: FadingModel) -> Result<T> {
    Ok(isr_moment_ppp(n, delta, fading)?.powf(T::one() / T::from_int(n)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MisrBounds<T> {
    /// `[(δ/(1−δ))ⁿ n! + δ E(hⁿ)/(n−δ)]^{1/n}`.
    pub lower: T,
    /// `(δ E(hⁿ) / n)^{1/n}`, tight as `δ → 0`.
    pub asymptotic_small_delta: T,
    /// `MISR₁ (n!)^{1/n}`, tight as `δ → 1`.
    pub asymptotic_large_delta: T,
}

pub fn gen_misr_bounds<T: Scalar>(n: usize, delta: T, fading: FadingModel) -> Result<MisrBounds<T>> {
    check_delta("gen_misr_bounds", delta)?;
    if n < 2 {
        return Err(Error::domain("gen_misr_bounds", "order must be >= 2"));
    }
    let nt = T::from_int(n);
    let inv = T::one() / nt;
    let misr1 = delta / (T::one() - delta);
    let ln_fact = lgamma(nt + T::one());
    let hn = fading.moment(nt)?;
    let last = delta * hn / (nt - delta);
    let lower = (misr1.powi(n as i32) * ln_fact.exp() + last).powf(inv);
    Ok(MisrBounds {
        lower,
        asymptotic_small_delta: (delta * hn / nt).powf(inv),
        asymptotic_large_delta: misr1 * (ln_fact * inv).exp(),
    })
}

/// Large-order behaviour `MISR_n ~ (n/e) δ/(1−δ)` (Poisson, Rayleigh, `δ ≥ 1/2`).
pub fn misr_n_large_n_asymptote<T: Scalar>(n: T, delta: T) -> Result<T> {
    check_delta("misr_n_large_n_asymptote", delta)?;
    if delta < T::c(0.5) {
        return Err(Error::domain("misr_n_large_n_asymptote", format!("delta = {delta} below 1/2")));
    }
    Ok(n / T::E() * delta / (T::one() - delta))
}

/// `G0^{(m)} = MISR_{m,PPP} / MISR_m`.
pub fn g0<T: Scalar>(m: u32, misr_m_model: T, misr_m_ppp: T) -> Result<T> {
    if m == 0 {
        return Err(Error::domain("g0", "m must be >= 1"));
    }
    check_positive("g0", "model MISR", misr_m_model)?;
    check_positive("g0", "PPP MISR", misr_m_ppp)?;
    Ok(misr_m_ppp / misr_m_model)
}

/// `EFIR_PPP = (sinc δ)^{1/δ}`, for any fading and intensity.
pub fn efir_ppp<T: Scalar>(delta: T) -> Result<EfirResult<T>> {
    check_delta("efir_ppp", delta)?;
    Ok(EfirResult::exact(sincd(delta)?.powf(T::one() / delta), EfirMethod::ClosedForm))
}

/// Square-lattice EFIR bounds under Rayleigh fading:
/// `(πΓ(1+δ))^{1/δ}/Z(2/δ) ≤ EFIR ≤ (π/sinc δ)^{1/δ}/Z(2/δ)`.
/// `value` carries the lower bound.
pub fn lattice_efir_bounds<T: Scalar>(delta: T) -> Result<EfirResult<T>> {
    check_delta("lattice_efir_bounds", delta)?;
    let inv = T::one() / delta;
    let z = epstein_z(T::c(2.0) * inv)?;
    let lower = (T::PI() * gamma(T::one() + delta)).powf(inv) / z;
    let upper = (T::PI() / sincd(delta)?).powf(inv) / z;
    Ok(EfirResult { value: lower, method: EfirMethod::Bounds, lower: Some(lower), upper: Some(upper), std_err: None })
}

/// `G∞ = EFIR / EFIR_PPP`.
pub fn g_infty<T: Scalar>(efir_model: T, delta: T) -> Result<T> {
    check_positive("g_infty", "EFIR", efir_model)?;
    Ok(efir_model / efir_ppp(delta)?.value)
}

/// `(θ / EFIR)^{−δ}`, the large-θ asymptote of the success probability.
pub fn tail_asymptote<T: Scalar>(theta: T, efir: T, delta: T) -> Result<T> {
    check_positive("tail_asymptote", "theta", theta)?;
    check_positive("tail_asymptote", "EFIR", efir)?;
    check_delta("tail_asymptote", delta)?;
    Ok((theta / efir).powf(-delta))
}

/// `P(S > θ) ~ λπ E(h^δ) θ^{−δ}` for the desired signal `S = h R^{−α}`.
pub fn signal_tail<T: Scalar>(theta: T, lambda: T, fading: FadingModel, delta: T) -> Result<T> {
    check_positive("signal_tail", "theta", theta)?;
    check_positive("signal_tail", "lambda", lambda)?;
    check_delta("signal_tail", delta)?;
    Ok(lambda * T::PI() * fading.moment(delta)? * theta.powf(-delta))
}

/// `P(S < θ) ~ c_m Γ(1 + mα/2) / (λπ)^{mα/2} · θ^m` as `θ → 0`, Poisson network.
pub fn signal_head_ppp<T: Scalar>(theta: T, lambda: T, fading: FadingModel, alpha: T) -> Result<T> {
    check_positive("signal_head_ppp", "theta", theta)?;
    check_positive("signal_head_ppp", "lambda", lambda)?;
    delta_of_alpha(alpha)?;
    let (m, cm) = fading.small_x_params::<T>();
    let mt = T::from_int(m as usize);
    let e = mt * alpha * T::c(0.5);
    Ok(cm * gamma(T::one() + e) / (lambda * T::PI()).powf(e) * theta.powi(m as i32))
}

/// Upper asymptote of the Poisson success probability under Nakagami-m fading
/// near θ = 0: `1 − θ^m [(mδ/(1−δ))^m + δ/(m−δ) · Γ(2m)/(Γ(m) m^m)]`.
/// No validity radius is enforced.
pub fn nakagami_ps_small_theta<T: Scalar>(theta: T, m: u32, delta: T) -> Result<T> {
    check_delta("nakagami_ps_small_theta", delta)?;
    if m == 0 {
        return Err(Error::domain("nakagami_ps_small_theta", "m must be >= 1"));
    }
    if !(theta >= T::zero()) {
        return Err(Error::domain("nakagami_ps_small_theta", format!("theta = {theta} must be >= 0")));
    }
    let mt = T::from_int(m as usize);
    let hm = (lgamma(T::c(2.0) * mt) - lgamma(mt) - mt * mt.ln()).exp();
    let bracket = (mt * delta / (T::one() - delta)).powi(m as i32) + delta / (mt - delta) * hm;
    Ok(T::one() - theta.powi(m as i32) * bracket)
}

/// `MISR ~ δ β₁(1)` for large α.
pub fn misr_high_alpha_asymptote<T: Scalar>(alpha: T, beta1_at_1: T) -> Result<T> {
    Ok(delta_of_alpha(alpha)? * beta1_at_1)
}

/// Numerical controls for [`efir_ginibre`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GinibreQuadrature {
    /// Relative tolerance of the outer integral.
    pub tol: f64,
    /// Relative tolerance of each radial factor.
    pub factor_tol: f64,
    /// Shells above which the product is summed in closed form: once
    /// `s c^{α/2} k^{−α/2}` drops below this, the remaining factors are
    /// replaced by their second-order cumulant expansion.
    pub tail_switch: f64,
    /// Hard cap on the number of explicitly evaluated factors.
    pub max_shells: usize,
    /// First Gamma shape of the reduced Palm product.
    pub palm_start: u32,
}

impl Default for GinibreQuadrature {
    fn default() -> Self {
        GinibreQuadrature { tol: 1e-8, factor_tol: 1e-12, tail_switch: 1e-3, max_shells: 200_000, palm_start: 2 }
    }
}

// Above this value of s c^{α/2} k^{−α/2} a factor is integrated numerically,
// below it the moment series is used.
const SERIES_SWITCH: f64 = 0.05;

/// One radial factor `∫₀^∞ L_h(s r^{−α/2}) r^{k−1} e^{−cr} c^k / Γ(k) dr`.
pub fn ginibre_factor<T: Scalar>(k: usize, s: T, alpha: T, fading: FadingModel, c: T, tol: T) -> Result<T> {
    if s == T::zero() {
        return Ok(T::one());
    }
    let a = alpha * T::c(0.5);
    let sigma = s * c.powf(a);
    let kt = T::from_int(k);
    let ln_norm = lgamma(kt);
    let integrand = |u: T| {
        if u <= T::zero() {
            return T::zero();
        }
        let dens = ((kt - T::one()) * u.ln() - u - ln_norm).exp();
        dens * fading.laplace(sigma * u.powf(-a)).unwrap_or(T::zero())
    };
    let width = T::c(40.0) * kt.sqrt() + T::c(40.0);
    let mode = (kt - T::one()).max(T::zero());
    let lo = quad::integrate(integrand, T::zero(), mode, tol)?;
    let hi = quad::integrate(integrand, mode, mode + width, tol)?;
    Ok(lo + hi)
}

fn ln_factor_series<T: Scalar>(k: usize, sigma: T, a: T, fading: FadingModel) -> Option<T> {
    // log(1 + Σ_j (−σ)^j E(h^j) Γ(k − j a)/Γ(k) / j!)
    let kt = T::from_int(k);
    let lgk = lgamma(kt);
    let mut sum = T::zero();
    let mut fact = T::one();
    for j in 1..=24usize {
        let jt = T::from_int(j);
        if kt - jt * a <= T::c(0.5) {
            return None;
        }
        fact = fact * jt;
        let mag = (jt * sigma.ln() + lgamma(kt - jt * a) - lgk).exp() * fading.moment(jt).ok()? / fact;
        let term = if j % 2 == 1 { -mag } else { mag };
        sum = sum + term;
        if mag <= T::epsilon() * T::c(0.1) * T::one().max(sum.abs()) {
            return Some(sum.ln_1p());
        }
    }
    None
}

/// Reduced-Palm Laplace transform of the Ginibre interference,
/// `Π_{k ≥ start} ∫ L_h(s r^{−α/2}) Gamma(k, c)(r) dr`.
pub fn ginibre_palm_laplace<T: Scalar>(
    s: T,
    alpha: T,
    fading: FadingModel,
    c: T,
    opts: &GinibreQuadrature,
) -> Result<T> {
    if s == T::zero() {
        return Ok(T::one());
    }
    let a = alpha * T::c(0.5);
    let sigma = s * c.powf(a);
    let switch = T::c(opts.tail_switch);
    let ftol = T::c(opts.factor_tol);
    let start = opts.palm_start.max(1) as usize;
    let mut log_l = T::zero();
    let mut k = start;
    loop {
        let kt = T::from_int(k);
        let x = sigma * kt.powf(-a);
        if x <= switch && kt > T::c(2.0) * a + T::one() {
            break;
        }
        if k - start >= opts.max_shells {
            return Err(Error::Truncation {
                detail: format!("Ginibre product needs more than {} factors at s = {s}", opts.max_shells),
            });
        }
        let ln_f = if x < T::c(SERIES_SWITCH) {
            match ln_factor_series(k, sigma, a, fading) {
                Some(v) => v,
                None => ginibre_factor(k, s, alpha, fading, c, ftol)?.ln(),
            }
        } else {
            ginibre_factor(k, s, alpha, fading, c, ftol)?.ln()
        };
        log_l = log_l + ln_f;
        if log_l < T::c(-80.0) {
            return Ok(T::zero());
        }
        k += 1;
    }
    // Σ_{j ≥ k} log f_j ≈ −σ Σ μ₁ + σ²/2 Σ (μ₂ − μ₁²), with
    // Σ_{j ≥ n} Γ(j − b)/Γ(j) = Γ(n − b) / ((b − 1) Γ(n − 1)).
    let n = T::from_int(k);
    let one = T::one();
    let tele = |b: T| (lgamma(n - b) - lgamma(n - one)).exp() / (b - one);
    let h1 = fading.moment(one)?;
    let h2 = fading.moment(T::c(2.0))?;
    let first = sigma * h1 * tele(a);
    let m2 = h2 * tele(T::c(2.0) * a);
    // Σ μ₁² by the continuum j^{−2a}
    let m11 = (n - T::c(0.5)).powf(one - T::c(2.0) * a) / (T::c(2.0) * a - one);
    let second = T::c(0.5) * sigma * sigma * (m2 - h1 * h1 * m11);
    Ok((log_l - first + second).exp())
}

/// Ginibre EFIR by product quadrature:
/// `E(I^{−δ}) = (1/Γ(1+δ)) ∫₀^∞ L(u^{1/δ}) du` (from `I^{−δ} = Γ(δ)^{−1} ∫ e^{−sI} s^{δ−1} ds`
/// with `s = u^{1/δ}`), then `EFIR = (λπ E(I^{−δ}) E(h^δ))^{1/δ}` with `λπ = c`.
/// The `u` range is compressed by `u = tan(v) / c`.
pub fn efir_ginibre<T: Scalar>(delta: T, fading: FadingModel, c: T, opts: &GinibreQuadrature) -> Result<EfirResult<T>> {
    check_delta("efir_ginibre", delta)?;
    check_positive("efir_ginibre", "c", c)?;
    let alpha = T::c(2.0) / delta;
    let inv = T::one() / delta;
    let half_pi = T::FRAC_PI_2();
    let mut failure: Option<Error> = None;
    let integral = quad::integrate(
        |v: T| {
            if v >= half_pi || failure.is_some() {
                return T::zero();
            }
            let t = v.tan();
            let u = t / c;
            let jac = (T::one() + t * t) / c;
            match ginibre_palm_laplace(u.powf(inv), alpha, fading, c, opts) {
                Ok(l) => l * jac,
                Err(e) => {
                    failure = Some(e);
                    T::zero()
                }
            }
        },
        T::zero(),
        half_pi,
        T::c(opts.tol),
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    let mean_inv = integral / gamma(T::one() + delta);
    let value = (c * mean_inv * fading.moment(delta)?).powf(inv);
    Ok(EfirResult::exact(value, EfirMethod::ProductQuadrature))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, FRAC_PI_4, PI};

    #[test]
    fn ps_ppp_examples() {
        assert_eq!(ps_ppp_rayleigh(0.0_f64, 0.5).unwrap(), 1.0);
        assert!((ps_ppp_rayleigh(1.0_f64, 0.5).unwrap() - 1.0 / (1.0 + FRAC_PI_4)).abs() < 1e-15);
        let p = ps_ppp_rayleigh(1e3_f64, 0.5).unwrap();
        let tail = 2.0 / PI / 1e3_f64.sqrt();
        assert!((p / tail - 1.0).abs() < 0.03);
        // general-δ path agrees with the δ = 1/2 shortcut
        let a = 1.0 / gauss2f1_ps_kernel(0.5, 3.7).unwrap();
        assert!((a - ps_ppp_rayleigh(3.7_f64, 0.5).unwrap()).abs() < 1e-13);
    }

    #[test]
    fn misr_examples() {
        assert_eq!(misr_ppp(4.0_f64).unwrap(), 1.0);
        assert_eq!(misr_ppp(3.0_f64).unwrap(), 2.0);
        assert_eq!(misr_ppp(f64::INFINITY).unwrap(), 0.0);
        assert!(misr_ppp(2.0_f64).is_err());
    }

    #[test]
    fn generalized_misr_examples() {
        let r = FadingModel::Rayleigh;
        assert!((gen_misr_ppp(1, 0.5_f64, r).unwrap() - 1.0).abs() < 1e-15);
        assert!((gen_misr_ppp(2, 0.5_f64, r).unwrap() - (8.0_f64 / 3.0).sqrt()).abs() < 1e-14);
        assert!((gen_misr_ppp(3, 0.5_f64, r).unwrap() - 11.2_f64.cbrt()).abs() < 1e-13);
        assert!(gen_misr_ppp(33, 0.5_f64, r).is_err());
        // third moment against the expanded closed form
        for &d in &[0.2_f64, 0.5, 0.7] {
            let m1 = d / (1.0 - d);
            let h2 = 2.0;
            let h3 = 6.0;
            let closed = 6.0 * m1.powi(3) + 6.0 * d * d * h2 / ((1.0 - d) * (2.0 - d)) + d * h3 / (3.0 - d);
            assert!((isr_moment_ppp(3, d, r).unwrap() - closed).abs() < 1e-12 * closed);
        }
    }

    #[test]
    fn bound_examples() {
        let r = FadingModel::Rayleigh;
        for &d in &[0.1_f64, 0.5, 0.9] {
            let b = gen_misr_bounds(2, d, r).unwrap();
            let exact = gen_misr_ppp(2, d, r).unwrap();
            assert!((b.lower - exact).abs() < 1e-12 * exact);
        }
        let b = gen_misr_bounds(5, 0.5_f64, r).unwrap();
        assert!((b.asymptotic_large_delta - 120f64.powf(0.2)).abs() < 1e-12);
        assert!((b.asymptotic_large_delta - 2.605_17).abs() < 1e-5);
        let b = gen_misr_bounds(2, 0.05_f64, r).unwrap();
        assert!(((b.lower - gen_misr_ppp(2, 0.05, r).unwrap()) / b.lower).abs() < 0.01);
        assert!(gen_misr_bounds(1, 0.5_f64, r).is_err());
    }

    #[test]
    fn large_n_asymptote() {
        // growth is set by the root u of u artanh u = 1 (δ = 1/2), not by MISR₁ alone
        let (mut lo, mut hi) = (0.5_f64, 0.99);
        for _ in 0..100 {
            let u = 0.5 * (lo + hi);
            if u * u.atanh() < 1.0 {
                lo = u;
            } else {
                hi = u;
            }
        }
        let zstar = lo * lo;
        let r = FadingModel::Rayleigh;
        let n = 32.0;
        let ratio = gen_misr_ppp(32, 0.5_f64, r).unwrap() / misr_n_large_n_asymptote(n, 0.5).unwrap();
        let predicted = (2.0 * PI * n).powf(0.5 / n) / zstar;
        assert!((ratio / predicted - 1.0).abs() < 0.03, "{ratio} vs {predicted}");
        assert!((misr_n_large_n_asymptote(E, 0.5_f64).unwrap() - 1.0).abs() < 1e-15);
        assert!((misr_n_large_n_asymptote(50.0_f64, 0.5).unwrap() - 18.394).abs() < 1e-3);
        assert!(misr_n_large_n_asymptote(10.0_f64, 0.4).is_err());
    }

    #[test]
    fn g0_examples() {
        let g = g0(1, 0.457_f64, 1.0).unwrap();
        assert!((g - 2.188).abs() < 1e-3);
        assert!((to_db(g) - 3.4).abs() < 0.01);
        assert_eq!(g0(2, 0.8_f64, 0.8).unwrap(), 1.0);
        assert!(g0(1, 0.0_f64, 1.0).is_err());
    }

    #[test]
    fn efir_ppp_examples() {
        let v = efir_ppp(0.5_f64).unwrap().value;
        assert!((v - 4.0 / (PI * PI)).abs() < 1e-15);
        assert!((efir_ppp(1e-6_f64).unwrap().value - 1.0).abs() < 1e-5);
        assert!((v - 0.5).abs() < 0.1);
        let small = efir_ppp(0.01_f64).unwrap().value;
        assert!((small - 0.99).abs() < 0.01);
    }

    #[test]
    fn lattice_bounds() {
        let b = lattice_efir_bounds(0.5_f64).unwrap();
        let lower = b.lower.unwrap();
        assert!((lower - PI.powi(3) / 4.0 / epstein_z(4.0).unwrap()).abs() < 1e-14);
        assert!((lower - 1.286).abs() < 1e-3, "{lower}");
        assert!(lower <= 1.40 && 1.40 <= b.upper.unwrap());
        // the bounds on EFIR^δ close as δ → 0; on EFIR itself the ratio tends to e^γ
        let b = lattice_efir_bounds(0.01_f64).unwrap();
        let ratio = b.upper.unwrap() / b.lower.unwrap();
        assert!(ratio.powf(0.01) < 1.01);
        assert!((ratio - 0.577_215_664_9_f64.exp()).abs() < 0.02, "{ratio}");
    }

    #[test]
    fn g_infty_examples() {
        let g = g_infty(1.40_f64, 0.5).unwrap();
        assert!((g - 3.454).abs() < 1e-3);
        assert!((to_db(g) - 5.38).abs() < 0.01);
        let e = efir_ppp(0.3_f64).unwrap().value;
        assert!((g_infty(e, 0.3).unwrap() - 1.0).abs() < 1e-15);
        for &d in &[0.3_f64, 0.5, 0.7] {
            let efir: f64 = 1.234;
            let alt = (efir.powf(d) / sincd(d).unwrap()).powf(1.0 / d);
            assert!((g_infty(efir, d).unwrap() - alt).abs() < 1e-12 * alt);
        }
    }

    #[test]
    fn tail_examples() {
        let efir = efir_ppp(0.5_f64).unwrap().value;
        let v = tail_asymptote(100.0_f64, efir, 0.5).unwrap();
        assert!((v - 0.2 / PI).abs() < 1e-15);
        assert!((tail_asymptote(efir, efir, 0.5).unwrap() - 1.0).abs() < 1e-15);
        let a = tail_asymptote(7.0_f64, 0.9, 0.4).unwrap();
        let b = tail_asymptote(14.0_f64, 0.9, 0.4).unwrap();
        assert!((b / a - 2f64.powf(-0.4)).abs() < 1e-14);
    }

    #[test]
    fn signal_tail_examples() {
        let r = FadingModel::Rayleigh;
        let v = signal_tail(100.0_f64, 1.0, r, 0.5).unwrap();
        assert!((v - PI * gamma(1.5) / 10.0).abs() < 1e-14);
        assert!((v - 0.278_42).abs() < 1e-5);
        let v = signal_head_ppp(0.01_f64, 1.0, r, 4.0).unwrap();
        assert!((v - 2.0 / (PI * PI) * 0.01).abs() < 1e-16);
        let cross = (PI * gamma(1.5_f64)).powf(2.0);
        assert!((signal_tail(cross, 1.0, r, 0.5).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn nakagami_small_theta() {
        // m = 1: bracket is MISR₁ + δ E(h)/(1−δ) ... = δ/(1−δ) + δ/(1−δ) for δ = 1/2
        let v = nakagami_ps_small_theta(0.01_f64, 1, 0.5).unwrap();
        assert!((v - (1.0 - 0.01 * 2.0)).abs() < 1e-15);
        let v = nakagami_ps_small_theta(0.1_f64, 2, 0.5).unwrap();
        assert!((v - 0.955).abs() < 1e-14);
        assert_eq!(nakagami_ps_small_theta(0.0_f64, 3, 0.5).unwrap(), 1.0);
    }

    #[test]
    fn high_alpha_asymptote() {
        let exact = misr_ppp(20.0_f64).unwrap();
        let asym = misr_high_alpha_asymptote(20.0_f64, 1.0).unwrap();
        assert!((asym - 0.1).abs() < 1e-15 && (exact - asym) / exact < 0.12);
        let exact = misr_ppp(100.0_f64).unwrap();
        let asym = misr_high_alpha_asymptote(100.0_f64, 1.0).unwrap();
        assert!((exact - asym) / exact < 0.021);
        assert_eq!(misr_high_alpha_asymptote(5.0_f64, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn ginibre_factors_at_zero() {
        let r = FadingModel::Rayleigh;
        for k in 1..6 {
            assert_eq!(ginibre_factor(k, 0.0_f64, 4.0, r, 1.0, 1e-12).unwrap(), 1.0);
        }
        let o = GinibreQuadrature::default();
        assert_eq!(ginibre_palm_laplace(0.0_f64, 4.0, r, 1.0, &o).unwrap(), 1.0);
    }

    #[test]
    fn ginibre_series_matches_quadrature() {
        let r = FadingModel::Rayleigh;
        for &(k, s) in &[(20usize, 0.5_f64), (40, 10.0), (300, 50.0)] {
            let q = ginibre_factor(k, s, 4.0, r, 1.0, 1e-13).unwrap().ln();
            let series = ln_factor_series(k, s, 2.0, r).unwrap();
            assert!((q - series).abs() < 1e-11, "k={k} s={s}: {q} vs {series}");
        }
    }

    #[test]
    fn ginibre_efir_value_and_scale() {
        let o = GinibreQuadrature::default();
        let r = FadingModel::Rayleigh;
        let e1 = efir_ginibre(0.5_f64, r, 1.0, &o).unwrap();
        assert_eq!(e1.method, EfirMethod::ProductQuadrature);
        assert!((e1.value.sqrt() - 0.89).abs() < 0.02, "{}", e1.value.sqrt());
        let e4 = efir_ginibre(0.5_f64, r, 4.0, &o).unwrap();
        assert!((e1.value - e4.value).abs() < 1e-7 * e1.value);
        let tight = GinibreQuadrature { max_shells: 3, ..o };
        assert!(matches!(efir_ginibre(0.5_f64, r, 1.0, &tight), Err(Error::Truncation { .. })));
    }

    #[test]
    fn ginibre_start_one_is_less_regular() {
        // without the Palm shift the pattern seen from the origin is the
        // stationary one, which has nearer interferers
        let r = FadingModel::Rayleigh;
        let palm = efir_ginibre(0.5_f64, r, 1.0, &GinibreQuadrature::default()).unwrap().value;
        let o = GinibreQuadrature { palm_start: 1, ..Default::default() };
        let stat = efir_ginibre(0.5_f64, r, 1.0, &o).unwrap().value;
        assert!(stat < palm);
    }

    #[test]
    fn gain_report_db() {
        let g = GainReport::new(2.0_f64, 3.0, 1).unwrap();
        assert!((g.g0_db - 10.0 * 2f64.log10()).abs() < 1e-12);
        assert!((from_db(g.g_inf_db) - 3.0).abs() < 1e-12);
        assert!(GainReport::new(0.0_f64, 1.0, 1).is_err());
    }
}
