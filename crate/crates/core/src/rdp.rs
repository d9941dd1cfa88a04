//! Relative distance process (RDP): the ratios `‖x₀‖/‖x‖` of the serving
//! distance to every interferer distance. The SIR under nearest-BS
//! association depends on the network only through this process.

use rand::Rng;
use rand_distr::Distribution;

use crate::error::{Error, Result};
use crate::fading::FadingModel;
use crate::pointprocess::DistanceSet;
use crate::quad;
use crate::scalar::Scalar;

/// Default lower cutoff for empirical RDP estimators.
pub const DEFAULT_FLOOR: f64 = 0.05;

/// Default histogram bin width.
pub const DEFAULT_BIN_WIDTH: f64 = 0.01;

/// Points of the RDP, in (0, 1], descending (nearest interferer first).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RelativeDistanceProcess {
    values: Vec<f64>,
}

impl RelativeDistanceProcess {
    /// Wraps raw ratios; every value must lie in (0, 1].
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| !(**v > 0.0 && **v <= 1.0)) {
            return Err(Error::domain("RelativeDistanceProcess::from_values", format!("{v} not in (0,1]")));
        }
        Ok(RelativeDistanceProcess { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Drops points below `floor`; estimators never look there.
    pub fn trimmed(mut self, floor: f64) -> Self {
        self.values.retain(|&v| v >= floor);
        self
    }

    /// Number of points in `[lo, hi)`.
    pub fn count_in(&self, lo: f64, hi: f64) -> usize {
        self.values.iter().filter(|&&v| v >= lo && v < hi).count()
    }
}

/// Transforms a distance set into its RDP.
pub fn to_rdp(d: &DistanceSet) -> Result<RelativeDistanceProcess> {
    let v = d.values();
    if v.len() < 2 {
        return Err(Error::TooFewPoints { op: "to_rdp", needed: 2, got: v.len() });
    }
    let r0 = v[0];
    Ok(RelativeDistanceProcess { values: v[1..].iter().map(|&x| r0 / x).collect() })
}

/// Same as [`to_rdp`], working on squared distances in any order.
pub fn rdp_from_squared(sq: &[f64], floor: f64) -> Result<RelativeDistanceProcess> {
    if sq.len() < 2 {
        return Err(Error::TooFewPoints { op: "rdp_from_squared", needed: 2, got: sq.len() });
    }
    let (i0, &r0sq) = sq.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).expect("non-empty");
    let f2 = floor * floor;
    let mut values: Vec<f64> = sq
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != i0)
        .map(|(_, &d2)| r0sq / d2)
        .filter(|&y2| y2 >= f2)
        .map(f64::sqrt)
        .collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(RelativeDistanceProcess { values })
}

/// Interference-to-average-signal ratio `Σ h_y y^α` with fresh fading.
pub fn isr<R: Rng + ?Sized>(r: &RelativeDistanceProcess, alpha: f64, fading: FadingModel, rng: &mut R) -> f64 {
    let smp = fading.sampler();
    r.values.iter().map(|&y| smp.sample(rng) * y.powf(alpha)).sum()
}

/// PGFL of the Poisson RDP, `G[f] = 1 / (1 + 2 ∫₀¹ (1 − f(x)) x⁻³ dx)`,
/// integrated after the substitution `x = 1/y`.
pub fn pgfl_rdp_ppp<T: Scalar, F: Fn(T) -> T>(f: F, tol: T) -> Result<T> {
    // 1 − f(x) must vanish faster than x² at the origin
    let near = |x: T| (T::one() - f(x)) / (x * x);
    let g_hi = near(T::c(1e-4));
    let g_lo = near(T::c(1e-8));
    if !g_lo.is_finite() || (g_lo > T::zero() && g_lo >= T::c(0.5) * g_hi) {
        return Err(Error::Divergence { detail: "1 - f(x) does not decay faster than x^2 at 0".into() });
    }
    let integral = quad::integrate_to_infinity(|y: T| (T::one() - f(T::one() / y)) * y, T::one(), tol)?;
    Ok(T::one() / (T::one() + T::c(2.0) * integral))
}

/// Success probability the Rayleigh network would have if its RDP were a
/// Poisson process of intensity `2x⁻³`:
/// `exp(−∫₀¹ θ x^α / (1 + θ x^α) · 2 x⁻³ dx)`, by quadrature.
pub fn poisson_approx_ps<T: Scalar>(theta: T, delta: T) -> Result<T> {
    if !(delta > T::zero() && delta < T::one()) {
        return Err(Error::domain("poisson_approx_ps", format!("delta = {delta} not in (0,1)")));
    }
    if !(theta >= T::zero()) {
        return Err(Error::domain("poisson_approx_ps", format!("theta = {theta} must be >= 0")));
    }
    if theta == T::zero() {
        return Ok(T::one());
    }
    let alpha = T::c(2.0) / delta;
    let two = T::c(2.0);
    // x = 1/y: ∫₁^∞ 2 θ y^{1−α} / (1 + θ y^{−α}) dy; split at the knee y = θ^{1/α}
    let knee = theta.powf(T::one() / alpha).max(T::one());
    let integrand = |y: T| {
        let ya = y.powf(-alpha);
        two * theta * ya * y / (T::one() + theta * ya)
    };
    let tol = T::c(1e-14);
    let head = quad::integrate(integrand, T::one(), knee, tol)?;
    // y = knee v^{−1/(α−2)} turns the y^{1−α} tail into a bounded integrand on (0, 1]
    let p = -T::one() / (alpha - two);
    let scale = two * theta * knee.powf(two - alpha) / (alpha - two);
    let tail = quad::integrate(
        |v: T| {
            if v <= T::zero() {
                return scale;
            }
            let y = knee * v.powf(p);
            scale / (T::one() + theta * y.powf(-alpha))
        },
        T::zero(),
        T::one(),
        tol,
    )?;
    Ok((-(head + tail)).exp())
}

/// Average number of RDP points in `[r, 1)`; compare with `r⁻² − 1` for the PPP.
pub fn empirical_mean_measure(samples: &[RelativeDistanceProcess], r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::domain("empirical_mean_measure", format!("r = {r} not in (0,1)")));
    }
    if samples.is_empty() {
        return Err(Error::TooFewPoints { op: "empirical_mean_measure", needed: 1, got: 0 });
    }
    let total: usize = samples.iter().map(|s| s.count_in(r, 1.0)).sum();
    Ok(total as f64 / samples.len() as f64)
}

fn check_bin(op: &'static str, t: f64, width: f64) -> Result<(f64, f64)> {
    let lo = t - 0.5 * width;
    let hi = t + 0.5 * width;
    if !(width > 0.0 && lo > 0.0 && hi <= 1.0) {
        return Err(Error::domain(op, format!("bin [{lo}, {hi}) not inside (0,1]")));
    }
    Ok((lo, hi))
}

/// Histogram estimate of the RDP intensity at `t`.
pub fn empirical_intensity(samples: &[RelativeDistanceProcess], t: f64, width: f64) -> Result<f64> {
    let (lo, hi) = check_bin("empirical_intensity", t, width)?;
    if samples.is_empty() {
        return Err(Error::TooFewPoints { op: "empirical_intensity", needed: 1, got: 0 });
    }
    let total: usize = samples.iter().map(|s| s.count_in(lo, hi)).sum();
    Ok(total as f64 / (samples.len() as f64 * width))
}

/// `β₁(t) = ρ(t) t³ / 2`: the RDP intensity relative to the Poisson RDP.
pub fn empirical_beta1(samples: &[RelativeDistanceProcess], t: f64, width: f64) -> Result<f64> {
    Ok(empirical_intensity(samples, t, width)? * t * t * t / 2.0)
}

/// Pair correlation of the RDP at `(t1, t2)`: second factorial moment density
/// over the product of intensities, from two disjoint bins.
pub fn empirical_pair_correlation(
    samples: &[RelativeDistanceProcess],
    t1: f64,
    t2: f64,
    w1: f64,
    w2: f64,
) -> Result<f64> {
    let (a1, b1) = check_bin("empirical_pair_correlation", t1, w1)?;
    let (a2, b2) = check_bin("empirical_pair_correlation", t2, w2)?;
    if a1 < b2 && a2 < b1 {
        return Err(Error::domain("empirical_pair_correlation", "bins overlap"));
    }
    let (mut n1, mut n2, mut n12) = (0u64, 0u64, 0u64);
    for s in samples {
        let c1 = s.count_in(a1, b1) as u64;
        let c2 = s.count_in(a2, b2) as u64;
        n1 += c1;
        n2 += c2;
        n12 += c1 * c2;
    }
    if n1 == 0 || n2 == 0 {
        return Err(Error::TooFewPoints { op: "empirical_pair_correlation", needed: 1, got: 0 });
    }
    let n = samples.len() as f64;
    Ok((n12 as f64 / n) / ((n1 as f64 / n) * (n2 as f64 / n)))
}

/// Per-sample ordered-distinct-pair counts for `(t1,1) × (t2,1)`; the mean is
/// the second factorial moment measure of that rectangle.
pub fn factorial_pair_counts(samples: &[RelativeDistanceProcess], t1: f64, t2: f64) -> Vec<f64> {
    let tmax = t1.max(t2);
    samples
        .iter()
        .map(|s| {
            let n1 = s.values.iter().filter(|&&v| v > t1).count() as f64;
            let n2 = s.values.iter().filter(|&&v| v > t2).count() as f64;
            let both = s.values.iter().filter(|&&v| v > tmax).count() as f64;
            n1 * n2 - both
        })
        .collect()
}
