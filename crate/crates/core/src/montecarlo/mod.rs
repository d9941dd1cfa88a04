//! Reproducible Monte Carlo estimation.
//!
//! Samples are processed in fixed blocks of [`BLOCK_SIZE`] realizations.
//! Block `b` draws from `ChaCha8Rng` seeded with the master seed on stream
//! `b`, and block results are combined in block order, so an estimate depends
//! only on the seed and the sample count: changing the worker count leaves it
//! bit-identical.

pub mod stats;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Distribution;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{self, EfirMethod, EfirResult};
use crate::error::{Error, Result};
use crate::fading::{FadingModel, FadingSampler};
use crate::pointprocess::{Budget, NetworkModel, Sampler, DEFAULT_TRUNCATION_EPS};
use crate::rdp::{self, RelativeDistanceProcess};
use crate::scalar::Scalar;
use stats::{binomial_half_width, mean_and_se};

/// Realizations per independent random stream.
pub const BLOCK_SIZE: u64 = 8192;

/// Exceedance count below which a ccdf point is flagged unreliable.
pub const RELIABLE_EXCEEDANCES: u64 = 100;

fn default_eps() -> f64 {
    DEFAULT_TRUNCATION_EPS
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub model: NetworkModel,
    pub fading: FadingModel,
    pub alpha: f64,
    pub samples: u64,
    pub seed: u64,
    /// Linear thresholds, strictly ascending.
    #[serde(default)]
    pub theta_grid: Vec<f64>,
    #[serde(default = "default_eps")]
    pub truncation_eps: f64,
    #[serde(default = "default_workers")]
    pub workers: usize,
}

impl SimConfig {
    pub fn new(model: NetworkModel, fading: FadingModel, alpha: f64, samples: u64, seed: u64) -> Self {
        SimConfig {
            model,
            fading,
            alpha,
            samples,
            seed,
            theta_grid: Vec::new(),
            truncation_eps: DEFAULT_TRUNCATION_EPS,
            workers: default_workers(),
        }
    }

    pub fn with_grid(mut self, theta_grid: Vec<f64>) -> Self {
        self.theta_grid = theta_grid;
        self
    }

    /// Grid from decibel values.
    pub fn with_grid_db(self, db: &[f64]) -> Self {
        self.with_grid(db.iter().map(|&d| analytic::from_db(d)).collect())
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_eps(mut self, eps: f64) -> Self {
        self.truncation_eps = eps;
        self
    }

    pub fn delta(&self) -> f64 {
        2.0 / self.alpha
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 2.0 && self.alpha.is_finite()) {
            return Err(Error::config(format!("alpha = {} must exceed 2", self.alpha)));
        }
        if self.samples == 0 {
            return Err(Error::config("samples must be >= 1"));
        }
        if self.workers == 0 {
            return Err(Error::config("workers must be >= 1"));
        }
        if !(self.truncation_eps > 0.0) {
            return Err(Error::config("truncation_eps must be positive"));
        }
        if !(self.model.intensity > 0.0 && self.model.intensity.is_finite()) {
            return Err(Error::config("intensity must be positive"));
        }
        if self.theta_grid.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
            return Err(Error::config("theta grid values must be positive and finite"));
        }
        if self.theta_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::config("theta grid must be strictly ascending"));
        }
        Ok(())
    }

    fn sampler(&self) -> Result<Sampler> {
        Sampler::new(self.model, Budget::auto(self.alpha).with_eps(self.truncation_eps))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CcdfEstimate {
    pub theta_grid: Vec<f64>,
    pub p_hat: Vec<f64>,
    /// 95% half-widths.
    pub half_width: Vec<f64>,
    pub samples_used: u64,
    /// Number of samples above each threshold.
    pub exceedances: Vec<u64>,
}

impl CcdfEstimate {
    /// Builds an estimate from exceedance counts.
    pub fn from_counts(theta_grid: Vec<f64>, exceedances: Vec<u64>, samples: u64) -> Self {
        let n = samples as f64;
        let p_hat = exceedances.iter().map(|&k| k as f64 / n).collect();
        let half_width = exceedances.iter().map(|&k| binomial_half_width(k, samples)).collect();
        CcdfEstimate { theta_grid, p_hat, half_width, samples_used: samples, exceedances }
    }

    /// Exact curve on a grid (zero-width intervals), e.g. an analytic ccdf.
    pub fn exact(theta_grid: Vec<f64>, p: Vec<f64>) -> Self {
        let n = p.len();
        CcdfEstimate { theta_grid, p_hat: p, half_width: vec![0.0; n], samples_used: 0, exceedances: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.theta_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta_grid.is_empty()
    }

    /// Binomial standard error at grid point `i` (never below the value
    /// implied by one exceedance).
    pub fn std_err(&self, i: usize) -> f64 {
        if self.samples_used == 0 {
            return 0.0;
        }
        let n = self.samples_used as f64;
        let p = self.p_hat[i].clamp(1.0 / n, 1.0 - 1.0 / n);
        (p * (1.0 - p) / n).sqrt()
    }

    /// Whether point `i` has at least [`RELIABLE_EXCEEDANCES`] exceedances.
    pub fn reliable(&self, i: usize) -> bool {
        self.samples_used == 0 || self.exceedances[i] >= RELIABLE_EXCEEDANCES
    }

    /// `(lo, hi)` 95% interval clipped to [0, 1].
    pub fn interval(&self, i: usize) -> (f64, f64) {
        let p = self.p_hat[i];
        let h = self.half_width[i];
        ((p - h).max(0.0), (p + h).min(1.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentEstimate {
    pub n: usize,
    /// Estimate of `E(ISRⁿ)`.
    pub mean_power_n: f64,
    /// `mean_power_n^{1/n}`.
    pub misr_n: f64,
    /// Standard error of `mean_power_n`.
    pub std_err: f64,
}

/// A single Bernoulli-type estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbEstimate {
    pub p: f64,
    pub std_err: f64,
    pub hits: u64,
    pub samples: u64,
}

impl ProbEstimate {
    fn new(hits: u64, samples: u64) -> Self {
        let n = samples as f64;
        let p = hits as f64 / n;
        let q = p.clamp(1.0 / n, 1.0 - 1.0 / n);
        ProbEstimate { p, std_err: (q * (1.0 - q) / n).sqrt(), hits, samples }
    }
}

// --- engine -----------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
enum PathLoss {
    Int(i32),
    HalfInt(i32),
    Real(f64),
}

impl PathLoss {
    fn new(alpha: f64) -> Self {
        let h = 0.5 * alpha;
        if h.fract() == 0.0 && h < 64.0 {
            PathLoss::Int(h as i32)
        } else if (h - 0.5).fract() == 0.0 && h < 64.0 {
            PathLoss::HalfInt((h - 0.5) as i32)
        } else {
            PathLoss::Real(h)
        }
    }

    /// `d2^{−α/2}`.
    #[inline]
    fn gain(self, d2: f64) -> f64 {
        match self {
            PathLoss::Int(n) => d2.powi(-n),
            PathLoss::HalfInt(n) => 1.0 / (d2.powi(n) * d2.sqrt()),
            PathLoss::Real(h) => d2.powf(-h),
        }
    }
}

/// Everything a per-sample kernel needs.
struct Ctx {
    sampler: Sampler,
    fading: FadingSampler,
    pl: PathLoss,
    far: f64,
    far_palm: f64,
}

impl Ctx {
    fn new(cfg: &SimConfig) -> Result<Self> {
        cfg.validate()?;
        let sampler = cfg.sampler()?;
        Ok(Ctx {
            far: sampler.far_field_mean(false),
            far_palm: sampler.far_field_mean(true),
            fading: cfg.fading.sampler(),
            pl: PathLoss::new(cfg.alpha),
            sampler,
        })
    }

    /// Squared distances of one stationary realization; returns the index of
    /// the nearest point, or `None` for an empty pattern.
    fn nearest(&self, rng: &mut ChaCha8Rng, buf: &mut Vec<f64>) -> Option<usize> {
        self.sampler.fill_squared(rng, buf);
        let mut best = None;
        let mut best_d = f64::INFINITY;
        for (i, &d) in buf.iter().enumerate() {
            if d < best_d {
                best_d = d;
                best = Some(i);
            }
        }
        best
    }

    /// `(signal, interference)` with the far field added to the interference.
    fn sir_parts(&self, rng: &mut ChaCha8Rng, buf: &mut Vec<f64>) -> (f64, f64) {
        let Some(i0) = self.nearest(rng, buf) else {
            return (0.0, self.far);
        };
        let mut interference = self.far;
        let mut signal = 0.0;
        for (i, &d2) in buf.iter().enumerate() {
            let p = self.fading.sample(rng) * self.pl.gain(d2);
            if i == i0 {
                signal = p;
            } else {
                interference += p;
            }
        }
        (signal, interference)
    }
}

trait Merge: Send {
    fn merge(&mut self, other: Self);
}

fn run_blocks<A, I, F>(cfg: &SimConfig, ctx: &Ctx, init: I, kernel: F) -> Result<A>
where
    A: Merge,
    I: Fn() -> A + Sync,
    F: Fn(&Ctx, &mut ChaCha8Rng, &mut Vec<f64>, &mut A) + Sync,
{
    let blocks = cfg.samples.div_ceil(BLOCK_SIZE);
    let run_block = |b: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(b);
        let n = BLOCK_SIZE.min(cfg.samples - b * BLOCK_SIZE);
        let mut acc = init();
        let mut buf = Vec::new();
        for _ in 0..n {
            kernel(ctx, &mut rng, &mut buf, &mut acc);
        }
        acc
    };
    let parts: Vec<A> = if cfg.workers == 1 || blocks == 1 {
        (0..blocks).map(run_block).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| Error::config(format!("thread pool: {e}")))?;
        pool.install(|| (0..blocks).into_par_iter().map(run_block).collect())
    };
    let mut it = parts.into_iter();
    let mut total = it.next().unwrap_or_else(&init);
    for p in it {
        total.merge(p);
    }
    Ok(total)
}

struct Counts(Vec<u64>);

impl Merge for Counts {
    fn merge(&mut self, other: Self) {
        for (a, b) in self.0.iter_mut().zip(other.0) {
            *a += b;
        }
    }
}

struct Sums(Vec<f64>);

impl Merge for Sums {
    fn merge(&mut self, other: Self) {
        for (a, b) in self.0.iter_mut().zip(other.0) {
            *a += b;
        }
    }
}

struct Collect<T>(Vec<T>);

impl<T: Send> Merge for Collect<T> {
    fn merge(&mut self, mut other: Self) {
        self.0.append(&mut other.0);
    }
}

// --- estimators -------------------------------------------------------------

/// SIR samples of the typical user (nearest-BS association).
pub fn sample_sir(cfg: &SimConfig) -> Result<Vec<f64>> {
    let ctx = Ctx::new(cfg)?;
    let out = run_blocks(
        cfg,
        &ctx,
        || Collect(Vec::new()),
        |ctx, rng, buf, acc| {
            let (s, i) = ctx.sir_parts(rng, buf);
            acc.0.push(s / i);
        },
    )?;
    Ok(out.0)
}

/// `P(SIR > θ)` on `cfg.theta_grid`, all thresholds on the same samples.
pub fn estimate_sir_ccdf(cfg: &SimConfig) -> Result<CcdfEstimate> {
    let ctx = Ctx::new(cfg)?;
    let grid = &cfg.theta_grid;
    let g = grid.len();
    // hist[j] counts samples exceeding exactly the first j thresholds
    let hist = run_blocks(
        cfg,
        &ctx,
        || Counts(vec![0; g + 1]),
        |ctx, rng, buf, acc| {
            let (s, i) = ctx.sir_parts(rng, buf);
            let sir = s / i;
            let j = grid.partition_point(|&t| t < sir);
            acc.0[j] += 1;
        },
    )?;
    let mut exceed = vec![0u64; g];
    let mut run = 0;
    for j in (0..g).rev() {
        run += hist.0[j + 1];
        exceed[j] = run;
    }
    Ok(CcdfEstimate::from_counts(grid.clone(), exceed, cfg.samples))
}

/// `E(ISRᵏ)` for `k = 1..=max_n`, shared samples and fresh fading per
/// realization. The ISR is `R^α` times the interference including the far field.
pub fn estimate_isr_moments(cfg: &SimConfig, max_n: usize) -> Result<Vec<MomentEstimate>> {
    if max_n == 0 {
        return Err(Error::domain("estimate_isr_moments", "order must be >= 1"));
    }
    let ctx = Ctx::new(cfg)?;
    let sums = run_blocks(
        cfg,
        &ctx,
        || Sums(vec![0.0; 2 * max_n]),
        |ctx, rng, buf, acc| {
            let Some(i0) = ctx.nearest(rng, buf) else {
                return;
            };
            let r0_alpha = 1.0 / ctx.pl.gain(buf[i0]);
            let mut interference = ctx.far;
            for (i, &d2) in buf.iter().enumerate() {
                if i != i0 {
                    interference += ctx.fading.sample(rng) * ctx.pl.gain(d2);
                }
            }
            let isr = r0_alpha * interference;
            let mut p = 1.0;
            for k in 0..max_n {
                p *= isr;
                acc.0[2 * k] += p;
                acc.0[2 * k + 1] += p * p;
            }
        },
    )?;
    Ok((1..=max_n)
        .map(|n| {
            let (mean, se) = mean_and_se(sums.0[2 * n - 2], sums.0[2 * n - 1], cfg.samples);
            MomentEstimate { n, mean_power_n: mean, misr_n: mean.powf(1.0 / n as f64), std_err: se }
        })
        .collect())
}

/// Generalized MISR of order `n`.
pub fn estimate_misr_n(cfg: &SimConfig, n: usize) -> Result<MomentEstimate> {
    Ok(estimate_isr_moments(cfg, n)?[n - 1])
}

/// Palm EFIR: `(λπ E(h^δ) E^!(I^{−δ}))^{1/δ}` where `I` sums over all points
/// of the reduced Palm pattern. The fading at the origin is independent of
/// `I`, so `E(h^δ)` enters exactly.
pub fn estimate_efir(cfg: &SimConfig) -> Result<EfirResult<f64>> {
    let ctx = Ctx::new(cfg)?;
    let delta = cfg.delta();
    let sums = run_blocks(
        cfg,
        &ctx,
        || Sums(vec![0.0; 2]),
        |ctx, rng, buf, acc| {
            ctx.sampler.fill_palm_squared(rng, buf);
            let mut interference = ctx.far_palm;
            for &d2 in buf.iter() {
                interference += ctx.fading.sample(rng) * ctx.pl.gain(d2);
            }
            let v = interference.powf(-delta);
            acc.0[0] += v;
            acc.0[1] += v * v;
        },
    )?;
    let (m, se) = mean_and_se(sums.0[0], sums.0[1], cfg.samples);
    let scale = cfg.model.intensity * std::f64::consts::PI * cfg.fading.moment(delta)?;
    let value = (scale * m).powf(1.0 / delta);
    let std_err = value / delta * se / m;
    Ok(EfirResult { value, method: EfirMethod::MonteCarlo, lower: None, upper: None, std_err: Some(std_err) })
}

/// Desired-signal tail `P(h R^{−α} > θ)`.
pub fn estimate_signal_tail(cfg: &SimConfig, theta: f64) -> Result<ProbEstimate> {
    if !(theta >= 0.0) {
        return Err(Error::domain("estimate_signal_tail", format!("theta = {theta} must be >= 0")));
    }
    let ctx = Ctx::new(cfg)?;
    let hits = run_blocks(
        cfg,
        &ctx,
        || Counts(vec![0]),
        |ctx, rng, buf, acc| {
            let Some(i0) = ctx.nearest(rng, buf) else {
                return;
            };
            let s = ctx.fading.sample(rng) * ctx.pl.gain(buf[i0]);
            if s > theta {
                acc.0[0] += 1;
            }
        },
    )?;
    Ok(ProbEstimate::new(hits.0[0], cfg.samples))
}

/// `P(max_x SIR(x) > θ)` over all base stations within the truncation.
/// For `θ > 1` the best SIR is `S_max / (T − S_max)` with `T` the total power.
pub fn estimate_max_sir_tail(cfg: &SimConfig, theta: f64) -> Result<ProbEstimate> {
    if !(theta > 1.0) {
        return Err(Error::domain("estimate_max_sir_tail", format!("theta = {theta} must exceed 1")));
    }
    let ctx = Ctx::new(cfg)?;
    let hits = run_blocks(
        cfg,
        &ctx,
        || Counts(vec![0]),
        |ctx, rng, buf, acc| {
            ctx.sampler.fill_squared(rng, buf);
            let mut total = ctx.far;
            let mut best: f64 = 0.0;
            for &d2 in buf.iter() {
                let p = ctx.fading.sample(rng) * ctx.pl.gain(d2);
                total += p;
                best = best.max(p);
            }
            if best > theta * (total - best) {
                acc.0[0] += 1;
            }
        },
    )?;
    Ok(ProbEstimate::new(hits.0[0], cfg.samples))
}

/// `cfg.samples` relative distance processes, points below `floor` dropped.
pub fn sample_rdps(cfg: &SimConfig, floor: f64) -> Result<Vec<RelativeDistanceProcess>> {
    let ctx = Ctx::new(cfg)?;
    let out = run_blocks(
        cfg,
        &ctx,
        || Collect(Vec::new()),
        |ctx, rng, buf, acc| {
            ctx.sampler.fill_squared(rng, buf);
            if let Ok(r) = rdp::rdp_from_squared(buf, floor) {
                acc.0.push(r);
            }
        },
    )?;
    Ok(out.0)
}

/// Monte Carlo PGFL `E Π f(y)` of the RDP, with standard error.
///
/// Points beyond the truncation radius `ρ` are treated as a Poisson field of
/// intensity `λ`: each sample is multiplied by
/// `exp(−2πλR² ∫₀^{R/ρ} (1 − f(y)) y⁻³ dy)`.
pub fn estimate_rdp_pgfl<F: Fn(f64) -> f64 + Sync>(cfg: &SimConfig, f: F) -> Result<(f64, f64)> {
    let ctx = Ctx::new(cfg)?;
    let rho = ctx.sampler.radius();
    let two_pi_lambda = 2.0 * std::f64::consts::PI * cfg.model.intensity;
    let far_log = |r0_sq: f64| {
        const NODES: usize = 16;
        let u = r0_sq.sqrt() / rho;
        let h = u / NODES as f64;
        let integral: f64 = (0..NODES)
            .map(|i| {
                let y = (i as f64 + 0.5) * h;
                (1.0 - f(y)) / (y * y * y)
            })
            .sum::<f64>()
            * h;
        two_pi_lambda * r0_sq * integral
    };
    let sums = run_blocks(
        cfg,
        &ctx,
        || Sums(vec![0.0; 2]),
        |ctx, rng, buf, acc| {
            ctx.sampler.fill_squared(rng, buf);
            if let Ok(r) = rdp::rdp_from_squared(buf, 0.0) {
                let r0_sq = buf.iter().copied().fold(f64::INFINITY, f64::min);
                let v: f64 = r.values().iter().map(|&y| f(y)).product::<f64>() * (-far_log(r0_sq)).exp();
                acc.0[0] += v;
                acc.0[1] += v * v;
            }
        },
    )?;
    Ok(mean_and_se(sums.0[0], sums.0[1], cfg.samples))
}

// --- curve post-processing --------------------------------------------------

/// θ at which the estimated ccdf crosses `p`, interpolating linearly in
/// `(ln θ, p)`.
pub fn inverse_ccdf(est: &CcdfEstimate, p: f64) -> Result<f64> {
    let ps = &est.p_hat;
    if ps.is_empty() {
        return Err(Error::TooFewPoints { op: "inverse_ccdf", needed: 1, got: 0 });
    }
    let hi = ps[0];
    let lo = ps[ps.len() - 1];
    if !(p > 0.0 && p < 1.0) || p > hi || p < lo {
        return Err(Error::OutOfRange { level: p, lo, hi });
    }
    let j = ps.partition_point(|&v| v > p);
    if ps[j] == p || j == 0 {
        return Ok(est.theta_grid[j]);
    }
    let (p0, p1) = (ps[j - 1], ps[j]);
    let (l0, l1) = (est.theta_grid[j - 1].ln(), est.theta_grid[j].ln());
    let w = (p0 - p) / (p0 - p1);
    Ok((l0 + w * (l1 - l0)).exp())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GainCurve {
    /// `(θ, G(θ))`, linear.
    pub points: Vec<(f64, f64)>,
    /// Reference θ values whose level the target curve does not attain.
    pub skipped: Vec<f64>,
    pub min: f64,
    pub max: f64,
}

/// `G(θ) = F̄⁻¹(p_ppp(θ)) / θ` against the analytic Rayleigh PPP reference,
/// evaluated on the target's own grid.
pub fn gain_curve(target: &CcdfEstimate, delta: f64) -> Result<GainCurve> {
    gain_curve_on(target, delta, &target.theta_grid.clone())
}

/// As [`gain_curve`], on an explicit reference grid.
pub fn gain_curve_on(target: &CcdfEstimate, delta: f64, reference: &[f64]) -> Result<GainCurve> {
    let mut points = Vec::new();
    let mut skipped = Vec::new();
    for &theta in reference {
        let p = analytic::ps_ppp_rayleigh(theta, delta)?;
        match inverse_ccdf(target, p) {
            Ok(t) => points.push((theta, t / theta)),
            Err(Error::OutOfRange { .. }) => skipped.push(theta),
            Err(e) => return Err(e),
        }
    }
    let min = points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let max = points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    Ok(GainCurve { points, skipped, min, max })
}

/// Shifted PPP approximation `p_ppp(θ / g)`.
pub fn asappp<T: Scalar>(theta: T, g: T, delta: T) -> Result<T> {
    if !(g > T::zero()) {
        return Err(Error::domain("asappp", format!("gain {g} must be positive")));
    }
    analytic::ps_ppp_rayleigh(theta / g, delta)
}

/// Least-squares slope of `ln p_hat` against `ln θ` over the reliable points
/// of the top decade of the grid.
pub fn tail_slope(est: &CcdfEstimate) -> Result<f64> {
    let last = est
        .theta_grid
        .iter()
        .enumerate()
        .rev()
        .find(|&(i, _)| est.reliable(i) && est.p_hat[i] > 0.0)
        .map(|(_, &t)| t)
        .ok_or(Error::TooFewPoints { op: "tail_slope", needed: 2, got: 0 })?;
    let (x, y): (Vec<f64>, Vec<f64>) = est
        .theta_grid
        .iter()
        .zip(&est.p_hat)
        .enumerate()
        .filter(|&(i, (&t, &p))| t <= last && t >= last / 10.0 && p > 0.0 && est.reliable(i))
        .map(|(_, (&t, &p))| (t.ln(), p.ln()))
        .unzip();
    stats::ls_slope(&x, &y)
}
