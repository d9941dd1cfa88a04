//! Base-station distance samplers for the typical user (stationary view) and
//! for the reduced Palm view.
//!
//! All samplers work with a truncated window: points beyond a radius `r_max`
//! (or, for Ginibre, beyond the first `K` radial shells) are dropped and
//! their mean interference is available through
//! [`Sampler::far_field_mean`]. The radius is picked from an accuracy target
//! `eps` on the standard deviation of the omitted interference, expressed in
//! units of the mean signal level `E[R^α]` of a Poisson network:
//!
//! `bound(ρ) = Γ(1+α/2) / π^{α/2} · √(2π/(α−1)) · ρ^{1−α}`, with `ρ = r_max √λ`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Exp1, Gamma};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fading::FadingModel;
use crate::specialfn::{gamma, lgamma};

/// Smallest normalized radius `r_max √λ` the automatic rule will return.
pub const MIN_NORMALIZED_RADIUS: f64 = 4.0;

/// Probability that a Ginibre shell beyond the cap falls inside `r_max`.
pub const GINIBRE_SHELL_MISS: f64 = 1e-6;

/// Default accuracy target for truncation.
pub const DEFAULT_TRUNCATION_EPS: f64 = 1e-3;

/// Largest expected number of points per realization a sampler will accept.
pub const MAX_EXPECTED_POINTS: f64 = 1e7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    Ppp,
    SquareLattice,
    TriangularLattice,
    Ginibre,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] =
        [ModelKind::Ppp, ModelKind::SquareLattice, ModelKind::TriangularLattice, ModelKind::Ginibre];

    pub fn is_lattice(self) -> bool {
        matches!(self, ModelKind::SquareLattice | ModelKind::TriangularLattice)
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Ppp => "ppp",
            ModelKind::SquareLattice => "square",
            ModelKind::TriangularLattice => "triangular",
            ModelKind::Ginibre => "ginibre",
        })
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ppp" | "poisson" => Ok(ModelKind::Ppp),
            "square" | "square-lattice" | "sq" => Ok(ModelKind::SquareLattice),
            "triangular" | "triangular-lattice" | "tri" | "hex" => Ok(ModelKind::TriangularLattice),
            "ginibre" | "gpp" => Ok(ModelKind::Ginibre),
            other => Err(Error::domain("ModelKind::from_str", format!("unknown model '{other}'"))),
        }
    }
}

fn default_palm_start() -> u32 {
    2
}

/// Stationary base-station process and its intensity (points per unit area).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NetworkModel {
    pub kind: ModelKind,
    pub intensity: f64,
    /// First Gamma shape used for the Ginibre reduced Palm radii
    /// (`Q_k ~ Gamma(k, c)` for `k ≥ start`). Ignored by other models.
    #[serde(default = "default_palm_start")]
    pub ginibre_palm_start: u32,
}

impl NetworkModel {
    pub fn new(kind: ModelKind, intensity: f64) -> Result<Self> {
        if !(intensity > 0.0 && intensity.is_finite()) {
            return Err(Error::domain("NetworkModel::new", format!("intensity {intensity} must be > 0")));
        }
        Ok(NetworkModel { kind, intensity, ginibre_palm_start: default_palm_start() })
    }

    pub fn ppp(intensity: f64) -> Result<Self> {
        Self::new(ModelKind::Ppp, intensity)
    }

    pub fn square(intensity: f64) -> Result<Self> {
        Self::new(ModelKind::SquareLattice, intensity)
    }

    pub fn triangular(intensity: f64) -> Result<Self> {
        Self::new(ModelKind::TriangularLattice, intensity)
    }

    /// Ginibre process with intensity `λ = c/π`.
    pub fn ginibre(intensity: f64) -> Result<Self> {
        Self::new(ModelKind::Ginibre, intensity)
    }

    pub fn with_palm_start(mut self, start: u32) -> Result<Self> {
        if start == 0 {
            return Err(Error::domain("NetworkModel::with_palm_start", "shape index starts at 1"));
        }
        self.ginibre_palm_start = start;
        Ok(self)
    }

    /// Ginibre parameter `c = λπ`.
    pub fn ginibre_c(&self) -> f64 {
        self.intensity * std::f64::consts::PI
    }

    /// Basis vectors of the lattice with this intensity.
    pub fn lattice_basis(&self) -> Option<([f64; 2], [f64; 2])> {
        match self.kind {
            ModelKind::SquareLattice => {
                let s = 1.0 / self.intensity.sqrt();
                Some(([s, 0.0], [0.0, s]))
            }
            ModelKind::TriangularLattice => {
                let s = (2.0 / (3f64.sqrt() * self.intensity)).sqrt();
                Some(([s, 0.0], [0.5 * s, 0.5 * s * 3f64.sqrt()]))
            }
            _ => None,
        }
    }
}

/// Truncation request for one sampler.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    /// Path-loss exponent the truncation error is measured against.
    pub alpha: f64,
    pub eps: f64,
    pub limit: Limit,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Limit {
    /// Smallest radius meeting `eps` (never below [`MIN_NORMALIZED_RADIUS`]).
    Auto,
    /// Explicit truncation radius.
    Radius(f64),
    /// Explicit Ginibre shell count `K`.
    Count(usize),
}

impl Budget {
    pub fn auto(alpha: f64) -> Self {
        Budget { alpha, eps: DEFAULT_TRUNCATION_EPS, limit: Limit::Auto }
    }

    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    pub fn radius(alpha: f64, r: f64) -> Self {
        Budget { alpha, eps: DEFAULT_TRUNCATION_EPS, limit: Limit::Radius(r) }
    }

    pub fn count(alpha: f64, k: usize) -> Self {
        Budget { alpha, eps: DEFAULT_TRUNCATION_EPS, limit: Limit::Count(k) }
    }
}

/// Scale-free truncation error for a normalized radius `ρ = r √λ`.
pub fn truncation_bound(alpha: f64, normalized_radius: f64) -> f64 {
    let half = 0.5 * alpha;
    let mean_r_alpha = gamma(1.0 + half) / std::f64::consts::PI.powf(half);
    mean_r_alpha * (2.0 * std::f64::consts::PI / (alpha - 1.0)).sqrt() * normalized_radius.powf(1.0 - alpha)
}

fn auto_normalized_radius(alpha: f64, eps: f64) -> f64 {
    let c = truncation_bound(alpha, 1.0);
    (c / eps).powf(1.0 / (alpha - 1.0)).max(MIN_NORMALIZED_RADIUS)
}

/// Distances from the origin, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceSet {
    values: Vec<f64>,
    truncation_radius: Option<f64>,
    count_cap: Option<usize>,
}

impl DistanceSet {
    /// Builds a set from arbitrary positive distances (sorted here).
    pub fn from_values(mut values: Vec<f64>) -> Result<Self> {
        if let Some(bad) = values.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
            return Err(Error::domain("DistanceSet::from_values", format!("distance {bad} must be positive")));
        }
        values.sort_by(f64::total_cmp);
        Ok(DistanceSet { values, truncation_radius: None, count_cap: None })
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

    pub fn truncation_radius(&self) -> Option<f64> {
        self.truncation_radius
    }

    pub fn count_cap(&self) -> Option<usize> {
        self.count_cap
    }

    pub fn scaled(&self, factor: f64) -> DistanceSet {
        DistanceSet {
            values: self.values.iter().map(|v| v * factor).collect(),
            truncation_radius: self.truncation_radius.map(|r| r * factor),
            count_cap: self.count_cap,
        }
    }
}

/// Splits off the nearest distance.
pub fn nearest_split(d: &DistanceSet) -> Result<(f64, DistanceSet)> {
    let (&r0, rest) = d.values.split_first().ok_or(Error::TooFewPoints { op: "nearest_split", needed: 1, got: 0 })?;
    Ok((r0, DistanceSet { values: rest.to_vec(), truncation_radius: d.truncation_radius, count_cap: d.count_cap }))
}

/// A resolved sampler: truncation chosen, lattice points and Gamma shells
/// precomputed. Cheap to share across threads (it holds no RNG).
#[derive(Debug, Clone)]
pub struct Sampler {
    model: NetworkModel,
    alpha: f64,
    radius: f64,
    body: Body,
}

#[derive(Debug, Clone)]
enum Body {
    Ppp,
    Lattice { basis: ([f64; 2], [f64; 2]), points: Vec<[f64; 2]>, palm_sq: Vec<f64> },
    Ginibre { shells: Vec<Gamma<f64>>, palm_shells: Vec<Gamma<f64>> },
}

impl Sampler {
    pub fn new(model: NetworkModel, budget: Budget) -> Result<Self> {
        let alpha = budget.alpha;
        if !(alpha > 2.0 && alpha.is_finite()) {
            return Err(Error::domain("Sampler::new", format!("alpha = {alpha} must exceed 2")));
        }
        if !(budget.eps > 0.0) {
            return Err(Error::domain("Sampler::new", format!("eps = {} must be positive", budget.eps)));
        }
        let sqrt_l = model.intensity.sqrt();
        let (radius, shells) = match (budget.limit, model.kind) {
            (Limit::Count(_), k) if k != ModelKind::Ginibre => {
                return Err(Error::domain("Sampler::new", "a shell count applies to the Ginibre model only"));
            }
            (Limit::Count(k), _) => {
                let c = model.ginibre_c();
                let r = ginibre_covered_radius(c, k);
                (r, Some(k))
            }
            (Limit::Radius(r), _) => {
                if !(r > 0.0 && r.is_finite()) {
                    return Err(Error::domain("Sampler::new", format!("radius {r} must be positive")));
                }
                (r, None)
            }
            (Limit::Auto, _) => (auto_normalized_radius(alpha, budget.eps) / sqrt_l, None),
        };
        let expected = model.intensity * std::f64::consts::PI * radius * radius;
        if !(expected <= MAX_EXPECTED_POINTS) {
            return Err(Error::Truncation {
                detail: format!("eps {:.1e} needs about {expected:.2e} points per realization", budget.eps),
            });
        }
        let bound = truncation_bound(alpha, radius * sqrt_l);
        if bound > budget.eps * (1.0 + 1e-9) {
            return Err(Error::Truncation {
                detail: format!(
                    "radius {radius:.4} leaves a truncation error {bound:.3e} above eps {:.1e}",
                    budget.eps
                ),
            });
        }
        let body = match model.kind {
            ModelKind::Ppp => Body::Ppp,
            ModelKind::SquareLattice | ModelKind::TriangularLattice => {
                let basis = model.lattice_basis().expect("lattice");
                let points = lattice_points(basis, radius);
                let mut palm_sq: Vec<f64> = points
                    .iter()
                    .map(|p| p[0] * p[0] + p[1] * p[1])
                    .filter(|&d2| d2 > 1e-24 && d2 <= radius * radius)
                    .collect();
                palm_sq.sort_by(f64::total_cmp);
                Body::Lattice { basis, points, palm_sq }
            }
            ModelKind::Ginibre => {
                let c = model.ginibre_c();
                let k = match shells {
                    Some(k) => k,
                    None => ginibre_shell_count(c, radius),
                };
                let scale = 1.0 / c;
                let mk = |shape: usize| Gamma::new(shape as f64, scale).expect("valid gamma");
                let start = model.ginibre_palm_start as usize;
                Body::Ginibre { shells: (1..=k).map(mk).collect(), palm_shells: (start..start + k).map(mk).collect() }
            }
        };
        Ok(Sampler { model, alpha, radius, body })
    }

    pub fn model(&self) -> &NetworkModel {
        &self.model
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Truncation radius (for Ginibre: the radius fully covered by the shells).
    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Ginibre shell count, if any.
    pub fn shell_count(&self) -> Option<usize> {
        match &self.body {
            Body::Ginibre { shells, .. } => Some(shells.len()),
            _ => None,
        }
    }

    /// Mean interference (unit-mean fading, path loss `‖x‖^{−α}`) of the
    /// points omitted by the truncation.
    pub fn far_field_mean(&self, palm: bool) -> f64 {
        let a = self.alpha;
        match &self.body {
            Body::Ginibre { shells, .. } => {
                // Σ_{k≥n} Γ(k−a/2)/Γ(k) = Γ(n−a/2) / ((a/2−1) Γ(n−1))
                let first_shape = if palm { self.model.ginibre_palm_start as usize } else { 1 };
                let n = (first_shape + shells.len()) as f64;
                let h = 0.5 * a;
                let c = self.model.ginibre_c();
                c.powf(h) * (lgamma(n - h) - lgamma(n - 1.0)).exp() / (h - 1.0)
            }
            _ => self.model.intensity * 2.0 * std::f64::consts::PI * self.radius.powf(2.0 - a) / (a - 2.0),
        }
    }

    /// Fills `out` with squared distances of one stationary realization
    /// (origin is a typical location). Order is unspecified except for the
    /// PPP, which comes out ascending.
    pub fn fill_squared<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut Vec<f64>) {
        out.clear();
        let r2 = self.radius * self.radius;
        match &self.body {
            Body::Ppp => {
                // squared radii of a planar PPP are the arrival times of a
                // 1-D Poisson process of rate λπ
                let rate = self.model.intensity * std::f64::consts::PI;
                let mut t = 0.0;
                loop {
                    let e: f64 = Exp1.sample(rng);
                    t += e / rate;
                    if t > r2 {
                        break;
                    }
                    out.push(t);
                }
            }
            Body::Lattice { basis, points, .. } => {
                let (b1, b2) = basis;
                let a: f64 = rng.random();
                let b: f64 = rng.random();
                let ux = a * b1[0] + b * b2[0];
                let uy = a * b1[1] + b * b2[1];
                for p in points {
                    let x = p[0] + ux;
                    let y = p[1] + uy;
                    let d2 = x * x + y * y;
                    if d2 <= r2 {
                        out.push(d2);
                    }
                }
            }
            Body::Ginibre { shells, .. } => {
                out.extend(shells.iter().map(|g| g.sample(rng)));
            }
        }
    }

    /// Reduced Palm counterpart of [`Sampler::fill_squared`]: the process seen
    /// from one of its points, that point removed.
    pub fn fill_palm_squared<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut Vec<f64>) {
        match &self.body {
            Body::Ppp => self.fill_squared(rng, out),
            Body::Lattice { palm_sq, .. } => {
                out.clear();
                out.extend_from_slice(palm_sq);
            }
            Body::Ginibre { palm_shells, .. } => {
                out.clear();
                out.extend(palm_shells.iter().map(|g| g.sample(rng)));
            }
        }
    }

    fn to_distance_set(&self, sq: &[f64]) -> DistanceSet {
        let mut values: Vec<f64> = sq.iter().map(|d2| d2.sqrt()).collect();
        values.sort_by(f64::total_cmp);
        DistanceSet { values, truncation_radius: Some(self.radius), count_cap: self.shell_count() }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> DistanceSet {
        let mut buf = Vec::new();
        self.fill_squared(rng, &mut buf);
        self.to_distance_set(&buf)
    }

    pub fn sample_palm<R: Rng + ?Sized>(&self, rng: &mut R) -> DistanceSet {
        let mut buf = Vec::new();
        self.fill_palm_squared(rng, &mut buf);
        self.to_distance_set(&buf)
    }
}

fn lattice_points(basis: ([f64; 2], [f64; 2]), radius: f64) -> Vec<[f64; 2]> {
    let (b1, b2) = basis;
    // any shift stays inside one cell, so pad by the cell diameter
    let diam = ((b1[0] + b2[0]).powi(2) + (b1[1] + b2[1]).powi(2)).sqrt();
    let reach = radius + diam;
    let min_len = b1[0].hypot(b1[1]).min(b2[0].hypot(b2[1]));
    let det = (b1[0] * b2[1] - b1[1] * b2[0]).abs();
    let n = (reach * b1[0].hypot(b1[1]).max(b2[0].hypot(b2[1])) / det).ceil() as i64 + 2;
    let n = n.max((reach / min_len).ceil() as i64 + 2);
    let mut pts = Vec::new();
    for i in -n..=n {
        for j in -n..=n {
            let x = i as f64 * b1[0] + j as f64 * b2[0];
            let y = i as f64 * b1[1] + j as f64 * b2[1];
            if x * x + y * y <= reach * reach {
                pts.push([x, y]);
            }
        }
    }
    pts
}

fn ginibre_shell_count(c: f64, radius: f64) -> usize {
    let x = c * radius * radius;
    let mut k = x.ceil().max(1.0) as usize;
    while gamma_lower_regularized(k, x) >= GINIBRE_SHELL_MISS {
        k += 1 + k / 64;
    }
    k
}

fn ginibre_covered_radius(c: f64, k: usize) -> f64 {
    // largest r with P(Gamma(k, c) < r²) below the miss probability
    let (mut lo, mut hi) = (0.0_f64, (k as f64 / c).sqrt());
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if gamma_lower_regularized(k, c * mid * mid) < GINIBRE_SHELL_MISS {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// `P(Gamma(k, 1) ≤ x)` for integer shape.
fn gamma_lower_regularized(k: usize, x: f64) -> f64 {
    let model = FadingModel::nakagami(k as u32).expect("positive shape");
    model.cdf(x / k as f64).unwrap_or(1.0)
}

/// Samples stationary distances (typical user at the origin).
pub fn sample_distances<R: Rng + ?Sized>(model: NetworkModel, budget: Budget, rng: &mut R) -> Result<DistanceSet> {
    Ok(Sampler::new(model, budget)?.sample(rng))
}

/// Samples reduced-Palm distances (a base station at the origin, removed).
pub fn sample_palm_distances<R: Rng + ?Sized>(model: NetworkModel, budget: Budget, rng: &mut R) -> Result<DistanceSet> {
    Ok(Sampler::new(model, budget)?.sample_palm(rng))
}
