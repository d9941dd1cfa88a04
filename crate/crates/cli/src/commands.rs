//! Subcommands and their execution.

use cellsir::analytic::{self, from_db, to_db, GinibreQuadrature};
use cellsir::montecarlo::{self, CcdfEstimate, SimConfig};
use cellsir::{EfirResult, Error, FadingModel, ModelKind, NetworkModel};
use clap::{Args, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::figures;
use crate::grid::{parse_count, parse_db_grid};
use crate::table::Table;

pub const DEFAULT_SAMPLES: u64 = 1_000_000;
pub const DEFAULT_EFIR_SAMPLES: u64 = 100_000;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(Error::Truncation { .. }) => 4,
            CliError::Core(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "usage error: {s}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Poisson success probability under Rayleigh fading.
    PsPpp(PsPppArgs),
    /// Simulated generalized MISR of a network model.
    Misr(MisrArgs),
    /// Generalized MISR of the Poisson network and its bounds.
    GenMisr(GenMisrArgs),
    /// Expected fading-to-interference ratio.
    Efir(EfirArgs),
    /// Simulated SIR ccdf.
    Simulate(SimulateArgs),
    /// Gain curve G(θ) with its asymptotic levels.
    Gains(GainsArgs),
    /// Shifted-PPP approximation against simulation.
    Asappp(AsapppArgs),
    /// Data files and a gnuplot script for all figures.
    Figures(figures::FiguresArgs),
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct PsPppArgs {
    #[arg(long, default_value_t = 4.0)]
    pub alpha: f64,
    /// Threshold grid in dB: min:step:max or a comma list.
    #[arg(long, default_value = "-10:1:30", allow_hyphen_values = true)]
    pub theta_db: String,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct NetArgs {
    #[arg(long, default_value = "ppp")]
    pub model: ModelKind,
    #[arg(long, default_value_t = 4.0)]
    pub alpha: f64,
    #[arg(long, default_value = "rayleigh")]
    pub fading: FadingModel,
    /// Nakagami shape (overrides --fading).
    #[arg(long)]
    #[serde(skip)]
    pub m: Option<u32>,
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_parser = parse_count)]
    pub samples: Option<u64>,
    #[arg(long, default_value_t = cellsir::pointprocess::DEFAULT_TRUNCATION_EPS)]
    pub truncation_eps: f64,
}

impl NetArgs {
    fn resolve(&mut self, default_samples: u64) -> CliResult<()> {
        if let Some(m) = self.m.take() {
            self.fading = FadingModel::nakagami(m)?;
        }
        self.samples.get_or_insert(default_samples);
        if !(self.alpha > 2.0 && self.alpha.is_finite()) {
            return Err(Error::Domain { op: "alpha", detail: format!("{} must exceed 2", self.alpha) }.into());
        }
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(Error::Domain { op: "lambda", detail: format!("{} must be positive", self.lambda) }.into());
        }
        Ok(())
    }

    pub fn config(&self, workers: usize) -> CliResult<SimConfig> {
        let model = NetworkModel::new(self.model, self.lambda)?;
        let cfg = SimConfig::new(model, self.fading, self.alpha, self.samples.unwrap_or(DEFAULT_SAMPLES), self.seed)
            .with_eps(self.truncation_eps)
            .with_workers(workers);
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct MisrArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub net: NetArgs,
    /// Highest moment order.
    #[arg(long, default_value_t = 1)]
    pub n: usize,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct GenMisrArgs {
    #[arg(long, default_value_t = 4.0)]
    pub alpha: f64,
    #[arg(long, default_value = "rayleigh")]
    pub fading: FadingModel,
    #[arg(long)]
    #[serde(skip)]
    pub m: Option<u32>,
    /// Highest order.
    #[arg(long, default_value_t = 10)]
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EfirChoice {
    Auto,
    ClosedForm,
    Bounds,
    Quadrature,
    MonteCarlo,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct EfirArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub net: NetArgs,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: EfirChoice,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SimulateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub net: NetArgs,
    #[arg(long, default_value = "-10:1:30", allow_hyphen_values = true)]
    pub theta_db: String,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct GainsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub net: NetArgs,
    #[arg(long, default_value = "-10:1:30", allow_hyphen_values = true)]
    pub theta_db: String,
    /// Palm samples for the Monte Carlo EFIR (lattices).
    #[arg(long, value_parser = parse_count)]
    pub efir_samples: Option<u64>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct AsapppArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub net: NetArgs,
    #[arg(long, default_value = "-10:1:15", allow_hyphen_values = true)]
    pub theta_db: String,
    /// Shift in dB; estimated from the simulated MISR when omitted.
    #[arg(long)]
    pub gain_db: Option<f64>,
}

fn grid(s: &str) -> CliResult<Vec<f64>> {
    parse_db_grid(s).map_err(CliError::Usage)
}

fn config_json(cmd: &Command) -> serde_json::Value {
    serde_json::to_value(cmd).expect("serializable command")
}

impl Command {
    /// Fills defaults so that the serialized command fully determines the output.
    pub fn resolve(&mut self) -> CliResult<()> {
        match self {
            Command::PsPpp(_) => Ok(()),
            Command::Misr(a) => a.net.resolve(DEFAULT_SAMPLES),
            Command::GenMisr(a) => {
                if let Some(m) = a.m.take() {
                    a.fading = FadingModel::nakagami(m)?;
                }
                Ok(())
            }
            Command::Efir(a) => a.net.resolve(DEFAULT_EFIR_SAMPLES),
            Command::Simulate(a) => a.net.resolve(DEFAULT_SAMPLES),
            Command::Gains(a) => {
                a.efir_samples.get_or_insert(DEFAULT_EFIR_SAMPLES);
                a.net.resolve(DEFAULT_SAMPLES)
            }
            Command::Asappp(a) => a.net.resolve(DEFAULT_SAMPLES),
            Command::Figures(a) => a.resolve(),
        }
    }

    pub fn run(&self, workers: usize) -> CliResult<Table> {
        let cfg = config_json(self);
        match self {
            Command::PsPpp(a) => ps_ppp(a, cfg),
            Command::Misr(a) => misr(a, cfg, workers),
            Command::GenMisr(a) => gen_misr(a, cfg),
            Command::Efir(a) => efir(a, cfg, workers),
            Command::Simulate(a) => simulate(a, cfg, workers),
            Command::Gains(a) => gains(a, cfg, workers),
            Command::Asappp(a) => asappp(a, cfg, workers),
            Command::Figures(a) => figures::run(a, cfg, workers),
        }
    }
}

fn ps_ppp(a: &PsPppArgs, cfg: serde_json::Value) -> CliResult<Table> {
    let delta = analytic::delta_of_alpha(a.alpha)?;
    let sinc = cellsir::specialfn::sincd(delta)?;
    let mut t = Table::new(&["theta_db", "p_s", "tail_asymptote"], cfg);
    for db in grid(&a.theta_db)? {
        let theta = from_db(db);
        t.push(vec![db, analytic::ps_ppp_rayleigh(theta, delta)?, sinc * theta.powf(-delta)]);
    }
    Ok(t)
}

fn misr(a: &MisrArgs, cfg: serde_json::Value, workers: usize) -> CliResult<Table> {
    if a.n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let sim = a.net.config(workers)?;
    let delta = sim.delta();
    let est = montecarlo::estimate_isr_moments(&sim, a.n)?;
    let mut t = Table::new(&["n", "misr_n", "mean_power_n", "std_err", "misr_n_ppp", "g0_db"], cfg);
    for e in est {
        let ppp = analytic::gen_misr_ppp(e.n, delta, a.net.fading)?;
        let g0 = analytic::g0(e.n as u32, e.misr_n, ppp)?;
        t.push(vec![e.n as f64, e.misr_n, e.mean_power_n, e.std_err, ppp, to_db(g0)]);
    }
    Ok(t)
}

fn gen_misr(a: &GenMisrArgs, cfg: serde_json::Value) -> CliResult<Table> {
    let delta = analytic::delta_of_alpha(a.alpha)?;
    if a.n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let mut t = Table::new(&["n", "misr_n", "lower", "asym_small_delta", "asym_large_delta"], cfg);
    for n in 1..=a.n {
        let v = analytic::gen_misr_ppp(n, delta, a.fading)?;
        let (lo, s, l) = if n >= 2 {
            let b = analytic::gen_misr_bounds(n, delta, a.fading)?;
            (b.lower, b.asymptotic_small_delta, b.asymptotic_large_delta)
        } else {
            (v, delta * a.fading.moment(1.0)?, v)
        };
        t.push(vec![n as f64, v, lo, s, l]);
    }
    Ok(t)
}

/// EFIR by the method appropriate for the model.
pub fn efir_for(net: &NetArgs, choice: EfirChoice, samples: u64, workers: usize) -> CliResult<EfirResult> {
    let delta = analytic::delta_of_alpha(net.alpha)?;
    let choice = match (choice, net.model) {
        (EfirChoice::Auto, ModelKind::Ppp) => EfirChoice::ClosedForm,
        (EfirChoice::Auto, ModelKind::Ginibre) => EfirChoice::Quadrature,
        (EfirChoice::Auto, _) => EfirChoice::MonteCarlo,
        (c, _) => c,
    };
    let unsupported = |what: &str| Err(CliError::Usage(format!("{what} is not available for the {} model", net.model)));
    match choice {
        EfirChoice::ClosedForm if net.model == ModelKind::Ppp => Ok(analytic::efir_ppp(delta)?),
        EfirChoice::ClosedForm => unsupported("a closed form"),
        EfirChoice::Bounds if net.model == ModelKind::SquareLattice && net.fading == FadingModel::Rayleigh => {
            Ok(analytic::lattice_efir_bounds(delta)?)
        }
        EfirChoice::Bounds => unsupported("the lattice bound (square lattice, Rayleigh)"),
        EfirChoice::Quadrature if net.model == ModelKind::Ginibre => {
            let o = GinibreQuadrature::default();
            let c = net.lambda * std::f64::consts::PI;
            Ok(analytic::efir_ginibre(delta, net.fading, c, &o)?)
        }
        EfirChoice::Quadrature => unsupported("product quadrature"),
        _ => {
            let mut n = net.clone();
            n.samples = Some(samples);
            Ok(montecarlo::estimate_efir(&n.config(workers)?)?)
        }
    }
}

fn efir(a: &EfirArgs, cfg: serde_json::Value, workers: usize) -> CliResult<Table> {
    let delta = analytic::delta_of_alpha(a.net.alpha)?;
    let e = efir_for(&a.net, a.method, a.net.samples.unwrap_or(DEFAULT_EFIR_SAMPLES), workers)?;
    let g = analytic::g_infty(e.value, delta)?;
    let mut cols = vec!["efir", "efir_pow_delta", "g_inf", "g_inf_db"];
    let mut row = vec![e.value, e.value.powf(delta), g, to_db(g)];
    if let Some(se) = e.std_err {
        cols.push("std_err");
        row.push(se);
    }
    if let (Some(lo), Some(hi)) = (e.lower, e.upper) {
        cols.extend(["lower", "upper"]);
        row.extend([lo, hi]);
    }
    let mut t = Table::new(&cols, cfg);
    t.note("method", serde_json::to_value(e.method).expect("enum"));
    t.push(row);
    Ok(t)
}

fn ccdf(net: &NetArgs, theta_db: &str, workers: usize) -> CliResult<(Vec<f64>, CcdfEstimate)> {
    let db = grid(theta_db)?;
    let sim = net.config(workers)?.with_grid_db(&db);
    Ok((db, montecarlo::estimate_sir_ccdf(&sim)?))
}

fn simulate(a: &SimulateArgs, cfg: serde_json::Value, workers: usize) -> CliResult<Table> {
    let delta = analytic::delta_of_alpha(a.net.alpha)?;
    let (db, est) = ccdf(&a.net, &a.theta_db, workers)?;
    let mut t = Table::new(&["theta_db", "p_hat", "half_width", "lo", "hi", "scaled", "reliable", "ps_ppp"], cfg);
    for (i, &d) in db.iter().enumerate() {
        let theta = est.theta_grid[i];
        let (lo, hi) = est.interval(i);
        t.push(vec![
            d,
            est.p_hat[i],
            est.half_width[i],
            lo,
            hi,
            theta.powf(delta) * est.p_hat[i],
            if est.reliable(i) { 1.0 } else { 0.0 },
            analytic::ps_ppp_rayleigh(theta, delta)?,
        ]);
    }
    if let Ok(s) = montecarlo::tail_slope(&est) {
        t.note("tail_slope", s);
    }
    t.note("samples", est.samples_used);
    Ok(t)
}

/// `G0` of the model relative to the PPP, from simulated MISR of order m.
pub fn g0_for(net: &NetArgs, workers: usize) -> CliResult<f64> {
    let delta = analytic::delta_of_alpha(net.alpha)?;
    let m = net.fading.m() as usize;
    let ppp = analytic::gen_misr_ppp(m, delta, net.fading)?;
    if net.model == ModelKind::Ppp {
        return Ok(1.0);
    }
    let est = montecarlo::estimate_misr_n(&net.config(workers)?, m)?;
    Ok(analytic::g0(m as u32, est.misr_n, ppp)?)
}

/// Whether the inversion of `est` at level `p` used reliable points.
pub fn inversion_reliable(est: &CcdfEstimate, p: f64) -> bool {
    let j = est.p_hat.partition_point(|&v| v > p).min(est.len() - 1);
    est.reliable(j)
}

fn gains(a: &GainsArgs, cfg: serde_json::Value, workers: usize) -> CliResult<Table> {
    let delta = analytic::delta_of_alpha(a.net.alpha)?;
    let (_, est) = ccdf(&a.net, &a.theta_db, workers)?;
    let curve = montecarlo::gain_curve(&est, delta)?;
    let g0 = g0_for(&a.net, workers)?;
    let e = efir_for(&a.net, EfirChoice::Auto, a.efir_samples.unwrap_or(DEFAULT_EFIR_SAMPLES), workers)?;
    let ginf = analytic::g_infty(e.value, delta)?;
    let mut t = Table::new(&["theta_db", "g_db", "g0_db", "ginf_db", "reliable"], cfg);
    for &(theta, g) in &curve.points {
        let p = analytic::ps_ppp_rayleigh(theta, delta)?;
        let ok = inversion_reliable(&est, p);
        t.push(vec![to_db(theta), to_db(g), to_db(g0), to_db(ginf), if ok { 1.0 } else { 0.0 }]);
    }
    t.note("skipped_theta_db", curve.skipped.iter().map(|&x| to_db(x)).collect::<Vec<_>>());
    if !curve.points.is_empty() {
        t.note("g_min_db", to_db(curve.min));
        t.note("g_max_db", to_db(curve.max));
        t.note("below_max_of_asymptotic_gains", curve.max <= g0.max(ginf));
    }
    Ok(t)
}

fn asappp(a: &AsapppArgs, cfg: serde_json::Value, workers: usize) -> CliResult<Table> {
    let delta = analytic::delta_of_alpha(a.net.alpha)?;
    let (db, est) = ccdf(&a.net, &a.theta_db, workers)?;
    let g = match a.gain_db {
        Some(d) => from_db(d),
        None => g0_for(&a.net, workers)?,
    };
    let mut t = Table::new(&["theta_db", "asappp", "p_hat", "abs_err"], cfg);
    let mut worst: f64 = 0.0;
    for (i, &d) in db.iter().enumerate() {
        let approx = montecarlo::asappp(est.theta_grid[i], g, delta)?;
        let err = (approx - est.p_hat[i]).abs();
        worst = worst.max(err);
        t.push(vec![d, approx, est.p_hat[i], err]);
    }
    t.note("gain_db", to_db(g));
    t.note("max_abs_err", worst);
    Ok(t)
}
