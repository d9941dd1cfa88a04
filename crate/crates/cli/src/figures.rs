//! Figure data files and the gnuplot script that draws them.

use std::fs;
use std::path::{Path, PathBuf};

use cellsir::analytic::{self, from_db, to_db, GinibreQuadrature};
use cellsir::montecarlo;
use cellsir::{FadingModel, ModelKind};
use clap::Args;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::commands::{efir_for, g0_for, CliResult, EfirChoice, NetArgs, DEFAULT_EFIR_SAMPLES};
use crate::grid::{parse_count, parse_db_grid};
use crate::table::{Format, Table};

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct FiguresArgs {
    /// Directory for the data files and the script.
    #[arg(long, default_value = "figures")]
    pub out_dir: PathBuf,
    /// Samples per ccdf and MISR estimate.
    #[arg(long, value_parser = parse_count)]
    pub samples: Option<u64>,
    /// Palm samples per Monte Carlo EFIR.
    #[arg(long, value_parser = parse_count)]
    pub efir_samples: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

const FIGURE_SAMPLES: u64 = 200_000;

impl FiguresArgs {
    pub fn resolve(&mut self) -> CliResult<()> {
        self.samples.get_or_insert(FIGURE_SAMPLES);
        self.efir_samples.get_or_insert(DEFAULT_EFIR_SAMPLES);
        Ok(())
    }

    fn net(&self, model: ModelKind, alpha: f64) -> NetArgs {
        NetArgs {
            model,
            alpha,
            fading: FadingModel::Rayleigh,
            m: None,
            lambda: 1.0,
            seed: self.seed,
            samples: self.samples,
            truncation_eps: cellsir::pointprocess::DEFAULT_TRUNCATION_EPS,
        }
    }

    fn efir_n(&self) -> u64 {
        self.efir_samples.unwrap_or(DEFAULT_EFIR_SAMPLES)
    }
}

fn db_grid(s: &str) -> Vec<f64> {
    parse_db_grid(s).expect("fixed grid")
}

fn with_figure(cfg: &Value, fig: &str) -> Value {
    let mut c = cfg.clone();
    c["figure"] = json!(fig);
    c
}

fn fig1(a: &FiguresArgs, cfg: &Value, workers: usize) -> CliResult<Table> {
    let db = db_grid("-10:1:20");
    let net = a.net(ModelKind::TriangularLattice, 4.0);
    let est = montecarlo::estimate_sir_ccdf(&net.config(workers)?.with_grid_db(&db))?;
    let g0 = g0_for(&net, workers)?;
    let mut t = Table::new(&["theta_db", "ppp", "triangular", "ppp_shifted_by_g0", "exp_bound"], with_figure(cfg, "1"));
    for (i, &d) in db.iter().enumerate() {
        let th = from_db(d);
        t.push(vec![
            d,
            analytic::ps_ppp_rayleigh(th, 0.5)?,
            est.p_hat[i],
            montecarlo::asappp(th, g0, 0.5)?,
            (-th).exp(),
        ]);
    }
    t.note("g0_db", to_db(g0));
    Ok(t)
}

fn fig4(a: &FiguresArgs, cfg: &Value, workers: usize) -> CliResult<Table> {
    let db = db_grid("-10:1:30");
    let net = a.net(ModelKind::SquareLattice, 4.0);
    let est = montecarlo::estimate_sir_ccdf(&net.config(workers)?.with_grid_db(&db))?;
    let efir = efir_for(&net, EfirChoice::MonteCarlo, a.efir_n(), workers)?;
    let b = analytic::lattice_efir_bounds(0.5_f64)?;
    let (lo, hi) = (b.lower.unwrap_or(b.value), b.upper.unwrap_or(b.value));
    let mut t = Table::new(
        &["theta_db", "scaled_square", "sqrt_efir", "sqrt_lower", "sqrt_upper", "scaled_ppp"],
        with_figure(cfg, "4"),
    );
    for (i, &d) in db.iter().enumerate() {
        let th = from_db(d);
        t.push(vec![
            d,
            th.sqrt() * est.p_hat[i],
            efir.value.sqrt(),
            lo.sqrt(),
            hi.sqrt(),
            th.sqrt() * analytic::ps_ppp_rayleigh(th, 0.5)?,
        ]);
    }
    Ok(t)
}

fn fig5(a: &FiguresArgs, cfg: &Value, workers: usize) -> CliResult<Table> {
    let db = db_grid("-10:1:30");
    let mut t = Table::new(
        &["theta_db", "g_square_db", "g0_square_db", "ginf_square_db", "g_tri_db", "g0_tri_db", "ginf_tri_db"],
        with_figure(cfg, "5"),
    );
    let mut cols = Vec::new();
    for kind in [ModelKind::SquareLattice, ModelKind::TriangularLattice] {
        let net = a.net(kind, 4.0);
        let est = montecarlo::estimate_sir_ccdf(&net.config(workers)?.with_grid_db(&db))?;
        let g0 = g0_for(&net, workers)?;
        let ginf = analytic::g_infty(efir_for(&net, EfirChoice::MonteCarlo, a.efir_n(), workers)?.value, 0.5)?;
        let mut g = Vec::new();
        for &d in &db {
            let p = analytic::ps_ppp_rayleigh(from_db(d), 0.5)?;
            g.push(match montecarlo::inverse_ccdf(&est, p) {
                Ok(x) if crate::commands::inversion_reliable(&est, p) => to_db(x) - d,
                _ => f64::NAN,
            });
        }
        cols.push((g, to_db(g0), to_db(ginf)));
    }
    for (i, &d) in db.iter().enumerate() {
        t.push(vec![d, cols[0].0[i], cols[0].1, cols[0].2, cols[1].0[i], cols[1].1, cols[1].2]);
    }
    Ok(t)
}

const FIG6_ALPHAS: [f64; 6] = [3.0, 3.5, 4.0, 4.5, 5.0, 6.0];
const FIG8_ALPHAS: [f64; 5] = [3.0, 3.5, 4.0, 4.5, 5.0];

fn fig6(a: &FiguresArgs, cfg: &Value, workers: usize) -> CliResult<Table> {
    let mut t = Table::new(&["alpha", "g0_square", "ginf_square", "g0_tri", "ginf_tri"], with_figure(cfg, "6"));
    for &alpha in &FIG6_ALPHAS {
        let mut row = vec![alpha];
        for kind in [ModelKind::SquareLattice, ModelKind::TriangularLattice] {
            let net = a.net(kind, alpha);
            row.push(g0_for(&net, workers)?);
            let e = efir_for(&net, EfirChoice::MonteCarlo, a.efir_n(), workers)?;
            row.push(analytic::g_infty(e.value, 2.0 / alpha)?);
        }
        t.push(row);
    }
    Ok(t)
}

fn fig7(a: &FiguresArgs, cfg: &Value, workers: usize) -> CliResult<Table> {
    let db = db_grid("-10:1:30");
    let net = a.net(ModelKind::Ginibre, 4.0);
    let est = montecarlo::estimate_sir_ccdf(&net.config(workers)?.with_grid_db(&db))?;
    let efir =
        analytic::efir_ginibre(0.5_f64, FadingModel::Rayleigh, std::f64::consts::PI, &GinibreQuadrature::default())?;
    let mut t = Table::new(&["theta_db", "scaled_ginibre", "sqrt_efir", "scaled_ppp"], with_figure(cfg, "7"));
    for (i, &d) in db.iter().enumerate() {
        let th = from_db(d);
        t.push(vec![d, th.sqrt() * est.p_hat[i], efir.value.sqrt(), th.sqrt() * analytic::ps_ppp_rayleigh(th, 0.5)?]);
    }
    Ok(t)
}

fn fig8(a: &FiguresArgs, cfg: &Value, workers: usize) -> CliResult<Table> {
    let mut t = Table::new(&["alpha", "g0_ginibre", "ginf_ginibre", "half_alpha"], with_figure(cfg, "8"));
    for &alpha in &FIG8_ALPHAS {
        let net = a.net(ModelKind::Ginibre, alpha);
        let g0 = g0_for(&net, workers)?;
        let e = efir_for(&net, EfirChoice::Quadrature, a.efir_n(), workers)?;
        t.push(vec![alpha, g0, analytic::g_infty(e.value, 2.0 / alpha)?, 0.5 * alpha]);
    }
    Ok(t)
}

const SCRIPT: &str = r#"# gnuplot script for the figure data files in this directory
set datafile separator ','
set key autotitle columnhead
set terminal pngcairo size 800,600
set grid

set output 'fig1.png'
set xlabel 'theta (dB)'
set ylabel 'P(SIR > theta)'
plot 'fig1.csv' using 1:2 with lines lw 2, '' using 1:3 with lines lw 2 dt 2, '' using 1:4 with lines dt 3, '' using 1:5 with lines dt 4

set output 'fig4.png'
set ylabel 'theta^delta p_s(theta)'
plot 'fig4.csv' using 1:2 with lines lw 2, '' using 1:3 with lines dt 2, '' using 1:4 with lines dt 3, '' using 1:5 with lines dt 3, '' using 1:6 with lines

set output 'fig5.png'
set ylabel 'G (dB)'
plot 'fig5.csv' using 1:2 with lines lw 2, '' using 1:3 with lines dt 2, '' using 1:4 with lines dt 2, '' using 1:5 with lines lw 2, '' using 1:6 with lines dt 3, '' using 1:7 with lines dt 3

set output 'fig6.png'
set xlabel 'alpha'
set ylabel 'gain'
plot 'fig6.csv' using 1:2 with linespoints, '' using 1:3 with linespoints, '' using 1:4 with linespoints, '' using 1:5 with linespoints

set output 'fig7.png'
set xlabel 'theta (dB)'
set ylabel 'theta^delta p_s(theta)'
plot 'fig7.csv' using 1:2 with lines lw 2, '' using 1:3 with lines dt 2, '' using 1:4 with lines

set output 'fig8.png'
set xlabel 'alpha'
set ylabel 'gain'
plot 'fig8.csv' using 1:2 with linespoints, '' using 1:3 with linespoints, '' using 1:4 with lines dt 2
"#;

type Builder = fn(&FiguresArgs, &Value, usize) -> CliResult<Table>;

pub fn run(a: &FiguresArgs, cfg: Value, workers: usize) -> CliResult<Table> {
    fs::create_dir_all(&a.out_dir)?;
    let builders: [(&str, Builder); 6] = [("1", fig1), ("4", fig4), ("5", fig5), ("6", fig6), ("7", fig7), ("8", fig8)];
    let mut index = Table::new(&["figure", "rows", "columns"], cfg.clone());
    for (name, build) in builders {
        let start = std::time::Instant::now();
        let t = build(a, &cfg, workers)?;
        write_file(&a.out_dir.join(format!("fig{name}.csv")), &t, start.elapsed().as_secs_f64())?;
        index.push(vec![name.parse().expect("figure number"), t.rows.len() as f64, t.columns.len() as f64]);
    }
    fs::write(a.out_dir.join("figures.gp"), SCRIPT)?;
    index.note("out_dir", a.out_dir.display().to_string());
    Ok(index)
}

fn write_file(path: &Path, t: &Table, secs: f64) -> CliResult<()> {
    let mut f = std::io::BufWriter::new(fs::File::create(path)?);
    t.write(&mut f, Format::Csv, secs)?;
    Ok(())
}
