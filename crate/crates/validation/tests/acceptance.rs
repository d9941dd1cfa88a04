//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

use std::f64::consts::PI;
use std::time::Instant;

use cellsir::analytic::{self, from_db, to_db, GinibreQuadrature};
use cellsir::montecarlo::{self, CcdfEstimate, SimConfig};
use cellsir::{rdp, FadingModel, NetworkModel, Result};

const SEED: u64 = 20_240_601;

type Check = Result<(bool, String)>;
type Criterion<'a> = (&'static str, &'static str, Box<dyn Fn() -> Check + 'a>);

fn ppp() -> NetworkModel {
    NetworkModel::ppp(1.0).unwrap()
}

fn square() -> NetworkModel {
    NetworkModel::square(1.0).unwrap()
}

fn triangular() -> NetworkModel {
    NetworkModel::triangular(1.0).unwrap()
}

fn ginibre() -> NetworkModel {
    NetworkModel::ginibre(1.0).unwrap()
}

fn cfg(model: NetworkModel, fading: FadingModel, alpha: f64, samples: u64) -> SimConfig {
    SimConfig::new(model, fading, alpha, samples, SEED)
}

fn rayleigh(model: NetworkModel, alpha: f64, samples: u64) -> SimConfig {
    cfg(model, FadingModel::Rayleigh, alpha, samples)
}

fn db_range(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn sinc(x: f64) -> f64 {
    (PI * x).sin() / (PI * x)
}

/// Monte Carlo results shared by several criteria.
struct Shared {
    ppp_ccdf: CcdfEstimate,
    tri_ccdf: CcdfEstimate,
    tri_misr: f64,
}

fn c1(s: &Shared) -> Check {
    let exact = analytic::ps_ppp_rayleigh(1.0, 0.5)?;
    let closed_err = (exact - 1.0 / (1.0 + PI / 4.0)).abs();
    let n = s.ppp_ccdf.samples_used as f64;
    let mut worst = 0.0f64;
    for (&t, &p_hat) in s.ppp_ccdf.theta_grid.iter().zip(&s.ppp_ccdf.p_hat) {
        let p = analytic::ps_ppp_rayleigh(t, 0.5)?;
        let z = (p_hat - p).abs() / (p * (1.0 - p) / n).sqrt();
        worst = worst.max(z);
    }
    Ok((
        closed_err <= 1e-10 && worst <= 3.0,
        format!("closed-form error {closed_err:.1e}; max |z| = {worst:.2} over {} points", s.ppp_ccdf.len()),
    ))
}

fn c2(s: &Shared) -> Check {
    let ppp = analytic::misr_ppp(4.0)?;
    let g0_db = to_db(analytic::g0(1, s.tri_misr, ppp)?);
    let pass = ppp == 1.0 && (0.447..=0.467).contains(&s.tri_misr) && (g0_db - 3.4).abs() <= 0.2;
    Ok((
        pass,
        format!(
            "misr_ppp(4) = {ppp}; triangular MISR = {:.4} (want [0.447, 0.467]); G0 = {g0_db:.2} dB (want 3.4 +/- 0.2)",
            s.tri_misr
        ),
    ))
}

fn c3() -> Check {
    let mut worst = 0.0f64;
    for alpha in [6.0, 4.0] {
        let delta = 2.0 / alpha;
        let est = montecarlo::estimate_isr_moments(&rayleigh(ppp(), alpha, 1_000_000), 3)?;
        for e in &est {
            let exact = analytic::isr_moment_ppp(e.n, delta, FadingModel::Rayleigh)?;
            worst = worst.max((e.mean_power_n - exact).abs() / e.std_err);
        }
    }
    let mut bound_ok = true;
    let mut eq_err = 0.0f64;
    for delta in [1.0f64 / 3.0, 0.5, 0.75] {
        for n in 2..=12 {
            let exact = analytic::gen_misr_ppp(n, delta, FadingModel::Rayleigh)?;
            let lower = analytic::gen_misr_bounds(n, delta, FadingModel::Rayleigh)?.lower;
            bound_ok &= lower <= exact * (1.0 + 1e-12);
            if n == 2 {
                eq_err = eq_err.max((exact - lower).abs());
            }
        }
    }
    Ok((
        worst <= 3.0 && bound_ok && eq_err <= 1e-10,
        format!("max |z| = {worst:.2} (n = 1..3, delta = 1/3, 1/2); lower bound respected: {bound_ok}; n = 2 gap {eq_err:.1e}"),
    ))
}

fn c4() -> Check {
    let exact = analytic::efir_ppp(0.5)?.value;
    let closed_err = (exact - 4.0 / (PI * PI)).abs();
    let mut est = Vec::new();
    for lambda in [0.5, 1.0, 2.0] {
        let e = montecarlo::estimate_efir(&rayleigh(NetworkModel::ppp(lambda)?, 4.0, 200_000))?;
        est.push((lambda, e.value, e.std_err.unwrap_or(0.0)));
    }
    let z_exact = est.iter().map(|&(_, v, se)| (v - exact).abs() / se).fold(0.0, f64::max);
    let mut z_pair = 0.0f64;
    for i in 0..est.len() {
        for j in i + 1..est.len() {
            let (a, b) = (est[i], est[j]);
            z_pair = z_pair.max((a.1 - b.1).abs() / (a.2 * a.2 + b.2 * b.2).sqrt());
        }
    }
    let vals: Vec<String> = est.iter().map(|(l, v, se)| format!("{l}: {v:.4}+/-{se:.4}")).collect();
    Ok((
        closed_err <= 1e-12 && z_exact <= 3.0 && z_pair <= 3.0,
        format!("closed-form error {closed_err:.1e}; MC by lambda [{}]; max |z| vs exact {z_exact:.2}, pairwise {z_pair:.2}", vals.join(", ")),
    ))
}

fn c5() -> Check {
    let lower = analytic::lattice_efir_bounds(0.5)?.value;
    let mc = montecarlo::estimate_efir(&rayleigh(square(), 4.0, 200_000))?.value;
    let ccdf = montecarlo::estimate_sir_ccdf(&rayleigh(square(), 4.0, 1_000_000).with_grid_db(&[25.0]))?;
    let scaled = from_db(25.0f64).sqrt() * ccdf.p_hat[0];
    let rel = (scaled / mc.sqrt() - 1.0).abs();
    Ok((
        (1.28..=1.30).contains(&lower) && (1.35..=1.45).contains(&mc) && rel <= 0.10,
        format!(
            "lower bound {lower:.4}; MC EFIR {mc:.4}; theta^delta p at 25 dB {scaled:.4} vs EFIR^delta {:.4} ({:.1}%)",
            mc.sqrt(),
            100.0 * rel
        ),
    ))
}

fn c6() -> Check {
    let quad = analytic::efir_ginibre(0.5f64, FadingModel::Rayleigh, 1.0, &GinibreQuadrature::default())?.value;
    let mc = montecarlo::estimate_efir(&rayleigh(ginibre(), 4.0, 200_000))?;
    let se = mc.std_err.unwrap_or(0.0);
    let (q, m) = (quad.sqrt(), mc.value.sqrt());
    let range = 0.86..=0.92;
    Ok((
        range.contains(&q) && range.contains(&m) && (quad - mc.value).abs() <= 3.0 * se,
        format!("sqrt EFIR: quadrature {q:.4}, MC {m:.4}; |diff| = {:.2} sigma", (quad - mc.value).abs() / se),
    ))
}

fn c7() -> Check {
    let grid = db_range(10.0, 30.0, 21);
    let mut pass = true;
    let mut parts = Vec::new();
    for alpha in [3.0, 4.0] {
        for (name, model) in [("ppp", ppp()), ("square", square()), ("tri", triangular()), ("ginibre", ginibre())] {
            let est = montecarlo::estimate_sir_ccdf(&rayleigh(model, alpha, 200_000).with_grid_db(&grid))?;
            let slope = montecarlo::tail_slope(&est)?;
            let ok = (slope + 2.0 / alpha).abs() <= 0.05;
            pass &= ok;
            parts.push(format!("{name}@{alpha}: {slope:.3}"));
        }
    }
    Ok((pass, format!("slopes (want -0.667 / -0.5 +/- 0.05) {}", parts.join(", "))))
}

fn c8(s: &Shared) -> Check {
    let i = s.ppp_ccdf.len() - 1;
    let theta = s.ppp_ccdf.theta_grid[i];
    let scaled = theta.sqrt() * s.ppp_ccdf.p_hat[i];
    let rel = (scaled / sinc(0.5) - 1.0).abs();
    Ok((
        rel <= 0.05,
        format!(
            "theta^delta p at {:.0} dB = {scaled:.4} vs sinc = {:.4} ({:.1}%)",
            to_db(theta),
            sinc(0.5),
            100.0 * rel
        ),
    ))
}

fn c9(s: &Shared) -> Check {
    let reference: Vec<f64> = db_range(-5.0, 10.0, 31).into_iter().map(from_db).collect();
    let tri = montecarlo::gain_curve_on(&s.tri_ccdf, 0.5, &reference)?;
    let (lo, hi) = (to_db(tri.min), to_db(tri.max));
    let tri_ok = tri.skipped.is_empty() && lo >= 3.1 && hi <= 3.7;

    let grid = db_range(-10.0, 30.0, 81);
    let sq = montecarlo::estimate_sir_ccdf(&rayleigh(square(), 4.0, 1_000_000).with_grid_db(&grid))?;
    let curve = montecarlo::gain_curve(&sq, 0.5)?;
    let &(t_end, g_end) = curve.points.last().expect("gain curve is empty");
    let efir = montecarlo::estimate_efir(&rayleigh(square(), 4.0, 200_000))?.value;
    let g_inf = analytic::g_infty(efir, 0.5)?;
    let rel = (g_end / g_inf - 1.0).abs();
    Ok((
        tri_ok && rel <= 0.15,
        format!(
            "triangular G in [{lo:.2}, {hi:.2}] dB over [-5, 10] dB; square G({:.1} dB) = {g_end:.3} vs g_infty {g_inf:.3} ({:.1}%)",
            to_db(t_end),
            100.0 * rel
        ),
    ))
}

fn c10(s: &Shared) -> Check {
    let g0 = analytic::g0(1, s.tri_misr, analytic::misr_ppp(4.0)?)?;
    let mut worst = 0.0f64;
    for (&t, &p) in s.tri_ccdf.theta_grid.iter().zip(&s.tri_ccdf.p_hat) {
        let db = to_db(t);
        if (-10.0 - 1e-9..=15.0 + 1e-9).contains(&db) {
            worst = worst.max((p - montecarlo::asappp(t, g0, 0.5)?).abs());
        }
    }
    Ok((worst < 0.04, format!("max |p_hat - p_ppp(theta/G0)| = {worst:.4} with G0 = {g0:.3}")))
}

fn c11() -> Check {
    let samples = montecarlo::sample_rdps(&rayleigh(ppp(), 4.0, 200_000), 0.3)?;
    let lam = rdp::empirical_mean_measure(&samples, 0.5)?;
    let g_a = rdp::empirical_pair_correlation(&samples, 0.6, 0.8, 0.05, 0.05)?;
    let g_b = rdp::empirical_pair_correlation(&samples, 0.45, 0.9, 0.05, 0.05)?;

    let f = |x: f64| 1.0 / (1.0 + x.powi(4));
    let exact = rdp::pgfl_rdp_ppp(f, 1e-12)?;
    let (mc, se) = montecarlo::estimate_rdp_pgfl(&rayleigh(ppp(), 4.0, 200_000), f)?;
    let z = (mc - exact).abs() / se;

    let mut id_err = 0.0f64;
    for delta in [0.25, 0.5, 0.75] {
        for db in db_range(-20.0, 30.0, 26) {
            let t = from_db(db);
            let p = analytic::ps_ppp_rayleigh(t, delta)?;
            id_err = id_err.max((rdp::poisson_approx_ps(t, delta)? - (1.0 - 1.0 / p).exp()).abs());
        }
    }
    let pass = (lam - 3.0).abs() <= 0.05
        && (g_a - 2.0).abs() <= 0.1
        && (g_b - 2.0).abs() <= 0.1
        && z <= 3.0
        && id_err <= 1e-10;
    Ok((
        pass,
        format!("Lambda([0.5,1)) = {lam:.4}; g(0.6,0.8) = {g_a:.3}, g(0.45,0.9) = {g_b:.3}; PGFL |z| = {z:.2}; identity error {id_err:.1e}"),
    ))
}

fn c12() -> Check {
    let theta = from_db(30.0);
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, model) in [("ppp", ppp()), ("square", square())] {
        for fading in [FadingModel::Rayleigh, FadingModel::nakagami(2)?] {
            let est = montecarlo::estimate_signal_tail(&cfg(model, fading, 4.0, 1_000_000), theta)?;
            let ratio = est.p / analytic::signal_tail(theta, 1.0, fading, 0.5)?;
            pass &= (0.9..=1.1).contains(&ratio);
            parts.push(format!("{name}/m={}: {ratio:.3}", fading.m()));
        }
    }
    Ok((pass, format!("ratios {}", parts.join(", "))))
}

fn c13() -> Check {
    let theta = from_db(30.0);
    let c = rayleigh(ppp(), 4.0, 1_000_000);
    let max_sir = montecarlo::estimate_max_sir_tail(&c, theta)?.p;
    let nearest = montecarlo::estimate_sir_ccdf(&c.clone().with_grid(vec![theta]))?.p_hat[0];
    let ratio = max_sir / nearest;
    Ok(((0.9..=1.1).contains(&ratio), format!("max-SIR {max_sir:.5} / nearest {nearest:.5} = {ratio:.4}")))
}

fn c14() -> Check {
    let base = rayleigh(ginibre(), 4.0, 30_000).with_grid_db(&db_range(-10.0, 20.0, 7));
    let a = montecarlo::estimate_sir_ccdf(&base.clone().with_workers(1))?;
    let b = montecarlo::estimate_sir_ccdf(&base.clone().with_workers(1))?;
    let c = montecarlo::estimate_sir_ccdf(&base.clone().with_workers(4))?;
    let m1 = montecarlo::estimate_isr_moments(&base.clone().with_workers(1), 2)?;
    let m4 = montecarlo::estimate_isr_moments(&base.clone().with_workers(3), 2)?;
    let e1 = montecarlo::estimate_efir(&base.clone().with_workers(1))?;
    let e4 = montecarlo::estimate_efir(&base.clone().with_workers(4))?;
    let rerun = a == b;
    let diff = a
        .p_hat
        .iter()
        .zip(&c.p_hat)
        .map(|(x, y)| (x - y).abs())
        .chain(m1.iter().zip(&m4).map(|(x, y)| (x.mean_power_n - y.mean_power_n).abs()))
        .chain(std::iter::once((e1.value - e4.value).abs()))
        .fold(0.0, f64::max);
    Ok((
        rerun && diff <= 1e-12,
        format!("rerun bit-identical: {rerun}; max difference across worker counts {diff:.1e}"),
    ))
}

fn fig6() -> Check {
    let alphas = [3.0, 3.5, 4.0, 4.5, 5.0, 6.0];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, model) in [("square", square()), ("tri", triangular()), ("ginibre", ginibre())] {
        let mut g = Vec::new();
        for alpha in alphas {
            let misr = montecarlo::estimate_misr_n(&rayleigh(model, alpha, 100_000), 1)?.misr_n;
            g.push(analytic::misr_ppp(alpha)? / misr);
        }
        let mean = g.iter().sum::<f64>() / g.len() as f64;
        let spread = g.iter().map(|v| (v / mean - 1.0).abs()).fold(0.0, f64::max);
        pass &= spread <= 0.10;
        let (lo, hi) = g.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
        parts.push(format!("{name} G0 {lo:.3}..{hi:.3} (+/-{:.1}%)", 100.0 * spread));
    }
    Ok((pass, parts.join("; ")))
}

fn fig8() -> Check {
    let mut pass = true;
    let mut parts = Vec::new();
    for alpha in [3.0, 4.0, 5.0] {
        let delta = 2.0 / alpha;
        let efir: f64 = analytic::efir_ginibre(delta, FadingModel::Rayleigh, 1.0, &GinibreQuadrature::default())?.value;
        let r = analytic::g_infty(efir, delta)? / (alpha / 2.0);
        pass &= (0.9..=1.1).contains(&r);
        parts.push(format!("alpha {alpha}: {r:.3}"));
    }
    Ok((pass, format!("Ginibre G_inf/(alpha/2) {}", parts.join(", "))))
}

fn main() {
    let start = Instant::now();
    let shared = (|| -> Result<Shared> {
        let ppp_ccdf =
            montecarlo::estimate_sir_ccdf(&rayleigh(ppp(), 4.0, 1_000_000).with_grid_db(&db_range(-10.0, 30.0, 20)))?;
        let tri_ccdf = montecarlo::estimate_sir_ccdf(
            &rayleigh(triangular(), 4.0, 1_000_000).with_grid_db(&db_range(-10.0, 30.0, 81)),
        )?;
        let tri_misr = montecarlo::estimate_misr_n(&rayleigh(triangular(), 4.0, 1_000_000), 1)?.misr_n;
        Ok(Shared { ppp_ccdf, tri_ccdf, tri_misr })
    })()
    .expect("shared simulations failed");

    let checks: Vec<Criterion> = vec![
        ("1", "PPP success probability", Box::new(|| c1(&shared))),
        ("2", "MISR values", Box::new(|| c2(&shared))),
        ("3", "generalized MISR", Box::new(c3)),
        ("4", "PPP EFIR", Box::new(c4)),
        ("5", "square-lattice EFIR", Box::new(c5)),
        ("6", "Ginibre EFIR", Box::new(c6)),
        ("7", "tail exponent", Box::new(c7)),
        ("8", "PPP tail constant", Box::new(|| c8(&shared))),
        ("9", "gain curve", Box::new(|| c9(&shared))),
        ("10", "ASAPPP quality", Box::new(|| c10(&shared))),
        ("11", "RDP measures", Box::new(c11)),
        ("12", "signal tail", Box::new(c12)),
        ("13", "max-SIR tail", Box::new(c13)),
        ("14", "determinism", Box::new(c14)),
        ("fig6", "G0 flat in alpha", Box::new(fig6)),
        ("fig8", "Ginibre G_inf vs alpha/2", Box::new(fig8)),
    ];

    let mut failed = Vec::new();
    for (id, name, check) in &checks {
        let t = Instant::now();
        let (pass, detail) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
        let tag = if pass { "PASS" } else { "FAIL" };
        println!("{tag} [{id}] {name}: {detail} ({:.1} s)", t.elapsed().as_secs_f64());
        if !pass {
            failed.push(*id);
        }
    }
    println!(
        "acceptance: {} passed, {} failed{} in {:.0} s",
        checks.len() - failed.len(),
        failed.len(),
        if failed.is_empty() { String::new() } else { format!(" ({})", failed.join(", ")) },
        start.elapsed().as_secs_f64()
    );
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
