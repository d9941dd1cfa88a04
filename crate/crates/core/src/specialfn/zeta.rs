use crate::error::{Error, Result};
use crate::scalar::Scalar;

// B_{2j} / (2j)! for j = 1..10
const BERNOULLI_OVER_FACT: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
    43_867.0 / 5_109_094_217_170_944_000.0,
    -174_611.0 / 802_857_662_698_291_200_000.0,
];

/// Hurwitz zeta `ζ(s, a) = Σ_{k≥0} (k + a)^{−s}` for real `s > 1`, `a > 0`,
/// by Euler–Maclaurin summation with the cutoff `N ≥ max(15, s)`.
pub fn hurwitz_zeta<T: Scalar>(s: T, a: T) -> Result<T> {
    if !(s > T::one()) || !(a > T::zero()) {
        return Err(Error::domain("hurwitz_zeta", format!("need s > 1 and a > 0, got s={s}, a={a}")));
    }
    let n_cut = 15usize.max(s.to_usize().unwrap_or(15).saturating_add(1));
    let mut sum = T::zero();
    for k in (0..n_cut).rev() {
        sum = sum + (T::from_int(k) + a).powf(-s);
    }
    let x = T::from_int(n_cut) + a;
    let one = T::one();
    let xs = x.powf(-s);
    sum = sum + x * xs / (s - one) + xs * T::c(0.5);
    // rising factorial s(s+1)…(s+2j−2) times x^{−s−2j+1}
    let mut fac = s * xs / x;
    let x2 = x * x;
    for (j, &b) in BERNOULLI_OVER_FACT.iter().enumerate() {
        let term = T::c(b) * fac;
        sum = sum + term;
        if term.abs() <= T::epsilon() * sum.abs() {
            break;
        }
        let jj = T::from_int(2 * j + 1);
        fac = fac * (s + jj) * (s + jj + one) / x2;
    }
    Ok(sum)
}

/// Riemann zeta `ζ(s)` for real `s > 1`.
pub fn riemann_zeta<T: Scalar>(s: T) -> Result<T> {
    hurwitz_zeta(s, T::one()).map_err(|_| Error::domain("riemann_zeta", format!("s = {s} must exceed 1")))
}

/// Dirichlet beta `β(s) = Σ_{k≥0} (−1)^k (2k+1)^{−s}` for real `s > 1`.
pub fn dirichlet_beta<T: Scalar>(s: T) -> Result<T> {
    if !(s > T::one()) {
        return Err(Error::domain("dirichlet_beta", format!("s = {s} must exceed 1")));
    }
    if s >= T::c(20.0) {
        // (2k+1)^{−s} collapses fast; 4^{−s} scaling below would underflow
        let mut sum = T::zero();
        for k in (0..40).rev() {
            let t = T::from_int(2 * k + 1).powf(-s);
            sum = if k % 2 == 0 { sum + t } else { sum - t };
        }
        return Ok(sum);
    }
    let quarter = T::c(0.25);
    let lo = hurwitz_zeta(s, quarter)?;
    let hi = hurwitz_zeta(s, T::c(0.75))?;
    Ok(T::c(4.0).powf(-s) * (lo - hi))
}

/// Square-lattice Epstein zeta `Z(x) = Σ_{(i,j)≠0} (i² + j²)^{−x/2} = 4 ζ(x/2) β(x/2)`.
pub fn epstein_z<T: Scalar>(x: T) -> Result<T> {
    if !(x > T::c(2.0)) {
        return Err(Error::domain("epstein_z", format!("x = {x} must exceed 2")));
    }
    let s = x * T::c(0.5);
    Ok(T::c(4.0) * riemann_zeta(s)? * dirichlet_beta(s)?)
}
