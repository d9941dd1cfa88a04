//! Adaptive Gauss–Kronrod quadrature (7/15-point pair).

use crate::error::{Error, Result};
use crate::scalar::Scalar;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

const MAX_INTERVALS: usize = 4000;

fn gk15<T: Scalar, F: FnMut(T) -> T>(f: &mut F, a: T, b: T) -> (T, T) {
    let half = (b - a) * T::c(0.5);
    let mid = (a + b) * T::c(0.5);
    let fc = f(mid);
    let mut kron = fc * T::c(WGK[7]);
    let mut gauss = fc * T::c(WG[3]);
    for j in 0..7 {
        let dx = half * T::c(XGK[j]);
        let pair = f(mid - dx) + f(mid + dx);
        kron = kron + pair * T::c(WGK[j]);
        if j % 2 == 1 {
            gauss = gauss + pair * T::c(WG[j / 2]);
        }
    }
    let est = kron * half;
    let err = ((kron - gauss) * half).abs();
    (est, err)
}

/// Integrates `f` over the finite interval `[a, b]` to a mixed
/// absolute/relative tolerance `tol`.
pub fn integrate<T: Scalar, F: FnMut(T) -> T>(mut f: F, a: T, b: T, tol: T) -> Result<T> {
    if a == b {
        return Ok(T::zero());
    }
    let mut segs: Vec<(T, T, T, T)> = Vec::with_capacity(64);
    let (e0, r0) = gk15(&mut f, a, b);
    segs.push((a, b, e0, r0));
    let mut total = e0;
    let mut err = r0;
    // a floor keeps f32 from chasing tolerances below its epsilon
    let floor = T::epsilon() * T::c(50.0);
    while err > tol.max(floor) * total.abs().max(T::one()) {
        if !total.is_finite() {
            return Err(Error::Divergence { detail: "non-finite integrand".into() });
        }
        if segs.len() >= MAX_INTERVALS {
            // accept when the remaining error is relatively small
            if err <= T::c(1e3) * tol.max(floor) * total.abs().max(T::one()) {
                break;
            }
            return Err(Error::Divergence {
                detail: format!("adaptive quadrature did not reach tolerance (error {})", err),
            });
        }
        let (idx, _) = segs.iter().enumerate().fold(
            (0, T::neg_infinity()),
            |acc, (i, s)| {
                if s.3 > acc.1 {
                    (i, s.3)
                } else {
                    acc
                }
            },
        );
        let (sa, sb, se, sr) = segs.swap_remove(idx);
        let m = (sa + sb) * T::c(0.5);
        let (e1, r1) = gk15(&mut f, sa, m);
        let (e2, r2) = gk15(&mut f, m, sb);
        total = total - se + e1 + e2;
        err = err - sr + r1 + r2;
        segs.push((sa, m, e1, r1));
        segs.push((m, sb, e2, r2));
    }
    if !total.is_finite() {
        return Err(Error::Divergence { detail: "non-finite integral".into() });
    }
    Ok(total)
}

/// Integrates `f` over `[a, ∞)` through the map `x = a + t / (1 - t)`.
pub fn integrate_to_infinity<T: Scalar, F: FnMut(T) -> T>(mut f: F, a: T, tol: T) -> Result<T> {
    integrate(
        |t: T| {
            let one = T::one();
            if t >= one {
                return T::zero();
            }
            let u = one - t;
            let x = a + t / u;
            let v = f(x) / (u * u);
            if v.is_finite() {
                v
            } else {
                T::zero()
            }
        },
        T::zero(),
        T::one(),
        tol,
    )
}
