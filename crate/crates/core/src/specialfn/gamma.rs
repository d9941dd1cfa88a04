use crate::scalar::Scalar;

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum<T: Scalar>(z: T) -> T {
    let mut sum = T::c(LANCZOS[0]);
    for (i, &coef) in LANCZOS.iter().enumerate().skip(1) {
        sum = sum + T::c(coef) / (z + T::from_int(i));
    }
    sum
}

/// Gamma function Γ(x) for real `x` (poles return ±∞ or NaN).
pub fn gamma<T: Scalar>(x: T) -> T {
    let half = T::c(0.5);
    if x < half {
        // reflection: Γ(x)Γ(1-x) = π / sin(πx)
        let s = (T::PI() * x).sin();
        if s == T::zero() {
            return T::nan();
        }
        return T::PI() / (s * gamma(T::one() - x));
    }
    if x == x.floor() && x <= T::c(30.0) {
        let mut acc = T::one();
        let mut k = T::c(2.0);
        while k < x {
            acc = acc * k;
            k = k + T::one();
        }
        return acc;
    }
    let z = x - T::one();
    let t = z + T::c(LANCZOS_G) + half;
    (T::c(2.0) * T::PI()).sqrt() * t.powf(z + half) * (-t).exp() * lanczos_sum(z)
}

/// Natural logarithm of |Γ(x)|.
pub fn lgamma<T: Scalar>(x: T) -> T {
    let half = T::c(0.5);
    if x < half {
        let s = (T::PI() * x).sin().abs();
        return T::PI().ln() - s.ln() - lgamma(T::one() - x);
    }
    let z = x - T::one();
    let t = z + T::c(LANCZOS_G) + half;
    T::c(0.5) * (T::c(2.0) * T::PI()).ln() + (z + half) * t.ln() - t + lanczos_sum(z).ln()
}
