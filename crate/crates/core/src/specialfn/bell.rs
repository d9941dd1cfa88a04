use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest order accepted by the Bell-polynomial routines.
pub const MAX_BELL_ORDER: usize = 32;

/// Table `B[i][j] = B_{i,j}(x₁, …, x_{i−j+1})` for `0 ≤ j ≤ i ≤ n`, built
/// from `B_{i,j} = Σ_{l=1}^{i−j+1} C(i−1, l−1) x_l B_{i−l, j−1}`.
///
/// `x` must hold at least `n` entries (`x[0] = x₁`).
pub fn bell_table<T: Scalar>(n: usize, x: &[T]) -> Result<Vec<Vec<T>>> {
    if n > MAX_BELL_ORDER {
        return Err(Error::domain("bell_table", format!("order {n} exceeds {MAX_BELL_ORDER}")));
    }
    if x.len() < n {
        return Err(Error::domain("bell_table", format!("need {n} arguments, got {}", x.len())));
    }
    let binom = binomials::<T>(n);
    let mut b = vec![vec![T::zero(); n + 1]; n + 1];
    b[0][0] = T::one();
    for i in 1..=n {
        for j in 1..=i {
            let mut acc = T::zero();
            for l in 1..=(i - j + 1) {
                let prev = b[i - l][j - 1];
                if prev != T::zero() {
                    acc = acc + binom[i - 1][l - 1] * x[l - 1] * prev;
                }
            }
            b[i][j] = acc;
        }
    }
    Ok(b)
}

fn binomials<T: Scalar>(n: usize) -> Vec<Vec<T>> {
    let mut c = vec![vec![T::zero(); n + 1]; n + 1];
    for i in 0..=n {
        c[i][0] = T::one();
        for j in 1..=i {
            c[i][j] = c[i - 1][j - 1] + if j < i { c[i - 1][j] } else { T::zero() };
        }
    }
    c
}

/// Partial (incomplete) exponential Bell polynomial `B_{n,k}(x₁, …, x_{n−k+1})`.
pub fn incomplete_bell<T: Scalar>(n: usize, k: usize, x: &[T]) -> Result<T> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::domain("incomplete_bell", format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    if x.len() != n - k + 1 {
        return Err(Error::domain("incomplete_bell", format!("expected {} arguments, got {}", n - k + 1, x.len())));
    }
    // Entries x_l with l > n−k+1 never reach B_{n,k}; pad with zeros.
    let mut padded = x.to_vec();
    padded.resize(n, T::zero());
    Ok(bell_table(n, &padded)?[n][k])
}
