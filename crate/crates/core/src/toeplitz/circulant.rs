use std::f64::consts::PI;

use num_complex::Complex64;

use super::LaurentSymbol;
#[cfg(test)]
use super::symbol_diff_power;
use crate::error::{Error, Result};
use crate::num::Matrix;

/// Cyclic version `C_n(a)` of a banded Toeplitz matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Circulant {
    n: usize,
    symbol: LaurentSymbol,
}

impl Circulant {
    pub fn new(symbol: LaurentSymbol, n: usize) -> Result<Self> {
        if n < 2 * symbol.half_width() + 1 {
            return Err(Error::invalid(format!(
                "circulant of size {n} cannot hold a band of half-width {}",
                symbol.half_width()
            )));
        }
        Ok(Circulant { n, symbol })
    }

    /// `(a_0, a_{-1}, ..., a_{-r}, 0, ..., 0, a_r, ..., a_1)`.
    pub fn first_row(&self) -> Vec<f64> {
        let n = self.n as i64;
        (0..n)
            .map(|k| {
                let off = if k <= n / 2 { -k } else { n - k };
                self.symbol.coeff(off)
            })
            .collect()
    }

    pub fn to_dense(&self) -> Matrix {
        let row = self.first_row();
        let n = self.n;
        Matrix::from_fn(n, n, |j, k| row[(k + n - j) % n])
    }
}

/// `|1 - omega_n^j|^alpha = (2 sin(pi j / n))^alpha` for `j = 1..=n`.
///
/// The values are those of `C_n((1-t)^alpha)` when `n >= alpha + 1`; the
/// formula itself is meaningful for every `n >= 1`.
pub fn circulant_singular_values(alpha: u32, n: usize) -> Result<Vec<f64>> {
    if alpha == 0 || n == 0 {
        return Err(Error::invalid("need alpha >= 1 and n >= 1"));
    }
    Ok((1..=n)
        .map(|j| {
            if j == n {
                return 0.0;
            }
            // fold onto the first half so that j and n - j give identical bits
            let jj = j.min(n - j);
            (2.0 * (PI * jj as f64 / n as f64).sin()).powi(alpha as i32)
        })
        .collect())
}

/// `(4 sin^2(pi / n))^{alpha / 2}`.
pub fn smallest_nonzero_circulant_singular_value(alpha: u32, n: usize) -> f64 {
    (4.0 * (PI / n as f64).sin().powi(2)).powf(f64::from(alpha) / 2.0)
}

/// `C_n((1 - t)^alpha) u`, computed as `alpha` rounds of `u_j - u_{j-1}` (cyclic).
pub fn cyclic_difference(u: &[Complex64], alpha: u32) -> Vec<Complex64> {
    let n = u.len();
    let mut v = u.to_vec();
    for _ in 0..alpha {
        v = (0..n).map(|j| v[j] - v[(j + n - 1) % n]).collect();
    }
    v
}

#[cfg(test)]
fn diff_circulant(alpha: u32, n: usize) -> Result<Circulant> {
    Circulant::new(symbol_diff_power(alpha), n)
}
