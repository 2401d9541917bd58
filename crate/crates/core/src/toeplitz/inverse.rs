use std::collections::BTreeMap;

use super::{symbol_abs_power, BandedToeplitz, LaurentSymbol};
use crate::error::{Error, Result};
use crate::green::green_eval;
use crate::num::norm2;

/// Entries of `T_n^{-1}` at one-based index pairs `(j, k)`.
///
/// Each distinct column `k` is obtained from one band-Cholesky solve of
/// `T x = e_k`; the residual is checked relative to `||T||_1 ||x||_2`.
pub fn toeplitz_inverse_entries(symbol: &LaurentSymbol, n: usize, pairs: &[(usize, usize)]) -> Result<Vec<f64>> {
    if let Some(&(j, k)) = pairs.iter().find(|&&(j, k)| j == 0 || k == 0 || j > n || k > n) {
        return Err(Error::invalid(format!("index pair ({j}, {k}) outside 1..={n}")));
    }
    let t = BandedToeplitz::new(symbol.clone(), n)?;
    let chol = t.cholesky(0.0)?;
    let mut columns: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for &(_, k) in pairs {
        if columns.contains_key(&k) {
            continue;
        }
        columns.insert(k, solve_column(&t, &chol, k)?);
    }
    Ok(pairs.iter().map(|&(j, k)| columns[&k][j - 1]).collect())
}

fn solve_column(t: &BandedToeplitz, chol: &super::banded::BandCholesky, k: usize) -> Result<Vec<f64>> {
    let n = t.n();
    let mut e = vec![0.0; n];
    e[k - 1] = 1.0;
    let x = chol.solve(&e);
    let mut r = t.mul_vec(&x);
    r[k - 1] -= 1.0;
    let bound = 1e-10 * (t.symbol().l1_norm() * norm2(&x)).max(1.0);
    let res = norm2(&r);
    if !(res <= bound) {
        return Err(Error::StructureViolation(format!(
            "inverse column {k}: residual {res:e} exceeds {bound:e}"
        )));
    }
    Ok(x)
}

/// `[n z]`: the smallest integer in `1..=n` that is `>= n z`, for `z = i / (m + 1)`.
fn grid_index(n: usize, i: usize, m: usize) -> usize {
    ((n * i + m) / (m + 1)).clamp(1, n)
}

/// Sup over the interior grid `z_i = i/(m+1)` of `|approx(x, y) - G_alpha(x, y)|`.
pub fn kernel_sup_error<F>(alpha: u32, grid_m: usize, mut approx: F) -> Result<f64>
where
    F: FnMut(usize, usize) -> Result<f64>,
{
    let z = |i: usize| i as f64 / (grid_m + 1) as f64;
    let mut sup: f64 = 0.0;
    for i in 1..=grid_m {
        for j in 1..=grid_m {
            let d = (approx(i, j)? - green_eval(alpha, z(i), z(j))?).abs();
            sup = sup.max(d);
        }
    }
    Ok(sup)
}

/// Sup-distance between `n^{1 - 2 alpha} [T_n^{-1}]_{[nx],[ny]}` and the Green kernel.
pub fn compare_inverse_to_green(alpha: u32, n: usize, grid_m: usize) -> Result<f64> {
    if alpha == 0 || grid_m == 0 {
        return Err(Error::invalid("need alpha >= 1 and a nonempty grid"));
    }
    let t = BandedToeplitz::new(symbol_abs_power(alpha), n)?;
    let chol = t.cholesky(0.0)?;
    let mut columns: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for i in 1..=grid_m {
        let k = grid_index(n, i, grid_m);
        if !columns.contains_key(&k) {
            columns.insert(k, solve_column(&t, &chol, k)?);
        }
    }
    let scale = (n as f64).powi(1 - 2 * alpha as i32);
    kernel_sup_error(alpha, grid_m, |i, j| {
        let (row, col) = (grid_index(n, i, grid_m), grid_index(n, j, grid_m));
        Ok(scale * columns[&col][row - 1])
    })
}
