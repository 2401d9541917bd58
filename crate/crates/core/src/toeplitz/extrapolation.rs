use super::{symbol_abs_power, toeplitz_min_eig};
use crate::error::{Error, Result};
use crate::estimate::{ConstantEstimate, Method};
use crate::num::richardson_tableau;

/// Below this multiple of `||a||_1`, `lambda_min` carries no reliable digits.
const CONDITIONING_GUARD: f64 = 1e-13;

/// Default dimension grid per `alpha`.
pub fn default_n_grid(alpha: u32) -> Vec<usize> {
    match alpha {
        1 => vec![64, 128, 256, 512],
        2 => vec![32, 64, 128, 256],
        3 => vec![16, 32, 64],
        _ => vec![16, 32, 64, 128],
    }
}

/// `n^{2 alpha} lambda_min(T_n(|1-t|^{2 alpha}))`, or `None` when the guard trips.
pub fn scaled_min_eig(alpha: u32, n: usize) -> Result<Option<f64>> {
    let symbol = symbol_abs_power(alpha);
    let lambda = match toeplitz_min_eig(&symbol, n) {
        Ok(v) => v,
        Err(Error::LossOfDefiniteness { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    if lambda < CONDITIONING_GUARD * symbol.l1_norm() {
        return Ok(None);
    }
    Ok(Some((n as f64).powi(2 * alpha as i32) * lambda))
}

/// `c_alpha` as the limit of `n^{2 alpha} lambda_min`, extrapolated in `1/n`.
pub fn c_alpha_by_extrapolation(alpha: u32, n_grid: &[usize]) -> Result<ConstantEstimate> {
    if !(1..=4).contains(&alpha) {
        return Err(Error::invalid("Toeplitz extrapolation supports alpha in 1..=4"));
    }
    if n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("n grid must be strictly ascending"));
    }
    if let Some(&n) = n_grid.iter().find(|&&n| n < 4 * alpha as usize) {
        return Err(Error::invalid(format!("n = {n} is below 4 alpha")));
    }
    let mut used = Vec::new();
    let mut skipped = Vec::new();
    let mut scaled = Vec::new();
    for &n in n_grid {
        match scaled_min_eig(alpha, n)? {
            Some(s) => {
                if alpha <= 2 && scaled.last().is_some_and(|&prev| s <= prev) {
                    return Err(Error::NotMonotone { n });
                }
                used.push(n);
                scaled.push(s);
            }
            None => skipped.push(n),
        }
    }
    if used.len() < 3 {
        return Err(Error::InsufficientGrid { usable: used.len() });
    }
    let h: Vec<f64> = used.iter().map(|&n| 1.0 / n as f64).collect();
    let tableau = richardson_tableau(&h, &scaled)?;
    Ok(ConstantEstimate::new(alpha, tableau.best(), Method::ToeplitzExtrapolation, tableau.error_estimate())
        .with_param("n_grid", used)
        .with_param("skipped", skipped)
        .with_param("scaled_values", scaled))
}
