use super::{dot, norm2};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct PowerResult {
    pub lambda: f64,
    /// `||A v - lambda v||` for the final unit iterate.
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    pub vector: Vec<f64>,
}

/// Dominant eigenvalue of a symmetric positive semidefinite operator.
///
/// Starts from the normalized all-ones vector and stops once successive
/// Rayleigh quotients agree to `tol` relative. Non-convergence is reported
/// through [`PowerResult::converged`] with the last iterate.
pub fn power_iteration<F>(mut apply: F, m: usize, tol: f64, max_iter: usize) -> Result<PowerResult>
where
    F: FnMut(&[f64], &mut [f64]),
{
    if m == 0 || max_iter == 0 {
        return Err(Error::invalid("power iteration needs m >= 1 and max_iter >= 1"));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("power iteration tolerance must be positive"));
    }
    let mut v = vec![1.0 / (m as f64).sqrt(); m];
    let mut w = vec![0.0; m];
    let mut previous: Option<f64> = None;
    let mut lambda = 0.0;
    let mut residual = f64::INFINITY;
    for it in 1..=max_iter {
        apply(&v, &mut w);
        lambda = dot(&v, &w);
        residual = w
            .iter()
            .zip(&v)
            .fold(0.0, |acc, (wi, vi)| acc + (wi - lambda * vi).powi(2))
            .sqrt();
        let wn = norm2(&w);
        if wn == 0.0 {
            return Ok(PowerResult { lambda: 0.0, residual: 0.0, iterations: it, converged: true, vector: v });
        }
        let done = previous.is_some_and(|p| (lambda - p).abs() <= tol * lambda.abs()) || residual == 0.0;
        v.iter_mut().zip(&w).for_each(|(vi, wi)| *vi = wi / wn);
        if done {
            return Ok(PowerResult { lambda, residual, iterations: it, converged: true, vector: v });
        }
        previous = Some(lambda);
    }
    Ok(PowerResult { lambda, residual, iterations: max_iter, converged: false, vector: v })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity() {
        let r = power_iteration(|x, y| y.copy_from_slice(x), 5, 1e-12, 100).unwrap();
        assert!(r.converged);
        assert!((r.lambda - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rank_one() {
        let f = [1.0, 1.0];
        let r = power_iteration(
            |x, y| {
                let s = dot(&f, x);
                y.iter_mut().zip(&f).for_each(|(yi, fi)| *yi = s * fi);
            },
            2,
            1e-12,
            100,
        )
        .unwrap();
        assert!((r.lambda - 2.0).abs() < 1e-14);
    }

    #[test]
    fn diagonal() {
        let d = [1.0, 2.0, 3.0];
        let r = power_iteration(
            |x, y| y.iter_mut().enumerate().for_each(|(i, yi)| *yi = d[i] * x[i]),
            3,
            1e-13,
            10_000,
        )
        .unwrap();
        assert!(r.converged);
        assert!((r.lambda - 3.0).abs() < 1e-10, "{}", r.lambda);
    }

    #[test]
    fn reports_non_convergence() {
        let d = [1.0, 0.999_999];
        let r = power_iteration(
            |x, y| y.iter_mut().enumerate().for_each(|(i, yi)| *yi = d[i] * x[i]),
            2,
            1e-300,
            3,
        )
        .unwrap();
        assert!(!r.converged);
        assert_eq!(r.iterations, 3);
    }
}
