//! Conditioning of the test "do the samples `y_1..y_n` come from a polynomial
//! of degree `< alpha`": the `alpha`-th difference operator and its
//! Moore-Penrose norm.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::estimate::{ConstantEstimate, Method};
use crate::num::{binomial, richardson_tableau, svd_jacobi, sym_eigen, Matrix};
use crate::toeplitz::{symbol_abs_power, toeplitz_min_eig, BandedToeplitz};

const TWO_PATH_TOL: f64 = 1e-9;

/// `nabla`: row `k < n - alpha` holds `(-1)^i C(alpha, i)` at column `k + i`;
/// the last `alpha` rows are zero.
#[derive(Debug, Clone)]
pub struct DifferenceOperator {
    pub alpha: u32,
    pub n: usize,
    pub matrix: Matrix,
}

impl DifferenceOperator {
    pub fn new(alpha: u32, n: usize) -> Result<Self> {
        if alpha == 0 || n <= alpha as usize {
            return Err(Error::invalid("need alpha >= 1 and n > alpha"));
        }
        let a = alpha as usize;
        let stencil: Vec<f64> = (0..=a)
            .map(|i| if i % 2 == 0 { 1.0 } else { -1.0 } * binomial(u64::from(alpha), i as i64))
            .collect();
        let matrix = Matrix::from_fn(n, n, |k, j| {
            if k < n - a && j >= k && j <= k + a {
                stencil[j - k]
            } else {
                0.0
            }
        });
        Ok(DifferenceOperator { alpha, n, matrix })
    }

    /// The `n - alpha` nonzero rows.
    pub fn active_block(&self) -> Matrix {
        let m = self.n - self.alpha as usize;
        Matrix::from_fn(m, self.n, |i, j| self.matrix[(i, j)])
    }

    pub fn apply(&self, y: &[f64]) -> Vec<f64> {
        self.matrix.mul_vec(y)
    }
}

/// `alpha`-th forward differences, length `n - alpha`.
fn differences(y: &[Complex64], alpha: u32) -> Vec<Complex64> {
    let mut v = y.to_vec();
    for _ in 0..alpha {
        v = v.windows(2).map(|w| w[0] - w[1]).collect();
    }
    v
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().fold(0.0, |acc, z| acc + z.norm_sqr()).sqrt()
}

/// `D(y) = ||(delta_1, ..., delta_{n-alpha})||_2`.
pub fn residual_d(alpha: u32, y: &[Complex64]) -> Result<f64> {
    if alpha == 0 || y.len() <= alpha as usize {
        return Err(Error::invalid("need alpha >= 1 and more than alpha samples"));
    }
    Ok(norm(&differences(y, alpha)))
}

/// Orthogonal projection of `y` onto polynomial samples of degree `< alpha`.
#[derive(Debug, Clone)]
pub struct BestFit {
    pub fit: Vec<Complex64>,
    pub residual: Vec<Complex64>,
    /// Orthonormal basis of the polynomial samples.
    pub basis: Vec<Vec<f64>>,
    pub distance: f64,
}

/// Discretely orthonormal polynomials of degree `< alpha` on `1..=n`,
/// built by Gram-Schmidt with one reorthogonalization pass on the centred
/// and scaled abscissae `(2j - n - 1)/(n - 1)`.
fn orthonormal_polynomials(alpha: u32, n: usize) -> Vec<Vec<f64>> {
    let t: Vec<f64> = (1..=n)
        .map(|j| if n > 1 { (2.0 * j as f64 - n as f64 - 1.0) / (n as f64 - 1.0) } else { 0.0 })
        .collect();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for s in 0..alpha as i32 {
        let mut v: Vec<f64> = t.iter().map(|x| x.powi(s)).collect();
        for _ in 0..2 {
            for q in &basis {
                let c = crate::num::dot(q, &v);
                v.iter_mut().zip(q).for_each(|(vi, qi)| *vi -= c * qi);
            }
        }
        let nv = crate::num::norm2(&v);
        if nv > 0.0 {
            v.iter_mut().for_each(|x| *x /= nv);
            basis.push(v);
        }
    }
    basis
}

fn project(basis: &[Vec<f64>], y: &[Complex64]) -> Vec<Complex64> {
    let mut fit = vec![Complex64::new(0.0, 0.0); y.len()];
    for q in basis {
        let c = q.iter().zip(y).fold(Complex64::new(0.0, 0.0), |acc, (qi, yi)| acc + yi * qi);
        fit.iter_mut().zip(q).for_each(|(f, qi)| *f += c * qi);
    }
    fit
}

pub fn best_fit(alpha: u32, y: &[Complex64]) -> Result<BestFit> {
    let n = y.len();
    if alpha == 0 || n < alpha as usize {
        return Err(Error::invalid("need alpha >= 1 and at least alpha samples"));
    }
    let basis = orthonormal_polynomials(alpha, n);
    let mut fit = project(&basis, y);
    let mut residual: Vec<Complex64> = y.iter().zip(&fit).map(|(a, b)| a - b).collect();
    // second pass removes what rounding left in the span
    let correction = project(&basis, &residual);
    for ((f, r), c) in fit.iter_mut().zip(residual.iter_mut()).zip(&correction) {
        *f += c;
        *r -= c;
    }
    let distance = norm(&residual);
    Ok(BestFit { fit, residual, basis, distance })
}

/// `E(y)`: least-squares distance to polynomial samples of degree `< alpha`.
pub fn best_fit_e(alpha: u32, y: &[Complex64]) -> Result<f64> {
    Ok(best_fit(alpha, y)?.distance)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditioningNorm {
    /// `1 / sigma_min^+` from the SVD of `nabla`.
    pub svd: f64,
    /// `1 / sqrt(lambda_min(T_{n-alpha}(|1-t|^{2 alpha})))`.
    pub toeplitz: f64,
    pub rel_diff: f64,
}

fn smallest_nonzero_singular(op: &DifferenceOperator) -> (f64, Vec<f64>) {
    let svd = svd_jacobi(&op.active_block());
    let k = op.n - op.alpha as usize - 1;
    (svd.values[k], svd.right[k].clone())
}

pub fn conditioning_norm_paths(alpha: u32, n: usize) -> Result<ConditioningNorm> {
    if n > 512 {
        return Err(Error::invalid("SVD path is limited to n <= 512"));
    }
    let op = DifferenceOperator::new(alpha, n)?;
    let (sigma, _) = smallest_nonzero_singular(&op);
    let lambda = toeplitz_min_eig(&symbol_abs_power(alpha), n - alpha as usize)?;
    let svd = 1.0 / sigma;
    let toeplitz = 1.0 / lambda.sqrt();
    Ok(ConditioningNorm { svd, toeplitz, rel_diff: ((svd - toeplitz) / toeplitz).abs() })
}

/// `||nabla^+||`, computed two ways that must agree to `1e-9`.
pub fn conditioning_norm(alpha: u32, n: usize) -> Result<f64> {
    let c = conditioning_norm_paths(alpha, n)?;
    if c.rel_diff > TWO_PATH_TOL {
        return Err(Error::StructureViolation(format!(
            "SVD and Toeplitz paths disagree: {} vs {} (rel {:e})",
            c.svd, c.toeplitz, c.rel_diff
        )));
    }
    Ok(c.svd)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockCheck {
    pub max_mismatch: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Spectrum of `nabla nabla^T` is `{0 (alpha times)} U sigma(T_{n-alpha}(|1-t|^{2 alpha}))`.
pub fn verify_block_structure(alpha: u32, n: usize) -> Result<BlockCheck> {
    if n > 256 {
        return Err(Error::invalid("block check is limited to n <= 256"));
    }
    let op = DifferenceOperator::new(alpha, n)?;
    let gram = op.matrix.matmul(&op.matrix.transpose());
    let got = sym_eigen(&gram)?.values;
    let t = BandedToeplitz::new(symbol_abs_power(alpha), n - alpha as usize)?.to_dense();
    let mut want = vec![0.0; alpha as usize];
    want.extend(sym_eigen(&t)?.values);
    want.sort_by(f64::total_cmp);
    let max_mismatch = got.iter().zip(&want).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    let tolerance = 1e-9 * t.frobenius_norm();
    Ok(BlockCheck { max_mismatch, tolerance, passed: max_mismatch <= tolerance })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalRatio {
    pub max_ratio: f64,
    /// Ratio attained by the minimal singular direction.
    pub singular_ratio: f64,
    pub norm: f64,
    pub trials: usize,
    pub seed: u64,
}

/// Largest `E/D` over `trials` seeded Gaussian samples and the minimal singular vector.
pub fn conditioning_ratio_empirical(alpha: u32, n: usize, trials: usize, seed: u64) -> Result<EmpiricalRatio> {
    if trials == 0 {
        return Err(Error::invalid("need at least one trial"));
    }
    let op = DifferenceOperator::new(alpha, n)?;
    let norm_value = conditioning_norm(alpha, n)?;
    let (_, v) = smallest_nonzero_singular(&op);
    let ratio = |y: &[Complex64]| -> Result<Option<f64>> {
        let d = residual_d(alpha, y)?;
        Ok(if d > 0.0 { Some(best_fit_e(alpha, y)? / d) } else { None })
    };
    let singular: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let singular_ratio = ratio(&singular)?.unwrap_or(0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    let mut max_ratio = singular_ratio;
    for _ in 0..trials {
        let y: Vec<Complex64> =
            (0..n).map(|_| Complex64::new(normal.sample(&mut rng), normal.sample(&mut rng))).collect();
        if let Some(r) = ratio(&y)? {
            max_ratio = max_ratio.max(r);
        }
    }
    Ok(EmpiricalRatio { max_ratio, singular_ratio, norm: norm_value, trials, seed })
}

/// Default dimension grid for the least-squares route.
pub fn default_lsq_grid(alpha: u32) -> Vec<usize> {
    match alpha {
        1 | 2 => vec![32, 64, 128, 256],
        3 => vec![16, 32, 64],
        _ => vec![16, 32, 64, 128],
    }
}

/// `c_alpha` as the limit of `(n^alpha sigma_min^+(nabla_n))^2`, extrapolated in `1/n`.
pub fn c_alpha_by_lsq(alpha: u32, n_grid: &[usize]) -> Result<ConstantEstimate> {
    if n_grid.len() < 3 {
        return Err(Error::InsufficientGrid { usable: n_grid.len() });
    }
    if n_grid.windows(2).any(|w| w[0] >= w[1]) || n_grid.last().is_some_and(|&n| n > 512) {
        return Err(Error::invalid("n grid must be strictly ascending and at most 512"));
    }
    let scaled: Vec<f64> = n_grid
        .iter()
        .map(|&n| {
            let op = DifferenceOperator::new(alpha, n)?;
            let (sigma, _) = smallest_nonzero_singular(&op);
            Ok(((n as f64).powi(alpha as i32) * sigma).powi(2))
        })
        .collect::<Result<_>>()?;
    let h: Vec<f64> = n_grid.iter().map(|&n| 1.0 / n as f64).collect();
    let tableau = richardson_tableau(&h, &scaled)?;
    Ok(ConstantEstimate::new(alpha, tableau.best(), Method::LsqConditioning, tableau.error_estimate())
        .with_param("n_grid", n_grid.to_vec())
        .with_param("scaled_values", scaled))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    #[test]
    fn d_examples() {
        assert_eq!(residual_d(2, &real(&[1., 2., 3., 4., 5.])).unwrap(), 0.0);
        assert!((residual_d(1, &real(&[1., 2., 4.])).unwrap() - 5f64.sqrt()).abs() < 1e-15);
        assert!((residual_d(2, &real(&[0., 0., 1., 0., 0.])).unwrap() - 6f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn e_examples() {
        assert!(best_fit_e(1, &real(&[3.5; 6])).unwrap() < 1e-14);
        assert!((best_fit_e(1, &real(&[1., 2., 4.])).unwrap() - 42f64.sqrt() / 3.0).abs() < 1e-14);
        let sq: Vec<f64> = (1..=5).map(|j| (j * j) as f64).collect();
        assert!(best_fit_e(2, &real(&sq)).unwrap() > 0.1);
        assert!(best_fit_e(3, &real(&sq)).unwrap() < 1e-12);
    }

    #[test]
    fn norm_examples() {
        assert!((conditioning_norm(1, 3).unwrap() - 1.0).abs() < 1e-12);
        let n = 40;
        let want = 1.0 / (2.0 * (std::f64::consts::PI / (2.0 * n as f64)).sin());
        assert!((conditioning_norm(1, n).unwrap() / want - 1.0).abs() < 1e-11);
        assert!(conditioning_norm(2, 6).is_ok());
    }

    #[test]
    fn block_examples() {
        assert!(verify_block_structure(1, 4).unwrap().passed);
        assert!(verify_block_structure(2, 6).unwrap().passed);
        assert!(verify_block_structure(3, 10).unwrap().passed);
    }

    #[test]
    fn empirical_small() {
        let r = conditioning_ratio_empirical(1, 3, 5, 7).unwrap();
        assert!((r.max_ratio - 1.0).abs() < 1e-9);
    }
}
