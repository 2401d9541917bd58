//! The clamped eigenproblem `(-1)^alpha u^{(2 alpha)} = lambda u`,
//! `u^{(j)}(0) = u^{(j)}(1) = 0` for `j < alpha`, solved through the
//! characteristic determinant of the exponential solution basis.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::estimate::{ConstantEstimate, Method};
use crate::num::{complex_determinant, determinant, svd_jacobi, Matrix};
use crate::wirtinger::{bound_lower, bound_upper};

const CONJUGATE_TOL: f64 = 1e-12;
const ROOT_REL_WIDTH: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicSystem {
    alpha: u32,
    zetas: Vec<Complex64>,
    /// `(k, k')` with `zeta_{k'} = conj(zeta_k)`; `k == k'` for real exponents.
    pairs: Vec<(usize, usize)>,
}

impl CharacteristicSystem {
    pub fn new(alpha: u32) -> Result<Self> {
        if alpha == 0 {
            return Err(Error::invalid("alpha must be at least 1"));
        }
        let two_a = 2 * alpha as usize;
        let zetas: Vec<Complex64> = (0..two_a)
            .map(|k| Complex64::from_polar(1.0, PI * (f64::from(alpha) + 2.0 * k as f64) / two_a as f64))
            .collect();
        let mut pairs = Vec::new();
        for k in 0..two_a {
            let kc = (2 * two_a - alpha as usize - k) % two_a;
            if (zetas[kc] - zetas[k].conj()).norm() > CONJUGATE_TOL {
                return Err(Error::ConjugatePairing);
            }
            if k <= kc {
                pairs.push((k, kc));
            }
        }
        Ok(CharacteristicSystem { alpha, zetas, pairs })
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    /// Number of genuinely complex conjugate pairs.
    pub fn complex_pairs(&self) -> usize {
        self.pairs.iter().filter(|(k, kc)| k != kc).count()
    }

    /// `mu_k = lambda^{1/(2 alpha)} zeta_k`.
    pub fn roots(&self, lambda: f64) -> Vec<Complex64> {
        let rho = lambda.powf(1.0 / (2.0 * f64::from(self.alpha)));
        self.zetas.iter().map(|z| z * rho).collect()
    }

    /// Boundary matrix, columns scaled by `e^{-max(0, Re mu_k)}` when `scaled`,
    /// rows of derivative order `j` divided by `rho^j`.
    pub fn complex_matrix(&self, lambda: f64, scaled: bool) -> Vec<Vec<Complex64>> {
        let a = self.alpha as usize;
        let mu = self.roots(lambda);
        let shift: Vec<f64> = mu.iter().map(|m| if scaled { m.re.max(0.0) } else { 0.0 }).collect();
        let mut rows = vec![vec![Complex64::new(0.0, 0.0); 2 * a]; 2 * a];
        for j in 0..a {
            for (k, (z, m)) in self.zetas.iter().zip(&mu).enumerate() {
                let zj = z.powu(j as u32);
                rows[j][k] = zj * (-shift[k]).exp();
                rows[a + j][k] = zj * (m - shift[k]).exp();
            }
        }
        rows
    }

    /// Conjugate columns replaced by their real and imaginary parts.
    pub fn real_matrix(&self, lambda: f64, scaled: bool) -> Matrix {
        let c = self.complex_matrix(lambda, scaled);
        let n = c.len();
        let mut out = Matrix::zeros(n, n);
        for &(k, kc) in &self.pairs {
            for i in 0..n {
                out[(i, k)] = c[i][k].re;
                if kc != k {
                    out[(i, kc)] = c[i][k].im;
                }
            }
        }
        out
    }
}

/// `2alpha` characteristic exponents at `lambda`.
pub fn char_roots(alpha: u32, lambda: f64) -> Result<Vec<Complex64>> {
    if !(lambda > 0.0) {
        return Err(Error::invalid("lambda must be positive"));
    }
    Ok(CharacteristicSystem::new(alpha)?.roots(lambda))
}

/// Real detector whose zeros are the eigenvalues.
pub fn char_det(alpha: u32, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::invalid("lambda must be positive"));
    }
    Ok(determinant(&CharacteristicSystem::new(alpha)?.real_matrix(lambda, true)))
}

/// Complex determinant of the same scaled boundary matrix.
pub fn complex_char_det(alpha: u32, lambda: f64) -> Result<Complex64> {
    if !(lambda > 0.0) {
        return Err(Error::invalid("lambda must be positive"));
    }
    Ok(complex_determinant(&CharacteristicSystem::new(alpha)?.complex_matrix(lambda, true)))
}

/// Log-spaced scan range for the determinant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeScan {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl OdeScan {
    pub const DEFAULT_POINTS: usize = 2000;

    /// `[0.5 lower, 1.1 upper]` from the closed-form bounds.
    pub fn default_for(alpha: u32) -> Self {
        OdeScan {
            lo: 0.5 * bound_lower(alpha).to_f64_lossy(),
            hi: 1.1 * bound_upper(alpha).to_f64_lossy(),
            points: Self::DEFAULT_POINTS,
        }
    }
}

/// First zero of the characteristic determinant.
pub fn c_alpha_by_ode(alpha: u32, scan: OdeScan) -> Result<ConstantEstimate> {
    if !(scan.lo > 0.0 && scan.lo < scan.hi && scan.hi.is_finite()) || scan.points < 2 {
        return Err(Error::invalid("scan needs 0 < lo < hi and at least two points"));
    }
    let sys = CharacteristicSystem::new(alpha)?;
    let det = |l: f64| determinant(&sys.real_matrix(l, true));
    let ratio = scan.hi / scan.lo;
    let grid = |i: usize| scan.lo * ratio.powf(i as f64 / (scan.points - 1) as f64);

    let mut bracket = None;
    let mut prev = (grid(0), det(grid(0)));
    for i in 1..scan.points {
        let l = grid(i);
        let d = det(l);
        if prev.1 == 0.0 {
            bracket = Some((prev.0, prev.0));
            break;
        }
        if prev.1.signum() != d.signum() || d == 0.0 {
            bracket = Some((prev.0, l));
            break;
        }
        prev = (l, d);
    }
    let (mut a, mut b) = bracket.ok_or(Error::NoSignChange { lo: scan.lo, hi: scan.hi })?;
    let mut da = det(a);
    while b - a > ROOT_REL_WIDTH * b {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let dm = det(mid);
        if dm == 0.0 {
            a = mid;
            b = mid;
            break;
        }
        if dm.signum() == da.signum() {
            a = mid;
            da = dm;
        } else {
            b = mid;
        }
    }
    let root = 0.5 * (a + b);
    let (lower, upper) = (bound_lower(alpha).to_f64_lossy(), bound_upper(alpha).to_f64_lossy());
    if root < lower || root > upper {
        return Err(Error::OutOfBounds { root, lower, upper });
    }
    Ok(ConstantEstimate::new(alpha, root, Method::OdeDeterminant, (b - a) / root)
        .with_param("scan_lo", scan.lo)
        .with_param("scan_hi", scan.hi)
        .with_param("scan_points", scan.points))
}

/// Boundary residual of the eigenfunction built from the null vector at `lambda`.
///
/// Returns `max_j |u^{(j)}(0 or 1)| / rho^j` divided by `max |u|` on a
/// 201-point sample of `[0, 1]`.
pub fn eigenfunction_residual(alpha: u32, lambda: f64) -> Result<f64> {
    let sys = CharacteristicSystem::new(alpha)?;
    let r = sys.real_matrix(lambda, true);
    let svd = svd_jacobi(&r);
    let v = svd.right.last().cloned().ok_or(Error::Singular)?;
    let mu = sys.roots(lambda);
    let shift: Vec<f64> = mu.iter().map(|m| m.re.max(0.0)).collect();
    // j-th derivative divided by rho^j
    let u = |x: f64, j: u32| {
        sys.pairs.iter().fold(0.0, |acc, &(k, kc)| {
            let phi = sys.zetas[k].powu(j) * (mu[k] * x - shift[k]).exp();
            if k == kc {
                acc + v[k] * phi.re
            } else {
                acc + v[k] * phi.re + v[kc] * phi.im
            }
        })
    };
    let peak = (0..=200).map(|i| u(i as f64 / 200.0, 0).abs()).fold(0.0, f64::max);
    if !(peak > 0.0) {
        return Err(Error::Singular);
    }
    let worst = (0..alpha)
        .flat_map(|j| [u(0.0, j).abs(), u(1.0, j).abs()])
        .fold(0.0, f64::max);
    Ok(worst / peak)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_examples() {
        let r = char_roots(1, PI * PI).unwrap();
        assert!((r[0] - Complex64::new(0.0, PI)).norm() < 1e-14);
        assert!((r[1] - Complex64::new(0.0, -PI)).norm() < 1e-14);
        let r = char_roots(2, 16.0).unwrap();
        let want = [Complex64::new(0.0, 2.0), Complex64::new(-2.0, 0.0), Complex64::new(0.0, -2.0), Complex64::new(2.0, 0.0)];
        for (a, b) in r.iter().zip(want) {
            assert!((a - b).norm() < 1e-14);
        }
        for a in 1..=6 {
            for m in char_roots(a, 3.7).unwrap() {
                let p = m.powu(2 * a);
                let sign = if a % 2 == 0 { 1.0 } else { -1.0 };
                assert!((p - Complex64::new(sign * 3.7, 0.0)).norm() < 1e-10 * 3.7);
            }
        }
    }

    #[test]
    fn alpha_one_is_sine() {
        for l in [1.0, 2.5, 9.0, 12.0, 30.0] {
            assert!((char_det(1, l).unwrap() - l.sqrt().sin()).abs() < 1e-14);
        }
    }

    #[test]
    fn alpha_three_changes_sign() {
        let a = char_det(3, 61029.0).unwrap();
        let b = char_det(3, 62029.0).unwrap();
        assert!(a * b < 0.0);
    }

    #[test]
    fn c1_and_c3() {
        let e = c_alpha_by_ode(1, OdeScan::default_for(1)).unwrap();
        assert!((e.value_f64() / (PI * PI) - 1.0).abs() < 1e-10);
        let e = c_alpha_by_ode(3, OdeScan::default_for(3)).unwrap();
        assert!((e.value_f64() - 61529.0).abs() <= 1.0);
    }

    #[test]
    fn scan_without_root() {
        let s = OdeScan { lo: 1.0, hi: 2.0, points: 50 };
        assert!(matches!(c_alpha_by_ode(1, s), Err(Error::NoSignChange { .. })));
        let s = OdeScan { lo: 20.0, hi: 50.0, points: 50 };
        assert!(matches!(c_alpha_by_ode(1, s), Err(Error::OutOfBounds { .. })));
    }
}
