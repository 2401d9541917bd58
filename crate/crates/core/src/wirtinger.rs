//! Closed-form bounds and asymptotics for `c_alpha`, Rayleigh-quotient upper
//! bounds, and the Wirtinger-Sobolev inequalities that `c_alpha` governs.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::estimate::ConstantEstimate;
use crate::num::{binomial, cholesky_lower, gauss_legendre, log_factorial, poly, sym_eigen, LogScalar, Matrix};
use crate::toeplitz::cyclic_difference;

/// `ln((4a)! (a!)^2 / ((2a)!)^2)`.
fn log_central_ratio(alpha: u32) -> f64 {
    let a = u64::from(alpha);
    log_factorial(4 * a) + 2.0 * log_factorial(a) - 2.0 * log_factorial(2 * a)
}

/// `(4a - 2)/(4a^2 - a) * (4a)! (a!)^2 / ((2a)!)^2`.
pub fn bound_lower(alpha: u32) -> LogScalar {
    let a = f64::from(alpha);
    LogScalar::exp(log_central_ratio(alpha) + (4.0 * a - 2.0).ln() - (4.0 * a * a - a).ln())
}

/// `(4a + 1)/(2a + 1) * (4a)! (a!)^2 / ((2a)!)^2`.
pub fn bound_upper(alpha: u32) -> LogScalar {
    let a = f64::from(alpha);
    LogScalar::exp(log_central_ratio(alpha) + (4.0 * a + 1.0).ln() - (2.0 * a + 1.0).ln())
}

/// `sqrt(8 pi a) (4a / e)^{2a}`.
pub fn asymptotic_c(alpha: u32) -> LogScalar {
    let a = f64::from(alpha);
    LogScalar::exp(0.5 * (8.0 * PI * a).ln() + 2.0 * a * ((4.0 * a).ln() - 1.0))
}

/// `((a + 1) pi / 2)^{2a}`.
pub fn conjecture_value(alpha: u32) -> LogScalar {
    let a = f64::from(alpha);
    LogScalar::exp(2.0 * a * ((a + 1.0) * PI / 2.0).ln())
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub alpha: u32,
    pub lower: LogScalar,
    pub upper: LogScalar,
    pub asymptotic: LogScalar,
    pub conjecture: LogScalar,
    pub c_ref: Option<ConstantEstimate>,
}

impl BoundReport {
    pub fn new(alpha: u32, c_ref: Option<ConstantEstimate>) -> Self {
        BoundReport {
            alpha,
            lower: bound_lower(alpha),
            upper: bound_upper(alpha),
            asymptotic: asymptotic_c(alpha),
            conjecture: conjecture_value(alpha),
            c_ref,
        }
    }

    /// `lower < upper` and, when a reference value is attached, `lower <= c <= upper`.
    pub fn is_consistent(&self) -> bool {
        self.lower < self.upper
            && self.c_ref.as_ref().is_none_or(|c| self.lower <= c.value && c.value <= self.upper)
    }
}

/// `u(x) = x^alpha (1-x)^alpha p(x)`, with `p` given by ascending coefficients in `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction {
    pub poly_coeffs: Vec<f64>,
}

impl TestFunction {
    pub fn new(poly_coeffs: Vec<f64>) -> Self {
        TestFunction { poly_coeffs }
    }

    /// The constant polynomial `p = 1`.
    pub fn unit() -> Self {
        Self::new(vec![1.0])
    }

    /// `u` in the centred variable `s = x - 1/2`, where `x (1-x) = 1/4 - s^2`.
    fn centred(&self, alpha: u32) -> Vec<f64> {
        let p = poly::taylor_shift(&self.poly_coeffs, 0.5);
        poly::mul(&bubble(alpha), &p)
    }

    pub fn degree(&self, alpha: u32) -> usize {
        2 * alpha as usize + self.poly_coeffs.len().saturating_sub(1)
    }
}

/// `(1/4 - s^2)^alpha`.
fn bubble(alpha: u32) -> Vec<f64> {
    poly::pow(&[0.25, 0.0, -1.0], alpha)
}

fn check_exactness(m: usize, degree: usize) -> Result<()> {
    if 2 * m < 2 * degree + 1 {
        return Err(Error::invalid(format!(
            "{m} Gauss nodes cannot integrate polynomials of degree {} exactly",
            2 * degree
        )));
    }
    Ok(())
}

/// `int (u^{(alpha)})^2 / int u^2` by Gauss quadrature, exact for these polynomials.
pub fn rayleigh_quotient(alpha: u32, f: &TestFunction, m: usize) -> Result<f64> {
    check_exactness(m, f.degree(alpha))?;
    let u = f.centred(alpha);
    let du = poly::derivative(&u, alpha as usize);
    let rule = gauss_legendre(m, -0.5, 0.5)?;
    let den = rule.integrate(|s| poly::eval(&u, s).powi(2));
    if !(den > 0.0) {
        return Err(Error::ZeroDenominator);
    }
    Ok(rule.integrate(|s| poly::eval(&du, s).powi(2)) / den)
}

pub const MAX_RITZ_DIM: usize = 12;

/// Minimum of the Rayleigh quotient over `d`-dimensional polynomial trial spaces.
///
/// The span is `x^alpha (1-x)^alpha * {1, x, ..., x^{d-1}}`, represented with
/// Legendre polynomials in `2x - 1` for conditioning. The generalized
/// eigenproblem is reduced by the Cholesky factor of the mass matrix.
pub fn rayleigh_minimize(alpha: u32, d: usize, m: usize) -> Result<f64> {
    if d == 0 || d > MAX_RITZ_DIM {
        return Err(Error::invalid(format!("basis dimension must be in 1..={MAX_RITZ_DIM}")));
    }
    check_exactness(m, 2 * alpha as usize + d - 1)?;
    let rule = gauss_legendre(m, -0.5, 0.5)?;
    let b = bubble(alpha);
    let basis: Vec<Vec<f64>> =
        (0..d).map(|i| poly::mul(&b, &poly::scale_argument(&poly::legendre(i), 2.0))).collect();
    let derivs: Vec<Vec<f64>> = basis.iter().map(|p| poly::derivative(p, alpha as usize)).collect();
    let gram = |fs: &[Vec<f64>]| {
        let vals: Vec<Vec<f64>> = fs.iter().map(|p| rule.nodes().iter().map(|&s| poly::eval(p, s)).collect()).collect();
        Matrix::from_fn(d, d, |i, j| {
            rule.weights().iter().enumerate().fold(0.0, |acc, (k, w)| acc + w * vals[i][k] * vals[j][k])
        })
    };
    let mass = gram(&basis);
    let stiff = gram(&derivs);
    let l = cholesky_lower(&mass)?;
    // A = L^{-1} K L^{-T}
    let linv_k = lower_solve_columns(&l, &stiff);
    let a = lower_solve_columns(&l, &linv_k.transpose());
    let sym = Matrix::from_fn(d, d, |i, j| 0.5 * (a[(i, j)] + a[(j, i)]));
    Ok(sym_eigen(&sym)?.values[0])
}

/// `L^{-1} B` by forward substitution, column by column.
fn lower_solve_columns(l: &Matrix, b: &Matrix) -> Matrix {
    let n = l.rows();
    let mut out = Matrix::zeros(n, b.cols());
    for c in 0..b.cols() {
        for i in 0..n {
            let mut s = b[(i, c)];
            for k in 0..i {
                s -= l[(i, k)] * out[(k, c)];
            }
            out[(i, c)] = s / l[(i, i)];
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LegendreCheck {
    pub norm_error: f64,
    pub rodrigues_error: f64,
    pub passed: bool,
}

/// Checks `||P_a||^2 = 2/(2a+1)` and `d^a/dy^a (y^2-1)^a = 2^a a! P_a`.
pub fn legendre_norm_check(alpha: u32) -> Result<LegendreCheck> {
    if alpha > 20 {
        return Err(Error::invalid("Legendre check supports alpha <= 20"));
    }
    let a = alpha as usize;
    let p = poly::legendre(a);
    let rule = gauss_legendre(a + 1, -1.0, 1.0)?;
    let norm = rule.integrate(|y| poly::eval(&p, y).powi(2));
    let norm_error = (norm - 2.0 / (2.0 * f64::from(alpha) + 1.0)).abs();

    // Leibniz: d^a[(y-1)^a (y+1)^a] = a! sum_k C(a,k)^2 (y-1)^{a-k} (y+1)^k
    let fact = log_factorial(u64::from(alpha)).exp();
    let scale = 2f64.powi(alpha as i32) * fact;
    let mut rodrigues_error: f64 = 0.0;
    for i in 0..10 {
        let y = -0.95 + 0.21 * f64::from(i);
        let lhs = fact
            * (0..=alpha).fold(0.0, |acc, k| {
                acc + binomial(u64::from(alpha), i64::from(k)).powi(2)
                    * (y - 1.0).powi((alpha - k) as i32)
                    * (y + 1.0).powi(k as i32)
            });
        rodrigues_error = rodrigues_error.max((lhs - scale * poly::eval(&p, y)).abs() / scale);
    }
    Ok(LegendreCheck { norm_error, rodrigues_error, passed: norm_error <= 1e-11 && rodrigues_error <= 1e-9 })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InequalityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// `||C_n((1-t)^a) u||^2 >= (4 sin^2(pi/n))^a (||u||^2 - |sum u|^2 / n)`.
pub fn discrete_wirtinger_check(alpha: u32, u: &[Complex64]) -> Result<InequalityCheck> {
    let n = u.len();
    if alpha == 0 || n < 2 * alpha as usize + 1 {
        return Err(Error::invalid("need alpha >= 1 and n >= 2 alpha + 1"));
    }
    let lhs = cyclic_difference(u, alpha).iter().fold(0.0, |acc, z| acc + z.norm_sqr());
    let energy = u.iter().fold(0.0, |acc, z| acc + z.norm_sqr());
    let total = u.iter().fold(Complex64::new(0.0, 0.0), |acc, z| acc + z);
    let centred = (energy - total.norm_sqr() / n as f64).max(0.0);
    let rhs = (4.0 * (PI / n as f64).sin().powi(2)).powi(alpha as i32) * centred;
    Ok(InequalityCheck { lhs, rhs, holds: lhs >= rhs - 1e-12 * lhs.max(1.0) })
}

/// Rayleigh quotient of `f` against a reference constant.
pub fn continuous_wirtinger_check(alpha: u32, f: &TestFunction, c_ref: &ConstantEstimate) -> Result<(f64, bool)> {
    let ratio = rayleigh_quotient(alpha, f, f.degree(alpha) + 1)?;
    let c = c_ref.value_f64();
    Ok((ratio, ratio >= c * (1.0 - 1e-9)))
}

/// Parseval form of the periodic inequality for `u(x) = sum u_k e^{2 pi i k x}`.
pub fn periodic_wirtinger_check(alpha: u32, coeffs: &BTreeMap<i64, Complex64>) -> Result<InequalityCheck> {
    if !coeffs.iter().any(|(&k, z)| k != 0 && z.norm_sqr() > 0.0) {
        return Err(Error::invalid("at least one nonconstant Fourier mode must be nonzero"));
    }
    let two_pi = 2.0 * PI;
    let mut lhs = 0.0;
    let mut rest = 0.0;
    for (&k, z) in coeffs {
        if k == 0 {
            continue;
        }
        lhs += (two_pi * k.unsigned_abs() as f64).powi(2 * alpha as i32) * z.norm_sqr();
        rest += z.norm_sqr();
    }
    let rhs = two_pi.powi(2 * alpha as i32) * rest;
    Ok(InequalityCheck { lhs, rhs, holds: lhs >= rhs - 1e-12 * lhs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs()
    }

    #[test]
    fn bounds_small_alpha() {
        assert!(close(bound_lower(1).to_f64().unwrap(), 4.0, 1e-14));
        assert!(close(bound_upper(1).to_f64().unwrap(), 10.0, 1e-14));
        assert!(close(bound_lower(2).to_f64().unwrap(), 120.0, 1e-14));
        assert!(close(bound_upper(2).to_f64().unwrap(), 504.0, 1e-14));
    }

    #[test]
    fn rounded_reference_values() {
        assert_eq!(format!("{:.4}", asymptotic_c(1).to_f64().unwrap()), "10.8555");
        assert_eq!(format!("{:.4}", asymptotic_c(2).to_f64().unwrap()), "531.8840");
        assert_eq!(asymptotic_c(3).to_f64().unwrap().round(), 64269.0);
        assert_eq!(format!("{:.4}", conjecture_value(1).to_f64().unwrap()), "9.8696");
        assert_eq!(format!("{:.4}", conjecture_value(2).to_f64().unwrap()), "493.1335");
        assert_eq!(conjecture_value(3).to_f64().unwrap().round(), 61529.0);
    }

    #[test]
    fn unit_test_function() {
        assert!(close(rayleigh_quotient(1, &TestFunction::unit(), 8).unwrap(), 10.0, 1e-13));
        assert!(close(rayleigh_quotient(2, &TestFunction::unit(), 12).unwrap(), 504.0, 1e-12));
        assert!(rayleigh_quotient(3, &TestFunction::unit(), 3).is_err());
        assert_eq!(rayleigh_quotient(1, &TestFunction::new(vec![0.0]), 8), Err(Error::ZeroDenominator));
    }

    #[test]
    fn ritz_values() {
        assert!(close(rayleigh_minimize(1, 1, 8).unwrap(), 10.0, 1e-13));
        assert!(close(rayleigh_minimize(1, 6, 24).unwrap(), PI * PI, 1e-8));
    }

    #[test]
    fn legendre() {
        for a in [1, 2, 5, 12, 20] {
            let c = legendre_norm_check(a).unwrap();
            assert!(c.passed, "alpha {a}: {c:?}");
        }
    }

    #[test]
    fn discrete_examples() {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let r = discrete_wirtinger_check(1, &[c(1., 0.), c(0., 0.), c(0., 0.), c(0., 0.)]).unwrap();
        assert!((r.lhs - 2.0).abs() < 1e-14 && (r.rhs - 1.5).abs() < 1e-14 && r.holds);
        let r = discrete_wirtinger_check(1, &[c(0., 1.), c(-1., 0.), c(0., -1.), c(1., 0.)]).unwrap();
        assert!((r.lhs - 8.0).abs() < 1e-14 && (r.rhs - 8.0).abs() < 1e-13 && r.holds);
        let r = discrete_wirtinger_check(2, &[c(3., -1.); 7]).unwrap();
        assert!(r.lhs == 0.0 && r.rhs.abs() < 1e-12 && r.holds);
    }

    #[test]
    fn periodic_examples() {
        let one = Complex64::new(1.0, 0.0);
        let r = periodic_wirtinger_check(2, &BTreeMap::from([(1, one)])).unwrap();
        assert!(close(r.lhs, (2.0 * PI).powi(4), 1e-15) && r.lhs == r.rhs && r.holds);
        let r = periodic_wirtinger_check(1, &BTreeMap::from([(2, one)])).unwrap();
        assert!(close(r.lhs, (4.0 * PI).powi(2), 1e-15) && r.lhs > r.rhs);
        assert!(periodic_wirtinger_check(1, &BTreeMap::from([(0, one)])).is_err());
    }
}
