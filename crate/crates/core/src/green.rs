//! The Green kernel of `(-1)^alpha u^{(2 alpha)} = v` with `alpha` clamped
//! conditions at both ends, and its symmetrized Nystrom discretization.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::estimate::{ConstantEstimate, Method};
use crate::num::{binomial, gauss_legendre, log_factorial, power_iteration, solve, LogScalar, Matrix, QuadratureRule};
use crate::wirtinger::bound_upper;

/// Above this order the kernel is accumulated in the log domain.
const LOG_DOMAIN_ALPHA: u32 = 15;
const POWER_MAX_ITER: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GreenKernel {
    alpha: u32,
}

impl GreenKernel {
    pub fn new(alpha: u32) -> Result<Self> {
        if alpha == 0 {
            return Err(Error::invalid("alpha must be at least 1"));
        }
        Ok(GreenKernel { alpha })
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.eval_log(x, y).to_f64_lossy()
    }

    /// `G_alpha(x, y)` as a [`LogScalar`], usable far beyond double range.
    ///
    /// With `x >= y`, `x + y >= 1`, `r = y / x` the defining integral becomes
    /// `x^{alpha-1} y^alpha / ((alpha-1)!)^2 * int_0^{1-x} w^{alpha-1} (1 - r + r w)^{alpha-1} dw`,
    /// whose binomial expansion has only nonnegative terms. Points with
    /// `x + y < 1` are reflected through `(1/2, 1/2)`.
    pub fn eval_log(&self, x: f64, y: f64) -> LogScalar {
        let (mut hi, mut lo) = if x >= y { (x, y) } else { (y, x) };
        if hi + lo < 1.0 {
            (hi, lo) = (1.0 - lo, 1.0 - hi);
        }
        if lo <= 0.0 || hi >= 1.0 {
            return LogScalar::ZERO;
        }
        let a = self.alpha;
        let r = lo / hi;
        let one_minus_x = 1.0 - hi;
        if a <= LOG_DOMAIN_ALPHA {
            let mut fact = 1.0;
            for k in 1..a {
                fact *= f64::from(k);
            }
            let mut sum = 0.0;
            for j in 0..a {
                sum += binomial(u64::from(a - 1), i64::from(j))
                    * (1.0 - r).powi((a - 1 - j) as i32)
                    * r.powi(j as i32)
                    * one_minus_x.powi((a + j) as i32)
                    / f64::from(a + j);
            }
            LogScalar::from_f64(hi.powi(a as i32 - 1) * lo.powi(a as i32) / (fact * fact) * sum)
        } else {
            let af = f64::from(a);
            let prefactor = (af - 1.0) * hi.ln() + af * lo.ln() - 2.0 * log_factorial(u64::from(a - 1));
            let (ln_r, ln_1r, ln_1x) = (r.ln(), (1.0 - r).ln(), one_minus_x.ln());
            let logs: Vec<f64> = (0..a)
                .map(|j| {
                    let jf = f64::from(j);
                    let mut t = binomial(u64::from(a - 1), i64::from(j)).ln() + (af + jf) * ln_1x - (af + jf).ln();
                    // 0 * ln 0 terms vanish
                    if a - 1 - j > 0 {
                        t += (af - 1.0 - jf) * ln_1r;
                    }
                    if j > 0 {
                        t += jf * ln_r;
                    }
                    t
                })
                .collect();
            let peak = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if peak == f64::NEG_INFINITY {
                return LogScalar::ZERO;
            }
            let s = logs.iter().fold(0.0, |acc, l| acc + (l - peak).exp());
            LogScalar::exp(prefactor + peak + s.ln())
        }
    }
}

/// `G_alpha(x, y)` for `x, y` in `[0, 1]`.
pub fn green_eval(alpha: u32, x: f64, y: f64) -> Result<f64> {
    if !((0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y)) {
        return Err(Error::invalid(format!("({x}, {y}) is outside the unit square")));
    }
    Ok(GreenKernel::new(alpha)?.eval(x, y))
}

/// Symmetrized Nystrom matrix `sqrt(w_i) G(x_i, x_j) sqrt(w_j)`, times `exp(log_scale)`.
#[derive(Debug, Clone)]
pub struct NystromOperator {
    pub alpha: u32,
    pub rule: QuadratureRule,
    pub matrix: Matrix,
    /// Zero for moderate `alpha`; otherwise a factor that keeps entries in range.
    pub log_scale: f64,
}

impl NystromOperator {
    /// `1 / ||K_alpha||` estimated from the dominant eigenvalue.
    pub fn reciprocal_norm(&self, tol: f64) -> Result<LogScalar> {
        let m = self.matrix.rows();
        let res = power_iteration(
            |v, out| {
                for (i, o) in out.iter_mut().enumerate() {
                    *o = crate::num::dot(self.matrix.row(i), v);
                }
            },
            m,
            tol,
            POWER_MAX_ITER,
        )?;
        if !res.converged {
            return Err(Error::NoConvergence { what: "power iteration", iterations: res.iterations });
        }
        if !(res.lambda > 0.0) {
            return Err(Error::StructureViolation("Nystrom matrix has no positive eigenvalue".into()));
        }
        Ok(LogScalar::exp(self.log_scale - res.lambda.ln()))
    }
}

pub fn build_nystrom(alpha: u32, m: usize) -> Result<NystromOperator> {
    if !(1..=1024).contains(&m) {
        return Err(Error::invalid("Nystrom node count must be in 1..=1024"));
    }
    let kernel = GreenKernel::new(alpha)?;
    let rule = gauss_legendre(m, 0.0, 1.0)?;
    let log_scale = if alpha > LOG_DOMAIN_ALPHA { bound_upper(alpha).log_abs() } else { 0.0 };
    let x = rule.nodes();
    let sw: Vec<f64> = rule.weights().iter().map(|w| w.sqrt()).collect();
    let mut matrix = Matrix::zeros(m, m);
    for i in 0..m {
        for j in 0..=i {
            let v = if log_scale == 0.0 {
                sw[i] * kernel.eval(x[i], x[j]) * sw[j]
            } else {
                let g = kernel.eval_log(x[i], x[j]);
                if g.is_zero() {
                    0.0
                } else {
                    (g.log_abs() + log_scale).exp() * sw[i] * sw[j]
                }
            };
            matrix[(i, j)] = v;
            matrix[(j, i)] = v;
        }
    }
    Ok(NystromOperator { alpha, rule, matrix, log_scale })
}

fn raw_estimate(alpha: u32, m: usize, tol: f64) -> Result<LogScalar> {
    build_nystrom(alpha, m)?.reciprocal_norm(tol)
}

/// Extrapolates `values[i] ~ c + sum_k a_k m_i^{-(p + k)}` to `c`, using
/// `values.len() - 1` correction orders starting at `p`.
fn fit_known_orders(ms: &[usize], values: &[f64], p: u32) -> Result<f64> {
    let n = values.len();
    let top = *ms.last().unwrap_or(&1) as f64;
    let mut a = Matrix::zeros(n, n);
    for (i, &m) in ms.iter().enumerate() {
        a[(i, 0)] = 1.0;
        // columns in (m_top / m)^q keep the system well scaled
        let r = top / m as f64;
        for k in 1..n {
            a[(i, k)] = r.powi((p + k as u32 - 1) as i32);
        }
    }
    Ok(solve(&a, values)?[0])
}

/// Node counts used by [`c_alpha_by_nystrom`] for a top level of `m`.
pub fn nystrom_levels(m: usize) -> Vec<usize> {
    vec![m / 3, m / 2, 2 * m / 3, 5 * m / 6, m]
}

/// `c_alpha = 1 / ||K_alpha||` from Nystrom matrices with `m/3 .. m` nodes.
///
/// The kernel's derivative of order `2 alpha - 1` jumps across the diagonal,
/// so Gauss-Nystrom errors decay only like `m^{-2 alpha}`. The raw values are
/// fitted exactly by `c + sum a_k m^{-(2 alpha + k)}`, `k = 0..3`; the error
/// estimate compares with the three-term fit through the finest four levels
/// and is floored at `tol`.
pub fn c_alpha_by_nystrom(alpha: u32, m: usize, tol: f64) -> Result<ConstantEstimate> {
    if alpha == 0 || m < 8 {
        return Err(Error::invalid("need alpha >= 1 and m >= 8"));
    }
    let ms = nystrom_levels(m);
    let raw: Vec<LogScalar> = ms.iter().map(|&k| raw_estimate(alpha, k, tol)).collect::<Result<_>>()?;
    // Work relative to the finest value so that huge constants stay in range.
    let base = raw[raw.len() - 1];
    let rel: Vec<f64> = raw.iter().map(|v| (v.log_abs() - base.log_abs()).exp()).collect();
    let p = 2 * alpha;
    let best = fit_known_orders(&ms, &rel, p)?;
    let coarser = fit_known_orders(&ms[1..], &rel[1..], p)?;
    if !(best > 0.0) {
        return Err(Error::NoConvergence { what: "Nystrom extrapolation", iterations: ms.len() });
    }
    // never below the eigenvalue tolerance itself
    let error = ((best - coarser) / best).abs().max(tol);
    let raw_f64: Vec<f64> = raw.iter().map(|v| v.to_f64_lossy()).collect();
    let mut est = ConstantEstimate::new(alpha, 1.0, Method::Nystrom, error)
        .with_param("m", m)
        .with_param("m_levels", ms)
        .with_param("tol", tol)
        .with_param("raw_values", raw_f64);
    est.value = base * LogScalar::from_f64(best);
    Ok(est)
}

/// One row of a Nystrom convergence table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NystromRow {
    pub m: usize,
    /// `1 / lambda_max` of the `m`-node matrix.
    pub raw: f64,
    /// [`c_alpha_by_nystrom`] with top level `m`; absent for `m < 8`.
    pub extrapolated: Option<f64>,
}

impl NystromRow {
    /// The extrapolated value when available, otherwise the raw one.
    pub fn estimate(&self) -> f64 {
        self.extrapolated.unwrap_or(self.raw)
    }
}

/// Raw and extrapolated estimates for each node count.
pub fn nystrom_convergence_table(alpha: u32, m_list: &[usize]) -> Result<Vec<NystromRow>> {
    if m_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("node counts must be strictly ascending"));
    }
    m_list
        .iter()
        .map(|&m| {
            let raw = raw_estimate(alpha, m, 1e-13)?.to_f64_lossy();
            let extrapolated = if m >= 8 {
                Some(c_alpha_by_nystrom(alpha, m, 1e-13)?.value.to_f64_lossy())
            } else {
                None
            };
            Ok(NystromRow { m, raw, extrapolated })
        })
        .collect()
}
