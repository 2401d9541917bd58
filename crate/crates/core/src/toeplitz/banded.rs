use super::LaurentSymbol;
use crate::error::{Error, Result};
use crate::num::{dot, Matrix};

/// `T_n(a)` stored through its symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedToeplitz {
    n: usize,
    symbol: LaurentSymbol,
}

impl BandedToeplitz {
    pub fn new(symbol: LaurentSymbol, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("Toeplitz dimension must be at least 1"));
        }
        Ok(BandedToeplitz { n, symbol })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn symbol(&self) -> &LaurentSymbol {
        &self.symbol
    }

    /// Zero-based entry `a_{j-k}`.
    pub fn entry(&self, j: usize, k: usize) -> f64 {
        self.symbol.coeff(j as i64 - k as i64)
    }

    pub fn to_dense(&self) -> Matrix {
        Matrix::from_fn(self.n, self.n, |j, k| self.entry(j, k))
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n as i64;
        let (lo, hi) = (self.symbol.lo(), self.symbol.hi());
        (0..n)
            .map(|j| {
                let k0 = (j - hi).max(0);
                let k1 = (j - lo).min(n - 1);
                (k0..=k1).fold(0.0, |acc, k| acc + self.symbol.coeff(j - k) * x[k as usize])
            })
            .collect()
    }

    fn half_width(&self) -> usize {
        self.symbol.half_width().min(self.n - 1)
    }

    /// Number of eigenvalues below `sigma`: negative pivots of the band
    /// `LDL^T` factorization of `T - sigma I` (Sylvester's law of inertia).
    pub fn count_below(&self, sigma: f64) -> usize {
        let n = self.n;
        let r = self.half_width();
        let mut l = vec![0.0; n * r.max(1)];
        let mut d = vec![0.0; n];
        // zero pivots are nudged to -pivmin (counted as negative), as in
        // classical Sturm-count bisection
        let pivmin = f64::EPSILON * self.symbol.l1_norm().max(f64::MIN_POSITIVE);
        let mut negatives = 0;
        for i in 0..n {
            let start = i.saturating_sub(r);
            for j in start..i {
                let mut s = self.entry(i, j);
                for k in start..j {
                    s -= l[i * r + k + r - i] * l[j * r + k + r - j] * d[k];
                }
                l[i * r + j + r - i] = s / d[j];
            }
            let mut p = self.entry(i, i) - sigma;
            for k in start..i {
                let lik = l[i * r + k + r - i];
                p -= lik * lik * d[k];
            }
            if p.abs() < pivmin {
                p = -pivmin;
            }
            if p < 0.0 {
                negatives += 1;
            }
            d[i] = p;
        }
        negatives
    }

    /// Band Cholesky factor of `T - shift I`.
    pub fn cholesky(&self, shift: f64) -> Result<BandCholesky> {
        let n = self.n;
        let r = self.half_width();
        let w = r + 1;
        // row i holds L[i][i-r..=i]
        let mut l = vec![0.0; n * w];
        for i in 0..n {
            let start = i.saturating_sub(r);
            for j in start..=i {
                let mut s = self.entry(i, j) - if i == j { shift } else { 0.0 };
                for k in start.max(j.saturating_sub(r))..j {
                    s -= l[i * w + k + r - i] * l[j * w + k + r - j];
                }
                if i == j {
                    if !(s > 0.0) {
                        return Err(Error::CholeskyFailure { pivot: i, value: s });
                    }
                    l[i * w + r] = s.sqrt();
                } else {
                    l[i * w + j + r - i] = s / l[j * w + r];
                }
            }
        }
        Ok(BandCholesky { n, r, l })
    }
}

#[derive(Debug, Clone)]
pub struct BandCholesky {
    n: usize,
    r: usize,
    l: Vec<f64>,
}

impl BandCholesky {
    fn at(&self, i: usize, k: usize) -> f64 {
        self.l[i * (self.r + 1) + k + self.r - i]
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let (n, r) = (self.n, self.r);
        let mut y = b.to_vec();
        for i in 0..n {
            let mut s = y[i];
            for k in i.saturating_sub(r)..i {
                s -= self.at(i, k) * y[k];
            }
            y[i] = s / self.at(i, i);
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in (i + 1)..(i + r + 1).min(n) {
                s -= self.at(k, i) * y[k];
            }
            y[i] = s / self.at(i, i);
        }
        y
    }
}

/// `x^T T x` for `T = T_n(scale |1-t|^{2 order})` as
/// `scale * ||(1-t)^order * x||^2` (full convolution, length `n + order`).
fn factored_form(x: &[f64], order: u32, scale: f64) -> f64 {
    let mut y = x.to_vec();
    for _ in 0..order {
        let mut next = Vec::with_capacity(y.len() + 1);
        let mut prev = 0.0;
        for &v in &y {
            next.push(v - prev);
            prev = v;
        }
        next.push(-prev);
        y = next;
    }
    scale * dot(&y, &y)
}

const BISECTION_REL_WIDTH: f64 = 1e-12;
const ACCEPT_POLISH: f64 = 1e-6;

/// Smallest eigenvalue of `T_n(symbol)` for a Hermitian, nonnegative symbol.
///
/// Inertia bisection brackets `lambda_min` to relative width `1e-12`; one
/// round of shifted inverse iteration then supplies an eigenvector whose
/// Rayleigh quotient is returned when it is consistent with the bracket.
pub fn toeplitz_min_eig(symbol: &LaurentSymbol, n: usize) -> Result<f64> {
    if !symbol.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    let t = BandedToeplitz::new(symbol.clone(), n)?;
    if t.count_below(0.0) > 0 {
        return Err(Error::LossOfDefiniteness { n });
    }
    let mut hi = symbol.l1_norm();
    if !(hi > 0.0) {
        return Err(Error::LossOfDefiniteness { n });
    }
    let mut lo;
    loop {
        let mid = 0.25 * hi;
        if mid < 1e-300 {
            return Err(Error::LossOfDefiniteness { n });
        }
        if t.count_below(mid) > 0 {
            hi = mid;
        } else {
            lo = mid;
            break;
        }
    }
    while hi > 2.0 * lo {
        let mid = (lo * hi).sqrt();
        if t.count_below(mid) > 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    while hi - lo > BISECTION_REL_WIDTH * hi {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if t.count_below(mid) > 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let bracket = 0.5 * (lo + hi);
    Ok(polish(&t, lo).filter(|rq| ((rq - bracket) / bracket).abs() <= ACCEPT_POLISH).unwrap_or(bracket))
}

fn polish(t: &BandedToeplitz, lo: f64) -> Option<f64> {
    let n = t.n();
    let chol = t.cholesky(lo * (1.0 - 1e-6)).ok()?;
    // deterministic start with no symmetry to avoid orthogonality to the target
    let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.25 * (0.7 * i as f64 + 0.3).sin()).collect();
    for _ in 0..3 {
        x = chol.solve(&x);
        let norm = dot(&x, &x).sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return None;
        }
        x.iter_mut().for_each(|v| *v /= norm);
    }
    let num = match t.symbol().spectral_factor() {
        Some(f) => factored_form(&x, f.order, f.scale),
        None => dot(&x, &t.mul_vec(&x)),
    };
    Some(num / dot(&x, &x))
}

#[cfg(test)]
mod tests {
    use super::super::symbol_abs_power;
    use super::*;
    use crate::num::sym_eigen;

    #[test]
    fn small_examples() {
        let s = symbol_abs_power(1);
        assert_eq!(toeplitz_min_eig(&s, 1).unwrap(), 2.0);
        let v = toeplitz_min_eig(&s, 3).unwrap();
        assert!((v - (2.0 - 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn alpha_two_n_ten() {
        // n^4 lambda_min is still only about half of its limit at n = 10
        let s = symbol_abs_power(2);
        let v = toeplitz_min_eig(&s, 10).unwrap();
        let dense = sym_eigen(&BandedToeplitz::new(s, 10).unwrap().to_dense()).unwrap().values[0];
        assert!((v / dense - 1.0).abs() < 1e-10);
        assert!((1e4 * v - 243.0421).abs() < 1e-3);
    }

    #[test]
    fn inertia_matches_dense() {
        let t = BandedToeplitz::new(symbol_abs_power(2), 12).unwrap();
        let eig = sym_eigen(&t.to_dense()).unwrap();
        for sigma in [0.01, 0.05, 0.5, 3.3, 9.7, 15.0, 20.0] {
            let expected = eig.values.iter().filter(|&&v| v < sigma).count();
            assert_eq!(t.count_below(sigma), expected);
        }
    }

    #[test]
    fn cholesky_solves() {
        let t = BandedToeplitz::new(symbol_abs_power(2), 9).unwrap();
        let b: Vec<f64> = (0..9).map(|i| i as f64 - 3.0).collect();
        let x = t.cholesky(0.0).unwrap().solve(&b);
        let r = t.mul_vec(&x);
        for (ri, bi) in r.iter().zip(&b) {
            assert!((ri - bi).abs() < 1e-9);
        }
    }

    #[test]
    fn factored_form_matches_direct() {
        let t = BandedToeplitz::new(symbol_abs_power(3), 11).unwrap();
        let x: Vec<f64> = (0..11).map(|i| (i as f64 * 0.37).cos()).collect();
        let direct = dot(&x, &t.mul_vec(&x));
        assert!((factored_form(&x, 3, 1.0) - direct).abs() < 1e-10 * direct.abs().max(1.0));
    }

    #[test]
    fn indefinite_symbol_is_rejected() {
        let s = LaurentSymbol::from_range(-1, vec![-1.0, 1.0, -1.0]);
        assert_eq!(toeplitz_min_eig(&s, 5), Err(Error::LossOfDefiniteness { n: 5 }));
    }
}
