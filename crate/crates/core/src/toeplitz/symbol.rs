use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::num::binomial;

/// Records that a symbol equals `scale * |1 - t|^{2 order}` exactly.
///
/// Quadratic forms of such symbols can be evaluated as a sum of squares,
/// which keeps Rayleigh quotients accurate to full relative precision
/// even when `lambda_min` is many orders below `||T||`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralFactor {
    pub order: u32,
    pub scale: f64,
}

/// Finitely many Fourier coefficients `a_k`, `lo <= k <= hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentSymbol {
    lo: i64,
    coeffs: Vec<f64>,
    factor: Option<SpectralFactor>,
}

impl LaurentSymbol {
    /// Symbol with coefficients `coeffs[i] = a_{lo + i}`.
    pub fn from_range(lo: i64, coeffs: Vec<f64>) -> Self {
        LaurentSymbol { lo, coeffs, factor: None }
    }

    pub fn from_map(map: &BTreeMap<i64, f64>) -> Self {
        match (map.keys().next(), map.keys().next_back()) {
            (Some(&lo), Some(&hi)) => {
                let coeffs = (lo..=hi).map(|k| map.get(&k).copied().unwrap_or(0.0)).collect();
                Self::from_range(lo, coeffs)
            }
            _ => Self::from_range(0, vec![0.0]),
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::from_range(0, vec![c])
    }

    pub fn to_map(&self) -> BTreeMap<i64, f64> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (self.lo + i as i64, c))
            .collect()
    }

    pub fn coeff(&self, k: i64) -> f64 {
        let i = k - self.lo;
        if i < 0 || i as usize >= self.coeffs.len() {
            0.0
        } else {
            self.coeffs[i as usize]
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    /// Band half-width `r`.
    pub fn half_width(&self) -> usize {
        self.lo.abs().max(self.hi().abs()) as usize
    }

    pub fn spectral_factor(&self) -> Option<SpectralFactor> {
        self.factor
    }

    pub(crate) fn with_factor(mut self, factor: SpectralFactor) -> Self {
        self.factor = Some(factor);
        self
    }

    /// `a_{-k} == a_k` up to rounding.
    pub fn is_hermitian(&self) -> bool {
        let scale = self.l1_norm().max(f64::MIN_POSITIVE);
        let r = self.half_width() as i64;
        (1..=r).all(|k| (self.coeff(k) - self.coeff(-k)).abs() <= 1e-14 * scale)
    }

    pub fn l1_norm(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, c| acc + c.abs())
    }

    /// `a(1) = sum_k a_k`.
    pub fn value_at_one(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, c| acc + c)
    }

    /// `a(e^{i theta})`.
    pub fn eval(&self, theta: f64) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .fold(Complex64::new(0.0, 0.0), |acc, (i, &c)| {
                acc + c * Complex64::from_polar(1.0, (self.lo + i as i64) as f64 * theta)
            })
    }

    /// Coefficient sequence of the product symbol.
    pub fn convolve(&self, other: &LaurentSymbol) -> LaurentSymbol {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentSymbol::from_range(self.lo + other.lo, out)
    }

    pub fn scaled(&self, s: f64) -> LaurentSymbol {
        LaurentSymbol {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            factor: self.factor.map(|f| SpectralFactor { order: f.order, scale: f.scale * s }),
        }
    }
}

/// `|1 - t|^{2 alpha}`: `a_k = (-1)^k C(2 alpha, alpha + k)`.
pub fn symbol_abs_power(alpha: u32) -> LaurentSymbol {
    let a = i64::from(alpha);
    let coeffs = (-a..=a)
        .map(|k| {
            let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            sign * binomial(2 * alpha as u64, a + k)
        })
        .collect();
    LaurentSymbol::from_range(-a, coeffs).with_factor(SpectralFactor { order: alpha, scale: 1.0 })
}

/// `(1 - t)^alpha`: `a_k = (-1)^k C(alpha, k)` for `0 <= k <= alpha`.
pub fn symbol_diff_power(alpha: u32) -> LaurentSymbol {
    let coeffs = (0..=i64::from(alpha))
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * binomial(u64::from(alpha), k)
        })
        .collect();
    LaurentSymbol::from_range(0, coeffs)
}

const POSITIVITY_SAMPLES: usize = 1024;

/// `|1 - t|^{2 alpha} b(t)` together with `b(1)`.
///
/// `b` must be Hermitian and positive at 1024 equispaced angles.
pub fn symbol_with_weight(alpha: u32, b: &LaurentSymbol) -> Result<(LaurentSymbol, f64)> {
    if !b.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    let min_value = (0..POSITIVITY_SAMPLES)
        .map(|i| b.eval(2.0 * std::f64::consts::PI * i as f64 / POSITIVITY_SAMPLES as f64).re)
        .fold(f64::INFINITY, f64::min);
    if !(min_value > 0.0) {
        return Err(Error::NonPositiveWeight { min_value });
    }
    let base = symbol_abs_power(alpha);
    let mut product = base.convolve(b);
    // A constant weight keeps the exact factorization.
    if b.lo() == 0 && b.hi() == 0 {
        product = product.with_factor(SpectralFactor { order: alpha, scale: b.coeff(0) });
    }
    Ok((product, b.value_at_one()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abs_power_coefficients() {
        assert_eq!(symbol_abs_power(0).to_map(), BTreeMap::from([(0, 1.0)]));
        assert_eq!(symbol_abs_power(1).to_map(), BTreeMap::from([(-1, -1.0), (0, 2.0), (1, -1.0)]));
        assert_eq!(
            symbol_abs_power(2).to_map(),
            BTreeMap::from([(-2, 1.0), (-1, -4.0), (0, 6.0), (1, -4.0), (2, 1.0)])
        );
    }

    #[test]
    fn diff_power_coefficients() {
        assert_eq!(symbol_diff_power(1).to_map(), BTreeMap::from([(0, 1.0), (1, -1.0)]));
        assert_eq!(symbol_diff_power(3).to_map(), BTreeMap::from([(0, 1.0), (1, -3.0), (2, 3.0), (3, -1.0)]));
    }

    #[test]
    fn weighted_symbols() {
        let (s, b1) = symbol_with_weight(1, &LaurentSymbol::constant(1.0)).unwrap();
        assert_eq!(s.to_map(), symbol_abs_power(1).to_map());
        assert_eq!(b1, 1.0);

        let b = LaurentSymbol::from_range(-1, vec![0.25, 1.0, 0.25]);
        let (s, b1) = symbol_with_weight(1, &b).unwrap();
        assert_eq!(
            s.to_map(),
            BTreeMap::from([(-2, -0.25), (-1, -0.5), (0, 1.5), (1, -0.5), (2, -0.25)])
        );
        assert_eq!(b1, 1.5);
        assert!(s.spectral_factor().is_none());

        let (s, b1) = symbol_with_weight(2, &LaurentSymbol::constant(2.0)).unwrap();
        assert_eq!(s.to_map(), symbol_abs_power(2).scaled(2.0).to_map());
        assert_eq!(b1, 2.0);
        assert_eq!(s.spectral_factor(), Some(SpectralFactor { order: 2, scale: 2.0 }));
    }

    #[test]
    fn weight_must_be_positive() {
        // 1 + cos(theta) vanishes at theta = pi
        let b = LaurentSymbol::from_range(-1, vec![0.5, 1.0, 0.5]);
        assert!(matches!(symbol_with_weight(1, &b), Err(Error::NonPositiveWeight { .. })));
        let skew = LaurentSymbol::from_range(-1, vec![0.1, 1.0, 0.2]);
        assert_eq!(symbol_with_weight(1, &skew), Err(Error::NotHermitian));
    }

    #[test]
    fn eval_matches_closed_form() {
        let s = symbol_abs_power(1);
        for i in 0..16 {
            let th = i as f64 * 0.4;
            let z = s.eval(th);
            assert!((z.re - (2.0 - 2.0 * th.cos())).abs() < 1e-14);
            assert!(z.im.abs() < 1e-14);
        }
    }
}
