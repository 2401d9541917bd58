use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest natural log that still converts to a finite `f64`.
const MAX_LOG: f64 = 709.782712893384;

/// A real number stored as sign and natural log of its magnitude.
///
/// Zero is `sign == 0` with `log_abs == -inf`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogScalar {
    sign: i8,
    #[serde(rename = "log")]
    log_abs: f64,
}

impl LogScalar {
    pub const ZERO: LogScalar = LogScalar { sign: 0, log_abs: f64::NEG_INFINITY };
    pub const ONE: LogScalar = LogScalar { sign: 1, log_abs: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            LogScalar { sign: if x > 0.0 { 1 } else { -1 }, log_abs: x.abs().ln() }
        }
    }

    /// Builds `sign * exp(log_abs)`. A zero sign forces the canonical zero.
    pub fn from_parts(sign: i8, log_abs: f64) -> Self {
        if sign == 0 || log_abs == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            LogScalar { sign: sign.signum(), log_abs }
        }
    }

    /// `exp(log_abs)`, always positive.
    pub fn exp(log_abs: f64) -> Self {
        Self::from_parts(1, log_abs)
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn log_abs(&self) -> f64 {
        self.log_abs
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn is_positive(&self) -> bool {
        self.sign > 0
    }

    /// Converts to `f64`, raising [`Error::Overflow`] when the magnitude is
    /// beyond the double range.
    pub fn to_f64(&self) -> Result<f64> {
        if self.sign == 0 {
            return Ok(0.0);
        }
        if self.log_abs > MAX_LOG {
            return Err(Error::Overflow { log_abs: self.log_abs });
        }
        Ok(f64::from(self.sign) * self.log_abs.exp())
    }

    /// Converts to `f64`, saturating to infinity on overflow.
    pub fn to_f64_lossy(&self) -> f64 {
        if self.sign == 0 {
            0.0
        } else {
            f64::from(self.sign) * self.log_abs.exp()
        }
    }

    pub fn recip(self) -> Self {
        assert!(self.sign != 0, "reciprocal of zero LogScalar");
        LogScalar { sign: self.sign, log_abs: -self.log_abs }
    }

    pub fn powi(self, k: i32) -> Self {
        if k == 0 {
            return Self::ONE;
        }
        if self.sign == 0 {
            return Self::ZERO;
        }
        let sign = if self.sign < 0 && k % 2 != 0 { -1 } else { 1 };
        LogScalar { sign, log_abs: self.log_abs * f64::from(k) }
    }

    /// Relative difference `|self/other - 1|`, computed in the log domain.
    pub fn rel_diff(&self, other: &LogScalar) -> f64 {
        if self.sign != other.sign {
            return f64::INFINITY;
        }
        if self.sign == 0 {
            return 0.0;
        }
        (self.log_abs - other.log_abs).exp_m1().abs()
    }
}

impl Mul for LogScalar {
    type Output = LogScalar;
    fn mul(self, rhs: LogScalar) -> LogScalar {
        if self.sign == 0 || rhs.sign == 0 {
            return LogScalar::ZERO;
        }
        LogScalar { sign: self.sign * rhs.sign, log_abs: self.log_abs + rhs.log_abs }
    }
}

impl Div for LogScalar {
    type Output = LogScalar;
    fn div(self, rhs: LogScalar) -> LogScalar {
        self * rhs.recip()
    }
}

impl Neg for LogScalar {
    type Output = LogScalar;
    fn neg(self) -> LogScalar {
        LogScalar { sign: -self.sign, log_abs: self.log_abs }
    }
}

impl PartialOrd for LogScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                0 => Some(Ordering::Equal),
                1 => self.log_abs.partial_cmp(&other.log_abs),
                _ => other.log_abs.partial_cmp(&self.log_abs),
            },
            ord => Some(ord),
        }
    }
}

impl From<f64> for LogScalar {
    fn from(x: f64) -> Self {
        LogScalar::from_f64(x)
    }
}

impl fmt::Display for LogScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_f64() {
            Ok(v) => write!(f, "{v}"),
            Err(_) => {
                // sign * 10^(log_abs / ln 10)
                let log10 = self.log_abs / std::f64::consts::LN_10;
                let exponent = log10.floor();
                let mantissa = 10f64.powf(log10 - exponent) * f64::from(self.sign);
                write!(f, "{mantissa}e{exponent}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_iff_sign_zero() {
        assert!(LogScalar::from_f64(0.0).is_zero());
        assert!(!LogScalar::from_f64(-3.0).is_zero());
        assert_eq!(LogScalar::from_parts(1, f64::NEG_INFINITY), LogScalar::ZERO);
    }

    #[test]
    fn multiplication_adds_logs() {
        let a = LogScalar::from_f64(-6.0);
        let b = LogScalar::from_f64(0.5);
        let p = a * b;
        assert_eq!(p.sign(), -1);
        assert!((p.to_f64().unwrap() + 3.0).abs() < 1e-14);
        assert!(((a / b).to_f64().unwrap() + 12.0).abs() < 1e-13);
        assert_eq!((a * LogScalar::ZERO), LogScalar::ZERO);
    }

    #[test]
    fn overflow_is_flagged() {
        let big = LogScalar::exp(800.0);
        assert!(matches!(big.to_f64(), Err(Error::Overflow { .. })));
        assert!(big.to_f64_lossy().is_infinite());
        let ok = big * LogScalar::exp(-100.0);
        assert!(ok.to_f64().is_ok());
    }

    #[test]
    fn powi_sign_parity() {
        let m = LogScalar::from_f64(-2.0);
        assert!((m.powi(3).to_f64().unwrap() + 8.0).abs() < 1e-14);
        assert!((m.powi(2).to_f64().unwrap() - 4.0).abs() < 1e-14);
        assert_eq!(m.powi(0), LogScalar::ONE);
    }

    #[test]
    fn ordering() {
        let xs = [-5.0, -0.1, 0.0, 0.2, 7.0];
        for a in xs {
            for b in xs {
                assert_eq!(
                    LogScalar::from_f64(a).partial_cmp(&LogScalar::from_f64(b)),
                    a.partial_cmp(&b)
                );
            }
        }
    }
}
