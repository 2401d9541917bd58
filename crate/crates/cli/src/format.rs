//! Number formatting for the text and machine outputs.

use calpha_core::LogScalar;
use serde_json::{json, Value};

/// Printed precision for text tables: four decimals, the nearest integer from
/// `1e4` on, scientific notation from `1e9` on.
pub fn rounded(x: f64) -> String {
    let a = x.abs();
    if !x.is_finite() {
        format!("{x}")
    } else if a >= 1e9 {
        format!("{x:.4e}")
    } else if a >= 1e4 {
        format!("{x:.0}")
    } else {
        format!("{x:.4}")
    }
}

/// [`rounded`] for values that may exceed the double range.
pub fn rounded_log(v: LogScalar) -> String {
    match v.to_f64() {
        Ok(x) => rounded(x),
        Err(_) => {
            let log10 = v.log_abs() / std::f64::consts::LN_10;
            let exponent = log10.floor();
            let mantissa = 10f64.powf(log10 - exponent) * f64::from(v.sign());
            format!("{mantissa:.4}e{exponent}")
        }
    }
}

/// Full-precision JSON number, or `{"log": .., "sign": ..}` beyond the double range.
pub fn json_value(v: LogScalar) -> Value {
    match v.to_f64() {
        Ok(x) => json!(x),
        Err(_) => json!({ "log": v.log_abs(), "sign": v.sign() }),
    }
}

/// Full-precision CSV field; beyond the double range `exp(<log>)` with sign.
pub fn csv_value(v: LogScalar) -> String {
    match v.to_f64() {
        Ok(x) => format!("{x:e}"),
        Err(_) if v.sign() < 0 => format!("-exp({})", v.log_abs()),
        Err(_) => format!("exp({})", v.log_abs()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounded_precision() {
        assert_eq!(rounded(9.869604401089358), "9.8696");
        assert_eq!(rounded(531.88399), "531.8840");
        assert_eq!(rounded(61528.908), "61529");
        assert_eq!(rounded(1.8953554616710e18), "1.8954e18");
        assert_eq!(rounded_log(LogScalar::exp(1000.0)), "1.9701e434");
    }

    #[test]
    fn json_fallback() {
        assert_eq!(json_value(LogScalar::from_f64(2.5)), json!(2.5));
        let big = json_value(LogScalar::exp(800.0));
        assert_eq!(big["sign"], json!(1));
        assert_eq!(big["log"], json!(800.0));
    }
}
