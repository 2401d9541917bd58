/// `ln(n!)`.
///
/// Exact left-to-right summation of `ln k` up to 256, Stirling series above.
pub fn log_factorial(n: u64) -> f64 {
    if n <= 256 {
        return (2..=n).fold(0.0, |acc, k| acc + (k as f64).ln());
    }
    let x = n as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    // 1/(12x) - 1/(360x^3) + 1/(1260x^5) - 1/(1680x^7)
    let series = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
    x * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI * x).ln() + series
}

/// Binomial coefficient `C(n, k)`; zero outside `0 <= k <= n`.
///
/// Exact for `n <= 60`, rounded from the log-factorial form above.
pub fn binomial(n: u64, k: i64) -> f64 {
    if k < 0 || k as u64 > n {
        return 0.0;
    }
    let k = (k as u64).min(n - k as u64);
    if n <= 60 {
        let mut c: u128 = 1;
        for i in 0..k {
            c = c * u128::from(n - i) / u128::from(i + 1);
        }
        return c as f64;
    }
    (log_factorial(n) - log_factorial(k) - log_factorial(n - k)).exp().round()
}
