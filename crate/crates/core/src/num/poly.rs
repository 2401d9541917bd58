//! Dense univariate polynomials, coefficients in ascending degree.

pub fn eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

pub fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn pow(a: &[f64], k: u32) -> Vec<f64> {
    (0..k).fold(vec![1.0], |acc, _| mul(&acc, a))
}

/// `k`-th derivative.
pub fn derivative(coeffs: &[f64], k: usize) -> Vec<f64> {
    if coeffs.len() <= k {
        return vec![0.0];
    }
    coeffs
        .iter()
        .enumerate()
        .skip(k)
        .map(|(i, c)| c * ((i - k + 1)..=i).fold(1.0, |acc, f| acc * f as f64))
        .collect()
}

/// Coefficients of `p(x + shift)`.
pub fn taylor_shift(coeffs: &[f64], shift: f64) -> Vec<f64> {
    let mut out = coeffs.to_vec();
    let n = out.len();
    // repeated synthetic division
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            out[j] += shift * out[j + 1];
        }
    }
    out
}

/// Legendre polynomial `P_k` by the three-term recurrence.
pub fn legendre(k: usize) -> Vec<f64> {
    let mut p0 = vec![1.0];
    if k == 0 {
        return p0;
    }
    let mut p1 = vec![0.0, 1.0];
    for j in 2..=k {
        let jf = j as f64;
        let mut next = vec![0.0; j + 1];
        for (i, c) in p1.iter().enumerate() {
            next[i + 1] += (2.0 * jf - 1.0) / jf * c;
        }
        for (i, c) in p0.iter().enumerate() {
            next[i] -= (jf - 1.0) / jf * c;
        }
        p0 = p1;
        p1 = next;
    }
    p1
}

/// `p(scale * x)`.
pub fn scale_argument(coeffs: &[f64], scale: f64) -> Vec<f64> {
    let mut f = 1.0;
    coeffs
        .iter()
        .map(|c| {
            let v = c * f;
            f *= scale;
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_and_derivative() {
        // (x + 1)^2 = x^2 + 2x + 1
        assert_eq!(taylor_shift(&[0.0, 0.0, 1.0], 1.0), vec![1.0, 2.0, 1.0]);
        assert_eq!(derivative(&[1.0, 2.0, 3.0, 4.0], 2), vec![6.0, 24.0]);
        assert_eq!(derivative(&[5.0], 1), vec![0.0]);
        assert_eq!(pow(&[1.0, -1.0], 3), vec![1.0, -3.0, 3.0, -1.0]);
    }

    #[test]
    fn legendre_values() {
        assert_eq!(legendre(2), vec![-0.5, 0.0, 1.5]);
        for k in 0..12 {
            assert!((eval(&legendre(k), 1.0) - 1.0).abs() < 1e-12, "k = {k}");
        }
    }
}
