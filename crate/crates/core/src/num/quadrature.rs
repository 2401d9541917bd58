use crate::error::{Error, Result};

/// Nodes and positive weights of an interpolatory rule on `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    lo: f64,
    hi: f64,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Number of nodes.
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(0.0, |acc, (&x, &w)| acc + w * f(x))
    }
}

/// The `m`-point Gauss-Legendre rule mapped to `[lo, hi]`.
///
/// Roots of `P_m` come from Newton's method started at
/// `cos(pi (i + 3/4) / (m + 1/2))`.
pub fn gauss_legendre(m: usize, lo: f64, hi: f64) -> Result<QuadratureRule> {
    if m == 0 {
        return Err(Error::invalid("quadrature needs at least one node"));
    }
    if !(lo < hi) {
        return Err(Error::invalid(format!("empty interval [{lo}, {hi}]")));
    }
    let mut ref_nodes = vec![0.0; m];
    let mut ref_weights = vec![0.0; m];
    let mf = m as f64;
    for i in 0..m.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (mf + 0.5)).cos();
        let mut converged = false;
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(m, z);
            dp = d;
            let step = p / d;
            z -= step;
            if step.abs() <= 1e-15 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NoConvergence { what: "Gauss-Legendre Newton iteration", iterations: 100 });
        }
        // refresh the derivative at the converged root
        let (_, d) = legendre_with_derivative(m, z);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        ref_nodes[i] = -z;
        ref_nodes[m - 1 - i] = z;
        ref_weights[i] = w;
        ref_weights[m - 1 - i] = w;
    }
    if m % 2 == 1 {
        ref_nodes[m / 2] = 0.0;
    }
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    Ok(QuadratureRule {
        nodes: ref_nodes.iter().map(|&t| mid + half * t).collect(),
        weights: ref_weights.iter().map(|&w| half * w).collect(),
        lo,
        hi,
    })
}

/// `(P_m(z), P_m'(z))` by the three-term recurrence.
fn legendre_with_derivative(m: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if m == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=m {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * z * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let d = m as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn midpoint_rule() {
        let r = gauss_legendre(1, 0.0, 1.0).unwrap();
        assert_eq!(r.nodes(), &[0.5]);
        assert!((r.weights()[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn two_point_rule() {
        let r = gauss_legendre(2, -1.0, 1.0).unwrap();
        assert!((r.nodes()[0] + 0.5773502691896258).abs() < 1e-15);
        assert!((r.nodes()[1] - 0.5773502691896258).abs() < 1e-15);
        assert!((r.weights()[0] - 1.0).abs() < 1e-15 && (r.weights()[1] - 1.0).abs() < 1e-15);

        let r = gauss_legendre(2, 0.0, 1.0).unwrap();
        assert!((r.nodes()[0] - (0.5 - 0.2886751345948129)).abs() < 1e-15);
        assert!((r.nodes()[1] - (0.5 + 0.2886751345948129)).abs() < 1e-15);
        assert!((r.weights()[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn structure_for_many_orders() {
        for m in 1..=200 {
            let r = gauss_legendre(m, -2.0, 3.0).unwrap();
            assert!(r.nodes().windows(2).all(|w| w[0] < w[1]), "m = {m}");
            assert!(r.nodes().iter().all(|&x| x > -2.0 && x < 3.0));
            assert!(r.weights().iter().all(|&w| w > 0.0));
            let total: f64 = r.weights().iter().sum();
            assert!((total / 5.0 - 1.0).abs() < 1e-13, "m = {m}, sum = {total}");
        }
    }

    #[test]
    fn large_rule_converges() {
        let r = gauss_legendre(1024, 0.0, 1.0).unwrap();
        let total: f64 = r.weights().iter().sum();
        assert!((total - 1.0).abs() < 1e-13);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(gauss_legendre(0, 0.0, 1.0).is_err());
        assert!(gauss_legendre(3, 1.0, 1.0).is_err());
    }
}
