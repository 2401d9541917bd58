use super::Matrix;
use crate::error::{Error, Result};

/// Eigen-decomposition of a real symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `k` is the unit eigenvector for `values[k]`.
    pub vectors: Matrix,
}

impl SymEigen {
    pub fn vector(&self, k: usize) -> Vec<f64> {
        self.vectors.col(k)
    }
}

/// Cyclic Jacobi eigensolver.
///
/// Rejects input whose asymmetry exceeds `1e-12` of its largest entry.
pub fn sym_eigen(matrix: &Matrix) -> Result<SymEigen> {
    if !matrix.is_square() {
        return Err(Error::invalid("eigen-decomposition needs a square matrix"));
    }
    let n = matrix.rows();
    let scale = matrix.max_abs();
    let asym = matrix.asymmetry();
    if asym > 1e-12 * scale {
        return Err(Error::NotSymmetric { asymmetry: asym });
    }
    // work on the exactly symmetrized copy
    let mut a = Matrix::from_fn(n, n, |i, j| 0.5 * (matrix[(i, j)] + matrix[(j, i)]));
    let mut v = Matrix::identity(n);
    let total = a.frobenius_norm();

    const MAX_SWEEPS: usize = 100;
    let mut converged = n <= 1;
    for _ in 0..MAX_SWEEPS {
        let mut rotations = 0usize;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                // negligible against both diagonal entries: drop it
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                if apq.abs() < 1e-18 * (app.abs() * aqq.abs()).sqrt() || apq.abs() < 1e-300 * total {
                    a[(p, q)] = 0.0;
                    a[(q, p)] = 0.0;
                    continue;
                }
                rotations += 1;
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
        if rotations == 0 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence { what: "Jacobi eigensolver", iterations: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = Matrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok(SymEigen { values, vectors })
}

/// Lower-triangular Cholesky factor of a symmetric positive definite matrix.
pub fn cholesky_lower(matrix: &Matrix) -> Result<Matrix> {
    let n = matrix.rows();
    let mut l = Matrix::zeros(n, n);
    for j in 0..n {
        let mut d = matrix[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if !(d > 0.0) {
            return Err(Error::CholeskyFailure { pivot: j, value: d });
        }
        let d = d.sqrt();
        l[(j, j)] = d;
        for i in (j + 1)..n {
            let mut s = matrix[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / d;
        }
    }
    Ok(l)
}
