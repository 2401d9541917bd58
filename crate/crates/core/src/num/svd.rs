use super::{dot, Matrix};

/// Singular values (descending) with the matching right singular vectors.
#[derive(Debug, Clone)]
pub struct Svd {
    pub values: Vec<f64>,
    /// `right[k]` has length `cols` and is a unit vector whenever
    /// `values[k] > 0`.
    pub right: Vec<Vec<f64>>,
}

/// Singular values of a small dense matrix, descending.
pub fn svd_small(matrix: &Matrix) -> Vec<f64> {
    svd_jacobi(matrix).values
}

/// One-sided (Hestenes) Jacobi SVD.
///
/// Rotations orthogonalize the vectors of the side with fewer of them, so
/// the Gram matrix on that side is diagonalized without ever being formed.
/// Singular values are the final vector norms.
pub fn svd_jacobi(matrix: &Matrix) -> Svd {
    let (p, q) = (matrix.rows(), matrix.cols());
    // Orthogonalize columns when there are no more columns than rows,
    // otherwise orthogonalize rows.
    let by_columns = q <= p;
    let mut vecs: Vec<Vec<f64>> = if by_columns {
        (0..q).map(|j| matrix.col(j)).collect()
    } else {
        (0..p).map(|i| matrix.row(i).to_vec()).collect()
    };
    let k = vecs.len();
    let mut accum = Matrix::identity(k);

    const MAX_SWEEPS: usize = 80;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..k {
            for j in (i + 1)..k {
                let a = dot(&vecs[i], &vecs[i]);
                let b = dot(&vecs[j], &vecs[j]);
                if a == 0.0 || b == 0.0 {
                    continue;
                }
                let g = dot(&vecs[i], &vecs[j]);
                if g.abs() <= 1e-15 * (a * b).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (b - a) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = vecs.split_at_mut(j);
                for (x, y) in left[i].iter_mut().zip(right[0].iter_mut()) {
                    let (xi, yi) = (*x, *y);
                    *x = c * xi - s * yi;
                    *y = s * xi + c * yi;
                }
                for r in 0..k {
                    let (xi, yi) = (accum[(r, i)], accum[(r, j)]);
                    accum[(r, i)] = c * xi - s * yi;
                    accum[(r, j)] = s * xi + c * yi;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = vecs.iter().map(|v| dot(v, v).sqrt()).collect();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]));
    let values = order.iter().map(|&i| norms[i]).collect();
    let right = order
        .iter()
        .map(|&i| {
            if by_columns {
                accum.col(i)
            } else if norms[i] > 0.0 {
                vecs[i].iter().map(|x| x / norms[i]).collect()
            } else {
                vec![0.0; q]
            }
        })
        .collect();
    Svd { values, right }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity() {
        assert_eq!(svd_small(&Matrix::identity(2)), vec![1.0, 1.0]);
    }

    #[test]
    fn diagonal() {
        let m = Matrix::from_rows(&[vec![3.0, 0.0], vec![0.0, 0.0]]);
        assert_eq!(svd_small(&m), vec![3.0, 0.0]);
    }

    #[test]
    fn difference_matrix() {
        let m = Matrix::from_rows(&[vec![1.0, -1.0, 0.0], vec![0.0, 1.0, -1.0]]);
        let s = svd_small(&m);
        assert!((s[0] - 3f64.sqrt()).abs() < 1e-14);
        assert!((s[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn right_vectors_satisfy_definition() {
        let m = Matrix::from_rows(&[vec![2.0, 1.0, 0.5], vec![0.0, 1.0, -1.0], vec![1.0, 0.0, 3.0], vec![1.0, 1.0, 1.0]]);
        for mat in [m.clone(), m.transpose()] {
            let svd = svd_jacobi(&mat);
            for (sigma, v) in svd.values.iter().zip(&svd.right) {
                let av = mat.mul_vec(v);
                let norm = dot(&av, &av).sqrt();
                assert!((norm - sigma).abs() < 1e-13, "{norm} vs {sigma}");
                assert!((dot(v, v) - 1.0).abs() < 1e-13);
            }
        }
    }
}
