use num_complex::Complex64;

use super::Matrix;
use crate::error::{Error, Result};

/// Determinant by LU with partial pivoting.
pub fn determinant(matrix: &Matrix) -> f64 {
    assert!(matrix.is_square(), "determinant of a non-square matrix");
    let n = matrix.rows();
    let mut a = matrix.clone();
    let mut det = 1.0;
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&i, &j| a[(i, k)].abs().total_cmp(&a[(j, k)].abs()))
            .unwrap_or(k);
        if a[(pivot, k)] == 0.0 {
            return 0.0;
        }
        if pivot != k {
            for j in 0..n {
                let tmp = a[(k, j)];
                a[(k, j)] = a[(pivot, j)];
                a[(pivot, j)] = tmp;
            }
            det = -det;
        }
        let d = a[(k, k)];
        det *= d;
        for i in (k + 1)..n {
            let f = a[(i, k)] / d;
            if f == 0.0 {
                continue;
            }
            for j in (k + 1)..n {
                a[(i, j)] -= f * a[(k, j)];
            }
        }
    }
    det
}

/// Solves `A x = b` by LU with partial pivoting.
pub fn solve(matrix: &Matrix, rhs: &[f64]) -> Result<Vec<f64>> {
    if !matrix.is_square() || matrix.rows() != rhs.len() {
        return Err(Error::invalid("solve needs a square matrix and a matching right-hand side"));
    }
    let n = rhs.len();
    let mut a = matrix.clone();
    let mut b = rhs.to_vec();
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&i, &j| a[(i, k)].abs().total_cmp(&a[(j, k)].abs()))
            .unwrap_or(k);
        if a[(pivot, k)] == 0.0 {
            return Err(Error::Singular);
        }
        if pivot != k {
            for j in 0..n {
                let tmp = a[(k, j)];
                a[(k, j)] = a[(pivot, j)];
                a[(pivot, j)] = tmp;
            }
            b.swap(k, pivot);
        }
        let d = a[(k, k)];
        for i in (k + 1)..n {
            let f = a[(i, k)] / d;
            for j in (k + 1)..n {
                a[(i, j)] -= f * a[(k, j)];
            }
            b[i] -= f * b[k];
        }
    }
    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let s: f64 = ((k + 1)..n).map(|j| a[(k, j)] * x[j]).sum();
        x[k] = (b[k] - s) / a[(k, k)];
    }
    Ok(x)
}

/// Complex determinant by LU with partial pivoting; `rows` is row-major.
pub fn complex_determinant(rows: &[Vec<Complex64>]) -> Complex64 {
    let n = rows.len();
    let mut a: Vec<Vec<Complex64>> = rows.to_vec();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&i, &j| a[i][k].norm().total_cmp(&a[j][k].norm()))
            .unwrap_or(k);
        if a[pivot][k] == Complex64::new(0.0, 0.0) {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != k {
            a.swap(pivot, k);
            det = -det;
        }
        let d = a[k][k];
        det *= d;
        for i in (k + 1)..n {
            let f = a[i][k] / d;
            for j in (k + 1)..n {
                let akj = a[k][j];
                a[i][j] -= f * akj;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_determinants() {
        let m = Matrix::from_rows(&[vec![0.0, 2.0], vec![3.0, 1.0]]);
        assert_eq!(determinant(&m), -6.0);
        let s = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert_eq!(determinant(&s), 0.0);
        let c = vec![
            vec![Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0)],
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)],
        ];
        let d = complex_determinant(&c);
        assert!((d - Complex64::new(-2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn solve_small_system() {
        let m = Matrix::from_rows(&[vec![0.0, 2.0, 1.0], vec![3.0, 1.0, 0.0], vec![1.0, 1.0, 1.0]]);
        let x = solve(&m, &[5.0, 5.0, 4.0]).unwrap();
        for (xi, ei) in x.iter().zip([1.0, 2.0, 1.0]) {
            assert!((xi - ei).abs() < 1e-14);
        }
        let s = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(solve(&s, &[1.0, 1.0]).is_err());
    }
}
