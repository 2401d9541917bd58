use serde::Serialize;

use super::{symbol_abs_power, symbol_diff_power, BandedToeplitz};
use crate::error::{Error, Result};
use crate::num::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Corner {
    TopLeft,
    TopRight,
    BottomLeft,
    BottomRight,
}

impl Corner {
    const ALL: [Corner; 4] = [Corner::TopLeft, Corner::TopRight, Corner::BottomLeft, Corner::BottomRight];

    fn origin(self, n: usize, a: usize) -> (usize, usize) {
        match self {
            Corner::TopLeft => (0, 0),
            Corner::TopRight => (0, n - a),
            Corner::BottomLeft => (n - a, 0),
            Corner::BottomRight => (n - a, n - a),
        }
    }
}

/// The defect `T_n(|1-t|^{2 alpha}) - T_n^T((1-t)^alpha) T_n((1-t)^alpha)`.
#[derive(Debug, Clone)]
pub struct GramDefect {
    pub block: Matrix,
    pub corner: Corner,
    pub offblock_max: f64,
    /// `||T_n(b)||_F`, the natural scale for `offblock_max`.
    pub scale: f64,
    pub defect: Matrix,
}

pub fn gram_defect(alpha: u32, n: usize) -> Result<GramDefect> {
    let a = alpha as usize;
    if alpha == 0 || n < 2 * a + 2 {
        return Err(Error::invalid("need alpha >= 1 and n >= 2 alpha + 2"));
    }
    let ta = BandedToeplitz::new(symbol_diff_power(alpha), n)?.to_dense();
    let tb = BandedToeplitz::new(symbol_abs_power(alpha), n)?.to_dense();
    let defect = tb.sub(&ta.transpose().matmul(&ta));

    let outside = |c: Corner| {
        let (r0, c0) = c.origin(n, a);
        let mut m: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let inside = (r0..r0 + a).contains(&i) && (c0..c0 + a).contains(&j);
                if !inside {
                    m = m.max(defect[(i, j)].abs());
                }
            }
        }
        m
    };
    let (corner, offblock_max) = Corner::ALL
        .iter()
        .map(|&c| (c, outside(c)))
        .fold((Corner::TopLeft, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
    let (r0, c0) = corner.origin(n, a);
    let block = Matrix::from_fn(a, a, |i, j| defect[(r0 + i, c0 + j)]);
    Ok(GramDefect { block, corner, offblock_max, scale: tb.frobenius_norm(), defect })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::sym_eigen;

    #[test]
    fn alpha_one() {
        let g = gram_defect(1, 8).unwrap();
        assert_eq!(g.block[(0, 0)], 1.0);
        assert!(g.offblock_max <= 1e-14);
        assert_eq!(g.corner, Corner::BottomRight);
        let tb = BandedToeplitz::new(symbol_abs_power(1), 8).unwrap().to_dense();
        let gram = tb.sub(&g.defect);
        assert!(sym_eigen(&gram).unwrap().values[0] >= -1e-12);
    }

    #[test]
    fn block_independent_of_n() {
        let a = gram_defect(2, 10).unwrap();
        let b = gram_defect(2, 20).unwrap();
        assert_eq!(a.corner, b.corner);
        for i in 0..2 {
            for j in 0..2 {
                assert!((a.block[(i, j)] - b.block[(i, j)]).abs() < 1e-13);
            }
        }
    }
}
