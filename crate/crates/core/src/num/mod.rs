//! Shared numerical primitives.
//!
//! All reductions run left to right in index order so that results are
//! bit-reproducible across runs.

mod combinatorics;
mod eigen;
mod extrapolate;
mod logscalar;
mod lu;
mod matrix;
pub mod poly;
mod power;
mod quadrature;
mod svd;

pub use combinatorics::{binomial, log_factorial};
pub use eigen::{cholesky_lower, sym_eigen, SymEigen};
pub use extrapolate::{richardson_tableau, RichardsonTableau};
pub use logscalar::LogScalar;
pub use lu::{complex_determinant, determinant, solve};
pub use matrix::Matrix;
pub use power::{power_iteration, PowerResult};
pub use quadrature::{gauss_legendre, QuadratureRule};
pub use svd::{svd_jacobi, svd_small, Svd};

/// Left-to-right dot product.
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |acc, (x, y)| acc + x * y)
}

pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
