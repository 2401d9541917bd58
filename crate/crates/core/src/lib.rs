//! Numerical routes to the constant sequence `c_alpha`.
//!
//! For every natural number `alpha` the same constant appears as
//!
//! * the limit of `n^{2 alpha} * lambda_min(T_n(|1-t|^{2 alpha}))` ([`toeplitz`]),
//! * the reciprocal norm of the Green operator of `(-1)^alpha u^{(2 alpha)} = v`
//!   with clamped boundary conditions ([`green`]),
//! * the first eigenvalue of that boundary value problem, located as a zero of
//!   the characteristic determinant ([`ode`]),
//! * the best constant of a higher-order Wirtinger-Sobolev inequality
//!   ([`wirtinger`]),
//! * the conditioning of testing whether samples come from a polynomial
//!   ([`lsq`]).
//!
//! The crate computes the constant along each route, checks the closed-form
//! bounds and asymptotics, and cross-checks the routes against each other.

pub mod error;
pub mod estimate;
pub mod green;
pub mod lsq;
pub mod num;
pub mod ode;
pub mod toeplitz;
pub mod verify;
pub mod wirtinger;

pub use error::{Error, Result};
pub use estimate::{ConstantEstimate, Method};
pub use num::LogScalar;
