//! Laurent symbols, banded Toeplitz and circulant matrices.
//!
//! Entry `(j, k)` of `T_n(a)` is `a_{j-k}`.

mod banded;
mod circulant;
mod extrapolation;
mod gram;
mod inverse;
mod symbol;

pub use banded::{toeplitz_min_eig, BandedToeplitz};
pub use circulant::{
    circulant_singular_values, cyclic_difference, smallest_nonzero_circulant_singular_value, Circulant,
};
pub use extrapolation::{c_alpha_by_extrapolation, default_n_grid, scaled_min_eig};
pub use gram::{gram_defect, Corner, GramDefect};
pub use inverse::{compare_inverse_to_green, kernel_sup_error, toeplitz_inverse_entries};
pub use symbol::{symbol_abs_power, symbol_diff_power, symbol_with_weight, LaurentSymbol, SpectralFactor};
