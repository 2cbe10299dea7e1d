//! Arithmetic in the Grassmann algebra `R̂` with `N` odd generators.
//!
//! Coefficients are floats; the index structure and Koszul signs are exact.
//! Analytic functions lift to super numbers through their Taylor series at
//! the body, which terminates because the soul is nilpotent.

mod json;
mod number;
mod series;

pub use json::{SuperNumberJson, TermJson};
pub use number::{indices_to_mask, mask_to_indices, Parity, SuperNumber, MAX_GENERATORS, ZERO_TOL};
pub use series::Analytic;

/// Default generator count: enough for the six odd parameters of a triangle.
pub const DEFAULT_GENERATORS: usize = 6;
