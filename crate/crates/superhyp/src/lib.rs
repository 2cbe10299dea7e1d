//! N=1 super hyperbolic plane geometry.
//!
//! The crate implements Grassmann-number arithmetic, the orthosymplectic
//! group `OSp(1|2)` acting on super Minkowski space, super geodesics, the
//! invariant area form with its primitive, closed-form edge integrals, and
//! the triangle pipeline that computes the fermionic correction to the angle
//! defect (defect minus area). Independent numerical oracles live in
//! [`numcheck`].
//!
//! All types are generic over the coefficient type ([`Scalar`], implemented
//! for `f32` and `f64`); the `*F64`/`*F32` aliases below fix it.

pub mod areaforms;
pub mod document;
pub mod error;
pub mod geodesics;
pub mod grassmann;
pub mod numcheck;
pub mod sampling;
pub mod scalar;
pub mod superlinalg;

pub use error::{Error, Result};
pub use grassmann::{Analytic, Parity, SuperNumber};
pub use scalar::Scalar;
pub use superlinalg::{OSpElement, SuperPoint};

/// Super number with `f64` coefficients.
pub type SuperNumberF64 = SuperNumber<f64>;
/// Super number with `f32` coefficients.
pub type SuperNumberF32 = SuperNumber<f32>;
/// Point of `R^{2,1|2}` with `f64` coefficients.
pub type SuperPointF64 = SuperPoint<f64>;
/// Point of `R^{2,1|2}` with `f32` coefficients.
pub type SuperPointF32 = SuperPoint<f32>;
/// Group element with `f64` coefficients.
pub type OSpElementF64 = OSpElement<f64>;
/// Group element with `f32` coefficients.
pub type OSpElementF32 = OSpElement<f32>;
