//! The invariant area form, its primitive, closed-form edge integrals,
//! triangle normalization and the angle-defect correction.

mod edge;
mod forms;
mod normalize;
mod triangle;

pub use edge::{edge_cos_sin, edge_integral_closed, EdgeQuantities, GENERICITY_TOL};
pub use forms::{area_form_value, omega_value};
pub use normalize::{normalize_triangle, NormalizedTriangle, NORMALIZATION_MIN_SCORE};
pub use triangle::{area, correction, defect, triangle_quantities, TriangleQuantities, TriangleResiduals};
