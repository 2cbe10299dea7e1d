//! Super Minkowski space `R^{2,1|2}` and the action of `OSp(1|2)` on it.

mod osp;
mod point;

pub use osp::{canonical_u, OSpElement, SuperMatrix, CONSTRAINT_NAMES};
pub use point::{SuperPoint, SuperPointJson};

/// Default tolerance for group and constraint checks.
pub const DEFAULT_TOL: f64 = 1e-9;
