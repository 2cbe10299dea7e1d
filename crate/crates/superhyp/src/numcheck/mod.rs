//! Independent numerical oracles: adaptive quadrature of the area primitive
//! along geodesics, an independent route to the angle-defect correction,
//! small-loop Stokes checks and the divergence of ideal-triangle areas.

mod ideal;
mod independent;
mod quadrature;
mod stokes;

pub use ideal::{
    analytic_slope, ideal_divergence, normalize_ideal, truncated_area, truncated_edge, DivergenceReport, IdealTriple,
    PROVISO_TOL, TRUNCATION,
};
pub use independent::{independent_correction, interior_angle, IndependentRoute};
pub use quadrature::{adaptive_simpson, quad_edge, QuadratureResult, EVALUATION_BUDGET};
pub use stokes::stokes_loop;
