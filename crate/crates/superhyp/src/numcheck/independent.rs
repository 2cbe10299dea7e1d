//! An independent route to the angle-defect correction: interior angles from
//! unit tangents and Grassmann arccos lifts, area from edge quadrature.

use crate::areaforms::NormalizedTriangle;
use crate::error::Result;
use crate::geodesics::{unit_tangent, GeodesicSegment};
use crate::grassmann::SuperNumber;
use crate::numcheck::quadrature::quad_edge;
use crate::scalar::Scalar;
use crate::superlinalg::SuperPoint;

/// Outcome of the independent route.
#[derive(Debug, Clone, PartialEq)]
pub struct IndependentRoute<T: Scalar = f64> {
    /// Interior angles at `P`, `Q`, `R`.
    pub angles: [SuperNumber<T>; 3],
    /// `π − Σ angles`.
    pub defect: SuperNumber<T>,
    /// Oriented sum of the three quadrature edge integrals.
    pub area: SuperNumber<T>,
    /// `defect − area`.
    pub correction: SuperNumber<T>,
    /// Sum of the quadrature error estimates.
    pub quad_error: T,
    /// Total integrand evaluations.
    pub evaluations: usize,
}

/// Interior angle at `a` of the triangle `abc`, from the unit tangents
/// towards `b` and `c` (`cos θ = −⟨T_b, T_c⟩`).
pub fn interior_angle<T: Scalar>(a: &SuperPoint<T>, b: &SuperPoint<T>, c: &SuperPoint<T>) -> Result<SuperNumber<T>> {
    let tb = unit_tangent(a, b)?;
    let tc = unit_tangent(a, c)?;
    (-tb.pairing(&tc)).arccos()
}

/// Computes the correction `𝒟 − 𝒜` without the closed-form edge formulas.
pub fn independent_correction<T: Scalar>(nt: &NormalizedTriangle<T>, quad_tol: T) -> Result<IndependentRoute<T>> {
    let [p, q, r] = nt.vertices();
    let angles = [interior_angle(p, q, r)?, interior_angle(q, r, p)?, interior_angle(r, p, q)?];
    let n = p.num_generators();
    let sum = angles.iter().fold(SuperNumber::zero(n), |acc, a| acc + a);
    let defect = -sum + T::PI();

    let mut total = SuperNumber::zero(n);
    let mut quad_error = T::zero();
    let mut evaluations = 0;
    for (a, b) in [(p, q), (q, r), (r, p)] {
        let res = quad_edge(&GeodesicSegment::through(a, b)?, quad_tol)?;
        total += res.value;
        quad_error = quad_error + res.estimated_error;
        evaluations += res.evaluations;
    }
    let area = if total.body() < T::zero() { -total } else { total };
    let correction = &defect - &area;
    Ok(IndependentRoute { angles, defect, area, correction, quad_error, evaluations })
}
