//! Small-loop Stokes check of `dω = Ω`.

use crate::areaforms::{area_form_value, omega_value};
use crate::error::Result;
use crate::grassmann::SuperNumber;
use crate::scalar::Scalar;
use crate::superlinalg::SuperPoint;

/// Five-point Gauss–Legendre nodes and weights on `[-1, 1]`.
const GL_NODES: [f64; 5] =
    [-0.906_179_845_938_664, -0.538_469_310_105_683_1, 0.0, 0.538_469_310_105_683_1, 0.906_179_845_938_664];
const GL_WEIGHTS: [f64; 5] =
    [0.236_926_885_056_189_1, 0.478_628_670_499_366_5, 0.568_888_888_888_888_9, 0.478_628_670_499_366_5, 0.236_926_885_056_189_1];

/// Radial projection `z ↦ z/√⟨z,z⟩` onto `IH` and its differential along `w`.
fn project<T: Scalar>(z: &SuperPoint<T>, w: &SuperPoint<T>) -> Result<(SuperPoint<T>, SuperPoint<T>)> {
    let nz = z.norm2();
    let inv_root = nz.sqrt()?.invert()?;
    let inv_n = nz.invert()?;
    let x = z.scale(&inv_root);
    let zw = z.pairing(w);
    let dx = w.sub(&z.scale(&(&zw * &inv_n))).scale(&inv_root);
    Ok((x, dx))
}

/// Circulation of `ω` around the projected coordinate parallelogram
/// `x ± (h/2)v1 ± (h/2)v2`, together with `Ω(x; v1, v2)·h²`.
///
/// The parallelogram is centered at `x`, so the two agree to relative order `h²`.
/// `v1`, `v2` should be tangent at `x` (`⟨x, v_i⟩ = 0`).
pub fn stokes_loop<T: Scalar>(
    x: &SuperPoint<T>,
    v1: &SuperPoint<T>,
    v2: &SuperPoint<T>,
    h: T,
) -> Result<(SuperNumber<T>, SuperNumber<T>)> {
    let half = h * T::lit(0.5);
    let a = v1.scale_real(half);
    let b = v2.scale_real(half);
    let corners = [x.sub(&a).sub(&b), x.add(&a).sub(&b), x.add(&a).add(&b), x.sub(&a).add(&b)];
    let mut circulation = SuperNumber::zero(x.num_generators());
    for k in 0..4 {
        let start = &corners[k];
        let dir = corners[(k + 1) % 4].sub(start);
        for (node, weight) in GL_NODES.iter().zip(GL_WEIGHTS) {
            let tau = T::lit(0.5 * (node + 1.0));
            let (pt, vel) = project(&start.add(&dir.scale_real(tau)), &dir)?;
            circulation += omega_value(&pt, &vel)? * T::lit(0.5 * weight);
        }
    }
    let form = area_form_value(x, v1, v2)? * (h * h);
    Ok((circulation, form))
}
