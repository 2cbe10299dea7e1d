//! The invariant area form `Ω` and its primitive `ω` on `IH`.

use crate::error::{Error, Result};
use crate::grassmann::SuperNumber;
use crate::scalar::Scalar;
use crate::superlinalg::SuperPoint;

fn nonzero_body<T: Scalar>(a: &SuperNumber<T>, context: &'static str) -> Result<()> {
    if a.body().abs() < T::lit(crate::grassmann::ZERO_TOL) {
        return Err(Error::ZeroBody { context });
    }
    Ok(())
}

/// The primitive `ω = (ŷ/2)·d log(x1/x2)`, `ŷ = y(1 + φψ)`, evaluated on a tangent vector:
/// `(ŷ/2)(ẋ1/x1 − ẋ2/x2)`.
///
/// Only the bosonic tangent components enter, because `(1 + φψ)` cancels in the
/// ratio `x̂1/x̂2 = x1/x2`.
pub fn omega_value<T: Scalar>(x: &SuperPoint<T>, v: &SuperPoint<T>) -> Result<SuperNumber<T>> {
    nonzero_body(&x.x1, "omega (x1)")?;
    nonzero_body(&x.x2, "omega (x2)")?;
    let y_hat = &x.y * (&x.phi * &x.psi + T::one());
    let dlog = v.x1.checked_div(&x.x1)? - v.x2.checked_div(&x.x2)?;
    Ok(y_hat * dlog * T::lit(0.5))
}

/// Differential of `(1 + φψ)·c` along `v`, where `c` is a bosonic coordinate
/// with tangent component `dc`.
fn d_hat<T: Scalar>(x: &SuperPoint<T>, v: &SuperPoint<T>, c: &SuperNumber<T>, dc: &SuperNumber<T>) -> SuperNumber<T> {
    let k = &x.phi * &x.psi + T::one();
    let dk = &v.phi * &x.psi + &x.phi * &v.psi;
    k * dc + dk * c
}

/// The area form `Ω = d[(1+φψ)x2] ∧ d[(1+φψ)x1] / (2(1+φψ)y)` on the pair `(v1, v2)`,
/// with `(a ∧ b)(v1, v2) = a(v1)b(v2) − a(v2)b(v1)`.
pub fn area_form_value<T: Scalar>(x: &SuperPoint<T>, v1: &SuperPoint<T>, v2: &SuperPoint<T>) -> Result<SuperNumber<T>> {
    nonzero_body(&x.y, "area form (y)")?;
    let dx2_1 = d_hat(x, v1, &x.x2, &v1.x2);
    let dx2_2 = d_hat(x, v2, &x.x2, &v2.x2);
    let dx1_1 = d_hat(x, v1, &x.x1, &v1.x1);
    let dx1_2 = d_hat(x, v2, &x.x1, &v2.x1);
    let wedge = &dx2_1 * &dx1_2 - &dx2_2 * &dx1_1;
    let den = &x.y * (&x.phi * &x.psi + T::one()) * T::lit(2.0);
    wedge.checked_div(&den)
}
