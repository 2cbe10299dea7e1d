//! Componentwise adaptive Simpson quadrature of super-number-valued integrands.

use crate::areaforms::omega_value;
use crate::error::{Error, Result};
use crate::geodesics::GeodesicSegment;
use crate::grassmann::SuperNumber;
use crate::scalar::Scalar;

/// Global evaluation budget of one quadrature.
pub const EVALUATION_BUDGET: usize = 1_000_000;

/// Intervals are never split beyond this depth.
const MAX_DEPTH: usize = 48;

/// Number of equal panels the interval is split into before adapting.
const INITIAL_PANELS: usize = 8;

/// Result of a quadrature: the integral, an error estimate (largest coefficient) and the cost.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureResult<T: Scalar = f64> {
    pub value: SuperNumber<T>,
    pub estimated_error: T,
    pub evaluations: usize,
}

struct Panel<T: Scalar> {
    a: T,
    b: T,
    fa: SuperNumber<T>,
    fm: SuperNumber<T>,
    fb: SuperNumber<T>,
    whole: SuperNumber<T>,
    tol: T,
    depth: usize,
}

fn simpson<T: Scalar>(a: T, b: T, fa: &SuperNumber<T>, fm: &SuperNumber<T>, fb: &SuperNumber<T>) -> SuperNumber<T> {
    (fa + &(fm * T::lit(4.0)) + fb) * ((b - a) / T::lit(6.0))
}

/// Integrates `f` over `[a, b]` so that every Grassmann coefficient has an
/// estimated absolute error below `tol`.
///
/// All coefficients share the sample points; a panel is accepted when the
/// largest coefficient of the Simpson refinement difference is below `15·tol_panel`.
pub fn adaptive_simpson<T, F>(mut f: F, a: T, b: T, tol: T, budget: usize) -> Result<QuadratureResult<T>>
where
    T: Scalar,
    F: FnMut(T) -> Result<SuperNumber<T>>,
{
    let mut evaluations = 0usize;
    let mut eval = |x: T, count: &mut usize| -> Result<SuperNumber<T>> {
        *count += 1;
        f(x)
    };
    let half = T::lit(0.5);
    let panels = INITIAL_PANELS;
    let width = (b - a) / T::from_count(panels);
    let mut stack = Vec::new();
    let mut left_val = eval(a, &mut evaluations)?;
    for k in 0..panels {
        let pa = a + width * T::from_count(k);
        let pb = if k + 1 == panels { b } else { a + width * T::from_count(k + 1) };
        let fm = eval((pa + pb) * half, &mut evaluations)?;
        let fb = eval(pb, &mut evaluations)?;
        let whole = simpson(pa, pb, &left_val, &fm, &fb);
        stack.push(Panel { a: pa, b: pb, fa: left_val, fm, fb: fb.clone(), whole, tol: tol / T::from_count(panels), depth: 0 });
        left_val = fb;
    }
    stack.reverse();

    let mut value = left_val.zero_like();
    let mut estimated_error = T::zero();
    while let Some(p) = stack.pop() {
        if evaluations + 2 > budget {
            return Err(Error::ToleranceNotMet { tol: tol.as_f64(), evaluations, estimate: estimated_error.as_f64() });
        }
        let m = (p.a + p.b) * half;
        let flm = eval((p.a + m) * half, &mut evaluations)?;
        let frm = eval((m + p.b) * half, &mut evaluations)?;
        let left = simpson(p.a, m, &p.fa, &flm, &p.fm);
        let right = simpson(m, p.b, &p.fm, &frm, &p.fb);
        let refined = &left + &right;
        let delta = &refined - &p.whole;
        let err = delta.max_abs();
        if err <= T::lit(15.0) * p.tol {
            value += refined + delta * (T::one() / T::lit(15.0));
            estimated_error = estimated_error + err / T::lit(15.0);
        } else if p.depth >= MAX_DEPTH {
            return Err(Error::ToleranceNotMet { tol: tol.as_f64(), evaluations, estimate: err.as_f64() });
        } else {
            let t = p.tol * half;
            let d = p.depth + 1;
            stack.push(Panel { a: m, b: p.b, fa: p.fm.clone(), fm: frm, fb: p.fb, whole: right, tol: t, depth: d });
            stack.push(Panel { a: p.a, b: m, fa: p.fa, fm: flm, fb: p.fm, whole: left, tol: t, depth: d });
        }
    }
    Ok(QuadratureResult { value, estimated_error, evaluations })
}

/// `∫ ω` along a segment by componentwise quadrature.
///
/// The segment is parametrized by the arc-length fraction `σ ∈ [0, 1]`,
/// `x(σ) = ½(e^{σD} e + e^{−σD} f)`, so that the super-valued length `D`
/// enters the integrand instead of the integration limits.
pub fn quad_edge<T: Scalar>(seg: &GeodesicSegment<T>, tol: T) -> Result<QuadratureResult<T>> {
    let len = &seg.length;
    let g = &seg.geodesic;
    adaptive_simpson(
        |sigma| {
            let s = len.scale(sigma);
            let x = g.point_at(&s);
            let v = g.velocity_at(&s).scale(len);
            omega_value(&x, &v)
        },
        T::zero(),
        T::one(),
        tol,
        EVALUATION_BUDGET,
    )
}
