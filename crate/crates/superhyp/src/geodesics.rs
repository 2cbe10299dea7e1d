//! Super geodesics in `IH`.
//!
//! Every geodesic is `x(s) = cosh s·u + sinh s·v = ½(e^s e + e^{-s} f)` with
//! `⟨u,u⟩ = 1`, `⟨v,v⟩ = −1`, `⟨u,v⟩ = 0`; its asymptotes `e = u + v` and
//! `f = u − v` lie on the positive light cone with `⟨e,f⟩ = 2`.

use crate::error::{Error, Result};
use crate::grassmann::SuperNumber;
use crate::scalar::Scalar;
use crate::superlinalg::SuperPoint;

/// Two points are distinct when `body(⟨P,Q⟩) − 1` exceeds this.
pub const DISTINCT_TOL: f64 = 1e-9;

/// Interior angles whose cosine body is within this of `±1` are rejected.
pub const COLLINEAR_TOL: f64 = 1e-9;

/// A super geodesic `L_{u,v}` with its light-cone asymptotes.
#[derive(Debug, Clone, PartialEq)]
pub struct Geodesic<T: Scalar = f64> {
    pub u: SuperPoint<T>,
    pub v: SuperPoint<T>,
    pub e: SuperPoint<T>,
    pub f: SuperPoint<T>,
}

impl<T: Scalar> Geodesic<T> {
    /// Builds from `(u, v)`; the invariants are verified within `tol`.
    pub fn new(u: SuperPoint<T>, v: SuperPoint<T>, tol: T) -> Result<Self> {
        let g = Self { e: u.add(&v), f: u.sub(&v), u, v };
        let r = g.residual();
        if r > tol {
            return Err(Error::ConstraintViolation {
                what: "geodesic needs <u,u>=1, <v,v>=-1, <u,v>=0".into(),
                residual: r.as_f64(),
            });
        }
        Ok(g)
    }

    /// Builds from light-cone asymptotes with `⟨e,f⟩ = 2` (not verified).
    pub fn from_asymptotes(e: SuperPoint<T>, f: SuperPoint<T>) -> Self {
        let half = T::lit(0.5);
        Self { u: e.add(&f).scale_real(half), v: e.sub(&f).scale_real(half), e, f }
    }

    /// Largest deviation from `⟨u,u⟩ = 1`, `⟨v,v⟩ = −1`, `⟨u,v⟩ = 0`.
    pub fn residual(&self) -> T {
        let uu = (self.u.norm2() - T::one()).max_abs();
        let vv = (self.v.norm2() + T::one()).max_abs();
        let uv = self.u.pairing(&self.v).max_abs();
        uu.max(vv).max(uv)
    }

    /// Largest deviation from `⟨e,e⟩ = ⟨f,f⟩ = 0`, `⟨e,f⟩ = 2`.
    pub fn asymptote_residual(&self) -> T {
        let ee = self.e.norm2().max_abs();
        let ff = self.f.norm2().max_abs();
        let ef = (self.e.pairing(&self.f) - T::lit(2.0)).max_abs();
        ee.max(ff).max(ef)
    }

    /// `x(s) = ½(e·exp s + f·exp(−s))`.
    pub fn point_at(&self, s: &SuperNumber<T>) -> SuperPoint<T> {
        let ep = s.exp();
        let em = (-s).exp();
        self.e.scale(&ep).add(&self.f.scale(&em)).scale_real(T::lit(0.5))
    }

    /// `dx/ds = ½(e·exp s − f·exp(−s))`.
    pub fn velocity_at(&self, s: &SuperNumber<T>) -> SuperPoint<T> {
        let ep = s.exp();
        let em = (-s).exp();
        self.e.scale(&ep).sub(&self.f.scale(&em)).scale_real(T::lit(0.5))
    }

    /// Recovers `(u, v)` from two points `x(s)`, `x(t)` of the same geodesic
    /// (the linear system `x(s) = cosh s u + sinh s v`, `x(t) = cosh t u + sinh t v`).
    pub fn solve_uv(xs: &SuperPoint<T>, s: &SuperNumber<T>, xt: &SuperPoint<T>, t: &SuperNumber<T>) -> Result<Self> {
        let det = (t - s).sinh();
        if det.body().abs() <= T::lit(DISTINCT_TOL) {
            return Err(Error::CoincidentPoints { gap: det.body().as_f64() });
        }
        let inv = det.invert()?;
        let u = xs.scale(&t.sinh()).sub(&xt.scale(&s.sinh())).scale(&inv);
        let v = xt.scale(&s.cosh()).sub(&xs.scale(&t.cosh())).scale(&inv);
        Ok(Self { e: u.add(&v), f: u.sub(&v), u, v })
    }
}

/// The geodesic segment from `P` (at `s = 0`) to `Q` (at `s = D`), with the
/// intermediates `d = ⟨P,Q⟩`, `ℓ = √((d+1)/(d−1))`, `M = (ℓ−1)/2ℓ`, `N = (ℓ+1)/2ℓ`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicSegment<T: Scalar = f64> {
    pub geodesic: Geodesic<T>,
    pub p: SuperPoint<T>,
    pub q: SuperPoint<T>,
    pub d: SuperNumber<T>,
    pub ell: SuperNumber<T>,
    pub m: SuperNumber<T>,
    pub n: SuperNumber<T>,
    /// Arc length `D = arccosh d`.
    pub length: SuperNumber<T>,
}

impl<T: Scalar> GeodesicSegment<T> {
    /// The unique segment through two distinct points of `IH`.
    ///
    /// `e = M[(1−ℓ)P + (1+ℓ)Q]`, `f = N[(1+ℓ)P + (1−ℓ)Q]`, so that `e + f = 2P`.
    pub fn through(p: &SuperPoint<T>, q: &SuperPoint<T>) -> Result<Self> {
        let d = p.pairing(q);
        check_distinct(&d)?;
        let one = T::one();
        let ell = ((&d + one) / (&d - one)).sqrt()?;
        let two_ell_inv = (&ell * T::lit(2.0)).invert()?;
        let m = (&ell - one) * &two_ell_inv;
        let n = (&ell + one) * &two_ell_inv;
        let one_minus = -&ell + one;
        let one_plus = &ell + one;
        let e = p.scale(&one_minus).add(&q.scale(&one_plus)).scale(&m);
        let f = p.scale(&one_plus).add(&q.scale(&one_minus)).scale(&n);
        let length = d.arccosh()?;
        Ok(Self { geodesic: Geodesic::from_asymptotes(e, f), p: p.clone(), q: q.clone(), d, ell, m, n, length })
    }

    /// Start parameter (always 0).
    pub fn s_start(&self) -> SuperNumber<T> {
        SuperNumber::zero(self.d.num_generators())
    }

    /// End parameter `D`.
    pub fn s_end(&self) -> &SuperNumber<T> {
        &self.length
    }

    /// The point at arc length `s` from `P`.
    pub fn point_at(&self, s: &SuperNumber<T>) -> SuperPoint<T> {
        self.geodesic.point_at(s)
    }

    /// The point at fraction `σ ∈ [0,1]` of the segment (arc length `σD`).
    pub fn point_at_fraction(&self, sigma: T) -> SuperPoint<T> {
        self.point_at(&self.length.scale(sigma))
    }

    /// The asymptote `e`.
    pub fn e(&self) -> &SuperPoint<T> {
        &self.geodesic.e
    }

    /// The asymptote `f`.
    pub fn f(&self) -> &SuperPoint<T> {
        &self.geodesic.f
    }
}

fn check_distinct<T: Scalar>(d: &SuperNumber<T>) -> Result<()> {
    let gap = d.body() - T::one();
    if gap <= T::lit(DISTINCT_TOL) {
        return Err(Error::CoincidentPoints { gap: gap.as_f64() });
    }
    Ok(())
}

/// Geodesic distance: `cosh D = ⟨P,Q⟩`.
pub fn distance<T: Scalar>(p: &SuperPoint<T>, q: &SuperPoint<T>) -> Result<SuperNumber<T>> {
    let d = p.pairing(q);
    check_distinct(&d)?;
    d.arccosh()
}

/// Unit tangent at `P` towards `Q`: `(Q − P⟨P,Q⟩)/√(⟨P,Q⟩² − 1)`.
pub fn unit_tangent<T: Scalar>(p: &SuperPoint<T>, q: &SuperPoint<T>) -> Result<SuperPoint<T>> {
    let d = p.pairing(q);
    check_distinct(&d)?;
    let norm = (&d * &d - T::one()).sqrt()?.invert()?;
    Ok(q.sub(&p.scale(&d)).scale(&norm))
}

/// Cosine of the interior angle at `P` of the triangle `PQR`,
/// `(df − e)/(√(d²−1)√(f²−1))` with `d = ⟨P,Q⟩`, `e = ⟨Q,R⟩`, `f = ⟨R,P⟩`.
pub fn angle_cos<T: Scalar>(p: &SuperPoint<T>, q: &SuperPoint<T>, r: &SuperPoint<T>) -> Result<SuperNumber<T>> {
    angle_cos_from_pairings(&p.pairing(q), &q.pairing(r), &r.pairing(p))
}

/// [`angle_cos`] from the three pairings `d = ⟨P,Q⟩`, `e = ⟨Q,R⟩`, `f = ⟨R,P⟩`.
pub fn angle_cos_from_pairings<T: Scalar>(d: &SuperNumber<T>, e: &SuperNumber<T>, f: &SuperNumber<T>) -> Result<SuperNumber<T>> {
    check_distinct(d)?;
    check_distinct(f)?;
    let den = (d * d - T::one()).sqrt()? * (f * f - T::one()).sqrt()?;
    let c = (d * f - e).checked_div(&den)?;
    if T::one() - c.body().abs() <= T::lit(COLLINEAR_TOL) {
        return Err(Error::CollinearVertices { cosine: c.body().as_f64() });
    }
    Ok(c)
}
