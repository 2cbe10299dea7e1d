//! Closed-form line integral of `ω` along a geodesic edge and its cosine/sine.

use crate::error::{Error, Result};
use crate::geodesics::GeodesicSegment;
use crate::grassmann::SuperNumber;
use crate::scalar::Scalar;

/// Edges whose `q p_i − p q_i` body is at most this are rejected as non-generic.
pub const GENERICITY_TOL: f64 = 1e-8;

/// Every named intermediate of the edge integral from `P = (p1, p2, p | α, β)`
/// to `Q = (q1, q2, q | γ, δ)`.
///
/// Index `i` of the two-element arrays refers to coordinate `x_{i+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeQuantities<T: Scalar = f64> {
    pub d: SuperNumber<T>,
    pub ell: SuperNumber<T>,
    pub m: SuperNumber<T>,
    pub n: SuperNumber<T>,
    /// `y`-coordinates of the asymptotes `e` and `f`.
    pub a: SuperNumber<T>,
    pub b: SuperNumber<T>,
    /// `(x1, x2)`-coordinates of `e`.
    pub a_i: [SuperNumber<T>; 2],
    /// `(x1, x2)`-coordinates of `f`.
    pub b_i: [SuperNumber<T>; 2],
    pub x: SuperNumber<T>,
    pub y: SuperNumber<T>,
    pub z: SuperNumber<T>,
    /// `w_i = q p_i − p q_i`.
    pub w: [SuperNumber<T>; 2],
    /// `S_i = (q_i α − p_i γ)(q_i β − p_i δ)/w_i²`.
    pub s: [SuperNumber<T>; 2],
    /// `H_i = Z − X B_i/A_i − Y A_i/B_i`.
    pub h: [SuperNumber<T>; 2],
    pub vbar: SuperNumber<T>,
    /// `V = V̄ + Σ (−1)^i (H_i + S_i) U_i`.
    pub v: SuperNumber<T>,
    /// `U_i = arctan(w_i (1 − S_i)/(p_i + q_i))`.
    pub u: [SuperNumber<T>; 2],
    /// π-shift flags of the arctan branches.
    pub k: [u8; 2],
    /// Bosonic-leading cosine numerator.
    pub big_c: SuperNumber<T>,
    /// Bosonic-leading sine numerator.
    pub big_s: SuperNumber<T>,
    /// Common denominator `2(d+1)√(p1 p2 q1 q2)`.
    pub big_f: SuperNumber<T>,
    pub c_bar: SuperNumber<T>,
    pub s_bar: SuperNumber<T>,
    pub c_hat: SuperNumber<T>,
    pub s_hat: SuperNumber<T>,
}

impl<T: Scalar> EdgeQuantities<T> {
    /// Computes all intermediates of a segment.
    pub fn compute(seg: &GeodesicSegment<T>) -> Result<Self> {
        let (p, q) = (&seg.p, &seg.q);
        let pi = [&p.x1, &p.x2];
        let qi = [&q.x1, &q.x2];
        for (name, c) in [("p1", pi[0]), ("p2", pi[1]), ("q1", qi[0]), ("q2", qi[1])] {
            if c.body() <= T::zero() {
                return Err(Error::GenericityViolation(format!("endpoint coordinate {name} must have positive body")));
            }
        }
        let (py, qy) = (&p.y, &q.y);
        let (al, be, ga, de) = (&p.phi, &p.psi, &q.phi, &q.psi);

        let w: [SuperNumber<T>; 2] = std::array::from_fn(|i| qy * pi[i] - py * qi[i]);
        for (i, wi) in w.iter().enumerate() {
            if wi.body().abs() <= T::lit(GENERICITY_TOL) {
                return Err(Error::GenericityViolation(format!(
                    "coordinate x{}: q p{} - p q{} has body {:e}",
                    i + 1,
                    i + 1,
                    i + 1,
                    wi.body().as_f64()
                )));
            }
        }

        let one = T::one();
        let quarter = T::lit(0.25);
        let (d, ell, m, n) = (seg.d.clone(), seg.ell.clone(), seg.m.clone(), seg.n.clone());
        let e = seg.e();
        let f = seg.f();
        let a = e.y.clone();
        let b = f.y.clone();
        let a_i = [e.x1.clone(), e.x2.clone()];
        let b_i = [f.x1.clone(), f.x2.clone()];

        let ab = al * be;
        let gd = ga * de;
        let mixed = al * de + ga * be;
        let lm = -&ell + one; // 1 − ℓ
        let lp = &ell + one; // 1 + ℓ
        let l2m = -(&ell * &ell) + one; // 1 − ℓ²
        let l2p = &ell * &ell + one; // 1 + ℓ²
        let x = &m * &m * (&lm * &lm * &ab + &lp * &lp * &gd + &l2m * &mixed) * quarter;
        let y = &n * &n * (&lp * &lp * &ab + &lm * &lm * &gd + &l2m * &mixed) * quarter;
        let z = &m * &n * (&l2m * (&ab + &gd) + &l2p * &mixed) * T::lit(0.5);

        let s: [SuperNumber<T>; 2] = std::array::from_fn(|i| {
            let num = (qi[i] * al - pi[i] * ga) * (qi[i] * be - pi[i] * de);
            num.checked_div(&(&w[i] * &w[i]))
        })
        .try_map_result()?;
        let h: [SuperNumber<T>; 2] = std::array::from_fn(|i| -> Result<SuperNumber<T>> {
            Ok(&z - &x * b_i[i].checked_div(&a_i[i])? - &y * a_i[i].checked_div(&b_i[i])?)
        })
        .try_map_result()?;

        let cross = &a_i[0] * &b_i[1] - &b_i[0] * &a_i[1];
        let t1 = (&a * &x).checked_div(&((&ell - one) * &a_i[0] * &a_i[1]))?;
        let t2 = (&b * &y).checked_div(&((&ell + one) * &b_i[0] * &b_i[1]))?;
        let vbar = cross * (t1 + t2);

        let u: [SuperNumber<T>; 2] = std::array::from_fn(|i| -> Result<SuperNumber<T>> {
            Ok((&w[i] * (-&s[i] + one)).checked_div(&(pi[i] + qi[i]))?.arctan())
        })
        .try_map_result()?;

        // The arctan form of the integral jumps by π exactly when
        // 1 + (A_i/B_i) e^s changes sign on [0, D]. It is monotone in s and
        // equals 2p_i/B_i > 0 at s = 0, so checking s = D suffices. (Since
        // A_i B_i > 0 and A_i + B_i = 2p_i > 0 the flag is in fact never set.)
        let exp_d = seg.length.body().exp();
        let k: [u8; 2] = std::array::from_fn(|i| {
            let r = a_i[i].body() / b_i[i].body();
            u8::from(one + r * exp_d < T::zero())
        });

        let mut v = vbar.clone();
        for i in 0..2 {
            let term = (&h[i] + &s[i]) * &u[i];
            v = if i == 0 { v - term } else { v + term };
        }

        let pq = py * qy;
        let p_plus_q = py + qy;
        let big_c = (&p_plus_q * &p_plus_q + (&d + one) * (-&pq + one)) * T::lit(2.0);
        let big_s = &p_plus_q * (pi[1] * qi[0] - pi[0] * qi[1]);
        let big_f = (&d + one) * (pi[0] * pi[1] * qi[0] * qi[1]).sqrt()? * T::lit(2.0);
        let c_bar =
            ((qy * al - py * ga) * (qy * be - py * de) + (al + ga) * (be + de)) * T::lit(2.0) + (&s[0] + &s[1]) * &w[0] * &w[1];
        let s_bar = &s[0] * (pi[1] + qi[1]) * &w[0] - &s[1] * (pi[0] + qi[0]) * &w[1];
        let c_hat = -&c_bar - &big_s * &v;
        let s_hat = &s_bar + &big_c * &v;

        Ok(Self {
            d,
            ell,
            m,
            n,
            a,
            b,
            a_i,
            b_i,
            x,
            y,
            z,
            w,
            s,
            h,
            vbar,
            v,
            u,
            k,
            big_c,
            big_s,
            big_f,
            c_bar,
            s_bar,
            c_hat,
            s_hat,
        })
    }

    /// `V̄ + Σ_i (−1)^i (1 + S_i)(1 + H_i)(U_i + k_i π sign w_i)`.
    pub fn integral(&self) -> SuperNumber<T> {
        let one = T::one();
        let mut total = self.vbar.clone();
        for i in 0..2 {
            let shift = if self.k[i] == 1 { T::PI() * self.w[i].body().signum() } else { T::zero() };
            let term = (&self.s[i] + one) * (&self.h[i] + one) * (&self.u[i] + shift);
            total = if i == 0 { total - term } else { total + term };
        }
        total
    }

    /// Largest relative size `max|ab| / (max|a|·max|b|)` among the products of
    /// `{V̄, H1, H2, S1, S2}` that the cosine/sine formulas assume to vanish.
    ///
    /// The measure is relative because the factors carry large denominators
    /// (`w_i^{-2}`, `A_i^{-1}`) that amplify rounding in products that vanish
    /// structurally.
    pub fn degree_residual(&self) -> T {
        let list = [&self.vbar, &self.h[0], &self.h[1], &self.s[0], &self.s[1]];
        let mut r = T::zero();
        for (i, a) in list.iter().enumerate() {
            for b in &list[i..] {
                let scale = a.max_abs() * b.max_abs();
                if scale > T::zero() {
                    r = r.max((*a * *b).max_abs() / scale);
                }
            }
        }
        r
    }

    /// Residuals of the two identities `A_i B_i = w_i²(1 − 2S_i)/(d² − 1)` and
    /// `A B_i − B A_i = 2 w_i/√(d² − 1)`, maximized over `i`.
    pub fn identity_residuals(&self) -> Result<[T; 2]> {
        let d2m1 = &self.d * &self.d - T::one();
        let root = d2m1.sqrt()?;
        let mut r = [T::zero(); 2];
        for i in 0..2 {
            let lhs = &self.a_i[i] * &self.b_i[i];
            let rhs = (&self.w[i] * &self.w[i] * (&self.s[i] * T::lit(-2.0) + T::one())).checked_div(&d2m1)?;
            r[0] = r[0].max(lhs.max_abs_diff(&rhs));
            let lhs = &self.a * &self.b_i[i] - &self.b * &self.a_i[i];
            let rhs = (&self.w[i] * T::lit(2.0)).checked_div(&root)?;
            r[1] = r[1].max(lhs.max_abs_diff(&rhs));
        }
        Ok(r)
    }
}

trait TryMapResult<U> {
    fn try_map_result(self) -> Result<[U; 2]>;
}

impl<U> TryMapResult<U> for [Result<U>; 2] {
    fn try_map_result(self) -> Result<[U; 2]> {
        let [a, b] = self;
        Ok([a?, b?])
    }
}

/// Closed-form `∫ ω` along the segment, with all intermediates.
pub fn edge_integral_closed<T: Scalar>(seg: &GeodesicSegment<T>) -> Result<(SuperNumber<T>, EdgeQuantities<T>)> {
    let q = EdgeQuantities::compute(seg)?;
    Ok((q.integral(), q))
}

/// `cos` and `sin` of the edge integral, `(C + ĉ)/F` and `(S + ŝ)/F`.
///
/// Valid only when the products `{V̄, H1, H2, S1, S2}²` vanish, which holds for
/// edges of a normalized triangle; otherwise `NormalizationRequired` is returned
/// (`tol` bounds the largest such product coefficient).
pub fn edge_cos_sin<T: Scalar>(seg: &GeodesicSegment<T>, tol: T) -> Result<(SuperNumber<T>, SuperNumber<T>, EdgeQuantities<T>)> {
    let q = EdgeQuantities::compute(seg)?;
    let r = q.degree_residual();
    if r > tol {
        return Err(Error::NormalizationRequired(format!(
            "degree-4 products of V, H_i, S_i do not vanish (max coefficient {:e})",
            r.as_f64()
        )));
    }
    let cos = (&q.big_c + &q.c_hat).checked_div(&q.big_f)?;
    let sin = (&q.big_s + &q.s_hat).checked_div(&q.big_f)?;
    Ok((cos, sin, q))
}
