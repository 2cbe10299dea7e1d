//! Triangle quantities: area, angle defect and the fermionic correction.

use crate::areaforms::edge::{edge_cos_sin, EdgeQuantities};
use crate::areaforms::normalize::NormalizedTriangle;
use crate::error::{Error, Result};
use crate::geodesics::{angle_cos_from_pairings, GeodesicSegment};
use crate::grassmann::SuperNumber;
use crate::scalar::Scalar;
use crate::superlinalg::DEFAULT_TOL;

/// All named intermediates of a normalized triangle `PQR` with
/// `P = (p1, p2, p | α, β)`, `Q = (q1, q2, q | γ, δ)`, `R = (r1, r2, r | ε, φ)`.
///
/// Edges are taken in the cyclic order `PQ`, `QR`, `RP`.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleQuantities<T: Scalar = f64> {
    pub edges: [EdgeQuantities<T>; 3],
    /// Cosine of each edge integral.
    pub edge_cos: [SuperNumber<T>; 3],
    /// Sine of each edge integral.
    pub edge_sin: [SuperNumber<T>; 3],
    /// Pairings `d = ⟨P,Q⟩`, `e = ⟨Q,R⟩`, `f = ⟨R,P⟩`.
    pub d: SuperNumber<T>,
    pub e: SuperNumber<T>,
    pub f: SuperNumber<T>,
    /// `I = p1q2 + p2q1`, `J = q1r2 + q2r1`, `K = r1p2 + r2p1`.
    pub big_i: SuperNumber<T>,
    pub big_j: SuperNumber<T>,
    pub big_k: SuperNumber<T>,
    /// `i = αδ + γβ`, `j = γφ + εδ`, `k = εβ + αφ`.
    pub i: SuperNumber<T>,
    pub j: SuperNumber<T>,
    pub k: SuperNumber<T>,
    /// `Θ = αβ/(p²+1) + γδ/(q²+1) + εφ/(r²+1)`.
    pub theta: SuperNumber<T>,
    /// Cosine of the sum of the interior angles.
    pub l: SuperNumber<T>,
    /// Fermionic part of the cosine of the area.
    pub p: SuperNumber<T>,
    /// `Q = L + R`.
    pub q: SuperNumber<T>,
    /// Bosonic-leading part of the cosine of the area.
    pub r: SuperNumber<T>,
    /// `Q` from the expanded nine-term closed form.
    pub q_long: SuperNumber<T>,
    /// Product of the three edge denominators.
    pub fgh: SuperNumber<T>,
    pub area: SuperNumber<T>,
    pub defect: SuperNumber<T>,
    pub correction: SuperNumber<T>,
    /// Residuals of the internal consistency checks.
    pub residuals: TriangleResiduals<T>,
}

/// Consistency residuals of a [`TriangleQuantities`] computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleResiduals<T: Scalar = f64> {
    /// `i = d − I/2 + pq` and its cyclic companions.
    pub ijk: T,
    /// `FGH = 8(d+1)(e+1)(f+1) p1p2q1q2r1r2`.
    pub fgh: T,
    /// `L + R` against the expanded closed form of `Q`.
    pub long_form: T,
    /// `|body(Q)|`.
    pub q_body: T,
    /// `cos² + sin² − 1` over the three edges.
    pub edge_trig: T,
    /// Largest vanishing-by-degree product over the three edges.
    pub edge_degree: T,
    /// Edge identities `A_i B_i` and `A B_i − B A_i` over the three edges.
    pub edge_identities: T,
}

/// Computes every triangle quantity; `tol` gates the vanishing-by-degree products.
pub fn triangle_quantities<T: Scalar>(nt: &NormalizedTriangle<T>, tol: T) -> Result<TriangleQuantities<T>> {
    let (pp, qq, rr) = (&nt.p, &nt.q, &nt.r);
    // interior angles at P, Q, R; rejects coincident and collinear vertices
    let (dpq, dqr, drp) = (pp.pairing(qq), qq.pairing(rr), rr.pairing(pp));
    angle_cos_from_pairings(&dpq, &dqr, &drp)?;
    angle_cos_from_pairings(&dqr, &drp, &dpq)?;
    angle_cos_from_pairings(&drp, &dpq, &dqr)?;
    let segs = [GeodesicSegment::through(pp, qq)?, GeodesicSegment::through(qq, rr)?, GeodesicSegment::through(rr, pp)?];
    let [e0, e1, e2] = segs.each_ref().map(|s| edge_cos_sin(s, tol));
    let (e0, e1, e2) = (e0?, e1?, e2?);
    let one = T::one();

    let (c, s, ff, ch, sh) = (&e0.2.big_c, &e0.2.big_s, &e0.2.big_f, &e0.2.c_hat, &e0.2.s_hat);
    let (dd, tt, gg, dh, th) = (&e1.2.big_c, &e1.2.big_s, &e1.2.big_f, &e1.2.c_hat, &e1.2.s_hat);
    let (ee, uu, hh, eh, uh) = (&e2.2.big_c, &e2.2.big_s, &e2.2.big_f, &e2.2.c_hat, &e2.2.s_hat);
    let fgh = ff * gg * hh;
    let p_num = ch * (dd * ee - tt * uu) - sh * (dd * uu + ee * tt) + dh * (c * ee - s * uu) - th * (c * uu + ee * s)
        + eh * (c * dd - s * tt)
        - uh * (c * tt + dd * s);
    let r_num = c * dd * ee - c * tt * uu - dd * s * uu - ee * s * tt;
    let p = p_num.checked_div(&fgh)?;
    let r = r_num.checked_div(&fgh)?;

    let (d, e, f) = (dpq, dqr, drp);
    let dp1 = &d + one;
    let ep1 = &e + one;
    let fp1 = &f + one;
    let den3 = &dp1 * &ep1 * &fp1;
    let l = (&d * &e * &f * T::lit(2.0) + one - &d * &d - &e * &e - &f * &f).checked_div(&den3)? - one;
    let q = &l + &r;

    let (p1, p2, py, al, be) = (&pp.x1, &pp.x2, &pp.y, &pp.phi, &pp.psi);
    let (q1, q2, qy, ga, de) = (&qq.x1, &qq.x2, &qq.y, &qq.phi, &qq.psi);
    let (r1, r2, ry, ep, ph) = (&rr.x1, &rr.x2, &rr.y, &rr.phi, &rr.psi);
    let big_i = p1 * q2 + p2 * q1;
    let big_j = q1 * r2 + q2 * r1;
    let big_k = r1 * p2 + r2 * p1;
    let i = al * de + ga * be;
    let j = ga * ph + ep * de;
    let k = ep * be + al * ph;
    let pp1 = py * py + one;
    let qq1 = qy * qy + one;
    let rr1 = ry * ry + one;
    let ab = al * be;
    let gd = ga * de;
    let eph = ep * ph;
    let theta = ab.checked_div(&pp1)? + gd.checked_div(&qq1)? + eph.checked_div(&rr1)?;

    let half = T::lit(0.5);
    let ijk = i
        .max_abs_diff(&(&d - &big_i * half + py * qy))
        .max(j.max_abs_diff(&(&e - &big_j * half + qy * ry)))
        .max(k.max_abs_diff(&(&f - &big_k * half + ry * py)));
    let fgh_expected = &den3 * p1 * p2 * q1 * q2 * r1 * r2 * T::lit(8.0);

    let q_long = long_form_q(LongFormInputs {
        py,
        qy,
        ry,
        big_i: &big_i,
        big_j: &big_j,
        big_k: &big_k,
        i: &i,
        j: &j,
        k: &k,
        theta: &theta,
        ab: &ab,
        gd: &gd,
        eph: &eph,
    })?
    .checked_div(&(&den3 * T::lit(8.0)))?;
    // The expanded form is stated for the opposite orientation of the edge
    // cosines, which flips the sign of Q.
    let q_long = -q_long;

    let r_body = r.body();
    if r_body.abs() >= one {
        return Err(Error::ArccosDomain { body: r_body.as_f64() });
    }
    let root = (-(&r * &r) + one).sqrt()?;
    let acos_r = r.arccos()?;
    let area = &acos_r - p.checked_div(&root)?;
    let defect = &acos_r + q.checked_div(&root)?;
    let correction = (&p + &q).checked_div(&root)?;

    let mut edge_trig = T::zero();
    let mut edge_degree = T::zero();
    let mut edge_identities = T::zero();
    for (cs, sn, eq) in [&e0, &e1, &e2] {
        edge_trig = edge_trig.max((cs * cs + sn * sn - one).max_abs());
        edge_degree = edge_degree.max(eq.degree_residual());
        let [a, b] = eq.identity_residuals()?;
        edge_identities = edge_identities.max(a).max(b);
    }
    let residuals = TriangleResiduals {
        ijk,
        fgh: fgh.max_abs_diff(&fgh_expected),
        long_form: q.max_abs_diff(&q_long),
        q_body: q.body().abs(),
        edge_trig,
        edge_degree,
        edge_identities,
    };

    Ok(TriangleQuantities {
        edge_cos: [e0.0, e1.0, e2.0],
        edge_sin: [e0.1, e1.1, e2.1],
        edges: [e0.2, e1.2, e2.2],
        d,
        e,
        f,
        big_i,
        big_j,
        big_k,
        i,
        j,
        k,
        theta,
        l,
        p,
        q,
        r,
        q_long,
        fgh,
        area,
        defect,
        correction,
        residuals,
    })
}

struct LongFormInputs<'a, T: Scalar> {
    py: &'a SuperNumber<T>,
    qy: &'a SuperNumber<T>,
    ry: &'a SuperNumber<T>,
    big_i: &'a SuperNumber<T>,
    big_j: &'a SuperNumber<T>,
    big_k: &'a SuperNumber<T>,
    i: &'a SuperNumber<T>,
    j: &'a SuperNumber<T>,
    k: &'a SuperNumber<T>,
    theta: &'a SuperNumber<T>,
    ab: &'a SuperNumber<T>,
    gd: &'a SuperNumber<T>,
    eph: &'a SuperNumber<T>,
}

/// The nine-term expanded numerator of `8(d+1)(e+1)(f+1)·Q`.
fn long_form_q<T: Scalar>(x: LongFormInputs<'_, T>) -> Result<SuperNumber<T>> {
    let LongFormInputs { py: p, qy: q, ry: r, big_i, big_j, big_k, i, j, k, theta, ab, gd, eph } = x;
    let one = T::one();
    let c = |v: f64| T::lit(v);
    let pp = p * p + one;
    let qq = q * q + one;
    let rr = r * r + one;
    let pm = p * p - one;
    let qm = q * q - one;
    let rm = r * r - one;
    let (ii, jj, kk) = (big_i, big_j, big_k);
    let pq = p * q;
    let qr = q * r;
    let rp = r * p;
    let p_plus_q = p + q;
    let q_plus_r = q + r;
    let r_plus_p = r + p;
    let prod = &p_plus_q * &q_plus_r * &r_plus_p;
    let ab_pp = ab.checked_div(&pp)?;
    let gd_qq = gd.checked_div(&qq)?;
    let eph_rr = eph.checked_div(&rr)?;

    let terms: [SuperNumber<T>; 9] = [
        (eph_rr.clone() * ii * ii + &ab_pp * jj * jj + &gd_qq * kk * kk) * c(-4.0),
        (ii * i + jj * j + kk * k) * c(8.0) - (i * jj * kk + j * ii * kk + k * ii * jj) * c(2.0),
        theta * (ii * ii * &rm + jj * jj * &pm + kk * kk * &qm) * c(2.0),
        theta * (ii * jj * (&rp + one) + jj * kk * (&pq + one) + ii * kk * (&qr + one)) * c(-4.0),
        theta * (ii * &rr * (-&pq + one) + jj * &pp * (-&qr + one) + kk * &qq * (-&rp + one)) * c(-8.0),
        ((kk * jj * i * (&pq + one)).checked_div(&(&pp * &qq))?
            + (kk * ii * j * (&qr + one)).checked_div(&(&qq * &rr))?
            + (ii * jj * k * (&rp + one)).checked_div(&(&pp * &rr))?)
            * c(-2.0),
        &prod
            * ((ii * j + jj * i).checked_div(&(&qq * &r_plus_p))?
                + (jj * k + kk * j).checked_div(&(&rr * &p_plus_q))?
                + (kk * i + ii * k).checked_div(&(&pp * &q_plus_r))?)
            * c(4.0),
        prod.checked_div(&(&pp * &qq * &rr))?
            * ((ii * i * (-&pq + one) * &rr).checked_div(&p_plus_q)?
                + (jj * j * (-&qr + one) * &pp).checked_div(&q_plus_r)?
                + (kk * k * (-&rp + one) * &qq).checked_div(&r_plus_p)?)
            * c(4.0),
        &prod
            * ((ii * (&ab_pp + &gd_qq) - i).checked_div(&p_plus_q)?
                + (jj * (&gd_qq + &eph_rr) - j).checked_div(&q_plus_r)?
                + (kk * (&ab_pp + &eph_rr) - k).checked_div(&r_plus_p)?)
            * c(8.0),
    ];
    let n = p.num_generators();
    Ok(terms.into_iter().fold(SuperNumber::zero(n), |acc, t| acc + t))
}

/// `𝒜 = arccos R − P/√(1 − R²)`.
pub fn area<T: Scalar>(nt: &NormalizedTriangle<T>) -> Result<SuperNumber<T>> {
    Ok(triangle_quantities(nt, T::lit(DEFAULT_TOL))?.area)
}

/// `𝒟 = arccos R + Q/√(1 − R²)`.
pub fn defect<T: Scalar>(nt: &NormalizedTriangle<T>) -> Result<SuperNumber<T>> {
    Ok(triangle_quantities(nt, T::lit(DEFAULT_TOL))?.defect)
}

/// `𝒟 − 𝒜 = (P + Q)/√(1 − R²)`.
pub fn correction<T: Scalar>(nt: &NormalizedTriangle<T>) -> Result<SuperNumber<T>> {
    Ok(triangle_quantities(nt, T::lit(DEFAULT_TOL))?.correction)
}
