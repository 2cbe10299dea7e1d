//! Moving a triangle into the normal position required by the edge formulas.

use crate::error::{Error, Result};
use crate::geodesics::angle_cos;
use crate::grassmann::SuperNumber;
use crate::scalar::Scalar;
use crate::superlinalg::{OSpElement, SuperPoint};

/// The identity is kept when it is admissible with at least this score.
pub const NORMALIZATION_MIN_SCORE: f64 = 0.05;

/// Candidates with `|body(t)|` at most this are rejected.
pub const NORMALIZATION_T_TOL: f64 = 1e-6;

const THETA_STEPS: usize = 48;
const TAU_STEPS: usize = 48;
const TAU_MAX: f64 = 1.5;

/// A triangle `(P, Q, R)` with equal first fermionic coordinates `α = γ = ε`
/// and body orderings `0 < p1 < q1 < r1`, `0 < r2 < q2 < p2`.
///
/// `vertices[k] = witness . input[labels[k]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedTriangle<T: Scalar = f64> {
    pub p: SuperPoint<T>,
    pub q: SuperPoint<T>,
    pub r: SuperPoint<T>,
    /// Group element carrying the (relabeled) input vertices to `p, q, r`.
    pub witness: OSpElement<T>,
    /// Input index of each output vertex.
    pub labels: [usize; 3],
    /// Conditioning score of the chosen bosonic motion (larger is better).
    pub score: T,
    /// `t = (q p1 − p q1) + (r q1 − q r1) + (p r1 − r p1)`.
    pub t: SuperNumber<T>,
}

impl<T: Scalar> NormalizedTriangle<T> {
    /// The vertices in order.
    pub fn vertices(&self) -> [&SuperPoint<T>; 3] {
        [&self.p, &self.q, &self.r]
    }

    /// Largest deviation of `γ` and `ε` from `α`.
    pub fn fermion_residual(&self) -> T {
        self.q.phi.max_abs_diff(&self.p.phi).max(self.r.phi.max_abs_diff(&self.p.phi))
    }

    /// Whether the strict body orderings hold.
    pub fn orderings_hold(&self) -> bool {
        let [p1, p2, _] = self.p.body3();
        let [q1, q2, _] = self.q.body3();
        let [r1, r2, _] = self.r.body3();
        T::zero() < p1 && p1 < q1 && q1 < r1 && T::zero() < r2 && r2 < q2 && q2 < p2
    }
}

fn mat_mul<T: Scalar>(x: [T; 4], y: [T; 4]) -> [T; 4] {
    [x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]]
}

/// Bodies of `g . x` for a real `SL(2)` block `g = [[a, b], [c, d]]`.
fn real_act<T: Scalar>(m: [T; 4], x: [T; 3]) -> [T; 3] {
    let [a, b, c, d] = m;
    let [x1, x2, y] = x;
    let two = T::lit(2.0);
    [
        a * a * x1 + two * a * c * y + c * c * x2,
        b * b * x1 + two * b * d * y + d * d * x2,
        a * b * x1 + (a * d + b * c) * y + c * d * x2,
    ]
}

/// Scores a bosonic configuration; `None` unless the orderings hold after sorting by `x2`.
fn score<T: Scalar>(bodies: [[T; 3]; 3]) -> Option<(T, [usize; 3])> {
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| bodies[j][1].partial_cmp(&bodies[i][1]).unwrap_or(std::cmp::Ordering::Equal));
    let [p, q, r] = order.map(|k| bodies[k]);
    if !(T::zero() < p[0] && p[0] < q[0] && q[0] < r[0] && T::zero() < r[1] && r[1] < q[1] && q[1] < p[1]) {
        return None;
    }
    let t = (q[2] * p[0] - p[2] * q[0]) + (r[2] * q[0] - q[2] * r[0]) + (p[2] * r[0] - r[2] * p[0]);
    let mut s = t.abs() / r[0].max(p[1]);
    for g in [(q[0] - p[0]) / q[0], (r[0] - q[0]) / r[0], (p[1] - q[1]) / p[1], (q[1] - r[1]) / q[1]] {
        s = s.min(g);
    }
    for (a, b) in [(p, q), (q, r), (r, p)] {
        for i in 0..2 {
            s = s.min((b[2] * a[i] - a[2] * b[i]).abs() / (a[i] + b[i]));
        }
    }
    Some((s, order))
}

/// Finds a group element and relabeling that put `(P, Q, R)` in normal position.
///
/// A deterministic grid over rotations and boosts of `SL(2, R)` arranges the
/// body orderings (the identity is kept when it is already well conditioned);
/// the odd element `u(ξ, η)` then equalizes the first fermionic coordinates by
/// solving a 2×2 linear system with determinant `t`.
pub fn normalize_triangle<T: Scalar>(p: &SuperPoint<T>, q: &SuperPoint<T>, r: &SuperPoint<T>) -> Result<NormalizedTriangle<T>> {
    let n = p.num_generators();
    let input = [p, q, r];
    // coincident or collinear vertices have no normal position; report them as such
    angle_cos(p, q, r)?;
    angle_cos(q, r, p)?;
    let bodies = input.map(|x| x.body3());

    let identity = [T::one(), T::zero(), T::zero(), T::one()];
    let mut best: Option<(T, [T; 4], [usize; 3])> = None;
    if let Some((s, order)) = score(bodies) {
        if s >= T::lit(NORMALIZATION_MIN_SCORE) {
            best = Some((s, identity, order));
        }
    }
    if best.is_none() {
        let half = T::lit(0.5);
        for ia in 0..THETA_STEPS {
            let theta = T::lit(2.0) * T::PI() * T::from_count(ia) / T::from_count(THETA_STEPS);
            let (sn, cs) = (theta * half).sin_cos();
            let rot = [cs, -sn, sn, cs];
            for ib in 0..=TAU_STEPS {
                let tau = T::lit(2.0 * TAU_MAX) * T::from_count(ib) / T::from_count(TAU_STEPS) - T::lit(TAU_MAX);
                let (ch, sh) = ((tau * half).cosh(), (tau * half).sinh());
                let m = mat_mul(rot, [ch, sh, sh, ch]);
                if let Some((s, order)) = score(bodies.map(|x| real_act(m, x))) {
                    if best.as_ref().is_none_or(|b| s > b.0) {
                        best = Some((s, m, order));
                    }
                }
            }
        }
    }
    let Some((best_score, m, labels)) = best else {
        return Err(Error::DegenerateConfiguration("no bosonic motion in the search grid achieves the vertex orderings".into()));
    };

    let g = OSpElement::sl2_real(n, m, T::lit(1e-9))?;
    let [mp, mq, mr] = labels.map(|k| g.act(input[k]));
    let (p1, p, al) = (&mp.x1, &mp.y, &mp.phi);
    let (q1, q, ga) = (&mq.x1, &mq.y, &mq.phi);
    let (r1, r, ep) = (&mr.x1, &mr.y, &mr.phi);
    let t = (q * p1 - p * q1) + (r * q1 - q * r1) + (p * r1 - r * p1);
    if t.body().abs() <= T::lit(NORMALIZATION_T_TOL) {
        return Err(Error::DegenerateConfiguration(format!("t has body {:e}", t.body().as_f64())));
    }
    let dg = ga - al;
    let de = ep - al;
    let xi = ((p - r) * &dg + (q - p) * &de).checked_div(&t)?;
    let eta = ((r1 - p1) * &dg + (p1 - q1) * &de).checked_div(&t)?;
    let u = OSpElement::make_u(&xi, &eta)?;
    let [np, nq, nr] = [&mp, &mq, &mr].map(|x| u.act(x));
    let out = NormalizedTriangle { p: np, q: nq, r: nr, witness: g.mul(&u), labels, score: best_score, t };
    if !out.orderings_hold() {
        return Err(Error::DegenerateConfiguration("vertex orderings lost after the odd correction".into()));
    }
    Ok(out)
}
