//! Deterministic random generators for super numbers, points, group elements,
//! triangles, edges and ideal triples.
//!
//! Every sampler draws from a seeded ChaCha stream, so a `(seed, N)` pair
//! reproduces the same objects on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::areaforms::GENERICITY_TOL;
use crate::geodesics::angle_cos;
use crate::grassmann::SuperNumber;
use crate::numcheck::{normalize_ideal, IdealTriple, PROVISO_TOL};
use crate::scalar::Scalar;
use crate::superlinalg::{OSpElement, SuperPoint};

/// Scale of degree-1 coefficients of sampled fermions.
pub const ODD_SCALE: f64 = 0.5;
/// Scale of degree-2 coefficients of sampled boson souls.
pub const SOUL_SCALE: f64 = 0.3;

/// Minimum pairwise `body(⟨P,Q⟩) − 1` of sampled triangles.
const MIN_PAIR_GAP: f64 = 0.05;
/// Maximum `|body(cos)|` of sampled interior angles.
const MAX_ANGLE_COS: f64 = 0.95;
/// Minimum relative `|q p_i − p q_i|/(p_i + q_i)` of sampled generic edges.
const MIN_EDGE_GENERICITY: f64 = 0.05;
/// Rejection attempts before a sampler gives up.
const MAX_ATTEMPTS: usize = 10_000;

/// A seeded source of random geometric objects over `n` generators.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
    n: usize,
}

impl Sampler {
    pub fn new(seed: u64, n: usize) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), n }
    }

    /// Generator count of sampled objects.
    pub fn num_generators(&self) -> usize {
        self.n
    }

    /// Uniform real in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    /// Odd number with uniform degree-1 coefficients in `[-scale, scale)`.
    pub fn odd<T: Scalar>(&mut self, scale: f64) -> SuperNumber<T> {
        let mut terms = Vec::with_capacity(self.n);
        for i in 0..self.n {
            terms.push((1u64 << i, T::lit(self.uniform(-scale, scale))));
        }
        SuperNumber::from_masks(self.n, terms)
    }

    /// Even nilpotent number with uniform degree-2 coefficients in `[-scale, scale)`.
    pub fn even_soul<T: Scalar>(&mut self, scale: f64) -> SuperNumber<T> {
        let mut terms = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                terms.push(((1u64 << i) | (1u64 << j), T::lit(self.uniform(-scale, scale))));
            }
        }
        SuperNumber::from_masks(self.n, terms)
    }

    /// Uniform body in `[lo, hi)` plus (if `decorated`) a random even soul.
    pub fn even<T: Scalar>(&mut self, lo: f64, hi: f64, decorated: bool) -> SuperNumber<T> {
        let body = SuperNumber::constant(self.n, T::lit(self.uniform(lo, hi)));
        if decorated {
            body + self.even_soul(SOUL_SCALE)
        } else {
            body
        }
    }

    /// Mixed-parity number with uniform coefficients on all monomials.
    pub fn dense<T: Scalar>(&mut self, body_lo: f64, body_hi: f64, scale: f64) -> SuperNumber<T> {
        let n = self.n;
        let mut terms = vec![(0u64, T::lit(self.uniform(body_lo, body_hi)))];
        for m in 1..(1u64 << n.min(16)) {
            terms.push((m, T::lit(self.uniform(-scale, scale))));
        }
        SuperNumber::from_masks(n, terms)
    }

    /// Point of `IH` with body `y ∈ [-1.5, 1.5)`, boost `b ∈ [-1, 1)`, and (if
    /// `decorated`) random souls and fermions.
    pub fn ih_point<T: Scalar>(&mut self, decorated: bool) -> SuperPoint<T> {
        let y = self.even(-1.5, 1.5, decorated);
        let b = self.even(-1.0, 1.0, decorated);
        let (phi, psi) = if decorated {
            (self.odd(ODD_SCALE), self.odd(ODD_SCALE))
        } else {
            (SuperNumber::zero(self.n), SuperNumber::zero(self.n))
        };
        SuperPoint::on_hyperboloid(y, b, phi, psi).expect("sampled point parameters are in domain")
    }

    /// Vector tangent to `IH` at `x` with random bosonic and fermionic components.
    pub fn tangent<T: Scalar>(&mut self, x: &SuperPoint<T>) -> SuperPoint<T> {
        let v = SuperPoint {
            x1: self.even(-1.0, 1.0, true),
            x2: self.even(-1.0, 1.0, true),
            y: self.even(-1.0, 1.0, true),
            phi: self.odd(ODD_SCALE),
            psi: self.odd(ODD_SCALE),
        };
        v.sub(&x.scale(&x.pairing(&v)))
    }

    /// Real `SL(2, R)` block `[a, b, c, d]` from a rotation, a boost and a shear.
    pub fn sl2_real<T: Scalar>(&mut self) -> [T; 4] {
        let th = self.uniform(0.0, std::f64::consts::TAU);
        let tau = self.uniform(-0.8, 0.8);
        let sh = self.uniform(-0.8, 0.8);
        let (s, c) = (th * 0.5).sin_cos();
        let (ch, shb) = ((tau * 0.5).cosh(), (tau * 0.5).sinh());
        let rot = [c, -s, s, c];
        let boost = [ch, shb, shb, ch];
        let shear = [1.0, sh, 0.0, 1.0];
        let mul = |x: [f64; 4], y: [f64; 4]| {
            [x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]]
        };
        mul(mul(rot, boost), shear).map(T::lit)
    }

    /// Element of `SL2hat`: a real `SL(2)` block dressed by even souls, with `d`
    /// solved from `ad − bc = 1`.
    pub fn sl2hat<T: Scalar>(&mut self) -> OSpElement<T> {
        loop {
            let m = self.sl2_real::<T>();
            if m[0].abs() < T::lit(0.2) {
                continue;
            }
            let n = self.n;
            let a = SuperNumber::constant(n, m[0]) + self.even_soul(SOUL_SCALE * 0.5);
            let b = SuperNumber::constant(n, m[1]) + self.even_soul(SOUL_SCALE * 0.5);
            let c = SuperNumber::constant(n, m[2]) + self.even_soul(SOUL_SCALE * 0.5);
            let d = (&b * &c + T::one()) / &a;
            return OSpElement::sl2hat(a, b, c, d, T::lit(1e-9)).expect("determinant is one by construction");
        }
    }

    /// Random group element `s · u(α, β)` with degree-1 odd parameters.
    pub fn osp<T: Scalar>(&mut self) -> OSpElement<T> {
        let s = self.sl2hat();
        let u = OSpElement::make_u(&self.odd(ODD_SCALE), &self.odd(ODD_SCALE)).expect("odd parameters");
        s.mul(&u)
    }

    /// Well-conditioned triangle: pairwise separated vertices and interior
    /// angle cosines bounded away from `±1`.
    pub fn triangle<T: Scalar>(&mut self, decorated: bool) -> [SuperPoint<T>; 3] {
        for _ in 0..MAX_ATTEMPTS {
            let pts: [SuperPoint<T>; 3] = std::array::from_fn(|_| self.ih_point(decorated));
            if triangle_is_conditioned(&pts) {
                return pts;
            }
        }
        panic!("triangle sampler exhausted its attempts");
    }

    /// Generic edge: two separated points with `|q p_i − p q_i|/(p_i + q_i)`
    /// bounded away from zero for both coordinates.
    pub fn edge<T: Scalar>(&mut self, decorated: bool) -> (SuperPoint<T>, SuperPoint<T>) {
        for _ in 0..MAX_ATTEMPTS {
            let p: SuperPoint<T> = self.ih_point(decorated);
            let q: SuperPoint<T> = self.ih_point(decorated);
            if p.pairing(&q).body() - T::one() < T::lit(MIN_PAIR_GAP) {
                continue;
            }
            if edge_is_generic(&p, &q) {
                return (p, q);
            }
        }
        panic!("edge sampler exhausted its attempts");
    }

    /// Light-cone point over a random boundary angle, scaled by a random
    /// positive factor and (if `decorated`) dressed by fermions.
    pub fn light_cone_point<T: Scalar>(&mut self, decorated: bool) -> SuperPoint<T> {
        let th = self.uniform(0.4, std::f64::consts::TAU - 0.4);
        let scale = self.uniform(0.5, 2.0);
        self.light_cone_at(th, scale, decorated)
    }

    /// Light-cone point over the boundary angle `θ` with bosonic shape
    /// `scale·(1 − cos θ, 1 + cos θ, sin θ)`.
    pub fn light_cone_at<T: Scalar>(&mut self, theta: f64, scale: f64, decorated: bool) -> SuperPoint<T> {
        let n = self.n;
        let mut x1 = SuperNumber::constant(n, T::lit(scale * (1.0 - theta.cos())));
        let mut y = SuperNumber::constant(n, T::lit(scale * theta.sin()));
        let (phi, psi) = if decorated {
            x1 += self.even_soul(SOUL_SCALE * 0.5);
            y += self.even_soul(SOUL_SCALE * 0.5);
            (self.odd(ODD_SCALE), self.odd(ODD_SCALE))
        } else {
            (SuperNumber::zero(n), SuperNumber::zero(n))
        };
        SuperPoint::on_light_cone(x1, y, phi, psi).expect("positive x1 by construction")
    }

    /// Normalized ideal triple at three well-separated boundary angles,
    /// satisfying the divergence proviso on every edge.
    pub fn ideal_triple<T: Scalar>(&mut self, decorated: bool) -> IdealTriple<T> {
        for _ in 0..MAX_ATTEMPTS {
            let base = self.uniform(0.4, 1.4);
            let gaps = [self.uniform(1.2, 2.4), self.uniform(1.2, 2.4)];
            let angles = [base, base + gaps[0], base + gaps[0] + gaps[1]];
            if angles[2] > std::f64::consts::TAU - 0.4 {
                continue;
            }
            let pts: [SuperPoint<T>; 3] = angles.map(|a| {
                let s = self.uniform(0.5, 2.0);
                self.light_cone_at(a, s, decorated)
            });
            let Ok(triple) = normalize_ideal(&pts[0], &pts[1], &pts[2], T::lit(1e-9)) else { continue };
            let ok = triple.edges().iter().all(|(a, b)| {
                let w = &a.x1 * &b.x2 - &a.x2 * &b.x1;
                w.body().abs() > T::lit(PROVISO_TOL.max(0.05)) && a.y.body().abs() > T::lit(0.05)
            });
            if ok {
                return triple;
            }
        }
        panic!("ideal triple sampler exhausted its attempts");
    }
}

fn edge_is_generic<T: Scalar>(p: &SuperPoint<T>, q: &SuperPoint<T>) -> bool {
    let (pb, qb) = (p.body3(), q.body3());
    (0..2).all(|i| {
        let w = qb[2] * pb[i] - pb[2] * qb[i];
        w.abs() > T::lit(GENERICITY_TOL) && w.abs() / (pb[i] + qb[i]) > T::lit(MIN_EDGE_GENERICITY)
    })
}

/// Whether a triangle is separated and non-degenerate enough for the pipelines.
pub fn triangle_is_conditioned<T: Scalar>(pts: &[SuperPoint<T>; 3]) -> bool {
    for (a, b) in [(0, 1), (1, 2), (2, 0)] {
        if pts[a].pairing(&pts[b]).body() - T::one() < T::lit(MIN_PAIR_GAP) {
            return false;
        }
    }
    for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        match angle_cos(&pts[a], &pts[b], &pts[c]) {
            Ok(cs) if cs.body().abs() <= T::lit(MAX_ANGLE_COS) => {}
            _ => return false,
        }
    }
    true
}
