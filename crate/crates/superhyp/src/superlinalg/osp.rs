//! The orthosymplectic supergroup `OSp(1|2)` and its adjoint action.

use crate::error::{Error, Result};
use crate::grassmann::{SuperNumber, SuperNumberJson};
use crate::scalar::Scalar;
use crate::superlinalg::point::SuperPoint;

/// Row/column parities of the 3×3 block layout: two even rows, one odd.
const PARITY: [usize; 3] = [0, 0, 1];

/// A 3×3 matrix of super numbers with parity pattern `[0,0,1]`.
///
/// Multiplication is the ordinary matrix product except that a term picks up
/// a sign `−1` when both factors sit in odd blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperMatrix<T: Scalar = f64> {
    pub m: [[SuperNumber<T>; 3]; 3],
}

impl<T: Scalar> SuperMatrix<T> {
    /// Diagonal matrix with the given entries.
    pub fn diag(n: usize, d: [T; 3]) -> Self {
        let z = || SuperNumber::zero(n);
        Self {
            m: [
                [SuperNumber::constant(n, d[0]), z(), z()],
                [z(), SuperNumber::constant(n, d[1]), z()],
                [z(), z(), SuperNumber::constant(n, d[2])],
            ],
        }
    }

    /// The form `J = [[0,−1,0],[1,0,0],[0,0,1]]` of the orthosymplectic condition.
    pub fn j(n: usize) -> Self {
        let z = || SuperNumber::zero(n);
        let c = |v: f64| SuperNumber::constant(n, T::lit(v));
        Self { m: [[z(), c(-1.0), z()], [c(1.0), z(), z()], [z(), z(), c(1.0)]] }
    }

    /// Supermatrix product.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.m[0][0].num_generators();
        let mut out: [[SuperNumber<T>; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| SuperNumber::zero(n)));
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let mut acc = SuperNumber::zero(n);
                for (k, &pk) in PARITY.iter().enumerate() {
                    let odd_left = (PARITY[i] + pk) % 2 == 1;
                    let odd_right = (pk + PARITY[j]) % 2 == 1;
                    let term = &self.m[i][k] * &other.m[k][j];
                    acc = if odd_left && odd_right { acc - term } else { acc + term };
                }
                *entry = acc;
            }
        }
        Self { m: out }
    }

    /// Largest coefficient difference over all entries.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut r = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                r = r.max(self.m[i][j].max_abs_diff(&other.m[i][j]));
            }
        }
        r
    }
}

/// An element `[[a, b, α], [c, d, β], [γ, δ, f]]` of `OSp(1|2)`.
///
/// Group elements satisfy `sdet g = 1` and `g^{st} J g = J`, equivalently the
/// constraint equations `α = bγ − aδ`, `β = dγ − cδ`, `f = 1 + αβ`,
/// `γ = aβ − cα`, `δ = bβ − dα`, `f^{-1} = ad − bc`.
#[derive(Debug, Clone, PartialEq)]
pub struct OSpElement<T: Scalar = f64> {
    pub a: SuperNumber<T>,
    pub b: SuperNumber<T>,
    pub alpha: SuperNumber<T>,
    pub c: SuperNumber<T>,
    pub d: SuperNumber<T>,
    pub beta: SuperNumber<T>,
    pub gamma: SuperNumber<T>,
    pub delta: SuperNumber<T>,
    pub f: SuperNumber<T>,
}

/// Names of the six constraint equations, in the order of [`OSpElement::constraint_residuals`].
pub const CONSTRAINT_NAMES: [&str; 6] = [
    "alpha = b gamma - a delta",
    "beta = d gamma - c delta",
    "f = 1 + alpha beta",
    "gamma = a beta - c alpha",
    "delta = b beta - d alpha",
    "f^-1 = ad - bc",
];

impl<T: Scalar> OSpElement<T> {
    /// Builds from rows without checking the group constraints (parities are checked).
    pub fn from_rows(rows: [[SuperNumber<T>; 3]; 3]) -> Result<Self> {
        let n = rows[0][0].num_generators();
        for (i, row) in rows.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.num_generators() != n {
                    return Err(Error::ContextMismatch { left: n, right: e.num_generators() });
                }
                let odd_block = (PARITY[i] + PARITY[j]) % 2 == 1;
                let ok = if odd_block { e.is_odd() } else { e.is_even() };
                if !ok {
                    return Err(Error::ParityViolation(format!(
                        "entry ({},{}) must be {}",
                        i + 1,
                        j + 1,
                        if odd_block { "odd" } else { "even" }
                    )));
                }
            }
        }
        let [[a, b, alpha], [c, d, beta], [gamma, delta, f]] = rows;
        Ok(Self { a, b, alpha, c, d, beta, gamma, delta, f })
    }

    /// Rows as a supermatrix.
    pub fn matrix(&self) -> SuperMatrix<T> {
        SuperMatrix {
            m: [
                [self.a.clone(), self.b.clone(), self.alpha.clone()],
                [self.c.clone(), self.d.clone(), self.beta.clone()],
                [self.gamma.clone(), self.delta.clone(), self.f.clone()],
            ],
        }
    }

    fn from_matrix_unchecked(m: SuperMatrix<T>) -> Self {
        let [[a, b, alpha], [c, d, beta], [gamma, delta, f]] = m.m;
        Self { a, b, alpha, c, d, beta, gamma, delta, f }
    }

    /// Generator count of the entries.
    pub fn num_generators(&self) -> usize {
        self.a.num_generators()
    }

    /// The identity element.
    pub fn identity(n: usize) -> Self {
        Self::from_matrix_unchecked(SuperMatrix::diag(n, [T::one(); 3]))
    }

    /// The bosonic element `[[a,b,0],[c,d,0],[0,0,1]]` of `SL2hat` (even entries, `ad − bc = 1`).
    pub fn sl2hat(a: SuperNumber<T>, b: SuperNumber<T>, c: SuperNumber<T>, d: SuperNumber<T>, tol: T) -> Result<Self> {
        let n = a.num_generators();
        let g = Self::from_rows([
            [a, b, SuperNumber::zero(n)],
            [c, d, SuperNumber::zero(n)],
            [SuperNumber::zero(n), SuperNumber::zero(n), SuperNumber::one(n)],
        ])?;
        let r = (&g.a * &g.d - &g.b * &g.c - T::one()).max_abs();
        if r > tol {
            return Err(Error::ConstraintViolation { what: "SL2hat block needs ad - bc = 1".into(), residual: r.as_f64() });
        }
        Ok(g)
    }

    /// Real `SL(2,R)` element embedded in `n` generators.
    pub fn sl2_real(n: usize, m: [T; 4], tol: T) -> Result<Self> {
        let c = |v: T| SuperNumber::constant(n, v);
        Self::sl2hat(c(m[0]), c(m[1]), c(m[2]), c(m[3]), tol)
    }

    /// The odd-parameter element
    /// `u(α,β) = [[1−αβ/2, 0, α], [0, 1−αβ/2, β], [β, −α, 1+αβ]]`.
    pub fn make_u(alpha: &SuperNumber<T>, beta: &SuperNumber<T>) -> Result<Self> {
        if !alpha.is_odd() || !beta.is_odd() {
            return Err(Error::ParityViolation("u(alpha, beta) needs odd arguments".into()));
        }
        let n = alpha.num_generators();
        let ab = alpha * beta;
        let h = &ab * T::lit(-0.5) + T::one();
        Self::from_rows([
            [h.clone(), SuperNumber::zero(n), alpha.clone()],
            [SuperNumber::zero(n), h, beta.clone()],
            [beta.clone(), -alpha, &ab + T::one()],
        ])
    }

    /// Element with prescribed bosonic part `s ∈ SL2hat` and bottom-row fermions `(γ, δ)`:
    /// the even block is `(1 − γδ/2)·s` and `α, β, f` follow from the constraint equations.
    /// This equals `s · u(−δ, γ)`.
    pub fn from_even_block(s: &Self, gamma: &SuperNumber<T>, delta: &SuperNumber<T>) -> Result<Self> {
        if !gamma.is_odd() || !delta.is_odd() {
            return Err(Error::ParityViolation("odd seed (gamma, delta) required".into()));
        }
        let k = (gamma * delta) * T::lit(-0.5) + T::one();
        let (a, b, c, d) = (&k * &s.a, &k * &s.b, &k * &s.c, &k * &s.d);
        let alpha = &b * gamma - &a * delta;
        let beta = &d * gamma - &c * delta;
        let f = &alpha * &beta + T::one();
        Self::from_rows([[a, b, alpha], [c, d, beta], [gamma.clone(), delta.clone(), f]])
    }

    /// Supermatrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        Self::from_matrix_unchecked(self.matrix().mul(&other.matrix()))
    }

    /// Super transpose `[[a, c, γ], [b, d, δ], [−α, −β, f]]`.
    pub fn super_transpose(&self) -> SuperMatrix<T> {
        SuperMatrix {
            m: [
                [self.a.clone(), self.c.clone(), self.gamma.clone()],
                [self.b.clone(), self.d.clone(), self.delta.clone()],
                [-&self.alpha, -&self.beta, self.f.clone()],
            ],
        }
    }

    /// `g^{-1} = J^{-1} g^{st} J = [[d, −b, δ], [−c, a, −γ], [−β, α, f]]`.
    pub fn inverse(&self) -> Self {
        Self {
            a: self.d.clone(),
            b: -&self.b,
            alpha: self.delta.clone(),
            c: -&self.c,
            d: self.a.clone(),
            beta: -&self.gamma,
            gamma: -&self.beta,
            delta: self.alpha.clone(),
            f: self.f.clone(),
        }
    }

    /// Berezinian `f^{-1} det([[a,b],[c,d]] + f^{-1}[[αγ, αδ],[βγ, βδ]])`.
    pub fn sdet(&self) -> Result<SuperNumber<T>> {
        let fi = self.f.invert().map_err(|_| Error::ZeroBody { context: "sdet (f)" })?;
        let m00 = &self.a + &fi * &self.alpha * &self.gamma;
        let m01 = &self.b + &fi * &self.alpha * &self.delta;
        let m10 = &self.c + &fi * &self.beta * &self.gamma;
        let m11 = &self.d + &fi * &self.beta * &self.delta;
        Ok(&fi * (&m00 * &m11 - &m01 * &m10))
    }

    /// `max |g^{st} J g − J|` over all coefficients.
    pub fn orthosymplectic_residual(&self) -> T {
        let n = self.num_generators();
        let j = SuperMatrix::j(n);
        self.super_transpose().mul(&j).mul(&self.matrix()).max_abs_diff(&j)
    }

    /// Residuals of the six constraint equations (see [`CONSTRAINT_NAMES`]).
    pub fn constraint_residuals(&self) -> Result<[T; 6]> {
        let fi = self.f.invert()?;
        Ok([
            self.alpha.max_abs_diff(&(&self.b * &self.gamma - &self.a * &self.delta)),
            self.beta.max_abs_diff(&(&self.d * &self.gamma - &self.c * &self.delta)),
            self.f.max_abs_diff(&(&self.alpha * &self.beta + T::one())),
            self.gamma.max_abs_diff(&(&self.a * &self.beta - &self.c * &self.alpha)),
            self.delta.max_abs_diff(&(&self.b * &self.beta - &self.d * &self.alpha)),
            fi.max_abs_diff(&(&self.a * &self.d - &self.b * &self.c)),
        ])
    }

    /// Verifies `sdet = 1`, `g^{st} J g = J` and the constraint equations within `tol`.
    pub fn check(&self, tol: T) -> Result<()> {
        let sdet_res = (self.sdet()? - T::one()).max_abs();
        if sdet_res > tol {
            return Err(Error::ConstraintViolation { what: "sdet != 1".into(), residual: sdet_res.as_f64() });
        }
        let orth = self.orthosymplectic_residual();
        if orth > tol {
            return Err(Error::ConstraintViolation { what: "g^st J g != J".into(), residual: orth.as_f64() });
        }
        for (name, r) in CONSTRAINT_NAMES.iter().zip(self.constraint_residuals()?) {
            if r > tol {
                return Err(Error::ConstraintViolation { what: (*name).into(), residual: r.as_f64() });
            }
        }
        Ok(())
    }

    /// Splits `g = s · u(α, β)` with `s ∈ SL2hat`; returns `(s, α, β)`.
    pub fn factorize(&self) -> Result<(Self, SuperNumber<T>, SuperNumber<T>)> {
        let alpha = -&self.delta;
        let beta = self.gamma.clone();
        let u = Self::make_u(&alpha, &beta)?;
        let mut s = self.mul(&u.inverse());
        // the odd block of s vanishes up to rounding; store it exactly
        let n = self.num_generators();
        s.alpha = SuperNumber::zero(n);
        s.beta = SuperNumber::zero(n);
        s.gamma = SuperNumber::zero(n);
        s.delta = SuperNumber::zero(n);
        s.f = SuperNumber::one(n);
        Ok((s, alpha, beta))
    }

    /// Adjoint action `A ↦ g^{st} A g` on `A = [[x1, y, φ], [y, x2, ψ], [−φ, −ψ, 0]]`.
    ///
    /// This is a right action: `act(gh, x) = act(h, act(g, x))`.
    pub fn act(&self, x: &SuperPoint<T>) -> SuperPoint<T> {
        let n = self.num_generators();
        let a = SuperMatrix {
            m: [
                [x.x1.clone(), x.y.clone(), x.phi.clone()],
                [x.y.clone(), x.x2.clone(), x.psi.clone()],
                [-&x.phi, -&x.psi, SuperNumber::zero(n)],
            ],
        };
        let b = self.super_transpose().mul(&a).mul(&self.matrix());
        let [[x1, y, phi], [_, x2, psi], _] = b.m;
        SuperPoint { x1, x2, y, phi, psi }
    }

    /// Largest coefficient difference over all entries.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.matrix().max_abs_diff(&other.matrix())
    }

    /// Entries row-major, for JSON.
    pub fn to_json(&self) -> Vec<SuperNumberJson> {
        self.matrix().m.iter().flatten().map(|e| e.to_json()).collect()
    }

    /// Decodes nine row-major entries (parities checked, constraints not).
    pub fn from_json(entries: &[SuperNumberJson], n: usize) -> Result<Self> {
        if entries.len() != 9 {
            return Err(Error::InvalidIndex(format!("OSp element needs 9 entries, got {}", entries.len())));
        }
        let e = |k: usize| SuperNumber::from_json(&entries[k], n);
        Self::from_rows([[e(0)?, e(1)?, e(2)?], [e(3)?, e(4)?, e(5)?], [e(6)?, e(7)?, e(8)?]])
    }
}

/// The element `u^x = u(yψ − x2φ, yφ − x1ψ)` that strips the fermions of `x`:
/// `u^x . x = (1 + φψ)(x1, x2, y | 0, 0)`, the canonical image `hat_map(x)` on the bosonic hyperboloid.
pub fn canonical_u<T: Scalar>(x: &SuperPoint<T>) -> Result<OSpElement<T>> {
    let xi = &x.y * &x.psi - &x.x2 * &x.phi;
    let eta = &x.y * &x.phi - &x.x1 * &x.psi;
    OSpElement::make_u(&xi, &eta)
}
