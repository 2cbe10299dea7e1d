//! Points of super Minkowski space `R^{2,1|2}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::{SuperNumber, SuperNumberJson};
use crate::scalar::Scalar;

/// A vector `(x1, x2, y | φ, ψ)`: three even and two odd coordinates.
///
/// The pairing is `⟨x,x′⟩ = ½(x1x2′ + x1′x2) − yy′ + φψ′ + φ′ψ`; the super
/// hyperbolic plane is `⟨x,x⟩ = 1` with `x1 + x2 > 0`, the positive light cone
/// is `⟨x,x⟩ = 0` with `x1 + x2 > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperPoint<T: Scalar = f64> {
    pub x1: SuperNumber<T>,
    pub x2: SuperNumber<T>,
    pub y: SuperNumber<T>,
    pub phi: SuperNumber<T>,
    pub psi: SuperNumber<T>,
}

/// Wire form `{"x1","x2","y","phi","psi"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuperPointJson {
    pub x1: SuperNumberJson,
    pub x2: SuperNumberJson,
    pub y: SuperNumberJson,
    pub phi: SuperNumberJson,
    pub psi: SuperNumberJson,
}

impl<T: Scalar> SuperPoint<T> {
    /// Validates parities (even bosons, odd fermions) and a common generator context.
    pub fn new(
        x1: SuperNumber<T>,
        x2: SuperNumber<T>,
        y: SuperNumber<T>,
        phi: SuperNumber<T>,
        psi: SuperNumber<T>,
    ) -> Result<Self> {
        let n = x1.num_generators();
        for c in [&x2, &y, &phi, &psi] {
            if c.num_generators() != n {
                return Err(Error::ContextMismatch { left: n, right: c.num_generators() });
            }
        }
        for (name, c) in [("x1", &x1), ("x2", &x2), ("y", &y)] {
            if !c.is_even() {
                return Err(Error::ParityViolation(format!("coordinate {name} must be even")));
            }
        }
        for (name, c) in [("phi", &phi), ("psi", &psi)] {
            if !c.is_odd() {
                return Err(Error::ParityViolation(format!("coordinate {name} must be odd")));
            }
        }
        Ok(Self { x1, x2, y, phi, psi })
    }

    /// A point with real coordinates and vanishing fermions.
    pub fn bosonic(n: usize, x1: T, x2: T, y: T) -> Self {
        Self {
            x1: SuperNumber::constant(n, x1),
            x2: SuperNumber::constant(n, x2),
            y: SuperNumber::constant(n, y),
            phi: SuperNumber::zero(n),
            psi: SuperNumber::zero(n),
        }
    }

    /// The point of `IH` with bosonic shape `(e^b r, e^{-b} r, y)`, `r = √(1+y²)`,
    /// dressed by fermions `φ, ψ` (all coordinates scaled by `1 − φψ`).
    pub fn on_hyperboloid(y: SuperNumber<T>, b: SuperNumber<T>, phi: SuperNumber<T>, psi: SuperNumber<T>) -> Result<Self> {
        let r = (&y * &y + T::one()).sqrt()?;
        let k = -(&phi * &psi) + T::one();
        let x1 = &b.exp() * &r * &k;
        let x2 = &(-&b).exp() * &r * &k;
        let yk = &y * &k;
        Self::new(x1, x2, yk, phi, psi)
    }

    /// The light-cone point with the given `x1, y, φ, ψ` (solves `⟨x,x⟩ = 0` for `x2`).
    pub fn on_light_cone(x1: SuperNumber<T>, y: SuperNumber<T>, phi: SuperNumber<T>, psi: SuperNumber<T>) -> Result<Self> {
        if x1.body() <= T::zero() {
            return Err(Error::ConstraintViolation {
                what: "light-cone point needs positive body(x1)".into(),
                residual: x1.body().as_f64(),
            });
        }
        let x2 = (&y * &y - (&phi * &psi) * T::lit(2.0)).checked_div(&x1)?;
        Self::new(x1, x2, y, phi, psi)
    }

    /// Generator count of the coordinates.
    pub fn num_generators(&self) -> usize {
        self.x1.num_generators()
    }

    /// Coordinates in the order `x1, x2, y, φ, ψ`.
    pub fn coords(&self) -> [&SuperNumber<T>; 5] {
        [&self.x1, &self.x2, &self.y, &self.phi, &self.psi]
    }

    /// Applies `f` to every coordinate.
    pub fn map(&self, f: impl Fn(&SuperNumber<T>) -> SuperNumber<T>) -> Self {
        Self { x1: f(&self.x1), x2: f(&self.x2), y: f(&self.y), phi: f(&self.phi), psi: f(&self.psi) }
    }

    /// Coordinatewise combination of two points.
    pub fn zip(&self, other: &Self, f: impl Fn(&SuperNumber<T>, &SuperNumber<T>) -> SuperNumber<T>) -> Self {
        Self {
            x1: f(&self.x1, &other.x1),
            x2: f(&self.x2, &other.x2),
            y: f(&self.y, &other.y),
            phi: f(&self.phi, &other.phi),
            psi: f(&self.psi, &other.psi),
        }
    }

    /// Vector sum.
    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    /// Vector difference.
    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    /// Multiplication by an even super number `λ` (from the left).
    pub fn scale(&self, lambda: &SuperNumber<T>) -> Self {
        self.map(|c| lambda * c)
    }

    /// Multiplication by a real number.
    pub fn scale_real(&self, k: T) -> Self {
        self.map(|c| c.scale(k))
    }

    /// The symmetric boson-valued pairing.
    pub fn pairing(&self, other: &Self) -> SuperNumber<T> {
        let half = T::lit(0.5);
        (&self.x1 * &other.x2 + &other.x1 * &self.x2) * half - &self.y * &other.y
            + &self.phi * &other.psi
            + &other.phi * &self.psi
    }

    /// `⟨x,x⟩`.
    pub fn norm2(&self) -> SuperNumber<T> {
        self.pairing(self)
    }

    /// `max |⟨x,x⟩ − 1|` coefficientwise.
    pub fn ih_residual(&self) -> T {
        (self.norm2() - T::one()).max_abs()
    }

    /// Fails unless the point lies on `IH` within `tol`.
    pub fn check_ih(&self, tol: T) -> Result<()> {
        let r = self.ih_residual();
        if r > tol {
            return Err(Error::ConstraintViolation { what: "point is not on IH (<x,x> != 1)".into(), residual: r.as_f64() });
        }
        if self.x1.body() + self.x2.body() <= T::zero() {
            return Err(Error::ConstraintViolation {
                what: "point is on the negative sheet (x1 + x2 <= 0)".into(),
                residual: (self.x1.body() + self.x2.body()).as_f64(),
            });
        }
        Ok(())
    }

    /// Fails unless the point lies on the positive light cone within `tol`.
    pub fn check_light_cone(&self, tol: T) -> Result<()> {
        let r = self.norm2().max_abs();
        if r > tol {
            return Err(Error::ConstraintViolation { what: "point is not isotropic (<x,x> != 0)".into(), residual: r.as_f64() });
        }
        if self.x1.body() + self.x2.body() <= T::zero() {
            return Err(Error::ConstraintViolation {
                what: "light-cone point must have x1 + x2 > 0".into(),
                residual: (self.x1.body() + self.x2.body()).as_f64(),
            });
        }
        Ok(())
    }

    /// Largest coordinatewise coefficient difference.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.coords().iter().zip(other.coords()).fold(T::zero(), |m, (a, b)| m.max(a.max_abs_diff(b)))
    }

    /// Bodies of the bosonic coordinates `(x1, x2, y)`.
    pub fn body3(&self) -> [T; 3] {
        [self.x1.body(), self.x2.body(), self.y.body()]
    }

    /// The canonical map `IH → ĤH`: `(1 + φψ)(x1, x2, y | 0, 0)`.
    pub fn hat_map(&self, tol: T) -> Result<Self> {
        self.check_ih(tol)?;
        let k = &self.phi * &self.psi + T::one();
        let n = self.num_generators();
        Ok(Self { x1: &k * &self.x1, x2: &k * &self.x2, y: &k * &self.y, phi: SuperNumber::zero(n), psi: SuperNumber::zero(n) })
    }

    /// Wire encoding.
    pub fn to_json(&self) -> SuperPointJson {
        SuperPointJson {
            x1: self.x1.to_json(),
            x2: self.x2.to_json(),
            y: self.y.to_json(),
            phi: self.phi.to_json(),
            psi: self.psi.to_json(),
        }
    }

    /// Decodes and validates parities against generator count `n`.
    pub fn from_json(json: &SuperPointJson, n: usize) -> Result<Self> {
        Self::new(
            SuperNumber::from_json(&json.x1, n)?,
            SuperNumber::from_json(&json.x2, n)?,
            SuperNumber::from_json(&json.y, n)?,
            SuperNumber::from_json(&json.phi, n)?,
            SuperNumber::from_json(&json.psi, n)?,
        )
    }
}
