//! Taylor coefficients of the scalar functions that lift to super numbers.
//!
//! A lift `f(b + s) = Σ_k c_k s^k` needs `c_k = f^(k)(b)/k!` up to the
//! nilpotency order of the soul `s`. The coefficients are produced from
//! closed-form recurrences (power-series algebra on the derivative), never
//! from numerical differentiation.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Descriptor of a real-analytic function that can be lifted to `R̂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Analytic {
    /// Square root; body must be positive.
    Sqrt,
    /// Natural logarithm; body must be positive.
    Log,
    Exp,
    Sin,
    Cos,
    Sinh,
    Cosh,
    Arctan,
    /// Inverse cosine; body must lie in (-1, 1).
    Arccos,
    /// Inverse hyperbolic cosine; body must exceed 1.
    Arccosh,
    /// Multiplicative inverse; body must be non-zero.
    Recip,
}

impl Analytic {
    /// Every descriptor, for exhaustive tests.
    pub const ALL: [Analytic; 11] = [
        Analytic::Sqrt,
        Analytic::Log,
        Analytic::Exp,
        Analytic::Sin,
        Analytic::Cos,
        Analytic::Sinh,
        Analytic::Cosh,
        Analytic::Arctan,
        Analytic::Arccos,
        Analytic::Arccosh,
        Analytic::Recip,
    ];

    /// Lower-case function name used in error messages.
    pub fn name(self) -> &'static str {
        match self {
            Analytic::Sqrt => "sqrt",
            Analytic::Log => "log",
            Analytic::Exp => "exp",
            Analytic::Sin => "sin",
            Analytic::Cos => "cos",
            Analytic::Sinh => "sinh",
            Analytic::Cosh => "cosh",
            Analytic::Arctan => "arctan",
            Analytic::Arccos => "arccos",
            Analytic::Arccosh => "arccosh",
            Analytic::Recip => "recip",
        }
    }

    /// Whether `b` lies in the open domain of the function.
    pub fn in_domain<T: Scalar>(self, b: T) -> bool {
        match self {
            Analytic::Sqrt | Analytic::Log => b > T::zero(),
            Analytic::Arccos => b.abs() < T::one(),
            Analytic::Arccosh => b > T::one(),
            Analytic::Recip => b != T::zero(),
            _ => b.is_finite(),
        }
    }

    /// Scalar evaluation at a real point (no domain check).
    pub fn eval<T: Scalar>(self, x: T) -> T {
        match self {
            Analytic::Sqrt => x.sqrt(),
            Analytic::Log => x.ln(),
            Analytic::Exp => x.exp(),
            Analytic::Sin => x.sin(),
            Analytic::Cos => x.cos(),
            Analytic::Sinh => x.sinh(),
            Analytic::Cosh => x.cosh(),
            Analytic::Arctan => x.atan(),
            Analytic::Arccos => x.acos(),
            Analytic::Arccosh => x.acosh(),
            Analytic::Recip => x.recip(),
        }
    }

    /// Coefficients `c_0..=c_order` of the Taylor expansion at `b`.
    pub fn taylor<T: Scalar>(self, b: T, order: usize) -> Result<Vec<T>> {
        if !self.in_domain(b) {
            return Err(Error::DomainViolation { function: self.name(), body: b.as_f64() });
        }
        let n = order + 1;
        let one = T::one();
        let c = match self {
            Analytic::Exp => {
                let mut c = vec![b.exp(); n];
                for k in 1..n {
                    c[k] = c[k - 1] / T::from_count(k);
                }
                c
            }
            Analytic::Log => {
                let mut c = vec![b.ln(); n];
                let mut pow = one;
                for (k, ck) in c.iter_mut().enumerate().skip(1) {
                    pow = pow / b;
                    let sign = if k % 2 == 1 { one } else { -one };
                    *ck = sign * pow / T::from_count(k);
                }
                c
            }
            Analytic::Sqrt => binomial_power(b, T::lit(0.5), n),
            Analytic::Recip => {
                let mut c = vec![one / b; n];
                for k in 1..n {
                    c[k] = -c[k - 1] / b;
                }
                c
            }
            Analytic::Sin | Analytic::Cos | Analytic::Sinh | Analytic::Cosh => trig_like(self, b, n),
            Analytic::Arctan => {
                // f' = (1 + x²)^-1 expanded around b
                let g = [one + b * b, T::lit(2.0) * b, one];
                integrate(b.atan(), &series_power(&g, -one, n.saturating_sub(1)))
            }
            Analytic::Arccos => {
                // f' = -(1 - x²)^(-1/2)
                let g = [one - b * b, -T::lit(2.0) * b, -one];
                let d: Vec<T> = series_power(&g, T::lit(-0.5), n.saturating_sub(1)).into_iter().map(|v| -v).collect();
                integrate(b.acos(), &d)
            }
            Analytic::Arccosh => {
                // f' = (x² - 1)^(-1/2)
                let g = [b * b - one, T::lit(2.0) * b, one];
                integrate(b.acosh(), &series_power(&g, T::lit(-0.5), n.saturating_sub(1)))
            }
        };
        Ok(c)
    }
}

/// Coefficients of `(b + h)^a` in powers of `h`.
fn binomial_power<T: Scalar>(b: T, a: T, n: usize) -> Vec<T> {
    let mut c = vec![b.powf(a); n];
    for k in 1..n {
        let kk = T::from_count(k);
        c[k] = c[k - 1] * (a - kk + T::one()) / (kk * b);
    }
    c
}

/// Coefficients of sin/cos/sinh/cosh at `b + h`: the k-th derivative cycles
/// with period 4 (circular) or 2 (hyperbolic).
fn trig_like<T: Scalar>(f: Analytic, b: T, n: usize) -> Vec<T> {
    let cycle: [T; 4] = match f {
        Analytic::Sin => [b.sin(), b.cos(), -b.sin(), -b.cos()],
        Analytic::Cos => [b.cos(), -b.sin(), -b.cos(), b.sin()],
        Analytic::Sinh => [b.sinh(), b.cosh(), b.sinh(), b.cosh()],
        _ => [b.cosh(), b.sinh(), b.cosh(), b.sinh()],
    };
    let mut out = Vec::with_capacity(n);
    let mut fact = T::one();
    for k in 0..n {
        if k > 0 {
            fact = fact * T::from_count(k);
        }
        out.push(cycle[k % 4] / fact);
    }
    out
}

/// Coefficients `y_0..y_{m-1}` of `g(h)^a` for a polynomial `g` with `g_0 > 0`
/// (or any `g_0 ≠ 0` when `a` is an integer), using `g y' = a g' y`.
fn series_power<T: Scalar>(g: &[T], a: T, m: usize) -> Vec<T> {
    if m == 0 {
        return Vec::new();
    }
    let g0 = g[0];
    let mut y = Vec::with_capacity(m);
    y.push(if a == -T::one() { g0.recip() } else { g0.powf(a) });
    for k in 1..m {
        let mut acc = T::zero();
        for j in 1..=k.min(g.len() - 1) {
            let coeff = (a + T::one()) * T::from_count(j) - T::from_count(k);
            acc = acc + coeff * g[j] * y[k - j];
        }
        y.push(acc / (T::from_count(k) * g0));
    }
    y
}

/// Antiderivative coefficients: `c_0 = value`, `c_k = d_{k-1}/k`.
fn integrate<T: Scalar>(value: T, d: &[T]) -> Vec<T> {
    let mut c = Vec::with_capacity(d.len() + 1);
    c.push(value);
    for (k, dk) in d.iter().enumerate() {
        c.push(*dk / T::from_count(k + 1));
    }
    c
}
