//! Sparse super numbers with exact Grassmann structure and float coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::grassmann::series::Analytic;
use crate::scalar::Scalar;

/// Largest supported generator count (monomials are stored as `u64` bit masks).
pub const MAX_GENERATORS: usize = 64;

/// Coefficients with absolute value below this are dropped during canonicalization.
pub const ZERO_TOL: f64 = 1e-15;

/// Parity of a super number, read off the degrees of its stored monomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    /// Only even-degree monomials (the zero element counts as even).
    Even,
    /// Only odd-degree monomials.
    Odd,
    /// Both degrees present.
    Mixed,
}

/// Element of the Grassmann algebra over the reals with `n` odd generators
/// `θ1..θn`.
///
/// A monomial `θ_{i1}…θ_{ik}` (strictly increasing indices) is stored as the
/// bit mask with bits `i1-1, …, ik-1` set; the empty monomial is the body.
/// Terms are kept sorted by mask with no zero coefficients, so structural
/// equality is meaningful.
#[derive(Clone, PartialEq)]
pub struct SuperNumber<T: Scalar = f64> {
    n: usize,
    terms: Vec<(u64, T)>,
}

/// Sign of the permutation merging monomial `a` (left) and `b` (right), or 0
/// if they share a generator.
#[inline]
pub(crate) fn merge_sign(a: u64, b: u64) -> i32 {
    if a & b != 0 {
        return 0;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        // generators of `a` with larger index must hop over θ_{j+1}
        swaps += if j >= 63 { 0 } else { (a >> (j + 1)).count_ones() };
        rest &= rest - 1;
    }
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Converts a mask to its 1-based generator index list.
pub fn mask_to_indices(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        out.push(rest.trailing_zeros() as usize + 1);
        rest &= rest - 1;
    }
    out
}

/// Converts a strictly increasing 1-based index list to a mask, validating it against `n`.
pub fn indices_to_mask(indices: &[usize], n: usize) -> Result<u64> {
    let mut mask = 0u64;
    let mut last = 0usize;
    for &i in indices {
        if i == 0 || i > n {
            return Err(Error::InvalidIndex(format!("generator index {i} outside 1..={n}")));
        }
        if i <= last {
            return Err(Error::InvalidIndex(format!("indices {indices:?} are not strictly increasing")));
        }
        last = i;
        mask |= 1u64 << (i - 1);
    }
    Ok(mask)
}

/// Canonical display order: by degree, then lexicographically by index list.
fn display_order(a: u64, b: u64) -> Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| mask_to_indices(a).cmp(&mask_to_indices(b)))
}

fn check_n(n: usize) {
    assert!((1..=MAX_GENERATORS).contains(&n), "generator count {n} outside 1..={MAX_GENERATORS}");
}

impl<T: Scalar> SuperNumber<T> {
    /// The zero element over `n` generators.
    ///
    /// # Panics
    /// If `n` is 0 or exceeds [`MAX_GENERATORS`].
    pub fn zero(n: usize) -> Self {
        check_n(n);
        Self { n, terms: Vec::new() }
    }

    /// The unit element.
    pub fn one(n: usize) -> Self {
        Self::constant(n, T::one())
    }

    /// A pure body `c`.
    pub fn constant(n: usize, c: T) -> Self {
        check_n(n);
        Self::from_sorted(n, vec![(0, c)])
    }

    /// The generator `θ_i` (1-based).
    ///
    /// # Panics
    /// If `i` is not in `1..=n`.
    pub fn generator(n: usize, i: usize) -> Self {
        Self::monomial(n, &[i], T::one()).expect("generator index must lie in 1..=n")
    }

    /// `c·θ_{i1}…θ_{ik}` for a strictly increasing index list.
    pub fn monomial(n: usize, indices: &[usize], c: T) -> Result<Self> {
        if n == 0 || n > MAX_GENERATORS {
            return Err(Error::InvalidIndex(format!("generator count {n} outside 1..={MAX_GENERATORS}")));
        }
        let mask = indices_to_mask(indices, n)?;
        Ok(Self::from_sorted(n, vec![(mask, c)]))
    }

    /// Builds a number from `(indices, coefficient)` pairs; repeated monomials are summed.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, T)>,
    {
        if n == 0 || n > MAX_GENERATORS {
            return Err(Error::InvalidIndex(format!("generator count {n} outside 1..={MAX_GENERATORS}")));
        }
        let mut raw = Vec::new();
        for (idx, c) in terms {
            raw.push((indices_to_mask(&idx, n)?, c));
        }
        Ok(Self::from_unsorted(n, raw))
    }

    /// Builds from `(mask, coefficient)` pairs; repeated masks are summed.
    ///
    /// # Panics
    /// If a mask uses a bit at or above `n`.
    pub fn from_masks<I>(n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (u64, T)>,
    {
        check_n(n);
        let raw: Vec<(u64, T)> = terms.into_iter().collect();
        let limit = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        assert!(raw.iter().all(|(m, _)| m & !limit == 0), "mask uses a generator beyond {n}");
        Self::from_unsorted(n, raw)
    }

    fn from_unsorted(n: usize, mut raw: Vec<(u64, T)>) -> Self {
        raw.sort_unstable_by_key(|t| t.0);
        let mut merged: Vec<(u64, T)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            match merged.last_mut() {
                Some(last) if last.0 == m => last.1 = last.1 + c,
                _ => merged.push((m, c)),
            }
        }
        Self::from_sorted(n, merged)
    }

    /// Drops negligible coefficients from an already sorted, duplicate-free list.
    fn from_sorted(n: usize, mut terms: Vec<(u64, T)>) -> Self {
        let tol = T::lit(ZERO_TOL);
        terms.retain(|(_, c)| c.abs() >= tol);
        Self { n, terms }
    }

    /// Same-context constant.
    pub fn constant_like(&self, c: T) -> Self {
        Self::constant(self.n, c)
    }

    /// Same-context zero.
    pub fn zero_like(&self) -> Self {
        Self::zero(self.n)
    }

    /// Generator count `N` of the algebra context.
    pub fn num_generators(&self) -> usize {
        self.n
    }

    /// Stored `(mask, coefficient)` pairs in mask order.
    pub fn terms(&self) -> &[(u64, T)] {
        &self.terms
    }

    /// Stored terms as `(indices, coefficient)` in degree-then-lexicographic order.
    pub fn indexed_terms(&self) -> Vec<(Vec<usize>, T)> {
        let mut ordered: Vec<(u64, T)> = self.terms.clone();
        ordered.sort_by(|a, b| display_order(a.0, b.0));
        ordered.into_iter().map(|(m, c)| (mask_to_indices(m), c)).collect()
    }

    /// Number of stored (non-zero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True for the zero element.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no term is stored (same as [`is_zero`](Self::is_zero)).
    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Coefficient of the monomial with the given mask.
    pub fn coefficient_mask(&self, mask: u64) -> T {
        match self.terms.binary_search_by_key(&mask, |t| t.0) {
            Ok(pos) => self.terms[pos].1,
            Err(_) => T::zero(),
        }
    }

    /// Coefficient of `θ_{i1}…θ_{ik}`; zero for invalid or absent monomials.
    pub fn coefficient(&self, indices: &[usize]) -> T {
        indices_to_mask(indices, self.n).map(|m| self.coefficient_mask(m)).unwrap_or_else(|_| T::zero())
    }

    /// The real part `a_#`.
    pub fn body(&self) -> T {
        match self.terms.first() {
            Some((0, c)) => *c,
            _ => T::zero(),
        }
    }

    /// The nilpotent part `a − a_#`.
    pub fn soul(&self) -> Self {
        let terms = self.terms.iter().filter(|t| t.0 != 0).copied().collect();
        Self { n: self.n, terms }
    }

    /// Parity from the stored monomial degrees.
    pub fn parity(&self) -> Parity {
        let even = self.terms.iter().any(|t| t.0.count_ones() % 2 == 0);
        let odd = self.terms.iter().any(|t| t.0.count_ones() % 2 == 1);
        match (even, odd) {
            (_, false) => Parity::Even,
            (false, true) => Parity::Odd,
            (true, true) => Parity::Mixed,
        }
    }

    /// Even or zero.
    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    /// Odd or zero.
    pub fn is_odd(&self) -> bool {
        self.is_zero() || self.parity() == Parity::Odd
    }

    /// Projection onto even-degree monomials.
    pub fn even_part(&self) -> Self {
        let terms = self.terms.iter().filter(|t| t.0.count_ones() % 2 == 0).copied().collect();
        Self { n: self.n, terms }
    }

    /// Projection onto odd-degree monomials.
    pub fn odd_part(&self) -> Self {
        let terms = self.terms.iter().filter(|t| t.0.count_ones() % 2 == 1).copied().collect();
        Self { n: self.n, terms }
    }

    /// Largest absolute coefficient (0 for zero).
    pub fn max_abs(&self) -> T {
        self.terms.iter().fold(T::zero(), |m, t| m.max(t.1.abs()))
    }

    /// Largest absolute soul coefficient.
    pub fn max_abs_soul(&self) -> T {
        self.terms.iter().filter(|t| t.0 != 0).fold(T::zero(), |m, t| m.max(t.1.abs()))
    }

    /// Coefficientwise distance `max |a_I − b_I|`.
    ///
    /// # Panics
    /// On a context mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        (self - other).max_abs()
    }

    /// Coefficientwise comparison within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.n == other.n && self.max_abs_diff(other) <= tol
    }

    fn ensure_context(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::ContextMismatch { left: self.n, right: other.n })
        }
    }

    /// Sum, failing on a context mismatch.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.ensure_context(other)?;
        Ok(self.combine(other, T::one()))
    }

    /// Difference, failing on a context mismatch.
    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.ensure_context(other)?;
        Ok(self.combine(other, -T::one()))
    }

    /// `self + k·other` by merging the sorted term lists.
    fn combine(&self, other: &Self, k: T) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0, k * b[j].1));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + k * b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|t| (t.0, k * t.1)));
        Self::from_sorted(self.n, out)
    }

    /// Product with Koszul signs, failing on a context mismatch.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.ensure_context(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.n;
        if self.terms.is_empty() || other.terms.is_empty() {
            return Self::zero(n);
        }
        if self.terms.len() == 1 && self.terms[0].0 == 0 {
            return other.scale(self.terms[0].1);
        }
        if other.terms.len() == 1 && other.terms[0].0 == 0 {
            return self.scale(other.terms[0].1);
        }
        let pairs = self.terms.len() * other.terms.len();
        if n <= 16 && (1usize << n) <= 4 * pairs {
            let mut dense = vec![T::zero(); 1usize << n];
            let mut used = vec![false; 1usize << n];
            for &(ma, ca) in &self.terms {
                for &(mb, cb) in &other.terms {
                    let s = merge_sign(ma, mb);
                    if s != 0 {
                        let m = (ma | mb) as usize;
                        let p = ca * cb;
                        dense[m] = if s > 0 { dense[m] + p } else { dense[m] - p };
                        used[m] = true;
                    }
                }
            }
            let terms = dense.into_iter().enumerate().filter(|(m, _)| used[*m]).map(|(m, c)| (m as u64, c)).collect();
            Self::from_sorted(n, terms)
        } else {
            let mut raw = Vec::with_capacity(pairs);
            for &(ma, ca) in &self.terms {
                for &(mb, cb) in &other.terms {
                    let s = merge_sign(ma, mb);
                    if s != 0 {
                        let p = ca * cb;
                        raw.push((ma | mb, if s > 0 { p } else { -p }));
                    }
                }
            }
            Self::from_unsorted(n, raw)
        }
    }

    /// Multiplication by a real scalar.
    pub fn scale(&self, k: T) -> Self {
        Self::from_sorted(self.n, self.terms.iter().map(|&(m, c)| (m, c * k)).collect())
    }

    /// `self^k` for a non-negative integer exponent.
    pub fn powi(&self, k: u32) -> Self {
        let mut out = self.constant_like(T::one());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// `Σ_k c_k·soul^k + …`, i.e. a function given by its Taylor coefficients
    /// `c_k = f^(k)(body)/k!` at the body. Terms beyond the nilpotency order
    /// vanish; surplus coefficients are ignored.
    pub fn lift_series(&self, coeffs: &[T]) -> Self {
        let soul = self.soul();
        let mut out = Self::constant(self.n, coeffs.first().copied().unwrap_or_else(T::zero));
        let mut power = self.constant_like(T::one());
        for &c in coeffs.iter().skip(1) {
            power = &power * &soul;
            if power.is_zero() {
                break;
            }
            out = out.combine(&power, c);
        }
        out
    }

    /// Lift of an analytic function to this super number.
    pub fn analytic(&self, f: Analytic) -> Result<Self> {
        if f == Analytic::Recip && self.body().abs() < T::lit(ZERO_TOL) {
            return Err(Error::ZeroBody { context: "invert" });
        }
        let coeffs = f.taylor(self.body(), self.n)?;
        Ok(self.lift_series(&coeffs))
    }

    /// Multiplicative inverse by the finite geometric series.
    pub fn invert(&self) -> Result<Self> {
        self.analytic(Analytic::Recip)
    }

    pub fn sqrt(&self) -> Result<Self> {
        self.analytic(Analytic::Sqrt)
    }

    pub fn log(&self) -> Result<Self> {
        self.analytic(Analytic::Log)
    }

    pub fn exp(&self) -> Self {
        self.analytic(Analytic::Exp).expect("exp is entire")
    }

    pub fn sin(&self) -> Self {
        self.analytic(Analytic::Sin).expect("sin is entire")
    }

    pub fn cos(&self) -> Self {
        self.analytic(Analytic::Cos).expect("cos is entire")
    }

    pub fn sinh(&self) -> Self {
        self.analytic(Analytic::Sinh).expect("sinh is entire")
    }

    pub fn cosh(&self) -> Self {
        self.analytic(Analytic::Cosh).expect("cosh is entire")
    }

    pub fn arctan(&self) -> Self {
        self.analytic(Analytic::Arctan).expect("arctan is entire on the reals")
    }

    pub fn arccos(&self) -> Result<Self> {
        self.analytic(Analytic::Arccos)
    }

    pub fn arccosh(&self) -> Result<Self> {
        self.analytic(Analytic::Arccosh)
    }

    /// Sign of the body.
    pub fn sign(&self) -> Result<T> {
        let b = self.body();
        if b.abs() < T::lit(ZERO_TOL) {
            Err(Error::ZeroBody { context: "sign" })
        } else if b > T::zero() {
            Ok(T::one())
        } else {
            Ok(-T::one())
        }
    }

    /// `sign(a)·a`.
    pub fn abs(&self) -> Result<Self> {
        Ok(self.scale(self.sign()?))
    }

    /// Order on super numbers: compares bodies only.
    pub fn le(&self, other: &Self) -> bool {
        self.body() <= other.body()
    }

    /// Converts coefficients to another scalar type.
    pub fn cast<U: Scalar>(&self) -> SuperNumber<U> {
        SuperNumber::from_sorted(self.n, self.terms.iter().map(|&(m, c)| (m, U::lit(c.as_f64()))).collect())
    }
}

impl<T: Scalar> fmt::Debug for SuperNumber<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperNumber[N={}]({})", self.n, self)
    }
}

impl<T: Scalar> fmt::Display for SuperNumber<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (idx, c)) in self.indexed_terms().into_iter().enumerate() {
            let (sign, mag) = if c < T::zero() { ("-", -c) } else { ("+", c) };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if idx.is_empty() {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}·")?;
                for i in idx {
                    write!(f, "θ{i}")?;
                }
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, T: Scalar> $tr<&'a SuperNumber<T>> for &'a SuperNumber<T> {
            type Output = SuperNumber<T>;
            fn $method(self, rhs: &'a SuperNumber<T>) -> SuperNumber<T> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<T: Scalar> $tr<SuperNumber<T>> for SuperNumber<T> {
            type Output = SuperNumber<T>;
            fn $method(self, rhs: SuperNumber<T>) -> SuperNumber<T> {
                (&self).$method(&rhs)
            }
        }
        impl<'a, T: Scalar> $tr<&'a SuperNumber<T>> for SuperNumber<T> {
            type Output = SuperNumber<T>;
            fn $method(self, rhs: &'a SuperNumber<T>) -> SuperNumber<T> {
                (&self).$method(rhs)
            }
        }
        impl<'a, T: Scalar> $tr<SuperNumber<T>> for &'a SuperNumber<T> {
            type Output = SuperNumber<T>;
            fn $method(self, rhs: SuperNumber<T>) -> SuperNumber<T> {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl<T: Scalar> SuperNumber<T> {
    /// Quotient; fails on a zero-body divisor.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.invert()?)
    }
}

binop!(Div, div, checked_div);

impl<T: Scalar> Neg for SuperNumber<T> {
    type Output = SuperNumber<T>;
    fn neg(self) -> SuperNumber<T> {
        self.scale(-T::one())
    }
}

impl<T: Scalar> Neg for &SuperNumber<T> {
    type Output = SuperNumber<T>;
    fn neg(self) -> SuperNumber<T> {
        self.scale(-T::one())
    }
}

macro_rules! scalar_rhs {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<T: Scalar> $tr<T> for SuperNumber<T> {
            type Output = SuperNumber<T>;
            fn $method(self, k: T) -> SuperNumber<T> {
                let f: fn(&SuperNumber<T>, T) -> SuperNumber<T> = $body;
                f(&self, k)
            }
        }
        impl<T: Scalar> $tr<T> for &SuperNumber<T> {
            type Output = SuperNumber<T>;
            fn $method(self, k: T) -> SuperNumber<T> {
                let f: fn(&SuperNumber<T>, T) -> SuperNumber<T> = $body;
                f(self, k)
            }
        }
    };
}

scalar_rhs!(Add, add, |a, k| a.combine(&a.constant_like(k), T::one()));
scalar_rhs!(Sub, sub, |a, k| a.combine(&a.constant_like(k), -T::one()));
scalar_rhs!(Mul, mul, |a, k| a.scale(k));
scalar_rhs!(Div, div, |a, k| a.scale(k.recip()));

macro_rules! scalar_lhs {
    ($t:ty) => {
        impl Add<SuperNumber<$t>> for $t {
            type Output = SuperNumber<$t>;
            fn add(self, a: SuperNumber<$t>) -> SuperNumber<$t> {
                a + self
            }
        }
        impl Add<&SuperNumber<$t>> for $t {
            type Output = SuperNumber<$t>;
            fn add(self, a: &SuperNumber<$t>) -> SuperNumber<$t> {
                a + self
            }
        }
        impl Sub<SuperNumber<$t>> for $t {
            type Output = SuperNumber<$t>;
            fn sub(self, a: SuperNumber<$t>) -> SuperNumber<$t> {
                -a + self
            }
        }
        impl Sub<&SuperNumber<$t>> for $t {
            type Output = SuperNumber<$t>;
            fn sub(self, a: &SuperNumber<$t>) -> SuperNumber<$t> {
                -a + self
            }
        }
        impl Mul<SuperNumber<$t>> for $t {
            type Output = SuperNumber<$t>;
            fn mul(self, a: SuperNumber<$t>) -> SuperNumber<$t> {
                a.scale(self)
            }
        }
        impl Mul<&SuperNumber<$t>> for $t {
            type Output = SuperNumber<$t>;
            fn mul(self, a: &SuperNumber<$t>) -> SuperNumber<$t> {
                a.scale(self)
            }
        }
        impl Div<SuperNumber<$t>> for $t {
            type Output = SuperNumber<$t>;
            fn div(self, a: SuperNumber<$t>) -> SuperNumber<$t> {
                a.invert().unwrap_or_else(|e| panic!("{e}")).scale(self)
            }
        }
        impl Div<&SuperNumber<$t>> for $t {
            type Output = SuperNumber<$t>;
            fn div(self, a: &SuperNumber<$t>) -> SuperNumber<$t> {
                a.invert().unwrap_or_else(|e| panic!("{e}")).scale(self)
            }
        }
    };
}

scalar_lhs!(f32);
scalar_lhs!(f64);

impl<T: Scalar> AddAssign<&SuperNumber<T>> for SuperNumber<T> {
    fn add_assign(&mut self, rhs: &SuperNumber<T>) {
        *self = &*self + rhs;
    }
}

impl<T: Scalar> AddAssign<SuperNumber<T>> for SuperNumber<T> {
    fn add_assign(&mut self, rhs: SuperNumber<T>) {
        *self = &*self + &rhs;
    }
}

impl<T: Scalar> SubAssign<&SuperNumber<T>> for SuperNumber<T> {
    fn sub_assign(&mut self, rhs: &SuperNumber<T>) {
        *self = &*self - rhs;
    }
}

impl<T: Scalar> MulAssign<&SuperNumber<T>> for SuperNumber<T> {
    fn mul_assign(&mut self, rhs: &SuperNumber<T>) {
        *self = &*self * rhs;
    }
}
