//! Truncated areas of ideal triangles and the divergence of their fermionic part.

use crate::error::{Error, Result};
use crate::grassmann::{mask_to_indices, SuperNumber};
use crate::numcheck::quadrature::{adaptive_simpson, QuadratureResult, EVALUATION_BUDGET};
use crate::scalar::Scalar;
use crate::superlinalg::SuperPoint;

/// Edges whose `p1 q2 − p2 q1` body is at most this violate the divergence proviso.
pub const PROVISO_TOL: f64 = 1e-8;

/// Description of the truncation convention recorded in every report.
pub const TRUNCATION: &str = "each edge x(t) = (t a + b/t)/2 integrated over t in [1/T, T]";

/// Three light-cone points with pairwise pairings `2`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealTriple<T: Scalar = f64> {
    pub e: SuperPoint<T>,
    pub f: SuperPoint<T>,
    pub g: SuperPoint<T>,
}

impl<T: Scalar> IdealTriple<T> {
    /// Largest deviation from `⟨e,f⟩ = ⟨f,g⟩ = ⟨g,e⟩ = 2` and isotropy.
    pub fn residual(&self) -> T {
        let two = T::lit(2.0);
        let mut r = T::zero();
        for (a, b) in [(&self.e, &self.f), (&self.f, &self.g), (&self.g, &self.e)] {
            r = r.max((a.pairing(b) - two).max_abs());
        }
        for x in [&self.e, &self.f, &self.g] {
            r = r.max(x.norm2().max_abs());
        }
        r
    }

    /// The three edges as `(a, b)` with `x(t) = ½(t a + b/t)`: `(f, g)`, `(g, e)`, `(e, f)`.
    pub fn edges(&self) -> [(&SuperPoint<T>, &SuperPoint<T>); 3] {
        [(&self.f, &self.g), (&self.g, &self.e), (&self.e, &self.f)]
    }
}

/// Rescales three light-cone points so that all pairwise pairings equal `2`:
/// `e = √(2⟨f′,g′⟩/(⟨e′,f′⟩⟨g′,e′⟩)) e′` and cyclically.
pub fn normalize_ideal<T: Scalar>(e: &SuperPoint<T>, f: &SuperPoint<T>, g: &SuperPoint<T>, tol: T) -> Result<IdealTriple<T>> {
    for x in [e, f, g] {
        x.check_light_cone(tol)?;
    }
    let ef = e.pairing(f);
    let fg = f.pairing(g);
    let ge = g.pairing(e);
    for (name, v) in [("<e,f>", &ef), ("<f,g>", &fg), ("<g,e>", &ge)] {
        if v.body() <= T::zero() {
            return Err(Error::NonPositivePairing(format!("{name} has body {:e}", v.body().as_f64())));
        }
    }
    let two = T::lit(2.0);
    let se = ((&fg * two).checked_div(&(&ef * &ge))?).sqrt()?;
    let sf = ((&ge * two).checked_div(&(&ef * &fg))?).sqrt()?;
    let sg = ((&ef * two).checked_div(&(&fg * &ge))?).sqrt()?;
    Ok(IdealTriple { e: e.scale(&se), f: f.scale(&sf), g: g.scale(&sg) })
}

fn proviso<T: Scalar>(a: &SuperPoint<T>, b: &SuperPoint<T>) -> SuperNumber<T> {
    &a.x1 * &b.x2 - &a.x2 * &b.x1
}

/// `∫ ω` along `x(t) = ½(t a + b/t)` for `t ∈ [1/T, T]`, integrated in `s = log t`.
///
/// Along this curve `d log(x1/x2)/ds = (a1 b2 − a2 b1)/(2 x1 x2)` exactly; the
/// integrand uses that form because the naive difference `ẋ1/x1 − ẋ2/x2`
/// cancels catastrophically for large `|s|`.
pub fn truncated_edge<T: Scalar>(a: &SuperPoint<T>, b: &SuperPoint<T>, cutoff: T, quad_tol: T) -> Result<QuadratureResult<T>> {
    let s_max = cutoff.ln();
    let half = T::lit(0.5);
    let cross = proviso(a, b);
    adaptive_simpson(
        |s| {
            let (tp, tm) = (s.exp() * half, (-s).exp() * half);
            let x = a.scale_real(tp).add(&b.scale_real(tm));
            let y_hat = &x.y * (&x.phi * &x.psi + T::one());
            (y_hat * &cross).checked_div(&(&x.x1 * &x.x2 * T::lit(4.0)))
        },
        -s_max,
        s_max,
        quad_tol,
        EVALUATION_BUDGET,
    )
}

/// Sum of the three truncated edge integrals.
pub fn truncated_area<T: Scalar>(triple: &IdealTriple<T>, cutoff: T, quad_tol: T) -> Result<SuperNumber<T>> {
    let mut total = SuperNumber::zero(triple.e.num_generators());
    for (a, b) in triple.edges() {
        total += truncated_edge(a, b, cutoff, quad_tol)?.value;
    }
    Ok(total)
}

/// Coefficient of the linear growth in `T`:
/// `Σ_edges ½(p1 q2 − p2 q1)(X/p + Y/q)` with `4X = αβ` of `a` and `4Y = γδ` of `b`.
pub fn analytic_slope<T: Scalar>(triple: &IdealTriple<T>) -> Result<SuperNumber<T>> {
    let mut total = SuperNumber::zero(triple.e.num_generators());
    let quarter = T::lit(0.25);
    for (a, b) in triple.edges() {
        let x = &a.phi * &a.psi * quarter;
        let y = &b.phi * &b.psi * quarter;
        let bracket = x.checked_div(&a.y)? + y.checked_div(&b.y)?;
        total += proviso(a, b) * bracket * T::lit(0.5);
    }
    Ok(total)
}

/// Partial areas over a list of cutoffs and the growth analysis of their fermionic part.
#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceReport<T: Scalar = f64> {
    pub cutoffs: Vec<T>,
    /// Truncated area at each cutoff `T`.
    pub partials: Vec<SuperNumber<T>>,
    /// Truncated area at each doubled cutoff `2T`.
    pub doubled_partials: Vec<SuperNumber<T>>,
    /// Body of each truncated area.
    pub body_partial: Vec<T>,
    /// `||body| − π|` at each cutoff.
    pub body_residual: Vec<T>,
    /// Generator indices of the dominant fermionic coefficient (largest at the largest cutoff).
    pub dominant: Option<Vec<usize>>,
    /// Dominant coefficient at `2T` over its value at `T`, per cutoff.
    pub growth_ratio: Vec<T>,
    /// Least-squares slope in `T` of every fermionic coefficient.
    pub fitted_slope: Vec<(Vec<usize>, T)>,
    /// The analytic growth coefficient.
    pub analytic_slope: SuperNumber<T>,
    /// Relative error of the fitted against the analytic slope of the dominant coefficient.
    pub slope_relative_error: Option<T>,
    pub truncation: &'static str,
}

fn least_squares_slope<T: Scalar>(xs: &[T], ys: &[T]) -> T {
    let n = T::from_count(xs.len());
    let mx = xs.iter().copied().sum::<T>() / n;
    let my = ys.iter().copied().sum::<T>() / n;
    let mut sxy = T::zero();
    let mut sxx = T::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        sxy = sxy + (x - mx) * (y - my);
        sxx = sxx + (x - mx) * (x - mx);
    }
    if sxx == T::zero() {
        T::zero()
    } else {
        sxy / sxx
    }
}

/// Evaluates the truncated areas at each cutoff `T` and at `2T`, and analyses
/// the growth of the fermionic coefficients.
pub fn ideal_divergence<T: Scalar>(triple: &IdealTriple<T>, cutoffs: &[T], quad_tol: T) -> Result<DivergenceReport<T>> {
    if cutoffs.is_empty() || cutoffs.iter().any(|&c| c <= T::one()) {
        return Err(Error::DegenerateConfiguration("cutoffs must be a non-empty list of values > 1".into()));
    }
    for (k, (a, b)) in triple.edges().iter().enumerate() {
        let w = proviso(a, b);
        if w.body().abs() <= T::lit(PROVISO_TOL) {
            return Err(Error::GenericityViolation(format!(
                "edge {}: p1 q2 - p2 q1 has body {:e}",
                ["E", "F", "G"][k],
                w.body().as_f64()
            )));
        }
    }
    let mut partials = Vec::with_capacity(cutoffs.len());
    let mut doubled = Vec::with_capacity(cutoffs.len());
    for &c in cutoffs {
        partials.push(truncated_area(triple, c, quad_tol)?);
        doubled.push(truncated_area(triple, c * T::lit(2.0), quad_tol)?);
    }
    let body_partial: Vec<T> = partials.iter().map(|p| p.body()).collect();
    let body_residual = body_partial.iter().map(|b| (b.abs() - T::PI()).abs()).collect();

    let largest = cutoffs
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(std::cmp::Ordering::Equal))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let dominant_mask = partials[largest]
        .terms()
        .iter()
        .filter(|(m, _)| *m != 0)
        .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap_or(std::cmp::Ordering::Equal))
        .map(|(m, _)| *m);

    let growth_ratio = match dominant_mask {
        Some(m) => partials.iter().zip(&doubled).map(|(p, d)| d.coefficient_mask(m) / p.coefficient_mask(m)).collect(),
        None => Vec::new(),
    };

    let mut xs = cutoffs.to_vec();
    xs.extend(cutoffs.iter().map(|&c| c * T::lit(2.0)));
    let mut masks: Vec<u64> =
        partials.iter().chain(&doubled).flat_map(|p| p.terms().iter().map(|(m, _)| *m)).filter(|&m| m != 0).collect();
    masks.sort_unstable();
    masks.dedup();
    let fitted_slope: Vec<(Vec<usize>, T)> = masks
        .iter()
        .map(|&m| {
            let ys: Vec<T> = partials.iter().chain(&doubled).map(|p| p.coefficient_mask(m)).collect();
            (mask_to_indices(m), least_squares_slope(&xs, &ys))
        })
        .collect();

    let analytic = analytic_slope(triple)?;
    let slope_relative_error = dominant_mask.map(|m| {
        let fitted = fitted_slope.iter().find(|(idx, _)| *idx == mask_to_indices(m)).map(|(_, s)| *s).unwrap_or(T::zero());
        let exact = analytic.coefficient_mask(m);
        (fitted - exact).abs() / exact.abs().max(T::min_positive_value())
    });

    Ok(DivergenceReport {
        cutoffs: cutoffs.to_vec(),
        partials,
        doubled_partials: doubled,
        body_partial,
        body_residual,
        dominant: dominant_mask.map(mask_to_indices),
        growth_ratio,
        fitted_slope,
        analytic_slope: analytic,
        slope_relative_error,
        truncation: TRUNCATION,
    })
}
