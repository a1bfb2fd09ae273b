//! Composite Gauss–Legendre quadrature on panels split at the breakpoints of
//! piecewise-smooth integrands.

use std::cell::Cell;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::scalar::Real;
use crate::summation::Compensated;

pub const GAUSS_ORDER: usize = 16;
/// Base panels are no longer than this.
pub const MAX_PANEL: f64 = 1.0 / 64.0;
pub const DEFAULT_TOL: f64 = 1e-12;
const MAX_REFINEMENTS: u32 = 8;

/// Nodes and weights of an `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1);
        let n = order;
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                let pn = if n == 1 { x } else { p1 };
                let pn1 = if n == 1 { 1.0 } else { p0 };
                dp = n as f64 * (x * pn - pn1) / (x * x - 1.0);
                let dx = pn / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            nodes.push(T::of(x));
            weights.push(T::of(2.0 / ((1.0 - x * x) * dp * dp)));
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// One application of the rule on `[a, b]`.
    pub fn integrate<F: Fn(T) -> T>(&self, a: T, b: T, f: F) -> T {
        let half = (b - a) * T::half();
        let mid = (a + b) * T::half();
        let mut acc = Compensated::new();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc.add(*w * f(mid + half * *x));
        }
        acc.value() * half
    }
}

/// Built-in continuously differentiable test functions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phi<T> {
    /// `y²`
    Square,
    /// `sin y`
    Sine,
    /// `c₀ + c₁y + c₂y² + c₃y³`
    Cubic([T; 4]),
}

impl<T: Real> Phi<T> {
    /// The default cubic `y³ − 2y + 1`.
    pub fn cubic() -> Self {
        Phi::Cubic([T::one(), -T::two(), T::zero(), T::one()])
    }

    pub fn value(&self, y: T) -> T {
        match *self {
            Phi::Square => y * y,
            Phi::Sine => y.sin(),
            Phi::Cubic([c0, c1, c2, c3]) => c0 + y * (c1 + y * (c2 + y * c3)),
        }
    }

    pub fn derivative(&self, y: T) -> T {
        match *self {
            Phi::Square => T::two() * y,
            Phi::Sine => y.cos(),
            Phi::Cubic([_, c1, c2, c3]) => c1 + y * (T::two() * c2 + T::of(3.0) * c3 * y),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Phi::Square => "square",
            Phi::Sine => "sine",
            Phi::Cubic(_) => "cubic",
        }
    }
}

#[inline]
fn frac<T: Real>(y: T) -> T {
    y - y.floor()
}

/// Integrands used by the Fourier-analytic checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Integrand<T> {
    /// `sin(πny)cos(πny)·sin(πmy)cos(πmy)`
    Orthogonality { n: u32, m: u32 },
    /// `({yN} − 1/2)·sin(πym)cos(πym)`
    FracSinCos { modulus: u32, m: u32 },
    /// `({y} − 1/2)·φ′(y)`
    EulerMaclaurin(Phi<T>),
}

impl<T: Real> Integrand<T> {
    pub fn eval(&self, y: T) -> T {
        let pi = T::PI();
        match *self {
            Integrand::Orthogonality { n, m } => {
                let (sn, cn) = (pi * T::of(n as f64) * y).sin_cos();
                let (sm, cm) = (pi * T::of(m as f64) * y).sin_cos();
                sn * cn * sm * cm
            }
            Integrand::FracSinCos { modulus, m } => {
                let (s, c) = (pi * y * T::of(m as f64)).sin_cos();
                (frac(y * T::of(modulus as f64)) - T::half()) * s * c
            }
            Integrand::EulerMaclaurin(phi) => (frac(y) - T::half()) * phi.derivative(y),
        }
    }

    /// Jump discontinuities of the integrand inside `(a, b)`.
    pub fn natural_breakpoints(&self, a: T, b: T) -> Vec<T> {
        let step = match *self {
            Integrand::Orthogonality { .. } => return Vec::new(),
            Integrand::FracSinCos { modulus, .. } => modulus as f64,
            Integrand::EulerMaclaurin(_) => 1.0,
        };
        let (af, bf) = (a.as_f64(), b.as_f64());
        let first = (af * step).floor() as i64 + 1;
        let last = (bf * step).ceil() as i64 - 1;
        (first..=last)
            .map(|k| T::of(k as f64 / step))
            .filter(|&y| y > a && y < b)
            .collect()
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Integrand::Orthogonality { n, m } if n == 0 || m == 0 => {
                Err(domain("orthogonality integrand needs n, m ≥ 1"))
            }
            Integrand::FracSinCos { modulus, m } if modulus == 0 || m == 0 => {
                Err(domain("fractional-part integrand needs N, m ≥ 1"))
            }
            _ => Ok(()),
        }
    }
}

/// A quadrature value with the change observed at the last panel doubling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadEstimate<T> {
    pub value: T,
    pub error: T,
    pub panels: usize,
}

fn panel_layout<T: Real>(a: T, b: T, breakpoints: &[T]) -> Vec<(T, T, usize)> {
    let mut cuts = Vec::with_capacity(breakpoints.len() + 2);
    cuts.push(a);
    cuts.extend_from_slice(breakpoints);
    cuts.push(b);
    cuts.windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| {
            let pieces = ((w[1] - w[0]).as_f64() / MAX_PANEL).ceil().max(1.0) as usize;
            (w[0], w[1], pieces)
        })
        .collect()
}

fn composite<T: Real, F: Fn(T) -> T>(
    rule: &GaussLegendre<T>,
    layout: &[(T, T, usize)],
    refine: usize,
    f: &F,
) -> Result<(T, usize)> {
    let bad = Cell::new(None);
    let mut acc = Compensated::new();
    let mut panels = 0;
    for &(lo, hi, pieces) in layout {
        let count = pieces * refine;
        let width = (hi - lo) / T::of(count as f64);
        for i in 0..count {
            let a = lo + width * T::of(i as f64);
            let b = if i + 1 == count { hi } else { a + width };
            acc.add(rule.integrate(a, b, |y| {
                let v = f(y);
                if !v.is_finite() && bad.get().is_none() {
                    bad.set(Some(y.as_f64()));
                }
                v
            }));
            panels += 1;
        }
    }
    match bad.get() {
        Some(y) => Err(Error::Numeric(format!("non-finite integrand sample at y = {y}"))),
        None => Ok((acc.value(), panels)),
    }
}

/// Integrates a closure over `[a, b]` with mandatory panel edges at `breakpoints`.
///
/// Panel counts are doubled until two successive values differ by at most `tol`.
pub fn integrate_fn<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, breakpoints: &[T], tol: T) -> Result<QuadEstimate<T>> {
    if !(a < b) {
        return Err(domain(format!("integration needs a < b, got [{a}, {b}]")));
    }
    if breakpoints.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(domain("breakpoints must be sorted"));
    }
    if breakpoints.iter().any(|&y| !(y > a && y < b)) {
        return Err(domain("breakpoints must lie inside (a, b)"));
    }
    let rule = GaussLegendre::new(GAUSS_ORDER);
    let layout = panel_layout(a, b, breakpoints);
    let (mut value, mut panels) = composite(&rule, &layout, 1, &f)?;
    let mut error = T::infinity();
    for level in 1..=MAX_REFINEMENTS {
        let (finer, p) = composite(&rule, &layout, 1 << level, &f)?;
        error = (finer - value).abs();
        value = finer;
        panels = p;
        if error <= tol {
            break;
        }
    }
    Ok(QuadEstimate { value, error, panels })
}

/// Integrates a built-in integrand; its own discontinuities are added to `breakpoints`.
pub fn integrate_estimate<T: Real>(g: &Integrand<T>, a: T, b: T, breakpoints: &[T], tol: T) -> Result<QuadEstimate<T>> {
    g.validate()?;
    if !(a < b) {
        return Err(domain(format!("integration needs a < b, got [{a}, {b}]")));
    }
    let mut cuts: Vec<T> = breakpoints.to_vec();
    if cuts.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(domain("breakpoints must be sorted"));
    }
    cuts.extend(g.natural_breakpoints(a, b));
    cuts.sort_by(|x, y| x.partial_cmp(y).expect("finite breakpoints"));
    cuts.dedup();
    integrate_fn(|y| g.eval(y), a, b, &cuts, tol)
}

pub fn integrate<T: Real>(g: &Integrand<T>, a: T, b: T, breakpoints: &[T], tol: T) -> Result<T> {
    integrate_estimate(g, a, b, breakpoints, tol).map(|e| e.value)
}

/// Both sides of the Euler–Maclaurin identity
/// `Σ_{a<n≤b} φ(n) = ∫φ + ∫({y} − 1/2)φ′ + ({a} − 1/2)φ(a) − ({b} − 1/2)φ(b)`.
pub fn euler_maclaurin_sides<T: Real>(phi: Phi<T>, a: T, b: T, tol: T) -> Result<(T, T)> {
    if !(a < b) {
        return Err(domain(format!("needs a < b, got [{a}, {b}]")));
    }
    let first = a.floor().to_i64().ok_or_else(|| domain("a out of range"))? + 1;
    let last = b.floor().to_i64().ok_or_else(|| domain("b out of range"))?;
    let lhs = Compensated::sum_iter((first..=last).map(|n| phi.value(T::of(n as f64))));
    let integer_cuts = Integrand::EulerMaclaurin(phi).natural_breakpoints(a, b);
    let plain = integrate_fn(|y| phi.value(y), a, b, &integer_cuts, tol)?.value;
    let sawtooth = integrate(&Integrand::EulerMaclaurin(phi), a, b, &[], tol)?;
    let boundary = (frac(a) - T::half()) * phi.value(a) - (frac(b) - T::half()) * phi.value(b);
    let rhs = Compensated::sum_iter([plain, sawtooth, boundary]);
    Ok((lhs, rhs))
}

/// `LHS − RHS` of the Euler–Maclaurin identity.
pub fn euler_maclaurin_residual<T: Real>(phi: Phi<T>, a: T, b: T) -> Result<T> {
    let (lhs, rhs) = euler_maclaurin_sides(phi, a, b, T::of(DEFAULT_TOL))?;
    Ok(lhs - rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rule_is_exact_for_polynomials() {
        let rule = GaussLegendre::<f64>::new(GAUSS_ORDER);
        let weight_sum: f64 = rule.weights.iter().sum();
        assert!((weight_sum - 2.0).abs() < 1e-14);
        // degree 31 is integrated exactly
        let v = rule.integrate(0.0, 1.0, |y| y.powi(31));
        assert!((v - 1.0 / 32.0).abs() < 1e-15);
    }

    #[test]
    fn constant_integrand() {
        let v = integrate_fn(|_| 1.0, 0.0, 1.0, &[], DEFAULT_TOL).unwrap();
        assert!((v.value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn documented_values() {
        let o = integrate(&Integrand::Orthogonality { n: 3, m: 3 }, 0.0, 1.0, &[], DEFAULT_TOL).unwrap();
        assert!((o - 0.125).abs() < 1e-14);
        let f = integrate(&Integrand::FracSinCos { modulus: 2, m: 4 }, 0.0, 1.0, &[0.5], DEFAULT_TOL).unwrap();
        assert!((f + 2.0 / (16.0 * PI)).abs() < 1e-13);
    }

    #[test]
    fn orthogonality_grid() {
        for n in 1..=8 {
            for m in 1..=8 {
                let v = integrate(&Integrand::Orthogonality { n, m }, 0.0, 1.0, &[], DEFAULT_TOL).unwrap();
                let want = if n == m { 0.125 } else { 0.0 };
                assert!((v - want).abs() < 1e-10, "n={n} m={m}: {v}");
            }
        }
    }

    #[test]
    fn frac_sincos_grid() {
        for big_n in 1..=6u32 {
            for m in 1..=24u32 {
                let v = integrate(&Integrand::FracSinCos { modulus: big_n, m }, 0.0, 1.0, &[], DEFAULT_TOL).unwrap();
                let want = if m % big_n == 0 { -(big_n as f64) / (4.0 * PI * m as f64) } else { 0.0 };
                assert!((v - want).abs() < 1e-9, "N={big_n} m={m}: {v} vs {want}");
            }
        }
    }

    #[test]
    fn doubling_panels_changes_little() {
        let g = Integrand::FracSinCos { modulus: 5, m: 10 };
        let est = integrate_estimate(&g, 0.0, 1.0, &[], DEFAULT_TOL).unwrap();
        assert!(est.error <= DEFAULT_TOL);
        let cuts = g.natural_breakpoints(0.0, 1.0);
        let doubled = integrate_fn(|y| g.eval(y), 0.0, 1.0, &cuts, 0.0).unwrap();
        assert!((doubled.value - est.value).abs() < DEFAULT_TOL);
    }

    #[test]
    fn euler_maclaurin() {
        let (lhs, rhs) = euler_maclaurin_sides(Phi::<f64>::Square, 0.0, 3.0, DEFAULT_TOL).unwrap();
        assert_eq!(lhs, 14.0);
        assert!((rhs - 14.0).abs() < 1e-12);
        let one = Phi::Cubic([1.0, 0.0, 0.0, 0.0]);
        let (lhs, rhs) = euler_maclaurin_sides(one, 0.5, 2.5, DEFAULT_TOL).unwrap();
        assert_eq!(lhs, 2.0);
        assert!((rhs - 2.0).abs() < 1e-14);
        for phi in [Phi::<f64>::Square, Phi::Sine, Phi::cubic()] {
            for (a, b) in [(0.0, 3.0), (0.5, 2.5), (0.0, 10.0), (-1.25, 4.75)] {
                let r = euler_maclaurin_residual(phi, a, b).unwrap();
                assert!(r.abs() <= 1e-9, "{} on [{a},{b}]: {r}", phi.name());
            }
        }
    }

    #[test]
    fn errors() {
        assert!(integrate_fn(|y: f64| y, 1.0, 0.0, &[], 1e-12).is_err());
        assert!(integrate_fn(|y: f64| y, 0.0, 1.0, &[1.5], 1e-12).is_err());
        assert!(matches!(integrate_fn(|_: f64| f64::NAN, 0.0, 1.0, &[], 1e-12), Err(Error::Numeric(_))));
        assert!(integrate(&Integrand::<f64>::Orthogonality { n: 0, m: 1 }, 0.0, 1.0, &[], 1e-12).is_err());
    }

    #[test]
    fn single_precision_instantiation() {
        let v = integrate(&Integrand::<f32>::Orthogonality { n: 2, m: 2 }, 0.0, 1.0, &[], 1e-5).unwrap();
        assert!((v - 0.125).abs() < 1e-5);
    }
}
