use super::report::{IdentityId, IdentityReport, SignConvention, VerifyConfig};
use super::workspace::Workspace;
use crate::arith::FnId;
use crate::error::{domain, Result};
use crate::quad::{euler_maclaurin_sides, integrate_estimate, Integrand, Phi};
use crate::scalar::Real;
use crate::series::{
    cosine_term, davenport_sine, frac_series_lhs, relative_difference, sincos_series, theorem11_integral_term,
    theorem11_lhs, theorem12_lhs, theorem12_rhs, Rational, SeriesValue,
};
use crate::summation::{Compensated, TruncationSpec};
use crate::tolerances::STRUCTURAL_REL;
use crate::zeta::{popov_trivial_sum, popov_zero_sum, ZeroTable};

/// Smallest `x` accepted by the explicit-formula checks.
pub const POPOV_X_FLOOR: i64 = 2;

fn f64s<T: Real>(v: &SeriesValue<T>) -> (f64, f64) {
    (v.value.as_f64(), v.tail_bound.as_f64())
}

struct PopovRhs {
    constant: f64,
    zero_sum: f64,
    zero_tail: f64,
    zero_count: usize,
    trivial: f64,
    trivial_tail: f64,
}

impl PopovRhs {
    fn total(&self) -> f64 {
        Compensated::sum_iter([self.constant, self.zero_sum, self.trivial])
    }
}

fn popov_rhs<T: Real>(ws: &Workspace<T>, zeros: &ZeroTable<T>, x: Rational, cfg: &VerifyConfig) -> Result<PopovRhs> {
    if x < Rational::integer(POPOV_X_FLOOR) {
        return Err(domain(format!("explicit-formula checks need x ≥ {POPOV_X_FLOOR}, got {x}")));
    }
    let xr = x.to_real::<T>();
    let zs = popov_zero_sum(xr, zeros)?;
    let tr = popov_trivial_sum(xr, cfg.k_max, ws.zeta())?;
    let two_pi = T::two() * T::PI();
    let constant = ((T::two() - two_pi.ln()) / xr).as_f64();
    Ok(PopovRhs {
        constant,
        zero_sum: zs.value.as_f64(),
        zero_tail: zs.tail_bound.as_f64(),
        zero_count: zeros.len(),
        trivial: tr.value.as_f64(),
        trivial_tail: tr.tail_bound.as_f64(),
    })
}

/// `Σ_{n>x} Λ(n)/n² ({n/x} − {n/x}²)` against
/// `(2 − log 2π)/x + Σ_ρ x^{ρ−2}/(ρ(ρ−1)) + Σ_k (k+1 − 2kζ(2k+1))/(2k(k+1)(2k+1)) x^{−2k−2}`.
pub fn verify_popov<T: Real>(ws: &Workspace<T>, x: Rational, cfg: &VerifyConfig) -> Result<IdentityReport> {
    verify_popov_with_zeros(ws, ws.zeros()?, x, cfg)
}

/// [`verify_popov`] against a zero table other than the workspace's.
pub fn verify_popov_with_zeros<T: Real>(
    ws: &Workspace<T>,
    zeros: &ZeroTable<T>,
    x: Rational,
    cfg: &VerifyConfig,
) -> Result<IdentityReport> {
    let rhs = popov_rhs(ws, zeros, x, cfg)?;
    let lambda = &ws.pair(FnId::VonMangoldt)?.base;
    let half = theorem11_lhs(lambda, x, &TruncationSpec::direct(cfg.n_max))?;
    let (half_v, half_tail) = f64s(&half);
    let lhs = 2.0 * half_v;
    let lhs_tail = 2.0 * half_tail;
    let bound = lhs_tail + rhs.zero_tail + rhs.trivial_tail;
    Ok(IdentityReport::new(IdentityId::Popov, lhs, rhs.total(), bound, true, cfg.tolerance)
        .param("x", x)
        .param("n_max", cfg.n_max)
        .param("k_max", cfg.k_max)
        .param("zeros", rhs.zero_count)
        .component("thm11_lhs", half_v)
        .component("lhs_tail", lhs_tail)
        .component("constant_term", rhs.constant)
        .component("zero_sum", rhs.zero_sum)
        .component("zero_tail_estimate", rhs.zero_tail)
        .component("trivial_sum", rhs.trivial)
        .component("trivial_tail", rhs.trivial_tail))
}

struct Thm11Parts {
    lhs: SeriesValue<f64>,
    integral_term: f64,
    cosine: SeriesValue<f64>,
}

fn thm11_parts<T: Real>(ws: &Workspace<T>, fn_id: FnId, x: Rational, n_max: u64) -> Result<Thm11Parts> {
    if x <= Rational::integer(1) {
        return Err(domain(format!("x must exceed 1, got {x}")));
    }
    let pair = ws.pair(fn_id)?;
    let t = TruncationSpec::direct(n_max);
    let lhs = theorem11_lhs(&pair.base, x, &t)?;
    let integral = theorem11_integral_term(&pair.base, x)?;
    let cosine = cosine_term(&pair.divisor_sum, x, &t)?;
    let widen = |v: SeriesValue<T>| SeriesValue {
        value: v.value.as_f64(),
        tail_bound: v.tail_bound.as_f64(),
        tail_kind: v.tail_kind,
        terms_used: v.terms_used,
        method: v.method,
    };
    Ok(Thm11Parts {
        lhs: widen(lhs),
        integral_term: integral.as_f64() / (2.0 * x.to_f64()),
        cosine: widen(cosine),
    })
}

impl Thm11Parts {
    /// `(1/2x)∫₀ˣ S(y)/y² dy + (1/2π²) Σ F(n)/n² (cos(2πn/x) − 1)`.
    fn assembly(&self) -> f64 {
        self.integral_term + self.cosine.value
    }

    fn rhs(&self, sign: SignConvention) -> f64 {
        match sign {
            SignConvention::Corrected => -self.assembly(),
            SignConvention::Literal => self.assembly(),
        }
    }
}

/// The half Bernoulli sum against the integral of `S` plus the cosine series of `F`.
pub fn verify_theorem11<T: Real>(ws: &Workspace<T>, fn_id: FnId, x: Rational, cfg: &VerifyConfig) -> Result<IdentityReport> {
    let parts = thm11_parts(ws, fn_id, x, cfg.n_max)?;
    let bound = parts.lhs.tail_bound + parts.cosine.tail_bound;
    Ok(IdentityReport::new(IdentityId::Thm11, parts.lhs.value, parts.rhs(cfg.sign), bound, false, cfg.tolerance)
        .param("fn", fn_id)
        .param("x", x)
        .param("n_max", cfg.n_max)
        .param("sign", cfg.sign.name())
        .component("lhs_tail", parts.lhs.tail_bound)
        .component("integral_term", parts.integral_term)
        .component("cosine_term", parts.cosine.value)
        .component("cosine_tail", parts.cosine.tail_bound)
        .component("literal_rhs", parts.rhs(SignConvention::Literal)))
}

/// The Λ case of the Bernoulli-sum identity against half the explicit formula.
pub fn cross_check_popov_thm11<T: Real>(ws: &Workspace<T>, x: Rational, cfg: &VerifyConfig) -> Result<IdentityReport> {
    let rhs = popov_rhs(ws, ws.zeros()?, x, cfg)?;
    let parts = thm11_parts(ws, FnId::VonMangoldt, x, cfg.n_max)?;
    let lhs = parts.rhs(cfg.sign);
    let half_rhs = 0.5 * rhs.total();
    let bound = rhs.zero_tail + 0.5 * rhs.trivial_tail + parts.cosine.tail_bound;
    Ok(IdentityReport::new(IdentityId::CrossPopovThm11, lhs, half_rhs, bound, true, cfg.tolerance)
        .param("x", x)
        .param("n_max", cfg.n_max)
        .param("k_max", cfg.k_max)
        .param("zeros", rhs.zero_count)
        .param("sign", cfg.sign.name())
        .component("thm11_lhs", parts.lhs.value)
        .component("integral_term", parts.integral_term)
        .component("cosine_term", parts.cosine.value)
        .component("zero_tail_estimate", rhs.zero_tail))
}

/// `Σ f(n)/n ((1/2nx)({nx}² + ⌊nx⌋) − 1/2)` against `(1/2xπ²) Σ F(n)/n² (cos(2πnx) − 1)`.
pub fn verify_theorem12<T: Real>(ws: &Workspace<T>, fn_id: FnId, x: Rational, cfg: &VerifyConfig) -> Result<IdentityReport> {
    if !x.is_positive() {
        return Err(domain(format!("x must be positive, got {x}")));
    }
    let pair = ws.pair(fn_id)?;
    let t = TruncationSpec::direct(cfg.n_max);
    let (lhs, lhs_tail) = f64s(&theorem12_lhs(&pair.base, x, &t)?);
    let (rhs, rhs_tail) = f64s(&theorem12_rhs(&pair.divisor_sum, x, &t)?);
    Ok(IdentityReport::new(IdentityId::Thm12, lhs, rhs, lhs_tail + rhs_tail, false, cfg.tolerance)
        .param("fn", fn_id)
        .param("x", x)
        .param("n_max", cfg.n_max)
        .component("lhs_tail", lhs_tail)
        .component("rhs_tail", rhs_tail))
}

/// `Σ f(n)/n ({nx} − 1/2)` against `2 Σ c̄_n sin(πnx)cos(πnx)`, with the
/// double-angle comparison against `−(1/π) Σ F(n)/n sin(2πnx)` attached.
pub fn verify_theorem31<T: Real>(ws: &Workspace<T>, fn_id: FnId, x: Rational, cfg: &VerifyConfig) -> Result<IdentityReport> {
    let pair = ws.pair(fn_id)?;
    let t = TruncationSpec::cesaro(cfg.n_max).with_block(cfg.cesaro_block);
    let lhs = frac_series_lhs(&pair.base, x, &t)?;
    let rhs = sincos_series(&pair.divisor_sum, x, &t)?;
    let dav = davenport_sine(&pair.divisor_sum, x, &t)?;
    let structural = relative_difference(rhs.value, dav.value).as_f64();
    let heuristic = lhs.is_heuristic() || rhs.is_heuristic();
    let (lv, lt) = f64s(&lhs);
    let (rv, rt) = f64s(&rhs);
    Ok(IdentityReport::new(IdentityId::Thm31, lv, rv, lt + rt, heuristic, cfg.tolerance)
        .param("fn", fn_id)
        .param("x", x)
        .param("n_max", cfg.n_max)
        .param("cesaro_block", cfg.cesaro_block)
        .component("lhs_tail", lt)
        .component("rhs_tail", rt)
        .component("davenport_sine", dav.value.as_f64())
        .component("structural_rel_diff", structural)
        .require(structural <= STRUCTURAL_REL))
}

/// `∫₀¹ sin(πny)cos(πny) sin(πmy)cos(πmy) dy` against `1/8·[n = m]`.
pub fn verify_lemma31(n: u32, m: u32, cfg: &VerifyConfig) -> Result<IdentityReport> {
    if n == 0 || m == 0 {
        return Err(domain("lemma31 needs n, m ≥ 1"));
    }
    let est = integrate_estimate(&Integrand::Orthogonality { n, m }, 0.0, 1.0, &[], cfg.quad_tol)?;
    let rhs = if n == m { 0.125 } else { 0.0 };
    Ok(IdentityReport::new(IdentityId::Lemma31, est.value, rhs, cfg.quad_tol, false, cfg.tolerance)
        .param("n", n)
        .param("m", m)
        .component("quad_error", est.error))
}

/// `∫₀¹ ({yN} − 1/2) sin(πym)cos(πym) dy` against `−N/(4πm)·[N | m]`.
pub fn verify_eq34(big_n: u32, m: u32, cfg: &VerifyConfig) -> Result<IdentityReport> {
    if big_n == 0 || m == 0 {
        return Err(domain("eq34 needs N, m ≥ 1"));
    }
    let est = integrate_estimate(&Integrand::FracSinCos { modulus: big_n, m }, 0.0, 1.0, &[], cfg.quad_tol)?;
    let rhs = if m.is_multiple_of(big_n) { -(big_n as f64) / (4.0 * std::f64::consts::PI * m as f64) } else { 0.0 };
    Ok(IdentityReport::new(IdentityId::Eq34, est.value, rhs, cfg.quad_tol, false, cfg.tolerance)
        .param("N", big_n)
        .param("m", m)
        .component("quad_error", est.error))
}

/// Euler–Maclaurin with the sawtooth remainder, for a built-in `φ` on `[a, b]`.
pub fn verify_lemma32(phi: Phi<f64>, a: f64, b: f64, cfg: &VerifyConfig) -> Result<IdentityReport> {
    let (lhs, rhs) = euler_maclaurin_sides(phi, a, b, cfg.quad_tol)?;
    // three quadratures contribute
    let bound = 3.0 * cfg.quad_tol * (1.0 + lhs.abs());
    Ok(IdentityReport::new(IdentityId::Lemma32, lhs, rhs, bound, false, cfg.tolerance)
        .param("phi", phi.name())
        .param("a", a)
        .param("b", b))
}
