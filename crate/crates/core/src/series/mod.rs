//! Truncated series over exact rational arguments.
//!
//! Every evaluator sums terms in ascending `n` with compensated accumulation
//! and reports a tail bound. Bounds come from the table majorant where the
//! coefficient series is absolutely summable; otherwise the gap between the
//! Cesàro mean and the last partial sum is reported and flagged heuristic.

mod rational;
mod tail;
pub mod turns;

use serde::{Deserialize, Serialize};

pub use rational::{frac_part, Rational};
pub(crate) use rational::Residues;
#[cfg(test)]
pub(crate) use tail::isqrt;
pub use tail::Majorant;

use crate::arith::FnTable;
use crate::error::{domain, Result};
use crate::scalar::Real;
use crate::summation::{Compensated, SeriesSum, SummationMethod, TruncationSpec};
use turns::{sin_cos_turns, sin_turns};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailKind {
    Rigorous,
    Heuristic,
}

/// A truncated-series result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue<T> {
    pub value: T,
    pub tail_bound: T,
    pub tail_kind: TailKind,
    pub terms_used: u64,
    pub method: SummationMethod,
}

impl<T: Real> SeriesValue<T> {
    pub fn is_heuristic(&self) -> bool {
        self.tail_kind == TailKind::Heuristic
    }

    pub(crate) fn scaled(self, factor: T) -> Self {
        Self { value: self.value * factor, tail_bound: self.tail_bound * factor.abs(), ..self }
    }
}

/// Reduces a series whose coefficients are bounded by `|a_n| ≤ scale·b(n)·n^{-s}`.
pub(crate) fn finish<T: Real>(
    acc: &SeriesSum<T>,
    t: &TruncationSpec,
    majorant: Majorant<T>,
    s: T,
    scale: T,
) -> SeriesValue<T> {
    match majorant.tail_sum(s, t.n_max) {
        Some(tail) => {
            // summable: the Cesàro mean would only add bias
            let (value, _) = acc.finish(SummationMethod::Direct);
            SeriesValue {
                value,
                tail_bound: scale * tail,
                tail_kind: TailKind::Rigorous,
                terms_used: t.n_max,
                method: SummationMethod::Direct,
            }
        }
        None => {
            let (value, gap) = acc.finish(t.method);
            SeriesValue { value, tail_bound: gap, tail_kind: TailKind::Heuristic, terms_used: t.n_max, method: t.method }
        }
    }
}

pub(crate) fn check_truncation<T: Real>(table: &FnTable<T>, t: &TruncationSpec) -> Result<()> {
    if t.n_max == 0 {
        return Err(domain("truncation needs n_max ≥ 1"));
    }
    table.require_limit(t.n_max)
}

#[inline]
fn inv_sq<T: Real>(n: u64) -> T {
    let nf = T::of_u64(n);
    T::one() / (nf * nf)
}

/// `(1/2) Σ_{x < n ≤ n_max} f(n)/n² · ({n/x} − {n/x}²)` for `x > 1`.
pub fn theorem11_lhs<T: Real>(f: &FnTable<T>, x: Rational, t: &TruncationSpec) -> Result<SeriesValue<T>> {
    if x <= Rational::integer(1) {
        return Err(domain(format!("x must exceed 1, got {x}")));
    }
    check_truncation(f, t)?;
    let (p, q) = (x.numer() as i128, x.denom() as i128);
    let pf = T::of_i128(p);
    let mut acc = SeriesSum::new(t.cesaro_block);
    // {n/x} = {n·q/p}
    let residues = Residues::new(q, p);
    for (n, r) in (1..=t.n_max).zip(residues) {
        let term = if (n as i128) * q > p {
            let u = T::of_i128(r) / pf;
            f.value(n) * inv_sq::<T>(n) * (u * (T::one() - u))
        } else {
            T::zero()
        };
        acc.push(term);
    }
    // max u(1 − u) = 1/4
    Ok(finish(&acc, &t.as_direct(), f.majorant(), T::two(), T::of(0.25)).scaled(T::half()))
}

/// `∫₀ˣ S(y)/y² dy = Σ_{n ≤ x} f(n)(1/n − 1/x)`, integrated exactly.
pub fn theorem11_integral_term<T: Real>(f: &FnTable<T>, x: Rational) -> Result<T> {
    if x < Rational::integer(1) {
        return Ok(T::zero());
    }
    let top = x.floor() as u64;
    f.require_limit(top)?;
    let (p, q) = (x.numer() as i128, x.denom() as i128);
    let mut acc = Compensated::new();
    for n in 1..=top {
        // 1/n − q/p = (p − n·q)/(n·p)
        let num = p - (n as i128) * q;
        acc.add(f.value(n) * T::of_i128(num) / (T::of_u64(n) * T::of_i128(p)));
    }
    Ok(acc.value())
}

/// `(1/2π²) Σ F(n)/n² (cos(2πn/x) − 1)`.
pub fn cosine_term<T: Real>(big_f: &FnTable<T>, x: Rational, t: &TruncationSpec) -> Result<SeriesValue<T>> {
    if !x.is_positive() {
        return Err(domain(format!("x must be positive, got {x}")));
    }
    check_truncation(big_f, t)?;
    let (p, q) = (x.numer() as i128, x.denom() as i128);
    let mut acc = SeriesSum::new(t.cesaro_block);
    // cos(2πn/x) − 1 = −2 sin²(πn·q/p)
    for (n, r) in (1..=t.n_max).zip(Residues::new(q, p)) {
        let s = sin_turns::<T>(r, 2 * p);
        acc.push(-T::two() * s * s * big_f.value(n) * inv_sq::<T>(n));
    }
    let pi2 = T::PI() * T::PI();
    let v = finish(&acc, &t.as_direct(), big_f.majorant(), T::two(), T::two());
    Ok(v.scaled(T::one() / (T::two() * pi2)))
}

/// `−(1/π) Σ F(n)/n · sin(2πnx)`.
pub fn davenport_sine<T: Real>(big_f: &FnTable<T>, x: Rational, t: &TruncationSpec) -> Result<SeriesValue<T>> {
    check_truncation(big_f, t)?;
    let (p, q) = (x.numer() as i128, x.denom() as i128);
    let mut acc = SeriesSum::new(t.cesaro_block);
    for (n, r) in (1..=t.n_max).zip(Residues::new(p, q)) {
        acc.push(big_f.value(n) / T::of_u64(n) * sin_turns::<T>(r, q));
    }
    Ok(finish(&acc, t, big_f.majorant(), T::one(), T::one()).scaled(-T::FRAC_1_PI()))
}

/// `2 Σ c̄_n sin(πnx) cos(πnx)` with `c̄_n = −F(n)/(nπ)`, the two factors kept separate.
pub fn sincos_series<T: Real>(big_f: &FnTable<T>, x: Rational, t: &TruncationSpec) -> Result<SeriesValue<T>> {
    check_truncation(big_f, t)?;
    let (p, q) = (x.numer() as i128, x.denom() as i128);
    let mut acc = SeriesSum::new(t.cesaro_block);
    // πnx = 2π·(n·p)/(2q)
    for (n, r) in (1..=t.n_max).zip(Residues::new(p, 2 * q)) {
        let (s, c) = sin_cos_turns::<T>(r, 2 * q);
        let c_bar = -big_f.value(n) / (T::of_u64(n) * T::PI());
        acc.push(T::two() * c_bar * s * c);
    }
    // |2 c̄_n sin cos| ≤ |F(n)|/(nπ)
    Ok(finish(&acc, t, big_f.majorant(), T::one(), T::FRAC_1_PI()))
}

/// `Σ f(n)/n · ({nx} − 1/2)`, conditionally convergent.
pub fn frac_series_lhs<T: Real>(f: &FnTable<T>, x: Rational, t: &TruncationSpec) -> Result<SeriesValue<T>> {
    check_truncation(f, t)?;
    let (p, q) = (x.numer() as i128, x.denom() as i128);
    let qf = T::of_i128(q);
    let mut acc = SeriesSum::new(t.cesaro_block);
    for (n, r) in (1..=t.n_max).zip(Residues::new(p, q)) {
        let centred = (T::two() * T::of_i128(r) - qf) / (T::two() * qf);
        acc.push(f.value(n) / T::of_u64(n) * centred);
    }
    let majorant = match f.majorant() {
        Majorant::Zero => Majorant::Zero,
        // only finitely supported coefficients are summable against 1/n here
        Majorant::Delta1(c) => Majorant::Delta1(c),
        _ => Majorant::Constant(T::one()),
    };
    Ok(finish(&acc, t, majorant, T::one(), T::half()))
}

/// `Σ f(n)/n · ((1/(2nx))({nx}² + ⌊nx⌋) − 1/2)` in the stable form
/// `Σ f(n)·({nx}² − {nx})/(2n²x)`.
pub fn theorem12_lhs<T: Real>(f: &FnTable<T>, x: Rational, t: &TruncationSpec) -> Result<SeriesValue<T>> {
    if !x.is_positive() {
        return Err(domain(format!("x must be positive, got {x}")));
    }
    check_truncation(f, t)?;
    let (p, q) = (x.numer() as i128, x.denom() as i128);
    let qf = T::of_i128(q);
    let mut acc = SeriesSum::new(t.cesaro_block);
    for (n, r) in (1..=t.n_max).zip(Residues::new(p, q)) {
        let u = T::of_i128(r) / qf;
        acc.push(-f.value(n) * inv_sq::<T>(n) * (u * (T::one() - u)));
    }
    let inv_2x = T::one() / (T::two() * x.to_real::<T>());
    Ok(finish(&acc, &t.as_direct(), f.majorant(), T::two(), T::of(0.25)).scaled(inv_2x))
}

/// The same series as [`theorem12_lhs`] summed term by term as written,
/// `f(n)/n·((1/(2nx))({nx}² + ⌊nx⌋) − 1/2)`. Loses accuracy for large `n`.
pub fn theorem12_lhs_literal<T: Real>(f: &FnTable<T>, x: Rational, t: &TruncationSpec) -> Result<T> {
    if !x.is_positive() {
        return Err(domain(format!("x must be positive, got {x}")));
    }
    check_truncation(f, t)?;
    let xr = x.to_real::<T>();
    let mut acc = Compensated::new();
    for n in 1..=t.n_max {
        let u = frac_part(n, x).to_real::<T>();
        let fl = T::of_i128((n as i128 * x.numer() as i128).div_euclid(x.denom() as i128));
        let nf = T::of_u64(n);
        let inner = (u * u + fl) / (T::two() * nf * xr) - T::half();
        acc.add(f.value(n) / nf * inner);
    }
    Ok(acc.value())
}

/// `(1/(2xπ²)) Σ F(n)/n² (cos(2πnx) − 1)`.
pub fn theorem12_rhs<T: Real>(big_f: &FnTable<T>, x: Rational, t: &TruncationSpec) -> Result<SeriesValue<T>> {
    if !x.is_positive() {
        return Err(domain(format!("x must be positive, got {x}")));
    }
    check_truncation(big_f, t)?;
    let (p, q) = (x.numer() as i128, x.denom() as i128);
    let mut acc = SeriesSum::new(t.cesaro_block);
    for (n, r) in (1..=t.n_max).zip(Residues::new(p, q)) {
        let s = sin_turns::<T>(r, 2 * q);
        acc.push(-T::two() * s * s * big_f.value(n) * inv_sq::<T>(n));
    }
    let scale = T::one() / (T::two() * x.to_real::<T>() * T::PI() * T::PI());
    Ok(finish(&acc, &t.as_direct(), big_f.majorant(), T::two(), T::two()).scaled(scale))
}

/// `|a − b| / max(|a|, |b|)`, zero when both vanish.
pub fn relative_difference<T: Real>(a: T, b: T) -> T {
    let scale = a.abs().max(b.abs());
    if scale == T::zero() {
        T::zero()
    } else {
        (a - b).abs() / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{divisor_sum_table, sieve, FnId};
    use std::f64::consts::PI;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    fn table(f: FnId, n: u64) -> FnTable<f64> {
        sieve(f, n).unwrap()
    }

    fn zero(n: usize) -> FnTable<f64> {
        FnTable::from_values(FnId::Custom, vec![0.0; n], true).unwrap()
    }

    fn d(n: u64) -> TruncationSpec {
        TruncationSpec::direct(n)
    }

    #[test]
    fn theorem11_lhs_hand_values() {
        let lam = table(FnId::VonMangoldt, 10);
        let v = theorem11_lhs(&lam, r(5, 2), &d(5)).unwrap();
        // n = 3: {6/5} = 1/5; n = 4: {8/5} = 3/5; n = 5: {2} = 0
        let want = 0.5 * (3f64.ln() / 9.0 * 0.16 + 2f64.ln() / 16.0 * 0.24);
        assert!((v.value - want).abs() < 1e-16);
        assert!((v.value - 0.014964).abs() < 5e-7);
        let mu = table(FnId::Moebius, 10);
        assert!((theorem11_lhs(&mu, r(2, 1), &d(4)).unwrap().value + 1.0 / 72.0).abs() < 1e-17);
        let z = theorem11_lhs(&zero(10), r(3, 1), &d(10)).unwrap();
        assert_eq!((z.value, z.tail_bound), (0.0, 0.0));
        assert!(theorem11_lhs(&mu, r(1, 1), &d(4)).is_err());
    }

    #[test]
    fn theorem11_integral_hand_values() {
        let lam = table(FnId::VonMangoldt, 10);
        let v = theorem11_integral_term(&lam, r(4, 1)).unwrap();
        assert!((v - (2f64.ln() * 0.25 + 3f64.ln() / 12.0)).abs() < 1e-15);
        assert!((v - 0.264838).abs() < 1e-6);
        let mu = table(FnId::Moebius, 10);
        assert!((theorem11_integral_term(&mu, r(3, 1)).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(theorem11_integral_term(&mu, r(1, 2)).unwrap(), 0.0);
    }

    #[test]
    fn cosine_term_hand_values() {
        let delta = divisor_sum_table(&table(FnId::Moebius, 100));
        let v = cosine_term(&delta, r(2, 1), &d(100)).unwrap();
        assert!((v.value + 1.0 / (PI * PI)).abs() < 1e-16);
        assert_eq!(v.tail_bound, 0.0);
        let sq = divisor_sum_table(&table(FnId::Liouville, 10));
        assert!((cosine_term(&sq, r(2, 1), &d(1)).unwrap().value + 1.0 / (PI * PI)).abs() < 1e-16);
        let far = cosine_term(&sq, r(1_000_000_000, 1), &d(10)).unwrap();
        assert!(far.value.abs() < 1e-15);
    }

    #[test]
    fn davenport_and_sincos_hand_values() {
        let delta = divisor_sum_table(&table(FnId::Moebius, 50));
        let v = davenport_sine(&delta, r(1, 4), &d(50)).unwrap();
        assert!((v.value + 1.0 / PI).abs() < 1e-16);
        assert!(!v.is_heuristic());
        let s = sincos_series(&delta, r(1, 4), &d(50)).unwrap();
        assert!((s.value + 1.0 / PI).abs() < 1e-16);
        let log = divisor_sum_table(&table(FnId::VonMangoldt, 10));
        let v = davenport_sine(&log, r(1, 8), &d(2)).unwrap();
        assert!((v.value + 2f64.ln() / (2.0 * PI)).abs() < 1e-16);
        for f in [FnId::VonMangoldt, FnId::Liouville, FnId::Unit] {
            let big_f = divisor_sum_table(&table(f, 1000));
            assert_eq!(davenport_sine(&big_f, r(1, 2), &d(1000)).unwrap().value, 0.0);
            assert_eq!(sincos_series(&big_f, r(3, 1), &d(1000)).unwrap().value, 0.0);
        }
    }

    #[test]
    fn frac_series_hand_values() {
        let mu = table(FnId::Moebius, 1000);
        let v = frac_series_lhs(&mu, r(2, 1), &d(1000)).unwrap();
        let want: f64 = -0.5 * (1..=1000).map(|n| mu.value(n) / n as f64).sum::<f64>();
        assert!((v.value - want).abs() < 1e-14);
        assert!(v.is_heuristic());
        assert_eq!(frac_series_lhs(&zero(100), r(1, 3), &d(100)).unwrap().value, 0.0);
    }

    #[test]
    fn theorem12_hand_values() {
        let mu = table(FnId::Moebius, 1000);
        assert!((theorem12_lhs(&mu, r(1, 2), &d(2)).unwrap().value + 0.25).abs() < 1e-16);
        for f in [FnId::VonMangoldt, FnId::Moebius, FnId::Liouville] {
            let t = table(f, 1000);
            let big_f = divisor_sum_table(&t);
            assert_eq!(theorem12_lhs(&t, r(7, 1), &d(1000)).unwrap().value, 0.0);
            assert_eq!(theorem12_rhs(&big_f, r(7, 1), &d(1000)).unwrap().value, 0.0);
        }
        let delta = divisor_sum_table(&mu);
        assert!((theorem12_rhs(&delta, r(1, 2), &d(10)).unwrap().value + 2.0 / (PI * PI)).abs() < 1e-16);
        assert_eq!(theorem12_rhs(&zero(10), r(1, 3), &d(10)).unwrap().value, 0.0);
        assert!(theorem12_lhs(&mu, r(-1, 2), &d(2)).is_err());
        assert!(theorem12_rhs(&delta, Rational::integer(0), &d(2)).is_err());
    }

    #[test]
    fn stable_form_matches_literal() {
        for f in [FnId::VonMangoldt, FnId::Moebius, FnId::Liouville] {
            let t = table(f, 1000);
            for x in [r(1, 3), r(5, 2)] {
                let stable = theorem12_lhs(&t, x, &d(1000)).unwrap().value;
                let literal = theorem12_lhs_literal(&t, x, &d(1000)).unwrap();
                assert!((stable - literal).abs() <= 1e-9, "{f} {x}");
            }
        }
    }

    #[test]
    fn refinement_within_tail_bound() {
        for f in [FnId::VonMangoldt, FnId::Moebius, FnId::Liouville] {
            let t = table(f, 200_000);
            let big_f = divisor_sum_table(&t);
            for x in [r(2, 1), r(5, 2), r(7, 3), r(15, 2)] {
                for n in [1_000u64, 10_000, 100_000] {
                    let pairs = [
                        (theorem11_lhs(&t, x, &d(n)).unwrap(), theorem11_lhs(&t, x, &d(2 * n)).unwrap()),
                        (cosine_term(&big_f, x, &d(n)).unwrap(), cosine_term(&big_f, x, &d(2 * n)).unwrap()),
                        (theorem12_lhs(&t, x, &d(n)).unwrap(), theorem12_lhs(&t, x, &d(2 * n)).unwrap()),
                        (theorem12_rhs(&big_f, x, &d(n)).unwrap(), theorem12_rhs(&big_f, x, &d(2 * n)).unwrap()),
                    ];
                    for (i, (a, b)) in pairs.iter().enumerate() {
                        assert!(!a.is_heuristic());
                        assert!((a.value - b.value).abs() <= a.tail_bound, "{f} x={x} n={n} series {i}");
                    }
                }
            }
        }
    }

    #[test]
    fn single_precision_instantiation() {
        let mu = sieve::<f32>(FnId::Moebius, 100).unwrap();
        let v = theorem11_lhs(&mu, r(2, 1), &d(4)).unwrap();
        assert!((v.value + 1.0 / 72.0).abs() < 1e-7);
    }

    #[test]
    fn truncation_beyond_table_is_an_error() {
        let mu = table(FnId::Moebius, 10);
        assert!(theorem12_lhs(&mu, r(1, 3), &d(11)).is_err());
        assert!(frac_series_lhs(&mu, r(1, 3), &d(0)).is_err());
    }
}
