//! Fine-query families: cosine and sine powers weighted by `f(n)/n`, and the
//! χ-weighted series `D₁`, `D₂` weighted by `f(n)/n^l`.

mod power;
mod scan;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use power::{power_reduction_coeffs, ramanujan_cos_sum, sin2_sum, PowerKind, PowerReduction, MAX_POWER};
pub use scan::{fine_scan, fine_sum, oddness_probe, FineMethod, FineReport, FineScan, OddnessReport, ScanSummary};

use crate::arith::{ChiConvention, ChiSign, ChiVariant, FnId, FnTable};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::series::{check_truncation, finish, Rational, Residues, SeriesValue};
use crate::series::turns::{cos_turns, sin_turns};
use crate::summation::{SeriesSum, TruncationSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FineFamily {
    CosPower(u32),
    SinEvenPower(u32),
    D1,
    D2,
}

/// Angle convention inside the series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Frequency {
    /// `cos(2πnx)`: 1-periodic for every power.
    #[default]
    TwoPi,
    /// `cos(πnx)`.
    PiLiteral,
}

impl Frequency {
    pub fn name(&self) -> &'static str {
        match self {
            Frequency::TwoPi => "two_pi",
            Frequency::PiLiteral => "pi_literal",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FineSpec {
    pub family: FineFamily,
    pub base_fn: FnId,
    /// Present exactly for `D₁`/`D₂`; carries the modulus `m` and exponent `l`.
    pub chi: Option<ChiVariant>,
    pub frequency: Frequency,
    /// Skips the complete-multiplicativity requirement on the base table.
    pub audit: bool,
}

impl FineSpec {
    pub fn cos_power(base_fn: FnId, m: u32) -> Result<Self> {
        power_reduction_coeffs::<f64>(PowerKind::Cos, m)?;
        Ok(Self { family: FineFamily::CosPower(m), base_fn, chi: None, frequency: Frequency::TwoPi, audit: false })
    }

    pub fn sin_even_power(base_fn: FnId, m: u32) -> Result<Self> {
        power_reduction_coeffs::<f64>(PowerKind::Sin, m)?;
        Ok(Self { family: FineFamily::SinEvenPower(m), base_fn, chi: None, frequency: Frequency::TwoPi, audit: false })
    }

    /// `Σ χ⁺(n) f(n) n^{-l} cos(2πnx)`, for `f(m) = −1`.
    pub fn d1(base_fn: FnId, m: u64, l: u32, convention: ChiConvention) -> Result<Self> {
        let chi = ChiVariant::new(ChiSign::Plus, m, l, convention)?;
        Ok(Self { family: FineFamily::D1, base_fn, chi: Some(chi), frequency: Frequency::TwoPi, audit: false })
    }

    /// `Σ χ⁻(n) f(n) n^{-l} cos(2πnx)`, for `f(m) = +1`.
    pub fn d2(base_fn: FnId, m: u64, l: u32, convention: ChiConvention) -> Result<Self> {
        let chi = ChiVariant::new(ChiSign::Minus, m, l, convention)?;
        Ok(Self { family: FineFamily::D2, base_fn, chi: Some(chi), frequency: Frequency::TwoPi, audit: false })
    }

    pub fn with_frequency(mut self, frequency: Frequency) -> Self {
        self.frequency = frequency;
        self
    }

    pub fn with_audit(mut self, audit: bool) -> Self {
        self.audit = audit;
        self
    }

    pub fn is_chi_family(&self) -> bool {
        matches!(self.family, FineFamily::D1 | FineFamily::D2)
    }

    /// The modulus gating `coprime_ok`, if the family has one.
    pub fn modulus(&self) -> Option<u64> {
        self.chi.map(|c| c.modulus)
    }

    pub fn family_name(&self) -> &'static str {
        match self.family {
            FineFamily::CosPower(_) => "cos_power",
            FineFamily::SinEvenPower(_) => "sin_even_power",
            FineFamily::D1 => "d1",
            FineFamily::D2 => "d2",
        }
    }

    /// Power `m` for the power families, modulus `m` for `D₁`/`D₂`.
    pub fn m(&self) -> u64 {
        match self.family {
            FineFamily::CosPower(m) | FineFamily::SinEvenPower(m) => m as u64,
            FineFamily::D1 | FineFamily::D2 => self.chi.map_or(0, |c| c.modulus),
        }
    }

    pub fn l(&self) -> Option<u32> {
        self.chi.map(|c| c.exponent)
    }

    fn reduction<T: Real>(&self) -> Result<Option<PowerReduction<T>>> {
        Ok(match self.family {
            FineFamily::CosPower(m) => Some(power_reduction_coeffs(PowerKind::Cos, m)?),
            FineFamily::SinEvenPower(m) => Some(power_reduction_coeffs(PowerKind::Sin, m)?),
            FineFamily::D1 | FineFamily::D2 => None,
        })
    }

    /// Checks the table against the family's hypotheses.
    pub fn validate<T: Real>(&self, table: &FnTable<T>) -> Result<()> {
        if table.fn_id() != self.base_fn {
            return Err(Error::Spec(format!("{self} given a {} table", table.fn_id())));
        }
        let (Some(chi), want) = (self.chi, if self.family == FineFamily::D1 { -1.0 } else { 1.0 }) else {
            return Ok(());
        };
        if !self.audit && !table.is_completely_multiplicative() {
            return Err(Error::Spec(format!("{self} needs a completely multiplicative base, {} is not", self.base_fn)));
        }
        let fm = table.get(chi.modulus).ok_or_else(|| Error::Spec(format!("table does not reach m = {}", chi.modulus)))?;
        if fm.as_f64() != want {
            return Err(Error::Spec(format!("{self} needs f({}) = {want}, table has {}", chi.modulus, fm)));
        }
        Ok(())
    }

    /// Coefficient majorant of the `n`-th term: `|w(n) f(n)| ≤ scale·b(n)`.
    fn tail_scale<T: Real>(&self) -> Result<T> {
        Ok(match self.chi {
            // 1 + m^l dominates every χ weight
            Some(chi) => T::one() + T::of(chi.power()? as f64),
            None => T::one(),
        })
    }

    fn weight_exponent<T: Real>(&self) -> T {
        T::of_u64(self.l().unwrap_or(1) as u64)
    }
}

impl fmt::Display for FineSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.chi {
            Some(c) => write!(f, "{}({},{},{})", self.family_name(), self.base_fn, c.modulus, c.exponent),
            None => write!(f, "{}({},{})", self.family_name(), self.base_fn, self.m()),
        }
    }
}

/// Per-`n` weight `w(n)·n^{-s}` for the χ families, `1/n` otherwise.
struct Weights<T> {
    chi: Option<ChiVariant>,
    multiple: T,
    s: T,
}

impl<T: Real> Weights<T> {
    fn new(spec: &FineSpec) -> Result<Self> {
        let multiple = match spec.chi {
            Some(c) => T::of(c.multiple_weight()? as f64),
            None => T::one(),
        };
        Ok(Self { chi: spec.chi, multiple, s: spec.weight_exponent() })
    }

    #[inline]
    fn at(&self, n: u64) -> T {
        let nf = T::of_u64(n);
        let base = match self.chi {
            Some(c) if c.exponent == 2 => T::one() / (nf * nf),
            Some(_) => nf.powf(-self.s),
            None => T::one() / nf,
        };
        match self.chi {
            Some(c) if n.is_multiple_of(c.modulus) => self.multiple * base,
            _ => base,
        }
    }
}

/// `φ(x)` for the family, truncated at `t.n_max`.
pub fn eval_phi<T: Real>(spec: &FineSpec, table: &FnTable<T>, x: Rational, t: &TruncationSpec) -> Result<SeriesValue<T>> {
    spec.validate(table)?;
    check_truncation(table, t)?;
    let weights = Weights::new(spec)?;
    let (p, q) = (x.numer() as i128, x.denom() as i128);
    // the angle is 2π·r/modulus with r = n·p mod modulus
    let modulus = match spec.frequency {
        Frequency::TwoPi => q,
        Frequency::PiLiteral => 2 * q,
    };
    let power = match spec.family {
        FineFamily::CosPower(m) | FineFamily::SinEvenPower(m) => m as i32,
        _ => 1,
    };
    let mut acc = SeriesSum::new(t.cesaro_block);
    for (n, r) in (1..=t.n_max).zip(Residues::new(p, modulus)) {
        let fv = table.value(n);
        if fv == T::zero() {
            acc.push(T::zero());
            continue;
        }
        let trig = match spec.family {
            FineFamily::CosPower(_) => cos_turns::<T>(r, modulus).powi(power),
            FineFamily::SinEvenPower(_) => sin_turns::<T>(r, modulus).powi(power),
            FineFamily::D1 | FineFamily::D2 => cos_turns::<T>(r, modulus),
        };
        acc.push(fv * weights.at(n) * trig);
    }
    let s = spec.weight_exponent::<T>();
    Ok(finish(&acc, t, table.majorant(), s, spec.tail_scale()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sieve;

    fn lambda(limit: u64) -> FnTable<f64> {
        sieve(FnId::Liouville, limit).unwrap()
    }

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    #[test]
    fn two_term_partial_sum() {
        let spec = FineSpec::d2(FnId::Liouville, 4, 2, ChiConvention::Corrected).unwrap();
        let v = eval_phi(&spec, &lambda(100), Rational::integer(0), &TruncationSpec::direct(2)).unwrap();
        assert_eq!(v.value, 0.75);
    }

    #[test]
    fn periodic_and_even() {
        let table = lambda(20_000);
        let t = TruncationSpec::cesaro(20_000);
        let specs = [
            FineSpec::d2(FnId::Liouville, 4, 2, ChiConvention::Corrected).unwrap(),
            FineSpec::d1(FnId::Liouville, 2, 3, ChiConvention::Literal).unwrap(),
            FineSpec::cos_power(FnId::Liouville, 3).unwrap(),
            FineSpec::sin_even_power(FnId::Liouville, 4).unwrap(),
        ];
        for spec in specs {
            for x in [r(1, 3), r(2, 7), r(-5, 11), r(13, 10)] {
                let a = eval_phi(&spec, &table, x, &t).unwrap();
                let b = eval_phi(&spec, &table, x.shift(1).unwrap(), &t).unwrap();
                let c = eval_phi(&spec, &table, -x, &t).unwrap();
                assert_eq!(a.value, b.value, "{spec} periodic at {x}");
                assert_eq!(a.value, c.value, "{spec} even at {x}");
            }
        }
    }

    #[test]
    fn spec_validation() {
        let mu = sieve::<f64>(FnId::Moebius, 100).unwrap();
        let strict = FineSpec::d1(FnId::Moebius, 5, 2, ChiConvention::Corrected).unwrap();
        assert!(matches!(strict.validate(&mu), Err(Error::Spec(_))));
        assert!(strict.with_audit(true).validate(&mu).is_ok());
        // λ(4) = +1, so D₁ is the wrong family
        let wrong = FineSpec::d1(FnId::Liouville, 4, 2, ChiConvention::Corrected).unwrap();
        assert!(matches!(wrong.validate(&lambda(100)), Err(Error::Spec(_))));
        assert!(FineSpec::d1(FnId::Liouville, 2, 2, ChiConvention::Corrected).unwrap().validate(&lambda(100)).is_ok());
        assert!(matches!(strict.validate(&lambda(100)), Err(Error::Spec(_))));
    }

    #[test]
    fn absolute_tail_bound_holds() {
        let table = lambda(200_000);
        let spec = FineSpec::d2(FnId::Liouville, 4, 2, ChiConvention::Corrected).unwrap();
        let coarse = eval_phi(&spec, &table, r(2, 9), &TruncationSpec::direct(1_000)).unwrap();
        let fine = eval_phi(&spec, &table, r(2, 9), &TruncationSpec::direct(200_000)).unwrap();
        assert!(!coarse.is_heuristic());
        assert!((coarse.value - fine.value).abs() <= coarse.tail_bound);
        assert!(coarse.tail_bound <= 17.0 / 1_000.0 + 1e-12);
    }

    #[test]
    fn pi_literal_matches_half_angle() {
        let table = lambda(1_000);
        let spec = FineSpec::cos_power(FnId::Liouville, 2).unwrap();
        let t = TruncationSpec::direct(1_000);
        let lit = eval_phi(&spec.with_frequency(Frequency::PiLiteral), &table, r(2, 5), &t).unwrap();
        let two = eval_phi(&spec, &table, r(1, 5), &t).unwrap();
        assert!((lit.value - two.value).abs() < 1e-13);
    }
}
