use serde::{Deserialize, Serialize};

use crate::error::{domain, range, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChiSign {
    Plus,
    Minus,
}

/// Weight placed on multiples of the modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChiConvention {
    /// `1 ± m^l`: the weights under which
    /// `Σ χ(n) f(n) n^{-s} = (1 ± f(m) m^{l-s}) L(s)` holds for completely multiplicative `f`.
    Corrected,
    /// `±(m^l ∓ 1)`, as the weights are usually printed.
    Literal,
}

/// The weight `χ^±_{m,l}(n)`: 1 off multiples of `m`, a fixed weight on them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChiVariant {
    pub sign: ChiSign,
    pub modulus: u64,
    pub exponent: u32,
    pub convention: ChiConvention,
}

impl ChiVariant {
    pub fn new(sign: ChiSign, modulus: u64, exponent: u32, convention: ChiConvention) -> Result<Self> {
        if modulus <= 1 {
            return Err(domain(format!("χ modulus must exceed 1, got {modulus}")));
        }
        if exponent <= 1 {
            return Err(domain(format!("χ exponent must exceed 1, got {exponent}")));
        }
        Ok(Self { sign, modulus, exponent, convention })
    }

    /// `m^l` as an exact integer.
    pub fn power(&self) -> Result<i64> {
        i64::try_from(self.modulus)
            .ok()
            .and_then(|m| m.checked_pow(self.exponent))
            .ok_or_else(|| range(format!("{}^{} overflows", self.modulus, self.exponent)))
    }

    /// Weight on multiples of `m`.
    pub fn multiple_weight(&self) -> Result<i64> {
        let p = self.power()?;
        Ok(match (self.convention, self.sign) {
            (ChiConvention::Corrected, ChiSign::Plus) => 1 + p,
            (ChiConvention::Corrected, ChiSign::Minus) => 1 - p,
            (ChiConvention::Literal, ChiSign::Plus) => p - 1,
            (ChiConvention::Literal, ChiSign::Minus) => -(p + 1),
        })
    }

    /// Largest `|χ(n)|`.
    pub fn abs_max(&self) -> Result<i64> {
        Ok(self.multiple_weight()?.abs().max(1))
    }

    pub fn weight<T: Real>(&self, n: u64) -> Result<T> {
        if n == 0 {
            return Err(domain("χ is defined for n ≥ 1"));
        }
        if !n.is_multiple_of(self.modulus) {
            return Ok(T::one());
        }
        Ok(T::of(self.multiple_weight()? as f64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{sieve, FnId};

    #[test]
    fn weight_examples() {
        let minus = ChiVariant::new(ChiSign::Minus, 4, 2, ChiConvention::Corrected).unwrap();
        assert_eq!(minus.weight::<f64>(8).unwrap(), -15.0);
        let plus_lit = ChiVariant::new(ChiSign::Plus, 5, 2, ChiConvention::Literal).unwrap();
        assert_eq!(plus_lit.weight::<f64>(10).unwrap(), 24.0);
        assert_eq!(plus_lit.weight::<f64>(7).unwrap(), 1.0);
        let plus = ChiVariant::new(ChiSign::Plus, 5, 2, ChiConvention::Corrected).unwrap();
        assert_eq!(plus.weight::<f64>(7).unwrap(), 1.0);
        assert_eq!(plus.weight::<f64>(5).unwrap(), 26.0);
        let minus_lit = ChiVariant::new(ChiSign::Minus, 5, 2, ChiConvention::Literal).unwrap();
        assert_eq!(minus_lit.weight::<f64>(5).unwrap(), -26.0);
    }

    #[test]
    fn invalid_parameters() {
        assert!(ChiVariant::new(ChiSign::Plus, 1, 2, ChiConvention::Corrected).is_err());
        assert!(ChiVariant::new(ChiSign::Plus, 3, 1, ChiConvention::Corrected).is_err());
        let huge = ChiVariant::new(ChiSign::Plus, 1_000_000, 5, ChiConvention::Corrected).unwrap();
        assert!(huge.weight::<f64>(1_000_000).is_err());
        assert_eq!(huge.weight::<f64>(3).unwrap(), 1.0);
    }

    /// Dirichlet partial sums of both sides of
    /// `Σ χ(n) f(n) n^{-s} = (1 ± f(m) m^{l-s}) Σ f(n) n^{-s}` at s = 3.
    #[test]
    fn corrected_weights_factor_the_dirichlet_series() {
        let n_max = 1_000_000u64;
        let s = 3.0f64;
        let lam = sieve::<f64>(FnId::Liouville, n_max).unwrap();
        for (sign, m) in [(ChiSign::Minus, 4u64), (ChiSign::Plus, 2), (ChiSign::Plus, 3), (ChiSign::Minus, 9)] {
            let chi = ChiVariant::new(sign, m, 2, ChiConvention::Corrected).unwrap();
            let mut weighted = 0.0;
            let mut plain = 0.0;
            for n in 1..=n_max {
                let t = lam.value(n) * (n as f64).powf(-s);
                weighted += chi.weight::<f64>(n).unwrap() * t;
                plain += t;
            }
            let pm = if sign == ChiSign::Plus { 1.0 } else { -1.0 };
            let factor = 1.0 + pm * lam.value(m) * (m as f64).powf(2.0 - s);
            assert!((weighted - factor * plain).abs() < 1e-8, "sign {sign:?} m {m}");

            let literal = ChiVariant { convention: ChiConvention::Literal, ..chi };
            let lit: f64 = (1..=n_max).map(|n| literal.weight::<f64>(n).unwrap() * lam.value(n) * (n as f64).powf(-s)).sum();
            assert!((lit - factor * plain).abs() > 1e-3, "literal weights should not factor");
        }
    }
}
