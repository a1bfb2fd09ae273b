use super::FnTable;
use crate::error::{domain, range, Result};
use crate::scalar::Real;
use crate::summation::Compensated;

#[derive(Debug, Clone)]
enum Prefix<T> {
    /// Integer-valued functions: sums kept exactly.
    Exact(Vec<i64>),
    Float(Vec<T>),
}

/// Summatory function `S(x) = Σ_{n ≤ x} f(n)` over a table.
#[derive(Debug, Clone)]
pub struct SummatoryView<'a, T> {
    base: &'a FnTable<T>,
    prefix: Prefix<T>,
}

impl<'a, T: Real> SummatoryView<'a, T> {
    pub fn new(base: &'a FnTable<T>) -> Self {
        let values = base.padded();
        let exact = base.fn_id().is_integer_valued()
            && values.iter().all(|v| v.fract() == T::zero() && v.abs() <= T::one());
        let prefix = if exact {
            let mut acc = 0i64;
            Prefix::Exact(
                values
                    .iter()
                    .map(|v| {
                        acc += v.to_i64().expect("integer-valued");
                        acc
                    })
                    .collect(),
            )
        } else {
            let mut acc = Compensated::new();
            Prefix::Float(
                values
                    .iter()
                    .map(|&v| {
                        acc.add(v);
                        acc.value()
                    })
                    .collect(),
            )
        };
        Self { base, prefix }
    }

    pub fn base(&self) -> &FnTable<T> {
        self.base
    }

    /// `S(n)` for an integer `0 ≤ n ≤ limit`.
    pub fn prefix_sum(&self, n: u64) -> T {
        match &self.prefix {
            Prefix::Exact(v) => T::of(v[n as usize] as f64),
            Prefix::Float(v) => v[n as usize],
        }
    }

    /// Exact integer prefix sum when the function is integer-valued.
    pub fn prefix_sum_exact(&self, n: u64) -> Option<i64> {
        match &self.prefix {
            Prefix::Exact(v) => Some(v[n as usize]),
            Prefix::Float(_) => None,
        }
    }

    /// `S(x)`; zero for `x < 1`.
    pub fn summatory(&self, x: T) -> Result<T> {
        if x.is_nan() || x < T::zero() {
            return Err(domain(format!("summatory function needs x ≥ 0, got {x}")));
        }
        if x > T::of_u64(self.base.limit()) {
            return Err(range(format!("x = {x} exceeds table limit {}", self.base.limit())));
        }
        let n = x.floor().to_u64().expect("bounded by limit");
        Ok(self.prefix_sum(n))
    }
}
