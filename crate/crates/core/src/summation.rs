//! Compensated accumulation and Cesàro (C,1) averaging of partial sums.

use serde::{Deserialize, Serialize};

use crate::scalar::Real;

/// Kahan–Babuška (Neumaier) running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct Compensated<T> {
    sum: T,
    compensation: T,
}

impl<T: Real> Compensated<T> {
    pub fn new() -> Self {
        Self { sum: T::zero(), compensation: T::zero() }
    }

    #[inline]
    pub fn add(&mut self, value: T) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation = self.compensation + ((self.sum - t) + value);
        } else {
            self.compensation = self.compensation + ((value - t) + self.sum);
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> T {
        self.sum + self.compensation
    }

    pub fn sum_iter<I: IntoIterator<Item = T>>(iter: I) -> T {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc.value()
    }
}

/// How a truncated series is reduced to a single value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SummationMethod {
    /// The last partial sum.
    Direct,
    /// Mean of the partial sums sampled at every multiple of the block size
    /// (and at the final index when it is not a multiple).
    Cesaro,
}

pub const DEFAULT_CESARO_BLOCK: u64 = 1000;

/// Truncation parameters shared by the series evaluators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationSpec {
    pub n_max: u64,
    pub method: SummationMethod,
    pub cesaro_block: u64,
}

impl TruncationSpec {
    pub fn direct(n_max: u64) -> Self {
        Self { n_max, method: SummationMethod::Direct, cesaro_block: DEFAULT_CESARO_BLOCK }
    }

    pub fn cesaro(n_max: u64) -> Self {
        Self { n_max, method: SummationMethod::Cesaro, cesaro_block: DEFAULT_CESARO_BLOCK }
    }

    pub fn with_block(mut self, block: u64) -> Self {
        self.cesaro_block = block.max(1);
        self
    }

    pub fn with_n_max(mut self, n_max: u64) -> Self {
        self.n_max = n_max;
        self
    }

    pub fn as_direct(self) -> Self {
        Self { method: SummationMethod::Direct, ..self }
    }
}

/// Consumes the terms `a_1, a_2, ...` of a series in order.
///
/// Partial sums are compensated; the Cesàro mean is tracked alongside so that
/// the gap between the two reductions is available as a heuristic error scale.
#[derive(Debug, Clone)]
pub struct SeriesSum<T> {
    partial: Compensated<T>,
    mean: Compensated<T>,
    samples: u64,
    count: u64,
    block: u64,
}

impl<T: Real> SeriesSum<T> {
    pub fn new(block: u64) -> Self {
        Self {
            partial: Compensated::new(),
            mean: Compensated::new(),
            samples: 0,
            count: 0,
            block: block.max(1),
        }
    }

    /// Adds the next term (index `count + 1`).
    #[inline]
    pub fn push(&mut self, term: T) {
        self.partial.add(term);
        self.count += 1;
        if self.count.is_multiple_of(self.block) {
            self.mean.add(self.partial.value());
            self.samples += 1;
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn partial(&self) -> T {
        self.partial.value()
    }

    pub fn cesaro(&self) -> T {
        let mut mean = self.mean;
        let mut samples = self.samples;
        if !self.count.is_multiple_of(self.block) || samples == 0 {
            mean.add(self.partial.value());
            samples += 1;
        }
        mean.value() / T::of_u64(samples)
    }

    /// Returns `(value, |cesaro − direct|)`.
    pub fn finish(&self, method: SummationMethod) -> (T, T) {
        let direct = self.partial();
        let cesaro = self.cesaro();
        let value = match method {
            SummationMethod::Direct => direct,
            SummationMethod::Cesaro => cesaro,
        };
        (value, (cesaro - direct).abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_recovers_small_terms() {
        let mut acc = Compensated::<f64>::new();
        acc.add(1.0);
        for _ in 0..1_000_000 {
            acc.add(1e-16);
        }
        assert!((acc.value() - (1.0 + 1e-10)).abs() < 1e-22);
    }

    #[test]
    fn cesaro_of_grandi_series_is_one_half() {
        let mut s = SeriesSum::<f64>::new(1);
        for n in 0..10_000 {
            s.push(if n % 2 == 0 { 1.0 } else { -1.0 });
        }
        let (v, gap) = s.finish(SummationMethod::Cesaro);
        assert!((v - 0.5).abs() < 1e-12);
        assert!((gap - 0.5).abs() < 1e-12);
    }

    #[test]
    fn cesaro_samples_final_partial_when_not_block_aligned() {
        let mut s = SeriesSum::<f64>::new(4);
        for _ in 0..6 {
            s.push(1.0);
        }
        // samples at n = 4 and n = 6
        assert_eq!(s.cesaro(), 5.0);
        assert_eq!(s.finish(SummationMethod::Direct).0, 6.0);
    }
}
