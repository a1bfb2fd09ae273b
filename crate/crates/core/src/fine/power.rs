//! Power reduction and the finite trigonometric sums used to collapse Fine sums.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::scalar::Real;
use crate::series::turns::{cos_turns, sin_turns};

pub const MAX_POWER: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PowerKind {
    Cos,
    Sin,
}

/// `c₀ + Σ_j c_j cos(jθ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerReduction<T> {
    pub constant: T,
    /// `(j, c_j)` in increasing `j`, zero coefficients omitted.
    pub harmonics: Vec<(u32, T)>,
}

impl<T: Real> PowerReduction<T> {
    pub fn eval(&self, theta: T) -> T {
        self.harmonics.iter().fold(self.constant, |acc, &(j, c)| acc + c * (T::of_u64(j as u64) * theta).cos())
    }

    /// Value at `θ = 2π·r/q`.
    pub fn eval_turns(&self, r: i128, q: i128) -> T {
        self.harmonics.iter().fold(self.constant, |acc, &(j, c)| acc + c * cos_turns::<T>(j as i128 * r, q))
    }
}

fn binomial_row(m: u32) -> Vec<u64> {
    let mut row = vec![1u64; m as usize + 1];
    for k in 1..m as usize {
        row[k] = row[k - 1] * (m as u64 + 1 - k as u64) / k as u64;
    }
    row
}

/// Expands `cos^m θ` or `sin^m θ` (even `m`) from `((e^{iθ} ± e^{−iθ})/2)^m`.
pub fn power_reduction_coeffs<T: Real>(kind: PowerKind, m: u32) -> Result<PowerReduction<T>> {
    if !(1..=MAX_POWER).contains(&m) {
        return Err(domain(format!("power must lie in 1..={MAX_POWER}, got {m}")));
    }
    if kind == PowerKind::Sin && m % 2 == 1 {
        return Err(domain(format!("odd sine powers have sine harmonics; got sin^{m}")));
    }
    let row = binomial_row(m);
    let scale = T::of(0.5f64.powi(m as i32));
    // the e^{i(m−2k)θ} coefficient carries (−1)^{m/2 + k} for sine
    let sign = |k: u32| -> T {
        match kind {
            PowerKind::Cos => T::one(),
            PowerKind::Sin if (m / 2 + k).is_multiple_of(2) => T::one(),
            PowerKind::Sin => -T::one(),
        }
    };
    let constant = if m.is_multiple_of(2) { scale * T::of_u64(row[m as usize / 2]) * sign(m / 2) } else { T::zero() };
    let harmonics = (0..m.div_ceil(2))
        .rev()
        .map(|k| (m - 2 * k, T::two() * scale * T::of_u64(row[k as usize]) * sign(k)))
        .collect();
    Ok(PowerReduction { constant, harmonics })
}

/// `Σ_{k=1}^N cos(2πkn/N)`.
pub fn ramanujan_cos_sum<T: Real>(big_n: u64, n: u64) -> Result<T> {
    if big_n == 0 || n == 0 {
        return Err(domain("ramanujan_cos_sum needs N, n ≥ 1"));
    }
    let q = big_n as i128;
    let step = (n as i128).rem_euclid(q);
    let mut acc = crate::summation::Compensated::new();
    for k in 1..=q {
        acc.add(cos_turns::<T>((k * step) % q, q));
    }
    Ok(acc.value())
}

/// `Σ_{0<n≤N} sin²(πnm/N)`.
pub fn sin2_sum<T: Real>(big_n: u64, m: u64) -> Result<T> {
    if big_n == 0 {
        return Err(domain("sin2_sum needs N ≥ 1"));
    }
    let q = 2 * big_n as i128;
    let step = (m as i128).rem_euclid(q);
    let mut acc = crate::summation::Compensated::new();
    for n in 1..=big_n as i128 {
        let s = sin_turns::<T>((n * step) % q, q);
        acc.add(s * s);
    }
    Ok(acc.value())
}
