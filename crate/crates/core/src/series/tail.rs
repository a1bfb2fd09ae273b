//! Rigorous tail bounds `Σ_{k>n} b(k)·k^{-s}` for pointwise majorants `|a(k)| ≤ b(k)`.
//!
//! Each bound compares the tail with an integral of a function that is
//! decreasing on the integration range.

use crate::scalar::Real;

/// A pointwise bound `b(k) ≥ |a(k)|` on the coefficients of a series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Majorant<T> {
    Zero,
    Constant(T),
    /// `b(k) = log k`.
    Log,
    /// `b(k) = c·√k`.
    Sqrt(T),
    /// `b(1) = c`, zero elsewhere.
    Delta1(T),
    /// `b(k) = 1` on perfect squares, zero elsewhere.
    SquareIndicator,
}

/// `Σ_{k>n} k^{-s} ≤ (n+1)^{-s} + ∫_{n+1}^∞ y^{-s} dy` for `s > 1`.
fn power_tail<T: Real>(s: T, n: u64) -> T {
    let one = T::one();
    let first = T::of_u64(n) + one;
    first.powf(-s) + first.powf(one - s) / (s - one)
}

/// `Σ_{k>n} log(k)·k^{-s}` for `s > 1`.
fn log_tail<T: Real>(s: T, n: u64) -> T {
    let one = T::one();
    let start = n.max(3);
    let mut head = T::zero();
    for k in (n + 1)..=start {
        let kf = T::of_u64(k);
        head = head + kf.ln() * kf.powf(-s);
    }
    let sf = s - one;
    let nf = T::of_u64(start);
    head + nf.powf(-sf) * (nf.ln() / sf + one / (sf * sf))
}

impl<T: Real> Majorant<T> {
    /// Bound on `Σ_{k>n} b(k)·k^{-s}`, or `None` when that series diverges.
    pub fn tail_sum(&self, s: T, n: u64) -> Option<T> {
        let one = T::one();
        match *self {
            Majorant::Zero => Some(T::zero()),
            Majorant::Constant(c) if c == T::zero() => Some(T::zero()),
            Majorant::Constant(c) => (s > one).then(|| c * power_tail(s, n)),
            Majorant::Log => (s > one).then(|| log_tail(s, n)),
            Majorant::Sqrt(c) => {
                let s_eff = s - T::half();
                (s_eff > one).then(|| c * power_tail(s_eff, n))
            }
            Majorant::Delta1(c) => Some(if n == 0 { c } else { T::zero() }),
            Majorant::SquareIndicator => {
                let s2 = s + s;
                if s2 <= one {
                    return None;
                }
                // squares j² > n  ⇔  j > ⌊√n⌋
                Some(power_tail(s2, isqrt(n)))
            }
        }
    }

    /// Bound on `Σ_{k>n, step | k} b(k)·k^{-s}`.
    pub fn tail_sum_multiples(&self, s: T, step: u64, n: u64) -> Option<T> {
        let one = T::one();
        let j = n / step;
        let stepf = T::of_u64(step);
        match *self {
            Majorant::Zero => Some(T::zero()),
            Majorant::Constant(c) if c == T::zero() => Some(T::zero()),
            Majorant::Constant(c) => (s > one).then(|| c * stepf.powf(-s) * power_tail(s, j)),
            Majorant::Log => (s > one)
                .then(|| stepf.powf(-s) * (stepf.ln() * power_tail(s, j) + log_tail(s, j))),
            Majorant::Sqrt(c) => {
                let s_eff = s - T::half();
                (s_eff > one).then(|| c * stepf.powf(-s_eff) * power_tail(s_eff, j))
            }
            Majorant::Delta1(c) => Some(if n == 0 && step == 1 { c } else { T::zero() }),
            Majorant::SquareIndicator => self.tail_sum(s, n),
        }
    }

    /// Largest value of `b(k)` for `k ≤ n`.
    pub fn max_up_to(&self, n: u64) -> T {
        match *self {
            Majorant::Zero => T::zero(),
            Majorant::Constant(c) | Majorant::Delta1(c) => c,
            Majorant::Log => T::of_u64(n.max(1)).ln(),
            Majorant::Sqrt(c) => c * T::of_u64(n).sqrt(),
            Majorant::SquareIndicator => T::one(),
        }
    }
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}
