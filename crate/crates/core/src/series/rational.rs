//! Exact rationals for series arguments.
//!
//! Fractional parts `{n·x}` of a rational `x = p/q` are residues `(n·p) mod q`,
//! so they are computed exactly and angle reduction never loses the argument.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::scalar::Real;

/// A reduced fraction `num/den` with `den ≥ 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(domain("zero denominator"));
        }
        Self::reduce(num as i128, den as i128)
    }

    pub fn integer(n: i64) -> Self {
        Self { num: n, den: 1 }
    }

    fn reduce(num: i128, den: i128) -> Result<Self> {
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(num), Ok(den)) => Ok(Self { num, den }),
            _ => Err(Error::Range(format!("rational {num}/{den} does not fit in 64 bits"))),
        }
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn floor(&self) -> i64 {
        self.num.div_euclid(self.den)
    }

    pub fn is_positive(&self) -> bool {
        self.num > 0
    }

    pub fn to_real<T: Real>(&self) -> T {
        T::of_i128(self.num as i128) / T::of_i128(self.den as i128)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den, self.num)
    }

    /// `self + k` for an integer `k`.
    pub fn shift(&self, k: i64) -> Result<Self> {
        Self::reduce(self.num as i128 + k as i128 * self.den as i128, self.den as i128)
    }

    pub fn checked_mul_int(&self, k: i64) -> Result<Self> {
        Self::reduce(self.num as i128 * k as i128, self.den as i128)
    }
}

impl std::ops::Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational { num: -self.num, den: self.den }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `p/q`, an integer, or a plain decimal such as `-2.125`
/// (converted exactly with a power-of-ten denominator).
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse { line: 0, message: format!("not a rational number: {s:?}") };
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            return Self::new(p, q);
        }
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let num: i128 = digits.parse().map_err(|_| bad())?;
        let den = 10i128
            .checked_pow(frac_part.len() as u32)
            .filter(|d| *d <= i64::MAX as i128)
            .ok_or_else(|| Error::Range(format!("too many decimal places in {s:?}")))?;
        Self::reduce(if neg { -num } else { num }, den)
    }
}

impl TryFrom<String> for Rational {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Rational> for String {
    fn from(r: Rational) -> String {
        r.to_string()
    }
}

/// `{n·x}` as an exact rational in `[0, 1)`.
///
/// The product is formed in 128 bits, which holds every `u64 × i64`.
pub fn frac_part(n: u64, x: Rational) -> Rational {
    let r = (n as i128 * x.num as i128).rem_euclid(x.den as i128);
    Rational::reduce(r, x.den as i128).expect("residue is below the denominator")
}

/// Residues `(n·step) mod modulus` for `n = 1, 2, ...`, updated by addition.
#[derive(Debug, Clone)]
pub(crate) struct Residues {
    current: i128,
    step: i128,
    modulus: i128,
}

impl Residues {
    pub(crate) fn new(step: i128, modulus: i128) -> Self {
        debug_assert!(modulus > 0);
        Self { current: 0, step: step.rem_euclid(modulus), modulus }
    }
}

impl Iterator for Residues {
    type Item = i128;

    #[inline]
    fn next(&mut self) -> Option<i128> {
        self.current += self.step;
        if self.current >= self.modulus {
            self.current -= self.modulus;
        }
        Some(self.current)
    }
}
