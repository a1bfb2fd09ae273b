//! Sine and cosine of rational multiples of a full turn, `2π·r/q`.
//!
//! Quarter turns are handled exactly, so `sin(π) = 0` and `cos(π/2) = 0`
//! without rounding residue.

use crate::scalar::Real;

/// `(sin, cos)` of `2π·r/q`.
#[inline]
pub fn sin_cos_turns<T: Real>(r: i128, q: i128) -> (T, T) {
    let r = r.rem_euclid(q);
    let quarter = (4 * r) / q;
    let rem = 4 * r - quarter * q;
    let (s, c) = if rem == 0 {
        (T::zero(), T::one())
    } else {
        let a = T::FRAC_PI_2() * T::of_i128(rem) / T::of_i128(q);
        a.sin_cos()
    };
    match quarter {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

/// `sin(2π·r/q)`, exactly odd in `r`.
#[inline]
pub fn sin_turns<T: Real>(r: i128, q: i128) -> T {
    let r = r.rem_euclid(q);
    if 2 * r > q {
        -sin_cos_turns::<T>(q - r, q).0
    } else {
        sin_cos_turns::<T>(r, q).0
    }
}

/// `cos(2π·r/q)`, exactly even in `r`.
#[inline]
pub fn cos_turns<T: Real>(r: i128, q: i128) -> T {
    let r = r.rem_euclid(q);
    sin_cos_turns::<T>(r.min(q - r), q).1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_turns_are_exact() {
        assert_eq!(sin_turns::<f64>(1, 2), 0.0);
        assert_eq!(cos_turns::<f64>(1, 4), 0.0);
        assert_eq!(sin_turns::<f64>(1, 4), 1.0);
        assert_eq!(cos_turns::<f64>(1, 2), -1.0);
        assert_eq!(sin_turns::<f64>(3, 4), -1.0);
        assert_eq!(sin_turns::<f64>(0, 7), 0.0);
    }

    #[test]
    fn agrees_with_libm() {
        for q in 1..60i128 {
            for r in -70..70i128 {
                let a = 2.0 * std::f64::consts::PI * r as f64 / q as f64;
                let (s, c) = sin_cos_turns::<f64>(r, q);
                // libm sees the rounded angle
                let slack = 1e-15 * (1.0 + a.abs());
                assert!((s - a.sin()).abs() < slack, "sin {r}/{q}");
                assert!((c - a.cos()).abs() < slack, "cos {r}/{q}");
                assert_eq!(sin_turns::<f64>(r, q), -sin_turns::<f64>(-r, q));
                assert_eq!(cos_turns::<f64>(r, q), cos_turns::<f64>(-r, q));
            }
        }
    }
}
