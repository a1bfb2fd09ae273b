//! Nontrivial-zero ordinates and the two zero sums of the explicit formula
//! for `Σ_{n>x} Λ(n)/n² ({n/x} − {n/x}²)`.

use std::path::Path;
use std::sync::OnceLock;

use crate::error::{domain, range, Error, Result};
use crate::scalar::Real;
use crate::series::{SeriesValue, TailKind};
use crate::summation::{Compensated, SummationMethod};

/// The bundled table of the first 100 ordinates.
pub const BUNDLED_ZEROS_100: &str = include_str!("../../../data/zeros100.txt");
/// The bundled table of the first 200 ordinates.
pub const BUNDLED_ZEROS_200: &str = include_str!("../../../data/zeros200.txt");

/// Ascending positive ordinates `γ` of zeros `ρ = 1/2 + iγ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable<T> {
    ordinates: Vec<T>,
    source: String,
}

impl<T: Real> ZeroTable<T> {
    /// Validates ordering; an empty table is allowed here and rejected by the sums.
    pub fn from_ordinates(ordinates: Vec<T>, source: impl Into<String>) -> Result<Self> {
        for (i, w) in ordinates.windows(2).enumerate() {
            if !(w[1] > w[0]) {
                return Err(Error::Parse { line: i + 2, message: "ordinates must be strictly increasing".into() });
            }
        }
        if let Some(&first) = ordinates.first() {
            if !(first > T::of(14.0)) {
                return Err(Error::Parse { line: 1, message: format!("first ordinate {first} is not above 14") });
            }
        }
        Ok(Self { ordinates, source: source.into() })
    }

    /// Parses one ordinate per line; `#` lines and blank lines are skipped.
    pub fn parse(text: &str, source: impl Into<String>) -> Result<Self> {
        let mut ordinates: Vec<T> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let s = raw.trim();
            if s.is_empty() || s.starts_with('#') {
                continue;
            }
            let v: f64 = s
                .parse()
                .map_err(|_| Error::Parse { line, message: format!("not a number: {s:?}") })?;
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Parse { line, message: format!("ordinate must be positive, got {s}") });
            }
            let v = T::of(v);
            if let Some(&last) = ordinates.last() {
                if !(v > last) {
                    return Err(Error::Parse { line, message: format!("ordinate {s} does not increase") });
                }
            } else if !(v > T::of(14.0)) {
                return Err(Error::Parse { line, message: format!("first ordinate {s} is not above 14") });
            }
            ordinates.push(v);
        }
        if ordinates.is_empty() {
            return Err(Error::Parse { line: 0, message: "no zeros".into() });
        }
        Ok(Self { ordinates, source: source.into() })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, path.display().to_string())
    }

    pub fn bundled() -> Self {
        Self::parse(BUNDLED_ZEROS_100, "bundled: first 100 zeros (mpmath.zetazero)").expect("bundled table is valid")
    }

    pub fn bundled_200() -> Self {
        Self::parse(BUNDLED_ZEROS_200, "bundled: first 200 zeros (mpmath.zetazero)").expect("bundled table is valid")
    }

    /// The first `count` ordinates.
    pub fn truncated(&self, count: usize) -> Self {
        Self {
            ordinates: self.ordinates[..count.min(self.ordinates.len())].to_vec(),
            source: format!("{} [first {count}]", self.source),
        }
    }

    pub fn ordinates(&self) -> &[T] {
        &self.ordinates
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Zero-density estimate of `Σ_{γ > γ_max} 1/γ²`:
    /// `(1/2π)(log(γ_max/2π) + 1)/γ_max`.
    pub fn density_tail(&self) -> Option<T> {
        let g = *self.ordinates.last()?;
        let two_pi = T::two() * T::PI();
        Some(((g / two_pi).ln() + T::one()) / (two_pi * g))
    }
}

/// `Σ_ρ x^{ρ−2}/(ρ(ρ−1))` over the listed zeros and their conjugates:
/// `Σ_γ −2 x^{−3/2} cos(γ log x)/(γ² + 1/4)`.
///
/// The tail is the zero-density estimate `2 x^{−3/2} Σ̂` and is heuristic.
pub fn popov_zero_sum<T: Real>(x: T, zeros: &ZeroTable<T>) -> Result<SeriesValue<T>> {
    if !(x > T::one()) {
        return Err(domain(format!("zero sum needs x > 1, got {x}")));
    }
    let tail = zeros.density_tail().ok_or_else(|| domain("zero table is empty"))?;
    let log_x = x.ln();
    let quarter = T::of(0.25);
    let mut acc = Compensated::new();
    for &g in zeros.ordinates() {
        acc.add((g * log_x).cos() / (g * g + quarter));
    }
    let scale = -T::two() * x.powf(T::of(-1.5));
    Ok(SeriesValue {
        value: scale * acc.value(),
        tail_bound: scale.abs() * tail,
        tail_kind: TailKind::Heuristic,
        terms_used: zeros.len() as u64,
        method: SummationMethod::Direct,
    })
}

pub const MAX_ODD_ZETA_K: u32 = 200;
const ODD_ZETA_TARGET: f64 = 1e-12;

/// A value with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounded<T> {
    pub value: T,
    pub error: T,
}

/// `ζ(2k+1)` by direct summation up to the first `M` with `M^{−2k}/(2k) ≤ 10⁻¹²`.
pub fn zeta_odd<T: Real>(k: u32) -> Result<Bounded<T>> {
    if !(1..=MAX_ODD_ZETA_K).contains(&k) {
        return Err(domain(format!("ζ(2k+1) supported for 1 ≤ k ≤ {MAX_ODD_ZETA_K}, got k = {k}")));
    }
    let two_k = 2.0 * k as f64;
    let mut m = ((1.0 / (ODD_ZETA_TARGET * two_k)).powf(1.0 / two_k)).ceil().max(2.0) as u64;
    while (m as f64).powf(-two_k) / two_k > ODD_ZETA_TARGET {
        m += 1;
    }
    let exponent = 2 * k as i32 + 1;
    let mut acc = Compensated::new();
    // smallest terms first
    for n in (1..=m).rev() {
        acc.add((T::one() / T::of_u64(n)).powi(exponent));
    }
    let value = acc.value();
    let tail = T::of((m as f64).powf(-two_k) / two_k);
    let rounding = T::of(4.0) * T::epsilon() * value;
    Ok(Bounded { value, error: tail + rounding })
}

/// `ζ(3), ζ(5), ..., ζ(2k_max+1)`, computed once.
#[derive(Debug, Clone)]
pub struct OddZetaCache<T> {
    values: Vec<Bounded<T>>,
}

impl<T: Real> OddZetaCache<T> {
    pub fn new(k_max: u32) -> Result<Self> {
        let values = (1..=k_max).map(zeta_odd::<T>).collect::<Result<Vec<_>>>()?;
        Ok(Self { values })
    }

    pub fn k_max(&self) -> u32 {
        self.values.len() as u32
    }

    pub fn get(&self, k: u32) -> Result<Bounded<T>> {
        if k == 0 {
            return Err(domain("ζ(2k+1) needs k ≥ 1"));
        }
        self.values
            .get(k as usize - 1)
            .copied()
            .ok_or_else(|| range(format!("k = {k} beyond cached k_max = {}", self.k_max())))
    }
}

impl OddZetaCache<f64> {
    /// Process-wide cache covering `1 ≤ k ≤ 200`.
    pub fn shared() -> &'static OddZetaCache<f64> {
        static CACHE: OnceLock<OddZetaCache<f64>> = OnceLock::new();
        CACHE.get_or_init(|| OddZetaCache::new(MAX_ODD_ZETA_K).expect("k range is valid"))
    }
}

pub const TRIVIAL_SERIES_X_FLOOR: f64 = 1.1;

/// `Σ_{k ≤ k_max} (k+1 − 2kζ(2k+1))/(2k(k+1)(2k+1)) · x^{−2k−2}`,
/// with tail `x^{−2k_max−4}/(1 − x^{−2})` plus the propagated `ζ` errors.
pub fn popov_trivial_sum<T: Real>(x: T, k_max: u32, cache: &OddZetaCache<T>) -> Result<SeriesValue<T>> {
    if !(x >= T::of(TRIVIAL_SERIES_X_FLOOR)) {
        return Err(domain(format!(
            "trivial-zero series needs x ≥ {TRIVIAL_SERIES_X_FLOOR} (geometric ratio x^-2 converges too slowly), got {x}"
        )));
    }
    if k_max == 0 {
        return Err(domain("k_max must be at least 1"));
    }
    let inv_x2 = T::one() / (x * x);
    let mut power = inv_x2 * inv_x2;
    let mut acc = Compensated::new();
    let mut zeta_err = T::zero();
    for k in 1..=k_max {
        let z = cache.get(k)?;
        let kf = T::of(k as f64);
        let denom = T::two() * kf * (kf + T::one()) * (T::two() * kf + T::one());
        acc.add((kf + T::one() - T::two() * kf * z.value) / denom * power);
        zeta_err = zeta_err + T::two() * kf * z.error / denom * power;
        power = power * inv_x2;
    }
    // power = x^{−2k_max−4}
    let tail = power / (T::one() - inv_x2);
    Ok(SeriesValue {
        value: acc.value(),
        tail_bound: tail + zeta_err,
        tail_kind: TailKind::Rigorous,
        terms_used: k_max as u64,
        method: SummationMethod::Direct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_tables() {
        let z = ZeroTable::<f64>::bundled();
        assert_eq!(z.len(), 100);
        assert!((z.ordinates()[0] - 14.134725).abs() < 1e-6);
        let z2 = ZeroTable::<f64>::bundled_200();
        assert_eq!(z2.len(), 200);
        assert_eq!(&z2.ordinates()[..100], z.ordinates());
    }

    #[test]
    fn parse_rules() {
        let t = ZeroTable::<f64>::parse("# header\n14.5\n\n# mid\n21.0\n", "t").unwrap();
        assert_eq!(t.ordinates(), &[14.5, 21.0]);
        assert!(matches!(ZeroTable::<f64>::parse("", "t"), Err(Error::Parse { .. })));
        assert!(matches!(ZeroTable::<f64>::parse("# only\n", "t"), Err(Error::Parse { message, .. }) if message == "no zeros"));
        assert!(matches!(ZeroTable::<f64>::parse("14.5\n21\n20\n", "t"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(ZeroTable::<f64>::parse("14.5\nabc\n", "t"), Err(Error::Parse { line: 2, .. })));
        assert!(ZeroTable::<f64>::parse("13.9\n", "t").is_err());
    }

    #[test]
    fn zero_sum_matches_complex_evaluation() {
        // x^{ρ−2}/(ρ(ρ−1)) + conjugate with ρ = 1/2 + iγ, in explicit complex arithmetic
        fn direct(x: f64, g: f64) -> (f64, f64) {
            let (lx, mag) = (x.ln(), x.powf(-1.5));
            let (nr, ni) = (mag * (g * lx).cos(), mag * (g * lx).sin());
            // ρ(ρ−1) = (1/2 + iγ)(−1/2 + iγ)
            let (dr, di) = (-0.25 - g * g, 0.5 * g - 0.5 * g);
            let d2 = dr * dr + di * di;
            let (qr, qi) = ((nr * dr + ni * di) / d2, (ni * dr - nr * di) / d2);
            // conjugate zero contributes (qr, -qi)
            (qr + qr, qi + (-qi))
        }
        let zeros = ZeroTable::<f64>::bundled();
        for &x in &[1.5, std::f64::consts::E, 2.0, 10.0] {
            let paired = popov_zero_sum(x, &zeros).unwrap();
            let mut re = 0.0;
            for &g in zeros.ordinates() {
                let (r, i) = direct(x, g);
                let single = popov_zero_sum(x, &ZeroTable::from_ordinates(vec![g], "one").unwrap()).unwrap();
                assert!((single.value - r).abs() <= 1e-15);
                assert_eq!(i, 0.0);
                re += r;
            }
            assert!((paired.value - re).abs() < 1e-14);
            assert!(paired.is_heuristic());
        }
        let e = std::f64::consts::E;
        let g = 14.134725;
        let single = popov_zero_sum(e, &ZeroTable::from_ordinates(vec![g], "one").unwrap()).unwrap();
        assert!((single.value - (-2.0 * e.powf(-1.5) * g.cos() / (g * g + 0.25))).abs() < 1e-17);
    }

    #[test]
    fn zero_sum_near_one_and_errors() {
        let t = ZeroTable::from_ordinates(vec![20.0f64], "one").unwrap();
        let v = popov_zero_sum(1.0 + 1e-12, &t).unwrap();
        assert!((v.value - (-2.0 / (400.25))).abs() < 1e-9);
        assert!(popov_zero_sum(1.0, &t).is_err());
        let empty = ZeroTable::<f64>::from_ordinates(vec![], "empty").unwrap();
        assert!(matches!(popov_zero_sum(2.0, &empty), Err(Error::Domain(_))));
    }

    #[test]
    fn odd_zeta_values() {
        let z3 = zeta_odd::<f64>(1).unwrap();
        assert!((z3.value - 1.202_056_903_159_594).abs() < 1.1e-12);
        assert!(z3.error <= 1e-12 + 1e-14);
        let z5 = zeta_odd::<f64>(2).unwrap();
        assert!((z5.value - 1.036_927_755_143_37).abs() < 1.1e-12);
        assert_eq!(zeta_odd::<f64>(100).unwrap().value, 1.0);
        assert!(zeta_odd::<f64>(0).is_err());
        assert!(zeta_odd::<f64>(201).is_err());
    }

    #[test]
    fn odd_zeta_cache_ordering() {
        let cache = OddZetaCache::<f64>::shared();
        let mut prev = f64::INFINITY;
        for k in 1..=MAX_ODD_ZETA_K {
            let z = cache.get(k).unwrap();
            assert!(z.value >= 1.0 && z.value <= 1.21);
            assert!(z.error <= 1e-12 + 1e-14);
            // 1 + 2^{-(2k+1)} is representable for 2k+1 ≤ 52
            if k <= 25 {
                assert!(z.value < prev && z.value > 1.0, "k = {k}");
            } else {
                assert!(z.value <= prev);
            }
            prev = z.value;
        }
        assert!(cache.get(201).is_err());
    }

    #[test]
    fn trivial_sum_examples() {
        let cache = OddZetaCache::<f64>::shared();
        let one = popov_trivial_sum(10.0, 1, cache).unwrap();
        let z3 = 1.202_056_903_159_594;
        assert!((one.value - (2.0 - 2.0 * z3) / 12.0 * 1e-4).abs() < 1e-15);
        assert!((one.value + 3.3676e-6).abs() < 1e-9);
        let two = popov_trivial_sum(2.0, 80, cache).unwrap();
        // geometric part plus the propagated ζ(2k+1) errors
        assert!(two.tail_bound <= 2f64.powi(-164) / 0.75 + 1e-13);
        let far = popov_trivial_sum(1e8, 80, cache).unwrap();
        assert!(far.value.abs() < 1e-32 && far.tail_bound < 1e-32);
        assert!(matches!(popov_trivial_sum(1.05, 80, cache), Err(Error::Domain(_))));
        assert!(popov_trivial_sum(2.0, 201, cache).is_err());
    }

    #[test]
    fn trivial_sum_refinement_within_tail() {
        let cache = OddZetaCache::<f64>::shared();
        for &x in &[1.5, 2.0, 5.0, 10.0] {
            for &k in &[5u32, 10, 40] {
                let a = popov_trivial_sum(x, k, cache).unwrap();
                let b = popov_trivial_sum(x, k + 20, cache).unwrap();
                assert!((a.value - b.value).abs() <= a.tail_bound, "x={x} k={k}");
            }
        }
    }
}
