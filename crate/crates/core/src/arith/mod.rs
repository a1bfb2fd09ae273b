//! Sieved arithmetic functions and the quantities derived from them.

mod chi;
mod custom;
mod sieve;
mod summatory;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use chi::{ChiConvention, ChiSign, ChiVariant};
pub use custom::{parse_custom_csv, read_custom_csv, write_table_csv};
pub use sieve::{sieve, MAX_SIEVE_LIMIT};
pub use summatory::SummatoryView;

use crate::error::{domain, range, Error, Result};
use crate::scalar::Real;
use crate::series::{Majorant, SeriesValue, TailKind};
use crate::summation::{SeriesSum, SummationMethod};

/// Which arithmetic function a table holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FnId {
    VonMangoldt,
    Moebius,
    Liouville,
    Unit,
    Custom,
}

impl FnId {
    pub const BUILTIN: [FnId; 4] = [FnId::VonMangoldt, FnId::Moebius, FnId::Liouville, FnId::Unit];

    pub fn name(&self) -> &'static str {
        match self {
            FnId::VonMangoldt => "von_mangoldt",
            FnId::Moebius => "moebius",
            FnId::Liouville => "liouville",
            FnId::Unit => "unit",
            FnId::Custom => "custom",
        }
    }

    /// Values are integers, so summatory functions can be kept exact.
    pub fn is_integer_valued(&self) -> bool {
        matches!(self, FnId::Moebius | FnId::Liouville | FnId::Unit)
    }
}

impl fmt::Display for FnId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FnId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "von_mangoldt" | "vonmangoldt" | "mangoldt" => Ok(FnId::VonMangoldt),
            "moebius" | "mobius" | "mu" => Ok(FnId::Moebius),
            "liouville" => Ok(FnId::Liouville),
            "unit" | "one" => Ok(FnId::Unit),
            "custom" => Ok(FnId::Custom),
            other => Err(domain(format!("unknown arithmetic function {other:?}"))),
        }
    }
}

/// Whether a table holds `f` itself or its divisor sum `F = f ∗ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableKind {
    Base,
    DivisorSum,
}

/// Values `f(1..=limit)` of an arithmetic function.
#[derive(Debug, Clone)]
pub struct FnTable<T> {
    fn_id: FnId,
    kind: TableKind,
    // values[0] is an unused zero so that values[n] = f(n)
    values: Vec<T>,
    completely_multiplicative: bool,
    base_abs_max: T,
}

impl<T: Real> FnTable<T> {
    /// Builds a table from `f(1), ..., f(limit)`.
    pub fn from_values(fn_id: FnId, values: Vec<T>, completely_multiplicative: bool) -> Result<Self> {
        if values.is_empty() {
            return Err(domain("a table needs at least one value"));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Numeric(format!("non-finite value at n = {}", i + 1)));
        }
        let base_abs_max = values.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        let mut padded = Vec::with_capacity(values.len() + 1);
        padded.push(T::zero());
        padded.extend(values);
        Ok(Self { fn_id, kind: TableKind::Base, values: padded, completely_multiplicative, base_abs_max })
    }

    pub(crate) fn from_padded(fn_id: FnId, values: Vec<T>, completely_multiplicative: bool) -> Self {
        debug_assert!(values.len() >= 2);
        let base_abs_max = values.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        Self { fn_id, kind: TableKind::Base, values, completely_multiplicative, base_abs_max }
    }

    pub fn fn_id(&self) -> FnId {
        self.fn_id
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn limit(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    /// `f(n)` for `1 ≤ n ≤ limit`.
    #[inline]
    pub fn value(&self, n: u64) -> T {
        self.values[n as usize]
    }

    pub fn get(&self, n: u64) -> Option<T> {
        (n >= 1).then(|| self.values.get(n as usize).copied()).flatten()
    }

    /// `f(1), ..., f(limit)`.
    pub fn values(&self) -> &[T] {
        &self.values[1..]
    }

    pub(crate) fn padded(&self) -> &[T] {
        &self.values
    }

    pub fn is_completely_multiplicative(&self) -> bool {
        self.completely_multiplicative
    }

    /// Pointwise bound on `|values[n]|` used for truncation tails.
    pub fn majorant(&self) -> Majorant<T> {
        let m = self.base_abs_max;
        if m == T::zero() {
            return Majorant::Zero;
        }
        match (self.kind, self.fn_id) {
            (TableKind::Base, FnId::VonMangoldt) => Majorant::Log,
            (TableKind::Base, FnId::Moebius | FnId::Liouville | FnId::Unit) => Majorant::Constant(T::one()),
            (TableKind::Base, FnId::Custom) => Majorant::Constant(m),
            // Σ_{d|n} Λ(d) = log n
            (TableKind::DivisorSum, FnId::VonMangoldt) => Majorant::Log,
            // Σ_{d|n} μ(d) = [n = 1]
            (TableKind::DivisorSum, FnId::Moebius) => Majorant::Delta1(T::one()),
            // Σ_{d|n} λ(d) = [n is a square]
            (TableKind::DivisorSum, FnId::Liouville) => Majorant::SquareIndicator,
            // d(n) ≤ 2√n
            (TableKind::DivisorSum, FnId::Unit) => Majorant::Sqrt(T::two()),
            (TableKind::DivisorSum, FnId::Custom) => Majorant::Sqrt(T::two() * m),
        }
    }

    pub(crate) fn require_limit(&self, n_max: u64) -> Result<()> {
        if n_max > self.limit() {
            return Err(range(format!(
                "truncation {n_max} exceeds the {} table limit {}",
                self.fn_id,
                self.limit()
            )));
        }
        Ok(())
    }
}

/// `F(n) = Σ_{d|n} f(d)` for every `n ≤ limit`, by scanning multiples.
pub fn divisor_sum_table<T: Real>(table: &FnTable<T>) -> FnTable<T> {
    let limit = table.limit() as usize;
    let mut out = vec![T::zero(); limit + 1];
    for d in 1..=limit {
        let fd = table.values[d];
        if fd == T::zero() {
            continue;
        }
        for m in (d..=limit).step_by(d) {
            out[m] = out[m] + fd;
        }
    }
    FnTable {
        fn_id: table.fn_id,
        kind: TableKind::DivisorSum,
        values: out,
        completely_multiplicative: false,
        base_abs_max: table.base_abs_max,
    }
}

/// Partial Dirichlet series `Σ_{n ≤ n_max} f(n)·n^{-s}` with a rigorous tail bound.
pub fn dirichlet_partial<T: Real>(table: &FnTable<T>, s: T, n_max: u64) -> Result<SeriesValue<T>> {
    if !(s > T::one()) {
        return Err(domain(format!("Dirichlet series needs s > 1, got {s}")));
    }
    table.require_limit(n_max)?;
    let mut acc = SeriesSum::new(n_max.max(1));
    for n in 1..=n_max {
        acc.push(table.value(n) * T::of_u64(n).powf(-s));
    }
    let tail = table
        .majorant()
        .tail_sum(s, n_max)
        .expect("s > 1 makes every table majorant summable");
    Ok(SeriesValue {
        value: acc.partial(),
        tail_bound: tail,
        tail_kind: TailKind::Rigorous,
        terms_used: n_max,
        method: SummationMethod::Direct,
    })
}
