use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::summation::DEFAULT_CESARO_BLOCK;

/// Absolute floor on every pass test, absorbing double-precision noise
/// on identities whose sides are exactly zero.
pub const FLOOR_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityId {
    Popov,
    Thm11,
    Thm12,
    Thm31,
    Lemma31,
    Lemma32,
    Eq34,
    CrossPopovThm11,
}

impl IdentityId {
    pub fn name(&self) -> &'static str {
        match self {
            IdentityId::Popov => "popov",
            IdentityId::Thm11 => "thm11",
            IdentityId::Thm12 => "thm12",
            IdentityId::Thm31 => "thm31",
            IdentityId::Lemma31 => "lemma31",
            IdentityId::Lemma32 => "lemma32",
            IdentityId::Eq34 => "eq34",
            IdentityId::CrossPopovThm11 => "cross_popov_thm11",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sign of the right-hand side assembled for the Bernoulli-sum identity.
///
/// With `T(x) = (1/2x)∫₀ˣ S(y)/y² dy + (1/2π²) Σ F(n)/n² (cos(2πn/x) − 1)`,
/// the half-sum `(1/2) Σ_{n>x} f(n)/n² ({n/x} − {n/x}²)` equals `−T(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignConvention {
    /// Right-hand side `−T(x)`.
    Corrected,
    /// Right-hand side `+T(x)`, as the identity is usually printed.
    Literal,
}

impl SignConvention {
    pub fn name(&self) -> &'static str {
        match self {
            SignConvention::Corrected => "corrected",
            SignConvention::Literal => "literal",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub n_max: u64,
    pub k_max: u32,
    pub cesaro_block: u64,
    /// Extra absolute slack on the pass test.
    pub tolerance: Option<f64>,
    pub sign: SignConvention,
    pub quad_tol: f64,
}

impl VerifyConfig {
    pub fn new(n_max: u64) -> Self {
        Self {
            n_max,
            k_max: 80,
            cesaro_block: DEFAULT_CESARO_BLOCK,
            tolerance: None,
            sign: SignConvention::Corrected,
            quad_tol: crate::quad::DEFAULT_TOL,
        }
    }

    pub fn with_tolerance(mut self, tol: Option<f64>) -> Self {
        self.tolerance = tol;
        self
    }
}

/// One verification result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: IdentityId,
    pub params: BTreeMap<String, String>,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub bound: f64,
    pub bound_is_heuristic: bool,
    pub pass: bool,
    /// Constituent values (series, tails, auxiliary checks).
    #[serde(default)]
    pub components: BTreeMap<String, f64>,
}

impl IdentityReport {
    pub(crate) fn new(identity: IdentityId, lhs: f64, rhs: f64, bound: f64, heuristic: bool, tolerance: Option<f64>) -> Self {
        let residual = (lhs - rhs).abs();
        let threshold = bound.max(FLOOR_TOL).max(tolerance.unwrap_or(0.0));
        Self {
            identity,
            params: BTreeMap::new(),
            lhs,
            rhs,
            residual,
            bound,
            bound_is_heuristic: heuristic,
            pass: residual <= threshold,
            components: BTreeMap::new(),
        }
    }

    pub(crate) fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub(crate) fn component(mut self, key: &str, value: f64) -> Self {
        self.components.insert(key.to_string(), value);
        self
    }

    /// Marks the report failed when an auxiliary check does not hold.
    pub(crate) fn require(mut self, ok: bool) -> Self {
        self.pass &= ok;
        self
    }

    /// Pass threshold recomputed from the stored fields.
    pub fn threshold(&self, tolerance: Option<f64>) -> f64 {
        self.bound.max(FLOOR_TOL).max(tolerance.unwrap_or(0.0))
    }

    pub const CSV_HEADER: [&'static str; 9] =
        ["identity", "params", "lhs", "rhs", "residual", "bound", "bound_is_heuristic", "pass", "components"];

    /// Row matching [`Self::CSV_HEADER`]; maps are flattened as `k=v;k=v`.
    pub fn csv_row(&self) -> Vec<String> {
        let flat = |m: Vec<(String, String)>| m.into_iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";");
        vec![
            self.identity.to_string(),
            flat(self.params.iter().map(|(k, v)| (k.clone(), v.clone())).collect()),
            format!("{:e}", self.lhs),
            format!("{:e}", self.rhs),
            format!("{:e}", self.residual),
            format!("{:e}", self.bound),
            self.bound_is_heuristic.to_string(),
            self.pass.to_string(),
            flat(self.components.iter().map(|(k, v)| (k.clone(), format!("{v:e}"))).collect()),
        ]
    }
}
