//! Acceptance thresholds used by the self-test grid and the acceptance suite.
//!
//! Each value is a fixed absolute threshold on a residual unless noted.

/// Explicit formula, 100 zeros, Λ sieved to 10⁷.
pub const POPOV_X2: f64 = 5e-3;
pub const POPOV_X5: f64 = 1e-3;
pub const POPOV_X10: f64 = 5e-4;
/// Wall-clock budget for the explicit-formula run, seconds.
pub const POPOV_RUNTIME_SECS: f64 = 60.0;

/// Bernoulli-sum identity at `n_max = 10⁷`.
pub const THM11_VON_MANGOLDT: f64 = 1e-5;
pub const THM11_BOUNDED: f64 = 1e-6;

/// Fractional-part quadratic identity at `n_max = 10⁷`, `f ∈ {μ, λ}`.
pub const THM12_BOUNDED: f64 = 1e-6;
/// Integer `x`: both sides vanish.
pub const EXACT_ZERO: f64 = 1e-14;

/// `sincos_series` against `davenport_sine`, relative.
pub const STRUCTURAL_REL: f64 = 1e-12;
/// Davenport collapse for μ under Cesàro summation at `n_max = 10⁶`.
pub const DAVENPORT_COLLAPSE: f64 = 1e-2;

pub const ORTHOGONALITY: f64 = 1e-10;
pub const FRAC_SINCOS: f64 = 1e-9;
pub const RAMANUJAN: f64 = 1e-9;
pub const EULER_MACLAURIN: f64 = 1e-9;

/// χ-weighted families, collapsed at `n_max = 10⁷`.
pub const FINE_CHI: f64 = 1e-5;
/// Cosine-power families, Cesàro at `n_max = 10⁶`.
pub const FINE_COS_POWER: f64 = 5e-2;
