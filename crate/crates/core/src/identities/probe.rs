use serde::{Deserialize, Serialize};

use super::workspace::Workspace;
use crate::arith::FnId;
use crate::error::Result;
use crate::scalar::Real;
use crate::series::{cosine_term, theorem11_lhs, Rational};
use crate::summation::TruncationSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaKind {
    /// `Δ(x) = x`.
    Linear,
    /// `Δ(x) = 1`.
    Constant,
}

/// A candidate `Δ` with `S(x) ~ Δ(x)` for the function it is paired with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsymptoticModel {
    pub delta_kind: DeltaKind,
    pub fn_id: FnId,
}

impl AsymptoticModel {
    /// The pairing used by the built-in suite: `ψ(x) ~ x`.
    pub fn von_mangoldt() -> Self {
        Self { delta_kind: DeltaKind::Linear, fn_id: FnId::VonMangoldt }
    }

    pub fn delta(&self, x: f64) -> f64 {
        match self.delta_kind {
            DeltaKind::Linear => x,
            DeltaKind::Constant => 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub x: String,
    /// `D(x) = theorem11_lhs − cosine_term`.
    pub d: f64,
    /// `D(x) / (Δ(x)/x²)`.
    pub ratio: f64,
    pub d_times_x: f64,
    /// `D(x)·2x/log x`.
    pub log_comparison: f64,
    /// `(2 − log 2π)/x`, the leading term the `1/x` heuristic drops.
    pub constant_term: f64,
    pub tail_bound: f64,
}

impl ProbeRow {
    pub const CSV_HEADER: [&'static str; 7] =
        ["x", "d", "ratio", "d_times_x", "log_comparison", "constant_term", "tail_bound"];

    pub fn csv_row(&self) -> Vec<String> {
        vec![
            self.x.clone(),
            format!("{:e}", self.d),
            format!("{:e}", self.ratio),
            format!("{:e}", self.d_times_x),
            format!("{:e}", self.log_comparison),
            format!("{:e}", self.constant_term),
            format!("{:e}", self.tail_bound),
        ]
    }
}

/// Tabulates `D(x)` against the normalizations `Δ(x)/x²` and `log x/(2x)`.
pub fn asymptotic_probe<T: Real>(
    ws: &Workspace<T>,
    model: AsymptoticModel,
    xs: &[Rational],
    n_max: u64,
) -> Result<Vec<ProbeRow>> {
    if xs.is_empty() {
        return Ok(Vec::new());
    }
    let pair = ws.pair(model.fn_id)?;
    let t = TruncationSpec::direct(n_max);
    xs.iter()
        .map(|&x| {
            let lhs = theorem11_lhs(&pair.base, x, &t)?;
            let cos = cosine_term(&pair.divisor_sum, x, &t)?;
            let xf = x.to_f64();
            let d = lhs.value.as_f64() - cos.value.as_f64();
            Ok(ProbeRow {
                x: x.to_string(),
                d,
                ratio: d / (model.delta(xf) / (xf * xf)),
                d_times_x: d * xf,
                log_comparison: d * 2.0 * xf / xf.ln(),
                constant_term: (2.0 - (2.0 * std::f64::consts::PI).ln()) / xf,
                tail_bound: lhs.tail_bound.as_f64() + cos.tail_bound.as_f64(),
            })
        })
        .collect()
}
